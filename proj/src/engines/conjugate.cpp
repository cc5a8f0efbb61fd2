#include <cmath>
#include <variant>

#include "seqmeta/classical.hpp"
#include "seqmeta/engines.hpp"

namespace seqmeta {

GaussianBelief conjugate_update(const GaussianBelief& prior, double obs_mean, double obs_var) {
  if (!(obs_var > 0.0) || std::isnan(obs_var))
    throw Error(ErrorCode::NonPositiveVariance, "observation variance must be positive");
  if (std::isinf(obs_var)) return prior;
  const double prior_prec = 1.0 / prior.variance();
  const double obs_prec = 1.0 / obs_var;
  const double post_var = 1.0 / (prior_prec + obs_prec);
  const double post_mean = post_var * (prior.mean() * prior_prec + obs_mean * obs_prec);
  return GaussianBelief(post_mean, std::sqrt(post_var));
}

double effective_obs_variance(const StudyRecord& record, double tau) {
  return record.std_error * record.std_error + tau * tau;
}

namespace {

GaussianBelief fold(GaussianBelief belief, std::span<const StudyRecord> records, double tau) {
  for (const auto& r : records) belief = conjugate_update(belief, r.estimate, effective_obs_variance(r, tau));
  return belief;
}

}  // namespace

EngineOutput run_trace_re(const StudySequence& seq, const ModelConfig& config) {
  validate_config(config);
  double tau = 0.0;
  if (config.model == ModelKind::RandomEffects) {
    const auto* fixed = std::get_if<TauFixed>(&config.schedule.tau_spec());
    if (fixed == nullptr)
      throw Error(ErrorCode::UnsupportedTauMode, "run_trace_re requires a fixed tau");
    tau = fixed->tau;
  } else if (config.model != ModelKind::FixedEffect) {
    throw Error(ErrorCode::InvalidConfig, "run_trace_re handles fixed- and random-effects models only");
  }

  EngineOutput out;
  GaussianBelief belief = config.prior;
  out.steps.emplace_back(belief);
  out.tau_used.push_back(tau);
  for (std::size_t g = 0; g < seq.group_count(); ++g) {
    belief = fold(belief, seq.group(g), tau);
    out.steps.emplace_back(belief);
    out.tau_used.push_back(tau);
  }
  return out;
}

EngineOutput run_trace_plugin(const StudySequence& seq, const ModelConfig& config) {
  validate_config(config);
  EngineOutput out;
  out.steps.emplace_back(config.prior);
  out.tau_used.push_back(0.0);
  for (std::size_t g = 1; g <= seq.group_count(); ++g) {
    const auto prefix = seq.prefix_groups(g);
    const double tau = dl_tau(prefix).tau;
    out.steps.emplace_back(fold(config.prior, prefix, tau));
    out.tau_used.push_back(tau);
  }
  return out;
}

EngineOutput run_engine(const StudySequence& seq, const ModelConfig& config) {
  validate_config(config);
  switch (config.model) {
    case ModelKind::FixedEffect:
      return run_trace_re(seq, config);
    case ModelKind::RandomEffects:
      if (std::holds_alternative<TauFixed>(config.schedule.tau_spec())) return run_trace_re(seq, config);
      if (std::holds_alternative<TauPlugInDL>(config.schedule.tau_spec())) return run_trace_plugin(seq, config);
      return run_trace_grid(seq, config);
    case ModelKind::LabeledRandomEffects:
      return run_trace_labeled(seq, config);
  }
  throw Error(ErrorCode::InvalidConfig, "unknown model");
}

}  // namespace seqmeta
