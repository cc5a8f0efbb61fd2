#include <algorithm>
#include <cmath>
#include <variant>

#include "seqmeta/engines.hpp"

namespace seqmeta {

JointGaussianState JointGaussianState::from_prior(const GaussianBelief& prior) {
  JointGaussianState s;
  s.mean = Eigen::VectorXd::Constant(1, prior.mean());
  s.cov = Eigen::MatrixXd::Constant(1, 1, prior.variance());
  return s;
}

GaussianBelief JointGaussianState::theta_marginal() const {
  return GaussianBelief(mean(0), std::sqrt(cov(0, 0)));
}

std::optional<Eigen::Index> JointGaussianState::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < label_order.size(); ++i)
    if (label_order[i] == label) return static_cast<Eigen::Index>(i + 1);
  return std::nullopt;
}

JointGaussianState JointGaussianState::with_label(const std::string& label, double kappa) const {
  const Eigen::Index n = mean.size();
  JointGaussianState s;
  s.mean = Eigen::VectorXd::Zero(n + 1);
  s.mean.head(n) = mean;
  s.cov = Eigen::MatrixXd::Zero(n + 1, n + 1);
  s.cov.topLeftCorner(n, n) = cov;
  s.cov(n, n) = kappa * kappa;
  s.label_order = label_order;
  s.label_order.push_back(label);
  return s;
}

namespace {

const std::string& require_label(const StudyRecord& r) {
  if (!r.label) throw Error(ErrorCode::UnlabeledRecord, "record '" + r.id + "' has no methodology label");
  return *r.label;
}

void check_positive_definite(const Eigen::MatrixXd& cov) {
  Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() != Eigen::Success || !cov.allFinite())
    throw Error(ErrorCode::SingularCovariance, "joint covariance lost positive definiteness");
}

// Joseph-form update for one scalar observation y = θ + γ_j + noise.
void measurement_update(JointGaussianState& s, Eigen::Index j, double y, double noise_var) {
  const Eigen::Index n = s.mean.size();
  const Eigen::VectorXd ph = s.cov.col(0) + s.cov.col(j);
  const double hph = ph(0) + ph(j);
  const double innovation_var = hph + noise_var;
  const Eigen::VectorXd gain = ph / innovation_var;

  s.mean += gain * (y - s.mean(0) - s.mean(j));

  // I - K hᵀ; the two diagonal entries on h's support are formed as
  // (R + (Ph)_other) / S so a huge prior variance on one coordinate does
  // not cancel catastrophically.
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n, n);
  a.col(0) -= gain;
  a.col(j) -= gain;
  a(0, 0) = (noise_var + ph(j)) / innovation_var;
  a(j, j) = (noise_var + ph(0)) / innovation_var;

  Eigen::MatrixXd cov = a * s.cov * a.transpose() + noise_var * gain * gain.transpose();
  s.cov = 0.5 * (cov + cov.transpose());
}

}  // namespace

JointGaussianState kalman_labeled_update(const JointGaussianState& state,
                                         std::span<const StudyRecord> group, double tau,
                                         const BeliefSchedule& schedule) {
  JointGaussianState s = state;
  for (const auto& r : group) {
    const std::string& label = require_label(r);
    auto idx = s.index_of(label);
    if (!idx) {
      s = s.with_label(label, kappa_at(schedule, label, r.seq_index));
      idx = s.mean.size() - 1;
    }
    measurement_update(s, *idx, r.estimate, effective_obs_variance(r, tau));
  }
  check_positive_definite(s.cov);
  return s;
}

JointGaussianState batch_labeled_posterior(const GaussianBelief& prior,
                                           std::span<const StudyRecord> records, double tau,
                                           const BeliefSchedule& schedule,
                                           std::int64_t belief_time) {
  JointGaussianState s;
  for (const auto& r : records) {
    const std::string& label = require_label(r);
    if (std::find(s.label_order.begin(), s.label_order.end(), label) == s.label_order.end())
      s.label_order.push_back(label);
  }
  const Eigen::Index n = static_cast<Eigen::Index>(s.label_order.size()) + 1;

  Eigen::MatrixXd precision = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd info = Eigen::VectorXd::Zero(n);
  precision(0, 0) = 1.0 / prior.variance();
  info(0) = prior.mean() / prior.variance();
  for (Eigen::Index k = 1; k < n; ++k) {
    const double kappa = kappa_at(schedule, s.label_order[static_cast<std::size_t>(k - 1)], belief_time);
    precision(k, k) = 1.0 / (kappa * kappa);
  }
  for (const auto& r : records) {
    const Eigen::Index j = *s.index_of(*r.label);
    const double w = 1.0 / effective_obs_variance(r, tau);
    precision(0, 0) += w;
    precision(j, j) += w;
    precision(0, j) += w;
    precision(j, 0) += w;
    info(0) += w * r.estimate;
    info(j) += w * r.estimate;
  }

  Eigen::LLT<Eigen::MatrixXd> llt(precision);
  if (llt.info() != Eigen::Success)
    throw Error(ErrorCode::SingularCovariance, "posterior precision is not positive definite");
  s.mean = llt.solve(info);
  s.cov = llt.solve(Eigen::MatrixXd::Identity(n, n));
  s.cov = 0.5 * (s.cov + s.cov.transpose());
  check_positive_definite(s.cov);
  return s;
}

EngineOutput run_trace_labeled(const StudySequence& seq, const ModelConfig& config) {
  validate_config(config);
  if (config.model != ModelKind::LabeledRandomEffects)
    throw Error(ErrorCode::InvalidConfig, "run_trace_labeled requires the labeled model");
  const auto* fixed = std::get_if<TauFixed>(&config.schedule.tau_spec());
  if (fixed == nullptr) throw Error(ErrorCode::UnsupportedTauMode, "the labeled model requires a fixed tau");
  const double tau = fixed->tau;
  for (const auto& r : seq.records()) require_label(r);

  EngineOutput out;
  out.steps.emplace_back(config.prior);
  out.tau_used.push_back(tau);

  if (config.schedule.is_static()) {
    JointGaussianState state = JointGaussianState::from_prior(config.prior);
    for (std::size_t g = 0; g < seq.group_count(); ++g) {
      state = kalman_labeled_update(state, seq.group(g), tau, config.schedule);
      out.steps.emplace_back(state.theta_marginal());
      out.tau_used.push_back(tau);
    }
    out.final_joint = std::move(state);
    return out;
  }

  // Each step's posterior is recomputed from scratch under the beliefs held
  // when that step's group entered the literature.
  for (std::size_t g = 0; g < seq.group_count(); ++g) {
    const std::int64_t now = seq.group(g).front().seq_index;
    JointGaussianState state =
        batch_labeled_posterior(config.prior, seq.prefix_groups(g + 1), tau, config.schedule, now);
    out.steps.emplace_back(state.theta_marginal());
    out.tau_used.push_back(tau);
    if (g + 1 == seq.group_count()) out.final_joint = std::move(state);
  }
  return out;
}

}  // namespace seqmeta
