#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <variant>

#include "seqmeta/classical.hpp"
#include "seqmeta/engines.hpp"
#include "seqmeta/kernels.hpp"

namespace seqmeta {
namespace {

double max_tau(std::span<const StudyRecord> records, const TauSpec& tau) {
  if (const auto* f = std::get_if<TauFixed>(&tau)) return f->tau;
  if (const auto* h = std::get_if<TauHalfNormal>(&tau)) return 3.0 * h->scale;
  return dl_tau(records).tau;
}

std::vector<double> theta_nodes(const GridBounds& b, std::size_t n) {
  std::vector<double> x(n);
  const double h = (b.hi - b.lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) x[i] = b.lo + h * static_cast<double>(i);
  return x;
}

}  // namespace

GridBounds default_grid_bounds(std::span<const StudyRecord> records, const GaussianBelief& prior,
                               const TauSpec& tau) {
  if (records.empty()) {
    return {prior.mean() - 6.0 * prior.sd(), prior.mean() + 6.0 * prior.sd()};
  }
  const double tmax = max_tau(records, tau);
  double lo = records.front().estimate;
  double hi = lo;
  double se_total = 0.0;
  for (const auto& r : records) {
    lo = std::min(lo, r.estimate);
    hi = std::max(hi, r.estimate);
    se_total = std::max(se_total, std::sqrt(effective_obs_variance(r, tmax)));
  }
  lo -= 6.0 * se_total;
  hi += 6.0 * se_total;
  if (prior.sd() <= hi - lo) {
    lo = std::min(lo, prior.mean() - 6.0 * prior.sd());
    hi = std::max(hi, prior.mean() + 6.0 * prior.sd());
  }
  return {lo, hi};
}

GridBelief grid_posterior(std::span<const StudyRecord> records, const GaussianBelief& prior,
                          const TauSpec& tau, std::size_t grid_n, std::optional<GridBounds> bounds) {
  if (grid_n < 64) throw Error(ErrorCode::InvalidArgument, "grid_n must be >= 64");

  if (std::holds_alternative<TauPlugInDL>(tau) || std::holds_alternative<TauFixed>(tau)) {
    const double t = std::holds_alternative<TauFixed>(tau) ? std::get<TauFixed>(tau).tau : dl_tau(records).tau;
    GaussianBelief post = prior;
    for (const auto& r : records) post = conjugate_update(post, r.estimate, effective_obs_variance(r, t));
    // The posterior is known here, so by default it gets a grid of its own.
    if (!bounds) return rasterize(post, grid_n);
    return rasterize(post, bounds->lo, bounds->hi, grid_n);
  }

  const GridBounds b = bounds.value_or(default_grid_bounds(records, prior, tau));
  const std::vector<double> theta = theta_nodes(b, grid_n);

  const double scale = std::get<TauHalfNormal>(tau).scale;
  const std::size_t tau_n = grid_n;
  const double tau_step = 3.0 * scale / static_cast<double>(tau_n - 1);

  std::vector<double> log_prior_theta(grid_n, 0.0);
  kernels::add_gaussian_loglik(theta, log_prior_theta, prior.mean(), prior.variance());

  // joint[j * grid_n + i] = log p(θ_i, τ_j, y) up to a constant.
  std::vector<double> joint(tau_n * grid_n);
  for (std::size_t j = 0; j < tau_n; ++j) {
    const double t = tau_step * static_cast<double>(j);
    const double log_tau_prior = -0.5 * (t / scale) * (t / scale);
    std::span<double> row(joint.data() + j * grid_n, grid_n);
    for (std::size_t i = 0; i < grid_n; ++i) row[i] = log_prior_theta[i] + log_tau_prior;
    for (const auto& r : records)
      kernels::add_gaussian_loglik(theta, row, r.estimate, effective_obs_variance(r, t));
  }

  const double peak = kernels::max(joint);
  if (!std::isfinite(peak)) throw Error(ErrorCode::GridUnderflow, "joint log density has no finite maximum");

  std::vector<double> marginal(grid_n, 0.0);
  for (std::size_t j = 0; j < tau_n; ++j) {
    const double w = (j == 0 || j + 1 == tau_n) ? 0.5 : 1.0;
    const double* row = joint.data() + j * grid_n;
    for (std::size_t i = 0; i < grid_n; ++i) marginal[i] += w * std::exp(row[i] - peak);
  }
  std::vector<double> logd(grid_n);
  for (std::size_t i = 0; i < grid_n; ++i)
    logd[i] = marginal[i] > 0.0 ? std::log(marginal[i]) : -std::numeric_limits<double>::infinity();
  return GridBelief::from_log_density(b.lo, b.hi, std::move(logd));
}

EngineOutput run_trace_grid(const StudySequence& seq, const ModelConfig& config) {
  validate_config(config);
  const auto* hn = std::get_if<TauHalfNormal>(&config.schedule.tau_spec());
  if (config.model != ModelKind::RandomEffects || hn == nullptr)
    throw Error(ErrorCode::UnsupportedTauMode, "grid trace requires random effects with a half-normal tau prior");

  const GridBounds bounds = default_grid_bounds(seq.records(), config.prior, *hn);
  EngineOutput out;
  out.steps.emplace_back(config.prior);
  out.tau_used.push_back(std::numeric_limits<double>::quiet_NaN());
  for (std::size_t g = 1; g <= seq.group_count(); ++g) {
    out.steps.emplace_back(grid_posterior(seq.prefix_groups(g), config.prior, *hn,
                                          static_cast<std::size_t>(config.grid_n), bounds));
    out.tau_used.push_back(std::numeric_limits<double>::quiet_NaN());
  }
  return out;
}

}  // namespace seqmeta
