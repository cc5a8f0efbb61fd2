#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "seqmeta/belief.hpp"
#include "seqmeta/core.hpp"

namespace seqmeta {

GaussianBelief conjugate_update(const GaussianBelief& prior, double obs_mean, double obs_var);

/// std_error² + τ²: the marginal sampling variance once the study-specific
/// random effect is integrated out.
double effective_obs_variance(const StudyRecord& record, double tau);

/// Joint Gaussian over (θ, γ_1..γ_L); θ first, then labels in registration
/// order.
struct JointGaussianState {
  Eigen::VectorXd mean;
  Eigen::MatrixXd cov;
  std::vector<std::string> label_order;

  static JointGaussianState from_prior(const GaussianBelief& prior);

  GaussianBelief theta_marginal() const;
  /// Index of `label` in the state vector, or nullopt.
  std::optional<Eigen::Index> index_of(const std::string& label) const;
  /// Appends γ_label ~ N(0, kappa²), uncorrelated with the existing state.
  JointGaussianState with_label(const std::string& label, double kappa) const;
};

/// Measurement update with h = e_θ + e_γ(label) and noise σ² + τ² for each
/// record in `group`, in order. Labels not yet in the state are registered
/// with prior N(0, κ²), κ = kappa_at(schedule, label, record.seq_index).
JointGaussianState kalman_labeled_update(const JointGaussianState& state,
                                         std::span<const StudyRecord> group, double tau,
                                         const BeliefSchedule& schedule);

/// Single-shot posterior over every record in `records` with all label
/// priors taken at `belief_time` (information form: Λ = P0⁻¹ + Σ h hᵀ/R).
JointGaussianState batch_labeled_posterior(const GaussianBelief& prior,
                                           std::span<const StudyRecord> records, double tau,
                                           const BeliefSchedule& schedule,
                                           std::int64_t belief_time);

struct EngineOutput {
  /// steps[0] is the prior; steps[t] the θ posterior after update group t.
  std::vector<Belief> steps;
  /// τ actually used at each step (plug-in τ̂ varies by prefix).
  std::vector<double> tau_used;
  std::optional<JointGaussianState> final_joint;
};

/// Conjugate fold over update groups for FixedEffect (τ = 0) and
/// RandomEffects with a fixed τ.
EngineOutput run_trace_re(const StudySequence& seq, const ModelConfig& config);

/// RandomEffects with τ re-estimated by DerSimonian-Laird on every prefix.
EngineOutput run_trace_plugin(const StudySequence& seq, const ModelConfig& config);

/// RandomEffects with a half-normal prior on τ, on one shared θ grid.
EngineOutput run_trace_grid(const StudySequence& seq, const ModelConfig& config);

/// Labeled random effects. A static schedule folds kalman_labeled_update;
/// a time-varying one recomputes the batch posterior at every step with
/// the κ values in force at that step.
EngineOutput run_trace_labeled(const StudySequence& seq, const ModelConfig& config);

/// Dispatches on model and τ mode.
EngineOutput run_engine(const StudySequence& seq, const ModelConfig& config);

struct GridBounds {
  double lo;
  double hi;
};

/// θ range covering ±6 total standard errors around the estimates, widened
/// to the prior's ±6 sd when the prior is not wider than that range.
GridBounds default_grid_bounds(std::span<const StudyRecord> records, const GaussianBelief& prior,
                               const TauSpec& tau);

/// Posterior of θ on a grid for the random-effects model with τ unknown
/// (HalfNormal: τ marginalized on a second grid axis) or plugged in (DL).
GridBelief grid_posterior(std::span<const StudyRecord> records, const GaussianBelief& prior,
                          const TauSpec& tau, std::size_t grid_n,
                          std::optional<GridBounds> bounds = std::nullopt);

}  // namespace seqmeta
