#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "seqmeta/core.hpp"

namespace seqmeta {

/// Counter-based generator: the k-th output is mix64(seed + k·γ) with the
/// SplitMix64 finalizer, so any draw can be reproduced from (seed, k).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept;
  /// Uniform on the open interval (0, 1) with 53 random bits.
  double uniform() noexcept;
  /// Standard normal by Box-Muller (cosine branch; two uniforms per draw).
  double normal() noexcept;

 private:
  std::uint64_t state_;
};

inline constexpr std::string_view kRngIdentity = "splitmix64+box-muller/1";

/// Two-methodology literature: studies 1..n_old use the established method
/// ("method-1", bias β), the rest the new one ("method-2", unbiased).
///   z_i ~ N(β·ℓ_i, var_z),  y_i ~ N(θ* + z_i, var_y)
struct DGPParams {
  double theta_star = 0.0;
  double beta = 1.0;
  double var_z = 0.01;
  double var_y = 0.01;
  int n_old = 10;
  int n_new = 20;
  std::uint64_t seed = 0;
  /// Reported std_error for every study; default is sqrt(var_y + var_z)
  /// for method-1 and sqrt(var_y) for method-2.
  std::optional<double> constant_se;
};

inline constexpr std::string_view kOldMethodLabel = "method-1";
inline constexpr std::string_view kNewMethodLabel = "method-2";

StudySequence simulate_dgp(const DGPParams& params);

enum class Scenario { InnovationI, InnovationII };

std::string_view to_string(Scenario s) noexcept;
/// Accepts "innovation-I" / "innovation-II" (case-insensitive suffix).
std::optional<Scenario> parse_scenario(std::string_view name) noexcept;

struct ScenarioSpec {
  Scenario name = Scenario::InnovationI;
  double kappa_old_before = 1.0;
  double kappa_old_after = 1.0;
  double kappa_new = kKappaUnbiased;
  std::int64_t switch_step = 11;

  static ScenarioSpec defaults(Scenario s);
};

/// Innovation I: method-1 suspect from the start (κ = kappa_old_before),
/// method-2 trusted. Innovation II: method-1 trusted until switch_step,
/// then doubted (κ = kappa_old_after) when method-2 arrives.
BeliefSchedule scenario_schedule(const ScenarioSpec& spec, TauSpec tau = TauFixed{0.01});

/// Labeled model with prior N(0, 1) and τ fixed at 0.01.
ModelConfig scenario_config(const ScenarioSpec& spec);

}  // namespace seqmeta
