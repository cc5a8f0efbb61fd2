#include "seqmeta/core.hpp"

namespace seqmeta {
namespace {

bool is_pow2_at_least_64(int n) { return n >= 64 && (n & (n - 1)) == 0; }

}  // namespace

std::string_view to_string(ModelKind kind) noexcept {
  switch (kind) {
    case ModelKind::FixedEffect: return "fixed_effect";
    case ModelKind::RandomEffects: return "random_effects";
    case ModelKind::LabeledRandomEffects: return "labeled_random_effects";
  }
  return "unknown";
}

void validate_config(const ModelConfig& config) {
  if (config.metric_p != 1 && config.metric_p != 2)
    throw Error(ErrorCode::InvalidConfig, "metric p must be 1 or 2");
  if (!is_pow2_at_least_64(config.grid_n))
    throw Error(ErrorCode::InvalidConfig, "grid n must be a power of two >= 64");
  if (!is_pow2_at_least_64(config.quantile_n))
    throw Error(ErrorCode::InvalidConfig, "quantile_n must be a power of two >= 64");
  if (config.model == ModelKind::LabeledRandomEffects &&
      !std::holds_alternative<TauFixed>(config.schedule.tau_spec()))
    throw Error(ErrorCode::UnsupportedTauMode, "the labeled model requires a fixed tau");
}

}  // namespace seqmeta
