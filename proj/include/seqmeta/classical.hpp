#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "seqmeta/core.hpp"

namespace seqmeta {

/// Pooled inverse-variance estimate. `weights` are the normalized shares
/// δ_i, in record order.
struct MetaEstimate {
  double estimate = 0.0;
  double variance = 0.0;
  double tau2 = 0.0;
  std::vector<double> weights;
};

MetaEstimate fe_estimate(std::span<const StudyRecord> records);

struct TauEstimate {
  double tau = 0.0;
  /// Set when fewer than two studies were available (τ̂ defined as 0).
  bool insufficient_studies = false;
};

/// DerSimonian-Laird moment estimator of the between-study sd.
TauEstimate dl_tau(std::span<const StudyRecord> records);

/// Random-effects estimate with weights 1/(σ_i² + τ²). τ defaults to the
/// DL estimate.
MetaEstimate re_estimate(std::span<const StudyRecord> records, std::optional<double> tau = std::nullopt);

enum class WeightMode { Sequential, Retrospective };
enum class WeightModel { FE, RE };

struct WeightRow {
  std::size_t step = 0;
  std::string study_id;
  double weight_percent = 0.0;
};

/// Retrospective: δ_i of every study in the full meta-analysis.
/// Sequential: for each prefix 1..m, the weight of study m (τ̂ re-estimated
/// per prefix in RE mode).
std::vector<WeightRow> weights_table(std::span<const StudyRecord> records, WeightMode mode,
                                     WeightModel model);

}  // namespace seqmeta
