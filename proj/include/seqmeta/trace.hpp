#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "seqmeta/core.hpp"
#include "seqmeta/engines.hpp"

namespace seqmeta {

struct TraceRow {
  std::size_t step = 0;
  std::vector<std::string> study_ids;
  double post_mean = 0.0;
  double post_sd = 0.0;
  double ci95_lo = 0.0;
  double ci95_hi = 0.0;
  /// Wasserstein-p distance (p from the config) to the previous row.
  double w_contribution = 0.0;
  /// Wasserstein-1 distance to the previous row.
  double w1 = 0.0;
  double lindley_contribution = 0.0;
};

/// Row 0 is the prior; row t summarizes the posterior after update group t.
struct ResearchTrace {
  std::vector<TraceRow> rows;
};

struct TraceOptions {
  /// Trace under the schedule frozen at its final state instead of the
  /// beliefs held at each step.
  bool retrospective_beliefs = false;
};

ResearchTrace build_research_trace(const StudySequence& seq, const ModelConfig& config,
                                   const TraceOptions& options = {});

/// Summarizes an already computed engine run.
ResearchTrace summarize(const StudySequence& seq, const EngineOutput& output, const ModelConfig& config);

/// Values lo, lo+step, ... up to hi (inclusive within rounding).
std::vector<double> parse_value_grid(std::string_view spec);

struct SweepRow {
  double kappa_value = 0.0;
  double w_contribution_at_focus = 0.0;
  double post_mean_final = 0.0;
  double post_sd_final = 0.0;
};

/// Reruns the full trace once per κ value for `label` and reports the
/// contribution of trace step `focus_step` (1-based).
std::vector<SweepRow> kappa_sweep(const StudySequence& seq, const ModelConfig& config, std::string_view label,
                                  const std::vector<double>& values, std::size_t focus_step,
                                  const TraceOptions& options = {});

}  // namespace seqmeta
