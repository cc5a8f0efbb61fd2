#include "seqmeta/trace.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string>
#include <tuple>

#include "seqmeta/metrics.hpp"

namespace seqmeta {

ResearchTrace summarize(const StudySequence& seq, const EngineOutput& output, const ModelConfig& config) {
  const auto qn = static_cast<std::size_t>(config.quantile_n);
  ResearchTrace trace;
  trace.rows.reserve(output.steps.size());
  for (std::size_t t = 0; t < output.steps.size(); ++t) {
    const Belief& b = output.steps[t];
    TraceRow row;
    row.step = t;
    if (t > 0) row.study_ids = seq.group_ids(t - 1);
    row.post_mean = mean(b);
    row.post_sd = sd(b);
    std::tie(row.ci95_lo, row.ci95_hi) = credible_interval(b, 0.95);
    if (t > 0) {
      const Belief& prev = output.steps[t - 1];
      row.w_contribution = wasserstein(prev, b, config.metric_p, qn);
      row.w1 = config.metric_p == 1 ? row.w_contribution : wasserstein(prev, b, 1, qn);
      row.lindley_contribution = lindley(prev, b);
    }
    trace.rows.push_back(std::move(row));
  }
  return trace;
}

ResearchTrace build_research_trace(const StudySequence& seq, const ModelConfig& config, const TraceOptions& options) {
  if (options.retrospective_beliefs) {
    ModelConfig frozen = config;
    frozen.schedule = config.schedule.frozen_at(seq.records().back().seq_index);
    return summarize(seq, run_engine(seq, frozen), frozen);
  }
  return summarize(seq, run_engine(seq, config), config);
}

std::vector<double> parse_value_grid(std::string_view spec) {
  std::vector<double> parts;
  std::size_t start = 0;
  while (start <= spec.size()) {
    const std::size_t end = std::min(spec.find(':', start), spec.size());
    const std::string_view token = spec.substr(start, end - start);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc() || ptr != token.data() + token.size() || !std::isfinite(v))
      throw Error(ErrorCode::InvalidArgument, "bad value grid '" + std::string(spec) + "'");
    parts.push_back(v);
    start = end + 1;
  }
  if (parts.size() == 1) return parts;
  if (parts.size() != 3) throw Error(ErrorCode::InvalidArgument, "value grid must be <value> or <lo:hi:step>");
  const double lo = parts[0];
  const double hi = parts[1];
  const double step = parts[2];
  if (hi < lo) throw Error(ErrorCode::EmptyValueGrid, "value grid has hi < lo");
  if (!(step > 0.0)) throw Error(ErrorCode::InvalidArgument, "value grid step must be positive");
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  std::vector<double> values(count);
  for (std::size_t i = 0; i < count; ++i) values[i] = lo + step * static_cast<double>(i);
  return values;
}

std::vector<SweepRow> kappa_sweep(const StudySequence& seq, const ModelConfig& config, std::string_view label,
                                  const std::vector<double>& values, std::size_t focus_step,
                                  const TraceOptions& options) {
  if (!seq.has_label(label))
    throw Error(ErrorCode::UnknownLabel, "label '" + std::string(label) + "' does not occur in the studies");
  if (values.empty()) throw Error(ErrorCode::EmptyValueGrid, "no kappa values to sweep");
  if (focus_step < 1 || focus_step > seq.group_count())
    throw Error(ErrorCode::InvalidArgument, "focus step " + std::to_string(focus_step) + " outside 1.." +
                                                std::to_string(seq.group_count()));
  std::vector<SweepRow> rows;
  rows.reserve(values.size());
  for (double kappa : values) {
    ModelConfig c = config;
    c.schedule = config.schedule.with_kappa(label, kappa);
    const ResearchTrace trace = build_research_trace(seq, c, options);
    rows.push_back({kappa, trace.rows[focus_step].w_contribution, trace.rows.back().post_mean,
                    trace.rows.back().post_sd});
  }
  return rows;
}

}  // namespace seqmeta
