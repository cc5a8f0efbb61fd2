#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "seqmeta/classical.hpp"
#include "seqmeta/simulation.hpp"
#include "seqmeta/trace.hpp"

namespace seqmeta::io {

enum class TraceMetric { W1, W2, Lindley, All };

std::optional<TraceMetric> parse_trace_metric(std::string_view name) noexcept;

/// Columns step,study_ids,post_mean,post_sd,ci95_lo,ci95_hi,w_contribution
/// plus w1 and/or lindley as requested. Study ids of a group are joined
/// with ';'.
std::string format_trace_csv(const ResearchTrace& trace, TraceMetric metric);
std::string format_weights_csv(const std::vector<WeightRow>& rows);
std::string format_sweep_csv(const std::vector<SweepRow>& rows);

struct TraceCommand {
  std::filesystem::path studies;
  std::filesystem::path config;
  std::filesystem::path out;
  TraceMetric metric = TraceMetric::W2;
  bool retrospective_beliefs = false;
};

/// Writes the trace CSV to `out` and its manifest to `out`.manifest.json.
void run_trace_command(const TraceCommand& cmd);

struct WeightsCommand {
  std::filesystem::path studies;
  std::filesystem::path out;
  WeightMode mode = WeightMode::Sequential;
  WeightModel model = WeightModel::FE;
};

void run_weights_command(const WeightsCommand& cmd);

struct SimulateCommand {
  ScenarioSpec scenario;
  DGPParams dgp;
  double tau = 0.01;
  /// Output directory; receives studies.csv, config.json and manifest.json.
  std::filesystem::path out;
};

void run_simulate_command(const SimulateCommand& cmd);

struct SweepCommand {
  std::filesystem::path studies;
  std::filesystem::path config;
  std::filesystem::path out;
  /// "kappa:<label>"
  std::string param;
  /// "<lo:hi:step>" or a single value.
  std::string values;
  std::size_t focus_step = 1;
  bool retrospective_beliefs = false;
};

void run_sweep_command(const SweepCommand& cmd);

/// 0 success, 2 input or validation error, 3 numerical failure.
int exit_code_for(const Error& e) noexcept;

}  // namespace seqmeta::io
