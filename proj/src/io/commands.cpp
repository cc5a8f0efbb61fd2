#include "seqmeta/commands.hpp"

#include <json.hpp>

#include "seqmeta/io.hpp"

namespace seqmeta::io {

namespace {

std::string join_ids(const std::vector<std::string>& ids) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i > 0) out += ';';
    out += ids[i];
  }
  return out;
}

std::filesystem::path manifest_path(const std::filesystem::path& out) {
  std::filesystem::path p = out;
  p += ".manifest.json";
  return p;
}

RunManifest make_manifest(std::string_view config_bytes, std::string_view input_bytes) {
  RunManifest m;
  m.tool_version = tool_version();
  m.config_digest = text_digest(config_bytes);
  m.input_digest = text_digest(input_bytes);
  m.timestamp = utc_timestamp();
  return m;
}

std::string_view to_string(WeightMode mode) {
  return mode == WeightMode::Sequential ? "sequential" : "retrospective";
}

std::string_view to_string(WeightModel model) { return model == WeightModel::FE ? "fe" : "re"; }

}  // namespace

std::optional<TraceMetric> parse_trace_metric(std::string_view name) noexcept {
  if (name == "w1") return TraceMetric::W1;
  if (name == "w2") return TraceMetric::W2;
  if (name == "lindley") return TraceMetric::Lindley;
  if (name == "all") return TraceMetric::All;
  return std::nullopt;
}

std::string format_trace_csv(const ResearchTrace& trace, TraceMetric metric) {
  const bool with_w1 = metric == TraceMetric::W1 || metric == TraceMetric::All;
  const bool with_lindley = metric == TraceMetric::Lindley || metric == TraceMetric::All;
  std::string out = "step,study_ids,post_mean,post_sd,ci95_lo,ci95_hi,w_contribution";
  if (with_w1) out += ",w1";
  if (with_lindley) out += ",lindley";
  out += '\n';
  for (const auto& row : trace.rows) {
    out += std::to_string(row.step) + ',' + join_ids(row.study_ids) + ',' + format_double(row.post_mean) + ',' +
           format_double(row.post_sd) + ',' + format_double(row.ci95_lo) + ',' + format_double(row.ci95_hi) + ',' +
           format_double(row.w_contribution);
    if (with_w1) out += ',' + format_double(row.w1);
    if (with_lindley) out += ',' + format_double(row.lindley_contribution);
    out += '\n';
  }
  return out;
}

std::string format_weights_csv(const std::vector<WeightRow>& rows) {
  std::string out = "step,study_id,weight_percent\n";
  for (const auto& r : rows)
    out += std::to_string(r.step) + ',' + r.study_id + ',' + format_double(r.weight_percent) + '\n';
  return out;
}

std::string format_sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "kappa_value,w_contribution_at_focus_step,post_mean_final,post_sd_final\n";
  for (const auto& r : rows)
    out += format_double(r.kappa_value) + ',' + format_double(r.w_contribution_at_focus) + ',' +
           format_double(r.post_mean_final) + ',' + format_double(r.post_sd_final) + '\n';
  return out;
}

void run_trace_command(const TraceCommand& cmd) {
  const std::string studies_text = read_file(cmd.studies);
  const StudySequence seq = parse_studies_csv_text(studies_text);
  const ModelConfig config = parse_config_json(cmd.config);
  const ResearchTrace trace = build_research_trace(seq, config, {.retrospective_beliefs = cmd.retrospective_beliefs});

  write_file(cmd.out, format_trace_csv(trace, cmd.metric));
  nlohmann::ordered_json extra{{"command", "trace"}, {"retrospective_beliefs", cmd.retrospective_beliefs}};
  write_file(manifest_path(cmd.out),
             manifest_to_json(make_manifest(config_to_json(config), studies_text), extra.dump()));
}

void run_weights_command(const WeightsCommand& cmd) {
  const std::string studies_text = read_file(cmd.studies);
  const StudySequence seq = parse_studies_csv_text(studies_text);
  write_file(cmd.out, format_weights_csv(weights_table(seq.records(), cmd.mode, cmd.model)));

  nlohmann::ordered_json settings{{"mode", to_string(cmd.mode)}, {"model", to_string(cmd.model)}};
  nlohmann::ordered_json extra{{"command", "weights"}};
  write_file(manifest_path(cmd.out), manifest_to_json(make_manifest(settings.dump(), studies_text), extra.dump()));
}

void run_simulate_command(const SimulateCommand& cmd) {
  const std::int64_t total = std::int64_t{cmd.dgp.n_old} + cmd.dgp.n_new;
  if (cmd.dgp.n_old < 0 || cmd.dgp.n_new < 0)
    throw Error(ErrorCode::InvalidArgument, "study counts must be non-negative");
  if (cmd.scenario.switch_step < 1 || cmd.scenario.switch_step > total)
    throw Error(ErrorCode::InvalidArgument, "switch step must lie in 1.." + std::to_string(total));

  const StudySequence seq = simulate_dgp(cmd.dgp);
  ModelConfig config = scenario_config(cmd.scenario);
  config.schedule = scenario_schedule(cmd.scenario, TauFixed{cmd.tau});

  std::filesystem::create_directories(cmd.out);
  const std::string studies_text = format_studies_csv(seq);
  const std::string config_text = config_to_json(config);
  write_file(cmd.out / "studies.csv", studies_text);
  write_file(cmd.out / "config.json", config_text);

  nlohmann::ordered_json dgp{{"theta_star", cmd.dgp.theta_star}, {"beta", cmd.dgp.beta},
                             {"var_z", cmd.dgp.var_z},           {"var_y", cmd.dgp.var_y},
                             {"n_old", cmd.dgp.n_old},           {"n_new", cmd.dgp.n_new},
                             {"seed", cmd.dgp.seed}};
  dgp["constant_se"] = cmd.dgp.constant_se ? nlohmann::ordered_json(*cmd.dgp.constant_se) : nullptr;
  nlohmann::ordered_json scenario{{"name", to_string(cmd.scenario.name)},
                                  {"kappa_old_before", cmd.scenario.kappa_old_before},
                                  {"kappa_old_after", cmd.scenario.kappa_old_after},
                                  {"kappa_new", cmd.scenario.kappa_new},
                                  {"switch_step", cmd.scenario.switch_step},
                                  {"tau", cmd.tau}};
  nlohmann::ordered_json extra{{"command", "simulate"}, {"dgp", dgp}, {"scenario", scenario}};

  RunManifest manifest = make_manifest(config_text, studies_text);
  manifest.rng_identity = std::string(kRngIdentity);
  write_file(cmd.out / "manifest.json", manifest_to_json(manifest, extra.dump()));
}

void run_sweep_command(const SweepCommand& cmd) {
  constexpr std::string_view kPrefix = "kappa:";
  if (!cmd.param.starts_with(kPrefix) || cmd.param.size() == kPrefix.size())
    throw Error(ErrorCode::InvalidArgument, "--param must have the form kappa:<label>");
  const std::string label = cmd.param.substr(kPrefix.size());

  const std::string studies_text = read_file(cmd.studies);
  const StudySequence seq = parse_studies_csv_text(studies_text);
  const ModelConfig config = parse_config_json(cmd.config);
  const std::vector<double> values = parse_value_grid(cmd.values);
  const auto rows = kappa_sweep(seq, config, label, values, cmd.focus_step,
                                {.retrospective_beliefs = cmd.retrospective_beliefs});

  write_file(cmd.out, format_sweep_csv(rows));
  nlohmann::ordered_json extra{{"command", "sweep"},
                               {"param", cmd.param},
                               {"values", cmd.values},
                               {"focus_step", cmd.focus_step},
                               {"retrospective_beliefs", cmd.retrospective_beliefs}};
  write_file(manifest_path(cmd.out),
             manifest_to_json(make_manifest(config_to_json(config), studies_text), extra.dump()));
}

int exit_code_for(const Error& e) noexcept { return is_numerical(e.code()) ? 3 : 2; }

}  // namespace seqmeta::io
