#include <cmath>
#include <initializer_list>

#include <json.hpp>

#include "seqmeta/io.hpp"

namespace seqmeta::io {

namespace {

using nlohmann::json;

[[noreturn]] void violation(const std::string& pointer, const std::string& message) {
  throw Error(ErrorCode::SchemaViolation, (pointer.empty() ? "/" : pointer) + ": " + message);
}

void require_object(const json& j, const std::string& pointer) {
  if (!j.is_object()) violation(pointer, "expected an object");
}

void reject_unknown(const json& j, const std::string& pointer, std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (std::string_view a : allowed) known = known || key == a;
    if (!known) violation(pointer + "/" + key, "unknown key");
  }
}

const json& member(const json& j, const std::string& pointer, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) violation(pointer + "/" + key, "required key is missing");
  return *it;
}

double number(const json& j, const std::string& pointer) {
  if (!j.is_number()) violation(pointer, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) violation(pointer, "must be finite");
  return v;
}

double positive(const json& j, const std::string& pointer) {
  const double v = number(j, pointer);
  if (!(v > 0.0)) violation(pointer, "must be > 0");
  return v;
}

std::int64_t integer(const json& j, const std::string& pointer) {
  if (!j.is_number_integer()) violation(pointer, "expected an integer");
  return j.get<std::int64_t>();
}

std::string string(const json& j, const std::string& pointer) {
  if (!j.is_string()) violation(pointer, "expected a string");
  return j.get<std::string>();
}

int grid_size(const json& j, const std::string& pointer) {
  const std::int64_t n = integer(j, pointer);
  if (n < 64 || n > (std::int64_t{1} << 24) || (n & (n - 1)) != 0)
    violation(pointer, "must be a power of two between 64 and 2^24");
  return static_cast<int>(n);
}

TauSpec parse_tau(const json& j) {
  const std::string p = "/tau";
  require_object(j, p);
  const std::string mode = string(member(j, p, "mode"), p + "/mode");
  if (mode == "fixed") {
    reject_unknown(j, p, {"mode", "value"});
    const double v = number(member(j, p, "value"), p + "/value");
    if (v < 0.0) violation(p + "/value", "must be >= 0");
    return TauFixed{v};
  }
  if (mode == "plugin_dl") {
    reject_unknown(j, p, {"mode"});
    return TauPlugInDL{};
  }
  if (mode == "halfnormal") {
    reject_unknown(j, p, {"mode", "scale"});
    return TauHalfNormal{positive(member(j, p, "scale"), p + "/scale")};
  }
  violation(p + "/mode", "must be one of fixed, plugin_dl, halfnormal");
}

std::vector<KappaEntry> parse_schedule(const json& j) {
  const std::string p = "/kappa_schedule";
  if (!j.is_array()) violation(p, "expected an array");
  std::vector<KappaEntry> entries;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string q = p + "/" + std::to_string(i);
    const json& e = j[i];
    require_object(e, q);
    reject_unknown(e, q, {"from", "label", "kappa"});
    KappaEntry entry;
    entry.effective_from = integer(member(e, q, "from"), q + "/from");
    if (entry.effective_from < 1) violation(q + "/from", "must be >= 1");
    entry.label = string(member(e, q, "label"), q + "/label");
    if (!is_valid_identifier(entry.label)) violation(q + "/label", "must match [A-Za-z0-9_-]+");
    entry.kappa = positive(member(e, q, "kappa"), q + "/kappa");
    entries.push_back(std::move(entry));
  }
  return entries;
}

json tau_to_json(const TauSpec& tau) {
  if (const auto* f = std::get_if<TauFixed>(&tau)) return {{"mode", "fixed"}, {"value", f->tau}};
  if (const auto* h = std::get_if<TauHalfNormal>(&tau)) return {{"mode", "halfnormal"}, {"scale", h->scale}};
  return {{"mode", "plugin_dl"}};
}

}  // namespace

ModelConfig parse_config_json_text(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    violation("", std::string("not valid JSON (") + e.what() + ")");
  }
  require_object(root, "");
  reject_unknown(root, "", {"schema", "model", "prior", "tau", "kappa_schedule", "metric", "grid"});

  if (integer(member(root, "", "schema"), "/schema") != 1) violation("/schema", "only schema 1 is supported");

  ModelConfig config;
  const std::string model = string(member(root, "", "model"), "/model");
  if (model == "fixed_effect")
    config.model = ModelKind::FixedEffect;
  else if (model == "random_effects")
    config.model = ModelKind::RandomEffects;
  else if (model == "labeled_random_effects")
    config.model = ModelKind::LabeledRandomEffects;
  else
    violation("/model", "must be one of fixed_effect, random_effects, labeled_random_effects");

  const json& prior = member(root, "", "prior");
  require_object(prior, "/prior");
  reject_unknown(prior, "/prior", {"mean", "sd"});
  config.prior = GaussianBelief(number(member(prior, "/prior", "mean"), "/prior/mean"),
                                positive(member(prior, "/prior", "sd"), "/prior/sd"));

  TauSpec tau = TauFixed{0.0};
  if (root.contains("tau")) tau = parse_tau(root["tau"]);
  std::vector<KappaEntry> entries;
  if (root.contains("kappa_schedule")) entries = parse_schedule(root["kappa_schedule"]);
  try {
    config.schedule = BeliefSchedule(std::move(entries), tau);
  } catch (const Error& e) {
    violation("/kappa_schedule", e.detail());
  }

  if (root.contains("metric")) {
    const json& metric = root["metric"];
    require_object(metric, "/metric");
    reject_unknown(metric, "/metric", {"p"});
    const std::int64_t p = integer(member(metric, "/metric", "p"), "/metric/p");
    if (p != 1 && p != 2) violation("/metric/p", "must be 1 or 2");
    config.metric_p = static_cast<int>(p);
  }
  if (root.contains("grid")) {
    const json& grid = root["grid"];
    require_object(grid, "/grid");
    reject_unknown(grid, "/grid", {"n", "quantile_n"});
    if (grid.contains("n")) config.grid_n = grid_size(grid["n"], "/grid/n");
    if (grid.contains("quantile_n")) config.quantile_n = grid_size(grid["quantile_n"], "/grid/quantile_n");
  }
  validate_config(config);
  return config;
}

ModelConfig parse_config_json(const std::filesystem::path& path) { return parse_config_json_text(read_file(path)); }

std::string config_to_json(const ModelConfig& config) {
  json schedule = json::array();
  for (const auto& e : config.schedule.entries())
    schedule.push_back(json::object({{"from", e.effective_from}, {"label", e.label}, {"kappa", e.kappa}}));
  nlohmann::ordered_json out;
  out["schema"] = 1;
  out["model"] = std::string(to_string(config.model));
  out["prior"] = nlohmann::ordered_json{{"mean", config.prior.mean()}, {"sd", config.prior.sd()}};
  out["tau"] = tau_to_json(config.schedule.tau_spec());
  out["kappa_schedule"] = schedule;
  out["metric"] = {{"p", config.metric_p}};
  out["grid"] = nlohmann::ordered_json{{"n", config.grid_n}, {"quantile_n", config.quantile_n}};
  return out.dump(2) + "\n";
}

}  // namespace seqmeta::io
