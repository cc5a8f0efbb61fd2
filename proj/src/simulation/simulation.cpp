#include "seqmeta/simulation.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

namespace seqmeta {

std::uint64_t SplitMix64::next() noexcept {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double SplitMix64::uniform() noexcept {
  return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
}

double SplitMix64::normal() noexcept {
  const double u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

StudySequence simulate_dgp(const DGPParams& p) {
  if (!(p.var_z > 0.0) || !(p.var_y > 0.0))
    throw Error(ErrorCode::InvalidArgument, "DGP variances must be positive");
  if (p.n_old < 0 || p.n_new < 0 || p.n_old + p.n_new < 1)
    throw Error(ErrorCode::InvalidArgument, "DGP needs n_old + n_new >= 1");
  if (p.constant_se && !(*p.constant_se > 0.0))
    throw Error(ErrorCode::InvalidArgument, "constant_se must be positive");

  SplitMix64 rng(p.seed);
  const double sd_z = std::sqrt(p.var_z);
  const double sd_y = std::sqrt(p.var_y);
  const int n = p.n_old + p.n_new;
  std::vector<StudyRecord> records;
  records.reserve(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) {
    const bool old_method = i <= p.n_old;
    const double ell = old_method ? 1.0 : 0.0;
    const double z = p.beta * ell + sd_z * rng.normal();
    const double y = p.theta_star + z + sd_y * rng.normal();

    char id[32];
    std::snprintf(id, sizeof id, "sim-%03d", i);
    StudyRecord r;
    r.id = id;
    r.seq_index = i;
    r.group_id = id;
    r.estimate = y;
    r.std_error = p.constant_se.value_or(old_method ? std::sqrt(p.var_y + p.var_z) : sd_y);
    r.label = std::string(old_method ? kOldMethodLabel : kNewMethodLabel);
    records.push_back(std::move(r));
  }
  return validate_sequence(std::move(records));
}

std::string_view to_string(Scenario s) noexcept {
  return s == Scenario::InnovationI ? "innovation-I" : "innovation-II";
}

std::optional<Scenario> parse_scenario(std::string_view name) noexcept {
  const auto lower = [](std::string_view s) {
    std::string out(s);
    for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
  };
  const std::string n = lower(name);
  if (n == "innovation-i" || n == "i") return Scenario::InnovationI;
  if (n == "innovation-ii" || n == "ii") return Scenario::InnovationII;
  return std::nullopt;
}

ScenarioSpec ScenarioSpec::defaults(Scenario s) {
  ScenarioSpec spec;
  spec.name = s;
  if (s == Scenario::InnovationI) {
    spec.kappa_old_before = 1.0;
    spec.kappa_old_after = 1.0;
  } else {
    spec.kappa_old_before = kKappaUnbiased;
    spec.kappa_old_after = 1.0;
  }
  spec.kappa_new = kKappaUnbiased;
  spec.switch_step = 11;
  return spec;
}

BeliefSchedule scenario_schedule(const ScenarioSpec& spec, TauSpec tau) {
  if (spec.switch_step < 1) throw Error(ErrorCode::InvalidArgument, "switch_step must be >= 1");
  const std::string old_label(kOldMethodLabel);
  const std::string new_label(kNewMethodLabel);
  std::vector<KappaEntry> entries;
  if (spec.name == Scenario::InnovationI) {
    entries = {{1, old_label, spec.kappa_old_before}, {1, new_label, spec.kappa_new}};
  } else if (spec.switch_step == 1) {
    entries = {{1, old_label, spec.kappa_old_after}, {1, new_label, spec.kappa_new}};
  } else {
    entries = {{1, old_label, spec.kappa_old_before},
               {spec.switch_step, old_label, spec.kappa_old_after},
               {spec.switch_step, new_label, spec.kappa_new}};
  }
  return BeliefSchedule(std::move(entries), tau);
}

ModelConfig scenario_config(const ScenarioSpec& spec) {
  ModelConfig config;
  config.model = ModelKind::LabeledRandomEffects;
  config.prior = GaussianBelief(0.0, 1.0);
  config.schedule = scenario_schedule(spec);
  return config;
}

}  // namespace seqmeta
