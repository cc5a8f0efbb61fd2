#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "seqmeta/commands.hpp"
#include "seqmeta/io.hpp"

using namespace seqmeta;

int main(int argc, char** argv) {
  CLI::App app{"Sequential Bayesian meta-analysis: research traces, weights, simulation and sensitivity sweeps"};
  app.set_version_flag("--version", io::tool_version());
  app.require_subcommand(1);

  io::TraceCommand trace;
  std::string trace_metric = "w2";
  auto* trace_cmd = app.add_subcommand("trace", "Posterior summaries and learning contribution per update step");
  trace_cmd->add_option("--studies", trace.studies, "Studies CSV")->required();
  trace_cmd->add_option("--config", trace.config, "Model config JSON")->required();
  trace_cmd->add_option("--out", trace.out, "Output trace CSV")->required();
  trace_cmd->add_option("--metric", trace_metric, "Extra metric columns")
      ->check(CLI::IsMember({"w1", "w2", "lindley", "all"}));
  trace_cmd->add_flag("--retrospective-beliefs", trace.retrospective_beliefs,
                      "Use the final kappa beliefs at every step");

  io::WeightsCommand weights;
  const std::map<std::string, WeightMode> modes{{"sequential", WeightMode::Sequential},
                                                {"retrospective", WeightMode::Retrospective}};
  const std::map<std::string, WeightModel> models{{"fe", WeightModel::FE}, {"re", WeightModel::RE}};
  auto* weights_cmd = app.add_subcommand("weights", "Classical meta-analysis weights");
  weights_cmd->add_option("--studies", weights.studies, "Studies CSV")->required();
  weights_cmd->add_option("--out", weights.out, "Output weights CSV")->required();
  weights_cmd->add_option("--mode", weights.mode, "sequential or retrospective")
      ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case));
  weights_cmd->add_option("--model", weights.model, "fe or re")
      ->transform(CLI::CheckedTransformer(models, CLI::ignore_case));

  io::SimulateCommand sim;
  std::string scenario_name;
  std::optional<double> kappa_old_before, kappa_old_after, kappa_new, constant_se;
  std::optional<std::int64_t> switch_step;
  auto* sim_cmd = app.add_subcommand("simulate", "Generate a synthetic two-methodology literature");
  sim_cmd->add_option("--scenario", scenario_name, "innovation-I or innovation-II")->required();
  sim_cmd->add_option("--seed", sim.dgp.seed, "RNG seed")->capture_default_str();
  sim_cmd->add_option("--out", sim.out, "Output directory")->required();
  sim_cmd->add_option("--theta-star", sim.dgp.theta_star, "True effect")->capture_default_str();
  sim_cmd->add_option("--beta", sim.dgp.beta, "Bias of the established method")->capture_default_str();
  sim_cmd->add_option("--var-z", sim.dgp.var_z, "Variance of the method bias draw")->capture_default_str();
  sim_cmd->add_option("--var-y", sim.dgp.var_y, "Sampling variance")->capture_default_str();
  sim_cmd->add_option("--n-old", sim.dgp.n_old, "Studies using the established method")->capture_default_str();
  sim_cmd->add_option("--n-new", sim.dgp.n_new, "Studies using the new method")->capture_default_str();
  sim_cmd->add_option("--constant-se", constant_se, "Report this standard error for every study");
  sim_cmd->add_option("--tau", sim.tau, "Fixed heterogeneity in the emitted config")->capture_default_str();
  sim_cmd->add_option("--kappa-old-before", kappa_old_before, "Kappa of method-1 before the switch");
  sim_cmd->add_option("--kappa-old-after", kappa_old_after, "Kappa of method-1 from the switch on");
  sim_cmd->add_option("--kappa-new", kappa_new, "Kappa of method-2");
  sim_cmd->add_option("--switch-step", switch_step, "First study of the new method");

  io::SweepCommand sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Focus-step contribution as a function of one kappa");
  sweep_cmd->add_option("--studies", sweep.studies, "Studies CSV")->required();
  sweep_cmd->add_option("--config", sweep.config, "Model config JSON")->required();
  sweep_cmd->add_option("--out", sweep.out, "Output sweep CSV")->required();
  sweep_cmd->add_option("--param", sweep.param, "kappa:<label>")->required();
  sweep_cmd->add_option("--values", sweep.values, "lo:hi:step or a single value")->required();
  sweep_cmd->add_option("--focus-step", sweep.focus_step, "Trace step whose contribution is reported")->required();
  sweep_cmd->add_flag("--retrospective-beliefs", sweep.retrospective_beliefs,
                      "Use the final kappa beliefs at every step");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*trace_cmd) {
      trace.metric = *io::parse_trace_metric(trace_metric);
      io::run_trace_command(trace);
    } else if (*weights_cmd) {
      io::run_weights_command(weights);
    } else if (*sim_cmd) {
      const auto scenario = parse_scenario(scenario_name);
      if (!scenario) throw Error(ErrorCode::InvalidArgument, "unknown scenario '" + scenario_name + "'");
      sim.scenario = ScenarioSpec::defaults(*scenario);
      if (kappa_old_before) sim.scenario.kappa_old_before = *kappa_old_before;
      if (kappa_old_after) sim.scenario.kappa_old_after = *kappa_old_after;
      if (kappa_new) sim.scenario.kappa_new = *kappa_new;
      sim.scenario.switch_step = switch_step.value_or(std::int64_t{sim.dgp.n_old} + 1);
      sim.dgp.constant_se = constant_se;
      io::run_simulate_command(sim);
    } else if (*sweep_cmd) {
      io::run_sweep_command(sweep);
    }
  } catch (const Error& e) {
    std::cerr << "seqmeta: " << e.what() << '\n';
    return io::exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "seqmeta: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
