#include <CLI11.hpp>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "uuvloc/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Recover underwater vehicle positions from aerial pixel tracks"};
  app.require_subcommand(1);

  std::string recover_config, recover_input, recover_output;
  auto* recover_cmd = app.add_subcommand("recover", "Observation log -> trajectory CSV");
  recover_cmd->add_option("--config", recover_config, "Run configuration")->required();
  recover_cmd->add_option("--input", recover_input, "Observation CSV")->required();
  recover_cmd->add_option("--output", recover_output, "Trajectory CSV")->required();

  std::string eval_config, eval_input, eval_gt, eval_output;
  auto* eval_cmd = app.add_subcommand("evaluate", "Trajectory vs ground truth -> error report");
  eval_cmd->add_option("--config", eval_config, "Run configuration")->required();
  eval_cmd->add_option("--input", eval_input, "Trajectory CSV from recover")->required();
  eval_cmd->add_option("--gt", eval_gt, "Ground-truth CSV")->required();
  eval_cmd->add_option("--output", eval_output, "Report path (default stdout)");

  std::string sim_config, sim_output, sim_gt;
  std::int64_t sim_seed = -1;
  auto* sim_cmd = app.add_subcommand("simulate", "Scenario -> observation and ground-truth CSVs");
  sim_cmd->add_option("--config", sim_config, "Scenario configuration")->required();
  sim_cmd->add_option("--output", sim_output, "Observation CSV")->required();
  sim_cmd->add_option("--gt", sim_gt, "Ground-truth CSV")->required();
  sim_cmd->add_option("--seed", sim_seed, "Noise seed (overrides the config)")
      ->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : uuvloc::kExitConfigError;
  }

  if (*recover_cmd) {
    return uuvloc::run_recover({recover_config, recover_input, recover_output}, std::cerr);
  }
  if (*eval_cmd) {
    uuvloc::EvaluateArgs args{eval_config, eval_input, eval_gt, std::nullopt};
    if (!eval_output.empty()) args.output = eval_output;
    return uuvloc::run_evaluate(args, std::cout, std::cerr);
  }
  uuvloc::SimulateArgs args{sim_config, sim_output, sim_gt, std::nullopt};
  if (sim_seed >= 0) args.seed = static_cast<std::uint64_t>(sim_seed);
  return uuvloc::run_simulate(args, std::cerr);
}
