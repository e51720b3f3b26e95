#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "pdom/errors.hpp"
#include "pdom/scenario.hpp"
#include "pdom/stability.hpp"
#include "pdom/system.hpp"

namespace {

struct CommonOpts {
  std::string out_dir = ".";
  int jobs = 1;
  double tolerance = 1e-6;
  unsigned long seed = 0;
};

void attach_common(CLI::App* cmd, CommonOpts* opts) {
  cmd->add_option("--out", opts->out_dir, "Output directory")
      ->default_val(".");
  cmd->add_option("--jobs", opts->jobs, "Worker threads for sweeps")
      ->default_val(1)
      ->check(CLI::PositiveNumber);
  cmd->add_option("--tolerance", opts->tolerance,
                  "Relative tolerance for adaptive quadrature")
      ->default_val(1e-6)
      ->check(CLI::PositiveNumber);
  cmd->add_option("--seed", opts->seed,
                  "Seed recorded for randomized runs (reserved)")
      ->default_val(0);
}

pdom::RunOptions to_run_options(const CommonOpts& c) {
  pdom::RunOptions o;
  o.out_dir = c.out_dir;
  o.jobs = c.jobs;
  o.tolerance = c.tolerance;
  o.seed = c.seed;
  return o;
}

void print_summary(const pdom::RunSummary& sum) {
  for (const auto& line : sum.lines) std::cout << line << "\n";
  for (const auto& f : sum.files) std::cout << "wrote " << f << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Two-cavity optomechanics workbench: sideband cooling budgets, "
      "microwave-optical conversion spectra and teleportation readout"};
  app.require_subcommand(1);

  CommonOpts run_opts;
  std::string run_config;
  CLI::App* run = app.add_subcommand("run", "Execute a scenario config");
  run->add_option("config", run_config, "Path to a key=value config file")
      ->required()
      ->check(CLI::ExistingFile);
  attach_common(run, &run_opts);

  CommonOpts preset_opts;
  std::string preset_name;
  CLI::App* preset =
      app.add_subcommand("preset", "Run a built-in parameter set");
  preset->add_option("name", preset_name, "fig2, fig3 or figS1")
      ->required()
      ->check(CLI::IsMember({"fig2", "fig3", "figS1"}));
  attach_common(preset, &preset_opts);

  std::string check_config;
  CLI::App* check =
      app.add_subcommand("check", "Validate a config and echo it resolved");
  check->add_option("config", check_config, "Path to a key=value config file")
      ->required()
      ->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      const pdom::ScenarioConfig cfg = pdom::load_config(run_config);
      print_summary(pdom::run_scenario(cfg, to_run_options(run_opts)));
    } else if (preset->parsed()) {
      print_summary(
          pdom::run_preset(preset_name, to_run_options(preset_opts)));
    } else if (check->parsed()) {
      const pdom::ScenarioConfig cfg = pdom::load_config(check_config);
      std::cout << pdom::resolved_config_text(cfg);
      std::cout << "ok\n";
    }
  } catch (const pdom::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
