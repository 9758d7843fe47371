#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dnls/experiment.hpp"

int main(int argc, char** argv) {
  dnls::set_threads_from_env();

  CLI::App app{"numerical laboratory for the discrete NLS with a point nonlinearity"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  std::vector<std::string> overrides;
  CLI::App* run = app.add_subcommand("run", "run an experiment described by a JSON config");
  run->add_option("config", config_path, "path to the config JSON")->required();
  run->add_option("--out", out_dir, "output directory, overrides output_dir from the config");
  run->add_option("--set", overrides, "dotted.key=value override, may be repeated");

  std::string report_path, baseline_path;
  CLI::App* cmp = app.add_subcommand("compare", "compare a report against a baseline");
  cmp->add_option("report", report_path, "report.json produced by run")->required();
  cmp->add_option("baseline", baseline_path, "baseline report.json")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      dnls::ExperimentConfig cfg = dnls::load_config(config_path, overrides);
      std::string report = dnls::run_experiment(cfg, out_dir);
      std::cout << "report: " << report << "\n";
      return 0;
    }
    return dnls::compare_reports(report_path, baseline_path);
  } catch (const dnls::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
