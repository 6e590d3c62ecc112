// Command line front end: exact moment/cumulant tables, Monte Carlo
// verification, spectral histograms and eigenvalue scatters.
#include "xcov/errors.hpp"
#include "xcov/experiment.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"Cross-covariance matrices and their free probability limits"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;
  int threads = 0;

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"moments", "exact limiting moments phi(P^k)"},
      {"cumulants", "exact limiting free cumulants kappa_k(P)"},
      {"mc-verify", "Monte Carlo trace moments against the exact limit"},
      {"esd", "histogram of pooled eigenvalues of a symmetric polynomial"},
      {"scatter", "complex eigenvalues of a centered-scaled matrix"},
  };
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "key=value configuration file")->required()->check(CLI::ExistingFile);
    sub->add_option("--set", overrides, "override a configuration key (key=value)")->take_all();
    sub->add_option("--threads", threads, "worker threads for replicates (does not change results)")
        ->check(CLI::PositiveNumber);
  }

  CLI11_PARSE(app, argc, argv);

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    xcov::ConfigMap map = xcov::read_config_file(config_path);
    for (const auto& assignment : overrides) xcov::apply_override(map, assignment);
    xcov::ExperimentConfig cfg = xcov::build_experiment(map);
    if (threads > 0) cfg.threads = threads;
    return xcov::run_command(command, cfg, std::cout);
  } catch (const xcov::ParseError& e) {
    std::cerr << "xcov " << command << ": parse error: " << e.what() << "\n";
    return 2;
  } catch (const xcov::ResourceLimitError& e) {
    std::cerr << "xcov " << command << ": resource limit: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "xcov " << command << ": " << e.what() << "\n";
    return 2;
  }
}
