#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>
#include <string>

#include "nematic_cli/commands.hpp"

int main(int argc, char** argv) {
  using namespace nematic::cli;
  CliOptions opt;
  std::string config;
  std::string out = ".";
  std::vector<std::string> inputs;

  CLI::App app{"Q-tensor gradient-flow simulations, decompositions and correlation analysis"};
  app.add_option("command", opt.command, "simulate | correlate | ensemble | decompose | regime | fronts")
      ->required()
      ->check(CLI::IsMember(command_names()));
  app.add_option("inputs", inputs, "snapshot files, trajectory directories or error series");
  app.add_option("--config", config, "configuration file");
  app.add_option("--out", out, "output directory")->capture_default_str();
  app.add_option("--threads", opt.threads, "FFT threads")->capture_default_str();
  app.add_flag("--test-mode", opt.test_mode, "deterministic single-threaded run, zero wall-clock in the manifest");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kSuccess : kConfigError;
  }
  opt.config = config;
  opt.out = out;
  for (const auto& in : inputs) opt.inputs.emplace_back(in);
  return run_command(opt, std::cout, std::cerr);
}
