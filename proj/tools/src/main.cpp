#include <iostream>

#include "lue/cli/experiment.hpp"

int main(int argc, char** argv) {
  using namespace lue::cli;
  try {
    const ExperimentConfig cfg = parse_command_line(argc, argv);
    return run(cfg, std::cout, std::cerr);
  } catch (const EarlyExit& e) {
    return e.code;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  }
}
