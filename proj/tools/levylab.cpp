#include <iostream>
#include <string>
#include <vector>

#include "levylab/run.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    auto parsed = levylab::parse_args(args);
    if (!parsed.help.empty()) {
      std::cout << parsed.help;
      return levylab::kExitOk;
    }
    const auto outcome = levylab::run(parsed.config, std::cerr);
    for (const auto& path : outcome.artifacts) std::cout << path.string() << "\n";
    return outcome.exit_code;
  } catch (const levylab::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return levylab::kExitInvalidConfig;
  }
}
