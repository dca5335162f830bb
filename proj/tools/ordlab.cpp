#include <iostream>
#include <string>
#include <vector>

#include "ordlab/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  const auto result = ordlab::cli::run(args);
  auto& out = result.exit_code == 2 ? std::cerr : std::cout;
  if (!result.output.empty()) out << result.output << '\n';
  return result.exit_code;
}
