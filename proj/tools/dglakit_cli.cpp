#include <iostream>

#include "dglakit/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  const auto out = dglakit::run_command(args);
  (out.exit_code == 2 ? std::cerr : std::cout) << out.text;
  return out.exit_code;
}
