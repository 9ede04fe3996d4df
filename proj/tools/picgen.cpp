#include <iostream>
#include <string>
#include <vector>

#include "picgen/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  picgen::CommandResult res = picgen::run_command(args);
  std::cout << res.output;
  std::cerr << res.error;
  return res.exit_code;
}
