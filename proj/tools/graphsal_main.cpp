#include <string>
#include <vector>

#include "graphsal/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return graphsal::run_cli(args);
}
