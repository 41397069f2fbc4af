#include <cstdio>

#include "cartanq/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  cartanq::CliResult res = cartanq::run_cli(args);
  std::fputs(res.out.c_str(), stdout);
  return res.exit_code;
}
