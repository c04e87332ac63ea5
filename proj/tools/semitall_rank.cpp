#include <iostream>
#include <string>
#include <vector>

#include "semitall/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return semitall::dispatch(args, std::cout, std::cerr);
}
