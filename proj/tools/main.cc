#include <iostream>
#include <string>
#include <vector>

#include "cli.hh"

int main(int argc, char** argv)
{
  std::vector<std::string> args(argv + 1, argv + argc);
  return symne::cli::run(args, std::cout, std::cerr);
}
