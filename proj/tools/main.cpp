#include <iostream>
#include <variant>

#include "freewave/cli.hpp"

int main(int argc, char** argv) {
  auto parsed = freewave::cli::parse_command_line(argc, argv, std::cout, std::cerr);
  if (const int* code = std::get_if<int>(&parsed)) return *code;
  return freewave::cli::run(std::get<freewave::cli::RunConfig>(parsed), std::cout, std::cerr);
}
