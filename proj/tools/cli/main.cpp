#include <unistd.h>

#include <cstdlib>
#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
  std::optional<std::string> env;
  if (const char* v = std::getenv("NARQL_LEXICON")) env = v;

  auto parsed = narql::cli::parse_args(argc, argv, env, std::cout, std::cerr);
  if (const int* code = std::get_if<int>(&parsed)) return *code;

  auto config = std::get<narql::cli::CliConfig>(std::move(parsed));
  config.color = ::isatty(STDOUT_FILENO) != 0;
  return narql::cli::run(config, std::cin, std::cout, std::cerr, ::isatty(STDIN_FILENO) != 0);
}
