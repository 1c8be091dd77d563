#include "lefmod/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

int main(int argc, char** argv) {
  lefmod::cli::Options o;
  CLI::App app{"Lefschetz modules over Q"};
  app.set_version_flag("--version", lefmod::cli::version());
  app.add_option("command", o.command, "check, decompose, perverse, matroid, apolar or canonical")->required();
  app.add_option("target", o.target, "fixture name or instance file")->required();
  app.add_option("--B", o.B, "degree-one generators of B, comma separated");
  app.add_option("--ell", o.ell, "single point for check");
  app.add_option("--samples", o.samples, "number of cone samples");
  app.add_option("--seed", o.seed, "seed for the decomposition");
  app.add_option("--json", o.json_out, "write the report as JSON");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  if (const char* env = std::getenv("LEFMOD_SEED")) {
    try {
      o.seed = std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "input invalid: LEFMOD_SEED must be a nonnegative integer\n";
      return 2;
    }
  }
  return lefmod::cli::run(o, std::cout, std::cerr);
}
