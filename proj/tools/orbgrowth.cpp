// orbgrowth: explore sphere growth, suborbit structure and end behaviour of
// infinite vertex-transitive digraph constructions at finite radius.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "orbgrowth/run.hpp"

namespace {

orbgrowth::Count default_budget() {
  if (char const* env = std::getenv("ORBGROWTH_BUDGET")) {
    try {
      return std::stoull(env);
    } catch (std::exception const&) {
      std::cerr << "warning: ignoring malformed ORBGROWTH_BUDGET\n";
    }
  }
  return orbgrowth::kDefaultVertexBudget;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Sphere growth, subdegree sequences, growth classification and end "
      "profiles of tree-of-lobes and product-action constructions"};
  app.require_subcommand(1);

  std::string expr_text;
  orbgrowth::RunOptions options;
  options.budget = default_budget();
  std::string out_path;

  for (auto const& name :
       {"spheres", "subdegrees", "growth", "ends", "verify"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--expr", expr_text, "construction expression")
        ->required();
    sub->add_option("--radius", options.radius, "exploration radius")
        ->capture_default_str();
    sub->add_option("--budget", options.budget, "vertex budget")
        ->capture_default_str();
    sub->add_option("--format", options.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    sub->add_option("--out", out_path, "output file (default stdout)");
    sub->add_option("--seed", options.seed, "seed for sampled checks")
        ->capture_default_str();
  }

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : orbgrowth::kExitUsageError;
  }

  std::string command = app.get_subcommands().front()->get_name();

  if (!out_path.empty()) {
    std::ofstream file(out_path, std::ios::binary);
    if (!file.good()) {
      std::cerr << "error: cannot open output file: " << out_path << "\n";
      return orbgrowth::kExitUsageError;
    }
    return orbgrowth::run_command(command, expr_text, options, file,
                                  std::cerr);
  }
  return orbgrowth::run_command(command, expr_text, options, std::cout,
                                std::cerr);
}
