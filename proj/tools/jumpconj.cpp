// Command-line driver. See README.md for the commands and file formats.

#include <iostream>

#include <CLI11.hpp>

#include "jumpconj/cli.hpp"

int main(int argc, char** argv) {
  using jumpconj::cli::RunConfig;
  RunConfig cfg;
  CLI::App app{"Decide, build and verify conjugacies between interval maps with one jump"};
  app.require_subcommand(1);

  auto common = [&](CLI::App* sub) {
    sub->add_option("--out", cfg.out, "Output path");
    sub->add_option("--csv", cfg.csv, "CSV output path");
    sub->add_option("--grid", cfg.grid_n, "Grid size")->check(CLI::Range(2, 100000000));
    sub->add_option("--n-max", cfg.n_max, "Orbit truncation depth")->check(CLI::NonNegativeNumber);
    sub->add_option("--endpoint-eps", cfg.endpoint_eps, "Endpoint snapping distance")->check(CLI::PositiveNumber);
    sub->add_option("--inv-tol", cfg.inv_tol, "Branch inversion tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--tol", cfg.tol, "Residual tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--init", cfg.init, "Init-spec JSON");
    sub->add_option("--seed", cfg.seed, "Seed for a randomized residual grid");
  };

  struct Spec {
    const char* name;
    const char* help;
    const char* inputs;
  };
  const Spec specs[] = {
      {"validate", "Check a map spec against its family", "MAP"},
      {"classify", "Report the jump kind of a map", "MAP"},
      {"decide", "Decide whether two maps are conjugate", "F G"},
      {"build", "Build a conjugacy and write its handle", "F G"},
      {"eval", "Evaluate a conjugacy handle", "HANDLE"},
      {"verify", "Verify a conjugacy (handle, or two maps)", "HANDLE | F G"},
      {"smoothness", "Check the C1 conditions (handle, or two maps)", "HANDLE | F G"},
      {"plot", "Write the conjugacy curve and orbit pins as CSV", "HANDLE | F G"},
      {"examples", "Write the two worked examples and run the pipeline on them", ""},
  };
  for (const auto& s : specs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    common(sub);
    if (*s.inputs) sub->add_option("inputs", cfg.inputs, s.inputs);
    if (std::string(s.name) == "eval") sub->add_option("-x,--x", cfg.xs, "Points to evaluate (default: stdin)");
    if (std::string(s.name) == "smoothness") {
      sub->add_option("-N", cfg.smooth_n, "Product truncation")->check(CLI::Range(10, 100000));
      sub->add_option("--samples", cfg.samples, "Samples per fundamental cell")->check(CLI::PositiveNumber);
    }
    sub->callback([&cfg, sub] { cfg.command = sub->get_name(); });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : jumpconj::cli::kInputError;
  }
  jumpconj::cli::configure_logging();
  return jumpconj::cli::run(cfg, std::cout, std::cerr, std::cin);
}
