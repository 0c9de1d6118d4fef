#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace jumpconj::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kRejected = 1;  // validation failure, not conjugate, failed verification
inline constexpr int kInputError = 2;  // I/O, parse, bad arguments
inline constexpr int kNumericError = 3;  // DepthExceeded and other numeric failures

struct RunConfig {
  std::string command;
  std::vector<std::string> inputs;
  std::optional<std::string> out;
  std::optional<std::string> csv;
  std::optional<std::string> init;
  int grid_n = 10000;
  int n_max = 200;
  double endpoint_eps = 1e-13;
  double inv_tol = 1e-13;
  double tol = 1e-9;
  int smooth_n = 60;
  int samples = 64;
  std::optional<std::uint64_t> seed;
  /// x values for `eval`; read from stdin when empty.
  std::vector<double> xs;
};

/// Throws ArgumentError for non-positive tolerances, grid_n < 2, negative n_max
/// or an unknown command.
void check_config(const RunConfig& config);

/// Runs one command. JSON results go to `out`, error JSON to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err, std::istream& in);

/// Reads CONJ_LOG (trace, debug, info, warn, error, off; default warn) and
/// routes log output to stderr.
void configure_logging();

}  // namespace jumpconj::cli
