#pragma once

// `freewave` command-line front end.
//
// Exit codes:
//   0  success
//   2  usage error (bad flags, inconsistent parameters)
//   3  numerical precondition failure (domain, quadrature, peak detection,
//      boundary decay); a JSON error record is written to the error stream
//   4  a verify suite ran and its check failed

#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace freewave::cli {

enum ExitCode : int { kOk = 0, kUsage = 2, kNumerical = 3, kVerificationFailed = 4 };

enum class Command { gen1d, gen2d, peaks, envelope, verify, propagate };
enum class Format { csv, json };

struct GridSpec {
  double min = 0.0;
  double max = 0.0;
  int count = 0;
};

struct RunConfig {
  Command command = Command::gen1d;
  double mass = 1.0;
  double omega = 1.0;
  int n = 0;
  std::optional<int> l;               // gen2d / 2D suites only
  std::vector<double> taus;           // empty: command default
  std::optional<GridSpec> grid;       // empty: auto-sized
  std::optional<GridSpec> grid2;      // gen2d second axis; defaults to grid
  int count = 0;                      // auto-grid node count; 0: command default
  Format format = Format::csv;
  std::string out_path;               // empty: standard output

  std::string suite;                  // verify
  int refinements = 4;                // verify residual suites
  std::vector<int> n_values;          // verify semiclassical
  std::optional<double> energy;       // envelope
  std::optional<int> energy_from_n;   // envelope
  int alpha_count = 0;                // envelope: > 0 emits the trajectory family instead
  std::string input_path;             // peaks: read a gen1d CSV instead of evaluating
  bool fast = false;                  // propagate: radix-2 FFT
};

// "min:max:count"
GridSpec parse_grid(const std::string& text);
// "a,b,c" or "min:max:count"
std::vector<double> parse_tau_list(const std::string& text);

// Parses argv. On --help or a usage error returns the exit code to use,
// after writing the message to out/err.
std::variant<RunConfig, int> parse_command_line(int argc, const char* const* argv,
                                                std::ostream& out, std::ostream& err);

// Executes a configuration, writing the artifact to config.out_path (or `out`)
// and diagnostics to `err`. Returns an ExitCode.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace freewave::cli
