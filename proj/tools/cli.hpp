#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ssde::cli {

enum class Command { Classify, Simulate, Xi, Extinction, LaplaceCheck, SelfSim, DriftCheck, LampertiCheck, Report };
enum class Format { Csv, Json };
enum class Process { Absorbed, V, Extended };

struct RunConfig {
  Command command = Command::Classify;

  double alpha = 1.5;
  double beta = 0.5;
  double theta = 0.5;

  double z0 = 1.0;
  double horizon = 1.0;
  double grid_step = 1e-3;
  std::optional<double> cutoff;  // default_cutoff(alpha) when unset
  bool gaussian_refinement = true;
  Process process = Process::Absorbed;

  std::size_t n = 10000;
  std::uint64_t seed = 20240521;
  unsigned workers = 1;

  std::string out;  // empty: standard output (a directory for `report`)
  Format format = Format::Csv;
  bool format_given = false;
  std::size_t sample_every = 1;

  std::vector<double> thetas;               // extinction sweep
  std::vector<double> lambdas{0.25, 0.5};   // laplace-check
  double scale = 2.0;                       // selfsim c
  std::optional<double> index_override;     // selfsim
  std::optional<double> lamperti_theta;     // lamperti-check
};

/// Bad flag, unreadable config file, or unparsable value. Exit code 1.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Parses argv without the program name. A `--config FILE` holding flat
/// key=value lines ('#' comments) supplies defaults; flags on the command line
/// win. SSDE_SEED is used when neither sets a seed. Parameters are validated
/// here, so a returned config always derives cleanly.
RunConfig parse_args(const std::vector<std::string>& args);

/// Executes the command. Writes to cfg.out (or `out` when cfg.out is empty).
/// Returns 0 on success, 2 on a regime error, 1 on validation or I/O errors;
/// diagnostics go to `err`.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// parse_args + run with exit-code mapping for parse failures.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::string command_name(Command c);

/// "%.17g" rendering used in every CSV cell (round-trips exactly).
std::string format_real(double x);

}  // namespace ssde::cli
