#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace sobstab::cli {

inline constexpr const char* kVersion = "sobstab 1.0.0";

/// Everything a run depends on. Embedded in every JSON report so the report can be re-run.
struct RunConfig {
  std::string subcommand;
  std::string geometry = "circle";
  double q = 4.0;
  int d = 0;
  int modes = 8;
  int cutoff = 16;
  double eps_start = 0.08;
  double eps_factor = 0.5;
  int eps_count = 5;
  int quad_cap = 1 << 16;
  int restarts = 16;
  std::uint64_t seed = 42;
  std::string output = "json";
  std::string output_path;
  std::string input;
  std::string family = "extremal";    // scan: extremal | bare | positive
  std::vector<double> radii{0.7, 1.0, 1.3};  // radius-sweep, in units of 1/√(d-2)
};

enum ExitCode : int { kOk = 0, kValidation = 2, kNumerical = 3 };

/// Parses args (without the program name), executes one subcommand and writes
/// the report to out or to config.output_path. Diagnostics go to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv);

}  // namespace sobstab::cli
