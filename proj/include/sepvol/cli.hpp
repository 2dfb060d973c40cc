// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sepvol/field.hpp"
#include "sepvol/sampling.hpp"

namespace sepvol::cli {

enum class Subcommand { Ppt, Sample, Estimate, Quad, Chi, Volumes, MilzStrunz, Verify };
enum class OutputFormat { Json, Csv };

std::string_view to_string(Subcommand s) noexcept;
Subcommand parse_subcommand(std::string_view name);

inline constexpr std::uint64_t kDefaultSeed = 20240229;

struct RunConfig {
  Subcommand subcommand = Subcommand::Verify;
  Field field = Field::Real;
  Measure measure = Measure::HS;
  std::uint64_t n = 100000;
  std::uint64_t seed = kDefaultSeed;
  double tol = 1e-10;
  OutputFormat output = OutputFormat::Json;
  std::optional<std::string> input_path;
  unsigned threads = 1;
  bool assume_eta2_equals_chi2 = false;
  /// quad: psep-real-hs, psep-sqrtx-real, psep-complex-hs, identity, surface
  std::string target = "psep-real-hs";
  /// estimate: psep, separable-fraction, chi, acceptance
  std::string quantity = "psep";
  /// estimate --quantity chi
  double eps = 0.5;
  /// milz-strunz
  std::vector<double> radii{0.0, 0.3, 0.6, 0.9};
  /// chi (complex) and quad psep-complex-hs; 0 picks the grid adaptively
  std::size_t points = 0;
};

/// Rejects invalid combinations with DomainError or Unsupported.
void validate(const RunConfig& config);

std::string config_to_json(const RunConfig& config);
RunConfig config_from_json(std::string_view text);

struct RunOutcome {
  int exit_code = 0;
  std::string report;
  std::string diagnostic;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNoConvergence = 3;
inline constexpr int kExitIo = 4;

/// Runs one configured experiment. Never throws; failures map to exit codes.
RunOutcome run(const RunConfig& config);

/// Full command-line entry point: parses argv (including --replay and the
/// SEPVOL_SEED fallback), runs, and writes the report and diagnostics.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sepvol::cli
