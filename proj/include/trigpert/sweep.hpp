#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "trigpert/grid.hpp"

namespace trigpert {

enum class SweepCommand {
  lebesgue_sweep,
  two_norm_sweep,
  quad_sweep,
  converge,
  verify_bounds,
  grids,
};

[[nodiscard]] std::string_view to_string(SweepCommand command);
[[nodiscard]] SweepCommand parse_command(std::string_view name);

struct SweepConfig {
  SweepCommand command = SweepCommand::lebesgue_sweep;
  std::vector<double> alphas{0.25};
  std::vector<int> n_list{8, 16, 32, 64, 128, 256};
  std::uint64_t trials = 1;
  /// Trials run as indices first_trial .. first_trial + trials - 1; a single
  /// CSV row can be regenerated with trials = 1 and its trial index here.
  std::uint64_t first_trial = 0;
  PerturbKind strategy = PerturbKind::alternating_max;
  std::uint64_t seed = 1;
  std::string out_path;
  /// Registry label, converge only.
  std::string function = "analytic:1.25";
  /// converge only: shift the test function by half a grid spacing.
  bool shift_half_spacing = false;
  /// converge only: nodes uniform over the whole period, outside the alpha model.
  bool runge_demo = false;
  unsigned threads = 1;
  int samples_per_interval = 64;
};

/// Throws InputError describing the first violated constraint.
void validate(const SweepConfig& cfg);

struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::size_t points_used = 0;
  /// Set when the values are constant and r^2 is undefined (reported as 0).
  bool degenerate = false;
};

using FitPoint = std::pair<double, double>;

/// Least squares of log(value) against log(N); slope is the power-law exponent.
/// Needs at least three points with positive values.
[[nodiscard]] RateFit rate_fit(std::span<const FitPoint> points);

/// Least squares of log(value) against N; -slope is the geometric rate per
/// unit N.
[[nodiscard]] RateFit geometric_fit(std::span<const FitPoint> points);

struct SweepOutcome {
  std::string header;
  std::vector<std::string> rows;     // data rows in deterministic order
  std::vector<std::string> summary;  // '#'-prefixed lines: fits, checks, info
  bool passed = true;

  /// Header, rows, then summary, newline-terminated.
  [[nodiscard]] std::string csv() const;
};

/// Runs the configured experiment on cfg.threads workers. Data rows do not
/// depend on the thread count.
[[nodiscard]] SweepOutcome run_sweep(const SweepConfig& cfg);

/// Writes outcome.csv() to `path`; throws Error on I/O failure.
void write_outcome(const SweepOutcome& outcome, const std::string& path);

/// Formats with 17 significant digits.
[[nodiscard]] std::string format_double(double v);

}  // namespace trigpert
