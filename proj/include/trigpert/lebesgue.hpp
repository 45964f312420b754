#pragma once

#include <optional>
#include <span>
#include <vector>

#include "trigpert/grid.hpp"
#include "trigpert/numerics.hpp"

namespace trigpert {

/// Fast evaluator for the Lebesgue function sum_k |l_k(x)| of a node set.
///
/// With Omega(x) = prod_j sin((x - x_j)/2) and D_k = prod_{j != k} sin((x_k - x_j)/2),
/// |l_k(x)| = |Omega(x)| / (|sin((x - x_k)/2)| |D_k|). The D_k are computed once
/// in the log domain (O(K^2)); each evaluation is O(K) with the running product
/// of Omega kept as mantissa and binary exponent, so nothing under- or
/// overflows for K <= 4097.
class LebesgueFunction {
 public:
  explicit LebesgueFunction(std::span<const double> nodes);

  [[nodiscard]] double operator()(double x) const;
  [[nodiscard]] std::span<const double> nodes() const noexcept { return nodes_; }

 private:
  std::vector<double> nodes_;
  std::vector<double> cos_half_;
  std::vector<double> sin_half_;
  std::vector<double> scaled_inv_denominator_;  // exp(-log|D_k| - shift_)
  double shift_ = 0.0;
};

/// L(x) = sum_k |l_k(x)| for x in [-pi, pi].
[[nodiscard]] double lebesgue_function(const PerturbedGrid& grid, double x);

struct LebesgueSearchOptions {
  /// Chebyshev-spaced samples inside each internode interval; at least 16.
  int samples_per_interval = 64;
  /// How many of the best sampled intervals get a golden-section polish.
  int polished_intervals = 3;
  /// Width of the final golden-section bracket.
  double x_tolerance = 1e-10;
};

struct LebesgueMax {
  double value;
  double argmax;  // in [-pi, pi)
};

/// Maximum of the Lebesgue function: dense sampling of every internode
/// interval (including the wraparound one) followed by golden-section
/// refinement. The result is a lower bound, accepted as the maximum at the
/// given density.
[[nodiscard]] LebesgueMax lebesgue_constant(const PerturbedGrid& grid,
                                            const LebesgueSearchOptions& opts = {});
[[nodiscard]] LebesgueMax lebesgue_constant_nodes(std::span<const double> nodes,
                                                  const LebesgueSearchOptions& opts = {});

struct CertifiedLebesgueMax {
  LebesgueMax max;
  int samples_per_interval;  // density at which the result was accepted
  bool certified;            // doubling changed the value by less than the tolerance
};

/// Doubles the sampling density, starting from opts.samples_per_interval,
/// until successive maxima differ by less than `tolerance` or the density
/// reaches 1024.
[[nodiscard]] CertifiedLebesgueMax certified_lebesgue_constant(const PerturbedGrid& grid,
                                                               LebesgueSearchOptions opts = {},
                                                               double tolerance = 1e-6);

/// (N^{4 alpha} - 1) / (alpha (1 - 2 alpha)); 4 log N at alpha = 0.
[[nodiscard]] double bound_shape(int n, double alpha);

/// Crossover abscissae x*_k for -N-1 <= k <= N, with x*_0 = 0 and x*_{-N-1} = -pi.
class CrossoverPoints {
 public:
  CrossoverPoints(int n, std::vector<double> values) : n_(n), values_(std::move(values)) {}
  [[nodiscard]] int degree() const noexcept { return n_; }
  [[nodiscard]] double at(int k) const {
    return values_.at(static_cast<std::size_t>(k + n_ + 1));
  }

 private:
  int n_;
  std::vector<double> values_;
};

/// Crossover points of the grid: for k != 0, the second solution (besides
/// x~_0) of the equation balancing the two extreme placements of node k in
/// the cardinal factor of l_0. At alpha = 0 returns x*_k = k h.
[[nodiscard]] CrossoverPoints crossover_points(const PerturbedGrid& grid);

struct Interval {
  double lo;
  double hi;
};

/// R_k = [(-k - 1 - alpha) h, (-k + alpha) h].
[[nodiscard]] Interval bound_region(int n, double alpha, int k);

/// log P_k(x) and log Q_k; both are products of |sin| factors.
[[nodiscard]] double log_pk(int n, double alpha, int k, double x);
[[nodiscard]] double log_qk(int n, double alpha, int k);

/// M_k = max over [-pi, 0] ∩ R_k of P_k(x) / Q_k, by dense sampling and
/// golden-section refinement. Independent of the grid's actual shifts.
[[nodiscard]] double mk_numeric(int n, double alpha, int k);

/// Closed-form upper bounds on M_k, valid for sufficiently large N:
/// 10 pi / (1 - 2 alpha) for k = 0, 1 and
/// 3 pi (k + 1)^{2 alpha} / ((1 - 2 alpha) (k - 1)^{1 - 2 alpha}) for 2 <= k <= N.
[[nodiscard]] double mk_analytic(int n, double alpha, int k);

/// Degree from which mk_numeric <= mk_analytic is enforced; below it the
/// comparison is informational.
inline constexpr int kMkAnalyticMinDegree = 32;
[[nodiscard]] constexpr bool mk_analytic_enforced(int n) { return n >= kMkAnalyticMinDegree; }

/// 9 sum_{k=0}^{N} M_k, an upper bound on the Lebesgue constant of every
/// admissible grid with these (N, alpha).
[[nodiscard]] double nine_sum_bound(int n, double alpha);
[[nodiscard]] double nine_sum_from(std::span<const double> mk);

struct BoundTable {
  int n;
  double alpha;
  CrossoverPoints crossover;
  std::vector<Interval> regions;      // R_k, 0 <= k <= N
  std::vector<double> mk;             // numeric M_k
  std::vector<double> mk_bound;       // analytic bounds
  bool analytic_enforced;             // N >= kMkAnalyticMinDegree
};

/// Crossover points of `grid` together with every M_k ingredient. Pass `mk`
/// to reuse M_k values already computed for the same (N, alpha).
[[nodiscard]] BoundTable bound_table(const PerturbedGrid& grid,
                                     std::optional<std::vector<double>> mk = std::nullopt);

/// max |l_0(x)| over R*_k = [x*_{-(k+1)}, x*_{-k}], sampled and polished.
[[nodiscard]] double l0_region_max(const PerturbedGrid& grid, const CrossoverPoints& crossover,
                                   int k, int samples = 64);

struct TwoNormLebesgue {
  double value;       // sqrt(K) / sigma_min(A)
  double sigma_min;
  bool ill_conditioned;  // sigma_min < 1e-14
};

/// Norm of the samples -> coefficients map, scaled so the equispaced grid
/// gives exactly 1. Requires K <= 1025.
[[nodiscard]] TwoNormLebesgue two_norm_lebesgue(const PerturbedGrid& grid);

struct LebesgueReport {
  double lambda_inf;
  double argmax_x;
  std::optional<double> lambda_two;
  double bound_shape;
  std::optional<double> nine_sum;
};

[[nodiscard]] LebesgueReport lebesgue_report(const PerturbedGrid& grid,
                                             const LebesgueSearchOptions& opts = {},
                                             bool with_two_norm = false,
                                             bool with_nine_sum = false);

}  // namespace trigpert
