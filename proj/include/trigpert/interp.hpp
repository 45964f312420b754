#pragma once

#include <span>
#include <vector>

#include "trigpert/grid.hpp"
#include "trigpert/numerics.hpp"
#include "trigpert/testfns.hpp"

namespace trigpert {

/// sum_{j=-N}^{N} c_j e^{i j x}; coefficient c_j lives at storage index j + N.
class TrigPoly {
 public:
  /// Throws InputError unless coeffs has odd length and finite entries.
  explicit TrigPoly(std::vector<cdouble> coeffs);

  [[nodiscard]] int degree() const noexcept { return n_; }
  [[nodiscard]] std::span<const cdouble> coeffs() const noexcept { return coeffs_; }
  [[nodiscard]] cdouble coeff(int j) const {
    return coeffs_.at(static_cast<std::size_t>(j + n_));
  }
  [[nodiscard]] double l1_norm() const;

 private:
  int n_;
  std::vector<cdouble> coeffs_;
};

/// A_{k,j} = e^{i j x_k} for nodes x_k and frequencies -N <= j <= N,
/// where the node count is 2N + 1.
[[nodiscard]] ComplexMatrix interpolation_matrix(std::span<const double> nodes);

/// Lagrange cardinal polynomial prod_{j != k} sin((x - x_j)/2) / sin((x_k - x_j)/2),
/// numerator and denominator accumulated in the log domain. `index` is the
/// storage position of the node.
[[nodiscard]] double cardinal_at(std::span<const double> nodes, std::size_t index, double x);

/// Cardinal function of node k, -N <= k <= N.
[[nodiscard]] double cardinal(const PerturbedGrid& grid, int k, double x);

/// Unique degree-N interpolant through (x_k, samples[k]) via a dense solve.
[[nodiscard]] TrigPoly interpolate_nodes(std::span<const double> nodes,
                                         std::span<const cdouble> samples);
[[nodiscard]] TrigPoly interpolate(const PerturbedGrid& grid, std::span<const cdouble> samples);

[[nodiscard]] cdouble eval_poly(const TrigPoly& p, double x);

/// max |f(x) - p(x)| over `resolution` equispaced points, all midpoints of
/// adjacent nodes, then a golden-section polish around the discrete argmax.
/// Requires resolution >= 10 (2N + 1).
[[nodiscard]] double sup_error(const TestFunction& f, const TrigPoly& p,
                               std::span<const double> nodes, std::size_t resolution);

/// Samples f at the grid nodes.
[[nodiscard]] std::vector<cdouble> sample(const TestFunction& f, std::span<const double> nodes);

}  // namespace trigpert
