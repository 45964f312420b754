#pragma once

#include <span>
#include <vector>

#include "trigpert/grid.hpp"
#include "trigpert/numerics.hpp"

namespace trigpert {

/// h * sum(samples): the trapezoidal rule on an equispaced periodic grid.
[[nodiscard]] cdouble trapezoid(std::span<const cdouble> samples, double h);

/// Interpolatory quadrature rule: w_k is the integral of the k-th cardinal
/// function over one period, so sum_k w_k e^{i j x_k} = 2 pi delta_{j0}, |j| <= N.
class QuadRule {
 public:
  [[nodiscard]] const PerturbedGrid& grid() const noexcept { return grid_; }
  [[nodiscard]] std::span<const double> weights() const noexcept { return weights_; }

 private:
  friend QuadRule quad_weights(const PerturbedGrid&);
  QuadRule(PerturbedGrid grid, std::vector<double> weights)
      : grid_(std::move(grid)), weights_(std::move(weights)) {}

  PerturbedGrid grid_;
  std::vector<double> weights_;
};

/// Weights from one transposed dense solve A^T w = 2 pi e_0. Throws
/// InternalError if the discarded imaginary residue exceeds 1e-10.
[[nodiscard]] QuadRule quad_weights(const PerturbedGrid& grid);

/// sum_k w_k samples[k]. Throws InputError on length mismatch.
[[nodiscard]] cdouble quad_estimate(const QuadRule& rule, std::span<const cdouble> samples);

/// Polya sum: sum_k |w_k|.
[[nodiscard]] double polya_sum(const QuadRule& rule);

/// max_{|j| <= N} |sum_k w_k e^{i j x_k} - 2 pi delta_{j0}|.
[[nodiscard]] double moment_residual(const QuadRule& rule);

}  // namespace trigpert
