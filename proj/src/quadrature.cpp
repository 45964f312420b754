#include "trigpert/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include "trigpert/interp.hpp"

namespace trigpert {

cdouble trapezoid(std::span<const cdouble> samples, double h) {
  cdouble sum = 0.0;
  for (const auto& s : samples) sum += s;
  return h * sum;
}

QuadRule quad_weights(const PerturbedGrid& grid) {
  const std::size_t k_count = grid.size();
  const auto n = static_cast<std::size_t>(grid.degree());
  // Row j of A^T holds e^{i j x_k}; the c_0 row of A^{-1} is the solution for e_0.
  const ComplexMatrix moments = interpolation_matrix(grid.nodes()).transposed();
  std::vector<cdouble> rhs(k_count, 0.0);
  rhs[n] = kTwoPi;
  const std::vector<cdouble> w = solve_dense(moments, rhs);

  std::vector<double> weights(k_count);
  for (std::size_t k = 0; k < k_count; ++k) {
    if (std::abs(w[k].imag()) > 1e-10)
      throw InternalError("quad_weights: weight has imaginary part above 1e-10");
    weights[k] = w[k].real();
  }
  return QuadRule(grid, std::move(weights));
}

cdouble quad_estimate(const QuadRule& rule, std::span<const cdouble> samples) {
  const auto weights = rule.weights();
  if (samples.size() != weights.size())
    throw InputError("quad_estimate: sample count must equal 2N+1");
  cdouble sum = 0.0;
  for (std::size_t k = 0; k < samples.size(); ++k) sum += weights[k] * samples[k];
  return sum;
}

double polya_sum(const QuadRule& rule) {
  double s = 0.0;
  for (double w : rule.weights()) s += std::abs(w);
  return s;
}

double moment_residual(const QuadRule& rule) {
  const auto nodes = rule.grid().nodes();
  const auto weights = rule.weights();
  const int n = rule.grid().degree();
  double worst = 0.0;
  for (int j = -n; j <= n; ++j) {
    cdouble m = 0.0;
    for (std::size_t k = 0; k < nodes.size(); ++k)
      m += weights[k] * std::polar(1.0, static_cast<double>(j) * nodes[k]);
    if (j == 0) m -= kTwoPi;
    worst = std::max(worst, std::abs(m));
  }
  return worst;
}

}  // namespace trigpert
