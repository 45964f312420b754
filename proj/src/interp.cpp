#include "trigpert/interp.hpp"

#include <algorithm>
#include <cmath>

namespace trigpert {

TrigPoly::TrigPoly(std::vector<cdouble> coeffs) : n_(0), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() % 2 == 0) throw InputError("TrigPoly: coefficient count must be odd");
  for (const auto& c : coeffs_)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw InputError("TrigPoly: non-finite coefficient");
  n_ = static_cast<int>(coeffs_.size() / 2);
}

double TrigPoly::l1_norm() const {
  double s = 0.0;
  for (const auto& c : coeffs_) s += std::abs(c);
  return s;
}

ComplexMatrix interpolation_matrix(std::span<const double> nodes) {
  const std::size_t k_count = nodes.size();
  if (k_count % 2 == 0) throw InputError("interpolation_matrix: node count must be odd");
  const int n = static_cast<int>(k_count / 2);
  ComplexMatrix a(k_count, k_count);
  for (std::size_t row = 0; row < k_count; ++row) {
    for (int j = -n; j <= n; ++j)
      a(row, static_cast<std::size_t>(j + n)) = std::polar(1.0, static_cast<double>(j) * nodes[row]);
  }
  return a;
}

double cardinal_at(std::span<const double> nodes, std::size_t index, double x) {
  if (index >= nodes.size()) throw InputError("cardinal: node index out of range");
  const double xk = nodes[index];
  if (x == xk) return 1.0;
  LogProductAccumulator numerator;
  LogProductAccumulator denominator;
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    if (j == index) continue;
    numerator.multiply(std::sin(0.5 * (x - nodes[j])));
    denominator.multiply(std::sin(0.5 * (xk - nodes[j])));
  }
  const SignedLogValue num = numerator.result();
  const SignedLogValue den = denominator.result();
  if (num.sign == 0) return 0.0;
  return static_cast<double>(num.sign * den.sign) * std::exp(num.log_magnitude - den.log_magnitude);
}

double cardinal(const PerturbedGrid& grid, int k, double x) {
  const int n = grid.degree();
  if (k < -n || k > n) throw InputError("cardinal: k outside [-N, N]");
  return cardinal_at(grid.nodes(), static_cast<std::size_t>(k + n), x);
}

TrigPoly interpolate_nodes(std::span<const double> nodes, std::span<const cdouble> samples) {
  if (samples.size() != nodes.size()) throw InputError("interpolate: sample count must equal 2N+1");
  for (const auto& s : samples)
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
      throw InputError("interpolate: non-finite sample");
  return TrigPoly(solve_dense(interpolation_matrix(nodes), samples));
}

TrigPoly interpolate(const PerturbedGrid& grid, std::span<const cdouble> samples) {
  return interpolate_nodes(grid.nodes(), samples);
}

cdouble eval_poly(const TrigPoly& p, double x) {
  // Horner in z = e^{ix} on sum_{m=0}^{2N} c_{m-N} z^m, then rotate by z^{-N}.
  const cdouble z = std::polar(1.0, x);
  const auto coeffs = p.coeffs();
  cdouble acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
  return acc * std::polar(1.0, -static_cast<double>(p.degree()) * x);
}

std::vector<cdouble> sample(const TestFunction& f, std::span<const double> nodes) {
  std::vector<cdouble> values(nodes.size());
  std::transform(nodes.begin(), nodes.end(), values.begin(), [&f](double x) { return f(x); });
  return values;
}

double sup_error(const TestFunction& f, const TrigPoly& p, std::span<const double> nodes,
                 std::size_t resolution) {
  if (resolution < 10 * nodes.size())
    throw InputError("sup_error: resolution must be at least 10 (2N+1)");

  std::vector<double> xs;
  xs.reserve(resolution + nodes.size());
  const double step = kTwoPi / static_cast<double>(resolution);
  for (std::size_t i = 0; i < resolution; ++i) xs.push_back(-kPi + step * static_cast<double>(i));
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) xs.push_back(0.5 * (nodes[i] + nodes[i + 1]));
  if (!nodes.empty()) {
    double wrap_mid = 0.5 * (nodes.back() + nodes.front() + kTwoPi);
    if (wrap_mid >= kPi) wrap_mid -= kTwoPi;
    xs.push_back(wrap_mid);
  }
  std::sort(xs.begin(), xs.end());

  const auto err = [&](double x) { return std::abs(f(x) - eval_poly(p, x)); };
  std::size_t best = 0;
  double best_value = -1.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double e = err(xs[i]);
    if (e > best_value) {
      best_value = e;
      best = i;
    }
  }

  const double lo = best > 0 ? xs[best - 1] : xs.back() - kTwoPi;
  const double hi = best + 1 < xs.size() ? xs[best + 1] : xs.front() + kTwoPi;
  const ScalarMax polished = golden_section_max(err, lo, hi, 1e-10);
  return std::max(best_value, polished.value);
}

}  // namespace trigpert
