#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <variant>

#include "trigpert/numerics.hpp"

namespace trigpert {

/// f has `sigma` derivatives: floor(sigma) continuous derivatives, the top one
/// Hoelder continuous with the fractional exponent (Lipschitz at integers).
struct HolderSmoothness {
  double sigma;
};

/// f continues analytically to the strip |Im x| < a.
struct AnalyticStrip {
  double a;
};

using Smoothness = std::variant<HolderSmoothness, AnalyticStrip>;

/// A 2pi-periodic real test function with its exact integral over [-pi, pi].
struct TestFunction {
  std::function<double(double)> eval;
  double exact_integral = 0.0;
  Smoothness smoothness = HolderSmoothness{0.0};
  std::string label;

  double operator()(double x) const { return eval(x); }
};

/// f(x) = |sin(x/2)|^sigma, 0 < sigma <= 8; single singularity at x = 0.
[[nodiscard]] TestFunction make_smooth(double sigma);

/// f(x) = 1 / (b - cos x), b > 1; strip half-width a = log(b + sqrt(b^2 - 1)).
[[nodiscard]] TestFunction make_analytic(double b);

/// f(x - offset). Same integral and smoothness.
[[nodiscard]] TestFunction shifted(const TestFunction& f, double offset);

/// Registry lookup: "smooth:<sigma>" or "analytic:<b>".
[[nodiscard]] TestFunction function_from_label(std::string_view label);

/// Default fine-grid size for best_approx_proxy: 64x oversampling of 2N+1.
[[nodiscard]] std::size_t default_fine_size(int n);

/// Sup-norm, on a fine equispaced grid of fine_k points, of f minus its
/// Fourier series truncated to degree N. Tracks the best-approximation error
/// up to a Lebesgue-constant factor, so it shares the rate exponent. Requires
/// fine_k >= 64 (2N + 1).
[[nodiscard]] double best_approx_proxy(const TestFunction& f, int n, std::size_t fine_k);

}  // namespace trigpert
