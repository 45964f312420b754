#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "trigpert/quadrature.hpp"
#include "trigpert/sweep.hpp"
#include "trigpert/testfns.hpp"

using namespace trigpert;

TEST_CASE("make_smooth: values and integral") {
  const auto f2 = make_smooth(2.0);
  CHECK(f2(kPi) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(f2(0.0) == 0.0);
  // Half-angle identity: |sin(x/2)|^2 = (1 - cos x)/2 integrates to pi.
  CHECK(std::abs(f2.exact_integral - kPi) < 1e-12);
  CHECK(std::get<HolderSmoothness>(f2.smoothness).sigma == 2.0);

  // Beta-function closed form 2 sqrt(pi) Gamma((s+1)/2) / Gamma(s/2 + 1).
  for (double sigma : {0.5, 1.0, 3.0, 4.5, 8.0}) {
    const auto f = make_smooth(sigma);
    const double closed = 2 * std::sqrt(kPi) * std::tgamma(0.5 * (sigma + 1)) / std::tgamma(0.5 * sigma + 1);
    CHECK(std::abs(f.exact_integral - closed) < 1e-11);
  }
  CHECK_THROWS_AS((void)make_smooth(0.0), InputError);
  CHECK_THROWS_AS((void)make_smooth(8.5), InputError);
}

TEST_CASE("make_smooth: sigma = 1 is Lipschitz with constant 1/2") {
  const auto f = make_smooth(1.0);
  const double dx = 1e-4;
  for (double x = -kPi; x < kPi - dx; x += 0.01) CHECK(std::abs(f(x + dx) - f(x)) / dx <= 0.5 + 1e-9);
}

TEST_CASE("make_analytic: strip, values and integral") {
  const auto f = make_analytic(1.25);
  CHECK(std::get<AnalyticStrip>(f.smoothness).a == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(std::abs(f.exact_integral - 8 * kPi / 3) < 1e-13);
  CHECK(std::abs(adaptive_integrate(f.eval, -kPi, kPi, 1e-10) - f.exact_integral) < 1e-10);
  CHECK(f(0.0) == doctest::Approx(4.0));
  CHECK(f(kPi) == doctest::Approx(1.0 / 2.25));

  const auto wide = make_analytic(1e6);
  CHECK(wide(0.3) == doctest::Approx(1e-6).epsilon(1e-5));
  CHECK(wide.exact_integral == doctest::Approx(kTwoPi / 1e6).epsilon(1e-9));

  CHECK_THROWS_AS((void)make_analytic(1.0), DomainError);
  CHECK_THROWS_AS((void)make_analytic(0.5), DomainError);
}

TEST_CASE("property: periodicity and exact integrals for every family member") {
  std::mt19937_64 gen(61);
  std::uniform_real_distribution<double> ux(-kPi, kPi);
  const TestFunction fns[] = {make_smooth(0.5), make_smooth(1.0), make_smooth(2.5), make_smooth(3.0),
                              make_smooth(8.0), make_analytic(1.05), make_analytic(1.25),
                              make_analytic(3.0), shifted(make_smooth(3.0), 0.1),
                              shifted(make_analytic(1.25), -1.3)};
  for (const auto& f : fns) {
    for (int i = 0; i < 100; ++i) {
      const double x = ux(gen);
      REQUIRE(std::abs(f(x) - f(x + kTwoPi)) <= 1e-12 * (1 + std::abs(f(x))));
    }
    IntegrationOptions opts;
    opts.singular_points = {0.0, 0.1, -1.3};
    CHECK(std::abs(adaptive_integrate(f.eval, -kPi, kPi, 1e-10, opts) - f.exact_integral) <= 1e-9);
  }
}

TEST_CASE("shifted keeps integral and smoothness") {
  const auto f = make_smooth(3.0);
  const auto g = shifted(f, 0.25);
  CHECK(g(0.25) == doctest::Approx(f(0.0)));
  CHECK(g(1.0) == doctest::Approx(f(0.75)));
  CHECK(g.exact_integral == f.exact_integral);
  CHECK(g.label != f.label);
}

TEST_CASE("function_from_label registry") {
  CHECK(function_from_label("smooth:3").exact_integral == doctest::Approx(make_smooth(3.0).exact_integral));
  CHECK(function_from_label("analytic:1.25").exact_integral == doctest::Approx(8 * kPi / 3));
  CHECK_THROWS_AS((void)function_from_label("smooth"), InputError);
  CHECK_THROWS_AS((void)function_from_label("rough:2"), InputError);
  CHECK_THROWS_AS((void)function_from_label("smooth:abc"), InputError);
  CHECK_THROWS_AS((void)function_from_label("analytic:0.9"), DomainError);
}

TEST_CASE("best_approx_proxy: trig polynomials have no tail") {
  TestFunction p;
  p.eval = [](double x) { return 1.0 + 2 * std::cos(3 * x) - 0.5 * std::sin(5 * x); };
  CHECK(best_approx_proxy(p, 5, default_fine_size(5)) <= 1e-10);
  CHECK(best_approx_proxy(p, 4, default_fine_size(4)) == doctest::Approx(0.5).epsilon(1e-9));
  CHECK_THROWS_AS((void)best_approx_proxy(p, 5, default_fine_size(5) - 1), InputError);
}

TEST_CASE("best_approx_proxy: analytic family decays geometrically at rate e^-a") {
  const auto f = make_analytic(1.25);
  for (int n : {8, 12, 16, 20}) {
    const double ratio = best_approx_proxy(f, n + 1, default_fine_size(n + 1)) /
                         best_approx_proxy(f, n, default_fine_size(n));
    CHECK(ratio == doctest::Approx(0.5).epsilon(0.10));
  }
}

TEST_CASE("best_approx_proxy: smooth sigma = 3 has Jackson slope -3") {
  const auto f = make_smooth(3.0);
  std::vector<FitPoint> pts;
  for (int n : {16, 32, 64, 128, 256}) pts.emplace_back(n, best_approx_proxy(f, n, default_fine_size(n)));
  CHECK(rate_fit(pts).slope == doctest::Approx(-3.0).epsilon(0.1));
}

TEST_CASE("best_approx_proxy: oversampling self-certification") {
  for (const auto& f : {make_smooth(3.0), make_analytic(1.25)}) {
    for (int n : {8, 32}) {
      const double base = best_approx_proxy(f, n, default_fine_size(n));
      const double doubled = best_approx_proxy(f, n, 2 * default_fine_size(n));
      CHECK(std::abs(doubled - base) <= 0.01 * base);
    }
  }
}

TEST_CASE("property: trapezoid converges geometrically for the analytic family") {
  const auto f = make_analytic(1.25);
  std::vector<FitPoint> pts;
  for (int n = 8; n <= 20; n += 2) {
    const auto g = equispaced_grid(n);
    std::vector<cdouble> samples(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) samples[i] = f(g.nodes()[i]);
    pts.emplace_back(static_cast<double>(g.size()), std::abs(trapezoid(samples, g.spacing()) - f.exact_integral));
  }
  // Error ratio per added node is e^{-a}; beyond N = 20 the error is at roundoff.
  const double rate = -geometric_fit(pts).slope;
  CHECK(rate == doctest::Approx(std::log(2.0)).epsilon(0.15));
}
