#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "trigpert/interp.hpp"

using namespace trigpert;

namespace {

const PerturbKind kAllKinds[] = {PerturbKind::none, PerturbKind::uniform_random,
                                 PerturbKind::alternating_max, PerturbKind::all_plus_max,
                                 PerturbKind::random_signs_max};

TrigPoly random_poly(int n, std::mt19937_64& gen) {
  std::normal_distribution<double> normal;
  std::vector<cdouble> c(static_cast<std::size_t>(2 * n + 1));
  for (auto& v : c) v = {normal(gen), normal(gen)};
  return TrigPoly(std::move(c));
}

/// Direct summation oracle, independent of the Horner path.
cdouble direct_eval(const TrigPoly& p, double x) {
  cdouble s = 0.0;
  for (int j = -p.degree(); j <= p.degree(); ++j) s += p.coeff(j) * std::polar(1.0, j * x);
  return s;
}

TestFunction poly_function(const TrigPoly& p) {
  TestFunction f;
  f.eval = [p](double x) { return direct_eval(p, x).real(); };
  f.label = "poly";
  return f;
}

}  // namespace

TEST_CASE("TrigPoly validation") {
  CHECK_THROWS_AS(TrigPoly(std::vector<cdouble>{1.0, 2.0}), InputError);
  CHECK_THROWS_AS(TrigPoly(std::vector<cdouble>{}), InputError);
  CHECK_THROWS_AS(TrigPoly(std::vector<cdouble>{cdouble(INFINITY, 0.0)}), InputError);
  const TrigPoly p(std::vector<cdouble>{3.0, cdouble(0.0, -4.0), 1.0});
  CHECK(p.degree() == 1);
  CHECK(p.l1_norm() == doctest::Approx(8.0));
}

TEST_CASE("cardinal: Kronecker property") {
  const auto g = equispaced_grid(12);
  for (double alpha : {0.0, 0.3, 0.49}) {
    const auto pg = perturb_grid(g, PerturbStrategy::of(PerturbKind::uniform_random), alpha, 21);
    for (int k = -12; k <= 12; ++k)
      for (int j = -12; j <= 12; ++j) {
        const double v = cardinal(pg, k, pg.node(j));
        if (j == k) REQUIRE(v == 1.0);
        else REQUIRE(std::abs(v) < 1e-12);
      }
  }
}

TEST_CASE("cardinal: equispaced N=1 hand value") {
  const auto pg = perturb_grid(equispaced_grid(1), PerturbStrategy::of(PerturbKind::none), 0.0, 0);
  // sin(pi/2)/sin(pi/3) * sin(-pi/6)/sin(-pi/3)
  const double hand = (1.0 / std::sin(kPi / 3)) * (std::sin(-kPi / 6) / std::sin(-kPi / 3));
  REQUIRE(std::abs(hand - 2.0 / 3.0) < 1e-15);
  CHECK(cardinal(pg, 0, kPi / 3) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("property: partition of unity") {
  std::mt19937_64 gen(22);
  std::uniform_real_distribution<double> ux(-kPi, kPi);
  std::uniform_real_distribution<double> ua(0.0, 0.49);
  std::uniform_int_distribution<int> un(1, 40);
  for (int grid_index = 0; grid_index < 50; ++grid_index) {
    const int n = un(gen);
    const auto pg = perturb_grid(equispaced_grid(n), PerturbStrategy::of(PerturbKind::uniform_random),
                                 ua(gen), gen());
    for (int i = 0; i < 1000; ++i) {
      const double x = ux(gen);
      double s = 0.0;
      for (int k = -n; k <= n; ++k) s += cardinal(pg, k, x);
      REQUIRE(std::abs(s - 1.0) <= 1e-10);
    }
  }
}

TEST_CASE("cardinal: no overflow at the largest supported size") {
  const auto pg = perturb_grid(equispaced_grid(kMaxDegree),
                               PerturbStrategy::of(PerturbKind::alternating_max), 0.45, 1);
  for (int k : {-kMaxDegree, -7, 0, 1000, kMaxDegree}) {
    const double v = cardinal(pg, k, 0.123456);
    CHECK(std::isfinite(v));
    CHECK(std::abs(v) < 1e3);
  }
  CHECK(cardinal(pg, 5, pg.node(5)) == 1.0);
}

TEST_CASE("interpolate: trivial coefficient vectors") {
  const auto pg = perturb_grid(equispaced_grid(6), PerturbStrategy::of(PerturbKind::uniform_random), 0.35, 3);
  const std::vector<cdouble> ones(pg.size(), 1.0);
  const auto p1 = interpolate(pg, ones);
  for (int j = -6; j <= 6; ++j) CHECK(std::abs(p1.coeff(j) - (j == 0 ? 1.0 : 0.0)) < 1e-12);

  std::vector<cdouble> wave(pg.size());
  for (std::size_t i = 0; i < pg.size(); ++i) wave[i] = std::polar(1.0, pg.nodes()[i]);
  const auto p2 = interpolate(pg, wave);
  for (int j = -6; j <= 6; ++j) CHECK(std::abs(p2.coeff(j) - (j == 1 ? 1.0 : 0.0)) < 1e-12);

  CHECK_THROWS_AS((void)interpolate(pg, std::vector<cdouble>(3, 1.0)), InputError);
}

TEST_CASE("interpolate: construct-then-recover on every strategy") {
  std::mt19937_64 gen(23);
  for (int n : {4, 16, 64, 256}) {
    for (double alpha : {0.0, 0.2, 0.45}) {
      for (auto kind : kAllKinds) {
        const auto p = random_poly(n, gen);
        const auto pg = perturb_grid(equispaced_grid(n), PerturbStrategy::of(kind), alpha, gen());
        std::vector<cdouble> samples(pg.size());
        for (std::size_t i = 0; i < pg.size(); ++i) samples[i] = direct_eval(p, pg.nodes()[i]);
        const auto q = interpolate(pg, samples);
        double err = 0.0, norm = 0.0;
        for (int j = -n; j <= n; ++j) {
          err += std::norm(q.coeff(j) - p.coeff(j));
          norm += std::norm(p.coeff(j));
        }
        REQUIRE(std::sqrt(err / norm) <= 1e-9);
        double sample_max = 0.0, node_err = 0.0;
        for (std::size_t i = 0; i < pg.size(); ++i) {
          sample_max = std::max(sample_max, std::abs(samples[i]));
          node_err = std::max(node_err, std::abs(eval_poly(q, pg.nodes()[i]) - samples[i]));
        }
        REQUIRE(node_err <= 1e-9 * (1 + sample_max));
      }
    }
  }
}

TEST_CASE("eval_poly: simple polynomials and periodicity") {
  const TrigPoly constant(std::vector<cdouble>{0.0, 5.0, 0.0});
  const TrigPoly cosine(std::vector<cdouble>{0.5, 0.0, 0.5});
  std::mt19937_64 gen(24);
  std::uniform_real_distribution<double> ux(-kPi, kPi);
  const auto p = random_poly(20, gen);
  for (int i = 0; i < 100; ++i) {
    const double x = ux(gen);
    CHECK(std::abs(eval_poly(constant, x) - 5.0) < 1e-14);
    CHECK(std::abs(eval_poly(cosine, x) - std::cos(x)) < 1e-14);
    CHECK(std::abs(eval_poly(p, x) - eval_poly(p, x + kTwoPi)) < 1e-12);
    CHECK(std::abs(eval_poly(p, x) - direct_eval(p, x)) < 1e-12);
  }
}

TEST_CASE("eval_poly agrees with the cardinal representation") {
  std::mt19937_64 gen(25);
  std::uniform_real_distribution<double> ux(-kPi, kPi);
  std::normal_distribution<double> normal;
  for (double alpha : {0.0, 0.25, 0.45}) {
    const int n = 24;
    const auto pg = perturb_grid(equispaced_grid(n), PerturbStrategy::of(PerturbKind::uniform_random),
                                 alpha, gen());
    std::vector<cdouble> samples(pg.size());
    for (auto& s : samples) s = {normal(gen), normal(gen)};
    const auto p = interpolate(pg, samples);
    for (int i = 0; i < 100; ++i) {
      const double x = ux(gen);
      cdouble via_cardinals = 0.0;
      for (int k = -n; k <= n; ++k) via_cardinals += samples[static_cast<std::size_t>(k + n)] * cardinal(pg, k, x);
      REQUIRE(std::abs(eval_poly(p, x) - via_cardinals) < 1e-8);
    }
  }
}

TEST_CASE("property: unit samples interpolate to the cardinal function") {
  std::mt19937_64 gen(26);
  std::uniform_real_distribution<double> ux(-kPi, kPi);
  const int n = 10;
  const auto pg = perturb_grid(equispaced_grid(n), PerturbStrategy::of(PerturbKind::random_signs_max), 0.4, 5);
  for (int k = -n; k <= n; ++k) {
    std::vector<cdouble> unit(pg.size(), 0.0);
    unit[static_cast<std::size_t>(k + n)] = 1.0;
    const auto p = interpolate(pg, unit);
    for (int i = 0; i < 50; ++i) {
      const double x = ux(gen);
      REQUIRE(std::abs(eval_poly(p, x) - cardinal(pg, k, x)) < 1e-8);
    }
  }
}

TEST_CASE("sup_error: exactness and trivial cases") {
  std::mt19937_64 gen(27);
  for (int n : {4, 16, 64}) {
    for (auto kind : kAllKinds) {
      const auto pg = perturb_grid(equispaced_grid(n), PerturbStrategy::of(kind), 0.45, gen());
      // Real-valued trig polynomial: Hermitian-symmetric coefficients.
      auto raw = random_poly(n, gen);
      std::vector<cdouble> c(raw.coeffs().begin(), raw.coeffs().end());
      c[static_cast<std::size_t>(n)] = c[static_cast<std::size_t>(n)].real();
      for (int j = 1; j <= n; ++j) c[static_cast<std::size_t>(n - j)] = std::conj(c[static_cast<std::size_t>(n + j)]);
      const TrigPoly p(c);
      const auto f = poly_function(p);
      const auto q = interpolate(pg, sample(f, pg.nodes()));
      REQUIRE(sup_error(f, q, pg.nodes(), 10 * pg.size()) <= 1e-8 * p.l1_norm());
    }
  }

  const auto pg = perturb_grid(equispaced_grid(3), PerturbStrategy::of(PerturbKind::none), 0.0, 0);
  TestFunction zero;
  zero.eval = [](double) { return 0.0; };
  const TrigPoly cosine(std::vector<cdouble>{0.0, 0.0, 0.5, 0.0, 0.5, 0.0, 0.0});
  CHECK(sup_error(zero, cosine, pg.nodes(), 70) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS((void)sup_error(zero, cosine, pg.nodes(), 69), InputError);
}

TEST_CASE("sup_error decays for the analytic family") {
  const auto f = make_analytic(1.25);
  double previous = INFINITY;
  for (int n : {8, 16}) {
    const auto pg = perturb_grid(equispaced_grid(n), PerturbStrategy::of(PerturbKind::none), 0.0, 0);
    const auto p = interpolate(pg, sample(f, pg.nodes()));
    const double err = sup_error(f, p, pg.nodes(), 16 * pg.size());
    CHECK(err < previous);
    previous = err;
  }
}

TEST_CASE("interpolation_matrix entries") {
  const std::vector<double> nodes{-1.0, 0.25, 2.0};
  const auto a = interpolation_matrix(nodes);
  for (std::size_t k = 0; k < 3; ++k)
    for (int j = -1; j <= 1; ++j)
      CHECK(std::abs(a(k, static_cast<std::size_t>(j + 1)) - std::polar(1.0, j * nodes[k])) < 1e-15);
}
