#include "trigpert/testfns.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

namespace trigpert {

namespace {

std::string format_label(const char* family, double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s:%.17g", family, value);
  return buf;
}

double parse_number(std::string_view text, std::string_view label) {
  double value = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last)
    throw InputError("bad number in function label: " + std::string(label));
  return value;
}

}  // namespace

TestFunction make_smooth(double sigma) {
  if (!(sigma > 0.0 && sigma <= 8.0)) throw InputError("make_smooth: sigma must lie in (0, 8]");
  TestFunction f;
  f.eval = [sigma](double x) { return std::pow(std::abs(std::sin(0.5 * x)), sigma); };
  IntegrationOptions opts;
  opts.singular_points = {0.0};
  f.exact_integral = adaptive_integrate(f.eval, -kPi, kPi, 1e-12, opts);
  f.smoothness = HolderSmoothness{sigma};
  f.label = format_label("smooth", sigma);
  return f;
}

TestFunction make_analytic(double b) {
  if (!(b > 1.0) || !std::isfinite(b))
    throw DomainError("make_analytic: b must exceed 1 (pole on the real line otherwise)");
  TestFunction f;
  f.eval = [b](double x) { return 1.0 / (b - std::cos(x)); };
  const double root = std::sqrt(b * b - 1.0);
  f.exact_integral = kTwoPi / root;
  f.smoothness = AnalyticStrip{std::log(b + root)};
  f.label = format_label("analytic", b);
  return f;
}

TestFunction shifted(const TestFunction& f, double offset) {
  TestFunction g = f;
  g.eval = [inner = f.eval, offset](double x) { return inner(x - offset); };
  char buf[48];
  std::snprintf(buf, sizeof buf, "@%.17g", offset);
  g.label = f.label + buf;
  return g;
}

TestFunction function_from_label(std::string_view label) {
  const auto colon = label.find(':');
  if (colon == std::string_view::npos)
    throw InputError("function label must look like smooth:<sigma> or analytic:<b>");
  const auto family = label.substr(0, colon);
  const double value = parse_number(label.substr(colon + 1), label);
  if (family == "smooth") return make_smooth(value);
  if (family == "analytic") return make_analytic(value);
  throw InputError("unknown function family: " + std::string(family));
}

std::size_t default_fine_size(int n) { return 64 * static_cast<std::size_t>(2 * n + 1); }

double best_approx_proxy(const TestFunction& f, int n, std::size_t fine_k) {
  if (n < 0) throw InputError("best_approx_proxy: degree must be nonnegative");
  if (fine_k < default_fine_size(n))
    throw InputError("best_approx_proxy: fine grid needs at least 64(2N+1) points");

  const std::size_t m_count = fine_k;
  const double step = kTwoPi / static_cast<double>(m_count);
  std::vector<cdouble> roots(m_count);
  for (std::size_t r = 0; r < m_count; ++r)
    roots[r] = std::polar(1.0, step * static_cast<double>(r));

  std::vector<double> values(m_count);
  for (std::size_t m = 0; m < m_count; ++m) values[m] = f(-kPi + step * static_cast<double>(m));

  // x_m = -pi + m step, so e^{-i j x_m} = (-1)^j conj(root[j m mod M]).
  const auto degree = static_cast<std::size_t>(n);
  std::vector<cdouble> coeffs(degree + 1);
  for (std::size_t j = 0; j <= degree; ++j) {
    cdouble acc = 0.0;
    std::size_t idx = 0;
    for (std::size_t m = 0; m < m_count; ++m) {
      acc += values[m] * std::conj(roots[idx]);
      idx += j;
      if (idx >= m_count) idx -= m_count;
    }
    coeffs[j] = acc * ((j % 2 == 0) ? 1.0 : -1.0) / static_cast<double>(m_count);
  }

  double worst = 0.0;
  for (std::size_t m = 0; m < m_count; ++m) {
    double t = coeffs[0].real();
    std::size_t idx = 0;
    for (std::size_t j = 1; j <= degree; ++j) {
      idx += m;
      if (idx >= m_count) idx -= m_count;
      const cdouble phase = roots[idx] * ((j % 2 == 0) ? 1.0 : -1.0);
      t += 2.0 * (coeffs[j] * phase).real();
    }
    worst = std::max(worst, std::abs(values[m] - t));
  }
  return worst;
}

}  // namespace trigpert
