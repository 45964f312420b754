#include "trigpert/lebesgue.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "trigpert/interp.hpp"

namespace trigpert {

namespace {

constexpr double kLn2 = 0.69314718055994530942;

double wrap_to_period(double x) {
  if (x >= kPi) return x - kTwoPi;
  if (x < -kPi) return x + kTwoPi;
  return x;
}

void require_alpha_open(double alpha, const char* who) {
  if (!(alpha > 0.0 && alpha < 0.5))
    throw DomainError(std::string(who) + ": alpha must satisfy 0 < alpha < 1/2");
}

void require_k(int n, int k, const char* who) {
  if (k < 0 || k > n) throw InputError(std::string(who) + ": k must satisfy 0 <= k <= N");
}

}  // namespace

LebesgueFunction::LebesgueFunction(std::span<const double> nodes)
    : nodes_(nodes.begin(), nodes.end()),
      cos_half_(nodes.size()),
      sin_half_(nodes.size()),
      scaled_inv_denominator_(nodes.size()) {
  if (nodes_.empty()) throw InputError("LebesgueFunction: empty node set");
  const std::size_t count = nodes_.size();
  std::vector<double> neg_log_den(count);
  for (std::size_t k = 0; k < count; ++k) {
    cos_half_[k] = std::cos(0.5 * nodes_[k]);
    sin_half_[k] = std::sin(0.5 * nodes_[k]);
    LogProductAccumulator den;
    for (std::size_t j = 0; j < count; ++j)
      if (j != k) den.multiply(std::sin(0.5 * (nodes_[k] - nodes_[j])));
    const SignedLogValue d = den.result();
    if (d.sign == 0) throw SingularSystemError("LebesgueFunction: coincident nodes");
    neg_log_den[k] = -d.log_magnitude;
  }
  shift_ = *std::max_element(neg_log_den.begin(), neg_log_den.end());
  for (std::size_t k = 0; k < count; ++k)
    scaled_inv_denominator_[k] = std::exp(neg_log_den[k] - shift_);
}

double LebesgueFunction::operator()(double x) const {
  const double c = std::cos(0.5 * x);
  const double s = std::sin(0.5 * x);
  double mantissa = 1.0;
  long exponent = 0;
  double sum = 0.0;
  for (std::size_t j = 0; j < nodes_.size(); ++j) {
    if (x == nodes_[j]) return 1.0;
    const double factor = std::abs(s * cos_half_[j] - c * sin_half_[j]);
    if (factor == 0.0) return 1.0;
    mantissa *= factor;
    if (mantissa < 0x1p-600) {
      int e = 0;
      mantissa = std::frexp(mantissa, &e);
      exponent += e;
    }
    sum += scaled_inv_denominator_[j] / factor;
  }
  return std::exp(std::log(mantissa) + static_cast<double>(exponent) * kLn2 + shift_ +
                  std::log(sum));
}

double lebesgue_function(const PerturbedGrid& grid, double x) {
  return LebesgueFunction(grid.nodes())(x);
}

LebesgueMax lebesgue_constant(const PerturbedGrid& grid, const LebesgueSearchOptions& opts) {
  return lebesgue_constant_nodes(grid.nodes(), opts);
}

LebesgueMax lebesgue_constant_nodes(std::span<const double> nodes,
                                    const LebesgueSearchOptions& opts) {
  if (opts.samples_per_interval < 16)
    throw InputError("lebesgue_constant: samples_per_interval must be at least 16");
  const LebesgueFunction lebesgue(nodes);
  const std::size_t count = nodes.size();
  if (count == 1) return {1.0, nodes[0]};

  const auto samples = static_cast<std::size_t>(opts.samples_per_interval);
  // Chebyshev points of the first kind on [-1, 1], ascending.
  std::vector<double> cheb(samples);
  for (std::size_t m = 0; m < samples; ++m)
    cheb[samples - 1 - m] =
        std::cos((2.0 * static_cast<double>(m) + 1.0) * kPi / (2.0 * static_cast<double>(samples)));

  struct IntervalBest {
    double lo;
    double hi;
    std::size_t index;  // best sample
    double value;
  };
  std::vector<IntervalBest> best(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double lo = nodes[i];
    const double hi = i + 1 < count ? nodes[i + 1] : nodes[0] + kTwoPi;
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    IntervalBest b{lo, hi, 0, -1.0};
    for (std::size_t m = 0; m < samples; ++m) {
      const double v = lebesgue(mid + half * cheb[m]);
      if (v > b.value) {
        b.value = v;
        b.index = m;
      }
    }
    best[i] = b;
  }

  const auto polish_count =
      std::min(count, static_cast<std::size_t>(std::max(opts.polished_intervals, 1)));
  std::partial_sort(best.begin(), best.begin() + static_cast<std::ptrdiff_t>(polish_count),
                    best.end(),
                    [](const IntervalBest& a, const IntervalBest& b) { return a.value > b.value; });

  LebesgueMax result{best[0].value, 0.0};
  {
    const auto& b = best[0];
    result.argmax = 0.5 * (b.lo + b.hi) + 0.5 * (b.hi - b.lo) * cheb[b.index];
  }
  for (std::size_t r = 0; r < polish_count; ++r) {
    const auto& b = best[r];
    const double mid = 0.5 * (b.lo + b.hi);
    const double half = 0.5 * (b.hi - b.lo);
    const double lo = b.index > 0 ? mid + half * cheb[b.index - 1] : b.lo;
    const double hi = b.index + 1 < samples ? mid + half * cheb[b.index + 1] : b.hi;
    const ScalarMax polished = golden_section_max(lebesgue, lo, hi, opts.x_tolerance);
    if (polished.value > result.value) result = {polished.value, polished.x};
  }
  result.argmax = wrap_to_period(result.argmax);
  return result;
}

CertifiedLebesgueMax certified_lebesgue_constant(const PerturbedGrid& grid,
                                                 LebesgueSearchOptions opts, double tolerance) {
  constexpr int kMaxDensity = 1024;
  LebesgueMax previous = lebesgue_constant(grid, opts);
  while (opts.samples_per_interval < kMaxDensity) {
    opts.samples_per_interval *= 2;
    const LebesgueMax next = lebesgue_constant(grid, opts);
    if (std::abs(next.value - previous.value) < tolerance)
      return {next.value >= previous.value ? next : previous, opts.samples_per_interval / 2, true};
    previous = next;
  }
  return {previous, opts.samples_per_interval, false};
}

double bound_shape(int n, double alpha) {
  if (n <= 0) throw InputError("bound_shape: N must be positive");
  if (!(alpha >= 0.0 && alpha < 0.5)) throw DomainError("bound_shape: alpha must lie in [0, 1/2)");
  const double log_n = std::log(static_cast<double>(n));
  if (alpha == 0.0) return 4.0 * log_n;
  return std::expm1(4.0 * alpha * log_n) / (alpha * (1.0 - 2.0 * alpha));
}

CrossoverPoints crossover_points(const PerturbedGrid& grid) {
  const int n = grid.degree();
  const double h = grid.spacing();
  const double alpha = grid.alpha();
  std::vector<double> values(static_cast<std::size_t>(2 * n + 2));
  values[0] = -kPi;
  const double t0 = std::tan(0.5 * grid.node(0));
  const double cos_ah = std::cos(alpha * h);
  for (int k = -n; k <= n; ++k) {
    double x = 0.0;
    if (k != 0) {
      const double kh = static_cast<double>(k) * h;
      if (alpha == 0.0) {
        x = kh;
      } else {
        const double num = std::cos(kh) - cos_ah + t0 * std::sin(kh);
        const double den = t0 * (std::cos(kh) + cos_ah) - std::sin(kh);
        x = 2.0 * std::atan(num / den);
      }
    }
    values[static_cast<std::size_t>(k + n + 1)] = x;
  }
  return CrossoverPoints(n, std::move(values));
}

Interval bound_region(int n, double alpha, int k) {
  require_k(n, k, "bound_region");
  const double h = kTwoPi / static_cast<double>(2 * n + 1);
  return {(-static_cast<double>(k) - 1.0 - alpha) * h, (-static_cast<double>(k) + alpha) * h};
}

double log_pk(int n, double alpha, int k, double x) {
  require_k(n, k, "log_pk");
  const double h = kTwoPi / static_cast<double>(2 * n + 1);
  LogProductAccumulator p;
  for (int j = 1; j <= n; ++j) {
    const double jd = static_cast<double>(j);
    p.multiply(std::abs(std::sin(0.5 * (x - (jd - alpha) * h))));
    if (j <= k)
      p.multiply(std::abs(std::sin(0.5 * (x + (jd - alpha) * h))));
    else
      p.multiply(std::abs(std::sin(0.5 * (x + (jd + alpha) * h))));
  }
  return p.result().log_magnitude;
}

double log_qk(int n, double alpha, int k) {
  require_k(n, k, "log_qk");
  const double h = kTwoPi / static_cast<double>(2 * n + 1);
  LogProductAccumulator q;
  for (int j = 1; j <= n; ++j) {
    const double jd = static_cast<double>(j);
    q.multiply(std::abs(std::sin(0.5 * (2.0 * alpha - jd) * h)));
    if (j <= k)
      q.multiply(std::abs(std::sin(0.5 * jd * h)));
    else
      q.multiply(std::abs(std::sin(0.5 * (2.0 * alpha + jd) * h)));
  }
  return q.result().log_magnitude;
}

double mk_numeric(int n, double alpha, int k) {
  require_alpha_open(alpha, "mk_numeric");
  require_k(n, k, "mk_numeric");
  const Interval region = bound_region(n, alpha, k);
  const double lo = std::max(-kPi, region.lo);
  const double hi = std::min(0.0, region.hi);
  if (!(lo < hi)) throw InternalError("mk_numeric: empty search region");

  constexpr int kSamples = 256;
  const auto log_ratio = [&](double x) { return log_pk(n, alpha, k, x); };
  const double step = (hi - lo) / static_cast<double>(kSamples - 1);
  int best = 0;
  double best_value = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < kSamples; ++i) {
    const double v = log_ratio(lo + step * i);
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }
  const double a = lo + step * std::max(best - 1, 0);
  const double b = lo + step * std::min(best + 1, kSamples - 1);
  const ScalarMax polished = golden_section_max(log_ratio, a, b, 1e-12);
  return std::exp(std::max(best_value, polished.value) - log_qk(n, alpha, k));
}

double mk_analytic(int n, double alpha, int k) {
  require_alpha_open(alpha, "mk_analytic");
  require_k(n, k, "mk_analytic");
  const double scale = 1.0 - 2.0 * alpha;
  if (k <= 1) return 10.0 * kPi / scale;
  const double kd = static_cast<double>(k);
  return 3.0 * kPi * std::pow(kd + 1.0, 2.0 * alpha) / (scale * std::pow(kd - 1.0, scale));
}

double nine_sum_from(std::span<const double> mk) {
  return 9.0 * std::accumulate(mk.begin(), mk.end(), 0.0);
}

double nine_sum_bound(int n, double alpha) {
  require_alpha_open(alpha, "nine_sum_bound");
  std::vector<double> mk(static_cast<std::size_t>(n + 1));
  for (int k = 0; k <= n; ++k) mk[static_cast<std::size_t>(k)] = mk_numeric(n, alpha, k);
  return nine_sum_from(mk);
}

BoundTable bound_table(const PerturbedGrid& grid, std::optional<std::vector<double>> mk) {
  const int n = grid.degree();
  const double alpha = grid.alpha();
  require_alpha_open(alpha, "bound_table");
  const auto count = static_cast<std::size_t>(n + 1);
  if (mk && mk->size() != count) throw InputError("bound_table: need N+1 values of M_k");
  if (!mk) {
    mk.emplace(count);
    for (int k = 0; k <= n; ++k) (*mk)[static_cast<std::size_t>(k)] = mk_numeric(n, alpha, k);
  }
  std::vector<Interval> regions(count);
  std::vector<double> bounds(count);
  for (int k = 0; k <= n; ++k) {
    regions[static_cast<std::size_t>(k)] = bound_region(n, alpha, k);
    bounds[static_cast<std::size_t>(k)] = mk_analytic(n, alpha, k);
  }
  return {n, alpha, crossover_points(grid), std::move(regions), std::move(*mk), std::move(bounds),
          mk_analytic_enforced(n)};
}

double l0_region_max(const PerturbedGrid& grid, const CrossoverPoints& crossover, int k,
                     int samples) {
  const int n = grid.degree();
  require_k(n, k, "l0_region_max");
  if (samples < 2) throw InputError("l0_region_max: need at least 2 samples");
  const double lo = crossover.at(-(k + 1));
  const double hi = crossover.at(-k);

  const auto nodes = grid.nodes();
  const auto center = static_cast<std::size_t>(n);
  LogProductAccumulator den;
  for (std::size_t j = 0; j < nodes.size(); ++j)
    if (j != center) den.multiply(std::sin(0.5 * (nodes[center] - nodes[j])));
  const double log_den = den.result().log_magnitude;

  const auto abs_l0 = [&](double x) {
    LogProductAccumulator num;
    for (std::size_t j = 0; j < nodes.size(); ++j)
      if (j != center) num.multiply(std::sin(0.5 * (x - nodes[j])));
    const SignedLogValue v = num.result();
    return v.sign == 0 ? 0.0 : std::exp(v.log_magnitude - log_den);
  };

  const double step = (hi - lo) / static_cast<double>(samples - 1);
  int best = 0;
  double best_value = -1.0;
  for (int i = 0; i < samples; ++i) {
    const double v = abs_l0(lo + step * i);
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }
  const double a = lo + step * std::max(best - 1, 0);
  const double b = lo + step * std::min(best + 1, samples - 1);
  return std::max(best_value, golden_section_max(abs_l0, a, b, 1e-12).value);
}

TwoNormLebesgue two_norm_lebesgue(const PerturbedGrid& grid) {
  const double sigma = min_singular_value(interpolation_matrix(grid.nodes()));
  const double root_k = std::sqrt(static_cast<double>(grid.size()));
  const double value = sigma > 0.0 ? root_k / sigma : std::numeric_limits<double>::infinity();
  return {value, sigma, sigma < 1e-14};
}

LebesgueReport lebesgue_report(const PerturbedGrid& grid, const LebesgueSearchOptions& opts,
                               bool with_two_norm, bool with_nine_sum) {
  const LebesgueMax lmax = lebesgue_constant(grid, opts);
  LebesgueReport report{lmax.value, lmax.argmax, std::nullopt,
                        bound_shape(std::max(grid.degree(), 1), grid.alpha()), std::nullopt};
  if (with_two_norm) report.lambda_two = two_norm_lebesgue(grid).value;
  if (with_nine_sum && grid.alpha() > 0.0)
    report.nine_sum = nine_sum_bound(grid.degree(), grid.alpha());
  return report;
}

}  // namespace trigpert
