#include "trigpert/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <limits>
#include <mutex>
#include <thread>

#include "trigpert/interp.hpp"
#include "trigpert/lebesgue.hpp"
#include "trigpert/quadrature.hpp"
#include "trigpert/testfns.hpp"

namespace trigpert {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string_view to_string(SweepCommand command) {
  switch (command) {
    case SweepCommand::lebesgue_sweep: return "lebesgue-sweep";
    case SweepCommand::two_norm_sweep: return "two-norm-sweep";
    case SweepCommand::quad_sweep: return "quad-sweep";
    case SweepCommand::converge: return "converge";
    case SweepCommand::verify_bounds: return "verify-bounds";
    case SweepCommand::grids: return "grids";
  }
  return "unknown";
}

SweepCommand parse_command(std::string_view name) {
  for (auto c : {SweepCommand::lebesgue_sweep, SweepCommand::two_norm_sweep,
                 SweepCommand::quad_sweep, SweepCommand::converge, SweepCommand::verify_bounds,
                 SweepCommand::grids}) {
    if (to_string(c) == name) return c;
  }
  throw InputError("unknown command: " + std::string(name));
}

void validate(const SweepConfig& cfg) {
  if (cfg.alphas.empty()) throw InputError("at least one alpha is required");
  for (double a : cfg.alphas)
    if (!(a >= 0.0 && a < 0.5)) throw InputError("alpha " + format_double(a) + " outside [0, 1/2)");
  if (cfg.n_list.empty()) throw InputError("at least one N is required");
  for (std::size_t i = 0; i < cfg.n_list.size(); ++i) {
    const int n = cfg.n_list[i];
    if (n < 1 || n > kMaxDegree) throw InputError("N must lie in [1, 2048]");
    if (i > 0 && n <= cfg.n_list[i - 1]) throw InputError("N list must be strictly ascending");
  }
  if (cfg.trials < 1) throw InputError("trials must be at least 1");
  if (cfg.threads < 1) throw InputError("threads must be at least 1");
  if (cfg.samples_per_interval < 16) throw InputError("samples per interval must be at least 16");
  if (cfg.strategy == PerturbKind::explicit_shifts)
    throw InputError("the explicit strategy needs a payload and is not available in sweeps");

  switch (cfg.command) {
    case SweepCommand::two_norm_sweep:
      if (cfg.n_list.back() > 256) throw InputError("two-norm-sweep is capped at N = 256 (K = 513)");
      break;
    case SweepCommand::verify_bounds:
      for (double a : cfg.alphas)
        if (a == 0.0) throw InputError("verify-bounds needs alpha > 0");
      break;
    case SweepCommand::grids:
      if (cfg.alphas.size() != 1 || cfg.n_list.size() != 1 || cfg.trials != 1)
        throw InputError("grids dumps exactly one grid: give one alpha, one N and trials = 1");
      break;
    case SweepCommand::converge:
      (void)function_from_label(cfg.function);
      break;
    default:
      break;
  }
}

namespace {

RateFit least_squares(std::span<const FitPoint> points, bool log_abscissa) {
  if (points.size() < 3) throw InputError("rate fit needs at least three points");
  const auto count = static_cast<double>(points.size());
  double sx = 0.0, sy = 0.0;
  std::vector<double> xs, ys;
  for (const auto& [n, v] : points) {
    if (!(v > 0.0) || !std::isfinite(v)) throw InputError("rate fit needs positive finite values");
    if (log_abscissa && !(n > 0.0)) throw InputError("rate fit needs positive abscissae");
    xs.push_back(log_abscissa ? std::log(n) : n);
    ys.push_back(std::log(v));
    sx += xs.back();
    sy += ys.back();
  }
  const double mx = sx / count;
  const double my = sy / count;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0.0) throw InputError("rate fit needs distinct abscissae");
  RateFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.points_used = points.size();
  // Relative threshold: a constant series fitted in floating point leaves
  // residual variance at the rounding level.
  if (syy <= 1e-24 * std::max(1.0, my * my) * count) {
    fit.slope = 0.0;
    fit.intercept = my;
    fit.r_squared = 0.0;
    fit.degenerate = true;
  } else {
    fit.r_squared = std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0);
  }
  return fit;
}

double median(std::vector<double> v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(v.begin(), v.end());
  const std::size_t mid = v.size() / 2;
  return v.size() % 2 == 1 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

/// Runs fn(i) for i in [0, count) on `threads` workers; results are stored by
/// index, so their order is independent of scheduling.
template <class Result>
std::vector<Result> parallel_map(std::size_t count, unsigned threads,
                                 const std::function<Result(std::size_t)>& fn) {
  std::vector<Result> out(count);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        out[i] = fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(count);
        return;
      }
    }
  };
  const auto workers = static_cast<unsigned>(
      std::min<std::size_t>(std::max(threads, 1U), std::max<std::size_t>(count, 1)));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

struct Task {
  std::size_t alpha_index;
  std::size_t n_index;
  std::uint64_t trial;
};

std::vector<Task> make_tasks(const SweepConfig& cfg) {
  std::vector<Task> tasks;
  for (std::size_t a = 0; a < cfg.alphas.size(); ++a)
    for (std::size_t n = 0; n < cfg.n_list.size(); ++n)
      for (std::uint64_t t = 0; t < cfg.trials; ++t) tasks.push_back({a, n, cfg.first_trial + t});
  return tasks;
}

struct RowResult {
  std::string text;
  std::vector<double> metrics;
};

/// metric values across trials, grouped [alpha][N].
std::vector<std::vector<std::vector<double>>> group_metric(const SweepConfig& cfg,
                                                           const std::vector<Task>& tasks,
                                                           const std::vector<RowResult>& rows,
                                                           std::size_t metric) {
  std::vector<std::vector<std::vector<double>>> g(
      cfg.alphas.size(), std::vector<std::vector<double>>(cfg.n_list.size()));
  for (std::size_t i = 0; i < tasks.size(); ++i)
    g[tasks[i].alpha_index][tasks[i].n_index].push_back(rows[i].metrics[metric]);
  return g;
}

PerturbedGrid grid_for(const SweepConfig& cfg, double alpha, int n, std::uint64_t trial) {
  return perturb_grid(equispaced_grid(n), PerturbStrategy::of(cfg.strategy), alpha,
                      derive_grid_seed(cfg.seed, n, trial));
}

std::string row_prefix(const SweepConfig& cfg, double alpha, int n, std::uint64_t trial) {
  return format_double(alpha) + "," + std::to_string(n) + "," + std::to_string(trial) + "," +
         std::to_string(cfg.seed);
}

class Summary {
 public:
  explicit Summary(SweepOutcome& outcome) : outcome_(outcome) {}

  void fit(const std::string& metric, double alpha, const std::string& stat, const RateFit& f,
           const char* kind = "power") {
    outcome_.summary.push_back("# fit," + metric + ",alpha=" + format_double(alpha) + ",stat=" +
                               stat + ",kind=" + kind + ",slope=" + format_double(f.slope) +
                               ",intercept=" + format_double(f.intercept) + ",r_squared=" +
                               format_double(f.r_squared) + ",points=" +
                               std::to_string(f.points_used) +
                               (f.degenerate ? ",degenerate=1" : ""));
  }

  void check(const std::string& name, double alpha, bool pass, const std::string& detail) {
    outcome_.summary.push_back("# check," + name + ",alpha=" + format_double(alpha) + "," +
                               (pass ? "PASS" : "FAIL") + "," + detail);
    if (!pass) outcome_.passed = false;
  }

  void info(const std::string& name, double alpha, const std::string& detail) {
    outcome_.summary.push_back("# info," + name + ",alpha=" + format_double(alpha) + "," + detail);
  }

 private:
  SweepOutcome& outcome_;
};

std::vector<FitPoint> series(const std::vector<int>& ns, const std::vector<double>& values,
                             double floor = 0.0) {
  std::vector<FitPoint> pts;
  for (std::size_t i = 0; i < ns.size(); ++i)
    if (values[i] > floor && std::isfinite(values[i]))
      pts.emplace_back(static_cast<double>(ns[i]), values[i]);
  return pts;
}

std::vector<double> maxima(const std::vector<std::vector<double>>& per_n) {
  std::vector<double> out;
  for (const auto& v : per_n) out.push_back(*std::max_element(v.begin(), v.end()));
  return out;
}

std::vector<double> medians(const std::vector<std::vector<double>>& per_n) {
  std::vector<double> out;
  for (const auto& v : per_n) out.push_back(median(v));
  return out;
}

// ---------------------------------------------------------------------------

SweepOutcome lebesgue_sweep(const SweepConfig& cfg) {
  SweepOutcome outcome;
  outcome.header = "alpha,N,trial,seed,strategy,lambda_inf,argmax_x,bound_shape,nine_sum";

  const std::size_t pairs = cfg.alphas.size() * cfg.n_list.size();
  const auto nine = parallel_map<double>(pairs, cfg.threads, [&](std::size_t i) {
    const double alpha = cfg.alphas[i / cfg.n_list.size()];
    const int n = cfg.n_list[i % cfg.n_list.size()];
    return alpha > 0.0 ? nine_sum_bound(n, alpha) : std::numeric_limits<double>::quiet_NaN();
  });

  LebesgueSearchOptions opts;
  opts.samples_per_interval = cfg.samples_per_interval;
  const auto tasks = make_tasks(cfg);
  const auto rows = parallel_map<RowResult>(tasks.size(), cfg.threads, [&](std::size_t i) {
    const Task& t = tasks[i];
    const double alpha = cfg.alphas[t.alpha_index];
    const int n = cfg.n_list[t.n_index];
    const double nine_sum = nine[t.alpha_index * cfg.n_list.size() + t.n_index];
    const auto lm = lebesgue_constant(grid_for(cfg, alpha, n, t.trial), opts);
    const double shape = bound_shape(n, alpha);
    RowResult r;
    r.text = row_prefix(cfg, alpha, n, t.trial) + "," + std::string(to_string(cfg.strategy)) + "," +
             format_double(lm.value) + "," + format_double(lm.argmax) + "," + format_double(shape) +
             "," + (std::isnan(nine_sum) ? std::string() : format_double(nine_sum));
    r.metrics = {lm.value, nine_sum, shape};
    return r;
  });
  for (const auto& r : rows) outcome.rows.push_back(r.text);

  Summary summary(outcome);
  const auto lambda = group_metric(cfg, tasks, rows, 0);
  for (std::size_t a = 0; a < cfg.alphas.size(); ++a) {
    const double alpha = cfg.alphas[a];
    std::size_t below_one = 0, above_nine = 0;
    for (std::size_t i = 0; i < tasks.size(); ++i) {
      if (tasks[i].alpha_index != a) continue;
      if (rows[i].metrics[0] < 1.0) ++below_one;
      if (alpha > 0.0 && rows[i].metrics[0] > rows[i].metrics[1]) ++above_nine;
    }
    summary.check("lambda_at_least_one", alpha, below_one == 0,
                  "violations=" + std::to_string(below_one));
    if (alpha > 0.0)
      summary.check("lambda_le_nine_sum", alpha, above_nine == 0,
                    "violations=" + std::to_string(above_nine));

    const auto max_n = maxima(lambda[a]);
    const auto med_n = medians(lambda[a]);
    const auto pts_max = series(cfg.n_list, max_n);
    if (pts_max.size() < 3) {
      summary.info("fit_skipped", alpha, "reason=fewer than three N values");
      continue;
    }
    const RateFit fmax = rate_fit(pts_max);
    const RateFit fmed = rate_fit(series(cfg.n_list, med_n));
    summary.fit("lambda_inf", alpha, "max", fmax);
    summary.fit("lambda_inf", alpha, "median", fmed);
    if (alpha > 0.0) {
      const double limit = 4.0 * alpha + 0.1;
      summary.check("lambda_exponent_le_4alpha_plus_0.1", alpha, fmax.slope <= limit,
                    "slope=" + format_double(fmax.slope) + ",limit=" + format_double(limit));
      summary.info("conjectured_2alpha_gap", alpha,
                   "slope_minus_2alpha=" + format_double(fmax.slope - 2.0 * alpha));
    } else {
      // Logarithmic regime: Lambda / (4 log N) must not grow.
      std::vector<FitPoint> ratio;
      for (std::size_t i = 0; i < cfg.n_list.size(); ++i)
        if (cfg.n_list[i] >= 2)
          ratio.emplace_back(cfg.n_list[i], max_n[i] / bound_shape(cfg.n_list[i], 0.0));
      if (ratio.size() >= 3) {
        const RateFit fr = rate_fit(ratio);
        summary.fit("lambda_over_4logN", alpha, "max", fr);
        summary.check("lambda_over_4logN_exponent_le_0.05", alpha, fr.slope <= 0.05,
                      "slope=" + format_double(fr.slope));
      }
      summary.info("raw_exponent_vs_0.05", alpha,
                   "slope=" + format_double(fmax.slope) + ",informational=1");
    }
  }
  return outcome;
}

SweepOutcome two_norm_sweep(const SweepConfig& cfg) {
  SweepOutcome outcome;
  outcome.header = "alpha,N,trial,seed,strategy,lambda_two,sigma_min";
  const auto tasks = make_tasks(cfg);
  const auto rows = parallel_map<RowResult>(tasks.size(), cfg.threads, [&](std::size_t i) {
    const Task& t = tasks[i];
    const double alpha = cfg.alphas[t.alpha_index];
    const int n = cfg.n_list[t.n_index];
    const auto two = two_norm_lebesgue(grid_for(cfg, alpha, n, t.trial));
    RowResult r;
    r.text = row_prefix(cfg, alpha, n, t.trial) + "," + std::string(to_string(cfg.strategy)) + "," +
             format_double(two.value) + "," + format_double(two.sigma_min);
    r.metrics = {two.value, two.ill_conditioned ? 1.0 : 0.0};
    return r;
  });
  for (const auto& r : rows) outcome.rows.push_back(r.text);

  Summary summary(outcome);
  const auto lambda = group_metric(cfg, tasks, rows, 0);
  const auto ill = group_metric(cfg, tasks, rows, 1);
  for (std::size_t a = 0; a < cfg.alphas.size(); ++a) {
    const double alpha = cfg.alphas[a];
    std::size_t ill_count = 0;
    for (const auto& v : ill[a]) ill_count += static_cast<std::size_t>(std::count(v.begin(), v.end(), 1.0));
    if (ill_count > 0) summary.info("ill_conditioned", alpha, "count=" + std::to_string(ill_count));
    if (alpha == 0.0) {
      double worst = 0.0;
      for (const auto& v : lambda[a])
        for (double x : v) worst = std::max(worst, std::abs(x - 1.0));
      summary.check("equispaced_unitary", alpha, worst <= 1e-10,
                    "max_abs_deviation=" + format_double(worst));
      continue;
    }
    const auto pts = series(cfg.n_list, maxima(lambda[a]));
    if (pts.size() < 3) {
      summary.info("fit_skipped", alpha, "reason=fewer than three N values");
      continue;
    }
    const RateFit fmax = rate_fit(pts);
    summary.fit("lambda_two", alpha, "max", fmax);
    summary.fit("lambda_two", alpha, "median", rate_fit(series(cfg.n_list, medians(lambda[a]))));
    if (alpha < 0.25) {
      summary.check("bounded_below_quarter", alpha, fmax.slope <= 0.1,
                    "slope=" + format_double(fmax.slope) + ",limit=0.1");
    } else {
      summary.info("conjectured_4alpha_minus_1", alpha,
                   "slope=" + format_double(fmax.slope) + ",conjecture=" +
                       format_double(4.0 * alpha - 1.0));
    }
  }
  return outcome;
}

SweepOutcome quad_sweep(const SweepConfig& cfg) {
  SweepOutcome outcome;
  outcome.header = "alpha,N,trial,seed,strategy,polya_sum,max_weight,min_weight";
  const auto tasks = make_tasks(cfg);
  const auto rows = parallel_map<RowResult>(tasks.size(), cfg.threads, [&](std::size_t i) {
    const Task& t = tasks[i];
    const double alpha = cfg.alphas[t.alpha_index];
    const int n = cfg.n_list[t.n_index];
    const PerturbedGrid grid = grid_for(cfg, alpha, n, t.trial);
    const QuadRule rule = quad_weights(grid);
    const auto w = rule.weights();
    double sum = 0.0, dev_h = 0.0;
    for (double x : w) {
      sum += x;
      dev_h = std::max(dev_h, std::abs(x - grid.spacing()));
    }
    const auto [lo, hi] = std::minmax_element(w.begin(), w.end());
    RowResult r;
    r.text = row_prefix(cfg, alpha, n, t.trial) + "," + std::string(to_string(cfg.strategy)) + "," +
             format_double(polya_sum(rule)) + "," + format_double(*hi) + "," + format_double(*lo);
    r.metrics = {polya_sum(rule), std::abs(sum - kTwoPi) / static_cast<double>(grid.size()), dev_h};
    return r;
  });
  for (const auto& r : rows) outcome.rows.push_back(r.text);

  Summary summary(outcome);
  const auto polya = group_metric(cfg, tasks, rows, 0);
  for (std::size_t a = 0; a < cfg.alphas.size(); ++a) {
    const double alpha = cfg.alphas[a];
    double worst_sum = 0.0, worst_h = 0.0;
    for (std::size_t i = 0; i < tasks.size(); ++i) {
      if (tasks[i].alpha_index != a) continue;
      worst_sum = std::max(worst_sum, rows[i].metrics[1]);
      worst_h = std::max(worst_h, rows[i].metrics[2]);
    }
    summary.check("weights_sum_to_2pi", alpha, worst_sum <= 1e-9,
                  "max_abs_error_over_K=" + format_double(worst_sum));
    if (alpha == 0.0)
      summary.check("trapezoid_reduction", alpha, worst_h <= 1e-12,
                    "max_abs_w_minus_h=" + format_double(worst_h));
    const auto med = medians(polya[a]);
    summary.info("polya_median_ratio", alpha,
                 "ratio=" + format_double(med.back() / med.front()) + ",N_small=" +
                     std::to_string(cfg.n_list.front()) + ",N_large=" +
                     std::to_string(cfg.n_list.back()) + ",informational=1");
    const auto pts = series(cfg.n_list, med);
    if (pts.size() >= 3) summary.fit("polya_sum", alpha, "median", rate_fit(pts));
  }
  return outcome;
}

SweepOutcome converge(const SweepConfig& cfg) {
  SweepOutcome outcome;
  outcome.header = "alpha,N,trial,seed,function,sup_err,quad_err,best_proxy";
  const TestFunction base = function_from_label(cfg.function);
  const auto function_for = [&](int n) {
    if (!cfg.shift_half_spacing) return base;
    return shifted(base, 0.5 * kTwoPi / static_cast<double>(2 * n + 1));
  };
  const std::string label = cfg.runge_demo ? base.label + "[runge-demo]" : base.label;

  const auto proxy = parallel_map<double>(cfg.n_list.size(), cfg.threads, [&](std::size_t i) {
    const int n = cfg.n_list[i];
    return best_approx_proxy(function_for(n), n, default_fine_size(n));
  });

  const auto tasks = make_tasks(cfg);
  const auto rows = parallel_map<RowResult>(tasks.size(), cfg.threads, [&](std::size_t i) {
    const Task& t = tasks[i];
    const double alpha = cfg.alphas[t.alpha_index];
    const int n = cfg.n_list[t.n_index];
    const TestFunction f = function_for(n);
    double sup = 0.0, quad = 0.0;
    if (cfg.runge_demo) {
      const auto nodes = uniform_period_nodes(n, derive_grid_seed(cfg.seed, n, t.trial));
      try {
        const TrigPoly p = interpolate_nodes(nodes, sample(f, nodes));
        sup = sup_error(f, p, nodes, 16 * nodes.size());
        quad = std::abs(kTwoPi * p.coeff(0) - f.exact_integral);
      } catch (const SingularSystemError&) {
        sup = quad = std::numeric_limits<double>::infinity();
      }
    } else {
      const PerturbedGrid grid = grid_for(cfg, alpha, n, t.trial);
      const auto values = sample(f, grid.nodes());
      const TrigPoly p = interpolate(grid, values);
      sup = sup_error(f, p, grid.nodes(), 16 * grid.size());
      quad = std::abs(quad_estimate(quad_weights(grid), values) - f.exact_integral);
    }
    RowResult r;
    r.text = row_prefix(cfg, alpha, n, t.trial) + "," + label + "," + format_double(sup) + "," +
             format_double(quad) + "," + format_double(proxy[t.n_index]);
    r.metrics = {sup, quad};
    return r;
  });
  for (const auto& r : rows) outcome.rows.push_back(r.text);

  Summary summary(outcome);
  const auto sup = group_metric(cfg, tasks, rows, 0);
  const auto quad = group_metric(cfg, tasks, rows, 1);
  // Errors at the rounding floor carry no rate information.
  constexpr double kFloor = 1e-13;
  for (std::size_t a = 0; a < cfg.alphas.size(); ++a) {
    const double alpha = cfg.alphas[a];
    if (cfg.runge_demo) {
      summary.info("runge_demo", alpha, "out_of_model=1,max_sup_err=" +
                                            format_double(maxima(sup[a]).back()));
      continue;
    }
    const auto sup_pts = series(cfg.n_list, maxima(sup[a]), kFloor);
    const auto quad_pts = series(cfg.n_list, maxima(quad[a]), kFloor);
    if (const auto* holder = std::get_if<HolderSmoothness>(&base.smoothness)) {
      const double sigma = holder->sigma;
      const double limit = -(sigma - 4.0 * alpha) + 0.3;
      if (sup_pts.size() < 3) {
        summary.check("sup_err_exponent", alpha, false, "reason=fewer than three usable points");
        continue;
      }
      const RateFit fs = rate_fit(sup_pts);
      summary.fit("sup_err", alpha, "max", fs);
      if (quad_pts.size() >= 3) summary.fit("quad_err", alpha, "max", rate_fit(quad_pts));
      if (sigma > 4.0 * alpha) {
        summary.check("sup_err_exponent_le_4alpha_minus_sigma_plus_0.3", alpha, fs.slope <= limit,
                      "slope=" + format_double(fs.slope) + ",limit=" + format_double(limit));
      } else {
        summary.info("sigma_not_above_4alpha", alpha, "slope=" + format_double(fs.slope));
      }
    } else {
      const double a_strip = std::get<AnalyticStrip>(base.smoothness).a;
      for (const auto& [name, pts] : {std::pair{std::string("sup_err"), sup_pts},
                                      std::pair{std::string("quad_err"), quad_pts}}) {
        if (pts.size() < 3) {
          summary.check(name + "_geometric_rate", alpha, false,
                        "reason=fewer than three usable points");
          continue;
        }
        const RateFit f = geometric_fit(pts);
        summary.fit(name, alpha, "max", f, "geometric");
        const double rate = -f.slope;
        summary.check(name + "_geometric_rate_within_15pct", alpha,
                      std::abs(rate - a_strip) <= 0.15 * a_strip,
                      "rate=" + format_double(rate) + ",strip=" + format_double(a_strip));
      }
    }
  }
  return outcome;
}

SweepOutcome verify_bounds(const SweepConfig& cfg) {
  SweepOutcome outcome;
  outcome.header =
      "alpha,N,trial,seed,strategy,crossover_violations,region_violations,lambda_inf,nine_sum,"
      "mk_analytic_violations";

  const std::size_t pairs = cfg.alphas.size() * cfg.n_list.size();
  const auto mk = parallel_map<std::vector<double>>(pairs, cfg.threads, [&](std::size_t i) {
    const double alpha = cfg.alphas[i / cfg.n_list.size()];
    const int n = cfg.n_list[i % cfg.n_list.size()];
    std::vector<double> values(static_cast<std::size_t>(n + 1));
    for (int k = 0; k <= n; ++k) values[static_cast<std::size_t>(k)] = mk_numeric(n, alpha, k);
    return values;
  });

  LebesgueSearchOptions opts;
  opts.samples_per_interval = cfg.samples_per_interval;
  const auto tasks = make_tasks(cfg);
  const auto rows = parallel_map<RowResult>(tasks.size(), cfg.threads, [&](std::size_t i) {
    const Task& t = tasks[i];
    const double alpha = cfg.alphas[t.alpha_index];
    const int n = cfg.n_list[t.n_index];
    const auto& mk_values = mk[t.alpha_index * cfg.n_list.size() + t.n_index];
    const PerturbedGrid grid = grid_for(cfg, alpha, n, t.trial);
    const BoundTable table = bound_table(grid, mk_values);
    const double h = grid.spacing();

    std::size_t crossover_bad = 0;
    for (int k = -n; k <= n; ++k) {
      const double x = table.crossover.at(k);
      if (x < (k - alpha) * h - 1e-12 || x > (k + alpha) * h + 1e-12) ++crossover_bad;
    }
    std::size_t region_bad = 0;
    for (int k = 0; k <= n; ++k)
      if (l0_region_max(grid, table.crossover, k) > table.mk[static_cast<std::size_t>(k)] * (1 + 1e-8))
        ++region_bad;
    std::size_t analytic_bad = 0;
    for (std::size_t k = 0; k < table.mk.size(); ++k)
      if (table.mk[k] > table.mk_bound[k]) ++analytic_bad;
    const double lambda = lebesgue_constant(grid, opts).value;
    const double nine = nine_sum_from(table.mk);

    RowResult r;
    r.text = row_prefix(cfg, alpha, n, t.trial) + "," + std::string(to_string(cfg.strategy)) + "," +
             std::to_string(crossover_bad) + "," + std::to_string(region_bad) + "," +
             format_double(lambda) + "," + format_double(nine) + "," + std::to_string(analytic_bad);
    r.metrics = {static_cast<double>(crossover_bad), static_cast<double>(region_bad),
                 lambda > nine ? 1.0 : 0.0, static_cast<double>(analytic_bad)};
    return r;
  });
  for (const auto& r : rows) outcome.rows.push_back(r.text);

  Summary summary(outcome);
  for (std::size_t a = 0; a < cfg.alphas.size(); ++a) {
    const double alpha = cfg.alphas[a];
    double crossover = 0, region = 0, chain = 0, analytic_enforced = 0, analytic_logged = 0;
    for (std::size_t i = 0; i < tasks.size(); ++i) {
      if (tasks[i].alpha_index != a) continue;
      crossover += rows[i].metrics[0];
      region += rows[i].metrics[1];
      chain += rows[i].metrics[2];
      if (mk_analytic_enforced(cfg.n_list[tasks[i].n_index]))
        analytic_enforced += rows[i].metrics[3];
      else
        analytic_logged += rows[i].metrics[3];
    }
    const auto count = [](double v) { return "violations=" + format_double(v); };
    summary.check("crossover_bracketing", alpha, crossover == 0, count(crossover));
    summary.check("l0_le_mk_on_regions", alpha, region == 0, count(region));
    summary.check("lambda_le_nine_sum", alpha, chain == 0, count(chain));
    summary.check("mk_numeric_le_analytic_N_ge_32", alpha, analytic_enforced == 0,
                  count(analytic_enforced));
    if (analytic_logged > 0)
      summary.info("mk_numeric_above_analytic_N_lt_32", alpha, count(analytic_logged));
  }
  return outcome;
}

SweepOutcome grids(const SweepConfig& cfg) {
  SweepOutcome outcome;
  outcome.header = "k,x_k,s_k,x_tilde_k";
  const double alpha = cfg.alphas.front();
  const int n = cfg.n_list.front();
  const PerturbedGrid grid = grid_for(cfg, alpha, n, cfg.first_trial);
  const std::string body = grid_csv(grid);
  std::size_t start = body.find('\n') + 1;
  while (start < body.size()) {
    const std::size_t end = body.find('\n', start);
    outcome.rows.push_back(body.substr(start, end - start));
    start = end + 1;
  }
  Summary summary(outcome);
  const double gap = min_gap(grid);
  const double floor = grid.spacing() * (1.0 - 2.0 * alpha) - 1e-14;
  summary.info("grid", alpha,
               "N=" + std::to_string(n) + ",trial=" + std::to_string(cfg.first_trial) + ",seed=" +
                   std::to_string(cfg.seed) + ",strategy=" + std::string(to_string(cfg.strategy)));
  summary.check("min_gap", alpha, gap >= floor,
                "min_gap=" + format_double(gap) + ",floor=" + format_double(floor));
  return outcome;
}

}  // namespace

RateFit rate_fit(std::span<const FitPoint> points) { return least_squares(points, true); }

RateFit geometric_fit(std::span<const FitPoint> points) { return least_squares(points, false); }

std::string SweepOutcome::csv() const {
  std::string out = header + "\n";
  for (const auto& r : rows) out += r + "\n";
  for (const auto& s : summary) out += s + "\n";
  out += passed ? "# verdict,PASS\n" : "# verdict,FAIL\n";
  return out;
}

SweepOutcome run_sweep(const SweepConfig& cfg) {
  validate(cfg);
  switch (cfg.command) {
    case SweepCommand::lebesgue_sweep: return lebesgue_sweep(cfg);
    case SweepCommand::two_norm_sweep: return two_norm_sweep(cfg);
    case SweepCommand::quad_sweep: return quad_sweep(cfg);
    case SweepCommand::converge: return converge(cfg);
    case SweepCommand::verify_bounds: return verify_bounds(cfg);
    case SweepCommand::grids: return grids(cfg);
  }
  throw InternalError("run_sweep: unhandled command");
}

void write_outcome(const SweepOutcome& outcome, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path + " for writing");
  const std::string text = outcome.csv();
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error("write to " + path + " failed");
}

}  // namespace trigpert
