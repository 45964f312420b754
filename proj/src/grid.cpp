#include "trigpert/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

namespace trigpert {

namespace {

// Uniform double in [0, 1) from the top 53 bits; independent of the
// standard library's distribution implementations.
double unit_uniform(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1p-53;
}

}  // namespace

EquispacedGrid equispaced_grid(int n) {
  if (n < 0) throw InputError("equispaced_grid: degree must be nonnegative");
  if (n > kMaxDegree) throw CapacityError("equispaced_grid: 2N+1 exceeds 4097 nodes");
  const int k_count = 2 * n + 1;
  const double h = kTwoPi / static_cast<double>(k_count);
  std::vector<double> nodes(static_cast<std::size_t>(k_count));
  for (int k = -n; k <= n; ++k) nodes[static_cast<std::size_t>(k + n)] = static_cast<double>(k) * h;
  return EquispacedGrid(n, h, std::move(nodes));
}

std::string_view to_string(PerturbKind kind) {
  switch (kind) {
    case PerturbKind::none: return "none";
    case PerturbKind::uniform_random: return "uniform_random";
    case PerturbKind::alternating_max: return "alternating_max";
    case PerturbKind::all_plus_max: return "all_plus_max";
    case PerturbKind::random_signs_max: return "random_signs_max";
    case PerturbKind::explicit_shifts: return "explicit";
  }
  return "unknown";
}

PerturbKind parse_perturb_kind(std::string_view name) {
  for (auto kind : {PerturbKind::none, PerturbKind::uniform_random, PerturbKind::alternating_max,
                    PerturbKind::all_plus_max, PerturbKind::random_signs_max,
                    PerturbKind::explicit_shifts}) {
    if (to_string(kind) == name) return kind;
  }
  throw InputError("unknown perturbation strategy: " + std::string(name));
}

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_grid_seed(std::uint64_t seed, int n, std::uint64_t trial) noexcept {
  std::uint64_t s = splitmix64(seed);
  s = splitmix64(s ^ static_cast<std::uint64_t>(n));
  return splitmix64(s ^ (trial * 0xd1b54a32d192ed03ULL));
}

PerturbedGrid perturb_grid(const EquispacedGrid& grid, const PerturbStrategy& strategy,
                           double alpha, std::uint64_t seed) {
  if (!(alpha >= 0.0 && alpha < 0.5))
    throw DomainError("perturb_grid: alpha must satisfy 0 <= alpha < 1/2");

  const std::size_t count = grid.size();
  const int n = grid.degree();
  std::vector<double> shifts(count, 0.0);
  std::mt19937_64 gen(splitmix64(seed));

  switch (strategy.kind) {
    case PerturbKind::none:
      break;
    case PerturbKind::uniform_random:
      for (auto& s : shifts) s = alpha * (2.0 * unit_uniform(gen) - 1.0);
      break;
    case PerturbKind::alternating_max:
      for (int k = -n; k <= n; ++k)
        shifts[static_cast<std::size_t>(k + n)] = (k % 2 == 0) ? alpha : -alpha;
      break;
    case PerturbKind::all_plus_max:
      std::fill(shifts.begin(), shifts.end(), alpha);
      break;
    case PerturbKind::random_signs_max:
      for (auto& s : shifts) s = (gen() >> 63) != 0 ? alpha : -alpha;
      break;
    case PerturbKind::explicit_shifts:
      if (strategy.shifts.size() != count)
        throw ValidationError("perturb_grid: explicit payload must have 2N+1 entries");
      for (std::size_t i = 0; i < count; ++i) {
        const double s = strategy.shifts[i];
        if (!std::isfinite(s) || std::abs(s) > alpha)
          throw ValidationError("perturb_grid: explicit shift outside [-alpha, alpha]");
        shifts[i] = s;
      }
      break;
  }

  const double h = grid.spacing();
  std::vector<double> nodes(count);
  for (std::size_t i = 0; i < count; ++i) nodes[i] = grid.nodes()[i] + shifts[i] * h;
  return PerturbedGrid(grid, alpha, std::move(shifts), std::move(nodes));
}

double min_gap(const PerturbedGrid& grid) {
  const auto nodes = grid.nodes();
  double gap = kTwoPi - (nodes.back() - nodes.front());
  for (std::size_t i = 1; i < nodes.size(); ++i) gap = std::min(gap, nodes[i] - nodes[i - 1]);
  return gap;
}

std::vector<double> uniform_period_nodes(int n, std::uint64_t seed) {
  if (n < 0) throw InputError("uniform_period_nodes: degree must be nonnegative");
  if (n > kMaxDegree) throw CapacityError("uniform_period_nodes: 2N+1 exceeds 4097 nodes");
  std::mt19937_64 gen(splitmix64(seed));
  std::vector<double> nodes(static_cast<std::size_t>(2 * n + 1));
  for (auto& x : nodes) x = -kPi + kTwoPi * unit_uniform(gen);
  std::sort(nodes.begin(), nodes.end());
  return nodes;
}

std::string grid_csv(const PerturbedGrid& grid) {
  std::string out = "k,x_k,s_k,x_tilde_k\n";
  char line[128];
  const int n = grid.degree();
  for (int k = -n; k <= n; ++k) {
    const auto i = static_cast<std::size_t>(k + n);
    std::snprintf(line, sizeof line, "%d,%.17g,%.17g,%.17g\n", k, grid.base().nodes()[i],
                  grid.shifts()[i], grid.nodes()[i]);
    out += line;
  }
  return out;
}

}  // namespace trigpert
