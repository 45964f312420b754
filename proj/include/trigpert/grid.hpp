#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "trigpert/numerics.hpp"

namespace trigpert {

/// K = 2N + 1 equispaced nodes x_k = k h on [-pi, pi), h = 2 pi / K, -N <= k <= N.
/// Storage position i corresponds to k = i - N.
class EquispacedGrid {
 public:
  [[nodiscard]] int degree() const noexcept { return n_; }
  [[nodiscard]] std::size_t size() const noexcept { return nodes_.size(); }
  [[nodiscard]] double spacing() const noexcept { return h_; }
  [[nodiscard]] std::span<const double> nodes() const noexcept { return nodes_; }
  [[nodiscard]] double node(int k) const { return nodes_.at(static_cast<std::size_t>(k + n_)); }

 private:
  friend EquispacedGrid equispaced_grid(int n);
  EquispacedGrid(int n, double h, std::vector<double> nodes)
      : n_(n), h_(h), nodes_(std::move(nodes)) {}

  int n_;
  double h_;
  std::vector<double> nodes_;
};

/// Largest supported degree; K = 2N + 1 <= 4097.
inline constexpr int kMaxDegree = 2048;

/// Throws CapacityError for N > kMaxDegree, InputError for N < 0.
[[nodiscard]] EquispacedGrid equispaced_grid(int n);

enum class PerturbKind {
  none,
  uniform_random,
  alternating_max,
  all_plus_max,
  random_signs_max,
  explicit_shifts,
};

[[nodiscard]] std::string_view to_string(PerturbKind kind);
/// Accepts the names printed by to_string ("explicit" for explicit_shifts).
[[nodiscard]] PerturbKind parse_perturb_kind(std::string_view name);

struct PerturbStrategy {
  PerturbKind kind = PerturbKind::none;
  /// Shift fractions s_k in storage order; used only by explicit_shifts.
  std::vector<double> shifts;

  static PerturbStrategy of(PerturbKind kind) { return {kind, {}}; }
  static PerturbStrategy explicit_payload(std::vector<double> s) {
    return {PerturbKind::explicit_shifts, std::move(s)};
  }
};

/// Nodes x~_k = x_k + s_k h with |s_k| <= alpha < 1/2. Node values are not
/// wrapped into [-pi, pi).
class PerturbedGrid {
 public:
  [[nodiscard]] const EquispacedGrid& base() const noexcept { return base_; }
  [[nodiscard]] int degree() const noexcept { return base_.degree(); }
  [[nodiscard]] std::size_t size() const noexcept { return nodes_.size(); }
  [[nodiscard]] double spacing() const noexcept { return base_.spacing(); }
  [[nodiscard]] double alpha() const noexcept { return alpha_; }
  [[nodiscard]] std::span<const double> shifts() const noexcept { return shifts_; }
  [[nodiscard]] std::span<const double> nodes() const noexcept { return nodes_; }
  [[nodiscard]] double node(int k) const {
    return nodes_.at(static_cast<std::size_t>(k + degree()));
  }

 private:
  friend PerturbedGrid perturb_grid(const EquispacedGrid&, const PerturbStrategy&, double,
                                    std::uint64_t);
  PerturbedGrid(EquispacedGrid base, double alpha, std::vector<double> shifts,
                std::vector<double> nodes)
      : base_(std::move(base)),
        alpha_(alpha),
        shifts_(std::move(shifts)),
        nodes_(std::move(nodes)) {}

  EquispacedGrid base_;
  double alpha_;
  std::vector<double> shifts_;
  std::vector<double> nodes_;
};

/// Deterministic in (strategy, alpha, seed). Throws DomainError unless
/// 0 <= alpha < 1/2 and ValidationError for a bad explicit payload.
[[nodiscard]] PerturbedGrid perturb_grid(const EquispacedGrid& grid, const PerturbStrategy& strategy,
                                         double alpha, std::uint64_t seed);

/// Smallest gap between consecutive nodes, including the wraparound gap.
[[nodiscard]] double min_gap(const PerturbedGrid& grid);

/// SplitMix64 finalizer. Used to derive independent per-grid streams.
[[nodiscard]] std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Stream seed for one grid of a sweep: a function of (seed, N, trial) only, so
/// results do not depend on task scheduling.
[[nodiscard]] std::uint64_t derive_grid_seed(std::uint64_t seed, int n, std::uint64_t trial) noexcept;

/// K sorted nodes drawn uniformly over the whole period [-pi, pi). Outside the
/// alpha model; used only to demonstrate ill-conditioning.
[[nodiscard]] std::vector<double> uniform_period_nodes(int n, std::uint64_t seed);

/// CSV dump with header `k,x_k,s_k,x_tilde_k`, 17 significant digits.
[[nodiscard]] std::string grid_csv(const PerturbedGrid& grid);

}  // namespace trigpert
