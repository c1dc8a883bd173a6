#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>

#include "costsearch/costs.hpp"
#include "costsearch/sketch.hpp"
#include "costsearch/strategy.hpp"

namespace costsearch {

struct SolveStats {
  std::uint64_t states_expanded = 0;
  std::uint64_t memo_hits = 0;
  double wall_ms = 0.0;
};

struct SolveResult {
  Int value = 0;
  SearchTree strategy;
  SolveStats stats;
};

struct LineSolveOptions {
  /// Skip candidate queries that provably cannot beat the best one found so far.
  bool prune = true;
  /// Refuse with SizeLimitError once this many memo entries exist (0 = no limit).
  std::size_t max_states = 0;
};

/// Exact minimax search on the path 1..n for symmetric or asymmetric
/// distance polynomials, using power-sum sketches of past queries.
SolveResult solve_line_poly(int n, const CostModel& c, const LineSolveOptions& options = {});

/// Exact minimax search on the path for position-dependent polynomial costs.
SolveResult solve_line_bivariate(int n, const BivariatePoly& c, const LineSolveOptions& options = {});

/// Dispatches to the matching sketch DP. Tables have no polynomial sketch and
/// raise ModelMismatchError (the brute-force oracle handles them).
SolveResult solve_line(int n, const CostModel& c, const LineSolveOptions& options = {});

/// Always queries the lower median of the feasible interval.
SearchTree binary_search_strategy(int n);

/// sum over i = 1..floor(log2 n) of h(floor(n / 2^i)).
Int bs_cost_upper_bound(int n, const CostModel& c);

struct LowerBounds {
  Int lb1 = 0;
  Int lb2 = 0;
  Int lb3 = 0;
  Int max() const { return std::max({lb1, lb2, lb3}); }
};
/// lb1 = h(n/2), lb2 = h(n/4) + h(n/8), lb3 = ceil(sum_{i>=4} h(n/2^i) / 2), all floored.
LowerBounds opt_lower_bounds(int n, const CostModel& c);

struct ThresholdInstance {
  CostModel cost;
  SearchTree strategy;
};
/// Threshold cost h(x) = [x >= floor(n/4)] on n = 2^k - 1 (n >= 15) together
/// with a strategy of worst-case cost 1.
ThresholdInstance threshold_instance(int n);

/// Golden-ratio-like split strategy: query the midpoint, then on each side
/// split off a Binary Search block of relative size (sqrt(33) - 5) / 8.
SearchTree gamma_strategy(int n);

struct DistributionalResult {
  Rational value;
  SearchTree strategy;
  SolveStats stats;
};

/// Minimum expected cost for a known target distribution (cubic interval DP).
DistributionalResult solve_line_distributional(int n, const CostModel& c, const TargetDistribution& d);

}  // namespace costsearch
