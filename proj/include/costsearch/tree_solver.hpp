#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "costsearch/costs.hpp"
#include "costsearch/graph.hpp"
#include "costsearch/line_solver.hpp"
#include "costsearch/strategy.hpp"

namespace costsearch {

/// Distance power sums of the past queries that reach the feasible set
/// through one interface vertex: sigma[m] = sum over those queries of d(q, anchor)^m.
struct InterfaceSketch {
  int anchor = 0;
  std::vector<Int> sigma;

  friend bool operator==(const InterfaceSketch&, const InterfaceSketch&) = default;
};

/// Direct computation of the sketch of `queries` at `anchor` (degree p).
InterfaceSketch encode_queries(const Tree& t, std::span<const int> queries, int anchor, int p);

/// Re-anchors a sketch at distance r further away: every summarized query's
/// path to new_anchor must pass through the old anchor.
InterfaceSketch shift_sketch(const InterfaceSketch& s, Int r, int new_anchor);

/// Degree-p sketch at v_prime summarizing q and every query behind `outside`.
InterfaceSketch merge_into_new_interface(int q, std::span<const InterfaceSketch> outside, int v_prime,
                                         const Tree& t, int p);

/// Members of S with a neighbour outside S, ascending.
std::vector<int> interface_vertices(const Tree& t, const VertexSet& s);

/// Queries q in S whose removal leaves only components with boundary <= k.
std::vector<int> candidate_queries(const Tree& t, const VertexSet& s, int k);

/// Feasible set plus one sketch per interface vertex, sorted by anchor.
struct TreeState {
  int degree = 0;
  VertexSet s;
  std::vector<InterfaceSketch> interfaces;
};

TreeState initial_tree_state(const Tree& t, int p);
/// Total cost the past queries charge target q.
Int hit_cost(const Tree& t, const std::vector<Int>& beta, const TreeState& state, int q);
/// State after querying q and learning that the target lies in `component`.
TreeState child_state(const Tree& t, const TreeState& state, int q, const VertexSet& component);

struct TreeSolveOptions {
  bool prune = true;
  /// Refuse with SizeLimitError once this many memo entries exist (0 = no limit).
  std::size_t max_states = 4'000'000;
};

struct KcutSolveResult {
  Int value = 0;
  SearchTree strategy;
  SolveStats stats;
  int k = 0;
  /// Proven ratio to the unrestricted optimum, 1 + 1/(ceil(k/2) - 1); absent for k = 2.
  std::optional<Rational> guarantee;
};

/// Best worst-case cost over k-cut strategies for a symmetric distance polynomial.
KcutSolveResult solve_tree_kcut(const Tree& t, const CostModel& c, int k, const TreeSolveOptions& options = {});

/// k = max(3, ceil(2 / epsilon)).
int k_for_epsilon(double epsilon);

}  // namespace costsearch
