#pragma once

#include <cstdint>

#include "costsearch/costs.hpp"
#include "costsearch/graph.hpp"
#include "costsearch/strategy.hpp"

namespace costsearch {

// Exhaustive minimax over all canonical strategies, memoized on the feasible
// set together with the full set of past queries. Deliberately simple.

struct OracleLimits {
  int line = 14;
  int tree = 10;
  int expected_line = 10;
};

struct OracleResult {
  Int value = 0;
  SearchTree strategy;
  std::uint64_t nodes_explored = 0;
};

struct ExpectedOracleResult {
  Rational value;
  SearchTree strategy;
  std::uint64_t nodes_explored = 0;
};

/// Any cost model on the path 1..n. Throws SizeLimitError above limits.line.
OracleResult brute_force_line(int n, const CostModel& c, const OracleLimits& limits = {});

/// Distance-based cost on a tree. Throws SizeLimitError above limits.tree.
OracleResult brute_force_tree(const Tree& t, const CostModel& c, const OracleLimits& limits = {});

/// Minimum expected cost for a known target distribution on the path.
ExpectedOracleResult brute_force_expected_line(int n, const CostModel& c, const TargetDistribution& d,
                                               const OracleLimits& limits = {});

}  // namespace costsearch
