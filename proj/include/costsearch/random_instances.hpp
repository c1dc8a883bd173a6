#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "costsearch/costs.hpp"
#include "costsearch/graph.hpp"
#include "costsearch/strategy.hpp"

namespace costsearch {

using Rng = std::mt19937_64;

/// Uniform labeled tree on 1..n decoded from a random Prüfer sequence.
Tree random_tree(int n, Rng& rng);

/// Nondecreasing nonnegative table h(1..size) drawn as sorted values in [0, max_value].
std::vector<Int> random_monotone_table(int size, int max_value, Rng& rng);

/// Coefficients in [0, max_coef] for degree 0..degree.
std::vector<Int> random_coefficients(int degree, int max_coef, Rng& rng);

/// Valid STT built by querying a uniformly random vertex of every feasible set.
SearchTree random_stt(const Tree& t, Rng& rng);

/// Random target distribution on 1..n with integer weights in [0, max_weight] (not all zero).
TargetDistribution random_distribution(int n, int max_weight, Rng& rng);

}  // namespace costsearch
