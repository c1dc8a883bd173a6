#include "costsearch/random_instances.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "costsearch/errors.hpp"

namespace costsearch {

namespace {

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

}  // namespace

Tree random_tree(int n, Rng& rng) {
  if (n < 1) throw InputError("n must be at least 1");
  std::vector<std::pair<int, int>> edges;
  if (n == 2) edges.emplace_back(1, 2);
  if (n > 2) {
    std::vector<int> code(static_cast<std::size_t>(n) - 2);
    for (auto& x : code) x = uniform(rng, 1, n);
    std::vector<int> degree(static_cast<std::size_t>(n) + 1, 1);
    for (int x : code) ++degree[x];
    std::set<int> leaves;
    for (int v = 1; v <= n; ++v)
      if (degree[v] == 1) leaves.insert(v);
    for (int x : code) {
      const int leaf = *leaves.begin();
      leaves.erase(leaves.begin());
      edges.emplace_back(std::min(leaf, x), std::max(leaf, x));
      if (--degree[x] == 1) leaves.insert(x);
    }
    const int u = *leaves.begin();
    const int v = *std::next(leaves.begin());
    edges.emplace_back(u, v);
  }
  return Tree(n, edges);
}

std::vector<Int> random_monotone_table(int size, int max_value, Rng& rng) {
  std::vector<int> draws(static_cast<std::size_t>(std::max(size, 0)));
  for (auto& x : draws) x = uniform(rng, 0, max_value);
  std::sort(draws.begin(), draws.end());
  return {draws.begin(), draws.end()};
}

std::vector<Int> random_coefficients(int degree, int max_coef, Rng& rng) {
  std::vector<Int> out(static_cast<std::size_t>(degree) + 1);
  for (auto& x : out) x = uniform(rng, 0, max_coef);
  return out;
}

SearchTree random_stt(const Tree& t, Rng& rng) {
  std::vector<int> parent(static_cast<std::size_t>(t.size()) + 1, 0);
  std::function<void(const VertexSet&, int)> build = [&](const VertexSet& s, int par) {
    const auto members = s.members();
    const int q = members[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(members.size()) - 1))];
    parent[q] = par;
    for (const auto& comp : components_after_removal(t, s, q)) build(comp, q);
  };
  build(VertexSet::all(t.size()), 0);
  return SearchTree(t.size(), std::move(parent));
}

TargetDistribution random_distribution(int n, int max_weight, Rng& rng) {
  std::vector<std::int64_t> w(static_cast<std::size_t>(n));
  for (auto& x : w) x = uniform(rng, 0, max_weight);
  if (std::all_of(w.begin(), w.end(), [](auto x) { return x == 0; })) w[static_cast<std::size_t>(uniform(rng, 0, n - 1))] = 1;
  return TargetDistribution::from_weights(w);
}

}  // namespace costsearch
