#include "costsearch/oracle.hpp"

#include <bit>
#include <cassert>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <unordered_map>

#include "costsearch/errors.hpp"

namespace costsearch {

namespace {

constexpr Int kInfinity = std::numeric_limits<Int>::max();

void check_limit(int n, int limit, const char* what) {
  if (n < 1) throw InputError("n must be at least 1");
  if (n > limit)
    throw SizeLimitError(std::string(what) + " oracle is limited to n <= " + std::to_string(limit) + ", got " +
                         std::to_string(n));
}

}  // namespace

OracleResult brute_force_line(int n, const CostModel& c, const OracleLimits& limits) {
  check_limit(n, std::min(limits.line, 40), "line");
  struct Entry {
    Int value;
    int query;
  };
  std::unordered_map<std::uint64_t, Entry> memo;
  OracleResult out;
  auto key = [](int L, int R, std::uint64_t Q) {
    return (Q << 12) | (static_cast<std::uint64_t>(L) << 6) | static_cast<std::uint64_t>(R);
  };

  std::function<Int(int, int, std::uint64_t)> f = [&](int L, int R, std::uint64_t Q) -> Int {
    const auto k = key(L, R, Q);
    if (auto it = memo.find(k); it != memo.end()) return it->second.value;
    ++out.nodes_explored;
    Int best = kInfinity;
    int best_q = 0;
    for (int q = L + 1; q < R; ++q) {
      assert((Q >> q & 1U) == 0);
      Int value = 0;
      for (int prev = 1; prev <= n; ++prev)
        if (Q >> prev & 1U) value = add(value, c.eval_line(prev, q));
      const std::uint64_t next = Q | (std::uint64_t{1} << q);
      if (q > L + 1) value = std::max(value, f(L, q, next));
      if (q < R - 1) value = std::max(value, f(q, R, next));
      if (value < best) {
        best = value;
        best_q = q;
      }
    }
    memo.emplace(k, Entry{best, best_q});
    return best;
  };

  out.value = f(0, n + 1, 0);
  std::vector<int> parent(static_cast<std::size_t>(n) + 1, 0);
  std::function<void(int, int, std::uint64_t, int)> build = [&](int L, int R, std::uint64_t Q, int par) {
    if (R - L < 2) return;
    const int q = memo.at(key(L, R, Q)).query;
    parent[q] = par;
    const std::uint64_t next = Q | (std::uint64_t{1} << q);
    build(L, q, next, q);
    build(q, R, next, q);
  };
  build(0, n + 1, 0, 0);
  out.strategy = SearchTree(n, std::move(parent));
  return out;
}

OracleResult brute_force_tree(const Tree& t, const CostModel& c, const OracleLimits& limits) {
  const int n = t.size();
  check_limit(n, std::min(limits.tree, 31), "tree");
  if (!c.distance_based()) throw ModelMismatchError("the tree oracle needs a distance-based cost");
  using Mask = std::uint64_t;

  std::vector<Mask> adj(static_cast<std::size_t>(n) + 1, 0);
  for (int v = 1; v <= n; ++v)
    for (int w : t.neighbors(v)) adj[v] |= Mask{1} << w;
  std::vector<std::vector<Int>> h(static_cast<std::size_t>(n) + 1, std::vector<Int>(static_cast<std::size_t>(n) + 1, 0));
  for (int u = 1; u <= n; ++u)
    for (int v = 1; v <= n; ++v) h[u][v] = c.eval_distance(t.distance(u, v));

  auto components = [&](Mask s, int q) {
    std::vector<Mask> out;
    Mask rest = s & ~(Mask{1} << q);
    while (rest != 0) {
      Mask comp = rest & (~rest + 1);
      Mask frontier = comp;
      while (frontier != 0) {
        Mask grow = 0;
        for (Mask f = frontier; f != 0; f &= f - 1) grow |= adj[std::countr_zero(f)];
        grow &= rest & ~comp;
        comp |= grow;
        frontier = grow;
      }
      out.push_back(comp);
      rest &= ~comp;
    }
    return out;
  };

  struct Entry {
    Int value;
    int query;
  };
  std::unordered_map<Mask, Entry> memo;
  OracleResult out;
  const int shift = n + 1;

  std::function<Int(Mask, Mask)> f = [&](Mask s, Mask Q) -> Int {
    const Mask k = s | (Q << shift);
    if (auto it = memo.find(k); it != memo.end()) return it->second.value;
    ++out.nodes_explored;
    Int best = kInfinity;
    int best_q = 0;
    for (Mask m = s; m != 0; m &= m - 1) {
      const int q = std::countr_zero(m);
      Int value = 0;
      for (Mask p = Q; p != 0; p &= p - 1) value = add(value, h[std::countr_zero(p)][q]);
      for (Mask comp : components(s, q)) value = std::max(value, f(comp, Q | (Mask{1} << q)));
      if (value < best) {
        best = value;
        best_q = q;
      }
    }
    memo.emplace(k, Entry{best, best_q});
    return best;
  };

  Mask all = 0;
  for (int v = 1; v <= n; ++v) all |= Mask{1} << v;
  out.value = f(all, 0);
  std::vector<int> parent(static_cast<std::size_t>(n) + 1, 0);
  std::function<void(Mask, Mask, int)> build = [&](Mask s, Mask Q, int par) {
    const int q = memo.at(s | (Q << shift)).query;
    parent[q] = par;
    for (Mask comp : components(s, q)) build(comp, Q | (Mask{1} << q), q);
  };
  build(all, 0, 0);
  out.strategy = SearchTree(n, std::move(parent));
  return out;
}

ExpectedOracleResult brute_force_expected_line(int n, const CostModel& c, const TargetDistribution& d,
                                               const OracleLimits& limits) {
  check_limit(n, limits.expected_line, "expected-cost");
  if (d.size() != n) throw InputError("distribution size does not match n");
  std::map<std::pair<int, int>, std::pair<Rational, int>> memo;
  ExpectedOracleResult out;

  std::function<Rational(int, int)> f = [&](int L, int R) -> Rational {
    if (R - L < 2) return Rational(0);
    if (auto it = memo.find({L, R}); it != memo.end()) return it->second.first;
    ++out.nodes_explored;
    std::optional<Rational> best;
    int best_q = 0;
    for (int q = L + 1; q < R; ++q) {
      Rational value(0);
      for (int t = L + 1; t < R; ++t) value += d[t] * Rational(to_int64(c.eval_line(q, t)));
      value += f(L, q) + f(q, R);
      if (!best || value < *best) {
        best = value;
        best_q = q;
      }
    }
    memo.emplace(std::pair{L, R}, std::pair{*best, best_q});
    return *best;
  };

  out.value = f(0, n + 1);
  std::vector<int> parent(static_cast<std::size_t>(n) + 1, 0);
  std::function<void(int, int, int)> build = [&](int L, int R, int par) {
    if (R - L < 2) return;
    const int q = memo.at({L, R}).second;
    parent[q] = par;
    build(L, q, q);
    build(q, R, q);
  };
  build(0, n + 1, 0);
  out.strategy = SearchTree(n, std::move(parent));
  return out;
}

}  // namespace costsearch
