#include "costsearch/tree_solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "costsearch/errors.hpp"

namespace costsearch {

InterfaceSketch encode_queries(const Tree& t, std::span<const int> queries, int anchor, int p) {
  InterfaceSketch s{anchor, std::vector<Int>(static_cast<std::size_t>(p) + 1, 0)};
  for (int q : queries) {
    const Int d = t.distance(q, anchor);
    Int power = 1;
    for (auto& x : s.sigma) {
      x = add(x, power);
      power = mul(power, d);
    }
  }
  return s;
}

InterfaceSketch shift_sketch(const InterfaceSketch& s, Int r, int new_anchor) {
  InterfaceSketch out{new_anchor, std::vector<Int>(s.sigma.size(), 0)};
  for (std::size_t m = 0; m < s.sigma.size(); ++m) {
    Int rj = 1;
    for (std::size_t j = 0; j <= m; ++j) {
      out.sigma[m] = add(out.sigma[m], mul(mul(binomial(static_cast<int>(m), static_cast<int>(j)), rj), s.sigma[m - j]));
      rj = mul(rj, r);
    }
  }
  return out;
}

InterfaceSketch merge_into_new_interface(int q, std::span<const InterfaceSketch> outside, int v_prime,
                                         const Tree& t, int p) {
  const int one[] = {q};
  InterfaceSketch out = encode_queries(t, one, v_prime, p);
  for (const auto& s : outside) {
    const auto shifted = shift_sketch(s, t.distance(s.anchor, v_prime), v_prime);
    for (std::size_t m = 0; m < out.sigma.size(); ++m) out.sigma[m] = add(out.sigma[m], shifted.sigma.at(m));
  }
  return out;
}

std::vector<int> interface_vertices(const Tree& t, const VertexSet& s) {
  if (s.empty() || !is_connected(t, s)) throw InputError("feasible set must be nonempty and connected");
  std::vector<int> out;
  for (int v : s.members())
    if (induced_degree(t, s, v) < t.degree(v)) out.push_back(v);
  return out;
}

std::vector<int> candidate_queries(const Tree& t, const VertexSet& s, int k) {
  std::vector<int> out;
  for (int q : s.members()) {
    bool ok = true;
    for (const auto& comp : components_after_removal(t, s, q))
      if (boundary(t, comp).size() > k) {
        ok = false;
        break;
      }
    if (ok) out.push_back(q);
  }
  return out;
}

TreeState initial_tree_state(const Tree& t, int p) { return {p, VertexSet::all(t.size()), {}}; }

namespace {

// P(r) = sum_j c[j] r^j is the cost that the queries behind one interface
// charge a target at distance r from its anchor.
std::vector<Int> interface_polynomial(const std::vector<Int>& beta, const InterfaceSketch& s) {
  std::vector<Int> c(beta.size(), 0);
  for (std::size_t m = 0; m < beta.size(); ++m) {
    if (beta[m] == 0) continue;
    for (std::size_t j = 0; j <= m; ++j)
      c[j] = add(c[j], mul(mul(beta[m], binomial(static_cast<int>(m), static_cast<int>(j))), s.sigma.at(m - j)));
  }
  return c;
}

}  // namespace

Int hit_cost(const Tree& t, const std::vector<Int>& beta, const TreeState& state, int q) {
  Int total = 0;
  for (const auto& i : state.interfaces) total = add(total, eval_poly(interface_polynomial(beta, i), t.distance(i.anchor, q)));
  return total;
}

TreeState child_state(const Tree& t, const TreeState& state, int q, const VertexSet& component) {
  int v_prime = 0;
  for (int w : t.neighbors(q))
    if (component.contains(w)) v_prime = w;
  if (v_prime == 0) throw InputError("component is not adjacent to the query");

  TreeState out{state.degree, component, {}};
  std::vector<InterfaceSketch> outside;
  for (const auto& i : state.interfaces) {
    if (component.contains(i.anchor))
      out.interfaces.push_back(i);
    else
      outside.push_back(i);
  }
  auto merged = merge_into_new_interface(q, outside, v_prime, t, state.degree);
  auto it = std::find_if(out.interfaces.begin(), out.interfaces.end(),
                         [&](const InterfaceSketch& i) { return i.anchor == v_prime; });
  if (it != out.interfaces.end()) {
    for (std::size_t m = 0; m < merged.sigma.size(); ++m) it->sigma[m] = add(it->sigma[m], merged.sigma[m]);
  } else {
    out.interfaces.push_back(std::move(merged));
    std::sort(out.interfaces.begin(), out.interfaces.end(),
              [](const InterfaceSketch& a, const InterfaceSketch& b) { return a.anchor < b.anchor; });
  }
  return out;
}

namespace {

// Same bounded minimax scheme as the line solver: solve(state, cutoff) is
// exact below the cutoff and a lower bound at or above it. The memo key is the
// feasible set together with the past-cost function on it, normalized so its
// value at the smallest member is zero; two sketch states with the same key
// have the same future and values differing by that constant.
class KcutSolver {
 public:
  KcutSolver(const Tree& t, std::vector<Int> beta, int k, TreeSolveOptions options)
      : t_(t), beta_(std::move(beta)), k_(k), options_(options) {}

  Int solve(const TreeState& state, Int cutoff) {
    const auto members = state.s.members();
    std::vector<Int> past;
    past.reserve(members.size());
    for (int v : members) past.push_back(hit_cost(t_, beta_, state, v));
    auto [key, base] = key_of(state, past);
    auto it = memo_.find(key);
    if (it != memo_.end() && (it->second.exact || add(it->second.value, base) >= cutoff)) {
      ++stats_.memo_hits;
      return add(it->second.value, base);
    }
    if (it == memo_.end()) {
      ++stats_.states_expanded;
      if (options_.max_states != 0 && memo_.size() >= options_.max_states)
        throw SizeLimitError("tree solver exceeded " + std::to_string(options_.max_states) + " states");
    }
    const Int lower = *std::max_element(past.begin(), past.end());
    if (options_.prune && lower >= cutoff) return store_bound(std::move(key), base, lower);

    auto candidates = candidate_queries(t_, state.s, k_);
    if (candidates.empty()) throw std::logic_error("no admissible query for a feasible set");
    std::vector<std::vector<VertexSet>> parts;
    parts.reserve(candidates.size());
    for (int q : candidates) parts.push_back(components_after_removal(t_, state.s, q));
    std::vector<std::size_t> order(candidates.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    if (options_.prune) {
      // Balanced splits first.
      auto largest = [&](std::size_t i) {
        int m = 0;
        for (const auto& c : parts[i]) m = std::max(m, c.size());
        return m;
      };
      std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return largest(a) < largest(b); });
    }

    Int best = cutoff;
    int best_q = 0;
    Int failed = std::numeric_limits<Int>::max();
    for (auto i : order) {
      const int q = candidates[i];
      const Int limit = best_q != 0 && q < best_q ? best + 1 : best;
      Int value = past[static_cast<std::size_t>(std::lower_bound(members.begin(), members.end(), q) - members.begin())];
      for (const auto& comp : parts[i]) {
        if (value >= limit) break;
        value = std::max(value, solve(child_state(t_, state, q, comp), limit));
      }
      if (value < limit) {
        best = value;
        best_q = q;
      } else {
        failed = std::min(failed, value);
      }
    }
    if (best_q == 0) return store_bound(std::move(key), base, std::max(failed, lower));
    memo_[std::move(key)] = Entry{sub(best, base), best_q, true};
    return best;
  }

  void extract(const TreeState& state, int par, std::vector<int>& parent) const {
    std::vector<Int> past;
    for (int v : state.s.members()) past.push_back(hit_cost(t_, beta_, state, v));
    const auto& entry = memo_.at(key_of(state, past).first);
    if (!entry.exact) throw std::logic_error("strategy extraction reached an unsolved state");
    const int q = entry.query;
    parent[q] = par;
    for (const auto& comp : components_after_removal(t_, state.s, q)) extract(child_state(t_, state, q, comp), q, parent);
  }

  const SolveStats& stats() const { return stats_; }

 private:
  struct Entry {
    Int value;
    int query;
    bool exact;
  };

  std::pair<std::vector<Int>, Int> key_of(const TreeState& state, const std::vector<Int>& past) const {
    std::vector<Int> key;
    for (auto w : state.s.words()) key.push_back(static_cast<Int>(w));
    const Int base = past.front();
    for (Int v : past) key.push_back(v - base);
    return {std::move(key), base};
  }

  Int store_bound(std::vector<Int> key, Int base, Int bound) {
    memo_[std::move(key)] = Entry{sub(bound, base), 0, false};
    return bound;
  }

  const Tree& t_;
  std::vector<Int> beta_;
  int k_;
  TreeSolveOptions options_;
  SolveStats stats_;
  std::unordered_map<std::vector<Int>, Entry, IntVectorHash> memo_;
};

}  // namespace

KcutSolveResult solve_tree_kcut(const Tree& t, const CostModel& c, int k, const TreeSolveOptions& options) {
  if (k < 2) throw InputError("k must be at least 2");
  const auto* sym = std::get_if<SymmetricPoly>(&c.variant());
  if (sym == nullptr) throw ModelMismatchError("the tree solver needs a symmetric distance polynomial");
  if (auto v = validate(c, t.size()); !v.ok()) throw InputError("invalid cost model: " + *v.violation);

  const auto start = std::chrono::steady_clock::now();
  std::vector<Int> beta = sym->beta;
  if (beta.empty()) beta.push_back(0);
  const int p = static_cast<int>(beta.size()) - 1;

  KcutSolver solver(t, beta, k, options);
  const auto root = initial_tree_state(t, p);
  KcutSolveResult out;
  out.value = solver.solve(root, std::numeric_limits<Int>::max());
  std::vector<int> parent(static_cast<std::size_t>(t.size()) + 1, 0);
  solver.extract(root, 0, parent);
  out.strategy = SearchTree(t.size(), std::move(parent));
  out.stats = solver.stats();
  out.stats.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  out.k = k;
  if (k >= 3) {
    const int half = (k + 1) / 2 - 1;
    out.guarantee = Rational(half + 1, half);
  }
  return out;
}

int k_for_epsilon(double epsilon) {
  if (!(epsilon > 0)) throw InputError("epsilon must be positive");
  return std::max(3, static_cast<int>(std::ceil(2.0 / epsilon - 1e-12)));
}

}  // namespace costsearch
