#include "costsearch/line_solver.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <unordered_map>

#include "costsearch/errors.hpp"

namespace costsearch {

namespace {

constexpr Int kInfinity = std::numeric_limits<Int>::max();

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

// Top-down minimax over intervals (L, R) of the path. The state carries a
// sketch of the past queries; the memo is keyed on the past-cost polynomial,
// re-expanded around L when the model is translation invariant, with its
// constant term split off (adding a constant to every outcome adds it to the
// minimax value).
//
// solve(state, cutoff) returns the exact value when it is below cutoff and
// otherwise some lower bound that is at least cutoff. Memo entries remember
// which of the two they hold. Values are integers, so "v <= best" is tested
// as "v < best + 1", which keeps the smallest optimal query regardless of the
// order in which candidates are tried.
class LineDp {
 public:
  using Sketch = std::vector<Int>;

  struct Model {
    bool translation_invariant = false;
    std::function<std::vector<Int>(const Sketch&)> coefficients;
    std::function<void(Sketch&, int q, Side side)> observe;
    /// Optional admissible lower bound on the value of a fresh interval of a given length.
    std::vector<Int> fresh_lower_bound;
  };

  LineDp(int n, Model model, LineSolveOptions options)
      : n_(n), model_(std::move(model)), options_(options) {}

  SolveResult run(const Sketch& empty, Int initial_cutoff) {
    const auto start = std::chrono::steady_clock::now();
    SolveResult out;
    out.value = solve(0, n_ + 1, empty, options_.prune ? initial_cutoff : kInfinity);
    if (out.value >= initial_cutoff) throw std::logic_error("line solver cutoff was not an upper bound");
    std::vector<int> parent(static_cast<std::size_t>(n_) + 1, 0);
    extract(0, n_ + 1, empty, 0, parent);
    out.strategy = SearchTree(n_, std::move(parent));
    stats_.wall_ms = elapsed_ms(start);
    out.stats = stats_;
    return out;
  }

 private:
  struct Entry {
    Int value;   // value (or lower bound) minus the constant term of the past cost
    int offset;  // argmin query minus L; 0 for lower bounds
    bool exact;
  };

  std::pair<std::vector<Int>, Int> key_of(int L, int R, const std::vector<Int>& coeffs) const {
    std::vector<Int> key;
    std::vector<Int> local;
    if (model_.translation_invariant) {
      local = taylor_shift(coeffs, L);
      key.push_back(R - L);
    } else {
      local = coeffs;
      key.push_back(L);
      key.push_back(R);
    }
    key.insert(key.end(), local.begin() + 1, local.end());
    return {std::move(key), local[0]};
  }

  std::vector<int> query_order(int L, int R) const {
    std::vector<int> order;
    for (int q = L + 1; q < R; ++q) order.push_back(q);
    if (options_.prune) {
      // Central queries first: they usually give the tightest early bound.
      const int twice_mid = L + R;
      std::stable_sort(order.begin(), order.end(),
                       [&](int a, int b) { return std::abs(2 * a - twice_mid) < std::abs(2 * b - twice_mid); });
    }
    return order;
  }

  Int solve(int L, int R, const Sketch& sketch, Int cutoff) {
    const auto coeffs = model_.coefficients(sketch);
    auto [key, base] = key_of(L, R, coeffs);
    auto it = memo_.find(key);
    if (it != memo_.end() && (it->second.exact || add(it->second.value, base) >= cutoff)) {
      ++stats_.memo_hits;
      return add(it->second.value, base);
    }
    if (it == memo_.end()) {
      ++stats_.states_expanded;
      if (options_.max_states != 0 && memo_.size() >= options_.max_states)
        throw SizeLimitError("line solver exceeded " + std::to_string(options_.max_states) + " states");
    }

    std::vector<Int> hit(static_cast<std::size_t>(R - L), 0);
    Int lower = 0;
    Int least_past = kInfinity;
    for (int q = L + 1; q < R; ++q) {
      hit[q - L] = eval_poly(coeffs, q);
      lower = std::max(lower, hit[q - L]);
      least_past = std::min(least_past, hit[q - L]);
    }
    if (!model_.fresh_lower_bound.empty()) lower = std::max(lower, add(least_past, model_.fresh_lower_bound[R - L - 1]));
    if (options_.prune && lower >= cutoff) return store_bound(std::move(key), base, lower);

    Int best = cutoff;
    int best_q = 0;
    Int failed = kInfinity;
    for (int q : query_order(L, R)) {
      const Int limit = best_q != 0 && q < best_q ? best + 1 : best;
      Int value = hit[q - L];
      if (value < limit && q > L + 1) {
        Sketch s = sketch;  // the target lies left of q, so q is above it
        model_.observe(s, q, Side::Plus);
        value = std::max(value, solve(L, q, s, limit));
      }
      if (value < limit && q < R - 1) {
        Sketch s = sketch;
        model_.observe(s, q, Side::Minus);
        value = std::max(value, solve(q, R, s, limit));
      }
      if (value < limit) {
        best = value;
        best_q = q;
      } else {
        failed = std::min(failed, value);
      }
    }
    if (best_q == 0) return store_bound(std::move(key), base, std::max(failed, lower));
    memo_[std::move(key)] = Entry{sub(best, base), best_q - L, true};
    return best;
  }

  Int store_bound(std::vector<Int> key, Int base, Int bound) {
    memo_[std::move(key)] = Entry{sub(bound, base), 0, false};
    return bound;
  }

  void extract(int L, int R, const Sketch& sketch, int par, std::vector<int>& parent) {
    const auto& entry = memo_.at(key_of(L, R, model_.coefficients(sketch)).first);
    if (!entry.exact) throw std::logic_error("strategy extraction reached an unsolved state");
    const int q = L + entry.offset;
    parent[q] = par;
    if (q > L + 1) {
      Sketch s = sketch;
      model_.observe(s, q, Side::Plus);
      extract(L, q, s, q, parent);
    }
    if (q < R - 1) {
      Sketch s = sketch;
      model_.observe(s, q, Side::Minus);
      extract(q, R, s, q, parent);
    }
  }

  int n_;
  Model model_;
  LineSolveOptions options_;
  SolveStats stats_;
  std::unordered_map<std::vector<Int>, Entry, IntVectorHash> memo_;
};

void require_size(int n) {
  if (n < 1) throw InputError("n must be at least 1");
}

Int h_of(const CostModel& c, Int x) { return x <= 0 ? 0 : c.eval_distance(x); }

int floor_log2(int n) {
  int k = 0;
  while ((n >> (k + 1)) > 0) ++k;
  return k;
}

void build_bs(int lo, int hi, int par, std::vector<int>& parent) {
  if (lo > hi) return;
  const int mid = lo + (hi - lo) / 2;
  parent[mid] = par;
  build_bs(lo, mid - 1, mid, parent);
  build_bs(mid + 1, hi, mid, parent);
}

}  // namespace

SolveResult solve_line_poly(int n, const CostModel& c, const LineSolveOptions& options) {
  require_size(n);
  const AsymmetricPoly poly = as_asymmetric(c);
  if (auto v = validate(c, n); !v.ok()) throw InputError("invalid cost model: " + *v.violation);
  const int p = std::max(0, static_cast<int>(std::max(poly.beta_minus.size(), poly.beta_plus.size())) - 1);
  const auto width = static_cast<std::size_t>(p) + 1;

  LineDp::Model model;
  model.translation_invariant = true;
  model.coefficients = [poly, width](const LineDp::Sketch& s) {
    SketchVector minus{Side::Minus, {s.begin(), s.begin() + static_cast<std::ptrdiff_t>(width)}};
    SketchVector plus{Side::Plus, {s.begin() + static_cast<std::ptrdiff_t>(width), s.end()}};
    return seqcost_coefficients(poly, minus, plus);
  };
  model.observe = [width](LineDp::Sketch& s, int q, Side side) {
    const std::size_t base = side == Side::Minus ? 0 : width;
    Int power = 1;
    for (std::size_t j = 0; j < width; ++j) {
      s[base + j] = add(s[base + j], power);
      power = mul(power, q);
    }
  };
  if (std::holds_alternative<SymmetricPoly>(c.variant())) {
    model.fresh_lower_bound.resize(static_cast<std::size_t>(n) + 1);
    for (int len = 0; len <= n; ++len) model.fresh_lower_bound[len] = len == 0 ? 0 : opt_lower_bounds(len, c).max();
  }
  LineDp dp(n, std::move(model), options);
  const Int cutoff = add(worst_case_cost(Tree::path(n), c, binary_search_strategy(n)).value, 1);
  return dp.run(LineDp::Sketch(2 * width, 0), cutoff);
}

SolveResult solve_line_bivariate(int n, const BivariatePoly& c, const LineSolveOptions& options) {
  require_size(n);
  const CostModel model_check = CostModel::bivariate(c);
  if (auto v = validate(model_check, n); !v.ok()) throw InputError("invalid cost model: " + *v.violation);

  LineDp::Model model;
  model.translation_invariant = false;
  model.coefficients = [](const LineDp::Sketch& s) { return s; };
  model.observe = [c](LineDp::Sketch& s, int q, Side side) {
    BivariateSketch b(c.degree);
    b.a = std::move(s);
    b.add_query(c, q, side);
    s = std::move(b.a);
  };
  LineDp dp(n, std::move(model), options);
  const Int cutoff = add(worst_case_cost(Tree::path(n), model_check, binary_search_strategy(n)).value, 1);
  return dp.run(LineDp::Sketch(static_cast<std::size_t>(c.degree) + 1, 0), cutoff);
}

SolveResult solve_line(int n, const CostModel& c, const LineSolveOptions& options) {
  if (const auto* b = std::get_if<BivariatePoly>(&c.variant())) return solve_line_bivariate(n, *b, options);
  if (std::holds_alternative<Tabulated>(c.variant()))
    throw ModelMismatchError("tabulated costs have no polynomial sketch; use the brute-force oracle");
  return solve_line_poly(n, c, options);
}

SearchTree binary_search_strategy(int n) {
  require_size(n);
  std::vector<int> parent(static_cast<std::size_t>(n) + 1, 0);
  build_bs(1, n, 0, parent);
  return SearchTree(n, std::move(parent));
}

Int bs_cost_upper_bound(int n, const CostModel& c) {
  require_size(n);
  Int total = 0;
  for (int i = 1; i <= floor_log2(n); ++i) total = add(total, h_of(c, n >> i));
  return total;
}

LowerBounds opt_lower_bounds(int n, const CostModel& c) {
  require_size(n);
  LowerBounds lb;
  lb.lb1 = h_of(c, n / 2);
  lb.lb2 = add(h_of(c, n / 4), h_of(c, n / 8));
  Int tail = 0;
  for (int i = 4; i <= floor_log2(n); ++i) tail = add(tail, h_of(c, n >> i));
  lb.lb3 = (tail + 1) / 2;
  return lb;
}

ThresholdInstance threshold_instance(int n) {
  if (n < 15 || ((n + 1) & n) != 0) throw InputError("threshold instance needs n = 2^k - 1 with n >= 15");
  std::vector<Int> table(static_cast<std::size_t>(n) - 1);
  for (int x = 1; x < n; ++x) table[x - 1] = x >= n / 4 ? 1 : 0;

  std::vector<int> parent(static_cast<std::size_t>(n) + 1, 0);
  auto link = [&](int child, int par) {
    parent[child] = par;
    parent[n + 1 - child] = par == 0 ? 0 : n + 1 - par;
  };
  auto chain = [&](int lo, int hi, int par) {
    for (int v = lo; v <= hi; ++v) link(v, v == lo ? par : v - 1);
  };
  const int m = (n + 1) / 2;
  const int a = (n + 5) / 6;
  const int b = (n + 2) / 3;
  parent[m] = 0;
  link(a, m);
  chain(1, a - 1, a);
  link(b, a);
  chain(a + 1, b - 1, b);
  chain(b + 1, m - 1, b);
  return {CostModel::table(std::move(table)), SearchTree(n, std::move(parent))};
}

SearchTree gamma_strategy(int n) {
  require_size(n);
  const double gamma = (std::sqrt(33.0) - 5.0) / 8.0;
  std::vector<int> parent(static_cast<std::size_t>(n) + 1, 0);
  std::function<void(int, int, int)> rec = [&](int lo, int hi, int par) {
    const int len = hi - lo + 1;
    if (len <= 2) {
      build_bs(lo, hi, par, parent);
      return;
    }
    const int mid = lo + (hi - lo) / 2;
    parent[mid] = par;
    const int off = std::max(1, static_cast<int>(std::lround(gamma * len)));
    if (mid - lo <= 2) {
      build_bs(lo, mid - 1, mid, parent);
    } else {
      const int s = std::min(lo + off, mid - 1);
      parent[s] = mid;
      build_bs(lo, s - 1, s, parent);
      rec(s + 1, mid - 1, s);
    }
    if (hi - mid <= 2) {
      build_bs(mid + 1, hi, mid, parent);
    } else {
      const int s = std::max(hi - off, mid + 1);
      parent[s] = mid;
      build_bs(s + 1, hi, s, parent);
      rec(mid + 1, s - 1, s);
    }
  };
  rec(1, n, 0);
  return SearchTree(n, std::move(parent));
}

DistributionalResult solve_line_distributional(int n, const CostModel& c, const TargetDistribution& d) {
  require_size(n);
  if (d.size() != n) throw InputError("distribution size does not match n");
  const auto start = std::chrono::steady_clock::now();
  const auto N = static_cast<std::size_t>(n);

  // pre[q][t] = sum_{t' <= t} w_t' g(q, t')
  std::vector<std::vector<Int>> pre(N + 1, std::vector<Int>(N + 1, 0));
  for (int q = 1; q <= n; ++q)
    for (int t = 1; t <= n; ++t) pre[q][t] = add(pre[q][t - 1], mul(d.weight(t), c.eval_line(q, t)));

  std::vector<std::vector<Int>> E(N + 2, std::vector<Int>(N + 2, 0));
  std::vector<std::vector<int>> arg(N + 2, std::vector<int>(N + 2, 0));
  SolveStats stats;
  for (int len = 2; len <= n + 1; ++len) {
    for (int L = 0; L + len <= n + 1; ++L) {
      const int R = L + len;
      ++stats.states_expanded;
      Int best = kInfinity;
      for (int q = L + 1; q < R; ++q) {
        Int v = add(sub(pre[q][R - 1], pre[q][L]), add(E[L][q], E[q][R]));
        if (v < best) {
          best = v;
          arg[L][R] = q;
        }
      }
      E[L][R] = best;
    }
  }

  std::vector<int> parent(N + 1, 0);
  std::function<void(int, int, int)> build = [&](int L, int R, int par) {
    if (R - L < 2) return;
    const int q = arg[L][R];
    parent[q] = par;
    build(L, q, q);
    build(q, R, q);
  };
  build(0, n + 1, 0);

  const Int num = E[0][n + 1];
  const Int den = d.common_denominator();
  Int g = num;
  for (Int y = den; y != 0;) {
    const Int r = g % y;
    g = y;
    y = r;
  }
  if (g == 0) g = 1;
  stats.wall_ms = elapsed_ms(start);
  return {Rational(to_int64(num / g), to_int64(den / g)), SearchTree(n, std::move(parent)), stats};
}

}  // namespace costsearch
