#include "costsearch/sketch.hpp"

#include <algorithm>

#include "costsearch/errors.hpp"

namespace costsearch {

void SketchVector::add_query(Int q) {
  Int power = 1;
  for (auto& x : a) {
    x = add(x, power);
    power = mul(power, q);
  }
}

SketchVector& SketchVector::operator+=(const SketchVector& other) {
  if (other.a.size() > a.size()) a.resize(other.a.size(), 0);
  for (std::size_t j = 0; j < other.a.size(); ++j) a[j] = add(a[j], other.a[j]);
  return *this;
}

SketchVector power_sums(std::span<const int> queries, int p, Side side) {
  SketchVector s{side, std::vector<Int>(static_cast<std::size_t>(p) + 1, 0)};
  for (int q : queries) s.add_query(q);
  return s;
}

AsymmetricPoly as_asymmetric(const CostModel& c) {
  if (const auto* s = std::get_if<SymmetricPoly>(&c.variant())) return {s->beta, s->beta};
  if (const auto* a = std::get_if<AsymmetricPoly>(&c.variant())) return *a;
  throw ModelMismatchError(c.kind() + " cost has no distance-polynomial form");
}

std::vector<Int> seqcost_coefficients(const AsymmetricPoly& c, const SketchVector& minus, const SketchVector& plus) {
  const int p = static_cast<int>(std::max(c.beta_minus.size(), c.beta_plus.size())) - 1;
  std::vector<Int> out(static_cast<std::size_t>(std::max(p, 0)) + 1, 0);
  if (static_cast<int>(std::min(minus.a.size(), plus.a.size())) < p + 1)
    throw InputError("sketch degree is lower than the cost degree");
  auto at = [](const SketchVector& s, int j) -> Int { return j < static_cast<int>(s.a.size()) ? s.a[j] : 0; };
  for (int m = 0; m <= p; ++m) {
    const Int bm = m < static_cast<int>(c.beta_minus.size()) ? c.beta_minus[m] : 0;
    const Int bp = m < static_cast<int>(c.beta_plus.size()) ? c.beta_plus[m] : 0;
    for (int j = 0; j <= m; ++j) {
      const Int binom = binomial(m, j);
      Int term = 0;
      if (bm != 0) {
        Int x = mul(mul(bm, binom), at(minus, m - j));
        term = add(term, (m - j) % 2 == 0 ? x : -x);
      }
      if (bp != 0) {
        Int x = mul(mul(bp, binom), at(plus, m - j));
        term = add(term, j % 2 == 0 ? x : -x);
      }
      out[j] = add(out[j], term);
    }
  }
  return out;
}

Int seqcost_eval(const AsymmetricPoly& c, const SketchVector& minus, const SketchVector& plus, Int t) {
  return eval_poly(seqcost_coefficients(c, minus, plus), t);
}

void BivariateSketch::add_query(const BivariatePoly& c, Int q, Side side) {
  const auto& g = side == Side::Minus ? c.gamma_minus : c.gamma_plus;
  for (int j = 0; j <= c.degree; ++j) {
    Int power = 1;
    for (int k = 0; k + j <= c.degree; ++k) {
      if (g[k][j] != 0) a[j] = add(a[j], mul(g[k][j], power));
      power = mul(power, q);
    }
  }
}

Int BivariateSketch::eval(Int t) const { return eval_poly(a, t); }

Int eval_poly(const std::vector<Int>& coeffs, Int x) {
  Int r = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) r = add(mul(r, x), *it);
  return r;
}

std::vector<Int> taylor_shift(const std::vector<Int>& coeffs, Int shift) {
  // Repeated synthetic division; exact and overflow-checked.
  std::vector<Int> c = coeffs;
  const auto d = c.size();
  for (std::size_t i = 0; i + 1 < d; ++i)
    for (std::size_t j = d - 1; j > i; --j) c[j - 1] = add(c[j - 1], mul(c[j], shift));
  return c;
}

}  // namespace costsearch
