#pragma once

// Power-sum summaries of past queries on the line. The total cost that a set
// of past queries will charge a target t is a polynomial in t whose
// coefficients depend on the queries only through these sums.

#include <span>
#include <vector>

#include "costsearch/costs.hpp"
#include "costsearch/exact.hpp"

namespace costsearch {

/// Minus: queries below the feasible interval (q < t). Plus: queries above it.
enum class Side { Minus, Plus };

struct SketchVector {
  Side side = Side::Minus;
  std::vector<Int> a;  // a[j] = sum of q^j over the summarized queries

  void add_query(Int q);
  SketchVector& operator+=(const SketchVector& other);
  friend bool operator==(const SketchVector&, const SketchVector&) = default;
};

SketchVector power_sums(std::span<const int> queries, int p, Side side = Side::Minus);

/// The polynomial representation of a distance model: symmetric models use
/// the same coefficients on both sides. Throws for tables and bivariate models.
AsymmetricPoly as_asymmetric(const CostModel& c);

/// Coefficients A_j of the past-cost polynomial sum_j A_j t^j.
std::vector<Int> seqcost_coefficients(const AsymmetricPoly& c, const SketchVector& minus, const SketchVector& plus);

/// Total cost the summarized queries charge target t.
Int seqcost_eval(const AsymmetricPoly& c, const SketchVector& minus, const SketchVector& plus, Int t);

/// Sketch for position-dependent costs: a[j] is the coefficient of t^j in the
/// total past cost, accumulated query by query.
struct BivariateSketch {
  std::vector<Int> a;

  explicit BivariateSketch(int degree) : a(static_cast<std::size_t>(degree) + 1, 0) {}
  void add_query(const BivariatePoly& c, Int q, Side side);
  Int eval(Int t) const;
};

/// Horner evaluation of sum_j coeffs[j] x^j.
Int eval_poly(const std::vector<Int>& coeffs, Int x);

/// Coefficients of P(x + shift) given those of P(x).
std::vector<Int> taylor_shift(const std::vector<Int>& coeffs, Int shift);

}  // namespace costsearch
