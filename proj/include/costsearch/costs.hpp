#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <boost/rational.hpp>
#include <nlohmann/json.hpp>

#include "costsearch/exact.hpp"
#include "costsearch/graph.hpp"

namespace costsearch {

/// h(x) = sum_m beta[m] x^m, applied to the tree distance between query and target.
struct SymmetricPoly {
  std::vector<Int> beta;
};

/// On the line: h_minus(t - q) when the query is below the target, h_plus(q - t) when above.
struct AsymmetricPoly {
  std::vector<Int> beta_minus;
  std::vector<Int> beta_plus;
};

/// Position-dependent cost on the line. gamma_minus[i][j] multiplies q^i t^j
/// when q < t, gamma_plus[i][j] when q > t; only entries with i + j <= degree
/// may be nonzero. Coefficient magnitudes are declared bounded by n^magnitude_exponent.
struct BivariatePoly {
  int degree = 0;
  int magnitude_exponent = 0;
  std::vector<std::vector<Int>> gamma_minus;
  std::vector<std::vector<Int>> gamma_plus;
};

/// Symmetric distance cost given as a table: values[x-1] = h(x) for x = 1..size.
struct Tabulated {
  std::vector<Int> values;
};

/// Cost g(q, t) of querying q when the target is t. g(t, t) = 0 for every model.
class CostModel {
 public:
  using Variant = std::variant<SymmetricPoly, AsymmetricPoly, BivariatePoly, Tabulated>;

  CostModel(Variant v);  // NOLINT(google-explicit-constructor)

  static CostModel symmetric(std::vector<Int> beta);
  static CostModel asymmetric(std::vector<Int> beta_minus, std::vector<Int> beta_plus);
  static CostModel bivariate(BivariatePoly poly);
  static CostModel table(std::vector<Int> values);
  /// Posted-price regret: t when the price overshoots (q > t), t - q when it undershoots.
  static CostModel pricing();
  /// Benign congestion control objective; the same polynomial as pricing.
  static CostModel congestion();

  const Variant& variant() const { return v_; }
  std::string kind() const;

  /// Asymmetric and bivariate models are only defined on the line.
  bool line_only() const;
  /// True for models whose cost depends only on the distance |q - t|.
  bool distance_based() const;
  /// Polynomial degree (0 for tables).
  int degree() const;

  /// g(q, t) on the line 1..n (no tree needed).
  Int eval_line(Int q, Int t) const;
  /// h(d) for distance-based models, with h(0) = 0.
  Int eval_distance(Int d) const;

 private:
  Variant v_;
};

/// g(q, t) on a tree. Line-only models require t to be the path 1-2-...-n.
Int eval_cost(const CostModel& c, const Tree& tree, int q, int t);

struct CostValidation {
  std::optional<std::string> violation;
  /// (q, t) or (x, 0) for one-argument checks.
  std::optional<std::pair<Int, Int>> witness;
  /// Non-fatal observations (e.g. a bivariate cost that is not monotone in |q - t|).
  std::vector<std::string> notes;

  bool ok() const { return !violation.has_value(); }
};

/// Checks nonnegativity, monotonicity (distance models), degree shape and the
/// declared coefficient bound by direct evaluation over {1..n}.
CostValidation validate(const CostModel& c, int n);

/// Expands a symmetric or asymmetric distance polynomial into the equivalent
/// bivariate coefficients, with the smallest magnitude exponent valid for n.
BivariatePoly to_bivariate(const CostModel& c, int n);

/// `sym:b0,b1,...`, `asym:b0,b1,.../b0,b1,...` (below/above), `table:h1,h2,...`,
/// `preset:linear|quadratic|unit|pricing|congestion`, or `file:<path>` for JSON.
CostModel parse_cost_spec(const std::string& spec);

CostModel cost_from_json(const nlohmann::json& j);
nlohmann::json cost_to_json(const CostModel& c);

using Rational = boost::rational<std::int64_t>;

/// Known target distribution P(1..n).
class TargetDistribution {
 public:
  /// Throws InputError unless all entries are nonnegative and sum to 1.
  explicit TargetDistribution(std::vector<Rational> probabilities);

  static TargetDistribution uniform(int n);
  static TargetDistribution point_mass(int n, int v);
  /// Probabilities proportional to nonnegative integer weights.
  static TargetDistribution from_weights(const std::vector<std::int64_t>& weights);

  int size() const { return static_cast<int>(p_.size()); }
  const Rational& operator[](int t) const { return p_.at(static_cast<std::size_t>(t - 1)); }
  const std::vector<Rational>& probabilities() const { return p_; }

  /// Common denominator D and integer weights w_t with P(t) = w_t / D.
  std::int64_t common_denominator() const { return denominator_; }
  Int weight(int t) const { return weights_.at(static_cast<std::size_t>(t - 1)); }

 private:
  std::vector<Rational> p_;
  std::int64_t denominator_ = 1;
  std::vector<Int> weights_;
};

/// `uniform`, `point:<v>`, or comma-separated weights / fractions (`1,2,1` or `1/4,1/2,1/4`).
TargetDistribution parse_distribution(const std::string& spec, int n);

}  // namespace costsearch
