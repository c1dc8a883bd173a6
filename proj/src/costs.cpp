#include "costsearch/costs.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include "costsearch/errors.hpp"

namespace costsearch {

namespace {

Int poly_eval(const std::vector<Int>& beta, Int x) {
  Int r = 0;
  for (auto it = beta.rbegin(); it != beta.rend(); ++it) r = add(mul(r, x), *it);
  return r;
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::vector<std::vector<Int>> square(int degree) {
  return std::vector<std::vector<Int>>(static_cast<std::size_t>(degree) + 1,
                                       std::vector<Int>(static_cast<std::size_t>(degree) + 1, 0));
}

}  // namespace

CostModel::CostModel(Variant v) : v_(std::move(v)) {
  if (const auto* b = std::get_if<BivariatePoly>(&v_)) {
    if (b->degree < 0) throw InputError("bivariate degree must be nonnegative");
    const auto dim = static_cast<std::size_t>(b->degree) + 1;
    for (const auto* g : {&b->gamma_minus, &b->gamma_plus}) {
      if (g->size() != dim) throw InputError("bivariate coefficient matrix must be (degree+1) x (degree+1)");
      for (const auto& row : *g)
        if (row.size() != dim) throw InputError("bivariate coefficient matrix must be (degree+1) x (degree+1)");
    }
  }
}

CostModel CostModel::symmetric(std::vector<Int> beta) { return CostModel(SymmetricPoly{std::move(beta)}); }

CostModel CostModel::asymmetric(std::vector<Int> beta_minus, std::vector<Int> beta_plus) {
  return CostModel(AsymmetricPoly{std::move(beta_minus), std::move(beta_plus)});
}

CostModel CostModel::bivariate(BivariatePoly poly) { return CostModel(std::move(poly)); }

CostModel CostModel::table(std::vector<Int> values) { return CostModel(Tabulated{std::move(values)}); }

CostModel CostModel::pricing() {
  BivariatePoly p;
  p.degree = 1;
  p.magnitude_exponent = 0;
  p.gamma_minus = square(1);
  p.gamma_plus = square(1);
  p.gamma_minus[0][1] = 1;   // q < t: t - q
  p.gamma_minus[1][0] = -1;
  p.gamma_plus[0][1] = 1;    // q > t: t
  return CostModel(std::move(p));
}

CostModel CostModel::congestion() { return pricing(); }

std::string CostModel::kind() const {
  return std::visit(Overloaded{[](const SymmetricPoly&) { return std::string("sym-poly"); },
                               [](const AsymmetricPoly&) { return std::string("asym-poly"); },
                               [](const BivariatePoly&) { return std::string("bivar-poly"); },
                               [](const Tabulated&) { return std::string("table"); }},
                    v_);
}

bool CostModel::line_only() const {
  return std::holds_alternative<AsymmetricPoly>(v_) || std::holds_alternative<BivariatePoly>(v_);
}

bool CostModel::distance_based() const { return !line_only(); }

int CostModel::degree() const {
  return std::visit(
      Overloaded{[](const SymmetricPoly& s) { return std::max(0, static_cast<int>(s.beta.size()) - 1); },
                 [](const AsymmetricPoly& a) {
                   return std::max(0, static_cast<int>(std::max(a.beta_minus.size(), a.beta_plus.size())) - 1);
                 },
                 [](const BivariatePoly& b) { return b.degree; }, [](const Tabulated&) { return 0; }},
      v_);
}

Int CostModel::eval_line(Int q, Int t) const {
  if (q == t) return 0;
  return std::visit(
      Overloaded{[&](const SymmetricPoly& s) { return poly_eval(s.beta, q < t ? t - q : q - t); },
                 [&](const AsymmetricPoly& a) {
                   return q < t ? poly_eval(a.beta_minus, t - q) : poly_eval(a.beta_plus, q - t);
                 },
                 [&](const BivariatePoly& b) {
                   const auto& g = q < t ? b.gamma_minus : b.gamma_plus;
                   Int r = 0;
                   for (int i = 0; i <= b.degree; ++i)
                     for (int j = 0; i + j <= b.degree; ++j)
                       if (g[i][j] != 0) r = add(r, mul(g[i][j], mul(ipow(q, i), ipow(t, j))));
                   return r;
                 },
                 [&](const Tabulated&) { return eval_distance(q < t ? t - q : q - t); }},
      v_);
}

Int CostModel::eval_distance(Int d) const {
  if (d < 0) throw InputError("negative distance");
  if (d == 0) return 0;
  if (const auto* s = std::get_if<SymmetricPoly>(&v_)) return poly_eval(s->beta, d);
  if (const auto* tab = std::get_if<Tabulated>(&v_)) {
    if (d > static_cast<Int>(tab->values.size()))
      throw InputError("cost table has no entry for distance " + to_string(d));
    return tab->values[static_cast<std::size_t>(d - 1)];
  }
  throw ModelMismatchError(kind() + " cost is not a function of distance");
}

Int eval_cost(const CostModel& c, const Tree& tree, int q, int t) {
  if (!tree.valid_vertex(q) || !tree.valid_vertex(t))
    throw InputError("invalid vertex in cost evaluation");
  if (c.line_only()) {
    if (!tree.is_path())
      throw ModelMismatchError(c.kind() + " cost requires the tree to be the path 1-2-...-n");
    return c.eval_line(q, t);
  }
  return c.eval_distance(tree.distance(q, t));
}

// ----------------------------------------------------------------- validate

namespace {

void check_monotone(const std::function<Int(Int)>& h, int n, const std::string& what, CostValidation& out) {
  Int prev = 0;
  for (int x = 1; x < n && out.ok(); ++x) {
    Int v = h(x);
    if (v < 0) {
      out.violation = what + " is negative at x=" + std::to_string(x);
      out.witness = std::pair<Int, Int>{x, 0};
    } else if (x > 1 && v < prev) {
      out.violation = what + " decreases at x=" + std::to_string(x);
      out.witness = std::pair<Int, Int>{x, 0};
    }
    prev = v;
  }
}

}  // namespace

CostValidation validate(const CostModel& c, int n) {
  CostValidation out;
  if (n < 1) {
    out.violation = "instance size must be positive";
    return out;
  }
  std::visit(
      Overloaded{
          [&](const SymmetricPoly& s) {
            check_monotone([&](Int x) { return poly_eval(s.beta, x); }, n, "h", out);
          },
          [&](const AsymmetricPoly& a) {
            check_monotone([&](Int x) { return poly_eval(a.beta_minus, x); }, n, "h_minus", out);
            check_monotone([&](Int x) { return poly_eval(a.beta_plus, x); }, n, "h_plus", out);
          },
          [&](const Tabulated& tab) {
            const int usable = std::min<int>(n, static_cast<int>(tab.values.size()) + 1);
            check_monotone([&](Int x) { return tab.values[static_cast<std::size_t>(x - 1)]; }, usable, "h", out);
            if (out.ok() && static_cast<int>(tab.values.size()) < n - 1) {
              out.violation = "table has " + std::to_string(tab.values.size()) + " entries, need " +
                              std::to_string(n - 1);
              out.witness = std::pair<Int, Int>{static_cast<Int>(tab.values.size()) + 1, 0};
            }
          },
          [&](const BivariatePoly& b) {
            for (int i = 0; i <= b.degree && out.ok(); ++i)
              for (int j = 0; j <= b.degree && out.ok(); ++j) {
                for (const auto* g : {&b.gamma_minus, &b.gamma_plus}) {
                  Int v = (*g)[i][j];
                  if (i + j > b.degree && v != 0) {
                    out.violation = "coefficient of q^" + std::to_string(i) + " t^" + std::to_string(j) +
                                    " exceeds the degree";
                    out.witness = std::pair<Int, Int>{i, j};
                  } else if (n >= 2 && (v < 0 ? -v : v) > ipow(n, b.magnitude_exponent)) {
                    out.violation = "coefficient of q^" + std::to_string(i) + " t^" + std::to_string(j) +
                                    " exceeds the declared bound n^" + std::to_string(b.magnitude_exponent);
                    out.witness = std::pair<Int, Int>{i, j};
                  }
                  if (!out.ok()) break;
                }
              }
            for (int t = 1; t <= n && out.ok(); ++t)
              for (int q = 1; q <= n && out.ok(); ++q)
                if (q != t && c.eval_line(q, t) < 0) {
                  out.violation = "cost is negative at q=" + std::to_string(q) + ", t=" + std::to_string(t);
                  out.witness = std::pair<Int, Int>{q, t};
                }
            // Monotonicity in |q - t| is reported, not enforced.
            for (int t = 1; t <= n; ++t) {
              bool monotone = true;
              for (int q = t - 1; q >= 2 && monotone; --q)
                if (c.eval_line(q - 1, t) < c.eval_line(q, t)) monotone = false;
              for (int q = t + 1; q < n && monotone; ++q)
                if (c.eval_line(q + 1, t) < c.eval_line(q, t)) monotone = false;
              if (!monotone) {
                out.notes.push_back("cost is not monotone in |q - t| at t=" + std::to_string(t));
                break;
              }
            }
          }},
      c.variant());
  return out;
}

BivariatePoly to_bivariate(const CostModel& c, int n) {
  std::vector<Int> minus;
  std::vector<Int> plus;
  if (const auto* s = std::get_if<SymmetricPoly>(&c.variant())) {
    minus = plus = s->beta;
  } else if (const auto* a = std::get_if<AsymmetricPoly>(&c.variant())) {
    minus = a->beta_minus;
    plus = a->beta_plus;
  } else {
    throw InputError("only distance polynomials can be expanded into bivariate form");
  }
  BivariatePoly out;
  out.degree = std::max(0, static_cast<int>(std::max(minus.size(), plus.size())) - 1);
  out.gamma_minus = square(out.degree);
  out.gamma_plus = square(out.degree);
  // (t - q)^m = sum_i C(m,i) (-q)^i t^(m-i);  (q - t)^m = sum_i C(m,i) q^i (-t)^(m-i)
  for (int m = 0; m <= out.degree; ++m) {
    for (int i = 0; i <= m; ++i) {
      if (m < static_cast<int>(minus.size())) {
        Int term = mul(minus[m], binomial(m, i));
        out.gamma_minus[i][m - i] = add(out.gamma_minus[i][m - i], i % 2 == 0 ? term : -term);
      }
      if (m < static_cast<int>(plus.size())) {
        Int term = mul(plus[m], binomial(m, i));
        out.gamma_plus[i][m - i] = add(out.gamma_plus[i][m - i], (m - i) % 2 == 0 ? term : -term);
      }
    }
  }
  Int largest = 0;
  for (const auto* g : {&out.gamma_minus, &out.gamma_plus})
    for (const auto& row : *g)
      for (Int v : row) largest = std::max(largest, v < 0 ? -v : v);
  out.magnitude_exponent = 0;
  if (n >= 2)
    while (ipow(n, out.magnitude_exponent) < largest) ++out.magnitude_exponent;
  return out;
}

// ------------------------------------------------------------------ parsing

namespace {

std::vector<Int> parse_int_list(const std::string& text, const std::string& spec) {
  std::vector<Int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      long long v = std::stoll(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw InputError("bad integer '" + item + "' in cost spec '" + spec + "'");
    }
  }
  if (out.empty()) throw InputError("empty coefficient list in cost spec '" + spec + "'");
  return out;
}

std::vector<Int> json_ints(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array()) throw InputError(std::string("cost JSON needs an array '") + key + "'");
  std::vector<Int> out;
  for (const auto& v : j[key]) {
    if (!v.is_number_integer()) throw InputError(std::string("cost JSON: '") + key + "' must hold integers");
    out.push_back(v.get<std::int64_t>());
  }
  return out;
}

nlohmann::json ints_json(const std::vector<Int>& v) {
  nlohmann::json out = nlohmann::json::array();
  for (Int x : v) out.push_back(to_int64(x));
  return out;
}

}  // namespace

CostModel parse_cost_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw InputError("cost spec '" + spec + "' must look like kind:args");
  const std::string kind = spec.substr(0, colon);
  const std::string args = spec.substr(colon + 1);
  if (kind == "sym") return CostModel::symmetric(parse_int_list(args, spec));
  if (kind == "table") return CostModel::table(parse_int_list(args, spec));
  if (kind == "asym") {
    const auto slash = args.find('/');
    if (slash == std::string::npos) throw InputError("asym cost spec needs below/above lists separated by '/'");
    return CostModel::asymmetric(parse_int_list(args.substr(0, slash), spec),
                                 parse_int_list(args.substr(slash + 1), spec));
  }
  if (kind == "preset") {
    if (args == "linear") return CostModel::symmetric({0, 1});
    if (args == "quadratic") return CostModel::symmetric({0, 0, 1});
    if (args == "unit") return CostModel::symmetric({1});
    if (args == "pricing") return CostModel::pricing();
    if (args == "congestion") return CostModel::congestion();
    throw InputError("unknown cost preset '" + args + "'");
  }
  if (kind == "file") {
    std::ifstream in(args);
    if (!in) throw InputError("cannot open cost file " + args);
    try {
      return cost_from_json(nlohmann::json::parse(in));
    } catch (const nlohmann::json::parse_error& e) {
      throw InputError(args + ": " + e.what());
    }
  }
  throw InputError("unknown cost kind '" + kind + "'");
}

CostModel cost_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw InputError("cost JSON must be an object with a string 'kind'");
  const auto kind = j["kind"].get<std::string>();
  if (kind == "sym-poly") return CostModel::symmetric(json_ints(j, "beta"));
  if (kind == "asym-poly") return CostModel::asymmetric(json_ints(j, "beta_minus"), json_ints(j, "beta_plus"));
  if (kind == "table") return CostModel::table(json_ints(j, "values"));
  if (kind == "bivar-poly") {
    BivariatePoly b;
    if (!j.contains("degree") || !j["degree"].is_number_integer()) throw InputError("bivar-poly needs 'degree'");
    b.degree = j["degree"].get<int>();
    b.magnitude_exponent = j.value("s", 0);
    auto matrix = [&](const char* key) {
      if (!j.contains(key) || !j[key].is_array()) throw InputError(std::string("bivar-poly needs '") + key + "'");
      std::vector<std::vector<Int>> m;
      for (const auto& row : j[key]) {
        std::vector<Int> r;
        for (const auto& v : row) {
          if (!v.is_number_integer()) throw InputError("bivar-poly coefficients must be integers");
          r.push_back(v.get<std::int64_t>());
        }
        m.push_back(std::move(r));
      }
      return m;
    };
    b.gamma_minus = matrix("gamma_minus");
    b.gamma_plus = matrix("gamma_plus");
    return CostModel::bivariate(std::move(b));
  }
  throw InputError("unknown cost kind '" + kind + "'");
}

nlohmann::json cost_to_json(const CostModel& c) {
  return std::visit(
      Overloaded{[](const SymmetricPoly& s) { return nlohmann::json{{"kind", "sym-poly"}, {"beta", ints_json(s.beta)}}; },
                 [](const AsymmetricPoly& a) {
                   return nlohmann::json{{"kind", "asym-poly"},
                                         {"beta_minus", ints_json(a.beta_minus)},
                                         {"beta_plus", ints_json(a.beta_plus)}};
                 },
                 [](const Tabulated& t) { return nlohmann::json{{"kind", "table"}, {"values", ints_json(t.values)}}; },
                 [](const BivariatePoly& b) {
                   auto matrix = [](const std::vector<std::vector<Int>>& m) {
                     nlohmann::json out = nlohmann::json::array();
                     for (const auto& row : m) out.push_back(ints_json(row));
                     return out;
                   };
                   return nlohmann::json{{"kind", "bivar-poly"},
                                         {"degree", b.degree},
                                         {"s", b.magnitude_exponent},
                                         {"gamma_minus", matrix(b.gamma_minus)},
                                         {"gamma_plus", matrix(b.gamma_plus)}};
                 }},
      c.variant());
}

// ------------------------------------------------------------- distribution

TargetDistribution::TargetDistribution(std::vector<Rational> probabilities) : p_(std::move(probabilities)) {
  if (p_.empty()) throw InputError("distribution must have at least one entry");
  Rational total(0);
  std::int64_t denom = 1;
  for (const auto& x : p_) {
    if (x < 0) throw InputError("probabilities must be nonnegative");
    total += x;
    const auto g = std::gcd(denom, x.denominator());
    Int next = mul(denom / g, x.denominator());
    denom = to_int64(next);
  }
  if (total != Rational(1)) throw InputError("probabilities must sum to 1");
  denominator_ = denom;
  for (const auto& x : p_) weights_.push_back(mul(x.numerator(), denom / x.denominator()));
}

TargetDistribution TargetDistribution::uniform(int n) {
  return TargetDistribution(std::vector<Rational>(static_cast<std::size_t>(n), Rational(1, n)));
}

TargetDistribution TargetDistribution::point_mass(int n, int v) {
  if (v < 1 || v > n) throw InputError("point mass outside 1..n");
  std::vector<Rational> p(static_cast<std::size_t>(n), Rational(0));
  p[static_cast<std::size_t>(v - 1)] = 1;
  return TargetDistribution(std::move(p));
}

TargetDistribution TargetDistribution::from_weights(const std::vector<std::int64_t>& weights) {
  std::int64_t total = 0;
  for (auto w : weights) {
    if (w < 0) throw InputError("weights must be nonnegative");
    total += w;
  }
  if (total == 0) throw InputError("weights must not all be zero");
  std::vector<Rational> p;
  for (auto w : weights) p.emplace_back(w, total);
  return TargetDistribution(std::move(p));
}

TargetDistribution parse_distribution(const std::string& spec, int n) {
  if (spec == "uniform") return TargetDistribution::uniform(n);
  if (spec.rfind("point:", 0) == 0) return TargetDistribution::point_mass(n, std::stoi(spec.substr(6)));
  std::vector<Rational> p;
  std::stringstream ss(spec);
  std::string item;
  bool fractions = false;
  while (std::getline(ss, item, ',')) {
    try {
      const auto slash = item.find('/');
      if (slash == std::string::npos) {
        p.emplace_back(std::stoll(item));
      } else {
        fractions = true;
        p.emplace_back(std::stoll(item.substr(0, slash)), std::stoll(item.substr(slash + 1)));
      }
    } catch (const std::exception&) {
      throw InputError("bad distribution entry '" + item + "'");
    }
  }
  if (static_cast<int>(p.size()) != n)
    throw InputError("distribution has " + std::to_string(p.size()) + " entries, expected " + std::to_string(n));
  if (fractions) return TargetDistribution(std::move(p));
  std::vector<std::int64_t> w;
  for (const auto& x : p) w.push_back(x.numerator());
  return TargetDistribution::from_weights(w);
}

}  // namespace costsearch
