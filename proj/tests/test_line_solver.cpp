#include "test_support.hpp"

#include "costsearch/errors.hpp"
#include "costsearch/line_solver.hpp"
#include "costsearch/oracle.hpp"
#include "costsearch/random_instances.hpp"
#include "costsearch/sketch.hpp"

using namespace costsearch;

namespace {

const CostModel kLinear = CostModel::symmetric({0, 1});

Int worst(int n, const CostModel& c, const SearchTree& s) { return worst_case_cost(Tree::path(n), c, s).value; }

}  // namespace

TEST(Sketch, PowerSums) {
  EXPECT_EQ(power_sums(std::vector<int>{}, 2).a, (std::vector<Int>{0, 0, 0}));
  EXPECT_EQ(power_sums(std::vector<int>{2, 5}, 2).a, (std::vector<Int>{2, 7, 29}));
  auto left = power_sums(std::vector<int>{1, 4}, 3);
  left += power_sums(std::vector<int>{6}, 3);
  EXPECT_EQ(left, power_sums(std::vector<int>{1, 4, 6}, 3));
}

TEST(Sketch, SeqCostMatchesDirectSum) {
  const AsymmetricPoly below_linear{{0, 1}, {0}};
  EXPECT_EQ(seqcost_eval(below_linear, power_sums(std::vector<int>{2}, 1, Side::Minus),
                         power_sums(std::vector<int>{}, 1, Side::Plus), 5),
            3);
  Rng rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const int p = trial % 4;
    const AsymmetricPoly c{random_coefficients(p, 5, rng), random_coefficients(p, 5, rng)};
    const CostModel model = CostModel::asymmetric(c.beta_minus, c.beta_plus);
    const int n = 12;
    for (int t = 1; t <= n; ++t) {
      std::vector<int> minus;
      std::vector<int> plus;
      Int direct = 0;
      for (int q = 1; q <= n; ++q) {
        if (std::uniform_int_distribution<int>(0, 2)(rng) != 0 || q == t) continue;
        (q < t ? minus : plus).push_back(q);
        direct += model.eval_line(q, t);
      }
      ASSERT_EQ(seqcost_eval(c, power_sums(minus, p, Side::Minus), power_sums(plus, p, Side::Plus), t), direct);
    }
  }
  EXPECT_EQ(seqcost_eval(below_linear, power_sums(std::vector<int>{}, 1, Side::Minus),
                         power_sums(std::vector<int>{}, 1, Side::Plus), 7),
            0);
}

TEST(Sketch, BivariateAndTaylorShift) {
  const auto pricing = std::get<BivariatePoly>(CostModel::pricing().variant());
  BivariateSketch s(pricing.degree);
  s.add_query(pricing, 3, Side::Minus);  // undershoot at 3: regret t - 3
  s.add_query(pricing, 9, Side::Plus);   // overshoot at 9: regret t
  for (int t = 4; t <= 8; ++t) EXPECT_EQ(s.eval(t), (t - 3) + t);
  const std::vector<Int> poly{1, -2, 3};
  const auto shifted = taylor_shift(poly, 4);
  for (int x = -3; x <= 3; ++x) EXPECT_EQ(eval_poly(shifted, x), eval_poly(poly, x + 4));
}

TEST(SolveLine, SmallFixtures) {
  EXPECT_EQ(solve_line(10, kLinear).value, 6);
  EXPECT_EQ(solve_line(1, kLinear).value, 0);
  EXPECT_EQ(solve_line(2, kLinear).value, 1);
  EXPECT_EQ(solve_line_bivariate(1, std::get<BivariatePoly>(CostModel::pricing().variant())).value, 0);
  EXPECT_THROW(solve_line(5, CostModel::table({1, 2, 3, 4})), ModelMismatchError);
  EXPECT_THROW(solve_line(0, kLinear), InputError);
  const auto r = solve_line(10, kLinear);
  EXPECT_EQ(worst(10, kLinear, r.strategy), 6);
  EXPECT_GT(r.stats.states_expanded, 0U);
}

TEST(SolveLine, PricingFixtures) {
  const auto pricing = CostModel::pricing();
  const auto r19 = solve_line(19, pricing);
  EXPECT_EQ(r19.value, 17);
  EXPECT_EQ(worst(19, pricing, r19.strategy), 17);
  EXPECT_EQ(worst(19, pricing, binary_search_strategy(19)), 23);
  // Exact values for 20 vertices; the README explains how they relate to the 19-vertex fixture.
  const auto r20 = solve_line(20, pricing);
  EXPECT_EQ(r20.value, 19);
  EXPECT_EQ(worst(20, pricing, r20.strategy), 19);
  EXPECT_EQ(worst(20, pricing, binary_search_strategy(20)), 27);
  EXPECT_EQ(worst(19, pricing, load_strategy(data_file("pricing19_strategy.json"))), r19.value);
}

TEST(SolveLine, MatchesOracleOnRandomModels) {
  Rng rng(99);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + trial % 11;
    const int p = trial % 4;
    CostModel c = trial % 2 == 0 ? CostModel::symmetric(random_coefficients(p, 5, rng))
                                 : CostModel::asymmetric(random_coefficients(p, 5, rng), random_coefficients(p, 5, rng));
    if (!validate(c, n).ok()) continue;
    const Int expected = brute_force_line(n, c).value;
    const auto poly = solve_line_poly(n, c);
    ASSERT_EQ(poly.value, expected) << "n=" << n << " trial " << trial;
    ASSERT_EQ(worst(n, c, poly.strategy), expected);
    const auto bivar = solve_line_bivariate(n, to_bivariate(c, n));
    ASSERT_EQ(bivar.value, expected);
    ASSERT_EQ(worst(n, c, bivar.strategy), expected);
    const auto unpruned = solve_line_poly(n, c, LineSolveOptions{.prune = false});
    ASSERT_EQ(unpruned.value, expected);
  }
}

TEST(SolveLine, BivariateEncodingMatchesPolyUpToThirty) {
  Rng rng(4);
  for (int n : {13, 21, 30}) {
    const auto c = CostModel::asymmetric(random_coefficients(2, 5, rng), random_coefficients(2, 5, rng));
    EXPECT_EQ(solve_line_bivariate(n, to_bivariate(c, n)).value, solve_line_poly(n, c).value) << n;
  }
}

TEST(SolveLine, MonotoneInN) {
  Int previous = 0;
  for (int n = 1; n <= 64; ++n) {
    const Int v = solve_line(n, kLinear).value;
    ASSERT_GE(v, previous) << n;
    previous = v;
  }
}

TEST(SolveLine, StateLimit) {
  EXPECT_THROW(solve_line_poly(40, CostModel::symmetric({0, 0, 0, 1}), LineSolveOptions{.prune = true, .max_states = 50}),
               SizeLimitError);
}

TEST(Bounds, Examples) {
  EXPECT_EQ(bs_cost_upper_bound(10, kLinear), 8);
  EXPECT_EQ(bs_cost_upper_bound(1, kLinear), 0);
  EXPECT_EQ(bs_cost_upper_bound(16, CostModel::table(std::vector<Int>(16, 1))), 4);
  const auto lb = opt_lower_bounds(10, kLinear);
  EXPECT_EQ(lb.lb1, 5);
  EXPECT_EQ(lb.lb2, 3);
  EXPECT_EQ(lb.lb3, 0);
  EXPECT_EQ(opt_lower_bounds(1, kLinear).max(), 0);
}

TEST(Bounds, SandwichOnSymmetricInstances) {
  Rng rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + trial % 40;
    const auto c = CostModel::symmetric(random_coefficients(1 + trial % 3, 5, rng));
    const Int opt = solve_line(n, c).value;
    const auto lb = opt_lower_bounds(n, c);
    ASSERT_LE(lb.lb1, opt);
    ASSERT_LE(lb.lb2, opt);
    ASSERT_LE(lb.lb3, opt);
    const Int bs = worst(n, c, binary_search_strategy(n));
    ASSERT_LE(opt, bs);
    ASSERT_LE(bs, bs_cost_upper_bound(n, c));
  }
}

TEST(BinarySearch, Shape) {
  EXPECT_EQ(binary_search_strategy(10).root(), 5);
  EXPECT_EQ(binary_search_strategy(1).size(), 1);
  for (int n = 1; n <= 40; ++n) ASSERT_FALSE(validate_stt(Tree::path(n), binary_search_strategy(n)).has_value());
  EXPECT_EQ(worst(10, kLinear, binary_search_strategy(10)), 8);
}

TEST(LowerBoundInstances, Threshold) {
  for (int n : {15, 31, 63, 127}) {
    const auto inst = threshold_instance(n);
    require_valid_stt(Tree::path(n), inst.strategy);
    ASSERT_TRUE(validate(inst.cost, n).ok());
    EXPECT_EQ(worst(n, inst.cost, inst.strategy), 1) << n;
    EXPECT_EQ(worst(n, inst.cost, binary_search_strategy(n)), 2) << n;
  }
  EXPECT_THROW(threshold_instance(16), InputError);
  EXPECT_THROW(threshold_instance(7), InputError);
}

TEST(LowerBoundInstances, Gamma) {
  EXPECT_EQ(worst(2, kLinear, gamma_strategy(2)), 1);
  for (int n : {1, 2, 3, 10, 57}) require_valid_stt(Tree::path(n), gamma_strategy(n));
  for (int n : {1024, 4096}) {
    const Int g = worst(n, kLinear, gamma_strategy(n));
    const Int bs = worst(n, kLinear, binary_search_strategy(n));
    EXPECT_LE(static_cast<double>(g), 0.70 * n);
    if (n == 4096) EXPECT_GE(static_cast<double>(bs) / static_cast<double>(g), 1.40);
  }
}

TEST(Distributional, Examples) {
  const auto uniform = solve_line_distributional(3, kLinear, TargetDistribution::uniform(3));
  EXPECT_EQ(uniform.value, Rational(2, 3));
  EXPECT_EQ(uniform.strategy.root(), 2);
  const auto point = solve_line_distributional(8, kLinear, TargetDistribution::point_mass(8, 6));
  EXPECT_EQ(point.value, Rational(0));
  EXPECT_EQ(point.strategy.root(), 6);
  EXPECT_THROW(solve_line_distributional(4, kLinear, TargetDistribution::uniform(3)), InputError);
}

TEST(Distributional, MatchesOracle) {
  Rng rng(55);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + trial % 10;
    const auto c = CostModel::table(random_monotone_table(n, 9, rng));
    const auto d = random_distribution(n, 6, rng);
    const auto dp = solve_line_distributional(n, c, d);
    ASSERT_EQ(dp.value, brute_force_expected_line(n, c, d).value);
    Rational replay(0);
    const auto costs = cost_for_all_targets(Tree::path(n), c, dp.strategy);
    for (int t = 1; t <= n; ++t) replay += d[t] * Rational(to_int64(costs[static_cast<std::size_t>(t)]));
    ASSERT_EQ(replay, dp.value);
  }
}
