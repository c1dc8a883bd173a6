#include "test_support.hpp"

#include "costsearch/errors.hpp"
#include "costsearch/line_solver.hpp"
#include "costsearch/oracle.hpp"
#include "costsearch/random_instances.hpp"
#include "costsearch/tree_solver.hpp"

using namespace costsearch;

namespace {

enum : int { A = 1, B, C, D, E, F, G, H, I, J };

const CostModel kLinear = CostModel::symmetric({0, 1});

VertexSet set_of(int n, std::initializer_list<int> v) { return VertexSet(n, std::vector<int>(v)); }

Tree star(int leaves) {
  std::vector<std::pair<int, int>> edges;
  for (int v = 2; v <= leaves + 1; ++v) edges.emplace_back(1, v);
  return Tree(leaves + 1, edges);
}

}  // namespace

TEST(Interface, Vertices) {
  const Tree p = Tree::path(10);
  EXPECT_TRUE(interface_vertices(p, VertexSet::all(10)).empty());
  EXPECT_EQ(interface_vertices(p, set_of(10, {3, 4, 5, 6})), (std::vector<int>{3, 6}));
  const Tree spider = load_tree(data_file("spider_tree.json"));
  EXPECT_EQ(interface_vertices(spider, set_of(10, {H, I, J})), (std::vector<int>{H}));
  EXPECT_THROW(interface_vertices(p, set_of(10, {1, 3})), InputError);
}

TEST(Interface, ShiftSketch) {
  const Tree p = Tree::path(10);
  const std::vector<int> one{7};
  const auto s = encode_queries(p, one, 4, 2);
  EXPECT_EQ(shift_sketch(s, 0, 4), s);
  EXPECT_EQ(shift_sketch(s, 2, 2).sigma[2], 25);  // (3 + 2)^2

  Rng rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const Tree t = random_tree(3 + trial % 15, rng);
    const int n = t.size();
    std::uniform_int_distribution<int> pick(1, n);
    std::vector<int> queries;
    for (int i = 0; i < 4; ++i) queries.push_back(pick(rng));
    const int anchor = pick(rng);
    const int p_deg = trial % 4;
    const auto base = encode_queries(t, queries, anchor, p_deg);
    // Moving the anchor away from every query adds the same r to every distance.
    std::vector<std::pair<int, int>> edges;
    for (auto [u, v] : t.edges()) edges.emplace_back(u, v);
    edges.emplace_back(anchor, n + 1);
    edges.emplace_back(n + 1, n + 2);
    const Tree extended(n + 2, edges);
    ASSERT_EQ(shift_sketch(base, 2, n + 2), encode_queries(extended, queries, n + 2, p_deg));
  }
}

TEST(Interface, Merge) {
  const Tree p = Tree::path(10);
  const auto lone = merge_into_new_interface(5, {}, 6, p, 3);
  EXPECT_EQ(lone.anchor, 6);
  EXPECT_EQ(lone.sigma, (std::vector<Int>{1, 1, 1, 1}));

  const Tree s = load_tree(data_file("spider_tree.json"));
  // Past queries C and E sit behind the interfaces B and D.
  const std::vector<int> qc{C};
  const std::vector<int> qe{E};
  const std::vector<InterfaceSketch> outside{encode_queries(s, qc, B, 2), encode_queries(s, qe, D, 2)};
  // Querying A and keeping the arm at H: all three queries now lie behind H.
  const std::vector<int> all{A, C, E};
  EXPECT_EQ(merge_into_new_interface(A, outside, H, s, 2), encode_queries(s, all, H, 2));

  const std::vector<InterfaceSketch> first{outside[0]};
  const std::vector<InterfaceSketch> second{outside[1]};
  const auto ma = merge_into_new_interface(A, first, H, s, 2);
  const auto mb = merge_into_new_interface(A, second, H, s, 2);
  const auto mab = merge_into_new_interface(A, outside, H, s, 2);
  const std::vector<int> just_a{A};
  const auto qa = encode_queries(s, just_a, H, 2);
  for (std::size_t m = 0; m < 3; ++m) EXPECT_EQ(ma.sigma[m] + mb.sigma[m] - qa.sigma[m], mab.sigma[m]);
}

TEST(Candidates, Examples) {
  const Tree single = Tree::path(1);
  EXPECT_EQ(candidate_queries(single, VertexSet::all(1), 3), (std::vector<int>{1}));
  const Tree p = Tree::path(9);
  EXPECT_EQ(candidate_queries(p, set_of(9, {3, 4, 5, 6}), 2), (std::vector<int>{3, 4, 5, 6}));
  // Every query on a star leaves components with boundary 1.
  EXPECT_EQ(candidate_queries(star(5), VertexSet::all(6), 3), (std::vector<int>{1, 2, 3, 4, 5, 6}));
  // On the spider with k = 2 the center qualifies since each arm hangs off A alone.
  const Tree s = load_tree(data_file("spider_tree.json"));
  const auto cands = candidate_queries(s, VertexSet::all(10), 2);
  for (int q : cands)
    for (const auto& comp : components_after_removal(s, VertexSet::all(10), q)) ASSERT_LE(boundary(s, comp).size(), 2);
  EXPECT_EQ(std::count(cands.begin(), cands.end(), A), 1);
}

TEST(TreeState, HitCostMatchesHistoryOnRandomWalks) {
  Rng rng(77);
  for (int trial = 0; trial < 80; ++trial) {
    const Tree t = random_tree(2 + trial % 14, rng);
    const std::vector<Int> beta = random_coefficients(trial % 4, 4, rng);
    const auto c = CostModel::symmetric(beta);
    const int k = 2 + trial % 3;
    TreeState state = initial_tree_state(t, static_cast<int>(beta.size()) - 1);
    std::vector<int> history;
    while (true) {
      for (int v : state.s.members()) {
        Int direct = 0;
        for (int q : history) direct += eval_cost(c, t, q, v);
        ASSERT_EQ(hit_cost(t, beta, state, v), direct);
      }
      ASSERT_LE(static_cast<int>(state.interfaces.size()), k);
      const auto cands = candidate_queries(t, state.s, k);
      ASSERT_FALSE(cands.empty());
      const int q = cands[std::uniform_int_distribution<std::size_t>(0, cands.size() - 1)(rng)];
      const auto comps = components_after_removal(t, state.s, q);
      if (comps.empty()) break;
      const auto& comp = comps[std::uniform_int_distribution<std::size_t>(0, comps.size() - 1)(rng)];
      state = child_state(t, state, q, comp);
      history.push_back(q);
      ASSERT_EQ(interface_vertices(t, state.s).size(), state.interfaces.size());
    }
  }
}

TEST(SolveTree, Fixtures) {
  const auto p10 = solve_tree_kcut(Tree::path(10), kLinear, 2);
  EXPECT_EQ(p10.value, 6);
  EXPECT_EQ(worst_case_cost(Tree::path(10), kLinear, p10.strategy).value, 6);
  EXPECT_TRUE(is_kcut(Tree::path(10), p10.strategy, 2));
  EXPECT_FALSE(p10.guarantee.has_value());

  const auto single = solve_tree_kcut(Tree::path(1), kLinear, 3);
  EXPECT_EQ(single.value, 0);
  EXPECT_EQ(single.strategy, SearchTree::leaf(1));
  EXPECT_EQ(single.guarantee, Rational(2));
  EXPECT_EQ(solve_tree_kcut(Tree::path(1), kLinear, 5).guarantee, Rational(3, 2));

  EXPECT_EQ(solve_tree_kcut(star(4), kLinear, 3).value, 1);
  EXPECT_THROW(solve_tree_kcut(Tree::path(3), kLinear, 1), InputError);
  EXPECT_THROW(solve_tree_kcut(Tree::path(3), CostModel::table({1, 2}), 3), ModelMismatchError);
  EXPECT_THROW(solve_tree_kcut(star(3), CostModel::pricing(), 3), ModelMismatchError);
}

TEST(SolveTree, EpsilonToK) {
  EXPECT_EQ(k_for_epsilon(1.0), 3);
  EXPECT_EQ(k_for_epsilon(0.5), 4);
  EXPECT_EQ(k_for_epsilon(0.3), 7);
  EXPECT_EQ(k_for_epsilon(5.0), 3);
  EXPECT_THROW(k_for_epsilon(0.0), InputError);
  EXPECT_THROW(k_for_epsilon(-1.0), InputError);
}

TEST(SolveTree, SandwichAndConsistencyOnRandomTrees) {
  Rng rng(2024);
  for (int trial = 0; trial < 30; ++trial) {
    const Tree t = random_tree(1 + trial % 10, rng);
    const auto c = CostModel::symmetric(random_coefficients(1 + trial % 2, 4, rng));
    const auto oracle = brute_force_tree(t, c);
    Int previous = -1;
    for (int k : {2, 3, 4, 5}) {
      const auto r = solve_tree_kcut(t, c, k);
      ASSERT_TRUE(is_kcut(t, r.strategy, k));
      ASSERT_EQ(worst_case_cost(t, c, r.strategy).value, r.value);
      ASSERT_LE(oracle.value, r.value);
      if (k == 3) ASSERT_LE(r.value, 2 * oracle.value);
      if (k == 5) ASSERT_LE(2 * r.value, 3 * oracle.value);
      if (previous >= 0) ASSERT_LE(r.value, previous);
      previous = r.value;
      for (int v = 1; v <= t.size(); ++v)
        ASSERT_LE(simulate(t, c, r.strategy, Adversary::fixed(v)).total_cost, r.value);
      if (k >= 3) {
        const auto converted = convert_to_kcut(t, oracle.strategy, k);
        ASSERT_GE(worst_case_cost(t, c, converted).value, r.value);
      }
    }
  }
}

TEST(SolveTree, PathMatchesLineSolver) {
  for (int degree = 1; degree <= 3; ++degree) {
    std::vector<Int> beta(static_cast<std::size_t>(degree) + 1, 0);
    beta.back() = 1;
    beta[1] = 1;
    const auto c = CostModel::symmetric(beta);
    for (int n : {5, 17, 30}) EXPECT_EQ(solve_tree_kcut(Tree::path(n), c, 2).value, solve_line_poly(n, c).value);
  }
}

TEST(SolveTree, StateLimit) {
  EXPECT_THROW(solve_tree_kcut(star(12), CostModel::symmetric({0, 0, 1}), 6, TreeSolveOptions{.prune = true, .max_states = 3}),
               SizeLimitError);
}
