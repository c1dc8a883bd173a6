#include "test_support.hpp"

#include <queue>

#include "costsearch/errors.hpp"
#include "costsearch/graph.hpp"
#include "costsearch/random_instances.hpp"

using namespace costsearch;

namespace {

// Letters of the ten-vertex spider used throughout: center A with arms
// B-C, D-E, F-G and H-I-J.
enum : int { A = 1, B, C, D, E, F, G, H, I, J };

Tree spider() {
  const std::vector<std::pair<int, int>> edges{{A, B}, {B, C}, {A, D}, {D, E}, {A, F},
                                               {F, G}, {A, H}, {H, I}, {I, J}};
  return Tree(10, edges);
}

VertexSet set_of(int n, std::initializer_list<int> v) { return VertexSet(n, std::vector<int>(v)); }

int bfs_distance(const Tree& t, int u, int v) {
  std::vector<int> dist(static_cast<std::size_t>(t.size()) + 1, -1);
  std::queue<int> q;
  q.push(u);
  dist[u] = 0;
  while (!q.empty()) {
    int x = q.front();
    q.pop();
    for (int w : t.neighbors(x))
      if (dist[w] < 0) {
        dist[w] = dist[x] + 1;
        q.push(w);
      }
  }
  return dist[v];
}

}  // namespace

TEST(VertexSet, BasicOperations) {
  VertexSet s(70);
  EXPECT_TRUE(s.empty());
  s.insert(70);
  s.insert(3);
  s.insert(64);
  EXPECT_EQ(s.size(), 3);
  EXPECT_EQ(s.first(), 3);
  EXPECT_EQ(s.members(), (std::vector<int>{3, 64, 70}));
  s.erase(64);
  EXPECT_FALSE(s.contains(64));
  EXPECT_FALSE(s.contains(0));
  EXPECT_THROW(s.insert(71), InputError);
  EXPECT_EQ(VertexSet::all(5).size(), 5);
  EXPECT_EQ(VertexSetHash{}(set_of(9, {1, 2})), VertexSetHash{}(set_of(9, {2, 1})));
}

TEST(Tree, RejectsMalformedInput) {
  using E = std::vector<std::pair<int, int>>;
  EXPECT_THROW(Tree(3, E{{1, 2}}), InputError);
  EXPECT_THROW(Tree(3, E{{1, 1}, {2, 3}}), InputError);
  EXPECT_THROW(Tree(3, E{{1, 2}, {2, 1}}), InputError);
  EXPECT_THROW(Tree(4, E{{1, 2}, {2, 1}, {3, 4}}), InputError);
  EXPECT_THROW(Tree(4, E{{1, 2}, {1, 2}, {3, 4}}), InputError);
  EXPECT_THROW(Tree(3, E{{1, 2}, {2, 4}}), InputError);
  EXPECT_THROW(Tree(0, E{}), InputError);
  EXPECT_NO_THROW(Tree(1, E{}));
}

TEST(Tree, Distances) {
  const Tree p = Tree::path(10);
  EXPECT_TRUE(p.is_path());
  EXPECT_EQ(p.distance(3, 7), 4);
  EXPECT_EQ(p.distance(6, 6), 0);
  const Tree s = spider();
  EXPECT_FALSE(s.is_path());
  EXPECT_EQ(s.distance(A, J), 3);
  EXPECT_EQ(s.distance(E, J), 5);
  EXPECT_EQ(s.distance(C, C), 0);
  EXPECT_THROW(s.distance(0, 3), InputError);
  EXPECT_THROW(s.distance(1, 11), InputError);
}

TEST(Tree, DistanceMatchesBfsOnRandomTrees) {
  Rng rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const Tree t = random_tree(1 + trial % 25, rng);
    for (int u = 1; u <= t.size(); ++u)
      for (int v = 1; v <= t.size(); ++v) ASSERT_EQ(t.distance(u, v), bfs_distance(t, u, v));
  }
}

TEST(Tree, JsonRoundTrip) {
  const Tree s = spider();
  const Tree back = tree_from_json(tree_to_json(s));
  EXPECT_EQ(back.edges(), s.edges());
  EXPECT_THROW(tree_from_json(nlohmann::json{{"n", 3}}), InputError);
  EXPECT_THROW(tree_from_json(nlohmann::json::parse(R"({"n":3,"edges":[[1,2],[2,"x"]]})")), InputError);
  EXPECT_THROW(load_tree("/nonexistent/tree.json"), InputError);
}

TEST(Components, AfterRemoval) {
  const Tree p = Tree::path(10);
  const auto comps = components_after_removal(p, VertexSet::all(10), 5);
  ASSERT_EQ(comps.size(), 2U);
  EXPECT_EQ(comps[0], set_of(10, {1, 2, 3, 4}));
  EXPECT_EQ(comps[1], set_of(10, {6, 7, 8, 9, 10}));
  EXPECT_TRUE(components_after_removal(p, set_of(10, {4}), 4).empty());

  const Tree s = spider();
  const auto arms = components_after_removal(s, VertexSet::all(10), A);
  ASSERT_EQ(arms.size(), 4U);
  EXPECT_EQ(arms[0], set_of(10, {B, C}));
  EXPECT_EQ(arms[1], set_of(10, {D, E}));
  EXPECT_EQ(arms[2], set_of(10, {F, G}));
  EXPECT_EQ(arms[3], set_of(10, {H, I, J}));

  EXPECT_THROW(components_after_removal(p, set_of(10, {1, 3}), 1), InputError);
  EXPECT_THROW(components_after_removal(p, set_of(10, {1, 2}), 5), InputError);
}

TEST(Boundary, Examples) {
  const Tree p = Tree::path(10);
  EXPECT_TRUE(boundary(p, VertexSet::all(10)).empty());
  EXPECT_EQ(boundary(p, set_of(10, {3, 4, 5, 6})), set_of(10, {2, 7}));
  const Tree s = spider();
  EXPECT_EQ(boundary(s, set_of(10, {A, H, I, J})), set_of(10, {B, D, F}));
  EXPECT_EQ(boundary(s, set_of(10, {H, I, J})), set_of(10, {A}));
}

TEST(ConvexHull, Examples) {
  const Tree p = Tree::path(10);
  EXPECT_EQ(convex_hull(p, set_of(10, {2, 9})), set_of(10, {2, 3, 4, 5, 6, 7, 8, 9}));
  EXPECT_EQ(convex_hull(p, set_of(10, {4, 5})), set_of(10, {4, 5}));
  const Tree s = spider();
  EXPECT_EQ(convex_hull(s, set_of(10, {B, D, F})), set_of(10, {A, B, D, F}));
  EXPECT_EQ(convex_hull(s, set_of(10, {C, J})), set_of(10, {A, B, C, H, I, J}));
  EXPECT_THROW(convex_hull(s, VertexSet(10)), InputError);
}

TEST(ConvexHull, EqualsUnionOfPairwisePaths) {
  Rng rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + trial % 15;
    const Tree t = random_tree(n, rng);
    VertexSet s(n);
    for (int v = 1; v <= n; ++v)
      if (std::uniform_int_distribution<int>(0, 2)(rng) == 0) s.insert(v);
    if (s.empty()) s.insert(1);
    VertexSet expected(n);
    for (int u : s.members())
      for (int v : s.members())
        for (int w = 1; w <= n; ++w)
          if (t.distance(u, w) + t.distance(w, v) == t.distance(u, v)) expected.insert(w);
    ASSERT_EQ(convex_hull(t, s), expected);
  }
}

TEST(LeafCentroid, Examples) {
  EXPECT_EQ(leaf_centroid(Tree::path(3), VertexSet::all(3)), 2);
  const std::vector<std::pair<int, int>> star{{1, 4}, {2, 4}, {3, 4}, {4, 5}};
  EXPECT_EQ(leaf_centroid(Tree(5, star), VertexSet::all(5)), 4);
  const Tree s = spider();
  EXPECT_EQ(leaf_centroid(s, set_of(10, {A, B, D, F})), A);
  EXPECT_EQ(leaf_centroid(s, set_of(10, {A, B, D, F, H, I, J})), A);
  EXPECT_THROW(leaf_centroid(s, set_of(10, {A, B})), InputError);
  EXPECT_THROW(leaf_centroid(s, set_of(10, {B, C, E})), InputError);
}

TEST(LeafCentroid, BalancesLeavesOnRandomSubtrees) {
  Rng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 3 + trial % 20;
    const Tree t = random_tree(n, rng);
    const auto all = VertexSet::all(n);
    const int v = leaf_centroid(t, all);
    int leaves = 0;
    for (int u = 1; u <= n; ++u) leaves += t.degree(u) == 1 ? 1 : 0;
    ASSERT_GE(t.degree(v), 2);
    for (const auto& comp : components_after_removal(t, all, v)) {
      int inside = 0;
      for (int u : comp.members()) inside += t.degree(u) == 1 ? 1 : 0;
      ASSERT_LE(inside, leaves / 2 + 1);
    }
  }
}
