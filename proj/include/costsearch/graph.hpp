#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace costsearch {

/// Subset of the vertices {1..n} of a tree, stored as a fixed-width bitset so
/// that sets compare, order and hash canonically.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(int n);
  VertexSet(int n, std::span<const int> members);

  static VertexSet all(int n);

  int universe() const { return n_; }
  bool contains(int v) const;
  void insert(int v);
  void erase(int v);
  int size() const;
  bool empty() const;

  /// Smallest member, or 0 when empty.
  int first() const;
  /// Members in ascending order.
  std::vector<int> members() const;

  const std::vector<std::uint64_t>& words() const { return words_; }

  VertexSet& operator|=(const VertexSet& other);
  friend bool operator==(const VertexSet&, const VertexSet&) = default;
  friend auto operator<=>(const VertexSet& a, const VertexSet& b) {
    return a.members() <=> b.members();
  }

 private:
  void check(int v) const;

  int n_ = 0;
  std::vector<std::uint64_t> words_;
};

struct VertexSetHash {
  std::size_t operator()(const VertexSet& s) const noexcept;
};

/// Undirected tree on vertices 1..n. Immutable after construction.
class Tree {
 public:
  /// Validates: n >= 1, n-1 edges, ids in range, no loops or parallel edges, connected.
  Tree(int n, std::span<const std::pair<int, int>> edges);

  /// The chain 1-2-...-n.
  static Tree path(int n);

  int size() const { return n_; }
  const std::vector<int>& neighbors(int v) const;
  int degree(int v) const { return static_cast<int>(neighbors(v).size()); }
  bool valid_vertex(int v) const { return v >= 1 && v <= n_; }

  /// Edge count of the unique u-v path.
  int distance(int u, int v) const;

  /// True iff the edges are exactly {(i, i+1)}; line-only cost models need this.
  bool is_path() const { return is_path_; }

  /// Edges (u, v) with u < v, sorted.
  std::vector<std::pair<int, int>> edges() const;

 private:
  int lca(int u, int v) const;

  int n_ = 0;
  bool is_path_ = false;
  std::vector<std::vector<int>> adj_;
  std::vector<int> depth_;
  std::vector<std::vector<int>> up_;  // up_[j][v]: 2^j-th ancestor, rooted at 1
};

Tree tree_from_json(const nlohmann::json& j);
nlohmann::json tree_to_json(const Tree& t);
Tree load_tree(const std::filesystem::path& file);

bool is_connected(const Tree& t, const VertexSet& s);

/// Connected components of S \ {v}, each sorted by smallest member.
/// Throws InputError if S is disconnected or v is not in S.
std::vector<VertexSet> components_after_removal(const Tree& t, const VertexSet& s, int v);

/// Vertices outside S adjacent to some vertex of S.
VertexSet boundary(const Tree& t, const VertexSet& s);

/// Smallest connected superset of S. Throws InputError for empty S.
VertexSet convex_hull(const Tree& t, const VertexSet& s);

/// Number of neighbours of v inside S.
int induced_degree(const Tree& t, const VertexSet& s, int v);

/// A non-leaf vertex v of the subtree induced by S such that every component
/// of S \ {v} contains at most floor(l/2)+1 of the l leaves of T[S].
/// Deterministic: walks from the smallest-id non-leaf towards any component
/// holding too many leaves. Requires S connected with at least 3 vertices.
int leaf_centroid(const Tree& t, const VertexSet& s);

}  // namespace costsearch
