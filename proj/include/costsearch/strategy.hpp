#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "costsearch/costs.hpp"
#include "costsearch/graph.hpp"

namespace costsearch {

/// A search tree on a tree (STT): a rooted tree whose nodes are labeled
/// bijectively by the vertices 1..n of a base tree. Because the labeling is a
/// bijection, nodes are addressed by their labels throughout.
class SearchTree {
 public:
  SearchTree() = default;
  /// parent[v] is the parent label of v, 0 for the root; parent has size n+1
  /// (index 0 unused). Throws InputError unless this is a single rooted tree.
  SearchTree(int n, std::vector<int> parent);

  /// Single-node STT.
  static SearchTree leaf(int v);

  int size() const { return n_; }
  int root() const { return root_; }
  int parent(int v) const;
  /// Children labels in ascending order.
  const std::vector<int>& children(int v) const;
  const std::vector<int>& parents() const { return parent_; }

  /// Labels on the root-to-v path, root first.
  std::vector<int> path_to(int v) const;
  /// True if x is a proper ancestor of v.
  bool is_ancestor(int x, int v) const;
  /// Labels of v and all its descendants.
  VertexSet subtree(int v) const;
  /// Pre-order with children visited in ascending label order.
  std::vector<int> preorder() const;

  friend bool operator==(const SearchTree& a, const SearchTree& b) { return a.parent_ == b.parent_; }

 private:
  int n_ = 0;
  int root_ = 0;
  std::vector<int> parent_;
  std::vector<std::vector<int>> children_;
};

struct SttViolation {
  int node;
  std::string reason;
};

/// Checks that s is an STT for t: the children of every node u span exactly
/// the components of Feas(u) minus label(u), one child per component.
std::optional<SttViolation> validate_stt(const Tree& t, const SearchTree& s);
/// Throws InputError with the violation message when validate_stt fails.
void require_valid_stt(const Tree& t, const SearchTree& s);

/// Feasible set of every node, indexed by label.
std::vector<VertexSet> feasible_sets(const SearchTree& s);

Int cost_for_target(const Tree& t, const CostModel& c, const SearchTree& s, int target);
/// cost_for_target for every vertex; index 0 unused.
std::vector<Int> cost_for_all_targets(const Tree& t, const CostModel& c, const SearchTree& s);

struct WorstCase {
  Int value = 0;
  int target = 0;  // smallest maximizing target
};
WorstCase worst_case_cost(const Tree& t, const CostModel& c, const SearchTree& s);

struct Adversary {
  enum class Kind { FixedTarget, LargerSide };
  Kind kind = Kind::FixedTarget;
  int target = 0;

  static Adversary fixed(int v) { return {Kind::FixedTarget, v}; }
  /// Paths only: always answers towards the larger side, ties to the left.
  static Adversary larger_side() { return {Kind::LargerSide, 0}; }
};

struct Transcript {
  std::vector<int> queries;
  /// 0 when the query hit the target, otherwise the neighbour of the query on
  /// the side of the target.
  std::vector<int> responses;
  int target = 0;
  Int total_cost = 0;
};

Transcript simulate(const Tree& t, const CostModel& c, const SearchTree& s, const Adversary& adversary);

/// Rotation of u towards its parent p: u takes p's place, p becomes a child
/// of u and the child of u on p's side (if any) moves under p.
SearchTree rotate(const Tree& t, const SearchTree& s, int u);
/// Rotates u upwards until it has replaced its ancestor x.
SearchTree promote(const Tree& t, const SearchTree& s, int u, int x);

bool is_kcut(const Tree& t, const SearchTree& s, int k);
/// Largest feasible-set boundary over all nodes.
int max_boundary(const Tree& t, const SearchTree& s);

/// Top-down leaf-centroid promotion producing a k-cut STT (k >= 3).
SearchTree convert_to_kcut(const Tree& t, const SearchTree& s, int k);

inline constexpr int kStrategySchemaVersion = 1;

/// `{"query": v, "children": [...]}`; the root also carries "schema_version".
nlohmann::json strategy_to_json(const SearchTree& s);
SearchTree strategy_from_json(const nlohmann::json& j);
/// Parses text; syntax errors report the byte offset.
SearchTree strategy_from_text(const std::string& text);
SearchTree load_strategy(const std::filesystem::path& file);
std::string to_dot(const SearchTree& s);

}  // namespace costsearch
