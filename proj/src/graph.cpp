#include "costsearch/graph.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <fstream>
#include <queue>
#include <set>
#include <sstream>
#include <string>

#include "costsearch/errors.hpp"

namespace costsearch {

// ---------------------------------------------------------------- VertexSet

VertexSet::VertexSet(int n) : n_(n), words_(static_cast<std::size_t>((n + 64) / 64), 0) {
  if (n < 0) throw InputError("vertex set universe must be nonnegative");
}

VertexSet::VertexSet(int n, std::span<const int> members) : VertexSet(n) {
  for (int v : members) insert(v);
}

VertexSet VertexSet::all(int n) {
  VertexSet s(n);
  for (int v = 1; v <= n; ++v) s.insert(v);
  return s;
}

void VertexSet::check(int v) const {
  if (v < 1 || v > n_)
    throw InputError("vertex " + std::to_string(v) + " outside 1.." + std::to_string(n_));
}

bool VertexSet::contains(int v) const {
  if (v < 1 || v > n_) return false;
  return (words_[static_cast<std::size_t>(v) / 64] >> (v % 64)) & 1U;
}

void VertexSet::insert(int v) {
  check(v);
  words_[static_cast<std::size_t>(v) / 64] |= std::uint64_t{1} << (v % 64);
}

void VertexSet::erase(int v) {
  check(v);
  words_[static_cast<std::size_t>(v) / 64] &= ~(std::uint64_t{1} << (v % 64));
}

int VertexSet::size() const {
  int c = 0;
  for (auto w : words_) c += std::popcount(w);
  return c;
}

bool VertexSet::empty() const {
  return std::all_of(words_.begin(), words_.end(), [](auto w) { return w == 0; });
}

int VertexSet::first() const {
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] != 0) return static_cast<int>(i * 64) + std::countr_zero(words_[i]);
  return 0;
}

std::vector<int> VertexSet::members() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    auto w = words_[i];
    while (w != 0) {
      out.push_back(static_cast<int>(i * 64) + std::countr_zero(w));
      w &= w - 1;
    }
  }
  return out;
}

VertexSet& VertexSet::operator|=(const VertexSet& other) {
  if (other.n_ != n_) throw InputError("vertex sets over different universes");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

std::size_t VertexSetHash::operator()(const VertexSet& s) const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (auto w : s.words()) {
    h ^= w;
    h *= 0x100000001b3ULL;
    h ^= h >> 29;
  }
  return static_cast<std::size_t>(h);
}

// --------------------------------------------------------------------- Tree

Tree::Tree(int n, std::span<const std::pair<int, int>> edges) : n_(n) {
  if (n < 1) throw InputError("tree must have at least one vertex");
  if (static_cast<int>(edges.size()) != n - 1)
    throw InputError("tree on " + std::to_string(n) + " vertices needs " + std::to_string(n - 1) +
                     " edges, got " + std::to_string(edges.size()));
  adj_.assign(static_cast<std::size_t>(n) + 1, {});
  std::set<std::pair<int, int>> seen;
  for (auto [u, v] : edges) {
    if (!valid_vertex(u) || !valid_vertex(v))
      throw InputError("edge (" + std::to_string(u) + "," + std::to_string(v) + ") has an invalid vertex id");
    if (u == v) throw InputError("self-loop at vertex " + std::to_string(u));
    if (!seen.insert({std::min(u, v), std::max(u, v)}).second)
      throw InputError("parallel edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }
  for (auto& nb : adj_) std::sort(nb.begin(), nb.end());

  // BFS from vertex 1 for depths and parents; also detects disconnection.
  depth_.assign(static_cast<std::size_t>(n) + 1, -1);
  std::vector<int> parent(static_cast<std::size_t>(n) + 1, 0);
  std::queue<int> bfs;
  bfs.push(1);
  depth_[1] = 0;
  int reached = 0;
  while (!bfs.empty()) {
    int u = bfs.front();
    bfs.pop();
    ++reached;
    for (int w : adj_[u]) {
      if (depth_[w] >= 0) continue;
      depth_[w] = depth_[u] + 1;
      parent[w] = u;
      bfs.push(w);
    }
  }
  if (reached != n) throw InputError("edges do not form a connected tree");

  int levels = 1;
  while ((1 << levels) < n) ++levels;
  up_.assign(static_cast<std::size_t>(levels), std::vector<int>(static_cast<std::size_t>(n) + 1, 0));
  for (int v = 1; v <= n; ++v) up_[0][v] = parent[v] == 0 ? v : parent[v];
  for (int j = 1; j < levels; ++j)
    for (int v = 1; v <= n; ++v) up_[j][v] = up_[j - 1][up_[j - 1][v]];

  is_path_ = true;
  for (auto [u, v] : edges)
    if (std::abs(u - v) != 1) is_path_ = false;
}

Tree Tree::path(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int v = 1; v < n; ++v) edges.emplace_back(v, v + 1);
  return Tree(n, edges);
}

const std::vector<int>& Tree::neighbors(int v) const {
  if (!valid_vertex(v)) throw InputError("invalid vertex id " + std::to_string(v));
  return adj_[v];
}

int Tree::lca(int u, int v) const {
  if (depth_[u] < depth_[v]) std::swap(u, v);
  int diff = depth_[u] - depth_[v];
  for (std::size_t j = 0; diff > 0; ++j, diff >>= 1)
    if (diff & 1) u = up_[j][u];
  if (u == v) return u;
  for (auto j = up_.size(); j-- > 0;) {
    if (up_[j][u] != up_[j][v]) {
      u = up_[j][u];
      v = up_[j][v];
    }
  }
  return up_[0][u];
}

int Tree::distance(int u, int v) const {
  if (!valid_vertex(u) || !valid_vertex(v))
    throw InputError("invalid vertex id in distance(" + std::to_string(u) + "," + std::to_string(v) + ")");
  if (is_path_) return std::abs(u - v);
  return depth_[u] + depth_[v] - 2 * depth_[lca(u, v)];
}

std::vector<std::pair<int, int>> Tree::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int u = 1; u <= n_; ++u)
    for (int v : adj_[u])
      if (u < v) out.emplace_back(u, v);
  return out;
}

Tree tree_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("edges"))
    throw InputError(R"(tree JSON must be an object with "n" and "edges")");
  if (!j["n"].is_number_integer()) throw InputError(R"(tree JSON: "n" must be an integer)");
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : j["edges"]) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
      throw InputError("tree JSON: each edge must be a pair of integers");
    edges.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  return Tree(j["n"].get<int>(), edges);
}

nlohmann::json tree_to_json(const Tree& t) {
  nlohmann::json edges = nlohmann::json::array();
  for (auto [u, v] : t.edges()) edges.push_back({u, v});
  return {{"n", t.size()}, {"edges", edges}};
}

Tree load_tree(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw InputError("cannot open tree file " + file.string());
  try {
    return tree_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(file.string() + ": " + e.what());
  }
}

// --------------------------------------------------------------- primitives

namespace {

// Components of S \ {removed} (removed may be 0 for "nothing removed").
std::vector<VertexSet> components_of(const Tree& t, const VertexSet& s, int removed) {
  std::vector<VertexSet> out;
  VertexSet seen(t.size());
  if (removed != 0) seen.insert(removed);
  for (int start : s.members()) {
    if (seen.contains(start)) continue;
    VertexSet comp(t.size());
    std::vector<int> stack{start};
    seen.insert(start);
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      comp.insert(u);
      for (int w : t.neighbors(u)) {
        if (s.contains(w) && !seen.contains(w)) {
          seen.insert(w);
          stack.push_back(w);
        }
      }
    }
    out.push_back(std::move(comp));
  }
  return out;
}

void check_set(const Tree& t, const VertexSet& s) {
  if (s.universe() != t.size()) throw InputError("vertex set does not match tree size");
}

}  // namespace

bool is_connected(const Tree& t, const VertexSet& s) {
  check_set(t, s);
  return s.empty() || components_of(t, s, 0).size() == 1;
}

std::vector<VertexSet> components_after_removal(const Tree& t, const VertexSet& s, int v) {
  check_set(t, s);
  if (!s.contains(v)) throw InputError("vertex " + std::to_string(v) + " is not in the set");
  if (!is_connected(t, s)) throw InputError("vertex set does not induce a connected subtree");
  return components_of(t, s, v);
}

VertexSet boundary(const Tree& t, const VertexSet& s) {
  check_set(t, s);
  VertexSet out(t.size());
  for (int u : s.members())
    for (int w : t.neighbors(u))
      if (!s.contains(w)) out.insert(w);
  return out;
}

VertexSet convex_hull(const Tree& t, const VertexSet& s) {
  check_set(t, s);
  if (s.empty()) throw InputError("convex hull of an empty set");
  // Peel leaves outside S until none remain.
  VertexSet hull = VertexSet::all(t.size());
  std::vector<int> deg(static_cast<std::size_t>(t.size()) + 1);
  std::vector<int> queue;
  for (int v = 1; v <= t.size(); ++v) {
    deg[v] = t.degree(v);
    if (deg[v] <= 1 && !s.contains(v)) queue.push_back(v);
  }
  while (!queue.empty()) {
    int v = queue.back();
    queue.pop_back();
    if (!hull.contains(v)) continue;
    hull.erase(v);
    for (int w : t.neighbors(v)) {
      if (!hull.contains(w)) continue;
      if (--deg[w] <= 1 && !s.contains(w)) queue.push_back(w);
    }
  }
  return hull;
}

int induced_degree(const Tree& t, const VertexSet& s, int v) {
  int d = 0;
  for (int w : t.neighbors(v))
    if (s.contains(w)) ++d;
  return d;
}

int leaf_centroid(const Tree& t, const VertexSet& s) {
  check_set(t, s);
  if (s.size() < 3) throw InputError("leaf centroid needs a subtree with at least 3 vertices");
  if (!is_connected(t, s)) throw InputError("vertex set does not induce a connected subtree");

  const auto members = s.members();
  VertexSet leaves(t.size());
  for (int v : members)
    if (induced_degree(t, s, v) == 1) leaves.insert(v);
  const int bound = leaves.size() / 2 + 1;

  int v = 0;
  for (int u : members) {
    if (!leaves.contains(u)) {
      v = u;
      break;
    }
  }
  // The overloaded component (if any) is unique, and stepping into it never
  // makes the side we came from overloaded, so the walk terminates.
  for (int steps = 0; steps <= t.size(); ++steps) {
    int next = 0;
    for (const auto& comp : components_of(t, s, v)) {
      int count = 0;
      for (int u : comp.members())
        if (leaves.contains(u)) ++count;
      if (count > bound) {
        for (int w : t.neighbors(v))
          if (comp.contains(w)) next = w;
        break;
      }
    }
    if (next == 0) return v;
    v = next;
  }
  throw std::logic_error("leaf centroid walk did not terminate");
}

}  // namespace costsearch
