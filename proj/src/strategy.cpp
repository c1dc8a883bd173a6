#include "costsearch/strategy.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

#include "costsearch/errors.hpp"

namespace costsearch {

// --------------------------------------------------------------- SearchTree

SearchTree::SearchTree(int n, std::vector<int> parent) : n_(n), parent_(std::move(parent)) {
  if (n < 1) throw InputError("search tree must have at least one node");
  if (static_cast<int>(parent_.size()) != n + 1) throw InputError("parent array must have n+1 entries");
  parent_[0] = 0;
  children_.assign(static_cast<std::size_t>(n) + 1, {});
  for (int v = 1; v <= n; ++v) {
    const int p = parent_[v];
    if (p < 0 || p > n || p == v) throw InputError("invalid parent for search tree node " + std::to_string(v));
    if (p == 0) {
      if (root_ != 0) throw InputError("search tree has more than one root");
      root_ = v;
    } else {
      children_[p].push_back(v);
    }
  }
  if (root_ == 0) throw InputError("search tree has no root");
  // Every node must reach the root; preorder from the root must see all n.
  if (static_cast<int>(preorder().size()) != n) throw InputError("search tree parent array contains a cycle");
}

SearchTree SearchTree::leaf(int v) {
  if (v != 1) throw InputError("a single-node search tree must be labeled 1");
  return SearchTree(1, {0, 0});
}

int SearchTree::parent(int v) const {
  if (v < 1 || v > n_) throw InputError("no search tree node " + std::to_string(v));
  return parent_[v];
}

const std::vector<int>& SearchTree::children(int v) const {
  if (v < 1 || v > n_) throw InputError("no search tree node " + std::to_string(v));
  return children_[v];
}

std::vector<int> SearchTree::path_to(int v) const {
  std::vector<int> out;
  for (int u = v; u != 0; u = parent(u)) out.push_back(u);
  std::reverse(out.begin(), out.end());
  return out;
}

bool SearchTree::is_ancestor(int x, int v) const {
  for (int u = parent(v); u != 0; u = parent_[u])
    if (u == x) return true;
  return false;
}

VertexSet SearchTree::subtree(int v) const {
  VertexSet out(n_);
  std::vector<int> stack{v};
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    out.insert(u);
    for (int c : children(u)) stack.push_back(c);
  }
  return out;
}

std::vector<int> SearchTree::preorder() const {
  std::vector<int> out;
  std::vector<int> stack{root_};
  std::vector<char> seen(static_cast<std::size_t>(n_) + 1, 0);
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    if (seen[u]) continue;
    seen[u] = 1;
    out.push_back(u);
    for (auto it = children_[u].rbegin(); it != children_[u].rend(); ++it) stack.push_back(*it);
  }
  return out;
}

// --------------------------------------------------------------- validation

std::vector<VertexSet> feasible_sets(const SearchTree& s) {
  std::vector<VertexSet> feas(static_cast<std::size_t>(s.size()) + 1, VertexSet(s.size()));
  auto order = s.preorder();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    feas[*it].insert(*it);
    for (int c : s.children(*it)) feas[*it] |= feas[c];
  }
  return feas;
}

std::optional<SttViolation> validate_stt(const Tree& t, const SearchTree& s) {
  if (s.size() != t.size())
    return SttViolation{s.root(), "search tree has " + std::to_string(s.size()) + " nodes but the tree has " +
                                      std::to_string(t.size()) + " vertices"};
  const auto feas = feasible_sets(s);
  for (int u : s.preorder()) {
    if (!is_connected(t, feas[u])) return SttViolation{u, "feasible set is not connected"};
    const auto comps = components_after_removal(t, feas[u], u);
    const auto& kids = s.children(u);
    if (comps.size() != kids.size())
      return SttViolation{u, "node has " + std::to_string(kids.size()) + " children but its feasible set splits into " +
                                 std::to_string(comps.size()) + " components"};
    for (int c : kids) {
      if (std::find(comps.begin(), comps.end(), feas[c]) == comps.end())
        return SttViolation{c, "subtree does not span a component of its parent's feasible set"};
    }
  }
  return std::nullopt;
}

void require_valid_stt(const Tree& t, const SearchTree& s) {
  if (auto v = validate_stt(t, s)) throw InputError("invalid strategy at node " + std::to_string(v->node) + ": " + v->reason);
}

// --------------------------------------------------------------------- cost

Int cost_for_target(const Tree& t, const CostModel& c, const SearchTree& s, int target) {
  Int total = 0;
  for (int u = s.parent(target); u != 0; u = s.parent(u)) total = add(total, eval_cost(c, t, u, target));
  return total;
}

std::vector<Int> cost_for_all_targets(const Tree& t, const CostModel& c, const SearchTree& s) {
  if (s.size() != t.size()) throw InputError("strategy and tree sizes differ");
  std::vector<Int> out(static_cast<std::size_t>(s.size()) + 1, 0);
  for (int v = 1; v <= s.size(); ++v) out[v] = cost_for_target(t, c, s, v);
  return out;
}

WorstCase worst_case_cost(const Tree& t, const CostModel& c, const SearchTree& s) {
  const auto all = cost_for_all_targets(t, c, s);
  WorstCase w{all[1], 1};
  for (int v = 2; v <= s.size(); ++v)
    if (all[v] > w.value) w = {all[v], v};
  return w;
}

Transcript simulate(const Tree& t, const CostModel& c, const SearchTree& s, const Adversary& adversary) {
  if (s.size() != t.size()) throw InputError("strategy and tree sizes differ");
  Transcript out;
  if (adversary.kind == Adversary::Kind::FixedTarget) {
    if (!t.valid_vertex(adversary.target)) throw InputError("fixed target outside the tree");
    const int target = adversary.target;
    for (int q : s.path_to(target)) {
      out.queries.push_back(q);
      if (q == target) {
        out.responses.push_back(0);
        break;
      }
      const int dq = t.distance(q, target);
      for (int w : t.neighbors(q))
        if (t.distance(w, target) == dq - 1) {
          out.responses.push_back(w);
          break;
        }
    }
    out.target = target;
  } else {
    if (!t.is_path()) throw InputError("the larger-side adversary is only defined on paths");
    int lo = 1;
    int hi = t.size();
    int node = s.root();
    while (true) {
      const int q = node;
      if (q < lo || q > hi) throw InputError("strategy queries " + std::to_string(q) + " outside the feasible interval");
      out.queries.push_back(q);
      const int left = q - lo;
      const int right = hi - q;
      if (left == 0 && right == 0) {
        out.responses.push_back(0);
        out.target = q;
        break;
      }
      if (left >= right) {
        out.responses.push_back(q - 1);
        hi = q - 1;
      } else {
        out.responses.push_back(q + 1);
        lo = q + 1;
      }
      node = 0;
      for (int ch : s.children(q))
        if (ch >= lo && ch <= hi) node = ch;
      if (node == 0) throw InputError("strategy has no child for the feasible interval");
    }
  }
  out.total_cost = cost_for_target(t, c, s, out.target);
  return out;
}

// ------------------------------------------------------ rotations, promotion

SearchTree rotate(const Tree& t, const SearchTree& s, int u) {
  const int p = s.parent(u);
  if (p == 0) throw InputError("cannot rotate the root");
  auto parent = s.parents();
  parent[u] = s.parent(p);
  parent[p] = u;
  // The child of u on p's side of u in the base tree moves under p.
  const int dup = t.distance(u, p);
  for (int c : s.children(u))
    if (t.distance(c, p) < t.distance(c, u) + dup) parent[c] = p;
  return SearchTree(s.size(), std::move(parent));
}

SearchTree promote(const Tree& t, const SearchTree& s, int u, int x) {
  if (!s.is_ancestor(x, u))
    throw InputError(std::to_string(x) + " is not a proper ancestor of " + std::to_string(u));
  SearchTree cur = s;
  int p = 0;
  do {
    p = cur.parent(u);
    cur = rotate(t, cur, u);
  } while (p != x);
  return cur;
}

int max_boundary(const Tree& t, const SearchTree& s) {
  int best = 0;
  for (const auto& f : feasible_sets(s))
    if (!f.empty()) best = std::max(best, boundary(t, f).size());
  return best;
}

bool is_kcut(const Tree& t, const SearchTree& s, int k) { return max_boundary(t, s) <= k; }

SearchTree convert_to_kcut(const Tree& t, const SearchTree& s, int k) {
  if (k < 3) throw InputError("k-cut conversion needs k >= 3");
  require_valid_stt(t, s);
  SearchTree cur = s;
  std::function<void(int)> process = [&](int u) {
    const auto feas = feasible_sets(cur);
    auto bsize = [&](int v) { return boundary(t, feas[v]).size(); };
    bool violating = false;
    for (int v : cur.subtree(u).members())
      if (bsize(v) > k) {
        violating = true;
        break;
      }
    if (!violating) return;
    if (bsize(u) >= k) {
      const int v = leaf_centroid(t, convex_hull(t, boundary(t, feas[u])));
      if (v != u) cur = promote(t, cur, v, u);
      u = v;
    }
    const auto kids = cur.children(u);
    for (int c : kids) process(c);
  };
  process(cur.root());
  if (!is_kcut(t, cur, k)) throw std::logic_error("k-cut conversion left a violating node");
  return cur;
}

// ------------------------------------------------------------ serialization

nlohmann::json strategy_to_json(const SearchTree& s) {
  std::function<nlohmann::json(int)> build = [&](int u) {
    nlohmann::json kids = nlohmann::json::array();
    for (int c : s.children(u)) kids.push_back(build(c));
    return nlohmann::json{{"query", u}, {"children", kids}};
  };
  auto j = build(s.root());
  j["schema_version"] = kStrategySchemaVersion;
  return j;
}

SearchTree strategy_from_json(const nlohmann::json& j) {
  std::vector<std::pair<int, int>> nodes;  // (label, parent)
  std::function<void(const nlohmann::json&, int)> walk = [&](const nlohmann::json& node, int par) {
    if (!node.is_object() || !node.contains("query") || !node["query"].is_number_integer())
      throw InputError(R"(strategy node must be an object with an integer "query")");
    const int label = node["query"].get<int>();
    nodes.emplace_back(label, par);
    if (node.contains("children")) {
      if (!node["children"].is_array()) throw InputError(R"(strategy "children" must be an array)");
      for (const auto& c : node["children"]) walk(c, label);
    }
  };
  walk(j, 0);
  const int n = static_cast<int>(nodes.size());
  std::vector<int> parent(static_cast<std::size_t>(n) + 1, -1);
  for (auto [label, par] : nodes) {
    if (label < 1 || label > n)
      throw InputError("strategy label " + std::to_string(label) + " outside 1.." + std::to_string(n));
    if (parent[label] != -1) throw InputError("strategy label " + std::to_string(label) + " appears twice");
    parent[label] = par;
  }
  parent[0] = 0;
  return SearchTree(n, std::move(parent));
}

SearchTree strategy_from_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError("strategy JSON syntax error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  return strategy_from_json(j);
}

SearchTree load_strategy(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw InputError("cannot open strategy file " + file.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return strategy_from_text(buf.str());
  } catch (const InputError& e) {
    throw InputError(file.string() + ": " + e.what());
  }
}

std::string to_dot(const SearchTree& s) {
  std::ostringstream out;
  out << "digraph stt {\n";
  for (int u : s.preorder()) out << "  " << u << ";\n";
  for (int u : s.preorder())
    for (int c : s.children(u)) out << "  " << u << " -> " << c << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace costsearch
