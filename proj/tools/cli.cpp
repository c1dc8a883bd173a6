#include "cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "costsearch/costs.hpp"
#include "costsearch/errors.hpp"
#include "costsearch/graph.hpp"
#include "costsearch/line_solver.hpp"
#include "costsearch/oracle.hpp"
#include "costsearch/random_instances.hpp"
#include "costsearch/strategy.hpp"
#include "costsearch/tree_solver.hpp"

namespace costsearch::cli {

namespace {

constexpr int kSchemaVersion = 1;

struct Options {
  int n = 0;
  std::string tree_file;
  std::string cost_spec;
  std::string strategy_file;
  std::string emit_strategy;
  std::string json_out;
  std::string out_file;
  std::string adversary = "larger";
  std::string n_list;
  std::string threshold_list = "15,31,63";
  std::string gamma_list = "1024,4096";
  std::string distribution;
  int k = 0;
  double epsilon = 0.0;
  int limit = 0;
  int max_value = 10;
  std::uint64_t seed = 1;
  std::size_t max_states = 0;
  bool stats = false;
  bool timing = false;
  bool oracle_check = false;
  bool use_bs = false;
};

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InputError("bad integer '" + item + "' in list '" + text + "'");
    }
  }
  if (out.empty()) throw InputError("empty list");
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw InputError("cannot write " + path);
  f << text;
}

void emit_strategy(const std::string& path, const SearchTree& s) {
  if (path.empty()) return;
  if (path.size() >= 4 && path.substr(path.size() - 4) == ".dot")
    write_text(path, to_dot(s));
  else
    write_text(path, strategy_to_json(s).dump(2) + "\n");
}

std::string fixed(double x, int digits = 6) {
  std::ostringstream o;
  o << std::fixed << std::setprecision(digits) << x;
  return o.str();
}

std::string ratio_text(Int num, Int den) {
  if (den == 0) return "NA";
  return fixed(static_cast<double>(num) / static_cast<double>(den));
}

void print_stats(std::ostream& out, const SolveStats& s, bool timing) {
  out << "states_expanded: " << s.states_expanded << "\n";
  out << "memo_hits: " << s.memo_hits << "\n";
  if (timing) out << "wall_ms: " << fixed(s.wall_ms, 3) << "\n";
}

Tree instance_tree(const Options& o) {
  if (!o.tree_file.empty() && o.n != 0) throw InputError("give either --n or --tree, not both");
  if (!o.tree_file.empty()) return load_tree(o.tree_file);
  if (o.n < 1) throw InputError("an instance needs --n N (N >= 1) or --tree FILE");
  return Tree::path(o.n);
}

void write_result_json(const Options& o, nlohmann::json j) {
  if (o.json_out.empty()) return;
  j["schema_version"] = kSchemaVersion;
  write_text(o.json_out, j.dump(2) + "\n");
}

// ------------------------------------------------------------- subcommands

int cmd_solve_line(const Options& o, std::ostream& out) {
  if (o.n < 1) throw InputError("--n must be at least 1");
  const auto cost = parse_cost_spec(o.cost_spec);
  LineSolveOptions opts;
  opts.max_states = o.max_states;
  const auto r = solve_line(o.n, cost, opts);
  out << "value: " << r.value << "\n";
  if (o.stats) print_stats(out, r.stats, o.timing);
  emit_strategy(o.emit_strategy, r.strategy);
  write_result_json(o, {{"command", "solve-line"},
                        {"n", o.n},
                        {"cost", cost_to_json(cost)},
                        {"value", to_string(r.value)},
                        {"strategy", strategy_to_json(r.strategy)}});
  return kOk;
}

int cmd_solve_tree(const Options& o, std::ostream& out) {
  const Tree t = instance_tree(o);
  const auto cost = parse_cost_spec(o.cost_spec);
  if (o.k != 0 && o.epsilon != 0.0) throw InputError("give either --k or --epsilon, not both");
  const int k = o.epsilon != 0.0 ? k_for_epsilon(o.epsilon) : (o.k != 0 ? o.k : 3);
  TreeSolveOptions opts;
  if (o.max_states != 0) opts.max_states = o.max_states;
  const auto r = solve_tree_kcut(t, cost, k, opts);
  out << "k: " << k << "\n";
  out << "value: " << r.value << "\n";
  if (r.guarantee)
    out << "guarantee: " << r.guarantee->numerator() << "/" << r.guarantee->denominator() << "\n";
  if (o.stats) print_stats(out, r.stats, o.timing);
  emit_strategy(o.emit_strategy, r.strategy);
  int code = kOk;
  nlohmann::json j{{"command", "solve-tree"},
                   {"tree", tree_to_json(t)},
                   {"cost", cost_to_json(cost)},
                   {"k", k},
                   {"value", to_string(r.value)},
                   {"strategy", strategy_to_json(r.strategy)}};
  if (o.oracle_check) {
    OracleLimits limits;
    if (o.limit != 0) limits.tree = o.limit;
    const auto oracle = brute_force_tree(t, cost, limits);
    out << "oracle: " << oracle.value << "\n";
    bool ok = oracle.value <= r.value;
    if (r.guarantee) {
      // value * den <= oracle * num
      ok = ok && mul(r.value, r.guarantee->denominator()) <= mul(oracle.value, r.guarantee->numerator());
    }
    out << "check: " << (ok ? "ok" : "FAILED") << "\n";
    j["oracle"] = to_string(oracle.value);
    if (!ok) code = kCheckFailed;
  }
  write_result_json(o, j);
  return code;
}

int cmd_oracle(const Options& o, std::ostream& out) {
  const auto cost = parse_cost_spec(o.cost_spec);
  OracleLimits limits;
  if (o.limit != 0) limits.line = limits.tree = limits.expected_line = o.limit;
  if (!o.distribution.empty()) {
    if (o.n < 1) throw InputError("the expected-cost oracle needs --n");
    const auto d = parse_distribution(o.distribution, o.n);
    const auto r = brute_force_expected_line(o.n, cost, d, limits);
    out << "expected: " << r.value.numerator() << "/" << r.value.denominator() << "\n";
    emit_strategy(o.emit_strategy, r.strategy);
    return kOk;
  }
  OracleResult r;
  if (o.tree_file.empty()) {
    if (o.n < 1) throw InputError("--n must be at least 1");
    r = brute_force_line(o.n, cost, limits);
  } else {
    r = brute_force_tree(instance_tree(o), cost, limits);
  }
  out << "value: " << r.value << "\n";
  if (o.stats) out << "nodes_explored: " << r.nodes_explored << "\n";
  emit_strategy(o.emit_strategy, r.strategy);
  write_result_json(o, {{"command", "oracle"}, {"value", to_string(r.value)}, {"strategy", strategy_to_json(r.strategy)}});
  return kOk;
}

int cmd_eval(const Options& o, std::ostream& out) {
  const Tree t = instance_tree(o);
  const auto cost = parse_cost_spec(o.cost_spec);
  const auto s = o.use_bs ? binary_search_strategy(t.size()) : load_strategy(o.strategy_file);
  require_valid_stt(t, s);
  const auto w = worst_case_cost(t, cost, s);
  out << "worst_case: " << w.value << "\n";
  out << "argmax_target: " << w.target << "\n";
  out << "max_boundary: " << max_boundary(t, s) << "\n";
  write_result_json(o, {{"command", "eval"}, {"value", to_string(w.value)}, {"target", w.target}});
  return kOk;
}

int cmd_convert(const Options& o, std::ostream& out) {
  const Tree t = instance_tree(o);
  const auto s = load_strategy(o.strategy_file);
  const int k = o.k != 0 ? o.k : 3;
  const auto converted = convert_to_kcut(t, s, k);
  out << "max_boundary_before: " << max_boundary(t, s) << "\n";
  out << "max_boundary_after: " << max_boundary(t, converted) << "\n";
  if (!o.cost_spec.empty()) {
    const auto cost = parse_cost_spec(o.cost_spec);
    out << "worst_case_before: " << worst_case_cost(t, cost, s).value << "\n";
    out << "worst_case_after: " << worst_case_cost(t, cost, converted).value << "\n";
  }
  emit_strategy(o.emit_strategy, converted);
  return kOk;
}

int cmd_bounds(const Options& o, std::ostream& out) {
  if (o.n < 1) throw InputError("--n must be at least 1");
  const auto cost = parse_cost_spec(o.cost_spec);
  if (!cost.distance_based()) throw ModelMismatchError("bounds need a symmetric distance cost");
  const auto lb = opt_lower_bounds(o.n, cost);
  out << "lb1: " << lb.lb1 << "\n";
  out << "lb2: " << lb.lb2 << "\n";
  out << "lb3: " << lb.lb3 << "\n";
  out << "bs: " << worst_case_cost(Tree::path(o.n), cost, binary_search_strategy(o.n)).value << "\n";
  out << "bs_upper_bound: " << bs_cost_upper_bound(o.n, cost) << "\n";
  return kOk;
}

int cmd_constant(const Options& o, std::ostream& out) {
  const auto cost = parse_cost_spec(o.cost_spec.empty() ? "sym:0,1" : o.cost_spec);
  std::ostringstream csv;
  csv << "n,opt,bs,ratio,opt_over_n,runtime_ms\n";
  for (int n : parse_int_list(o.n_list)) {
    const auto start = std::chrono::steady_clock::now();
    const auto r = solve_line(n, cost);
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    const Int bs = worst_case_cost(Tree::path(n), cost, binary_search_strategy(n)).value;
    csv << n << "," << r.value << "," << bs << "," << ratio_text(bs, r.value) << ","
        << fixed(static_cast<double>(r.value) / n) << "," << (o.timing ? fixed(ms, 1) : "NA") << "\n";
  }
  if (o.out_file.empty())
    out << csv.str();
  else
    write_text(o.out_file, csv.str());
  return kOk;
}

int cmd_lowerbound(const Options& o, std::ostream& out) {
  out << "instance,n,strategy_cost,bs_cost,ratio,strategy_over_n\n";
  for (int n : parse_int_list(o.threshold_list)) {
    const auto inst = threshold_instance(n);
    const Tree t = Tree::path(n);
    const Int a = worst_case_cost(t, inst.cost, inst.strategy).value;
    const Int b = worst_case_cost(t, inst.cost, binary_search_strategy(n)).value;
    out << "threshold," << n << "," << a << "," << b << "," << ratio_text(b, a) << ","
        << fixed(static_cast<double>(a) / n) << "\n";
  }
  const auto linear = CostModel::symmetric({0, 1});
  for (int n : parse_int_list(o.gamma_list)) {
    const Tree t = Tree::path(n);
    const Int a = worst_case_cost(t, linear, gamma_strategy(n)).value;
    const Int b = worst_case_cost(t, linear, binary_search_strategy(n)).value;
    out << "gamma," << n << "," << a << "," << b << "," << ratio_text(b, a) << "," << fixed(static_cast<double>(a) / n)
        << "\n";
  }
  return kOk;
}

int cmd_simulate(const Options& o, std::ostream& out) {
  const Tree t = instance_tree(o);
  const auto cost = parse_cost_spec(o.cost_spec);
  const auto s = o.use_bs ? binary_search_strategy(t.size()) : load_strategy(o.strategy_file);
  require_valid_stt(t, s);
  Adversary adv;
  if (o.adversary == "larger") {
    adv = Adversary::larger_side();
  } else if (o.adversary.rfind("fixed:", 0) == 0) {
    adv = Adversary::fixed(parse_int_list(o.adversary.substr(6)).front());
  } else {
    throw InputError("adversary must be 'larger' or 'fixed:<vertex>'");
  }
  const auto tr = simulate(t, cost, s, adv);
  out << "query,response\n";
  for (std::size_t i = 0; i < tr.queries.size(); ++i) out << tr.queries[i] << "," << tr.responses[i] << "\n";
  out << "target: " << tr.target << "\n";
  out << "total_cost: " << tr.total_cost << "\n";
  return kOk;
}

int cmd_generate(const std::string& what, const Options& o, std::ostream& out) {
  Rng rng(o.seed);
  nlohmann::json j;
  if (what == "tree") {
    if (o.n < 1) throw InputError("--n must be at least 1");
    j = tree_to_json(random_tree(o.n, rng));
  } else if (what == "table") {
    if (o.n < 2) throw InputError("--n must be at least 2");
    j = cost_to_json(CostModel::table(random_monotone_table(o.n - 1, o.max_value, rng)));
  } else if (what == "stt") {
    j = strategy_to_json(random_stt(instance_tree(o), rng));
  } else {
    throw InputError("generate supports tree, table and stt");
  }
  j["schema_version"] = kSchemaVersion;
  if (o.out_file.empty())
    out << j.dump(2) << "\n";
  else
    write_text(o.out_file, j.dump(2) + "\n");
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact and approximate search strategies for adversarial targets with distance-dependent query costs"};
  app.require_subcommand(1);
  Options o;
  std::string generate_kind;

  auto add_n = [&](CLI::App* c) { return c->add_option("--n", o.n, "Path length (vertices 1..N)"); };
  auto add_tree = [&](CLI::App* c) { return c->add_option("--tree", o.tree_file, "Tree JSON file"); };
  auto add_cost = [&](CLI::App* c, bool required) {
    auto* opt = c->add_option("--cost", o.cost_spec, "sym:b0,b1,.. | asym:../.. | table:h1,.. | preset:NAME | file:PATH");
    if (required) opt->required();
  };
  auto add_emit = [&](CLI::App* c) {
    c->add_option("--emit-strategy", o.emit_strategy, "Write the strategy (.json or .dot)");
  };
  auto add_json = [&](CLI::App* c) { c->add_option("--json", o.json_out, "Write a JSON result file"); };

  auto* solve_line_cmd = app.add_subcommand("solve-line", "Exact minimax strategy on a path");
  add_n(solve_line_cmd)->required();
  add_cost(solve_line_cmd, true);
  add_emit(solve_line_cmd);
  add_json(solve_line_cmd);
  solve_line_cmd->add_flag("--stats", o.stats, "Print solver statistics");
  solve_line_cmd->add_flag("--timing", o.timing, "Include wall-clock times");
  solve_line_cmd->add_option("--max-states", o.max_states, "Refuse beyond this many memo entries");

  auto* solve_tree_cmd = app.add_subcommand("solve-tree", "Best k-cut strategy on a tree");
  add_tree(solve_tree_cmd);
  add_n(solve_tree_cmd);
  add_cost(solve_tree_cmd, true);
  solve_tree_cmd->add_option("--k", o.k, "Boundary bound k (>= 2)");
  solve_tree_cmd->add_option("--epsilon", o.epsilon, "Target accuracy; uses k = max(3, ceil(2/epsilon))");
  add_emit(solve_tree_cmd);
  add_json(solve_tree_cmd);
  solve_tree_cmd->add_flag("--oracle-check", o.oracle_check, "Compare against the brute-force oracle");
  solve_tree_cmd->add_option("--limit", o.limit, "Oracle size limit");
  solve_tree_cmd->add_flag("--stats", o.stats, "Print solver statistics");
  solve_tree_cmd->add_flag("--timing", o.timing, "Include wall-clock times");
  solve_tree_cmd->add_option("--max-states", o.max_states, "Refuse beyond this many memo entries");

  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force minimax on a small instance");
  add_tree(oracle_cmd);
  add_n(oracle_cmd);
  add_cost(oracle_cmd, true);
  oracle_cmd->add_option("--distribution", o.distribution, "uniform | point:V | w1,w2,.. for the expected cost");
  oracle_cmd->add_option("--limit", o.limit, "Size limit override");
  oracle_cmd->add_flag("--stats", o.stats, "Print the number of explored states");
  add_emit(oracle_cmd);
  add_json(oracle_cmd);

  auto* eval_cmd = app.add_subcommand("eval", "Worst-case cost of a strategy file");
  add_tree(eval_cmd);
  add_n(eval_cmd);
  add_cost(eval_cmd, true);
  eval_cmd->add_option("--strategy", o.strategy_file, "Strategy JSON file");
  eval_cmd->add_flag("--bs", o.use_bs, "Evaluate Binary Search instead of a file");
  add_json(eval_cmd);

  auto* convert_cmd = app.add_subcommand("convert-kcut", "Convert a strategy into a k-cut strategy");
  add_tree(convert_cmd);
  add_n(convert_cmd);
  convert_cmd->add_option("--strategy", o.strategy_file, "Strategy JSON file")->required();
  convert_cmd->add_option("--k", o.k, "Boundary bound k (>= 3)");
  add_cost(convert_cmd, false);
  add_emit(convert_cmd);

  auto* bounds_cmd = app.add_subcommand("bounds", "Lower bounds and Binary Search costs");
  add_n(bounds_cmd)->required();
  add_cost(bounds_cmd, true);

  auto* constant_cmd = app.add_subcommand("constant", "OPT(n)/n sweep as CSV");
  add_cost(constant_cmd, false);
  constant_cmd->add_option("--n-list", o.n_list, "Comma-separated sizes")->required();
  constant_cmd->add_flag("--timing", o.timing, "Fill the runtime_ms column");
  constant_cmd->add_option("--out", o.out_file, "CSV output file");

  auto* lowerbound_cmd = app.add_subcommand("lowerbound", "Threshold and gamma-split instances");
  lowerbound_cmd->add_option("--threshold-n", o.threshold_list, "Sizes 2^k-1 for the threshold instance");
  lowerbound_cmd->add_option("--gamma-n", o.gamma_list, "Sizes for the gamma-split strategy");

  auto* simulate_cmd = app.add_subcommand("simulate", "Replay a strategy against an adversary");
  add_tree(simulate_cmd);
  add_n(simulate_cmd);
  add_cost(simulate_cmd, true);
  simulate_cmd->add_option("--strategy", o.strategy_file, "Strategy JSON file");
  simulate_cmd->add_flag("--bs", o.use_bs, "Replay Binary Search instead of a file");
  simulate_cmd->add_option("--adversary", o.adversary, "larger | fixed:V");

  auto* generate_cmd = app.add_subcommand("generate", "Seeded random instances (tree, table, stt)");
  generate_cmd->add_option("kind", generate_kind, "tree | table | stt")->required();
  add_n(generate_cmd);
  add_tree(generate_cmd);
  generate_cmd->add_option("--seed", o.seed, "Random seed");
  generate_cmd->add_option("--max", o.max_value, "Largest table value");
  generate_cmd->add_option("--out", o.out_file, "Output file");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    for (auto* sub : {eval_cmd, simulate_cmd})
      if (sub->parsed() && !o.use_bs && o.strategy_file.empty()) throw InputError("give --strategy FILE or --bs");
    if (solve_line_cmd->parsed()) return cmd_solve_line(o, out);
    if (solve_tree_cmd->parsed()) return cmd_solve_tree(o, out);
    if (oracle_cmd->parsed()) return cmd_oracle(o, out);
    if (eval_cmd->parsed()) return cmd_eval(o, out);
    if (convert_cmd->parsed()) return cmd_convert(o, out);
    if (bounds_cmd->parsed()) return cmd_bounds(o, out);
    if (constant_cmd->parsed()) return cmd_constant(o, out);
    if (lowerbound_cmd->parsed()) return cmd_lowerbound(o, out);
    if (simulate_cmd->parsed()) return cmd_simulate(o, out);
    if (generate_cmd->parsed()) return cmd_generate(generate_kind, o, out);
  } catch (const SizeLimitError& e) {
    err << "size limit: " << e.what() << "\n";
    return kSizeLimit;
  } catch (const OverflowError& e) {
    err << "size limit: " << e.what() << "\n";
    return kSizeLimit;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace costsearch::cli
