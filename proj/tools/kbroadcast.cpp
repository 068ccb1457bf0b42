// kbroadcast: command-line front end.
//
// Exit codes: 0 success, 1 audit violation, 2 invalid input, 3 resource guard.

#include <unistd.h>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kbroadcast/bounds.hpp"
#include "kbroadcast/broadcast.hpp"
#include "kbroadcast/graph.hpp"
#include "kbroadcast/sat_reduction.hpp"
#include "kbroadcast/solver.hpp"
#include "kbroadcast/spanning.hpp"
#include "kbroadcast/trees.hpp"

namespace kb = kbroadcast;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitGuard = 3;
constexpr int kExitInternal = 70;

struct Common {
  std::string format = "auto";
  int workers = kb::default_workers();
  std::uint64_t max_nodes = 0;
  double time_limit = 0.0;

  bool json_output() const {
    if (format == "json") return true;
    if (format == "table") return false;
    return !isatty(fileno(stdout));
  }
  kb::SolveOptions solve_options() const {
    kb::SolveOptions o;
    o.max_nodes = max_nodes;
    o.time_limit_seconds = time_limit;
    o.workers = workers;
    return o;
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw kb::ValidationError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw kb::ValidationError("cannot write " + path);
  out << text;
}

kb::Graph load_graph(const std::string& path) { return kb::from_edge_list(read_file(path)); }

std::string chain_string(const std::vector<int>& chain) {
  std::string s = "[";
  for (std::size_t i = 0; i < chain.size(); ++i) s += (i ? "," : "") + std::to_string(chain[i]);
  return s + "]";
}

// ---------------------------------------------------------------------------

struct SolveArgs {
  std::string graph, witness, method = "bnb";
  int k = 1;
};

int cmd_solve(const SolveArgs& a, const Common& c) {
  auto g = load_graph(a.graph);
  auto opts = c.solve_options();
  auto r = a.method == "oracle" ? kb::gamma_bk_oracle(g, a.k, opts) : kb::gamma_bk(g, a.k, opts);
  if (!a.witness.empty()) write_file(a.witness, kb::witness_to_json(r.witness).dump(2) + "\n");
  if (c.json_output())
    std::cout << json{{"k", a.k},
                      {"value", r.value},
                      {"method", kb::to_string(r.stats.method)},
                      {"nodes", r.stats.nodes},
                      {"elapsed_seconds", r.stats.elapsed_seconds}}
                     .dump()
              << "\n";
  else
    std::cout << r.value << "\n";
  return kExitOk;
}

struct GenArgs {
  std::string family, out, legs;
  int n = 0, k = 0, extra = 0;
  std::uint64_t seed = 0;
};

std::vector<int> parse_legs(const std::string& text) {
  std::vector<int> legs;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      legs.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw kb::ValidationError("bad leg length '" + item + "'");
    }
  }
  return legs;
}

int cmd_gen(const GenArgs& a, const Common&) {
  kb::Graph g;
  if (a.family == "tk")
    g = kb::gen_family(kb::ExtremalSpec{a.k});
  else if (a.family == "path")
    g = kb::gen_family(kb::PathSpec{a.n});
  else if (a.family == "spider")
    g = kb::gen_family(kb::SpiderSpec{parse_legs(a.legs)});
  else if (a.family == "random-tree")
    g = kb::gen_family(kb::RandomTreeSpec{a.n, a.seed});
  else
    g = kb::random_connected_graph(a.n, a.extra, a.seed);
  const std::string text = kb::to_edge_list(g);
  if (a.out.empty())
    std::cout << text;
  else
    write_file(a.out, text);
  return kExitOk;
}

struct ReduceArgs {
  std::string cnf, out, roles;
  int k = 3;
};

int cmd_reduce(const ReduceArgs& a, const Common& c) {
  auto formula = kb::parse_dimacs_cnf(read_file(a.cnf));
  auto inst = kb::reduce(formula, a.k);
  const std::string text = kb::to_edge_list(inst.graph);
  if (!a.roles.empty()) write_file(a.roles, kb::role_map_json(inst).dump(2) + "\n");
  if (a.out.empty()) {
    std::cout << text << "# threshold " << inst.threshold() << "\n";
    return kExitOk;
  }
  write_file(a.out, text);
  if (c.json_output())
    std::cout << json{{"vertices", inst.graph.order()}, {"edges", inst.graph.size()}, {"threshold", inst.threshold()}}
                     .dump()
              << "\n";
  else
    std::cout << "vertices " << inst.graph.order() << "\nedges " << inst.graph.size() << "\nthreshold "
              << inst.threshold() << "\n";
  return kExitOk;
}

struct AuditArgs {
  bool trees = false, chain = false;
  int random = 0;
  int max_n = 0;
  int k = 3;
  std::vector<int> ks{1, 2, 3, 4};
  std::string graph;
  std::uint64_t seed = 1;
};

int cmd_audit(const AuditArgs& a, const Common& c) {
  const int modes = int(a.trees) + int(a.chain) + int(a.random > 0);
  if (modes != 1) throw kb::ValidationError("audit needs exactly one of --trees, --chain, --random");
  auto opts = c.solve_options();

  if (a.chain) {
    auto r = kb::audit_chain(load_graph(a.graph), opts);
    if (c.json_output())
      std::cout << kb::to_json(r).dump() << "\n";
    else
      std::cout << "chain " << chain_string(r.chain) << ", " << (r.monotone ? "monotone" : "NOT monotone") << ", "
                << (r.endpoints_ok ? "endpoints equal" : "endpoints DIFFER") << (r.strict ? ", strict" : "") << "\n";
    return r.monotone && r.endpoints_ok ? kExitOk : kExitViolation;
  }

  kb::BoundReport report;
  if (a.trees) {
    report = kb::audit_tree_bound(a.max_n, a.k, opts);
  } else {
    if (a.max_n < 1) throw kb::ValidationError("--random needs --max-n >= 1");
    std::vector<kb::NamedGraph> graphs;
    for (int i = 0; i < a.random; ++i) {
      const std::uint64_t s = a.seed * 1'000'003ULL + static_cast<std::uint64_t>(i);
      const int n = 1 + static_cast<int>(s % static_cast<std::uint64_t>(a.max_n));
      const int extra = static_cast<int>((s / 7) % static_cast<std::uint64_t>(n + 1));
      graphs.push_back({"random n=" + std::to_string(n) + " extra=" + std::to_string(extra) + " seed=" +
                            std::to_string(s),
                        kb::random_connected_graph(n, extra, s)});
    }
    report = kb::audit_graph_bounds(graphs, a.ks, opts);
  }
  if (c.json_output())
    std::cout << kb::to_jsonl(report);
  else
    std::cout << kb::to_table(report);
  return report.summary().violations == 0 ? kExitOk : kExitViolation;
}

struct SpanningArgs {
  std::string graph, extract, tree_out;
  int k = 3;
  std::uint64_t guard = kb::kDefaultSpanningTreeGuard;
};

int cmd_spanning(const SpanningArgs& a, const Common& c) {
  auto g = load_graph(a.graph);
  auto opts = c.solve_options();
  auto graph_result = kb::gamma_bk(g, a.k, opts);
  auto tree_min = kb::min_over_spanning_trees(g, a.k, opts, a.guard);
  const bool equal = graph_result.value == tree_min.value;
  if (!a.tree_out.empty()) write_file(a.tree_out, kb::to_edge_list(tree_min.tree));

  json report{{"graph_value", graph_result.value},
              {"tree_min", tree_min.value},
              {"equal", equal},
              {"spanning_trees", tree_min.trees}};
  bool extracted_ok = true;
  if (!a.extract.empty()) {
    auto ex = kb::extract_broadcast_tree(g, graph_result.witness, a.k, opts);
    extracted_ok = ex.tree.is_tree() && kb::is_dominating(ex.tree, graph_result.witness);
    write_file(a.extract, kb::to_edge_list(ex.tree));
    report["extracted"] = {{"path", a.extract}, {"dominating", extracted_ok}};
  }
  if (c.json_output()) {
    std::cout << report.dump() << "\n";
  } else {
    std::cout << "graph " << graph_result.value << ", trees " << tree_min.value << ", "
              << (equal ? "equal" : "NOT equal") << "\n";
    if (!a.extract.empty())
      std::cout << "extracted tree " << (extracted_ok ? "dominated by the witness" : "NOT dominated by the witness")
                << "\n";
  }
  return equal && extracted_ok ? kExitOk : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact dominating k-broadcast computations"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* sub, bool solver_flags) {
    sub->add_option("--format", common.format, "Report format")->check(CLI::IsMember({"auto", "json", "table"}));
    sub->add_option("--workers", common.workers, "Worker threads (default: KBROADCAST_WORKERS or all cores)")
        ->check(CLI::PositiveNumber);
    if (solver_flags) {
      sub->add_option("--max-nodes", common.max_nodes, "Search node budget (0: unlimited)");
      sub->add_option("--time-limit", common.time_limit, "Time budget in seconds (0: unlimited)")
          ->check(CLI::NonNegativeNumber);
    }
  };

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "Compute gamma_Bk of a graph");
  s->add_option("--graph", solve.graph, "Graph file")->required();
  s->add_option("--k", solve.k, "Power cap")->required()->check(CLI::PositiveNumber);
  s->add_option("--witness", solve.witness, "Write the optimal broadcast as JSON");
  s->add_option("--method", solve.method, "bnb or oracle")->check(CLI::IsMember({"bnb", "oracle"}));
  add_common(s, true);

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "Generate a graph");
  g->add_option("--family", gen.family, "tk, path, spider, random-tree or random-graph")
      ->required()
      ->check(CLI::IsMember({"tk", "path", "spider", "random-tree", "random-graph"}));
  g->add_option("--n", gen.n, "Order");
  g->add_option("--k", gen.k, "Family parameter for tk");
  g->add_option("--legs", gen.legs, "Spider leg lengths, comma separated");
  g->add_option("--extra", gen.extra, "Non-tree edges for random-graph");
  g->add_option("--seed", gen.seed, "Random seed");
  g->add_option("--out", gen.out, "Output file (default: stdout)");
  add_common(g, false);

  ReduceArgs red;
  auto* r = app.add_subcommand("reduce", "Build the reduction graph of a 3-CNF formula");
  r->add_option("--cnf", red.cnf, "DIMACS CNF file")->required();
  r->add_option("--k", red.k, "Power cap (>= 3)")->required();
  r->add_option("--out", red.out, "Graph output file (default: stdout)");
  r->add_option("--roles", red.roles, "Role map JSON output file");
  add_common(r, false);

  AuditArgs audit;
  auto* au = app.add_subcommand("audit", "Check upper bounds and the gamma_Bk chain");
  au->add_flag("--trees", audit.trees, "All trees up to --max-n with radius > k against the tree bound");
  au->add_flag("--chain", audit.chain, "Chain gamma_B1 >= ... >= gamma_B,rad of --graph");
  au->add_option("--random", audit.random, "Number of random connected graphs against the general bound");
  au->add_option("--max-n", audit.max_n, "Largest order");
  au->add_option("--k", audit.k, "Power cap for --trees");
  au->add_option("--ks", audit.ks, "Power caps for --random")->delimiter(',');
  au->add_option("--graph", audit.graph, "Graph file for --chain");
  au->add_option("--seed", audit.seed, "Seed for --random");
  add_common(au, true);

  SpanningArgs span;
  auto* sp = app.add_subcommand("spanning", "Compare gamma_Bk of a graph with its spanning trees");
  sp->add_option("--graph", span.graph, "Graph file")->required();
  sp->add_option("--k", span.k, "Power cap")->required()->check(CLI::PositiveNumber);
  sp->add_option("--extract", span.extract, "Write a spanning tree dominated by an optimal witness (k >= 3)");
  sp->add_option("--tree-out", span.tree_out, "Write a spanning tree attaining the minimum");
  sp->add_option("--guard", span.guard, "Largest number of spanning trees to enumerate");
  add_common(sp, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    if (*s) return cmd_solve(solve, common);
    if (*g) return cmd_gen(gen, common);
    if (*r) return cmd_reduce(red, common);
    if (*au) return cmd_audit(audit, common);
    if (*sp) return cmd_spanning(span, common);
  } catch (const kb::GuardExceeded& e) {
    std::cerr << "guard exceeded: " << e.what() << " (nodes " << e.nodes();
    if (e.best_so_far() >= 0) std::cerr << ", best so far " << e.best_so_far();
    std::cerr << ")\n";
    return kExitGuard;
  } catch (const kb::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInvalid;
}
