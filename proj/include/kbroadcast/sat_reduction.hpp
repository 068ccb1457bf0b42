#pragma once

// Reduction from 3-SAT to the dominating k-broadcast decision problem.
//
// Per variable i the gadget G_i has vertices u_i, u'_i and k disjoint paths
// x_{j,1} .. x_{j,k} (j = 1..k); x_{j,1} is adjacent to both u_i and u'_i and
// x_{j,k} is a leaf, so every leaf sits at distance exactly k from u_i and
// from u'_i. Per clause j a path of k vertices runs from the hub Ĉ_j to the
// terminal C_j, and Ĉ_j is joined to the clause's three literal vertices.
//
// Vertex ids: gadgets first (u_i, u'_i, then x_{1,1..k}, x_{2,1..k}, ...),
// then the clause paths, hub first.

#include <array>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "kbroadcast/broadcast.hpp"
#include "kbroadcast/errors.hpp"
#include "kbroadcast/graph.hpp"
#include "kbroadcast/solver.hpp"

namespace kbroadcast {

// Literals are signed 1-based variable indices; -i is the negation of i.
using Clause = std::array<int, 3>;

struct CnfFormula {
  int num_vars = 0;
  std::vector<Clause> clauses;
};

inline void validate(const CnfFormula& c) {
  if (c.num_vars < 0) throw ValidationError("negative variable count");
  for (std::size_t j = 0; j < c.clauses.size(); ++j) {
    const auto& cl = c.clauses[j];
    for (int lit : cl)
      if (lit == 0 || std::abs(lit) > c.num_vars)
        throw ValidationError("clause " + std::to_string(j + 1) + ": literal " + std::to_string(lit) +
                              " out of range");
    if (cl[0] == cl[1] || cl[0] == cl[2] || cl[1] == cl[2])
      throw ValidationError("clause " + std::to_string(j + 1) + ": repeated literal");
  }
}

inline CnfFormula parse_dimacs_cnf(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::pair<long long, long long>> header;
  std::size_t header_line = 0;
  CnfFormula f;
  std::vector<int> current;
  std::size_t current_start = 0;

  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (tok == "c") continue;
    if (tok == "%") break;  // SATLIB end marker
    if (tok == "p") {
      if (header) throw ParseError(line_no, "duplicate problem line");
      std::string fmt;
      long long n = -1, m = -1;
      if (!(ls >> fmt >> n >> m) || fmt != "cnf" || n < 0 || m < 0)
        throw ParseError(line_no, "expected 'p cnf <vars> <clauses>'");
      if (ls >> tok) throw ParseError(line_no, "trailing tokens on problem line");
      header = {n, m};
      header_line = line_no;
      f.num_vars = static_cast<int>(n);
      continue;
    }
    if (!header) throw ParseError(line_no, "clause before 'p cnf' header");
    do {
      long long lit = 0;
      try {
        std::size_t used = 0;
        lit = std::stoll(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw ParseError(line_no, "expected an integer literal, got '" + tok + "'");
      }
      if (lit == 0) {
        std::set<int> distinct(current.begin(), current.end());
        if (current.size() != 3 || distinct.size() != 3)
          throw ParseError(current_start ? current_start : line_no,
                           "clause must have exactly 3 distinct literals, got " + std::to_string(distinct.size()));
        f.clauses.push_back({current[0], current[1], current[2]});
        current.clear();
        current_start = 0;
        continue;
      }
      if (lit < -header->first || lit > header->first)
        throw ParseError(line_no, "literal " + std::to_string(lit) + " out of range");
      if (current.empty()) current_start = line_no;
      current.push_back(static_cast<int>(lit));
    } while (ls >> tok);
  }
  if (!header) throw ParseError(line_no, "missing 'p cnf' header");
  if (!current.empty()) throw ParseError(current_start, "clause not terminated by 0");
  if (static_cast<long long>(f.clauses.size()) != header->second)
    throw ParseError(header_line, "header declares " + std::to_string(header->second) + " clauses, found " +
                                      std::to_string(f.clauses.size()));
  return f;
}

inline std::string to_dimacs(const CnfFormula& f) {
  std::ostringstream out;
  out << "p cnf " << f.num_vars << ' ' << f.clauses.size() << '\n';
  for (const auto& c : f.clauses) out << c[0] << ' ' << c[1] << ' ' << c[2] << " 0\n";
  return out.str();
}

using Assignment = std::vector<bool>;  // index i holds variable i+1

inline bool satisfies(const CnfFormula& f, const Assignment& a) {
  for (const auto& c : f.clauses) {
    bool sat = false;
    for (int lit : c) sat = sat || (a[std::abs(lit) - 1] == (lit > 0));
    if (!sat) return false;
  }
  return true;
}

// Exhaustive over 2^n assignments; the first satisfying one in binary order.
inline std::optional<Assignment> brute_force_sat(const CnfFormula& f) {
  if (f.num_vars > 24) throw GuardExceeded("brute-force SAT limited to 24 variables");
  Assignment a(f.num_vars);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << f.num_vars); ++mask) {
    for (int i = 0; i < f.num_vars; ++i) a[i] = (mask >> i) & 1U;
    if (satisfies(f, a)) return a;
  }
  return std::nullopt;
}

struct Role {
  enum class Kind { positive_literal, negative_literal, gadget_path, clause_hub, clause_path, clause_terminal };
  Kind kind;
  int variable = 0;  // 1-based, gadget roles
  int path = 0;      // 1-based, gadget_path
  int position = 0;  // 1-based along a gadget path or clause path
  int clause = 0;    // 1-based, clause roles

  std::string name() const {
    switch (kind) {
      case Kind::positive_literal: return "u_" + std::to_string(variable);
      case Kind::negative_literal: return "u'_" + std::to_string(variable);
      case Kind::gadget_path:
        return "x_" + std::to_string(variable) + "_" + std::to_string(path) + "_" + std::to_string(position);
      case Kind::clause_hub: return "C^_" + std::to_string(clause);
      case Kind::clause_path: return "p_" + std::to_string(clause) + "_" + std::to_string(position);
      case Kind::clause_terminal: return "C_" + std::to_string(clause);
    }
    return {};
  }
};

struct ReductionInstance {
  Graph graph;
  int k = 0;
  int num_vars = 0;
  int num_clauses = 0;
  std::vector<Role> roles;

  int gadget_order() const { return k * k + 2; }
  int positive(int var) const { return (var - 1) * gadget_order(); }
  int negative(int var) const { return positive(var) + 1; }
  // x_{path,pos} of variable `var`.
  int gadget_vertex(int var, int path, int pos) const { return positive(var) + 2 + (path - 1) * k + (pos - 1); }
  int clause_vertex(int clause, int pos) const { return num_vars * gadget_order() + (clause - 1) * k + (pos - 1); }
  int hub(int clause) const { return clause_vertex(clause, 1); }
  int terminal(int clause) const { return clause_vertex(clause, k); }
  int literal_vertex(int lit) const { return lit > 0 ? positive(lit) : negative(-lit); }
  // Cost threshold k·n of the decision question.
  int threshold() const { return k * num_vars; }
};

inline ReductionInstance reduce(const CnfFormula& c, int k) {
  if (k < 3) throw ValidationError("reduction requires k >= 3");
  validate(c);
  ReductionInstance inst;
  inst.k = k;
  inst.num_vars = c.num_vars;
  inst.num_clauses = static_cast<int>(c.clauses.size());
  const int n = c.num_vars * inst.gadget_order() + inst.num_clauses * k;
  inst.roles.resize(n);
  std::vector<Edge> edges;
  using K = Role::Kind;
  for (int i = 1; i <= c.num_vars; ++i) {
    inst.roles[inst.positive(i)] = {K::positive_literal, i};
    inst.roles[inst.negative(i)] = {K::negative_literal, i};
    for (int j = 1; j <= k; ++j) {
      edges.emplace_back(inst.positive(i), inst.gadget_vertex(i, j, 1));
      edges.emplace_back(inst.negative(i), inst.gadget_vertex(i, j, 1));
      for (int t = 1; t <= k; ++t) {
        inst.roles[inst.gadget_vertex(i, j, t)] = {K::gadget_path, i, j, t};
        if (t < k) edges.emplace_back(inst.gadget_vertex(i, j, t), inst.gadget_vertex(i, j, t + 1));
      }
    }
  }
  for (int j = 1; j <= inst.num_clauses; ++j) {
    for (int t = 1; t <= k; ++t) {
      K kind = t == 1 ? K::clause_hub : (t == k ? K::clause_terminal : K::clause_path);
      inst.roles[inst.clause_vertex(j, t)] = {kind, 0, 0, t, j};
      if (t < k) edges.emplace_back(inst.clause_vertex(j, t), inst.clause_vertex(j, t + 1));
    }
    for (int lit : c.clauses[j - 1]) edges.emplace_back(inst.hub(j), inst.literal_vertex(lit));
  }
  inst.graph = Graph(n, std::move(edges));
  return inst;
}

inline nlohmann::json role_map_json(const ReductionInstance& inst) {
  nlohmann::json out = nlohmann::json::array();
  for (int v = 0; v < inst.graph.order(); ++v) out.push_back({{"vertex", v}, {"role", inst.roles[v].name()}});
  return out;
}

// Power k on the true literal vertex of every variable, 0 elsewhere.
inline BroadcastFunction assignment_to_broadcast(const ReductionInstance& inst, const Assignment& a) {
  if (static_cast<int>(a.size()) != inst.num_vars)
    throw ValidationError("assignment covers " + std::to_string(a.size()) + " of " +
                          std::to_string(inst.num_vars) + " variables");
  auto f = BroadcastFunction::zero(inst.k, inst.graph.order());
  for (int i = 1; i <= inst.num_vars; ++i) f.set(a[i - 1] ? inst.positive(i) : inst.negative(i), inst.k);
  return f;
}

class GadgetBudgetError : public Error {
 public:
  using Error::Error;
};

// Reads the truth assignment off a dominating broadcast of cost <= k·n.
// Each gadget carries exactly k, since its leaves see nothing outside it.
// A gadget with all k on u_i or u'_i fixes its variable. A gadget whose
// budget is spread must still cover its own leaves; its variable is free
// (set to false), because every clause terminal is dominated only by a
// literal vertex of power k.
inline Assignment broadcast_to_assignment(const ReductionInstance& inst, const BroadcastFunction& f) {
  if (f.order() != inst.graph.order()) throw ValidationError("broadcast does not match the instance");
  if (f.cost() > inst.threshold())
    throw ValidationError("broadcast cost " + std::to_string(f.cost()) + " exceeds k·n = " +
                          std::to_string(inst.threshold()));
  const auto& dist = inst.graph.distances();
  Assignment a(inst.num_vars);
  for (int i = 1; i <= inst.num_vars; ++i) {
    const int first = inst.positive(i), last = first + inst.gadget_order();
    int total = 0;
    for (int v = first; v < last; ++v) total += f[v];
    const std::string tag = "gadget " + std::to_string(i);
    if (total != inst.k)
      throw GadgetBudgetError(tag + " carries cost " + std::to_string(total) + ", expected " +
                              std::to_string(inst.k));
    a[i - 1] = f[inst.positive(i)] == inst.k;
    if (a[i - 1] || f[inst.negative(i)] == inst.k) continue;
    for (int path = 1; path <= inst.k; ++path) {
      const int leaf = inst.gadget_vertex(i, path, inst.k);
      bool covered = false;
      for (int v = first; v < last && !covered; ++v) covered = f[v] > 0 && dist.hops(v, leaf) <= f[v];
      if (!covered)
        throw GadgetBudgetError(tag + " spreads its budget and leaves x_" + std::to_string(i) + "_" +
                                std::to_string(path) + "_" + std::to_string(inst.k) + " uncovered");
    }
  }
  if (!is_dominating(inst.graph, f)) throw ValidationError("broadcast is not dominating");
  return a;
}

struct ReductionVerdict {
  bool satisfiable = false;
  int gamma = 0;
  int threshold = 0;
  // SAT <=> gamma <= threshold, and when gamma <= threshold the witness
  // decodes to a satisfying assignment.
  bool consistent = false;
  std::optional<Assignment> decoded;
};

inline ReductionVerdict verify_reduction(const CnfFormula& c, int k, const SolveOptions& opts = {}) {
  auto inst = reduce(c, k);
  ReductionVerdict v;
  v.satisfiable = brute_force_sat(c).has_value();
  v.threshold = inst.threshold();
  if (inst.graph.order() == 0) {
    // No variables and no clauses: the empty broadcast answers the question.
    v.gamma = 0;
    v.consistent = v.satisfiable;
    return v;
  }
  // G(C) is disconnected when some variable occurs in no clause.
  auto r = gamma_bk_by_components(inst.graph, k, opts);
  v.gamma = r.value;
  bool decoded_ok = true;
  if (r.value <= v.threshold) {
    v.decoded = broadcast_to_assignment(inst, r.witness);
    decoded_ok = satisfies(c, *v.decoded);
  }
  v.consistent = (v.satisfiable == (v.gamma <= v.threshold)) && decoded_ok;
  return v;
}

}  // namespace kbroadcast
