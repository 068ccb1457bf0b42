#pragma once

// Closed-form upper bounds on gamma_{B_k} and exhaustive audits of them.

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "kbroadcast/errors.hpp"
#include "kbroadcast/graph.hpp"
#include "kbroadcast/parallel.hpp"
#include "kbroadcast/solver.hpp"
#include "kbroadcast/trees.hpp"

namespace kbroadcast {

using Wide = __int128;

// Floor and ceiling of a/b for b > 0, correct for negative a.
constexpr Wide floor_div(Wide a, Wide b) {
  Wide q = a / b;
  return (a % b != 0 && a < 0) ? q - 1 : q;
}
constexpr Wide ceil_div(Wide a, Wide b) {
  Wide q = a / b;
  return (a % b != 0 && a > 0) ? q + 1 : q;
}

// ceil((k+2)/(k+1) * n/3)
inline std::int64_t eq1_bound(std::int64_t n, std::int64_t k) {
  if (n < 1 || k < 1) throw ValidationError("eq1_bound: n and k must be positive");
  return static_cast<std::int64_t>(ceil_div(Wide(k + 2) * n, Wide(3) * (k + 1)));
}

// Three-regime bound: floor(n/2) for k = 1, eq1_bound for 1 < k < r, and
// ceil(n/3) for k >= r. The single-vertex graph (r = 0) falls in the last.
inline std::int64_t upper_bound(std::int64_t n, std::int64_t k, std::int64_t r) {
  if (n < 1) throw ValidationError("upper_bound: n must be at least 1");
  if (k < 1) throw ValidationError("upper_bound: k must be at least 1");
  if (r < 0 || r > n) throw ValidationError("upper_bound: radius must lie in [0, n]");
  if (n == 1) return 1;
  if (k == 1) return n / 2;
  if (k < r) return eq1_bound(n, k);
  return static_cast<std::int64_t>(ceil_div(n, 3));
}

// a + ceil(c(n-b)/d) <= ceil(cn/d), for b, d > 0 and a/b <= c/d.
inline bool ceiling_lemma_holds(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d, std::int64_t n) {
  if (b <= 0 || d <= 0) throw ValidationError("ceiling lemma: b and d must be positive");
  if (Wide(a) * d > Wide(c) * b) throw ValidationError("ceiling lemma: requires a/b <= c/d");
  const Wide lhs = a + ceil_div(Wide(c) * (Wide(n) - b), d);
  const Wide rhs = ceil_div(Wide(c) * n, d);
  return lhs <= rhs;
}

// ---------------------------------------------------------------------------
// Reports

struct BoundRow {
  std::string id;
  std::string name;  // "T_k" for members of the extremal family, else empty
  int n = 0;
  int radius = 0;
  int k = 0;
  int gamma = 0;
  std::int64_t bound = 0;
  bool tight() const { return gamma == bound; }
  bool violation() const { return gamma > bound; }
};

struct BoundSummary {
  std::size_t instances = 0;
  std::size_t violations = 0;
  // max gamma/bound as a fraction, 0/1 when there are no rows
  std::int64_t max_ratio_num = 0;
  std::int64_t max_ratio_den = 1;
  std::vector<std::string> tight;  // names first, then canonical ids
};

struct BoundReport {
  std::vector<BoundRow> rows;
  BoundSummary summary() const;
};

inline BoundSummary BoundReport::summary() const {
  BoundSummary s;
  s.instances = rows.size();
  std::vector<std::string> named, anonymous;
  for (const auto& r : rows) {
    if (r.violation()) ++s.violations;
    if (r.tight()) (r.name.empty() ? anonymous : named).push_back(r.name.empty() ? r.id : r.name);
    if (r.bound > 0 && Wide(r.gamma) * s.max_ratio_den > Wide(s.max_ratio_num) * r.bound) {
      s.max_ratio_num = r.gamma;
      s.max_ratio_den = r.bound;
    }
  }
  s.tight = std::move(named);
  s.tight.insert(s.tight.end(), anonymous.begin(), anonymous.end());
  return s;
}

inline nlohmann::json to_json(const BoundRow& r) {
  nlohmann::json j{{"id", r.id}, {"n", r.n},         {"radius", r.radius}, {"k", r.k},
                   {"gamma", r.gamma}, {"bound", r.bound}, {"tight", r.tight()}};
  if (!r.name.empty()) j["name"] = r.name;
  return j;
}

inline nlohmann::json to_json(const BoundSummary& s) {
  return {{"instances", s.instances},
          {"violations", s.violations},
          {"max_ratio", {s.max_ratio_num, s.max_ratio_den}},
          {"tight", s.tight}};
}

// One JSON object per row, then {"summary": ...}.
inline std::string to_jsonl(const BoundReport& report) {
  std::string out;
  for (const auto& r : report.rows) out += to_json(r).dump() + "\n";
  out += nlohmann::json{{"summary", to_json(report.summary())}}.dump() + "\n";
  return out;
}

inline std::string summary_line(const BoundSummary& s) {
  std::ostringstream os;
  os << s.instances << " instances, " << s.violations << " violations, tight: [";
  for (std::size_t i = 0; i < s.tight.size(); ++i) os << (i ? "; " : "") << s.tight[i];
  os << "]";
  return os.str();
}

inline std::string to_table(const BoundReport& report) {
  std::ostringstream os;
  os << "n\tradius\tk\tgamma\tbound\ttight\tid\n";
  for (const auto& r : report.rows)
    os << r.n << '\t' << r.radius << '\t' << r.k << '\t' << r.gamma << '\t' << r.bound << '\t'
       << (r.tight() ? "yes" : "no") << '\t' << (r.name.empty() ? r.id : r.name + " " + r.id) << '\n';
  os << summary_line(report.summary()) << '\n';
  return os.str();
}

// ---------------------------------------------------------------------------
// Audits

// Every non-isomorphic tree of order <= max_n with radius > k, against
// eq1_bound. Rows are ordered by (n, canonical level sequence).
inline BoundReport audit_tree_bound(int max_n, int k, const SolveOptions& opts = {}) {
  if (k < 3) throw ValidationError("audit_tree_bound requires k >= 3");
  if (max_n > kMaxEnumerationOrder)
    throw GuardExceeded("tree enumeration is limited to n <= " + std::to_string(kMaxEnumerationOrder));
  struct Instance {
    Graph tree;
    LevelSequence key;
    int radius;
  };
  std::vector<Instance> instances;
  for (int n = 2 * k + 2; n <= max_n; ++n)  // radius > k needs diameter >= 2k+1
    for_each_free_tree(n, [&](const Graph& t, const LevelSequence& key) {
      const int r = radius(t);
      if (r > k) instances.push_back({t, key, r});
    });

  std::vector<LevelSequence> extremal_keys;
  std::vector<std::string> extremal_names;
  for (int j = 3; 3 * j + 3 <= max_n; ++j) {
    extremal_keys.push_back(canonical_free_tree(gen_extremal_tk(j)));
    extremal_names.push_back("T_" + std::to_string(j));
  }

  BoundReport report;
  report.rows.resize(instances.size());
  SolveOptions inner = opts;
  inner.workers = 1;
  parallel_for(instances.size(), opts.workers, [&](std::size_t i) {
    const auto& inst = instances[i];
    BoundRow& row = report.rows[i];
    row.id = levels_to_string(inst.key);
    row.n = inst.tree.order();
    row.radius = inst.radius;
    row.k = k;
    row.gamma = gamma_bk(inst.tree, k, inner).value;
    row.bound = eq1_bound(row.n, k);
    for (std::size_t e = 0; e < extremal_keys.size(); ++e)
      if (extremal_keys[e] == inst.key) row.name = extremal_names[e];
  });
  return report;
}

struct NamedGraph {
  std::string id;
  Graph graph;
};

// upper_bound(n, k, rad) for every graph and every k in `ks`.
inline BoundReport audit_graph_bounds(const std::vector<NamedGraph>& graphs, const std::vector<int>& ks,
                                      const SolveOptions& opts = {}) {
  for (int k : ks)
    if (k < 1) throw ValidationError("k must be at least 1");
  BoundReport report;
  report.rows.resize(graphs.size() * ks.size());
  SolveOptions inner = opts;
  inner.workers = 1;
  parallel_for(report.rows.size(), opts.workers, [&](std::size_t i) {
    const auto& [id, g] = graphs[i / ks.size()];
    const int k = ks[i % ks.size()];
    BoundRow& row = report.rows[i];
    row.id = id + " k=" + std::to_string(k);
    row.n = g.order();
    row.radius = radius(g);
    row.k = k;
    row.gamma = gamma_bk(g, k, inner).value;
    row.bound = upper_bound(row.n, k, row.radius);
  });
  return report;
}

struct ChainReport {
  std::vector<int> chain;  // gamma_{B_k} for k = 1..rad
  int domination_number = 0;
  int broadcast_number = 0;  // unlimited power, computed with k = diameter
  bool monotone = true;
  bool endpoints_ok = true;
  bool strict = true;  // all entries distinct
};

inline ChainReport audit_chain(const Graph& g, const SolveOptions& opts = {}) {
  ChainReport r;
  r.chain = gamma_chain(g, opts);
  const auto m = metrics(g);
  r.domination_number = gamma_bk(g, 1, opts).value;
  r.broadcast_number = gamma_bk(g, std::max(1, m.diameter), opts).value;
  for (std::size_t i = 1; i < r.chain.size(); ++i) {
    if (r.chain[i] > r.chain[i - 1]) r.monotone = false;
    if (r.chain[i] == r.chain[i - 1]) r.strict = false;
  }
  r.endpoints_ok = r.chain.front() == r.domination_number && r.chain.back() == r.broadcast_number;
  return r;
}

inline nlohmann::json to_json(const ChainReport& r) {
  return {{"chain", r.chain},
          {"domination_number", r.domination_number},
          {"broadcast_number", r.broadcast_number},
          {"monotone", r.monotone},
          {"endpoints_ok", r.endpoints_ok},
          {"strict", r.strict}};
}

}  // namespace kbroadcast
