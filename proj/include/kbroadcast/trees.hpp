#pragma once

// Tree constructions: twin-free reduction, generator families, and exhaustive
// enumeration of non-isomorphic free trees.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "kbroadcast/errors.hpp"
#include "kbroadcast/graph.hpp"

namespace kbroadcast {

// Uniform integer in [lo, hi] from a 64-bit Mersenne twister, without the
// implementation-defined std::uniform_int_distribution (so that seeded
// output is identical across standard libraries).
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do x = rng();
  while (x >= limit);
  return x % bound;
}

// ---------------------------------------------------------------------------
// Twin-free reduction

// Keeps the smallest-id leaf of every group of leaves sharing a support vertex.
inline Graph twin_free_reduce(const Graph& t) {
  if (!t.is_tree()) throw ValidationError("twin_free_reduce: input is not a tree");
  if (t.order() < 3) throw ValidationError("twin_free_reduce: tree must have at least 3 vertices");
  auto s = structure(t);
  std::vector<char> drop(t.order(), 0);
  for (const auto& cls : s.twin_classes)
    for (std::size_t i = 1; i < cls.size(); ++i) drop[cls[i]] = 1;
  std::vector<int> keep;
  for (int v = 0; v < t.order(); ++v)
    if (!drop[v]) keep.push_back(v);
  return induced_subgraph(t, keep).graph;
}

// ---------------------------------------------------------------------------
// Families

inline Graph path_graph(int n) {
  if (n < 1) throw ValidationError("path needs at least one vertex");
  std::vector<Edge> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Graph(n, std::move(e));
}

// Centre 0, then each leg's vertices outward, legs in the given order.
inline Graph spider(const std::vector<int>& legs) {
  if (legs.empty()) throw ValidationError("spider needs at least one leg");
  std::vector<Edge> e;
  int next = 1;
  for (int len : legs) {
    if (len < 1) throw ValidationError("spider legs must have positive length");
    int prev = 0;
    for (int i = 0; i < len; ++i) {
      e.emplace_back(prev, next);
      prev = next++;
    }
  }
  return Graph(next, std::move(e));
}

// Decodes a Prüfer sequence over 0..n-1 (length n-2) into a labelled tree.
inline Graph tree_from_pruefer(const std::vector<int>& seq) {
  const int n = static_cast<int>(seq.size()) + 2;
  std::vector<int> degree(n, 1);
  for (int x : seq) {
    if (x < 0 || x >= n) throw ValidationError("Prüfer entry out of range");
    ++degree[x];
  }
  std::vector<Edge> e;
  std::set<int> leaves;
  for (int v = 0; v < n; ++v)
    if (degree[v] == 1) leaves.insert(v);
  for (int x : seq) {
    int leaf = *leaves.begin();
    leaves.erase(leaves.begin());
    e.emplace_back(leaf, x);
    if (--degree[x] == 1) leaves.insert(x);
  }
  int a = *leaves.begin(), b = *std::next(leaves.begin());
  e.emplace_back(a, b);
  return Graph(n, std::move(e));
}

// Uniform labelled tree on n vertices.
inline Graph random_tree(int n, std::uint64_t seed) {
  if (n < 1) throw ValidationError("random tree needs at least one vertex");
  if (n == 1) return Graph(1, {});
  if (n == 2) return Graph(2, {Edge(0, 1)});
  std::mt19937_64 rng(seed);
  std::vector<int> seq(n - 2);
  for (int& x : seq) x = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n)));
  return tree_from_pruefer(seq);
}

// Random connected graph: a uniform labelled spanning tree plus `extra`
// distinct non-tree edges chosen uniformly (capped at the complete graph).
inline Graph random_connected_graph(int n, int extra, std::uint64_t seed) {
  Graph tree = random_tree(n, seed);
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<Edge> missing;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (!tree.has_edge(u, v)) missing.emplace_back(u, v);
  std::vector<Edge> edges = tree.edges();
  for (int i = 0; i < extra && !missing.empty(); ++i) {
    auto j = uniform_below(rng, missing.size());
    edges.push_back(missing[j]);
    missing.erase(missing.begin() + static_cast<std::ptrdiff_t>(j));
  }
  return Graph(n, std::move(edges));
}

// T_k: spine u_1..u_{2k+1} (ids 0..2k) with a pendant leaf on u_1, u_{2k+1}
// and every even u_i; leaves numbered 2k+1.. in spine order.
inline Graph gen_extremal_tk(int k) {
  if (k < 3) throw ValidationError("extremal family T_k requires k >= 3");
  const int spine = 2 * k + 1;
  std::vector<Edge> e;
  for (int i = 0; i + 1 < spine; ++i) e.emplace_back(i, i + 1);
  int next = spine;
  for (int i = 1; i <= spine; ++i)
    if (i == 1 || i == spine || i % 2 == 0) e.emplace_back(i - 1, next++);
  return Graph(next, std::move(e));
}

struct PathSpec {
  int n;
};
struct SpiderSpec {
  std::vector<int> legs;
};
struct RandomTreeSpec {
  int n;
  std::uint64_t seed;
};
struct ExtremalSpec {
  int k;
};
using TreeFamilySpec = std::variant<PathSpec, SpiderSpec, RandomTreeSpec, ExtremalSpec>;

inline Graph gen_family(const TreeFamilySpec& spec) {
  struct Visitor {
    Graph operator()(const PathSpec& s) const { return path_graph(s.n); }
    Graph operator()(const SpiderSpec& s) const { return spider(s.legs); }
    Graph operator()(const RandomTreeSpec& s) const { return random_tree(s.n, s.seed); }
    Graph operator()(const ExtremalSpec& s) const { return gen_extremal_tk(s.k); }
  };
  return std::visit(Visitor{}, spec);
}

// ---------------------------------------------------------------------------
// Free-tree enumeration
//
// Rooted trees are generated as canonical level sequences (each subtree's
// sequence no smaller than its right siblings'), one per rooted isomorphism
// class. A free tree is emitted from the rooting at its centre; a bicentral
// tree only from the centre whose canonical sequence is the larger one.

using LevelSequence = std::vector<int>;

inline Graph tree_from_levels(const LevelSequence& levels) {
  const int n = static_cast<int>(levels.size());
  std::vector<Edge> e;
  std::vector<int> last_at_level(n + 1, -1);
  for (int i = 0; i < n; ++i) {
    if (i > 0) e.emplace_back(last_at_level[levels[i] - 1], i);
    last_at_level[levels[i]] = i;
  }
  return Graph(n, std::move(e));
}

// Canonical level sequence of tree `t` rooted at `root`.
inline LevelSequence canonical_levels(const Graph& t, int root) {
  auto rec = [&](auto&& self, int v, int parent, int depth) -> LevelSequence {
    std::vector<LevelSequence> kids;
    for (int w : t.neighbors(v))
      if (w != parent) kids.push_back(self(self, w, v, depth + 1));
    std::sort(kids.begin(), kids.end(), std::greater<>());
    LevelSequence out{depth};
    for (auto& k : kids) out.insert(out.end(), k.begin(), k.end());
    return out;
  };
  return rec(rec, root, -1, 0);
}

// Canonical key of a free tree: the larger centre-rooted level sequence.
inline LevelSequence canonical_free_tree(const Graph& t) {
  auto m = metrics(t);
  LevelSequence best;
  for (int c : m.centers) best = std::max(best, canonical_levels(t, c));
  return best;
}

inline std::string levels_to_string(const LevelSequence& levels) {
  std::string s;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(levels[i]);
  }
  return s;
}

constexpr int kMaxEnumerationOrder = 16;

// Calls visit(tree, canonical_levels) once per isomorphism class of trees of
// order n, in the generation order of the rooted sequences.
template <typename Visit>
void for_each_free_tree(int n, Visit&& visit) {
  if (n < 1 || n > kMaxEnumerationOrder)
    throw ValidationError("free-tree enumeration supports 1 <= n <= " + std::to_string(kMaxEnumerationOrder));
  LevelSequence L(n);
  for (int i = 0; i < n; ++i) L[i] = i;
  for (;;) {
    Graph t = tree_from_levels(L);
    auto m = metrics(t);
    const bool root_is_centre = std::find(m.centers.begin(), m.centers.end(), 0) != m.centers.end();
    if (root_is_centre) {
      bool emit = true;
      if (m.centers.size() == 2) emit = L >= canonical_levels(t, m.centers[1]);
      if (emit) visit(t, static_cast<const LevelSequence&>(L));
    }
    // Successor: p = last position not on level 1; q = its parent; copy the
    // block L[q..p-1] cyclically over L[p..].
    int p = n - 1;
    while (p > 0 && L[p] == 1) --p;
    if (p <= 0) break;
    int q = p - 1;
    while (L[q] != L[p] - 1) --q;
    for (int i = p; i < n; ++i) L[i] = L[i - (p - q)];
  }
}

struct EnumeratedTree {
  Graph graph;
  LevelSequence key;
};

inline std::vector<EnumeratedTree> enumerate_free_trees(int n) {
  std::vector<EnumeratedTree> out;
  for_each_free_tree(n, [&](const Graph& t, const LevelSequence& key) { out.push_back({t, key}); });
  return out;
}

}  // namespace kbroadcast
