#pragma once

// Spanning trees and dominating k-broadcasts: exhaustive enumeration, the
// minimum of gamma_{B_k} over all spanning trees, and extraction of a
// spanning tree on which a given optimal broadcast still dominates.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "kbroadcast/broadcast.hpp"
#include "kbroadcast/errors.hpp"
#include "kbroadcast/graph.hpp"
#include "kbroadcast/parallel.hpp"
#include "kbroadcast/solver.hpp"

namespace kbroadcast {

// Number of spanning trees by the matrix-tree theorem (fraction-free
// Bareiss elimination). nullopt when the count overflows 63 bits.
inline std::optional<std::uint64_t> spanning_tree_count(const Graph& g) {
  const int n = g.order();
  if (n == 0) return 0;
  if (n == 1) return 1;
  const int m = n - 1;
  std::vector<std::vector<__int128>> a(m, std::vector<__int128>(m, 0));
  for (int v = 1; v < n; ++v) a[v - 1][v - 1] = g.degree(v);
  for (const Edge& e : g.edges())
    if (e.u > 0) a[e.u - 1][e.v - 1] = a[e.v - 1][e.u - 1] = -1;
  __int128 prev = 1;
  bool negate = false;
  for (int k = 0; k < m; ++k) {
    if (a[k][k] == 0) {
      int swap_row = -1;
      for (int r = k + 1; r < m && swap_row < 0; ++r)
        if (a[r][k] != 0) swap_row = r;
      if (swap_row < 0) return 0;
      std::swap(a[k], a[swap_row]);
      negate = !negate;
    }
    for (int i = k + 1; i < m; ++i)
      for (int j = k + 1; j < m; ++j) {
        __int128 x, y;
        if (__builtin_mul_overflow(a[i][j], a[k][k], &x) || __builtin_mul_overflow(a[i][k], a[k][j], &y) ||
            __builtin_sub_overflow(x, y, &x))
          return std::nullopt;
        a[i][j] = x / prev;
      }
    prev = a[k][k];
  }
  __int128 det = negate ? -a[m - 1][m - 1] : a[m - 1][m - 1];
  if (det < 0 || det > static_cast<__int128>(INT64_MAX)) return std::nullopt;
  return static_cast<std::uint64_t>(det);
}

namespace detail {

struct DisjointSets {
  std::vector<int> parent;
  explicit DisjointSets(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a), b = find(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  }
};

}  // namespace detail

inline constexpr std::uint64_t kDefaultSpanningTreeGuard = 1'000'000;

// Visits every spanning tree exactly once by contraction/deletion: the first
// undecided edge joining two contracted classes is either contracted into
// the tree or deleted (only while the rest stays connected).
template <typename Visit>
void for_each_spanning_tree(const Graph& g, Visit&& visit, std::uint64_t guard = kDefaultSpanningTreeGuard) {
  require_connected(g, "spanning tree enumeration");
  auto count = spanning_tree_count(g);
  if (!count || (guard && *count > guard))
    throw GuardExceeded("graph has " + (count ? std::to_string(*count) : std::string("more than 2^63")) +
                        " spanning trees, guard is " + std::to_string(guard));
  const int n = g.order();
  const auto& edges = g.edges();
  const int m = static_cast<int>(edges.size());
  enum : char { undecided, in_tree, deleted };
  std::vector<char> state(m, undecided);
  int chosen = 0;

  auto connected_without_deleted = [&] {
    detail::DisjointSets ds(n);
    int parts = n;
    for (int e = 0; e < m; ++e)
      if (state[e] != deleted && ds.unite(edges[e].u, edges[e].v)) --parts;
    return parts == 1;
  };

  auto rec = [&](auto&& self) -> void {
    if (chosen == n - 1) {
      std::vector<Edge> tree;
      for (int e = 0; e < m; ++e)
        if (state[e] == in_tree) tree.push_back(edges[e]);
      visit(Graph(n, std::move(tree)));
      return;
    }
    detail::DisjointSets ds(n);
    for (int e = 0; e < m; ++e)
      if (state[e] == in_tree) ds.unite(edges[e].u, edges[e].v);
    int pick = -1;
    for (int e = 0; e < m && pick < 0; ++e)
      if (state[e] == undecided && ds.find(edges[e].u) != ds.find(edges[e].v)) pick = e;
    if (pick < 0) return;

    state[pick] = in_tree;
    ++chosen;
    self(self);
    --chosen;

    state[pick] = deleted;
    if (connected_without_deleted()) self(self);
    state[pick] = undecided;
  };
  rec(rec);
}

inline std::vector<Graph> enumerate_spanning_trees(const Graph& g, std::uint64_t guard = kDefaultSpanningTreeGuard) {
  std::vector<Graph> out;
  for_each_spanning_tree(g, [&](Graph t) { out.push_back(std::move(t)); }, guard);
  return out;
}

struct SpanningMinimum {
  int value = 0;
  Graph tree;  // first tree in enumeration order attaining the value (single worker)
  std::uint64_t trees = 0;
};

// min over spanning trees T of gamma_{B_k}(T). Trees are solved in batches on
// `opts.workers` threads; a tree is only searched for a broadcast strictly
// cheaper than the best found so far.
inline SpanningMinimum min_over_spanning_trees(const Graph& g, int k, const SolveOptions& opts = {},
                                               std::uint64_t guard = kDefaultSpanningTreeGuard) {
  if (k < 1) throw ValidationError("k must be at least 1");
  SpanningMinimum best;
  best.value = std::numeric_limits<int>::max();
  std::atomic<int> shared_best{best.value};
  std::mutex mutex;
  std::vector<Graph> batch;
  std::uint64_t base = 0;
  std::uint64_t best_index = UINT64_MAX;
  SolveOptions inner = opts;
  inner.workers = 1;

  auto flush = [&] {
    parallel_for(batch.size(), opts.workers, [&](std::size_t i) {
      auto r = gamma_bk_below(batch[i], k, shared_best.load(), inner);
      if (!r) return;
      std::lock_guard lock(mutex);
      const std::uint64_t index = base + i;
      if (r->value < best.value || (r->value == best.value && index < best_index)) {
        best.value = r->value;
        best.tree = batch[i];
        best_index = index;
        shared_best.store(r->value);
      }
    });
    base += batch.size();
    batch.clear();
  };
  for_each_spanning_tree(
      g,
      [&](Graph t) {
        ++best.trees;
        batch.push_back(std::move(t));
        if (batch.size() >= 256) flush();
      },
      guard);
  flush();
  return best;
}

// ---------------------------------------------------------------------------
// Extraction of a broadcast-preserving spanning tree.

struct BallTree {
  int root = 0;
  int power = 0;
  std::vector<int> parent;  // -1: not a member; the root is its own parent
  std::vector<int> depth;   // distance to the root inside the tree

  bool contains(int v) const { return parent[v] != -1; }
  std::vector<int> members() const {
    std::vector<int> out;
    for (int v = 0; v < static_cast<int>(parent.size()); ++v)
      if (contains(v)) out.push_back(v);
    return out;
  }
};

struct ExtractionResult {
  Graph tree;                   // spanning tree H of the input graph
  std::vector<BallTree> parts;  // pruned ball trees, broadcasters by (power, id)
};

namespace detail {

// Shortest-path tree of B(root, power): each vertex hangs from its
// smallest-id neighbour one step closer to the root.
inline BallTree build_ball_tree(const Graph& g, int root, int power) {
  const auto& d = g.distances();
  const int n = g.order();
  BallTree t{root, power, std::vector<int>(n, -1), std::vector<int>(n, -1)};
  for (int v = 0; v < n; ++v) {
    const int dv = d.hops(root, v);
    if (dv > power) continue;
    t.depth[v] = dv;
    if (v == root) {
      t.parent[v] = v;
      continue;
    }
    for (int w : g.neighbors(v))
      if (d.hops(root, w) == dv - 1) {
        t.parent[v] = w;
        break;
      }
  }
  return t;
}

inline bool in_subtree(const BallTree& t, int x, int y) {
  if (!t.contains(y)) return false;
  while (y != x) {
    if (y == t.root) return false;
    y = t.parent[y];
  }
  return true;
}

inline std::vector<int> subtree(const BallTree& t, int x) {
  std::vector<int> out;
  for (int y = 0; y < static_cast<int>(t.parent.size()); ++y)
    if (in_subtree(t, x, y)) out.push_back(y);
  return out;
}

// Distance from x to the deepest vertex below it.
inline int subtree_height(const BallTree& t, int x) {
  int h = 0;
  for (int y : subtree(t, x)) h = std::max(h, t.depth[y] - t.depth[x]);
  return h;
}

inline void delete_subtree(BallTree& t, int x) {
  for (int y : subtree(t, x)) t.parent[y] = t.depth[y] = -1;
}

}  // namespace detail

// Builds a spanning tree H of g on which the optimal broadcast f still
// dominates. Ball trees around the broadcasters (ascending power, then id)
// are pruned until they are vertex-disjoint:
//   1. a tree containing another broadcaster loses that broadcaster's subtree;
//   2. tree i, against earlier trees r, level by level from its root: at a
//      shared vertex x the tree whose subtree below x is shallower gives it up
//      (ties go to tree i).
// The pruned trees are then joined by the smallest-id connecting edges.
// Situations the pruning rules exclude for optimal f raise NotOptimalError.
inline ExtractionResult extract_broadcast_tree(const Graph& g, const BroadcastFunction& f, int k,
                                               const SolveOptions& opts = {}) {
  if (k < 3) throw ValidationError("extract_broadcast_tree requires k >= 3");
  require_connected(g, "extract_broadcast_tree");
  if (f.cap() > k) throw ValidationError("broadcast cap exceeds k");
  if (!is_dominating(g, f)) throw ValidationError("extract_broadcast_tree: broadcast is not dominating");
  const int optimum = gamma_bk(g, k, opts).value;
  if (f.cost() != optimum)
    throw NotOptimalError("extract_broadcast_tree: cost " + std::to_string(f.cost()) + " but optimum is " +
                          std::to_string(optimum));
  const int n = g.order();

  std::vector<int> order = f.broadcasters();
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return f[a] < f[b]; });
  std::vector<BallTree> trees;
  for (int v : order) trees.push_back(detail::build_ball_tree(g, v, f[v]));
  const int m = static_cast<int>(trees.size());

  // 1. Foreign roots.
  for (int l = 0; l < m; ++l)
    for (int i = 0; i < m; ++i) {
      if (i == l || !trees[l].contains(trees[i].root)) continue;
      if (i < l && trees[i].power <= detail::subtree_height(trees[l], trees[i].root))
        throw NotOptimalError("broadcaster " + std::to_string(trees[i].root) + " is redundant: its ball lies inside that of " +
                              std::to_string(trees[l].root));
      detail::delete_subtree(trees[l], trees[i].root);
    }

  // 2. Level-by-level overlap resolution.
  for (int i = 1; i < m; ++i) {
    for (int level = 1; level <= trees[i].power; ++level) {
      for (int x = 0; x < n; ++x) {
        if (!trees[i].contains(x) || trees[i].depth[x] != level) continue;
        for (int r = 0; r < i; ++r) {
          if (!trees[r].contains(x)) continue;
          const int dr = detail::subtree_height(trees[r], x);
          const int di = detail::subtree_height(trees[i], x);
          if (dr <= di)
            detail::delete_subtree(trees[r], x);
          else
            detail::delete_subtree(trees[i], x);
          break;  // earlier trees are pairwise disjoint
        }
      }
    }
  }

  // Partition check.
  std::vector<int> owner(n, -1);
  for (int i = 0; i < m; ++i)
    for (int v : trees[i].members()) {
      if (owner[v] != -1) throw Error("extraction left vertex " + std::to_string(v) + " in two trees");
      owner[v] = i;
    }
  for (int v = 0; v < n; ++v)
    if (owner[v] == -1) throw Error("extraction left vertex " + std::to_string(v) + " in no tree");

  std::vector<Edge> h;
  detail::DisjointSets ds(n);
  for (const auto& t : trees)
    for (int v : t.members())
      if (v != t.root) {
        h.emplace_back(v, t.parent[v]);
        ds.unite(v, t.parent[v]);
      }
  for (const Edge& e : g.edges())
    if (ds.unite(e.u, e.v)) h.push_back(e);
  return {Graph(n, std::move(h)), std::move(trees)};
}

}  // namespace kbroadcast
