#pragma once

// Reference implementations used only by tests. Each one shares no code with
// the library beyond the Graph container.

#include <algorithm>
#include <array>
#include <cstdlib>
#include <cstdint>
#include <functional>
#include <limits>
#include <set>
#include <string>
#include <vector>

#include "kbroadcast/graph.hpp"

namespace oracle {

constexpr int kInf = std::numeric_limits<int>::max() / 4;

inline std::vector<std::vector<int>> floyd_warshall(const kbroadcast::Graph& g) {
  const int n = g.order();
  std::vector<std::vector<int>> d(n, std::vector<int>(n, kInf));
  for (int v = 0; v < n; ++v) d[v][v] = 0;
  for (const auto& e : g.edges()) d[e.u][e.v] = d[e.v][e.u] = 1;
  for (int m = 0; m < n; ++m)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) d[a][b] = std::min(d[a][b], d[a][m] + d[m][b]);
  return d;
}

inline bool dominates(const std::vector<std::vector<int>>& d, const std::vector<int>& f) {
  const int n = static_cast<int>(f.size());
  for (int u = 0; u < n; ++u) {
    bool hit = false;
    for (int v = 0; v < n && !hit; ++v) hit = f[v] > 0 && d[u][v] <= f[v];
    if (!hit) return false;
  }
  return true;
}

// Minimum cost over every function V -> {0..k}. Exponential: (k+1)^n.
inline int naive_gamma_bk(const kbroadcast::Graph& g, int k) {
  const int n = g.order();
  const auto d = floyd_warshall(g);
  const int cap = std::min(k, std::max(1, n - 1));
  std::vector<int> f(n, 0);
  int best = n;  // power 1 everywhere
  auto rec = [&](auto&& self, int v, int cost) -> void {
    if (cost >= best) return;
    if (v == n) {
      if (dominates(d, f)) best = cost;
      return;
    }
    for (int p = 0; p <= cap; ++p) {
      f[v] = p;
      self(self, v + 1, cost + p);
    }
    f[v] = 0;
  };
  rec(rec, 0, 0);
  return best;
}

// --- Free trees via Prüfer sequences and AHU canonical strings -------------

inline std::vector<std::vector<int>> pruefer_decode(const std::vector<int>& seq, int n) {
  std::vector<std::vector<int>> adj(n);
  std::vector<int> degree(n, 1);
  for (int x : seq) ++degree[x];
  int ptr = 0;
  while (degree[ptr] != 1) ++ptr;
  int leaf = ptr;
  for (int x : seq) {
    adj[leaf].push_back(x);
    adj[x].push_back(leaf);
    if (--degree[x] == 1 && x < ptr) {
      leaf = x;
    } else {
      ++ptr;
      while (degree[ptr] != 1) ++ptr;
      leaf = ptr;
    }
  }
  adj[leaf].push_back(n - 1);
  adj[n - 1].push_back(leaf);
  return adj;
}

inline std::string ahu(const std::vector<std::vector<int>>& adj, int v, int parent) {
  std::vector<std::string> kids;
  for (int w : adj[v])
    if (w != parent) kids.push_back(ahu(adj, w, v));
  std::sort(kids.begin(), kids.end());
  std::string s = "(";
  for (auto& k : kids) s += k;
  return s + ")";
}

// Canonical string of a free tree: minimum AHU string over its centres.
inline std::string free_tree_code(const std::vector<std::vector<int>>& adj) {
  const int n = static_cast<int>(adj.size());
  if (n == 1) return "()";
  std::vector<int> degree(n), layer;
  for (int v = 0; v < n; ++v) {
    degree[v] = static_cast<int>(adj[v].size());
    if (degree[v] <= 1) layer.push_back(v);
  }
  int remaining = n;
  while (remaining > 2) {
    remaining -= static_cast<int>(layer.size());
    std::vector<int> next;
    for (int v : layer)
      for (int w : adj[v])
        if (--degree[w] == 1) next.push_back(w);
    layer = next;
  }
  std::string best;
  for (int c : layer) {
    auto s = ahu(adj, c, -1);
    if (best.empty() || s < best) best = s;
  }
  return best;
}

inline std::string free_tree_code(const kbroadcast::Graph& t) {
  std::vector<std::vector<int>> adj(t.order());
  for (const auto& e : t.edges()) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  return free_tree_code(adj);
}

// Allocation-free variant for the exhaustive count: AHU codes packed as bits
// ('(' = 1, ')' = 0), at most 2n <= 32 bits for n <= 16.
struct PackedTree {
  int n = 0;
  int degree[16] = {};
  int adj[16][16] = {};
};

inline std::uint32_t packed_ahu(const PackedTree& t, int v, int parent, int& length) {
  std::uint32_t kids[16];
  int lens[16];
  int count = 0;
  for (int i = 0; i < t.degree[v]; ++i) {
    const int w = t.adj[v][i];
    if (w == parent) continue;
    kids[count] = packed_ahu(t, w, v, lens[count]);
    ++count;
  }
  // Order children by their left-justified bit strings.
  int order[16];
  for (int i = 0; i < count; ++i) order[i] = i;
  std::sort(order, order + count, [&](int a, int b) {
    return (std::uint64_t(kids[a]) << (40 - lens[a])) < (std::uint64_t(kids[b]) << (40 - lens[b]));
  });
  std::uint32_t code = 1;
  length = 1;
  for (int i = 0; i < count; ++i) {
    code = (code << lens[order[i]]) | kids[order[i]];
    length += lens[order[i]];
  }
  code <<= 1;
  ++length;
  return code;
}

inline std::uint64_t packed_free_tree_code(const PackedTree& t) {
  if (t.n == 1) return 2;
  int degree[16], layer[16], next[16];
  int layer_size = 0;
  for (int v = 0; v < t.n; ++v) {
    degree[v] = t.degree[v];
    if (degree[v] <= 1) layer[layer_size++] = v;
  }
  int remaining = t.n;
  while (remaining > 2) {
    remaining -= layer_size;
    int next_size = 0;
    for (int i = 0; i < layer_size; ++i)
      for (int j = 0; j < t.degree[layer[i]]; ++j)
        if (--degree[t.adj[layer[i]][j]] == 1) next[next_size++] = t.adj[layer[i]][j];
    std::copy(next, next + next_size, layer);
    layer_size = next_size;
  }
  std::uint64_t best = ~0ULL;
  for (int i = 0; i < layer_size; ++i) {
    int len = 0;
    best = std::min<std::uint64_t>(best, packed_ahu(t, layer[i], -1, len));
  }
  return best;
}

// Number of isomorphism classes among all n^(n-2) labelled trees.
inline std::size_t pruefer_free_tree_count(int n) {
  if (n <= 2) return 1;
  std::set<std::uint64_t> codes;
  std::vector<int> seq(n - 2, 0);
  PackedTree t;
  t.n = n;
  int count[16];
  for (;;) {
    // Linear-time decoding.
    std::fill(t.degree, t.degree + n, 0);
    std::fill(count, count + n, 1);
    for (int x : seq) ++count[x];
    auto link = [&](int a, int b) {
      t.adj[a][t.degree[a]++] = b;
      t.adj[b][t.degree[b]++] = a;
    };
    int ptr = 0;
    while (count[ptr] != 1) ++ptr;
    int leaf = ptr;
    for (int x : seq) {
      link(leaf, x);
      if (--count[x] == 1 && x < ptr) {
        leaf = x;
      } else {
        ++ptr;
        while (count[ptr] != 1) ++ptr;
        leaf = ptr;
      }
    }
    link(leaf, n - 1);
    codes.insert(packed_free_tree_code(t));

    int i = n - 3;
    while (i >= 0 && seq[i] == n - 1) seq[i--] = 0;
    if (i < 0) break;
    ++seq[i];
  }
  return codes.size();
}

// --- CNF ---------------------------------------------------------------------

inline bool brute_sat(int vars, const std::vector<std::array<int, 3>>& clauses) {
  for (unsigned mask = 0; mask < (1U << vars); ++mask) {
    bool all = true;
    for (const auto& c : clauses) {
      bool any = false;
      for (int lit : c) {
        const bool value = (mask >> (std::abs(lit) - 1)) & 1U;
        any = any || (lit > 0 ? value : !value);
      }
      all = all && any;
    }
    if (all) return true;
  }
  return false;
}

}  // namespace oracle
