#pragma once

// Undirected simple graphs over dense vertex ids 0..n-1, together with the
// metric and structural primitives (BFS distances, eccentricities, bridges,
// leaves/twins) that the rest of the library builds on.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kbroadcast/errors.hpp"

namespace kbroadcast {

struct Edge {
  int u = 0;
  int v = 0;

  Edge() = default;
  // Stored with u < v.
  Edge(int a, int b) : u(std::min(a, b)), v(std::max(a, b)) {}

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// All-pairs hop distances. Unreachable pairs have no distance at all;
// callers get std::nullopt rather than a numeric stand-in.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(int n) : n_(n), d_(static_cast<std::size_t>(n) * n, kUnreachable) {}

  int order() const noexcept { return n_; }

  std::optional<int> at(int u, int v) const {
    int d = d_[idx(u, v)];
    if (d == kUnreachable) return std::nullopt;
    return d;
  }
  bool reachable(int u, int v) const { return d_[idx(u, v)] != kUnreachable; }

  // Distance between two vertices known to share a component.
  int hops(int u, int v) const {
    int d = d_[idx(u, v)];
    if (d == kUnreachable) throw ValidationError("vertices " + std::to_string(u) + " and " +
                                                 std::to_string(v) + " are not connected");
    return d;
  }

 private:
  friend class Graph;
  static constexpr int kUnreachable = -1;
  std::size_t idx(int u, int v) const { return static_cast<std::size_t>(u) * n_ + v; }

  int n_ = 0;
  std::vector<int> d_;
};

class Graph {
 public:
  Graph() : Graph(0, {}) {}

  Graph(int n, std::vector<Edge> edges, std::vector<std::string> labels = {})
      : n_(n), edges_(std::move(edges)), labels_(std::move(labels)), cache_(std::make_shared<Cache>()) {
    if (n < 0) throw ValidationError("negative vertex count");
    if (!labels_.empty() && static_cast<int>(labels_.size()) != n)
      throw ValidationError("label count does not match vertex count");
    adj_.assign(n, {});
    for (const Edge& e : edges_) {
      if (e.u < 0 || e.v >= n)
        throw ValidationError("edge endpoint out of range: " + std::to_string(e.u) + " " +
                              std::to_string(e.v));
      if (e.u == e.v) throw ValidationError("self-loop at vertex " + std::to_string(e.u));
      adj_[e.u].push_back(e.v);
      adj_[e.v].push_back(e.u);
    }
    std::sort(edges_.begin(), edges_.end());
    if (auto it = std::adjacent_find(edges_.begin(), edges_.end()); it != edges_.end())
      throw ValidationError("duplicate edge " + std::to_string(it->u) + " " + std::to_string(it->v));
    for (auto& a : adj_) std::sort(a.begin(), a.end());
  }

  int order() const noexcept { return n_; }
  int size() const noexcept { return static_cast<int>(edges_.size()); }
  // Sorted ascending.
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::span<const int> neighbors(int v) const { return adj_[v]; }
  int degree(int v) const { return static_cast<int>(adj_[v].size()); }
  bool has_edge(int a, int b) const {
    const auto& nb = adj_[a];
    return std::binary_search(nb.begin(), nb.end(), b);
  }
  bool has_labels() const noexcept { return !labels_.empty(); }
  std::string label(int v) const { return labels_.empty() ? std::to_string(v) : labels_[v]; }

  // Computed on first use; shared by copies of this graph.
  const DistanceMatrix& distances() const {
    std::call_once(cache_->once, [this] { cache_->dist = compute_distances(); });
    return cache_->dist;
  }

  bool is_connected() const {
    if (n_ <= 1) return true;
    const auto& d = distances();
    for (int v = 1; v < n_; ++v)
      if (!d.reachable(0, v)) return false;
    return true;
  }
  bool is_tree() const { return n_ >= 1 && size() == n_ - 1 && is_connected(); }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  struct Cache {
    std::once_flag once;
    DistanceMatrix dist;
  };

  DistanceMatrix compute_distances() const {
    DistanceMatrix m(n_);
    std::vector<int> queue(n_);
    for (int s = 0; s < n_; ++s) {
      std::size_t head = 0, tail = 0;
      m.d_[m.idx(s, s)] = 0;
      queue[tail++] = s;
      while (head < tail) {
        int x = queue[head++];
        int dx = m.d_[m.idx(s, x)];
        for (int y : adj_[x]) {
          if (m.d_[m.idx(s, y)] == DistanceMatrix::kUnreachable) {
            m.d_[m.idx(s, y)] = dx + 1;
            queue[tail++] = y;
          }
        }
      }
    }
    return m;
  }

  int n_;
  std::vector<Edge> edges_;
  std::vector<std::string> labels_;
  std::vector<std::vector<int>> adj_;
  std::shared_ptr<Cache> cache_;
};

inline void require_connected(const Graph& g, std::string_view what) {
  if (g.order() == 0) throw ValidationError(std::string(what) + ": empty graph");
  if (!g.is_connected()) throw ValidationError(std::string(what) + ": graph is not connected");
}

inline const DistanceMatrix& all_pairs_distances(const Graph& g) { return g.distances(); }

struct Metrics {
  std::vector<int> eccentricity;
  int radius = 0;
  int diameter = 0;
  std::vector<int> centers;
  std::pair<int, int> antipodal{0, 0};
};

// Ties broken towards the smallest vertex id.
inline Metrics metrics(const Graph& g) {
  require_connected(g, "metrics");
  const auto& d = g.distances();
  const int n = g.order();
  Metrics m;
  m.eccentricity.assign(n, 0);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) m.eccentricity[u] = std::max(m.eccentricity[u], d.hops(u, v));
  m.radius = *std::min_element(m.eccentricity.begin(), m.eccentricity.end());
  m.diameter = *std::max_element(m.eccentricity.begin(), m.eccentricity.end());
  for (int u = 0; u < n; ++u)
    if (m.eccentricity[u] == m.radius) m.centers.push_back(u);
  for (int u = 0; u < n; ++u) {
    if (m.eccentricity[u] != m.diameter) continue;
    for (int v = u; v < n; ++v)
      if (d.hops(u, v) == m.diameter) {
        m.antipodal = {u, v};
        return m;
      }
  }
  return m;
}

inline int radius(const Graph& g) { return metrics(g).radius; }

struct StructureReport {
  std::vector<Edge> cut_edges;  // sorted
  std::vector<int> leaves;
  std::vector<int> support_vertices;
  // One class per support vertex: the leaves hanging from it, ascending.
  std::vector<std::vector<int>> twin_classes;
  bool is_tree = false;
};

inline std::vector<Edge> bridges(const Graph& g) {
  const int n = g.order();
  std::vector<int> disc(n, -1), low(n, 0);
  std::vector<Edge> out;
  int timer = 0;
  // Iterative DFS; frame = (vertex, parent, next neighbour index).
  struct Frame {
    int v, parent;
    std::size_t next;
  };
  for (int root = 0; root < n; ++root) {
    if (disc[root] != -1) continue;
    std::vector<Frame> stack{{root, -1, 0}};
    disc[root] = low[root] = timer++;
    while (!stack.empty()) {
      Frame& f = stack.back();
      auto nb = g.neighbors(f.v);
      if (f.next < nb.size()) {
        int w = nb[f.next++];
        if (w == f.parent) continue;  // simple graph: one parallel edge at most
        if (disc[w] == -1) {
          disc[w] = low[w] = timer++;
          stack.push_back({w, f.v, 0});
        } else {
          low[f.v] = std::min(low[f.v], disc[w]);
        }
      } else {
        int v = f.v, p = f.parent;
        stack.pop_back();
        if (p != -1) {
          low[p] = std::min(low[p], low[v]);
          if (low[v] > disc[p]) out.emplace_back(p, v);
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline StructureReport structure(const Graph& g) {
  require_connected(g, "structure");
  StructureReport r;
  r.cut_edges = bridges(g);
  const int n = g.order();
  std::vector<std::vector<int>> by_support(n);
  for (int v = 0; v < n; ++v) {
    if (g.degree(v) != 1) continue;
    r.leaves.push_back(v);
    by_support[g.neighbors(v)[0]].push_back(v);
  }
  for (int s = 0; s < n; ++s) {
    if (by_support[s].empty()) continue;
    r.support_vertices.push_back(s);
    r.twin_classes.push_back(by_support[s]);
  }
  r.is_tree = g.size() == n - 1;
  return r;
}

struct Subgraph {
  Graph graph;
  std::vector<int> to_old;  // new id -> old id
};

// Induced subgraph on `keep`, relabelled in increasing old-id order.
inline Subgraph induced_subgraph(const Graph& g, std::vector<int> keep) {
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  std::vector<int> to_new(g.order(), -1);
  for (std::size_t i = 0; i < keep.size(); ++i) to_new[keep[i]] = static_cast<int>(i);
  std::vector<Edge> edges;
  for (const Edge& e : g.edges())
    if (to_new[e.u] >= 0 && to_new[e.v] >= 0) edges.emplace_back(to_new[e.u], to_new[e.v]);
  std::vector<std::string> labels;
  if (g.has_labels())
    for (int v : keep) labels.push_back(g.label(v));
  return {Graph(static_cast<int>(keep.size()), std::move(edges), std::move(labels)), std::move(keep)};
}

struct ComponentPair {
  Subgraph first;   // component containing the smaller endpoint of the edge
  Subgraph second;  // component containing the larger endpoint
};

inline ComponentPair remove_edge_components(const Graph& g, Edge e) {
  require_connected(g, "remove_edge_components");
  if (e.u < 0 || e.v >= g.order() || !g.has_edge(e.u, e.v))
    throw ValidationError("edge is not in the graph");
  auto cuts = bridges(g);
  if (!std::binary_search(cuts.begin(), cuts.end(), e))
    throw ValidationError("edge " + std::to_string(e.u) + " " + std::to_string(e.v) +
                          " is not a cut-edge");
  std::vector<char> seen(g.order(), 0);
  std::vector<int> side{e.u};
  seen[e.u] = 1;
  for (std::size_t i = 0; i < side.size(); ++i) {
    int x = side[i];
    for (int y : g.neighbors(x)) {
      if (seen[y] || (x == e.u && y == e.v)) continue;
      seen[y] = 1;
      side.push_back(y);
    }
  }
  std::vector<int> other;
  for (int v = 0; v < g.order(); ++v)
    if (!seen[v]) other.push_back(v);
  return {induced_subgraph(g, side), induced_subgraph(g, other)};
}

// ---------------------------------------------------------------------------
// Graph file format: "n m" header, then m lines "u v"; '#' starts a comment.

inline Graph from_edge_list(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  long long n = 0, m = 0;
  std::vector<Edge> edges;
  std::set<Edge> seen;
  std::size_t header_line = 0;

  auto strip = [](std::string& s) {
    if (auto pos = s.find('#'); pos != std::string::npos) s.erase(pos);
  };

  while (std::getline(in, line)) {
    ++line_no;
    strip(line);
    std::istringstream ls(line);
    std::vector<long long> nums;
    std::string tok;
    while (ls >> tok) {
      try {
        std::size_t used = 0;
        long long x = std::stoll(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        nums.push_back(x);
      } catch (const std::exception&) {
        throw ParseError(line_no, "expected an integer, got '" + tok + "'");
      }
    }
    if (nums.empty()) continue;
    if (nums.size() != 2) throw ParseError(line_no, "expected exactly two integers");
    if (!have_header) {
      n = nums[0];
      m = nums[1];
      if (n < 0 || m < 0) throw ParseError(line_no, "negative count in header");
      if (n > 1'000'000) throw ParseError(line_no, "vertex count too large");
      have_header = true;
      header_line = line_no;
      continue;
    }
    if (static_cast<long long>(edges.size()) == m)
      throw ParseError(line_no, "more edge lines than the header's " + std::to_string(m));
    long long a = nums[0], b = nums[1];
    if (a < 0 || b < 0 || a >= n || b >= n)
      throw ParseError(line_no, "endpoint out of range 0.." + std::to_string(n - 1));
    if (a == b) throw ParseError(line_no, "self-loop at vertex " + std::to_string(a));
    Edge e(static_cast<int>(a), static_cast<int>(b));
    if (!seen.insert(e).second)
      throw ParseError(line_no, "duplicate edge " + std::to_string(e.u) + " " + std::to_string(e.v));
    edges.push_back(e);
  }
  if (!have_header) throw ParseError(line_no, "missing 'n m' header");
  if (static_cast<long long>(edges.size()) != m)
    throw ParseError(header_line, "header declares " + std::to_string(m) + " edges, found " +
                                      std::to_string(edges.size()));
  return Graph(static_cast<int>(n), std::move(edges));
}

inline std::string to_edge_list(const Graph& g) {
  std::ostringstream out;
  out << g.order() << ' ' << g.size() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
  return out.str();
}

}  // namespace kbroadcast
