#pragma once

// Exact computation of the dominating k-broadcast number.
//
// Two independent routes are provided:
//   * gamma_bk_oracle: exhaustive search by increasing cost, enumerating
//     every (support set, power vector) of that cost. Slow, obviously right.
//   * gamma_bk: branch-and-bound set cover over balls B(v, p), 1 <= p <= k.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <limits>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "kbroadcast/broadcast.hpp"
#include "kbroadcast/errors.hpp"
#include "kbroadcast/graph.hpp"
#include "kbroadcast/parallel.hpp"
#include "kbroadcast/vertex_set.hpp"

namespace kbroadcast {

enum class Method { branch_and_bound, oracle };

inline const char* to_string(Method m) { return m == Method::oracle ? "oracle" : "bnb"; }

struct SolveOptions {
  std::uint64_t max_nodes = 0;      // 0: unlimited
  double time_limit_seconds = 0.0;  // 0: unlimited
  int workers = 1;
  int oracle_max_order = 24;
};

struct SolveStats {
  std::uint64_t nodes = 0;
  Method method = Method::branch_and_bound;
  double elapsed_seconds = 0.0;
};

struct SolveResult {
  int value = 0;
  BroadcastFunction witness;
  SolveStats stats;
};

namespace detail {

class Deadline {
 public:
  explicit Deadline(double seconds)
      : start_(std::chrono::steady_clock::now()), limit_(seconds) {}
  bool expired() const { return limit_ > 0 && elapsed() > limit_; }
  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
  double limit_;
};

// Ball B(v, p) as a vertex set.
inline VertexSet ball(const DistanceMatrix& d, int n, int v, int p) {
  VertexSet s(n);
  for (int u = 0; u < n; ++u)
    if (d.hops(u, v) <= p) s.insert(u);
  return s;
}

inline std::vector<int> eccentricities(const Graph& g) {
  const auto& d = g.distances();
  std::vector<int> ecc(g.order(), 0);
  for (int u = 0; u < g.order(); ++u)
    for (int v = 0; v < g.order(); ++v) ecc[u] = std::max(ecc[u], d.hops(u, v));
  return ecc;
}

class BranchAndBound {
 public:
  BranchAndBound(const Graph& g, int k, const SolveOptions& opts)
      : g_(g), k_(k), n_(g.order()), opts_(opts), deadline_(opts.time_limit_seconds) {
    const auto& d = g.distances();
    ecc_ = eccentricities(g);
    const int rad = *std::min_element(ecc_.begin(), ecc_.end());
    // Powers beyond the radius never help: one centre at power rad covers all.
    cap_ = std::max(1, std::min(k, rad));

    for (int v = 0; v < n_; ++v) {
      const int top = std::min(cap_, std::max(1, ecc_[v]));
      for (int p = 1; p <= top; ++p) all_.push_back({v, p, ball(d, n_, v, p), 0});
    }
    for (auto& c : all_) c.size = static_cast<int>(c.cover.count());

    // Drop balls contained in a ball of no greater power.
    for (std::size_t i = 0; i < all_.size(); ++i) {
      bool dominated = false;
      for (std::size_t j = 0; j < all_.size() && !dominated; ++j) {
        if (i == j || all_[j].power > all_[i].power) continue;
        if (!all_[i].cover.subset_of(all_[j].cover)) continue;
        dominated = all_[j].power < all_[i].power || all_[j].size > all_[i].size || j < i;
      }
      if (!dominated) cands_.push_back(all_[i]);
    }

    cand_of_.assign(n_, {});
    for (std::size_t c = 0; c < cands_.size(); ++c)
      cands_[c].cover.for_each([&](std::size_t u) { cand_of_[u].push_back(static_cast<int>(c)); });
    for (auto& list : cand_of_)
      std::sort(list.begin(), list.end(), [&](int a, int b) {
        const auto &x = cands_[a], &y = cands_[b];
        long lhs = static_cast<long>(x.size) * y.power, rhs = static_cast<long>(y.size) * x.power;
        if (lhs != rhs) return lhs > rhs;
        if (x.power != y.power) return x.power < y.power;
        return x.vertex < y.vertex;
      });

    // near_[u][r] = B(u, r) for r = 0..ecc(u); used for distance-to-set queries.
    near_.resize(n_);
    for (int u = 0; u < n_; ++u)
      for (int r = 0; r <= ecc_[u]; ++r) near_[u].push_back(ball(d, n_, u, r));

    // Static order for the bound computations: fewest candidate balls first.
    order_.resize(n_);
    for (int u = 0; u < n_; ++u) order_[u] = u;
    std::stable_sort(order_.begin(), order_.end(),
                     [&](int a, int b) { return cand_of_[a].size() < cand_of_[b].size(); });
  }

  // Optimal solution of cost < cutoff, if any.
  std::optional<SolveResult> run(std::optional<int> cutoff) {
    auto [greedy_cost, greedy_values] = greedy();
    int start = greedy_cost;
    if (cutoff && *cutoff <= greedy_cost) {
      start = *cutoff;
    } else {
      best_values_ = greedy_values;
      have_solution_ = true;
    }
    best_.store(start);

    VertexSet covered(n_);
    std::vector<int> chosen;
    nodes_.fetch_add(1);
    const VertexSet uncovered = VertexSet::full(n_);
    if (lower_bound(uncovered) < start) {
      const int u = branch_vertex(covered, uncovered);
      const auto& options = cand_of_[u];
      parallel_for(options.size(), opts_.workers, [&](std::size_t i) {
        const auto& c = cands_[options[i]];
        if (c.power >= best_.load()) return;
        std::vector<int> picked{options[i]};
        search(covered | c.cover, c.power, picked);
      });
    }
    if (!have_solution_) return std::nullopt;

    SolveResult r;
    r.witness = BroadcastFunction(k_, best_values_);
    r.value = r.witness.cost();
    r.stats = {nodes_.load(), Method::branch_and_bound, deadline_.elapsed()};
    return r;
  }

 private:
  struct Candidate {
    int vertex;
    int power;
    VertexSet cover;
    int size;
  };

  void check_guards() {
    const std::uint64_t nodes = nodes_.fetch_add(1, std::memory_order_relaxed) + 1;
    if (opts_.max_nodes && nodes > opts_.max_nodes)
      throw GuardExceeded("branch-and-bound node budget exhausted", nodes, best_so_far());
    if ((nodes & 0xfff) == 0 && deadline_.expired())
      throw GuardExceeded("branch-and-bound time budget exhausted", nodes, best_so_far());
  }

  int best_so_far() const { return have_solution_ ? best_.load() : -1; }

  std::pair<int, std::vector<int>> greedy() const {
    VertexSet uncovered = VertexSet::full(n_);
    std::vector<int> values(n_, 0);
    while (!uncovered.empty()) {
      const Candidate* pick = nullptr;
      std::size_t pick_gain = 0;
      for (const auto& c : all_) {
        std::size_t gain = c.cover.count_and(uncovered);
        if (gain == 0) continue;
        if (!pick) {
          pick = &c, pick_gain = gain;
          continue;
        }
        // gain/power, then smaller power, then smaller vertex (scan order).
        auto lhs = gain * static_cast<std::size_t>(pick->power);
        auto rhs = pick_gain * static_cast<std::size_t>(c.power);
        if (lhs > rhs || (lhs == rhs && c.power < pick->power)) pick = &c, pick_gain = gain;
      }
      values[pick->vertex] = std::max(values[pick->vertex], pick->power);
      uncovered -= pick->cover;
    }
    int cost = 0;
    for (int x : values) cost += x;
    return {cost, values};
  }

  // Admissible bound on the cost still needed to cover `uncovered`:
  // the larger of a 2k-separated packing and a greedy feasible dual of the
  // covering LP (integral, since every slack starts at an integer power).
  int lower_bound(const VertexSet& uncovered) const {
    int packing = 0;
    VertexSet packed(n_);
    const int sep = 2 * cap_;
    std::vector<int> slack(cands_.size());
    for (std::size_t c = 0; c < cands_.size(); ++c) slack[c] = cands_[c].power;
    int dual = 0;
    for (int u : order_) {
      if (!uncovered.contains(u)) continue;
      const auto& reach = near_[u][std::min(sep, ecc_[u])];
      if (!reach.intersects(packed)) {
        packed.insert(u);
        ++packing;
      }
      int y = std::numeric_limits<int>::max();
      for (int c : cand_of_[u]) y = std::min(y, slack[c]);
      if (y > 0) {
        dual += y;
        for (int c : cand_of_[u]) slack[c] -= y;
      }
    }
    return std::max(packing, dual);
  }

  // Uncovered vertex farthest from the covered set; ties: fewest candidate
  // balls, then smallest id.
  int branch_vertex(const VertexSet& covered, const VertexSet& uncovered) const {
    int best = -1, best_dist = -1;
    std::size_t best_opts = 0;
    const bool none_covered = covered.empty();
    uncovered.for_each([&](std::size_t su) {
      const int u = static_cast<int>(su);
      int dist = std::numeric_limits<int>::max();
      if (!none_covered) {
        for (int r = 1; r <= ecc_[u]; ++r)
          if (near_[u][r].intersects(covered)) {
            dist = r;
            break;
          }
      }
      const std::size_t opts = cand_of_[u].size();
      if (dist > best_dist || (dist == best_dist && opts < best_opts)) {
        best = u, best_dist = dist, best_opts = opts;
      }
    });
    return best;
  }

  void record(const std::vector<int>& picked) {
    std::vector<int> values(n_, 0);
    for (int c : picked) values[cands_[c].vertex] = std::max(values[cands_[c].vertex], cands_[c].power);
    int cost = 0;
    for (int x : values) cost += x;
    std::lock_guard lock(mutex_);
    if (cost < best_.load()) {
      best_.store(cost);
      best_values_ = std::move(values);
      have_solution_ = true;
    }
  }

  void search(const VertexSet& covered, int cost, std::vector<int>& picked) {
    check_guards();
    const VertexSet uncovered = VertexSet::full(n_) - covered;
    if (uncovered.empty()) {
      record(picked);
      return;
    }
    if (cost + lower_bound(uncovered) >= best_.load()) return;
    const int u = branch_vertex(covered, uncovered);
    for (int ci : cand_of_[u]) {
      const auto& c = cands_[ci];
      if (cost + c.power >= best_.load()) continue;
      picked.push_back(ci);
      search(covered | c.cover, cost + c.power, picked);
      picked.pop_back();
    }
  }

  const Graph& g_;
  int k_;
  int n_;
  SolveOptions opts_;
  Deadline deadline_;
  int cap_ = 1;
  std::vector<int> ecc_;
  std::vector<Candidate> all_;
  std::vector<Candidate> cands_;
  std::vector<std::vector<int>> cand_of_;
  std::vector<std::vector<VertexSet>> near_;
  std::vector<int> order_;

  std::atomic<int> best_{0};
  std::atomic<std::uint64_t> nodes_{0};
  std::mutex mutex_;
  std::vector<int> best_values_;
  std::atomic<bool> have_solution_{false};
};

}  // namespace detail

// Optimal dominating k-broadcast with cost strictly below `cutoff`, or
// nullopt if none exists.
inline std::optional<SolveResult> gamma_bk_below(const Graph& g, int k, int cutoff, const SolveOptions& opts = {}) {
  require_connected(g, "gamma_bk");
  if (k < 1) throw ValidationError("k must be at least 1");
  detail::BranchAndBound bnb(g, k, opts);
  return bnb.run(cutoff);
}

inline SolveResult gamma_bk(const Graph& g, int k, const SolveOptions& opts = {}) {
  require_connected(g, "gamma_bk");
  if (k < 1) throw ValidationError("k must be at least 1");
  detail::BranchAndBound bnb(g, k, opts);
  return *bnb.run(std::nullopt);
}

// Exhaustive search by increasing cost. The witness is the first dominating
// function found in the order: support sets lexicographically (as ascending
// vertex lists), then power vectors lexicographically.
inline SolveResult gamma_bk_oracle(const Graph& g, int k, const SolveOptions& opts = {}) {
  require_connected(g, "gamma_bk_oracle");
  if (k < 1) throw ValidationError("k must be at least 1");
  const int n = g.order();
  if (n > opts.oracle_max_order)
    throw GuardExceeded("oracle limited to " + std::to_string(opts.oracle_max_order) + " vertices");
  const auto& d = g.distances();
  detail::Deadline deadline(opts.time_limit_seconds);
  const int pmax = std::min(k, n);
  // balls[v][p] for p in 0..pmax.
  std::vector<std::vector<VertexSet>> balls(n);
  for (int v = 0; v < n; ++v)
    for (int p = 0; p <= pmax; ++p) balls[v].push_back(detail::ball(d, n, v, p));
  const VertexSet everything = VertexSet::full(n);

  std::uint64_t nodes = 0;
  std::vector<int> support, power;
  std::vector<int> found;

  auto tick = [&] {
    ++nodes;
    if (opts.max_nodes && nodes > opts.max_nodes) throw GuardExceeded("oracle node budget exhausted", nodes);
    if ((nodes & 0xffff) == 0 && deadline.expired()) throw GuardExceeded("oracle time budget exhausted", nodes);
  };

  // Power vectors over the current support, summing to `left`, lexicographic.
  auto try_powers = [&](auto&& self, std::size_t i, int left, VertexSet& cover_so_far) -> bool {
    const std::size_t s = support.size();
    if (i == s) {
      tick();
      if (left == 0 && cover_so_far == everything) {
        found.assign(n, 0);
        for (std::size_t j = 0; j < s; ++j) found[support[j]] = power[j];
        return true;
      }
      return false;
    }
    const int remaining_slots = static_cast<int>(s - i - 1);
    for (int p = 1; p <= std::min(pmax, left - remaining_slots); ++p) {
      if (remaining_slots == 0 && p != left) continue;
      power[i] = p;
      VertexSet next = cover_so_far | balls[support[i]][p];
      if (self(self, i + 1, left - p, next)) return true;
    }
    return false;
  };

  // Support sets in lexicographic (preorder) order, at most `cost` members.
  auto try_supports = [&](auto&& self, int next_vertex, int cost) -> bool {
    if (!support.empty()) {
      power.assign(support.size(), 0);
      VertexSet none(n);
      if (static_cast<int>(support.size()) * pmax >= cost &&
          try_powers(try_powers, 0, cost, none))
        return true;
    }
    if (static_cast<int>(support.size()) == cost) return false;
    for (int v = next_vertex; v < n; ++v) {
      support.push_back(v);
      bool ok = self(self, v + 1, cost);
      support.pop_back();
      if (ok) return true;
    }
    return false;
  };

  for (int cost = 1; cost <= n; ++cost) {
    if (try_supports(try_supports, 0, cost)) {
      SolveResult r;
      r.witness = BroadcastFunction(k, found);
      r.value = cost;
      r.stats = {nodes, Method::oracle, deadline.elapsed()};
      return r;
    }
  }
  throw Error("oracle: no dominating broadcast found");  // unreachable: power 1 everywhere dominates
}

// gamma_{B_k}(g) for k = 1..rad(g).
inline std::vector<int> gamma_chain(const Graph& g, const SolveOptions& opts = {}) {
  const int rad = radius(g);
  if (rad < 1) throw ValidationError("gamma_chain needs radius at least 1");
  std::vector<int> chain;
  for (int k = 1; k <= rad; ++k) chain.push_back(gamma_bk(g, k, opts).value);
  return chain;
}

// Moves the power of every positive leaf onto its support vertex, which an
// optimal function leaves unpowered. Requires `f` dominating and optimal.
inline BroadcastFunction normalize_leaf_zero(const Graph& g, BroadcastFunction f, const SolveOptions& opts = {}) {
  if (!is_dominating(g, f)) throw ValidationError("normalize_leaf_zero: broadcast is not dominating");
  const int optimum = gamma_bk(g, f.cap(), opts).value;
  if (f.cost() != optimum)
    throw NotOptimalError("normalize_leaf_zero: cost " + std::to_string(f.cost()) + " exceeds optimum " +
                          std::to_string(optimum));
  bool moved = true;
  while (moved) {
    moved = false;
    for (int leaf = 0; leaf < g.order(); ++leaf) {
      if (g.degree(leaf) != 1 || f[leaf] == 0) continue;
      const int support = g.neighbors(leaf)[0];
      if (g.degree(support) == 1) continue;  // P_2: the two leaves support each other
      if (f[support] != 0)
        throw NotOptimalError("normalize_leaf_zero: leaf and its support vertex both broadcast");
      f.set(support, f[leaf]);
      f.set(leaf, 0);
      moved = true;
    }
  }
  return f;
}

// Sum of gamma_bk over the connected components, with the witnesses merged.
// Domination never crosses components, so this is exact for any graph.
inline SolveResult gamma_bk_by_components(const Graph& g, int k, const SolveOptions& opts = {}) {
  if (g.order() == 0) throw ValidationError("gamma_bk: empty graph");
  const auto& d = g.distances();
  std::vector<int> comp(g.order(), -1);
  std::vector<int> values(g.order(), 0);
  SolveResult total;
  total.stats.method = Method::branch_and_bound;
  for (int s = 0; s < g.order(); ++s) {
    if (comp[s] != -1) continue;
    std::vector<int> members;
    for (int v = 0; v < g.order(); ++v)
      if (d.reachable(s, v)) comp[v] = s, members.push_back(v);
    auto sub = induced_subgraph(g, members);
    auto r = gamma_bk(sub.graph, k, opts);
    for (int v = 0; v < sub.graph.order(); ++v) values[sub.to_old[v]] = r.witness[v];
    total.value += r.value;
    total.stats.nodes += r.stats.nodes;
    total.stats.elapsed_seconds += r.stats.elapsed_seconds;
  }
  total.witness = BroadcastFunction(k, std::move(values));
  return total;
}

}  // namespace kbroadcast
