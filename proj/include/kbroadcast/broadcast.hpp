#pragma once

#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "kbroadcast/errors.hpp"
#include "kbroadcast/graph.hpp"

namespace kbroadcast {

// A k-broadcast: every vertex gets a transmission power in {0..k}.
class BroadcastFunction {
 public:
  BroadcastFunction() = default;
  BroadcastFunction(int k, std::vector<int> values) : k_(k), values_(std::move(values)) {
    if (k < 1) throw ValidationError("power cap k must be at least 1");
    for (std::size_t v = 0; v < values_.size(); ++v)
      if (values_[v] < 0 || values_[v] > k)
        throw ValidationError("power " + std::to_string(values_[v]) + " at vertex " + std::to_string(v) +
                              " outside 0.." + std::to_string(k));
  }
  static BroadcastFunction zero(int k, int n) { return {k, std::vector<int>(n, 0)}; }

  int cap() const noexcept { return k_; }
  int order() const noexcept { return static_cast<int>(values_.size()); }
  int operator[](int v) const { return values_[v]; }
  const std::vector<int>& values() const noexcept { return values_; }

  void set(int v, int power) {
    if (power < 0 || power > k_) throw ValidationError("power outside 0..k");
    values_[v] = power;
  }

  int cost() const { return std::accumulate(values_.begin(), values_.end(), 0); }

  // V+ : vertices with positive power, ascending.
  std::vector<int> broadcasters() const {
    std::vector<int> out;
    for (int v = 0; v < order(); ++v)
      if (values_[v] > 0) out.push_back(v);
    return out;
  }

  friend bool operator==(const BroadcastFunction&, const BroadcastFunction&) = default;

 private:
  int k_ = 1;
  std::vector<int> values_;
};

namespace detail {
inline void require_domain(const Graph& g, const BroadcastFunction& f) {
  if (f.order() != g.order())
    throw ValidationError("broadcast defined on " + std::to_string(f.order()) + " vertices, graph has " +
                          std::to_string(g.order()));
}

// Number of broadcasters whose ball contains each vertex.
inline std::vector<int> coverage_counts(const Graph& g, const BroadcastFunction& f) {
  const auto& d = g.distances();
  std::vector<int> count(g.order(), 0);
  for (int v : f.broadcasters())
    for (int u = 0; u < g.order(); ++u) {
      auto duv = d.at(u, v);
      if (duv && *duv <= f[v]) ++count[u];
    }
  return count;
}
}  // namespace detail

inline bool is_dominating(const Graph& g, const BroadcastFunction& f) {
  detail::require_domain(g, f);
  for (int c : detail::coverage_counts(g, f))
    if (c == 0) return false;
  return true;
}

// True iff every vertex hears exactly one broadcaster.
inline bool efficiency_check(const Graph& g, const BroadcastFunction& f) {
  detail::require_domain(g, f);
  auto counts = detail::coverage_counts(g, f);
  for (int c : counts)
    if (c == 0) throw ValidationError("efficiency_check: broadcast is not dominating");
  for (int c : counts)
    if (c != 1) return false;
  return true;
}

// Witness JSON: {"k", "value", "assignments": [{"vertex", "power"}...]},
// positive powers only, ascending vertex id.
inline nlohmann::json witness_to_json(const BroadcastFunction& f) {
  nlohmann::json assignments = nlohmann::json::array();
  for (int v : f.broadcasters()) assignments.push_back({{"vertex", v}, {"power", f[v]}});
  return {{"k", f.cap()}, {"value", f.cost()}, {"assignments", std::move(assignments)}};
}

inline BroadcastFunction witness_from_json(const nlohmann::json& j, int n) {
  try {
    int k = j.at("k").get<int>();
    std::vector<int> values(n, 0);
    for (const auto& a : j.at("assignments")) {
      int v = a.at("vertex").get<int>();
      int p = a.at("power").get<int>();
      if (v < 0 || v >= n) throw ValidationError("witness vertex " + std::to_string(v) + " out of range");
      if (p < 1) throw ValidationError("witness lists a non-positive power");
      if (values[v] != 0) throw ValidationError("witness lists vertex " + std::to_string(v) + " twice");
      values[v] = p;
    }
    BroadcastFunction f(k, std::move(values));
    if (j.contains("value") && j.at("value").get<int>() != f.cost())
      throw ValidationError("witness value does not match the sum of powers");
    return f;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed witness JSON: ") + e.what());
  }
}

}  // namespace kbroadcast
