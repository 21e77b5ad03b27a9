#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <utility>
#include <vector>

namespace teamcomp {

// Exact min-cost flow via successive shortest augmenting paths with node
// potentials. Supports per-node supplies (b > 0 injects flow, b < 0 absorbs
// it); solve() routes every unit of supply and returns the total cost, or
// nullopt when the supplies cannot be routed. Potentials are seeded with
// Bellman-Ford when negative arc costs are present, after which Dijkstra on
// reduced costs stays non-negative. Negative cycles are not supported (the
// networks built here are DAGs).
class MinCostFlow {
 public:
  struct Arc {
    int from;
    int to;
    std::int64_t cap;
    std::int64_t flow;
    std::int64_t cost;
  };

  explicit MinCostFlow(int node_count) : supply_(node_count, 0), adj_(node_count) {}

  // Returns the arc id; ids are dense and stable.
  int add_arc(int from, int to, std::int64_t cap, std::int64_t cost) {
    const int id = static_cast<int>(arcs_.size());
    arcs_.push_back({from, to, cap, 0, cost});
    arcs_.push_back({to, from, 0, 0, -cost});
    adj_[from].push_back(id);
    adj_[to].push_back(id + 1);
    return id;
  }

  void add_supply(int node, std::int64_t amount) { supply_[node] += amount; }

  std::int64_t flow_on(int arc_id) const { return arcs_[2 * arc_id].flow; }

  std::optional<std::int64_t> solve() {
    const int n = static_cast<int>(supply_.size());
    const int super_source = n;
    const int super_sink = n + 1;
    adj_.resize(n + 2);
    supply_.resize(n + 2, 0);

    std::int64_t required = 0;
    for (int v = 0; v < n; ++v) {
      if (supply_[v] > 0) {
        add_arc(super_source, v, supply_[v], 0);
        required += supply_[v];
      } else if (supply_[v] < 0) {
        add_arc(v, super_sink, -supply_[v], 0);
      }
    }

    potential_.assign(n + 2, 0);
    if (has_negative_cost()) {
      bellman_ford(super_source);
    }

    std::int64_t routed = 0;
    std::int64_t total_cost = 0;
    while (routed < required) {
      if (!dijkstra(super_source, super_sink)) return std::nullopt;
      std::int64_t bottleneck = required - routed;
      for (int v = super_sink; v != super_source;) {
        const Arc& arc = arcs_[path_arc_[v]];
        bottleneck = std::min(bottleneck, arc.cap - arc.flow);
        v = arc.from;
      }
      for (int v = super_sink; v != super_source;) {
        Arc& arc = arcs_[path_arc_[v]];
        arc.flow += bottleneck;
        arcs_[path_arc_[v] ^ 1].flow -= bottleneck;
        total_cost += arc.cost * bottleneck;
        v = arc.from;
      }
      routed += bottleneck;
    }
    return total_cost;
  }

 private:
  static constexpr std::int64_t kUnreachable = std::numeric_limits<std::int64_t>::max() / 4;

  bool has_negative_cost() const {
    for (std::size_t i = 0; i < arcs_.size(); i += 2) {
      if (arcs_[i].cost < 0) return true;
    }
    return false;
  }

  void bellman_ford(int source) {
    std::fill(potential_.begin(), potential_.end(), kUnreachable);
    potential_[source] = 0;
    bool changed = true;
    while (changed) {
      changed = false;
      for (const Arc& arc : arcs_) {
        if (arc.cap - arc.flow <= 0 || potential_[arc.from] >= kUnreachable) continue;
        if (potential_[arc.from] + arc.cost < potential_[arc.to]) {
          potential_[arc.to] = potential_[arc.from] + arc.cost;
          changed = true;
        }
      }
    }
    for (auto& p : potential_) {
      if (p >= kUnreachable) p = 0;
    }
  }

  bool dijkstra(int source, int sink) {
    const int n = static_cast<int>(adj_.size());
    dist_.assign(n, kUnreachable);
    path_arc_.assign(n, -1);
    dist_[source] = 0;
    using Item = std::pair<std::int64_t, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
    heap.push({0, source});
    while (!heap.empty()) {
      auto [d, v] = heap.top();
      heap.pop();
      if (d > dist_[v]) continue;
      for (int arc_id : adj_[v]) {
        const Arc& arc = arcs_[arc_id];
        if (arc.cap - arc.flow <= 0) continue;
        const std::int64_t reduced = d + arc.cost + potential_[v] - potential_[arc.to];
        if (reduced < dist_[arc.to]) {
          dist_[arc.to] = reduced;
          path_arc_[arc.to] = arc_id;
          heap.push({reduced, arc.to});
        }
      }
    }
    if (dist_[sink] >= kUnreachable) return false;
    for (int v = 0; v < n; ++v) {
      if (dist_[v] < kUnreachable) potential_[v] += dist_[v];
    }
    return true;
  }

  std::vector<std::int64_t> supply_;
  std::vector<std::vector<int>> adj_;
  std::vector<Arc> arcs_;
  std::vector<std::int64_t> potential_;
  std::vector<std::int64_t> dist_;
  std::vector<int> path_arc_;
};

}  // namespace teamcomp
