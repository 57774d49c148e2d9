#include "interdict/inner_solvers.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace interdict {

PathResult shortest_path(const SpiInstance& inst, const BinaryVector& x) {
  if (x.size() != inst.edges.size())
    throw std::invalid_argument("shortest_path: interdiction vector length mismatch");

  const int n = inst.node_count;
  std::vector<std::vector<std::pair<int, double>>> adj(n);  // head, effective cost
  for (std::size_t e = 0; e < inst.edges.size(); ++e) {
    const auto& edge = inst.edges[e];
    double w = edge.cost + (x[e] ? edge.delay : 0.0);
    adj[edge.tail].emplace_back(edge.head, w);
  }

  std::vector<double> dist(n, kUnreachable);
  std::vector<int> parent(n, -1);
  using Item = std::pair<double, int>;  // (dist, node); node id breaks ties
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[inst.source] = 0.0;
  heap.emplace(0.0, inst.source);
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (d > dist[u]) continue;  // stale entry
    if (u == inst.sink) break;
    for (auto [v, w] : adj[u]) {
      if (d + w < dist[v]) {
        dist[v] = d + w;
        parent[v] = u;
        heap.emplace(dist[v], v);
      }
    }
  }

  PathResult result;
  if (dist[inst.sink] == kUnreachable) return result;
  result.length = dist[inst.sink];
  for (int v = inst.sink; v != -1; v = parent[v]) result.path.push_back(v);
  std::reverse(result.path.begin(), result.path.end());
  return result;
}

FlowResult max_flow(const MfiInstance& inst, const BinaryVector& removed) {
  if (removed.size() != inst.edges.size())
    throw std::invalid_argument("max_flow: removal vector length mismatch");

  const int n = inst.node_count;
  const std::size_t m = inst.edges.size();
  // Residual arc 2e is edge e forward, 2e+1 its reverse.
  std::vector<double> cap(2 * m, 0.0);
  std::vector<std::vector<int>> adj(n);
  for (std::size_t e = 0; e < m; ++e) {
    cap[2 * e] = removed[e] ? 0.0 : inst.edges[e].capacity;
    adj[inst.edges[e].tail].push_back(static_cast<int>(2 * e));
    adj[inst.edges[e].head].push_back(static_cast<int>(2 * e + 1));
  }
  auto arc_head = [&](int arc) {
    return (arc & 1) ? inst.edges[arc >> 1].tail : inst.edges[arc >> 1].head;
  };

  FlowResult result;
  std::vector<int> parent_arc(n);
  while (true) {
    // BFS for the shortest augmenting path.
    std::fill(parent_arc.begin(), parent_arc.end(), -1);
    parent_arc[inst.source] = -2;
    std::queue<int> frontier;
    frontier.push(inst.source);
    while (!frontier.empty() && parent_arc[inst.sink] == -1) {
      int u = frontier.front();
      frontier.pop();
      for (int arc : adj[u]) {
        int v = arc_head(arc);
        if (parent_arc[v] == -1 && cap[arc] > kEps) {
          parent_arc[v] = arc;
          frontier.push(v);
        }
      }
    }
    if (parent_arc[inst.sink] == -1) break;

    double bottleneck = kUnreachable;
    for (int v = inst.sink; v != inst.source;) {
      int arc = parent_arc[v];
      bottleneck = std::min(bottleneck, cap[arc]);
      v = (arc & 1) ? inst.edges[arc >> 1].head : inst.edges[arc >> 1].tail;
    }
    for (int v = inst.sink; v != inst.source;) {
      int arc = parent_arc[v];
      cap[arc] -= bottleneck;
      cap[arc ^ 1] += bottleneck;
      v = (arc & 1) ? inst.edges[arc >> 1].head : inst.edges[arc >> 1].tail;
    }
    result.value += bottleneck;
  }

  result.edge_flow.resize(m);
  for (std::size_t e = 0; e < m; ++e) {
    double original = removed[e] ? 0.0 : inst.edges[e].capacity;
    result.edge_flow[e] = original - cap[2 * e];
  }
  return result;
}

}  // namespace interdict
