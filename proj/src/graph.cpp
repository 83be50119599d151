#include "plembed/graph.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>

#include "plembed/error.hpp"

namespace plembed {

VertexId MetricGraph::Builder::vertex(const std::string& label) {
  if (label.empty()) throw DomainError("vertex labels must be nonempty");
  const auto it = index_.find(label);
  if (it != index_.end()) return it->second;
  const auto id = static_cast<VertexId>(labels_.size());
  labels_.push_back(label);
  index_.emplace(label, id);
  return id;
}

void MetricGraph::Builder::add_edge(const std::string& a, const std::string& b, double length) {
  if (!std::isfinite(length) || length <= 0.0) {
    throw DomainError("edge " + a + " " + b + " has nonpositive length");
  }
  if (a == b) throw TopologyError("self loop at vertex " + a);
  const VertexId u = vertex(a);
  const VertexId v = vertex(b);
  const auto key = std::minmax(u, v);
  if (!seen_.emplace(key, edges_.size()).second) {
    throw TopologyError("duplicate edge " + a + " " + b);
  }
  edges_.push_back({u, v, length});
}

MetricGraph MetricGraph::Builder::build() && {
  MetricGraph g;
  g.labels_ = std::move(labels_);
  g.index_ = std::move(index_);
  g.edges_ = std::move(edges_);

  const std::size_t n = g.labels_.size();
  std::vector<std::vector<std::pair<VertexId, double>>> weighted(n);
  g.adjacency_.assign(n, {});
  for (const Edge& e : g.edges_) {
    weighted[e.u].emplace_back(e.v, e.length);
    weighted[e.v].emplace_back(e.u, e.length);
    g.adjacency_[e.u].push_back(e.v);
    g.adjacency_[e.v].push_back(e.u);
  }
  for (auto& adj : g.adjacency_) std::sort(adj.begin(), adj.end());

  g.dist_.assign(n * n, std::numeric_limits<double>::infinity());
  using Item = std::pair<double, VertexId>;
  for (std::size_t src = 0; src < n; ++src) {
    double* row = g.dist_.data() + src * n;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    row[src] = 0.0;
    pq.emplace(0.0, static_cast<VertexId>(src));
    while (!pq.empty()) {
      const auto [d, u] = pq.top();
      pq.pop();
      if (d > row[u]) continue;
      for (const auto& [v, w] : weighted[u]) {
        if (d + w < row[v]) {
          row[v] = d + w;
          pq.emplace(row[v], v);
        }
      }
    }
  }
  // Symmetrize exactly; Dijkstra sums can differ in the last bit by direction.
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const double d = std::min(g.dist_[a * n + b], g.dist_[b * n + a]);
      g.dist_[a * n + b] = g.dist_[b * n + a] = d;
    }
  }
  return g;
}

std::optional<VertexId> MetricGraph::find(std::string_view label) const {
  const auto it = index_.find(label);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

}  // namespace plembed
