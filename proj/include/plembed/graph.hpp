#pragma once

#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace plembed {

using VertexId = int;

struct Edge {
  VertexId u = 0;
  VertexId v = 0;
  double length = 0.0;
};

/// Weighted undirected graph with its shortest-path metric. Immutable once
/// built; all-pairs distances are computed at construction (Dijkstra from
/// every vertex), so distance() is a lookup and the object can be shared
/// between threads. Unreachable pairs have infinite distance.
class MetricGraph {
 public:
  class Builder {
   public:
    /// Returns the id of `label`, creating the vertex on first sight.
    VertexId vertex(const std::string& label);
    /// Throws TopologyError on duplicates and self loops, DomainError on a
    /// nonpositive or non-finite length.
    void add_edge(const std::string& a, const std::string& b, double length);
    MetricGraph build() &&;

   private:
    std::vector<std::string> labels_;
    std::map<std::string, VertexId, std::less<>> index_;
    std::vector<Edge> edges_;
    std::map<std::pair<VertexId, VertexId>, std::size_t> seen_;
  };

  std::size_t vertex_count() const { return labels_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::string& label(VertexId v) const { return labels_.at(v); }
  std::optional<VertexId> find(std::string_view label) const;

  /// Neighbours of v in increasing id order.
  const std::vector<VertexId>& neighbors(VertexId v) const { return adjacency_.at(v); }
  std::size_t degree(VertexId v) const { return neighbors(v).size(); }

  double distance(VertexId a, VertexId b) const {
    return dist_[static_cast<std::size_t>(a) * labels_.size() + b];
  }

 private:
  MetricGraph() = default;

  std::vector<std::string> labels_;
  std::map<std::string, VertexId, std::less<>> index_;
  std::vector<Edge> edges_;
  std::vector<std::vector<VertexId>> adjacency_;
  std::vector<double> dist_;  // row-major |V| x |V|
};

/// Parsed graph plus any per-vertex curvature the document prescribes.
struct GraphDocument {
  MetricGraph graph;
  std::map<VertexId, double> kappa;
};

/// Edge-list text: one `label label length` per line, `#` starts a comment,
/// blank lines are ignored. Throws ParseError (with line number),
/// TopologyError or DomainError (wrapped in ParseError with the line).
GraphDocument parse_edge_list(std::istream& in);

/// Structured JSON document:
///   {"vertices": [{"label": "a", "kappa": 0.0}, ...],
///    "edges": [{"u": "a", "v": "b", "length": 1.0}, ...]}
/// `vertices` is optional (vertices are also created from edges) and
/// `kappa` is optional per vertex.
GraphDocument parse_graph_json(std::istream& in);

/// Picks the format from the first non-blank character ('{' means JSON).
GraphDocument parse_graph_document(std::istream& in);

/// `label kappa` lines, same comment rules as the edge list.
std::map<VertexId, double> parse_kappa_map(std::istream& in, const MetricGraph& g);

}  // namespace plembed
