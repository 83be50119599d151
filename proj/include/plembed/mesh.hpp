#pragma once

// Triangle meshes read from OFF, with edge adjacency and dihedral angles.

#include <array>
#include <cstddef>
#include <istream>
#include <optional>
#include <vector>

#include <Eigen/Core>

namespace plembed {

struct MeshEdge {
  int u = 0;  // u < v
  int v = 0;
  /// Incident triangles; `second` is empty on a boundary edge.
  /// `first` traverses the edge u -> v when the mesh is consistently oriented.
  int first = -1;
  std::optional<int> second;
  /// Both triangles come from the same source polygon (a fan diagonal).
  bool internal = false;
};

/// Oriented triangle mesh. Polygons are fan-triangulated on ingestion;
/// `source_face` maps each triangle back to its input polygon. Closed
/// meshes are reoriented so that the enclosed signed volume is positive
/// (outward normals), which makes every derived angle independent of the
/// orientation of the input.
class PolyMesh {
 public:
  /// Throws DomainError on a degenerate (zero-area) triangle or a bad index,
  /// TopologyError on a non-manifold edge or inconsistent orientation.
  PolyMesh(std::vector<Eigen::Vector3d> vertices, const std::vector<std::vector<int>>& faces);

  const std::vector<Eigen::Vector3d>& vertices() const { return vertices_; }
  const std::vector<std::array<int, 3>>& triangles() const { return triangles_; }
  const std::vector<int>& source_face() const { return source_; }
  const std::vector<MeshEdge>& edges() const { return edges_; }
  bool closed() const { return closed_; }
  bool flipped() const { return flipped_; }

  /// Unit normal of triangle f (outward on a closed mesh).
  Eigen::Vector3d normal(int f) const;

  /// Interior dihedral angle in (0, 2 pi) along an edge with two triangles.
  /// Convex edges have angle < pi; the interior is the side the normals
  /// point away from.
  double dihedral_angle(const MeshEdge& e) const;

  /// Index into edges() of the edge {a, b}, if present.
  std::optional<std::size_t> find_edge(int a, int b) const;

 private:
  std::vector<Eigen::Vector3d> vertices_;
  std::vector<std::array<int, 3>> triangles_;
  std::vector<int> source_;
  std::vector<MeshEdge> edges_;
  bool closed_ = false;
  bool flipped_ = false;
};

/// ASCII OFF: optional "OFF" header, counts line "nv nf ne", nv vertex
/// lines, nf face lines "k i_1 ... i_k" (trailing colour values ignored).
/// `#` starts a comment. Throws ParseError with the line number.
PolyMesh parse_off(std::istream& in);

}  // namespace plembed
