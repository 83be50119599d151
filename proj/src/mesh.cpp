#include "plembed/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <string>
#include <tuple>

#include <Eigen/Geometry>

#include "plembed/error.hpp"
#include "plembed/spaceform.hpp"

namespace plembed {

PolyMesh::PolyMesh(std::vector<Eigen::Vector3d> vertices, const std::vector<std::vector<int>>& faces)
    : vertices_(std::move(vertices)) {
  const int nv = static_cast<int>(vertices_.size());
  for (const auto& p : vertices_) {
    if (!p.allFinite()) throw DomainError("mesh vertex coordinates must be finite");
  }
  double scale = 0.0;
  for (const auto& p : vertices_) scale = std::max(scale, p.cwiseAbs().maxCoeff());

  for (std::size_t fi = 0; fi < faces.size(); ++fi) {
    const auto& f = faces[fi];
    if (f.size() < 3) throw DomainError("face " + std::to_string(fi) + " has fewer than 3 vertices");
    for (int idx : f) {
      if (idx < 0 || idx >= nv) {
        throw DomainError("face " + std::to_string(fi) + " references vertex " +
                          std::to_string(idx) + " out of range");
      }
    }
    for (std::size_t j = 1; j + 1 < f.size(); ++j) {
      const std::array<int, 3> t{f[0], f[j], f[j + 1]};
      const Eigen::Vector3d n =
          (vertices_[t[1]] - vertices_[t[0]]).cross(vertices_[t[2]] - vertices_[t[0]]);
      if (!(n.norm() > 1e-14 * scale * scale)) {
        throw DomainError("face " + std::to_string(fi) + " is degenerate (zero area)");
      }
      triangles_.push_back(t);
      source_.push_back(static_cast<int>(fi));
    }
  }

  // Directed edge -> triangle.
  std::map<std::pair<int, int>, int> directed;
  for (std::size_t f = 0; f < triangles_.size(); ++f) {
    const auto& t = triangles_[f];
    for (int i = 0; i < 3; ++i) {
      const std::pair<int, int> key{t[i], t[(i + 1) % 3]};
      if (!directed.emplace(key, static_cast<int>(f)).second) {
        const auto [a, b] = std::minmax(key.first, key.second);
        if (directed.count({key.second, key.first}) != 0) {
          throw TopologyError("non-manifold edge " + std::to_string(a) + " " + std::to_string(b));
        }
        throw TopologyError("inconsistent orientation at edge " + std::to_string(a) + " " +
                            std::to_string(b));
      }
    }
  }
  closed_ = true;
  for (const auto& [key, f] : directed) {
    const auto [a, b] = key;
    const auto rev = directed.find({b, a});
    if (rev == directed.end()) {
      closed_ = false;
      MeshEdge e{std::min(a, b), std::max(a, b), f, std::nullopt, false};
      edges_.push_back(e);
    } else if (a < b) {
      MeshEdge e{a, b, f, rev->second, source_[f] == source_[rev->second]};
      edges_.push_back(e);
    }
  }
  std::sort(edges_.begin(), edges_.end(),
            [](const MeshEdge& x, const MeshEdge& y) { return std::tie(x.u, x.v) < std::tie(y.u, y.v); });

  if (closed_) {
    double volume = 0.0;
    for (const auto& t : triangles_) {
      volume += vertices_[t[0]].dot(vertices_[t[1]].cross(vertices_[t[2]]));
    }
    if (volume < 0.0) {
      flipped_ = true;
      for (auto& t : triangles_) std::swap(t[1], t[2]);
      for (auto& e : edges_) std::swap(e.first, *e.second);
    }
  }
}

Eigen::Vector3d PolyMesh::normal(int f) const {
  const auto& t = triangles_.at(f);
  return (vertices_[t[1]] - vertices_[t[0]]).cross(vertices_[t[2]] - vertices_[t[0]]).normalized();
}

double PolyMesh::dihedral_angle(const MeshEdge& e) const {
  if (!e.second) throw TopologyError("boundary edge has no dihedral angle");
  // Orient the edge as traversed by `first`.
  const auto& t = triangles_[e.first];
  int a = e.u;
  int b = e.v;
  for (int i = 0; i < 3; ++i) {
    if (t[i] == e.v && t[(i + 1) % 3] == e.u) std::swap(a, b);
  }
  const Eigen::Vector3d dir = (vertices_[b] - vertices_[a]).normalized();
  const Eigen::Vector3d n1 = normal(e.first);
  const Eigen::Vector3d n2 = normal(*e.second);
  const double turn = std::atan2(n1.cross(n2).dot(dir), n1.dot(n2));
  return kPi - turn;
}

std::optional<std::size_t> PolyMesh::find_edge(int a, int b) const {
  const auto [u, v] = std::minmax(a, b);
  const auto it = std::lower_bound(edges_.begin(), edges_.end(), std::pair<int, int>{u, v},
                                   [](const MeshEdge& e, const std::pair<int, int>& k) {
                                     return std::tie(e.u, e.v) < std::tie(k.first, k.second);
                                   });
  if (it == edges_.end() || it->u != u || it->v != v) return std::nullopt;
  return static_cast<std::size_t>(it - edges_.begin());
}

namespace {

struct LineReader {
  std::istream& in;
  std::size_t line = 0;

  // Next nonblank line with comments removed; false at end of input.
  bool next(std::istringstream& out) {
    std::string raw;
    while (std::getline(in, raw)) {
      ++line;
      raw = raw.substr(0, raw.find('#'));
      if (raw.find_first_not_of(" \t\r") == std::string::npos) continue;
      out.clear();
      out.str(raw);
      return true;
    }
    return false;
  }
};

}  // namespace

PolyMesh parse_off(std::istream& in) {
  LineReader r{in};
  std::istringstream ls;
  if (!r.next(ls)) throw ParseError("empty OFF document", r.line);
  std::string first;
  ls >> first;
  if (first == "OFF") {
    std::string rest;
    if (ls >> rest) {
      // Counts may follow the header on the same line.
      ls.clear();
      ls.str(rest + " " + std::string(std::istreambuf_iterator<char>(ls), {}));
    } else if (!r.next(ls)) {
      throw ParseError("missing counts line", r.line);
    }
  } else {
    ls.clear();
    ls.str(first + " " + std::string(std::istreambuf_iterator<char>(ls), {}));
  }
  long long nv = 0;
  long long nf = 0;
  if (!(ls >> nv >> nf) || nv < 0 || nf < 0) throw ParseError("expected 'nv nf ne'", r.line);

  std::vector<Eigen::Vector3d> verts;
  verts.reserve(static_cast<std::size_t>(nv));
  for (long long i = 0; i < nv; ++i) {
    if (!r.next(ls)) throw ParseError("unexpected end of input in vertex list", r.line);
    Eigen::Vector3d p;
    if (!(ls >> p.x() >> p.y() >> p.z())) throw ParseError("expected three coordinates", r.line);
    verts.push_back(p);
  }
  std::vector<std::vector<int>> faces;
  faces.reserve(static_cast<std::size_t>(nf));
  std::vector<std::size_t> face_line;
  for (long long i = 0; i < nf; ++i) {
    if (!r.next(ls)) throw ParseError("unexpected end of input in face list", r.line);
    int k = 0;
    if (!(ls >> k) || k < 3) throw ParseError("face needs at least 3 vertices", r.line);
    std::vector<int> f(static_cast<std::size_t>(k));
    for (int& idx : f) {
      if (!(ls >> idx)) throw ParseError("expected a vertex index", r.line);
      if (idx < 0 || idx >= nv) throw ParseError("vertex index out of range", r.line);
    }
    faces.push_back(std::move(f));
    face_line.push_back(r.line);
  }
  try {
    return PolyMesh(std::move(verts), faces);
  } catch (const std::exception& e) {
    // Attribute face-level errors to the face's line where possible.
    const std::string what = e.what();
    const auto pos = what.find("face ");
    if (pos == 0) {
      const auto idx = std::stoul(what.substr(5));
      if (idx < face_line.size()) throw ParseError(what, face_line[idx]);
    }
    throw ParseError(what, r.line);
  }
}

}  // namespace plembed
