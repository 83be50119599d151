#pragma once

// Shared generators and independent oracles for the test suites. Nothing
// here calls the library's own angle or volume routines.

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Geometry>

#include "plembed/graph.hpp"
#include "plembed/mesh.hpp"
#include "plembed/quadruple.hpp"

namespace plembed::testkit {

inline constexpr double kPi = 3.14159265358979323846;

using Rng = std::mt19937_64;

/// Random point of the coordinate model of S^2_k: gnomonic sampling over a
/// hemisphere (k > 0), a unit square (k = 0) or a hyperboloid patch (k < 0).
inline Eigen::VectorXd random_model_point(double kappa, Rng& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double x = u(rng);
  const double y = u(rng);
  if (kappa == 0.0) return Eigen::Vector2d(x, y);
  if (kappa > 0.0) {
    Eigen::Vector3d v(1.0, x, y);
    v.normalize();
    if (u(rng) < 0.0) v(0) = -v(0);
    return v / std::sqrt(kappa);
  }
  return Eigen::Vector3d(std::sqrt(1.0 + x * x + y * y), x, y) / std::sqrt(-kappa);
}

/// Geodesic distance from the textbook formulas (arc cosine / arc cosh of
/// the ambient inner product), independent of the library's stable forms.
inline double oracle_distance(double kappa, const Eigen::VectorXd& p, const Eigen::VectorXd& q) {
  if (kappa == 0.0) return (p - q).norm();
  if (kappa > 0.0) {
    const double c = std::clamp(kappa * p.dot(q), -1.0, 1.0);
    return std::acos(c) / std::sqrt(kappa);
  }
  const double mink = p(0) * q(0) - p.tail(p.size() - 1).dot(q.tail(q.size() - 1));
  return std::acosh(std::max(1.0, -kappa * mink)) / std::sqrt(-kappa);
}

inline Eigen::Matrix4d distance_matrix(double kappa, const std::array<Eigen::VectorXd, 4>& p) {
  Eigen::Matrix4d d = Eigen::Matrix4d::Zero();
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) d(i, j) = d(j, i) = oracle_distance(kappa, p[i], p[j]);
  }
  return d;
}

/// Apex angle from the law of cosines of S^2_k (closed form, acos based).
inline double oracle_angle(double kappa, double a, double b, double c) {
  double cosine = 0.0;
  if (kappa == 0.0) {
    cosine = (b * b + c * c - a * a) / (2.0 * b * c);
  } else if (kappa > 0.0) {
    const double s = std::sqrt(kappa);
    cosine = (std::cos(s * a) - std::cos(s * b) * std::cos(s * c)) / (std::sin(s * b) * std::sin(s * c));
  } else {
    const double s = std::sqrt(-kappa);
    cosine = (std::cosh(s * b) * std::cosh(s * c) - std::cosh(s * a)) / (std::sinh(s * b) * std::sinh(s * c));
  }
  return std::acos(std::clamp(cosine, -1.0, 1.0));
}

/// Solid angle of the triangular cone spanned by a, b, c at the origin
/// (Van Oosterom and Strackee).
inline double oracle_solid_angle(const Eigen::Vector3d& a, const Eigen::Vector3d& b,
                                 const Eigen::Vector3d& c) {
  const double la = a.norm();
  const double lb = b.norm();
  const double lc = c.norm();
  const double num = a.dot(b.cross(c));
  const double den = la * lb * lc + a.dot(b) * lc + a.dot(c) * lb + b.dot(c) * la;
  return 2.0 * std::atan2(std::abs(num), den);
}

/// Random rotation (QR of a Gaussian matrix, determinant +1) and translation.
inline Eigen::Isometry3d random_rigid_motion(Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::Matrix3d m;
  for (int i = 0; i < 9; ++i) m(i / 3, i % 3) = g(rng);
  Eigen::HouseholderQR<Eigen::Matrix3d> qr(m);
  Eigen::Matrix3d q = qr.householderQ();
  if (q.determinant() < 0) q.col(0) = -q.col(0);
  Eigen::Isometry3d t = Eigen::Isometry3d::Identity();
  t.linear() = q;
  t.translation() = Eigen::Vector3d(g(rng), g(rng), g(rng)) * 10.0;
  return t;
}

struct RawMesh {
  std::vector<Eigen::Vector3d> vertices;
  std::vector<std::vector<int>> faces;

  PolyMesh build() const { return PolyMesh(vertices, faces); }

  RawMesh transformed(const Eigen::Isometry3d& t) const {
    RawMesh m = *this;
    for (auto& v : m.vertices) v = t * v;
    return m;
  }

  RawMesh flipped() const {
    RawMesh m = *this;
    for (auto& f : m.faces) std::reverse(f.begin(), f.end());
    return m;
  }

  std::string off() const {
    std::ostringstream s;
    s.precision(17);
    s << "OFF\n" << vertices.size() << ' ' << faces.size() << " 0\n";
    for (const auto& v : vertices) s << v.x() << ' ' << v.y() << ' ' << v.z() << '\n';
    for (const auto& f : faces) {
      s << f.size();
      for (int i : f) s << ' ' << i;
      s << '\n';
    }
    return s.str();
  }
};

/// Unit cube with every square split into two triangles, outward oriented.
inline RawMesh triangulated_cube() {
  RawMesh m;
  for (int i = 0; i < 8; ++i) m.vertices.emplace_back(i & 1, (i >> 1) & 1, (i >> 2) & 1);
  const int quads[6][4] = {{0, 2, 3, 1}, {4, 5, 7, 6}, {0, 1, 5, 4}, {2, 6, 7, 3}, {0, 4, 6, 2}, {1, 3, 7, 5}};
  for (const auto& q : quads) {
    m.faces.push_back({q[0], q[1], q[2]});
    m.faces.push_back({q[0], q[2], q[3]});
  }
  return m;
}

inline RawMesh regular_tetrahedron() {
  RawMesh m;
  m.vertices = {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
  m.faces = {{0, 1, 2}, {0, 3, 1}, {0, 2, 3}, {1, 3, 2}};
  return m;
}

/// Regular icosahedron with unit edges, outward oriented.
inline RawMesh icosahedron() {
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  RawMesh m;
  m.vertices = {{-1, phi, 0}, {1, phi, 0},  {-1, -phi, 0}, {1, -phi, 0}, {0, -1, phi}, {0, 1, phi},
                {0, -1, -phi}, {0, 1, -phi}, {phi, 0, -1},  {phi, 0, 1},  {-phi, 0, -1}, {-phi, 0, 1}};
  for (auto& v : m.vertices) v *= 0.5;
  m.faces = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11}, {1, 5, 9}, {5, 11, 4},
             {11, 10, 2}, {10, 7, 6}, {7, 1, 8},   {3, 9, 4},  {3, 4, 2},   {3, 2, 6}, {3, 6, 8},
             {3, 8, 9},  {4, 9, 5},  {2, 4, 11},  {6, 2, 10}, {8, 6, 7},   {9, 8, 1}};
  return m;
}

/// Metric graph of the edges of a mesh with Euclidean edge lengths.
inline MetricGraph skeleton_of(const RawMesh& m) {
  MetricGraph::Builder b;
  std::vector<std::pair<int, int>> seen;
  for (const auto& f : m.faces) {
    for (std::size_t i = 0; i < f.size(); ++i) {
      int u = f[i];
      int v = f[(i + 1) % f.size()];
      if (u > v) std::swap(u, v);
      if (std::find(seen.begin(), seen.end(), std::pair{u, v}) != seen.end()) continue;
      seen.emplace_back(u, v);
      b.add_edge("v" + std::to_string(u), "v" + std::to_string(v),
                 (m.vertices[u] - m.vertices[v]).norm());
    }
  }
  return std::move(b).build();
}

inline MetricGraph graph_from_text(const std::string& text) {
  std::istringstream in(text);
  return parse_edge_list(in).graph;
}

}  // namespace plembed::testkit
