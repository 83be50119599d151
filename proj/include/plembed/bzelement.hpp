#pragma once

// Primitives of the Burago-Zalgaller construction: the folding map of a
// cone onto a cone, the contraction near vertices of total angle > 2 pi,
// and the pleated construction element over an acute triangle.

#include <array>
#include <ostream>

#include <Eigen/Core>

namespace plembed {

struct Polar {
  double rho = 0.0;
  double phi = 0.0;
};

/// Folding K(theta) -> K(lambda): psi = (lambda/theta) phi, r = a rho^(lambda/theta).
struct FoldParams {
  double theta = 0.0;
  double lambda = 0.0;
  double a = 1.0;

  static FoldParams make(double theta, double lambda, double a = 1.0);
};

/// Throws DomainError for rho < 0 or phi outside [0, theta]. rho = 0 maps to
/// the apex (0, 0).
Polar standard_vertex_map(const FoldParams& p, Polar x);

/// Inner-disk map for a vertex of total angle theta > 2 pi: radii are kept,
/// angles scaled by 2 pi / theta.
Polar contraction_map(double theta, Polar x);

/// Ratio of the singular values of the central-difference Jacobian of the
/// fold at x, in Euclidean charts of the source and target cones centred on
/// x and its image. Equals 1 for a conformal map.
double fold_local_dilatation(const FoldParams& p, Polar x, double step = 1e-6);

/// Acute triangle A_0 A_1 A_2 placed with A_0 at the origin, A_1 on the
/// positive x axis and A_2 in the upper half plane. Side p is opposite
/// vertex p, i.e. sides[p] = |A_k A_l| with {p, k, l} = {0, 1, 2}.
struct AcuteTriangle {
  std::array<double, 3> sides{};
  std::array<double, 3> angles{};
  std::array<Eigen::Vector2d, 3> vertices;
  Eigen::Vector2d circumcenter;
  double R = 0.0;
  std::array<Eigen::Vector2d, 3> midpoints;  // E_p, midpoint of side p
  std::array<double, 3> apothems{};          // H_p = |B E_p|

  /// Throws DomainError unless the sides form a triangle with every angle
  /// strictly below pi/2.
  static AcuteTriangle from_sides(double s0, double s1, double s2);
};

struct SimilarityOptions {
  double angle_tol = 1e-2;  // max |angle(T) - angle(t)| per corner, radians
  double c_min = 0.5;       // min side ratio |a_k a_l| / |A_k A_l|
  double min_angle = 1e-3;  // every angle of T must exceed this
};

/// The pleated surface over t isometric to T. Vertex order: a_0, a_1, a_2
/// (z = 0), E'_0, E'_1, E'_2 (above the side midpoints of t), B' (above the
/// circumcenter of t). Faces pair with the six sub-triangles B A_k E_p of T:
/// faces[2p] = (B', a_k, E'_p), faces[2p+1] = (B', E'_p, a_l) where
/// (k, l) = (p+1, p+2) mod 3.
struct PleatedElement {
  std::array<Eigen::Vector3d, 7> vertices;
  std::array<std::array<int, 3>, 6> faces{};
  double h = 0.0;                 // apex height |B' b|
  std::array<double, 3> z{};      // heights of E'_p
  std::array<double, 3> ratios{}; // |a_k a_l| / |A_k A_l| per side
  std::array<double, 3> source_sides{};
  double c = 1.0;                 // mean side ratio
};

/// Throws DomainError when t is not almost similar to T (see
/// SimilarityOptions), some side of t exceeds the matching side of T, or
/// r > R. t = T gives the flat element.
PleatedElement canonical_element(const AcuteTriangle& T, const AcuteTriangle& t,
                                 const SimilarityOptions& opts = {});

struct DefectReport {
  std::array<double, 3> pleat{};     // | |B'E'_p| - H_p |
  std::array<double, 6> boundary{};  // | |a_k E'_p| - |A_k A_l|/2 |, order of faces
  std::array<double, 3> apex{};      // | |B'a_i| - R |
  double max_defect = 0.0;           // max of pleat
  double c = 1.0;
};

/// Throws DomainError if e was not built over a triangle congruent to T.
DefectReport isometry_defect(const PleatedElement& e, const AcuteTriangle& T);

/// ASCII OBJ: 7 vertex lines in element order, 6 triangular faces.
void write_obj(std::ostream& out, const PleatedElement& e);

}  // namespace plembed
