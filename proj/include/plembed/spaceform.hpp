#pragma once

// Trigonometry of the simply connected model spaces S^n_k (sphere, plane,
// hyperbolic space) used by every metric-curvature computation.

#include <array>

#include <Eigen/Core>

namespace plembed {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Curvature of the model space S^n_k. Positive: sphere of radius 1/sqrt(k);
/// zero: Euclidean; negative: hyperbolic space of curvature k.
struct Curvature {
  double kappa = 0.0;

  constexpr Curvature() = default;
  constexpr explicit Curvature(double k) : kappa(k) {}

  bool spherical() const { return kappa > 0.0; }
  bool flat() const { return kappa == 0.0; }
  bool hyperbolic() const { return kappa < 0.0; }

  friend constexpr bool operator==(Curvature, Curvature) = default;
};

/// How the spherical perimeter condition d12 + d13 + d23 <= bound is read
/// for k > 0. `Scaled` uses 2*pi/sqrt(k), the circumference of a great
/// circle of S^2_k. `Literal` uses 2*pi regardless of k.
enum class PerimeterBound { Scaled, Literal };

/// Three pairwise distances of a 3-point metric space.
struct MetricTriple {
  double d12 = 0.0;
  double d13 = 0.0;
  double d23 = 0.0;

  /// Validated construction; throws DomainError on nonpositive, non-finite
  /// distances or a violated triangle inequality.
  static MetricTriple make(double d12, double d13, double d23);

  double max() const;
  double perimeter() const { return d12 + d13 + d23; }
};

/// Generalized sine: sin(sqrt(k) x)/sqrt(k), x, or sinh(sqrt(-k) x)/sqrt(-k).
double sn(Curvature k, double x);

/// Geodesic distance between two points of the coordinate model of S^n_k.
/// Ambient coordinates:
///   k > 0: R^(n+1), on the sphere of radius 1/sqrt(k) centred at the origin;
///   k = 0: R^n;
///   k < 0: R^(n+1) with Minkowski form x0^2 - x1^2 - ... = 1/|k|, x0 > 0.
/// The pole of the curved models is (1/sqrt|k|, 0, ..., 0).
double geodesic_distance(Curvature k, const Eigen::VectorXd& p, const Eigen::VectorXd& q);

/// Angle at `apex` between the geodesics towards `p` and `q`, measured in the
/// coordinate model (tangent vectors at the apex).
double model_angle(Curvature k, const Eigen::VectorXd& apex, const Eigen::VectorXd& p,
                   const Eigen::VectorXd& q);

/// Apex angle in [0, pi] of the model triangle in S^2_k with side `opposite`
/// facing the apex and sides `b`, `c` meeting at it.
///
/// Throws DomainError if the sides violate the triangle inequality or, for
/// k > 0, the triple is not embeddable under `bound`.
double comparison_angle(Curvature k, double opposite, double b, double c,
                        PerimeterBound bound = PerimeterBound::Scaled);

/// True iff the triple embeds isometrically in S^2_k.
bool triple_embeddable(Curvature k, const MetricTriple& t,
                       PerimeterBound bound = PerimeterBound::Scaled);

/// Model triangle in the coordinate model of S^2_k (see geodesic_distance).
/// Flat triangles use R^2 embedded as the z = 0 plane of R^3.
/// Placement: the first vertex at the origin (or the pole), the second in the
/// direction of the first tangent axis, the third on the positive side of the
/// second tangent axis.
struct ModelTriangle {
  Curvature kappa;
  MetricTriple sides;
  std::array<Eigen::Vector3d, 3> coords;
};

/// Throws DomainError when the triple is not embeddable in S^2_k.
ModelTriangle realize_triple(Curvature k, const MetricTriple& t,
                             PerimeterBound bound = PerimeterBound::Scaled);

}  // namespace plembed
