#pragma once

// Four-point metric spaces: angle excess, Cayley-Menger determinant,
// embedding curvature (Wald) and embeddability certificates.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "plembed/spaceform.hpp"

namespace plembed {

/// Symmetric 4x4 distance matrix with zero diagonal.
class MetricQuadruple {
 public:
  /// Six distances in the order d12, d13, d14, d23, d24, d34.
  using Distances = std::array<double, 6>;

  /// Validated: positive off-diagonal entries, triangle inequality on every
  /// triple (to 1e-12 relative). Throws DomainError otherwise.
  explicit MetricQuadruple(const Distances& d);
  static MetricQuadruple from_matrix(const Eigen::Matrix4d& d);

  double operator()(int i, int j) const { return d_(i, j); }
  const Eigen::Matrix4d& matrix() const { return d_; }
  Distances distances() const;

  double max() const;
  double min() const;

  /// Triple (i, j, l) as a MetricTriple with d12 = d(i,j), d13 = d(i,l), d23 = d(j,l).
  MetricTriple triple(int i, int j, int l) const;

  /// Relabelled copy: point `perm[i]` of this quadruple becomes point i.
  MetricQuadruple permuted(const std::array<int, 4>& perm) const;

 private:
  MetricQuadruple(const Eigen::Matrix4d& d, int /*unchecked*/) : d_(d) {}

  Eigen::Matrix4d d_;
};

/// Bordered 5x5 Cayley-Menger determinant of the squared distances.
/// Equals 288 V^2 for four points of R^3; zero when they are coplanar.
double cayley_menger(const Eigen::Matrix4d& d);
inline double cayley_menger(const MetricQuadruple& q) { return cayley_menger(q.matrix()); }

/// Generalized Cayley-Menger function of the embedding curvature
///
///   F(k) = det [[ k/2, 1^T ], [ 1, S_k ]],  (S_k)_ij = 4 sn_k(d_ij / 2)^2.
///
/// F(0) is the Cayley-Menger determinant, and for k != 0
/// det(cos(sqrt(k) d_ij)) = (k/2)^3 F(k) (cosh for k < 0), so the nonzero
/// roots of F are exactly the roots of the curved determinant equations
/// with the trivial root at k = 0 divided out.
double curvature_determinant(const MetricQuadruple& q, Curvature k);

/// Determinant of the 4x4 matrix cos(sqrt(k) d_ij) (cosh(sqrt(-k) d_ij) for k < 0).
double cosine_matrix_determinant(const MetricQuadruple& q, Curvature k);

/// Apex angles at each point: angles[i][0..2] are
/// alpha(x_i; x_j, x_l), alpha(x_i; x_j, x_m), alpha(x_i; x_l, x_m)
/// with j < l < m the other three indices in increasing order.
using VertexAngles = std::array<std::array<double, 3>, 4>;

VertexAngles vertex_angles(const MetricQuadruple& q, Curvature k,
                           PerimeterBound bound = PerimeterBound::Scaled);

struct VertexExcess {
  std::array<double, 4> V{};  // sum of the three comparison angles at each point
  double A = 0.0;             // max of V
};

/// Throws DomainError if some triple is not embeddable at k.
VertexExcess vertex_excess(const MetricQuadruple& q, Curvature k,
                           PerimeterBound bound = PerimeterBound::Scaled);

/// True iff no point lies between two others (strict triangle inequality on
/// every ordered triple, with a 1e-12 * max d margin).
bool nondegenerate(const MetricQuadruple& q);

struct WaldOptions {
  int samples = 512;                   // scan points over the whole interval
  double kappa_cap = 0.0;              // |most negative k| scanned; 0 = 1e4 / min(d)^2
  double bisection_tol = 1e-12;        // |dk| <= tol * (1 + |k|)
  double flat_tol = 1e-9;              // |D| <= flat_tol * max(d)^8
  double minor_tol = 1e-9;             // order-3 principal minors >= -minor_tol
  double realization_tol = 1e-8;       // relative, for root re-validation
};

struct WaldRoot {
  double kappa = 0.0;
  double residual = 0.0;   // F(kappa) normalized by max(d)^6
  bool minors_ok = true;   // spherical branch only; always true otherwise
  bool realized = false;   // re-validated by realize_quadruple in dimension 2
};

enum class WaldClass { Flat, Spherical, Hyperbolic, Multiple, NoneFound };

std::string to_string(WaldClass c);

struct WaldResult {
  std::vector<WaldRoot> roots;      // validated roots, ascending
  std::vector<WaldRoot> rejected;   // sign changes that failed validation
  WaldClass classification = WaldClass::NoneFound;
  double kappa_min = 0.0;
  double kappa_max = 0.0;
  double cayley_menger = 0.0;
};

/// Embedding curvature of a nondegenerate quadruple. Throws DomainError
/// for degenerate input. Every reported root has been re-validated by
/// realizing the quadruple in S^2_k.
WaldResult wald_curvature(const MetricQuadruple& q, const WaldOptions& opts = {});

/// Signed slacks of the embeddability inequalities in S^3_k:
///   slacks[0]          = 2 pi - A_k(Q)
///   slacks[1 + 3i + j] = triangle inequality j at point i:
///     j = 0: a1 + a2 - a0,  j = 1: a0 + a2 - a1,  j = 2: a0 + a1 - a2
///   with (a0, a1, a2) = vertex_angles(q, k)[i].
struct EmbeddabilityCertificate {
  bool verdict = false;
  bool planar = false;
  std::array<double, 13> slacks{};
  std::optional<int> witness;  // first violated inequality when verdict is false
  double angle_tol = 1e-9;

  static std::string describe_inequality(int index);
};

/// An inequality counts as satisfied when its slack is >= -angle_tol, and an
/// angle-triangle inequality is tight (planar) when |slack| <= angle_tol.
EmbeddabilityCertificate s3_embeddability(const MetricQuadruple& q, Curvature k,
                                          double angle_tol = 1e-9,
                                          PerimeterBound bound = PerimeterBound::Scaled);

/// Coordinates of the four points in the model of S^dim_k (see
/// geodesic_distance for the ambient conventions).
struct QuadrupleRealization {
  Curvature kappa;
  int dim = 2;
  std::array<Eigen::VectorXd, 4> coords;
  double max_residual = 0.0;  // max |recomputed - given| distance
};

/// Places the four points in S^dim_k (dim = 2 or 3) or reports failure with
/// std::nullopt. Success requires every recomputed geodesic distance to
/// match within rel_tol * max d. Placement is deterministic: the first point
/// at the origin or pole, the second along the first tangent axis, and so on.
std::optional<QuadrupleRealization> realize_quadruple(const MetricQuadruple& q, Curvature k,
                                                      int dim, double rel_tol = 1e-8);

}  // namespace plembed
