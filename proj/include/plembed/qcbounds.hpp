#pragma once

// Coefficients of quasiconformality of wedges and convex polyhedra, mesh
// dihedral-angle bounds, normalized link volumes and the index ceiling.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "plembed/mesh.hpp"

namespace plembed {

/// Reduced fraction num / den with den > 0.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational make(std::int64_t num, std::int64_t den);
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;

  friend Rational operator*(Rational a, Rational b);
  friend Rational operator/(Rational a, Rational b);
  friend bool operator==(const Rational&, const Rational&) = default;
};

/// An angle in radians, remembering an exact rational multiple of pi when
/// constructed from one. Ratios of such angles are then computed exactly.
class Angle {
 public:
  static Angle radians(double r);
  static Angle pi_times(Rational q);

  double value() const { return radians_; }
  const std::optional<Rational>& pi_multiple() const { return pi_; }

 private:
  double radians_ = 0.0;
  std::optional<Rational> pi_;
};

/// Parses "pi/3", "2pi/3", "2*pi/3", "pi" or a plain number of radians.
Angle parse_angle(const std::string& text);

struct DihedralWedgeSpec {
  int n = 3;                  // ambient dimension
  int k = 1;                  // wedge type, 1 <= k <= n - 2
  std::vector<Angle> angles;  // n - k - 1 angles in (0, pi]
};

struct DilatationBounds {
  double K_I = 1.0;
  double K_O_lower = 1.0;
  double K = 1.0;
  /// K_I (= K) as an exact fraction, when all inputs were exact.
  std::optional<Rational> exact;
};

/// K_I = pi^(n-k-1) / prod(alpha_i), K_O >= K_I^(1/(n-1)), K = K_I.
/// Throws DomainError for an angle outside (0, pi] (non-convex wedges have
/// unknown coefficients) or an inconsistent spec.
DilatationBounds dihedral_wedge_coefficients(const DihedralWedgeSpec& spec);

/// Lower bounds for a convex polyhedron in R^n with m faces:
/// K_I >= (m-n+2)/(m-n), K_O >= K_I^(1/(n-1)). Throws DomainError if m <= n.
DilatationBounds convex_face_count_bound(int m, int n);

/// Dilatation of the folding map between wedges of angles alpha and beta:
/// max(alpha/beta, beta/alpha).
DilatationBounds folding_dilatation(const Angle& alpha, const Angle& beta);

/// Strict ceiling n^(n-1) K_I on the infimum of the local index of a
/// quasiregular map. Throws DomainError for n < 3 or K_I < 1.
double uniform_index_bound(int n, double K_I);
std::optional<Rational> uniform_index_bound_exact(int n, Rational K_I);

struct EdgeAngle {
  int u = 0;
  int v = 0;
  double alpha = 0.0;                 // interior dihedral angle
  bool convex = true;                 // alpha <= pi
  std::optional<double> contribution; // pi / alpha; empty for reflex edges
  bool ill_conditioned = false;       // alpha below the conditioning threshold
};

struct EdgeAngleReport {
  std::vector<EdgeAngle> edges;   // interior edges in (u, v) order, fan diagonals omitted
  std::vector<std::size_t> reflex;  // indices into edges
  std::optional<double> bound;    // max of pi / alpha over convex edges
  std::size_t boundary_edges = 0;
  std::vector<std::string> warnings;
};

/// K(P) >= max pi / alpha over the convex dihedral angles of the mesh.
EdgeAngleReport mesh_edge_dilatation_bound(const PolyMesh& mesh, double min_angle = 1e-6);

enum class LinkMethod { Exact, MonteCarlo };

struct LinkVolumeOptions {
  LinkMethod method = LinkMethod::Exact;
  std::uint64_t samples = 1000000;
  std::uint64_t seed = 0x5eed;
  unsigned threads = 1;  // 0 = hardware concurrency
};

struct LinkVolume {
  double value = 0.0;     // solid angle / 4 pi
  double std_error = 0.0; // Monte Carlo only
  std::uint64_t samples = 0;
  double exterior = 0.0;  // normalized volume of the dual cone (convex corners)
  bool convex = true;
  int valence = 0;
};

/// Normalized volume (S^2 has volume 1) of the link of vertex v in the solid
/// bounded by the mesh. Throws DomainError when the faces around v do not
/// form a single cone (boundary or non-manifold vertex), and for Monte Carlo
/// on a non-convex corner.
LinkVolume normalized_link_volume(const PolyMesh& mesh, int v, const LinkVolumeOptions& opts = {});

}  // namespace plembed
