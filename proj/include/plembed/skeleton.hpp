#pragma once

// Curvature and compatibility checks on metric graphs (1-skeleta).
//
// For a vertex v, every 3-subset {a, b, c} of its neighbours gives a metric
// quadruple (v, a, b, c) whose distances are the shortest-path distances of
// the whole graph. The local system checked at v, per quadruple, is
//   (1) A_0(Q) <= 2 pi,
//   (2) the three kappa = 0 comparison angles at v satisfy the triangle
//       inequality,
//   (3) V_kappa(v) <= 2 pi at the prescribed kappa.
// (1) and (2) are the extrinsic conditions for embedding the star in R^3;
// (3) encodes the prescribed intrinsic curvature at v.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "plembed/graph.hpp"
#include "plembed/quadruple.hpp"

namespace plembed {

struct StarQuadruple {
  VertexId base = 0;
  std::array<VertexId, 3> neighbors{};  // ascending ids
  MetricQuadruple distances;            // point 0 is the base
};

/// One item per 3-subset of neighbours of v, in lexicographic order of
/// neighbour ids. Throws DomainError for an unknown vertex.
std::vector<StarQuadruple> star_quadruples(const MetricGraph& g, VertexId v);

struct RegionWitness {
  std::size_t quadruple = 0;  // index into the input list
  int point = 0;              // 0..3 within the quadruple
  double excess = 0.0;        // V_kappa at that point
};

struct RegionResult {
  bool verdict = true;
  std::optional<RegionWitness> witness;
  std::vector<std::size_t> skipped;  // degenerate quadruples, by index
};

/// True iff V_kappa <= 2 pi (+ angle_tol) at all four points of every
/// nondegenerate quadruple. Degenerate quadruples are skipped and listed.
RegionResult region_of_curvature(const std::vector<StarQuadruple>& quads, Curvature k,
                                 double angle_tol = 1e-9,
                                 PerimeterBound bound = PerimeterBound::Scaled);

/// Index of an inequality of the local system within a quadruple check.
enum class Condition { ExtrinsicExcess = 1, AngleTriangle = 2, IntrinsicExcess = 3 };

struct QuadrupleCheck {
  std::array<VertexId, 3> neighbors{};
  bool degenerate = false;
  /// Certificate of the whole quadruple at kappa = 0 (empty when degenerate).
  std::optional<EmbeddabilityCertificate> certificate;
  /// 2 pi - V_kappa(v) at the prescribed kappa.
  double intrinsic_slack = 0.0;
  /// Slacks of the local system in order: (1), (2) x 3, (3).
  std::array<double, 5> slacks{};
  bool satisfied = true;
};

struct Witness {
  VertexId vertex = 0;
  std::size_t quadruple = 0;  // index within that vertex's star list
  Condition condition = Condition::ExtrinsicExcess;
  int inequality = 0;         // 0..4 into QuadrupleCheck::slacks
  double slack = 0.0;
};

struct VertexReport {
  VertexId vertex = 0;
  double kappa = 0.0;
  bool verdict = true;
  double max_a0 = 0.0;  // max of A_0 over the nondegenerate star quadruples
  std::vector<QuadrupleCheck> quadruples;
  std::size_t skipped = 0;
  std::optional<Witness> witness;
};

struct CompatibilityReport {
  bool verdict = true;
  std::vector<VertexReport> vertices;  // ascending vertex id
  std::optional<Witness> witness;      // first failing vertex's witness
};

struct CompatibilityOptions {
  double angle_tol = 1e-9;
  PerimeterBound bound = PerimeterBound::Scaled;
};

/// Local system at v. Throws DomainError (naming v and the quadruple) when
/// a quadruple is not admissible at the prescribed kappa.
VertexReport local_compatibility(const MetricGraph& g, VertexId v, Curvature k,
                                 const CompatibilityOptions& opts = {});

/// Local system at every vertex, vertices in id order. `kappa` must have an
/// entry for every vertex; throws DomainError naming the first missing one.
/// Vertices are checked on up to `threads` worker threads (0 = hardware
/// concurrency); the report does not depend on the thread count.
CompatibilityReport global_compatibility(const MetricGraph& g,
                                         const std::map<VertexId, double>& kappa,
                                         const CompatibilityOptions& opts = {},
                                         unsigned threads = 1);

CompatibilityReport global_compatibility(const MetricGraph& g, Curvature k,
                                         const CompatibilityOptions& opts = {},
                                         unsigned threads = 1);

/// Three consecutive polyline points p0, p1, p2: chord lengths |p0p1|,
/// |p1p2| and the end-to-end distance |p0p2|.
struct CurveTriple {
  double first = 0.0;
  double second = 0.0;
  double span = 0.0;

  /// Validated: positive lengths satisfying the triangle inequality.
  static CurveTriple make(double first, double second, double span);
};

enum class CurveCurvature { Menger, FinslerHaantjes };

/// Menger: reciprocal circumradius 4 Area / (a b l), 0 for collinear points.
/// Finsler-Haantjes (discrete surrogate): sqrt(8 (s - l) / (a b l)) with
/// s = a + b, from the second-order arc-versus-chord expansion of a curve
/// through the three points.
double polyline_curvature(const CurveTriple& t, CurveCurvature mode);

}  // namespace plembed
