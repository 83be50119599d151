#include "plembed/bzelement.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>

#include <Eigen/SVD>

#include "plembed/error.hpp"
#include "plembed/spaceform.hpp"

namespace plembed {

namespace {

Polar fold(const FoldParams& p, double rho, double phi) {
  const double e = p.lambda / p.theta;
  if (rho == 0.0) return {0.0, 0.0};
  return {p.a * std::pow(rho, e), e * phi};
}

// |a^2 - b^2| / 4 without cancellation, as a square root argument.
double half_leg(double hyp, double leg) { return 0.5 * std::sqrt((hyp - leg) * (hyp + leg)); }

}  // namespace

FoldParams FoldParams::make(double theta, double lambda, double a) {
  for (double x : {theta, lambda, a}) {
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("fold parameters must be positive");
  }
  return FoldParams{theta, lambda, a};
}

Polar standard_vertex_map(const FoldParams& p, Polar x) {
  if (!(x.rho >= 0.0) || !std::isfinite(x.rho)) throw DomainError("rho must be nonnegative");
  if (!(x.phi >= 0.0 && x.phi <= p.theta)) throw DomainError("phi must lie in [0, theta]");
  return fold(p, x.rho, x.phi);
}

Polar contraction_map(double theta, Polar x) {
  if (!(theta > kTwoPi) || !std::isfinite(theta)) {
    throw DomainError("the contraction applies to cone angles above 2 pi");
  }
  if (!(x.rho >= 0.0) || !std::isfinite(x.rho)) throw DomainError("rho must be nonnegative");
  if (!(x.phi >= 0.0 && x.phi <= theta)) throw DomainError("phi must lie in [0, theta]");
  return {x.rho, kTwoPi / theta * x.phi};
}

double fold_local_dilatation(const FoldParams& p, Polar x, double step) {
  if (!(x.rho > 0.0)) throw DomainError("the fold is not conformal at the apex");
  const Polar y = fold(p, x.rho, x.phi);
  const auto chart = [&](double u, double v) -> Eigen::Vector2d {
    const double rho = std::hypot(x.rho + u, v);
    const double phi = x.phi + std::atan2(v, x.rho + u);
    const Polar img = fold(p, rho, phi);
    return {img.rho * std::cos(img.phi - y.phi), img.rho * std::sin(img.phi - y.phi)};
  };
  Eigen::Matrix2d J;
  J.col(0) = (chart(step, 0.0) - chart(-step, 0.0)) / (2.0 * step);
  J.col(1) = (chart(0.0, step) - chart(0.0, -step)) / (2.0 * step);
  const Eigen::Vector2d s = Eigen::JacobiSVD<Eigen::Matrix2d>(J).singularValues();
  return s(0) / s(1);
}

AcuteTriangle AcuteTriangle::from_sides(double s0, double s1, double s2) {
  for (double s : {s0, s1, s2}) {
    if (!(s > 0.0) || !std::isfinite(s)) throw DomainError("triangle sides must be positive");
  }
  AcuteTriangle t;
  t.sides = {s0, s1, s2};
  for (int p = 0; p < 3; ++p) {
    const double a = t.sides[p];
    const double b = t.sides[(p + 1) % 3];
    const double c = t.sides[(p + 2) % 3];
    if (a >= b + c) throw DomainError("triangle sides violate the triangle inequality");
    if (a * a >= b * b + c * c) {
      throw DomainError("triangle is not acute (angle at vertex " + std::to_string(p) + " >= pi/2)");
    }
    t.angles[p] = comparison_angle(Curvature{0.0}, a, b, c);
  }
  const double x = (s2 * s2 + s1 * s1 - s0 * s0) / (2.0 * s2);
  t.vertices = {Eigen::Vector2d(0.0, 0.0), Eigen::Vector2d(s2, 0.0),
                Eigen::Vector2d(x, std::sqrt(std::max(0.0, s1 * s1 - x * x)))};
  // Circumcenter: on x = s2/2, equidistant from A_0 and A_2.
  const Eigen::Vector2d& c = t.vertices[2];
  const double cx = 0.5 * s2;
  const double cy = (c.squaredNorm() - 2.0 * cx * c.x()) / (2.0 * c.y());
  t.circumcenter = {cx, cy};
  t.R = s0 / (2.0 * std::sin(t.angles[0]));
  for (int p = 0; p < 3; ++p) {
    t.midpoints[p] = 0.5 * (t.vertices[(p + 1) % 3] + t.vertices[(p + 2) % 3]);
    t.apothems[p] = (t.circumcenter - t.midpoints[p]).norm();
  }
  return t;
}

PleatedElement canonical_element(const AcuteTriangle& T, const AcuteTriangle& t,
                                 const SimilarityOptions& opts) {
  PleatedElement e;
  e.source_sides = T.sides;
  for (int p = 0; p < 3; ++p) {
    if (!(T.angles[p] > opts.min_angle)) {
      throw DomainError("angle " + std::to_string(p) + " of T is below the minimum angle");
    }
    if (std::abs(T.angles[p] - t.angles[p]) > opts.angle_tol) {
      throw DomainError("T and t are not almost similar (angle " + std::to_string(p) + ")");
    }
    e.ratios[p] = t.sides[p] / T.sides[p];
    if (e.ratios[p] > 1.0) {
      throw DomainError("side " + std::to_string(p) + " of t is longer than the matching side of T");
    }
    if (e.ratios[p] < opts.c_min) {
      throw DomainError("side ratio " + std::to_string(p) + " is below the minimum");
    }
  }
  if (t.R > T.R) throw DomainError("circumradius of t exceeds that of T");
  e.c = (e.ratios[0] + e.ratios[1] + e.ratios[2]) / 3.0;

  e.h = std::sqrt((T.R - t.R) * (T.R + t.R));
  for (int p = 0; p < 3; ++p) {
    e.z[p] = half_leg(T.sides[p], t.sides[p]);
    e.vertices[p] = {t.vertices[p].x(), t.vertices[p].y(), 0.0};
    e.vertices[3 + p] = {t.midpoints[p].x(), t.midpoints[p].y(), e.z[p]};
  }
  e.vertices[6] = {t.circumcenter.x(), t.circumcenter.y(), e.h};
  for (int p = 0; p < 3; ++p) {
    const int k = (p + 1) % 3;
    const int l = (p + 2) % 3;
    e.faces[2 * p] = {6, k, 3 + p};
    e.faces[2 * p + 1] = {6, 3 + p, l};
  }
  return e;
}

DefectReport isometry_defect(const PleatedElement& e, const AcuteTriangle& T) {
  for (int p = 0; p < 3; ++p) {
    if (std::abs(e.source_sides[p] - T.sides[p]) > 1e-12 * T.sides[p]) {
      throw DomainError("element was not built for this triangle");
    }
  }
  DefectReport r;
  r.c = e.c;
  const Eigen::Vector3d& apex = e.vertices[6];
  for (int p = 0; p < 3; ++p) {
    const int k = (p + 1) % 3;
    const int l = (p + 2) % 3;
    const Eigen::Vector3d& ep = e.vertices[3 + p];
    const double half = 0.5 * T.sides[p];
    r.pleat[p] = std::abs((apex - ep).norm() - T.apothems[p]);
    r.boundary[2 * p] = std::abs((e.vertices[k] - ep).norm() - half);
    r.boundary[2 * p + 1] = std::abs((ep - e.vertices[l]).norm() - half);
    r.apex[p] = std::abs((apex - e.vertices[p]).norm() - T.R);
    r.max_defect = std::max(r.max_defect, r.pleat[p]);
  }
  return r;
}

void write_obj(std::ostream& out, const PleatedElement& e) {
  const auto flags = out.flags();
  const auto prec = out.precision();
  out << std::setprecision(17);
  out << "# pleated construction element: a0 a1 a2 E'0 E'1 E'2 B'\n";
  for (const auto& v : e.vertices) out << "v " << v.x() << ' ' << v.y() << ' ' << v.z() << '\n';
  for (const auto& f : e.faces) out << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
  out.flags(flags);
  out.precision(prec);
}

}  // namespace plembed
