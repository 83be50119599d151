#include "plembed/spaceform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "plembed/error.hpp"

namespace plembed {

namespace {

constexpr double kLengthTol = 1e-12;  // relative, on side lengths
constexpr double kGuardBand = 1e-12;  // on the half-angle haversine

double perimeter_limit(Curvature k, PerimeterBound bound) {
  if (!k.spherical()) return std::numeric_limits<double>::infinity();
  return bound == PerimeterBound::Literal ? kTwoPi : kTwoPi / std::sqrt(k.kappa);
}

std::string describe(double a, double b, double c) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << a << ", " << b << ", " << c << ")";
  return os.str();
}

// Minkowski product with signature (+, -, -, ...).
double minkowski(const Eigen::VectorXd& p, const Eigen::VectorXd& q) {
  return p(0) * q(0) - p.tail(p.size() - 1).dot(q.tail(q.size() - 1));
}

void check_sides(Curvature k, double a, double b, double c, PerimeterBound bound) {
  if (!(std::isfinite(a) && std::isfinite(b) && std::isfinite(c)) || a < 0 || b <= 0 || c <= 0) {
    throw DomainError("side lengths must be finite and positive: " + describe(a, b, c));
  }
  const double tol = kLengthTol * std::max({a, b, c});
  if (a > b + c + tol || b > a + c + tol || c > a + b + tol) {
    throw DomainError("triangle inequality violated by " + describe(a, b, c));
  }
  if (k.spherical()) {
    if (std::sqrt(k.kappa) * std::max({a, b, c}) > kPi * (1 + kLengthTol)) {
      throw DomainError("side longer than pi/sqrt(kappa) in " + describe(a, b, c));
    }
    if (a + b + c > perimeter_limit(k, bound) * (1 + kLengthTol)) {
      throw DomainError("perimeter bound violated for kappa = " + std::to_string(k.kappa) +
                        " by " + describe(a, b, c));
    }
  }
}

}  // namespace

MetricTriple MetricTriple::make(double d12, double d13, double d23) {
  for (double d : {d12, d13, d23}) {
    if (!std::isfinite(d) || d <= 0) {
      throw DomainError("metric triple distances must be finite and positive: " +
                        describe(d12, d13, d23));
    }
  }
  check_sides(Curvature{0.0}, d23, d12, d13, PerimeterBound::Scaled);
  return {d12, d13, d23};
}

double MetricTriple::max() const { return std::max({d12, d13, d23}); }

double sn(Curvature k, double x) {
  if (k.flat()) return x;
  if (k.spherical()) {
    const double s = std::sqrt(k.kappa);
    return std::sin(s * x) / s;
  }
  const double s = std::sqrt(-k.kappa);
  return std::sinh(s * x) / s;
}

double geodesic_distance(Curvature k, const Eigen::VectorXd& p, const Eigen::VectorXd& q) {
  if (k.flat()) return (p - q).norm();
  if (k.spherical()) {
    const Eigen::VectorXd u = p.normalized();
    const Eigen::VectorXd v = q.normalized();
    return 2.0 * std::atan2((u - v).norm(), (u + v).norm()) / std::sqrt(k.kappa);
  }
  // <p-q, p-q> = -4 R^2 sinh^2(d sqrt(-k) / 2) on the hyperboloid of radius R.
  const double s = std::sqrt(-k.kappa);
  const Eigen::VectorXd diff = p - q;
  const double chord2 = std::max(0.0, -minkowski(diff, diff));
  return 2.0 * std::asinh(0.5 * std::sqrt(chord2) * s) / s;
}

double model_angle(Curvature k, const Eigen::VectorXd& apex, const Eigen::VectorXd& p,
                   const Eigen::VectorXd& q) {
  Eigen::VectorXd tp;
  Eigen::VectorXd tq;
  if (k.flat()) {
    tp = p - apex;
    tq = q - apex;
    return std::atan2(std::sqrt(std::max(0.0, tp.squaredNorm() * tq.squaredNorm() -
                                                  tp.dot(tq) * tp.dot(tq))),
                      tp.dot(tq));
  }
  if (k.spherical()) {
    const double n2 = apex.squaredNorm();
    tp = p - (apex.dot(p) / n2) * apex;
    tq = q - (apex.dot(q) / n2) * apex;
    const Eigen::VectorXd a = tp.normalized();
    const Eigen::VectorXd b = tq.normalized();
    return 2.0 * std::atan2((a - b).norm(), (a + b).norm());
  }
  const double n2 = minkowski(apex, apex);
  tp = p - (minkowski(apex, p) / n2) * apex;
  tq = q - (minkowski(apex, q) / n2) * apex;
  // Tangent vectors are spacelike; -<.,.> is positive definite on them.
  const double pp = -minkowski(tp, tp);
  const double qq = -minkowski(tq, tq);
  const double c = -minkowski(tp, tq) / std::sqrt(pp * qq);
  return std::acos(std::clamp(c, -1.0, 1.0));
}

bool triple_embeddable(Curvature k, const MetricTriple& t, PerimeterBound bound) {
  if (!k.spherical()) return true;
  if (std::sqrt(k.kappa) * t.max() > kPi * (1 + kLengthTol)) return false;
  return t.perimeter() <= perimeter_limit(k, bound) * (1 + kLengthTol);
}

double comparison_angle(Curvature k, double opposite, double b, double c, PerimeterBound bound) {
  check_sides(k, opposite, b, c, bound);
  const double tol = kLengthTol * std::max({opposite, b, c});
  if (std::abs(opposite - (b + c)) <= tol) return kPi;
  if (std::abs(b - (opposite + c)) <= tol || std::abs(c - (opposite + b)) <= tol) return 0.0;

  // Half-angle form of the law of cosines, uniform in k:
  //   sin^2(A/2) = [sn(a/2)^2 - sn((b-c)/2)^2] / (sn(b) sn(c))
  //   cos^2(A/2) = [sn((b+c)/2)^2 - sn(a/2)^2] / (sn(b) sn(c))
  const double half_a = sn(k, 0.5 * opposite);
  const double half_diff = sn(k, 0.5 * (b - c));
  const double half_sum = sn(k, 0.5 * (b + c));
  const double p = (half_a - half_diff) * (half_a + half_diff);
  const double m = (half_sum - half_a) * (half_sum + half_a);
  const double hav = p / (p + m);
  if (!(hav >= -kGuardBand && hav <= 1.0 + kGuardBand)) {
    throw DomainError("law of cosines out of range for sides " + describe(opposite, b, c));
  }
  return 2.0 * std::atan2(std::sqrt(std::max(p, 0.0)), std::sqrt(std::max(m, 0.0)));
}

namespace {

// Point at geodesic distance r from the base point, leaving it in tangent
// direction (cos phi, sin phi).
Eigen::Vector3d polar_point(Curvature k, double r, double phi) {
  if (k.flat()) return {r * std::cos(phi), r * std::sin(phi), 0.0};
  const double s = std::sqrt(std::abs(k.kappa));
  const double radius = 1.0 / s;
  const double radial = k.spherical() ? std::sin(s * r) : std::sinh(s * r);
  const double axial = k.spherical() ? std::cos(s * r) : std::cosh(s * r);
  return radius * Eigen::Vector3d(axial, radial * std::cos(phi), radial * std::sin(phi));
}

}  // namespace

ModelTriangle realize_triple(Curvature k, const MetricTriple& t, PerimeterBound bound) {
  if (!triple_embeddable(k, t, bound)) {
    throw DomainError("triple " + describe(t.d12, t.d13, t.d23) +
                      " is not embeddable at kappa = " + std::to_string(k.kappa));
  }
  const double apex = comparison_angle(k, t.d23, t.d12, t.d13, bound);
  ModelTriangle tri{k, t, {}};
  tri.coords[0] = polar_point(k, 0.0, 0.0);
  tri.coords[1] = polar_point(k, t.d12, 0.0);
  tri.coords[2] = polar_point(k, t.d13, apex);
  return tri;
}

}  // namespace plembed
