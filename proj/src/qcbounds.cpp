#include "plembed/qcbounds.hpp"

#include <cctype>
#include <cmath>
#include <numeric>

#include "plembed/error.hpp"
#include "plembed/spaceform.hpp"

namespace plembed {

Rational Rational::make(std::int64_t num, std::int64_t den) {
  if (den == 0) throw DomainError("zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return Rational{num, den};
}

std::string Rational::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

Rational operator*(Rational a, Rational b) {
  const Rational x = Rational::make(a.num, b.den);
  const Rational y = Rational::make(b.num, a.den);
  return Rational::make(x.num * y.num, x.den * y.den);
}

Rational operator/(Rational a, Rational b) {
  if (b.num == 0) throw DomainError("division by zero");
  return a * Rational::make(b.den, b.num);
}

Angle Angle::radians(double r) {
  Angle a;
  a.radians_ = r;
  return a;
}

Angle Angle::pi_times(Rational q) {
  Angle a;
  a.radians_ = kPi * q.value();
  a.pi_ = q;
  return a;
}

Angle parse_angle(const std::string& text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c)) && c != '*') s += c;
  }
  const auto bad = [&] { return DomainError("cannot parse angle '" + text + "'"); };
  const auto pos = s.find("pi");
  if (pos == std::string::npos) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      throw bad();
    }
    if (used != s.size()) throw bad();
    return Angle::radians(v);
  }
  const auto integer = [&](const std::string& t) -> std::int64_t {
    if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos) throw bad();
    return std::stoll(t);
  };
  const std::string head = s.substr(0, pos);
  const std::string tail = s.substr(pos + 2);
  const std::int64_t num = head.empty() ? 1 : integer(head);
  std::int64_t den = 1;
  if (!tail.empty()) {
    if (tail[0] != '/') throw bad();
    den = integer(tail.substr(1));
  }
  if (den == 0) throw bad();
  return Angle::pi_times(Rational::make(num, den));
}

namespace {

void check_convex_angle(const Angle& a) {
  const double v = a.value();
  if (!(v > 0.0) || !std::isfinite(v)) throw DomainError("angles must be positive");
  const bool over = a.pi_multiple() ? a.pi_multiple()->num > a.pi_multiple()->den : v > kPi;
  if (over) {
    throw DomainError("angle exceeds pi: coefficients of non-convex wedges are not known");
  }
}

DilatationBounds from_ki(double ki, int n, std::optional<Rational> exact) {
  DilatationBounds b;
  b.K_I = ki;
  b.K = ki;
  b.K_O_lower = std::pow(ki, 1.0 / (n - 1));
  b.exact = exact;
  return b;
}

}  // namespace

DilatationBounds dihedral_wedge_coefficients(const DihedralWedgeSpec& spec) {
  if (spec.n < 2) throw DomainError("dimension must be at least 2");
  if (spec.n == 2) {
    if (spec.k != 0) throw DomainError("a plane wedge has type 0");
  } else if (spec.k < 1 || spec.k > spec.n - 2) {
    throw DomainError("wedge type must satisfy 1 <= k <= n - 2");
  }
  const auto count = static_cast<std::size_t>(spec.n - spec.k - 1);
  if (spec.angles.size() != count) {
    throw DomainError("a dihedral wedge of type " + std::to_string(spec.k) + " in dimension " +
                      std::to_string(spec.n) + " needs " + std::to_string(count) + " angles");
  }
  bool all_exact = true;
  Rational q = Rational::make(1, 1);
  double ki = 1.0;
  for (const Angle& a : spec.angles) {
    check_convex_angle(a);
    if (a.pi_multiple()) {
      q = q / *a.pi_multiple();
    } else {
      all_exact = false;
    }
    ki *= kPi / a.value();
  }
  if (all_exact) return from_ki(q.value(), spec.n, q);
  return from_ki(ki, spec.n, std::nullopt);
}

DilatationBounds convex_face_count_bound(int m, int n) {
  if (n < 2) throw DomainError("dimension must be at least 2");
  if (m <= n) throw DomainError("a convex polyhedron in R^n has at least n + 1 faces");
  const Rational q = Rational::make(m - n + 2, m - n);
  return from_ki(q.value(), n, q);
}

DilatationBounds folding_dilatation(const Angle& alpha, const Angle& beta) {
  for (const Angle& a : {alpha, beta}) {
    if (!(a.value() > 0.0) || !std::isfinite(a.value())) throw DomainError("angles must be positive");
  }
  if (alpha.pi_multiple() && beta.pi_multiple()) {
    Rational q = *alpha.pi_multiple() / *beta.pi_multiple();
    if (q.num < q.den) q = Rational::make(q.den, q.num);
    return from_ki(q.value(), 2, q);
  }
  const double r = alpha.value() / beta.value();
  return from_ki(std::max(r, 1.0 / r), 2, std::nullopt);
}

double uniform_index_bound(int n, double K_I) {
  if (n < 3) throw DomainError("the index bound needs n >= 3");
  if (!(K_I >= 1.0) || !std::isfinite(K_I)) throw DomainError("K_I must be a finite value >= 1");
  double p = 1.0;
  for (int i = 0; i < n - 1; ++i) p *= n;
  return p * K_I;
}

std::optional<Rational> uniform_index_bound_exact(int n, Rational K_I) {
  if (n < 3) throw DomainError("the index bound needs n >= 3");
  if (K_I.num < K_I.den) throw DomainError("K_I must be >= 1");
  std::int64_t p = 1;
  for (int i = 0; i < n - 1; ++i) {
    if (p > INT64_MAX / n) return std::nullopt;
    p *= n;
  }
  if (K_I.num != 0 && p > INT64_MAX / K_I.num) return std::nullopt;
  return Rational::make(p, 1) * K_I;
}

EdgeAngleReport mesh_edge_dilatation_bound(const PolyMesh& mesh, double min_angle) {
  EdgeAngleReport rep;
  for (const MeshEdge& e : mesh.edges()) {
    if (!e.second) {
      ++rep.boundary_edges;
      continue;
    }
    if (e.internal) continue;
    EdgeAngle ea;
    ea.u = e.u;
    ea.v = e.v;
    ea.alpha = mesh.dihedral_angle(e);
    ea.convex = ea.alpha <= kPi;
    if (ea.convex) {
      ea.contribution = kPi / ea.alpha;
      rep.bound = std::max(rep.bound.value_or(0.0), *ea.contribution);
      if (ea.alpha < min_angle) {
        ea.ill_conditioned = true;
        rep.warnings.push_back("edge " + std::to_string(e.u) + " " + std::to_string(e.v) +
                               " has a near-zero dihedral angle; its bound is ill-conditioned");
      }
    } else {
      rep.reflex.push_back(rep.edges.size());
    }
    rep.edges.push_back(ea);
  }
  return rep;
}

}  // namespace plembed
