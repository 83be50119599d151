#include <gtest/gtest.h>

#include <sstream>

#include "plembed/bzelement.hpp"
#include "plembed/error.hpp"
#include "support.hpp"

using namespace plembed;

namespace {

AcuteTriangle scaled(const AcuteTriangle& T, double s) {
  return AcuteTriangle::from_sides(s * T.sides[0], s * T.sides[1], s * T.sides[2]);
}

}  // namespace

TEST(Fold, Examples) {
  const auto p = FoldParams::make(kPi, 2 * kPi);
  const Polar y = standard_vertex_map(p, {0.5, kPi / 2});
  EXPECT_NEAR(y.rho, 0.25, 1e-15);
  EXPECT_NEAR(y.phi, kPi, 1e-15);
  const Polar apex = standard_vertex_map(p, {0.0, 1.0});
  EXPECT_EQ(apex.rho, 0.0);
  EXPECT_EQ(apex.phi, 0.0);
  EXPECT_THROW(standard_vertex_map(p, {1.0, 4.0}), DomainError);
  EXPECT_THROW(standard_vertex_map(p, {-1.0, 1.0}), DomainError);
  EXPECT_THROW(FoldParams::make(0.0, 1.0), DomainError);
}

TEST(Fold, EqualAnglesGiveTheIdentity) {
  const auto p = FoldParams::make(2.0, 2.0);
  for (double r : {0.1, 0.7, 3.0}) {
    const Polar y = standard_vertex_map(p, {r, 1.3});
    EXPECT_NEAR(y.rho, r, 1e-15);
    EXPECT_NEAR(y.phi, 1.3, 1e-15);
  }
}

TEST(Fold, ScaleFactor) {
  const auto p = FoldParams::make(kPi, kPi / 2, 3.0);
  const Polar y = standard_vertex_map(p, {4.0, kPi});
  EXPECT_NEAR(y.rho, 6.0, 1e-12);
  EXPECT_NEAR(y.phi, kPi / 2, 1e-15);
}

TEST(Fold, Contraction) {
  const Polar y = contraction_map(4 * kPi, {0.5, 2 * kPi});
  EXPECT_EQ(y.rho, 0.5);
  EXPECT_NEAR(y.phi, kPi, 1e-15);
  EXPECT_THROW(contraction_map(kPi, {0.5, 0.1}), DomainError);
}

TEST(Fold, LocallyConformal) {
  for (const auto& [theta, lambda] : {std::pair{kPi, 2 * kPi}, std::pair{3 * kPi, 2 * kPi}, std::pair{2 * kPi, kPi}}) {
    const auto p = FoldParams::make(theta, lambda);
    for (double r : {0.2, 0.9, 2.5}) {
      for (double f : {0.2, 0.5, 0.8}) {
        EXPECT_NEAR(fold_local_dilatation(p, {r, f * theta}), 1.0, 1e-6);
      }
    }
  }
}

TEST(AcuteTriangle, Layout) {
  const auto T = AcuteTriangle::from_sides(1.0, 1.1, 1.2);
  // Side p is opposite vertex p.
  EXPECT_NEAR((T.vertices[1] - T.vertices[2]).norm(), 1.0, 1e-14);
  EXPECT_NEAR((T.vertices[0] - T.vertices[2]).norm(), 1.1, 1e-14);
  EXPECT_NEAR((T.vertices[0] - T.vertices[1]).norm(), 1.2, 1e-14);
  EXPECT_NEAR(T.angles[0] + T.angles[1] + T.angles[2], kPi, 1e-14);
  for (const auto& v : T.vertices) EXPECT_NEAR((v - T.circumcenter).norm(), T.R, 1e-14);
  // Law of sines: side / sin(opposite angle) = 2R.
  for (int p = 0; p < 3; ++p) EXPECT_NEAR(T.sides[p] / std::sin(T.angles[p]), 2 * T.R, 1e-13);
  for (int p = 0; p < 3; ++p) {
    EXPECT_NEAR(T.apothems[p], std::sqrt(T.R * T.R - T.sides[p] * T.sides[p] / 4), 1e-14);
  }
}

TEST(AcuteTriangle, RejectsObtuseAndRight) {
  // Angle opposite the side 1.9: 100 degrees or so.
  EXPECT_THROW(AcuteTriangle::from_sides(1.9, 1.2, 1.2), DomainError);
  EXPECT_THROW(AcuteTriangle::from_sides(5.0, 3.0, 4.0), DomainError);
  EXPECT_THROW(AcuteTriangle::from_sides(1.0, 1.0, 3.0), DomainError);
}

TEST(CanonicalElement, EquilateralHeights) {
  const auto T = AcuteTriangle::from_sides(1, 1, 1);
  const auto e = canonical_element(T, scaled(T, 0.9));
  EXPECT_NEAR(e.h, 0.25166, 1e-5);
  for (double z : e.z) EXPECT_NEAR(z, 0.21794, 1e-5);
  EXPECT_NEAR(e.c, 0.9, 1e-15);
}

TEST(CanonicalElement, FlatWhenTrianglesCoincide) {
  const auto T = AcuteTriangle::from_sides(1.0, 1.1, 1.2);
  const auto e = canonical_element(T, T);
  EXPECT_EQ(e.h, 0.0);
  const auto d = isometry_defect(e, T);
  EXPECT_NEAR(d.max_defect, 0.0, 1e-14);
}

TEST(CanonicalElement, BoundaryAndApexAreIsometric) {
  const auto T = AcuteTriangle::from_sides(1.0, 1.1, 1.2);
  for (double s : {0.6, 0.9, 0.99}) {
    const auto e = canonical_element(T, scaled(T, s));
    // Face (B', a_k, E'_p) must be congruent to B A_k E_p.
    for (int p = 0; p < 3; ++p) {
      const int k = (p + 1) % 3;
      const auto& f = e.faces[2 * p];
      EXPECT_EQ(f[0], 6);
      EXPECT_EQ(f[1], k);
      EXPECT_EQ(f[2], 3 + p);
      EXPECT_NEAR((e.vertices[6] - e.vertices[k]).norm(), T.R, 1e-13);
      EXPECT_NEAR((e.vertices[k] - e.vertices[3 + p]).norm(), T.sides[p] / 2, 1e-13);
    }
    const auto d = isometry_defect(e, T);
    for (double x : d.boundary) EXPECT_LT(x, 1e-13);
    for (double x : d.apex) EXPECT_LT(x, 1e-13);
  }
}

TEST(CanonicalElement, PleatsProjectIntoThePrism) {
  const auto T = AcuteTriangle::from_sides(1.0, 1.05, 0.95);
  const auto t = scaled(T, 0.8);
  const auto e = canonical_element(T, t);
  for (const auto& v : e.vertices) {
    // Barycentric coordinates of the projection with respect to t.
    const Eigen::Vector2d q = v.head<2>();
    Eigen::Matrix2d m;
    m << t.vertices[1] - t.vertices[0], t.vertices[2] - t.vertices[0];
    const Eigen::Vector2d w = m.inverse() * (q - t.vertices[0]);
    EXPECT_GE(w(0), -1e-12);
    EXPECT_GE(w(1), -1e-12);
    EXPECT_LE(w(0) + w(1), 1 + 1e-12);
    EXPECT_GE(v.z(), 0.0);
  }
}

TEST(CanonicalElement, DefectShrinksAsCApproachesOne) {
  const auto T = AcuteTriangle::from_sides(1.0, 1.1, 1.2);
  double prev = 1e9;
  for (int k = 1; k <= 6; ++k) {
    const double c = 1 - std::pow(10.0, -k);
    const auto d = isometry_defect(canonical_element(T, scaled(T, c)), T);
    EXPECT_LT(d.max_defect, prev);
    prev = d.max_defect;
  }
  EXPECT_LE(prev, 1e-4);
}

TEST(CanonicalElement, Rejections) {
  const auto T = AcuteTriangle::from_sides(1.0, 1.1, 1.2);
  EXPECT_THROW(canonical_element(T, scaled(T, 1.1)), DomainError);
  EXPECT_THROW(canonical_element(T, scaled(T, 0.3)), DomainError);
  EXPECT_THROW(canonical_element(T, AcuteTriangle::from_sides(0.9, 0.9, 0.9)), DomainError);
  const auto e = canonical_element(T, scaled(T, 0.9));
  EXPECT_THROW(isometry_defect(e, AcuteTriangle::from_sides(1, 1, 1)), DomainError);
}

TEST(CanonicalElement, ObjOutput) {
  const auto T = AcuteTriangle::from_sides(1, 1, 1);
  const auto e = canonical_element(T, scaled(T, 0.9));
  std::ostringstream s;
  write_obj(s, e);
  std::istringstream in(s.str());
  std::string line;
  int v = 0;
  int f = 0;
  while (std::getline(in, line)) {
    if (line.rfind("v ", 0) == 0) ++v;
    if (line.rfind("f ", 0) == 0) {
      ++f;
      std::istringstream fl(line.substr(2));
      int a = 0;
      while (fl >> a) {
        EXPECT_GE(a, 1);
        EXPECT_LE(a, 7);
      }
    }
  }
  EXPECT_EQ(v, 7);
  EXPECT_EQ(f, 6);
}
