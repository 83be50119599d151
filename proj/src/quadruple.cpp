#include "plembed/quadruple.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/QR>

#include "plembed/error.hpp"

namespace plembed {

namespace {

constexpr std::array<std::array<int, 2>, 6> kPairs{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

// The three indices other than i, ascending.
std::array<int, 3> others(int i) {
  std::array<int, 3> out{};
  int n = 0;
  for (int j = 0; j < 4; ++j) {
    if (j != i) out[n++] = j;
  }
  return out;
}

void validate(const Eigen::Matrix4d& d) {
  for (int i = 0; i < 4; ++i) {
    if (d(i, i) != 0.0) throw DomainError("distance matrix must have a zero diagonal");
    for (int j = i + 1; j < 4; ++j) {
      if (!std::isfinite(d(i, j)) || d(i, j) <= 0.0) {
        throw DomainError("quadruple distances must be finite and positive");
      }
      if (d(i, j) != d(j, i)) throw DomainError("distance matrix must be symmetric");
    }
  }
  const double tol = 1e-12 * d.maxCoeff();
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      for (int l = 0; l < 4; ++l) {
        if (i == j || j == l || i == l) continue;
        if (d(i, l) > d(i, j) + d(j, l) + tol) {
          std::ostringstream os;
          os << "triangle inequality violated: d(" << i + 1 << "," << l + 1 << ") > d(" << i + 1
             << "," << j + 1 << ") + d(" << j + 1 << "," << l + 1 << ")";
          throw DomainError(os.str());
        }
      }
    }
  }
}

Eigen::Matrix4d from_distances(const MetricQuadruple::Distances& d) {
  Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
  for (std::size_t p = 0; p < kPairs.size(); ++p) {
    m(kPairs[p][0], kPairs[p][1]) = d[p];
    m(kPairs[p][1], kPairs[p][0]) = d[p];
  }
  return m;
}

double det5(const Eigen::Matrix<double, 5, 5>& m) {
  return Eigen::FullPivLU<Eigen::Matrix<double, 5, 5>>(m).determinant();
}

// det [[k/2, 1^T], [1, S_k]] after dividing S_k by its largest entry `scale`.
// The true value is scale^3 times the result; the sign is unaffected.
double scaled_curvature_determinant(const MetricQuadruple& q, Curvature k, double& scale) {
  Eigen::Matrix4d s = Eigen::Matrix4d::Zero();
  for (const auto& [i, j] : kPairs) {
    const double h = sn(k, 0.5 * q(i, j));
    s(i, j) = s(j, i) = 4.0 * h * h;
  }
  scale = s.maxCoeff();
  Eigen::Matrix<double, 5, 5> m;
  m(0, 0) = 0.5 * k.kappa * scale;
  m.block<1, 4>(0, 1).setOnes();
  m.block<4, 1>(1, 0).setOnes();
  m.block<4, 4>(1, 1) = s / scale;
  return det5(m);
}

Eigen::Matrix4d cosine_matrix(const MetricQuadruple& q, Curvature k) {
  Eigen::Matrix4d c;
  const double s = std::sqrt(std::abs(k.kappa));
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (k.spherical()) {
        c(i, j) = std::cos(s * q(i, j));
      } else if (k.hyperbolic()) {
        c(i, j) = std::cosh(s * q(i, j));
      } else {
        c(i, j) = 1.0;
      }
    }
  }
  return c;
}

bool principal_minors_ok(const MetricQuadruple& q, Curvature k, double tol) {
  const Eigen::Matrix4d c = cosine_matrix(q, k);
  for (int skip = 0; skip < 4; ++skip) {
    const auto idx = others(skip);
    Eigen::Matrix3d m;
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) m(a, b) = c(idx[a], idx[b]);
    }
    if (m.determinant() < -tol) return false;
  }
  return true;
}

}  // namespace

MetricQuadruple::MetricQuadruple(const Distances& d) : d_(from_distances(d)) { validate(d_); }

MetricQuadruple MetricQuadruple::from_matrix(const Eigen::Matrix4d& d) {
  validate(d);
  MetricQuadruple q(d, 0);
  return q;
}

MetricQuadruple::Distances MetricQuadruple::distances() const {
  Distances out{};
  for (std::size_t p = 0; p < kPairs.size(); ++p) out[p] = d_(kPairs[p][0], kPairs[p][1]);
  return out;
}

double MetricQuadruple::max() const { return d_.maxCoeff(); }

double MetricQuadruple::min() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& [i, j] : kPairs) m = std::min(m, d_(i, j));
  return m;
}

MetricTriple MetricQuadruple::triple(int i, int j, int l) const {
  return {d_(i, j), d_(i, l), d_(j, l)};
}

MetricQuadruple MetricQuadruple::permuted(const std::array<int, 4>& perm) const {
  Eigen::Matrix4d m;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) m(i, j) = d_(perm[i], perm[j]);
  }
  return from_matrix(m);
}

double cayley_menger(const Eigen::Matrix4d& d) {
  Eigen::Matrix<double, 5, 5> m;
  m(0, 0) = 0.0;
  m.block<1, 4>(0, 1).setOnes();
  m.block<4, 1>(1, 0).setOnes();
  m.block<4, 4>(1, 1) = d.cwiseProduct(d);
  return det5(m);
}

double curvature_determinant(const MetricQuadruple& q, Curvature k) {
  double scale = 1.0;
  const double det = scaled_curvature_determinant(q, k, scale);
  return det * scale * scale * scale;
}

double cosine_matrix_determinant(const MetricQuadruple& q, Curvature k) {
  return cosine_matrix(q, k).determinant();
}

VertexAngles vertex_angles(const MetricQuadruple& q, Curvature k, PerimeterBound bound) {
  VertexAngles out{};
  for (int i = 0; i < 4; ++i) {
    const auto [j, l, m] = others(i);
    out[i][0] = comparison_angle(k, q(j, l), q(i, j), q(i, l), bound);
    out[i][1] = comparison_angle(k, q(j, m), q(i, j), q(i, m), bound);
    out[i][2] = comparison_angle(k, q(l, m), q(i, l), q(i, m), bound);
  }
  return out;
}

VertexExcess vertex_excess(const MetricQuadruple& q, Curvature k, PerimeterBound bound) {
  const VertexAngles angles = vertex_angles(q, k, bound);
  VertexExcess ex;
  for (int i = 0; i < 4; ++i) ex.V[i] = angles[i][0] + angles[i][1] + angles[i][2];
  ex.A = *std::max_element(ex.V.begin(), ex.V.end());
  return ex;
}

bool nondegenerate(const MetricQuadruple& q) {
  const double tol = 1e-12 * q.max();
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      for (int l = 0; l < 4; ++l) {
        if (i == j || j == l || i == l) continue;
        if (q(i, l) >= q(i, j) + q(j, l) - tol) return false;
      }
    }
  }
  return true;
}

std::string to_string(WaldClass c) {
  switch (c) {
    case WaldClass::Flat: return "flat";
    case WaldClass::Spherical: return "spherical";
    case WaldClass::Hyperbolic: return "hyperbolic";
    case WaldClass::Multiple: return "multiple";
    case WaldClass::NoneFound: return "none-found";
  }
  return "none-found";
}

WaldResult wald_curvature(const MetricQuadruple& q, const WaldOptions& opts) {
  if (!nondegenerate(q)) throw DomainError("wald_curvature requires a nondegenerate quadruple");
  if (opts.samples < 4) throw DomainError("wald_curvature needs at least 4 scan samples");

  const double dmax = q.max();
  const double dmin = q.min();
  const double d6 = std::pow(dmax, 6);

  WaldResult res;
  res.cayley_menger = cayley_menger(q);
  res.kappa_max = (kPi / dmax) * (kPi / dmax);
  double cap = opts.kappa_cap > 0 ? opts.kappa_cap : 1e4 / (dmin * dmin);
  // Keep cosh(sqrt(-k) d) well inside double range.
  cap = std::min(cap, (60.0 / dmax) * (60.0 / dmax));
  res.kappa_min = -cap;

  const bool flat = std::abs(res.cayley_menger) <= opts.flat_tol * std::pow(dmax, 8);
  const double near_zero = 1e-6 / (dmax * dmax);

  // Log-symmetric grid: geometric on each side of zero, zero in the middle.
  const int half = opts.samples / 2;
  std::vector<double> grid;
  grid.reserve(2 * half + 1);
  for (int s = 0; s < half; ++s) {
    const double t = static_cast<double>(s) / (half - 1);
    grid.push_back(-cap * std::pow(near_zero / cap, t));
  }
  grid.push_back(0.0);
  for (int s = 0; s < half; ++s) {
    const double t = static_cast<double>(s) / (half - 1);
    grid.push_back(near_zero * std::pow(res.kappa_max / near_zero, t));
  }

  // Signed log-magnitude of F; only its sign and local ordering are used.
  struct Sample {
    double kappa;
    int sign;
    double log_abs;
  };
  auto sample = [&](double k) {
    double scale = 1.0;
    const double v = scaled_curvature_determinant(q, Curvature{k}, scale);
    const int sg = (v > 0) - (v < 0);
    return Sample{k, sg, sg ? std::log(std::abs(v)) + 3.0 * std::log(scale) : -HUGE_VAL};
  };

  auto validate_root = [&](double k) {
    WaldRoot r;
    r.kappa = k;
    r.residual = curvature_determinant(q, Curvature{k}) / d6;
    if (k > 0) r.minors_ok = principal_minors_ok(q, Curvature{k}, opts.minor_tol);
    r.realized = realize_quadruple(q, Curvature{k}, 2, opts.realization_tol).has_value();
    (r.minors_ok && r.realized ? res.roots : res.rejected).push_back(r);
  };

  auto bisect = [&](Sample lo, Sample hi) {
    double a = lo.kappa;
    double b = hi.kappa;
    while (b - a > opts.bisection_tol * (1.0 + std::max(std::abs(a), std::abs(b)))) {
      const double mid = 0.5 * (a + b);
      if (mid <= a || mid >= b) break;
      const int sm = sample(mid).sign;
      if (sm == 0) return mid;
      if (sm == lo.sign) {
        a = mid;
      } else {
        b = mid;
      }
    }
    return 0.5 * (a + b);
  };

  auto skip_near_zero = [&](double k) { return flat && std::abs(k) <= near_zero; };

  auto golden_min = [&](double a, double b) {
    constexpr double kInvPhi = 0.6180339887498949;
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double fc = sample(c).log_abs;
    double fd = sample(d).log_abs;
    for (int it = 0; it < 200 && b - a > opts.bisection_tol * (1.0 + std::abs(a)); ++it) {
      if (fc < fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - kInvPhi * (b - a);
        fc = sample(c).log_abs;
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + kInvPhi * (b - a);
        fd = sample(d).log_abs;
      }
    }
    return 0.5 * (a + b);
  };

  // Sign changes are bisected. A local minimum of |F| without a sign change
  // may hide a close pair of roots; its neighbourhood is resampled more
  // finely, a few levels deep.
  constexpr int kRefineSamples = 32;
  constexpr int kRefineDepth = 4;
  std::vector<double> candidates;
  auto scan = [&](auto&& self, const std::vector<double>& ks, int depth) -> void {
    std::vector<Sample> f;
    f.reserve(ks.size());
    for (double k : ks) f.push_back(sample(k));
    for (std::size_t g = 0; g < f.size(); ++g) {
      if (f[g].sign == 0 && !skip_near_zero(f[g].kappa)) candidates.push_back(f[g].kappa);
      if (g + 1 < f.size() && f[g].sign != 0 && f[g + 1].sign != 0 && f[g].sign != f[g + 1].sign) {
        if (skip_near_zero(f[g].kappa) && skip_near_zero(f[g + 1].kappa)) continue;
        const double root = bisect(f[g], f[g + 1]);
        if (!skip_near_zero(root)) candidates.push_back(root);
      }
      // Local minimum of |F| between same-signed neighbours; at the ends of
      // the grid only the inner neighbour is compared.
      const std::size_t lo = g > 0 ? g - 1 : g;
      const std::size_t hi = g + 1 < f.size() ? g + 1 : g;
      const bool local_min = f.size() > 2 && f[g].sign != 0 && f[lo].sign == f[g].sign &&
                             f[hi].sign == f[g].sign && (lo == g || f[g].log_abs < f[lo].log_abs) &&
                             (hi == g || f[g].log_abs < f[hi].log_abs);
      if (!local_min) continue;
      if (depth == kRefineDepth) {
        // Tangent root candidate: minimize |F| and let realization decide.
        const double k = golden_min(f[lo].kappa, f[hi].kappa);
        const Sample at = sample(k);
        if (!skip_near_zero(k) && (at.sign == 0 || std::exp(at.log_abs) <= opts.flat_tol * d6)) {
          candidates.push_back(k);
        }
      } else {
        std::vector<double> fine(kRefineSamples + 1);
        for (int s = 0; s <= kRefineSamples; ++s) {
          fine[s] = f[lo].kappa + (f[hi].kappa - f[lo].kappa) * s / kRefineSamples;
        }
        self(self, fine, depth + 1);
      }
    }
  };
  scan(scan, grid, 0);

  std::sort(candidates.begin(), candidates.end());
  if (flat) validate_root(0.0);
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    // Refinement windows overlap the coarse cells; drop duplicates.
    if (c > 0 && candidates[c] - candidates[c - 1] <=
                     1e3 * opts.bisection_tol * (1.0 + std::abs(candidates[c]))) {
      continue;
    }
    validate_root(candidates[c]);
  }

  std::sort(res.roots.begin(), res.roots.end(),
            [](const WaldRoot& a, const WaldRoot& b) { return a.kappa < b.kappa; });

  if (res.roots.empty()) {
    res.classification = WaldClass::NoneFound;
  } else if (std::any_of(res.roots.begin(), res.roots.end(),
                         [](const WaldRoot& r) { return r.kappa == 0.0; })) {
    // D(Q) = 0 takes precedence over any curved root.
    res.classification = WaldClass::Flat;
  } else if (res.roots.size() > 1) {
    res.classification = WaldClass::Multiple;
  } else {
    res.classification = res.roots.front().kappa > 0 ? WaldClass::Spherical : WaldClass::Hyperbolic;
  }
  return res;
}

std::string EmbeddabilityCertificate::describe_inequality(int index) {
  if (index == 0) return "A_kappa(Q) <= 2 pi";
  const int i = (index - 1) / 3;
  const int j = (index - 1) % 3;
  static constexpr const char* kForms[3] = {"a1 + a2 >= a0", "a0 + a2 >= a1", "a0 + a1 >= a2"};
  return "angle triangle inequality at point " + std::to_string(i + 1) + ": " + kForms[j];
}

EmbeddabilityCertificate s3_embeddability(const MetricQuadruple& q, Curvature k, double angle_tol,
                                          PerimeterBound bound) {
  if (!nondegenerate(q)) throw DomainError("s3_embeddability requires a nondegenerate quadruple");
  const VertexAngles a = vertex_angles(q, k, bound);

  EmbeddabilityCertificate cert;
  cert.angle_tol = angle_tol;
  double big_a = 0.0;
  for (int i = 0; i < 4; ++i) big_a = std::max(big_a, a[i][0] + a[i][1] + a[i][2]);
  cert.slacks[0] = kTwoPi - big_a;
  for (int i = 0; i < 4; ++i) {
    cert.slacks[1 + 3 * i + 0] = a[i][1] + a[i][2] - a[i][0];
    cert.slacks[1 + 3 * i + 1] = a[i][0] + a[i][2] - a[i][1];
    cert.slacks[1 + 3 * i + 2] = a[i][0] + a[i][1] - a[i][2];
  }
  for (int s = 0; s < static_cast<int>(cert.slacks.size()); ++s) {
    if (cert.slacks[s] < -angle_tol) {
      cert.witness = s;
      break;
    }
  }
  cert.verdict = !cert.witness.has_value();
  if (cert.verdict) {
    for (int s = 1; s < static_cast<int>(cert.slacks.size()); ++s) {
      if (std::abs(cert.slacks[s]) <= angle_tol) cert.planar = true;
    }
  }
  return cert;
}

namespace {

double minkowski(const Eigen::VectorXd& p, const Eigen::VectorXd& q) {
  return p(0) * q(0) - p.tail(p.size() - 1).dot(q.tail(q.size() - 1));
}

// Rotates the columns of `x` (points as columns) so that they become the R
// factor of a QR decomposition with nonnegative diagonal: the first point
// along the first axis, the second in the span of the first two, ...
Eigen::MatrixXd canonical_frame(const Eigen::MatrixXd& x) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(x);
  Eigen::MatrixXd r = qr.householderQ().transpose() * x;
  for (Eigen::Index row = 0; row < r.rows(); ++row) {
    const Eigen::Index col = std::min<Eigen::Index>(row, r.cols() - 1);
    if (r(row, col) < 0) r.row(row) *= -1.0;
  }
  // Entries below the staircase are rounding noise.
  for (Eigen::Index c = 0; c < r.cols(); ++c) {
    for (Eigen::Index row = c + 1; row < r.rows(); ++row) r(row, c) = 0.0;
  }
  return r;
}

}  // namespace

std::optional<QuadrupleRealization> realize_quadruple(const MetricQuadruple& q, Curvature k,
                                                      int dim, double rel_tol) {
  if (dim != 2 && dim != 3) throw DomainError("realize_quadruple supports dim 2 or 3");
  if (k.spherical() && std::sqrt(k.kappa) * q.max() > kPi * (1 + 1e-12)) return std::nullopt;

  QuadrupleRealization out;
  out.kappa = k;
  out.dim = dim;
  const double s = std::sqrt(std::abs(k.kappa));

  if (k.flat()) {
    Eigen::Matrix3d gram;
    for (int i = 1; i < 4; ++i) {
      for (int j = 1; j < 4; ++j) {
        gram(i - 1, j - 1) = 0.5 * (q(0, i) * q(0, i) + q(0, j) * q(0, j) - q(i, j) * q(i, j));
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(gram);
    // Eigenvalues ascending; keep the `dim` largest.
    Eigen::MatrixXd x(dim, 3);
    for (int c = 0; c < dim; ++c) {
      const int e = 2 - c;
      x.row(c) = std::sqrt(std::max(0.0, eig.eigenvalues()(e))) * eig.eigenvectors().col(e).transpose();
    }
    const Eigen::MatrixXd r = canonical_frame(x);
    out.coords[0] = Eigen::VectorXd::Zero(dim);
    for (int i = 1; i < 4; ++i) out.coords[i] = r.col(i - 1);
  } else {
    Eigen::Matrix4d gram;
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        gram(i, j) = k.spherical() ? std::cos(s * q(i, j)) : std::cosh(s * q(i, j));
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> eig(gram);
    const auto& ev = eig.eigenvalues();
    const auto& vec = eig.eigenvectors();
    Eigen::MatrixXd x(dim + 1, 4);  // points as columns, unit curvature
    if (k.spherical()) {
      for (int c = 0; c <= dim; ++c) {
        const int e = 3 - c;
        x.row(c) = std::sqrt(std::max(0.0, ev(e))) * vec.col(e).transpose();
      }
      for (int i = 0; i < 4; ++i) {
        const double n = x.col(i).norm();
        if (n == 0.0) return std::nullopt;
        x.col(i) /= n;
      }
      x = canonical_frame(x);
    } else {
      // One timelike direction (largest eigenvalue), `dim` spacelike ones
      // (most negative eigenvalues).
      if (ev(3) <= 0) return std::nullopt;
      x.row(0) = std::sqrt(ev(3)) * vec.col(3).transpose();
      if (x.row(0).sum() < 0) x.row(0) *= -1.0;
      for (int c = 1; c <= dim; ++c) {
        const int e = c - 1;
        x.row(c) = std::sqrt(std::max(0.0, -ev(e))) * vec.col(e).transpose();
      }
      for (int i = 0; i < 4; ++i) {
        const Eigen::VectorXd p = x.col(i);
        const double n2 = minkowski(p, p);
        if (p(0) <= 0 || n2 <= 0) return std::nullopt;
        x.col(i) = p / std::sqrt(n2);
      }
      // Reflect the first point onto the pole, then rotate the spatial part.
      Eigen::VectorXd pole = Eigen::VectorXd::Zero(dim + 1);
      pole(0) = 1.0;
      const Eigen::VectorXd m = x.col(0) - pole;
      const double mm = minkowski(m, m);
      if (std::abs(mm) > 1e-300) {
        for (int i = 0; i < 4; ++i) {
          const Eigen::VectorXd p = x.col(i);
          x.col(i) = p - (2.0 * minkowski(p, m) / mm) * m;
        }
      }
      x.col(0) = pole;
      const Eigen::MatrixXd spatial = x.block(1, 1, dim, 3);
      Eigen::HouseholderQR<Eigen::MatrixXd> qr(spatial);
      Eigen::MatrixXd rotated = qr.householderQ().transpose() * spatial;
      for (int row = 0; row < dim; ++row) {
        if (rotated(row, std::min(row, 2)) < 0) rotated.row(row) *= -1.0;
      }
      for (int c = 0; c < 3; ++c) {
        for (int row = c + 1; row < dim; ++row) rotated(row, c) = 0.0;
      }
      x.block(1, 1, dim, 3) = rotated;
    }
    for (int i = 0; i < 4; ++i) out.coords[i] = x.col(i) / s;
  }

  double worst = 0.0;
  for (const auto& [i, j] : kPairs) {
    worst = std::max(worst, std::abs(geodesic_distance(k, out.coords[i], out.coords[j]) - q(i, j)));
  }
  out.max_residual = worst;
  if (!(worst <= rel_tol * q.max())) return std::nullopt;
  return out;
}

}  // namespace plembed
