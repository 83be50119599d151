// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "plembed/bzelement.hpp"
#include "plembed/cli.hpp"
#include "plembed/error.hpp"
#include "plembed/qcbounds.hpp"
#include "plembed/quadruple.hpp"
#include "plembed/skeleton.hpp"
#include "plembed/spaceform.hpp"
#include "support.hpp"

using namespace plembed;
using testkit::Rng;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

MetricQuadruple sample_quadruple(double kappa, Rng& rng) {
  for (;;) {
    std::array<Eigen::VectorXd, 4> p;
    for (auto& x : p) x = testkit::random_model_point(kappa, rng);
    const auto q = MetricQuadruple::from_matrix(testkit::distance_matrix(kappa, p));
    if (nondegenerate(q)) return q;
  }
}

MetricQuadruple from_points(const std::array<Eigen::Vector3d, 4>& p) {
  std::array<Eigen::VectorXd, 4> x;
  for (int i = 0; i < 4; ++i) x[i] = p[i];
  return MetricQuadruple::from_matrix(testkit::distance_matrix(0.0, x));
}

std::string fmt(const char* f, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

Outcome wald_round_trip() {
  Rng rng(20240);
  const auto start = std::chrono::steady_clock::now();
  int misses = 0;
  double worst = 0.0;
  for (double k : {-4.0, -1.0, 0.0, 1.0, 4.0}) {
    for (int t = 0; t < 40; ++t) {
      const auto q = sample_quadruple(k, rng);
      const auto r = wald_curvature(q);
      double best = std::numeric_limits<double>::infinity();
      for (const auto& root : r.roots) {
        const double err = std::abs(root.kappa - k) / (k == 0.0 ? 1.0 : std::abs(k));
        best = std::min(best, err);
      }
      worst = std::max(worst, best);
      if (!(best <= 1e-6)) ++misses;
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {misses == 0 && secs <= 10.0,
          std::to_string(misses) + " misses of 200, worst error " + fmt("%.2e", worst) + ", " +
              fmt("%.2f s", secs)};
}

Outcome flatness() {
  Rng rng(515);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int bad_planar = 0;
  int bad_spatial = 0;
  for (int t = 0; t < 100;) {
    std::array<Eigen::Vector3d, 4> p;
    for (auto& x : p) x = Eigen::Vector3d(u(rng), u(rng), 0.0);
    const auto q = from_points(p);
    if (!nondegenerate(q)) continue;
    ++t;
    double dmax = 0.0;
    for (double d : q.distances()) dmax = std::max(dmax, d);
    const auto r = wald_curvature(q);
    if (std::abs(cayley_menger(q)) > 1e-9 * std::pow(dmax, 8) || r.classification != WaldClass::Flat) ++bad_planar;
  }
  for (int t = 0; t < 100;) {
    std::array<Eigen::Vector3d, 4> p;
    for (auto& x : p) x = Eigen::Vector3d(u(rng), u(rng), u(rng));
    const auto q = from_points(p);
    if (!nondegenerate(q)) continue;
    ++t;
    if (wald_curvature(q).classification == WaldClass::Flat) ++bad_spatial;
  }
  return {bad_planar == 0 && bad_spatial == 0,
          std::to_string(bad_planar) + " planar and " + std::to_string(bad_spatial) + " spatial misclassified"};
}

Outcome monotonicity() {
  Rng rng(99);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double grid[] = {-4, -2, -1, 0, 1, 2, 4};
  int violations = 0;
  int comparisons = 0;
  for (int t = 0; t < 1000;) {
    std::array<Eigen::Vector3d, 4> p;
    for (auto& x : p) x = Eigen::Vector3d(u(rng), u(rng), u(rng));
    const auto q = from_points(p);
    if (!nondegenerate(q)) continue;
    ++t;
    double prev_angle = -1.0;
    std::array<double, 4> prev_v{-1, -1, -1, -1};
    for (double k : grid) {
      const MetricTriple tri{q(0, 1), q(0, 2), q(1, 2)};
      if (triple_embeddable(Curvature{k}, tri)) {
        const double a = comparison_angle(Curvature{k}, q(1, 2), q(0, 1), q(0, 2));
        if (a < prev_angle - 1e-12) ++violations;
        prev_angle = a;
        ++comparisons;
      }
      VertexExcess ex;
      try {
        ex = vertex_excess(q, Curvature{k});
      } catch (const DomainError&) {
        continue;
      }
      for (int i = 0; i < 4; ++i) {
        if (ex.V[i] < prev_v[i] - 1e-12) ++violations;
        prev_v[i] = ex.V[i];
        ++comparisons;
      }
    }
  }
  return {violations == 0, std::to_string(violations) + " violations in " + std::to_string(comparisons) + " steps"};
}

Outcome closed_forms() {
  int bad = 0;
  const std::pair<const char*, Rational> wedges[] = {{"pi/6", {6, 1}}, {"pi/4", {4, 1}},   {"pi/3", {3, 1}},
                                                     {"pi/2", {2, 1}}, {"2pi/3", {3, 2}}, {"pi", {1, 1}}};
  for (const auto& [text, expected] : wedges) {
    const auto b = dihedral_wedge_coefficients({3, 1, {parse_angle(text)}});
    if (!b.exact || !(*b.exact == expected) || b.K != expected.value()) ++bad;
  }
  const auto w4 = dihedral_wedge_coefficients({4, 1, {parse_angle("pi/2"), parse_angle("pi/2")}});
  if (!w4.exact || !(*w4.exact == Rational{4, 1}) || w4.K_I != 4.0) ++bad;
  const auto c43 = convex_face_count_bound(4, 3);
  if (!c43.exact || !(*c43.exact == Rational{3, 1}) || c43.K_I != 3.0) ++bad;
  const auto c63 = convex_face_count_bound(6, 3);
  if (!c63.exact || !(*c63.exact == Rational{5, 3}) || c63.K_I != 5.0 / 3.0) ++bad;
  const auto idx = uniform_index_bound_exact(3, Rational{2, 1});
  if (!idx || !(*idx == Rational{18, 1}) || uniform_index_bound(3, 2.0) != 18.0) ++bad;
  return {bad == 0, std::to_string(bad) + " of 10 entries differ"};
}

Outcome mesh_audit() {
  Rng rng(7);
  const double tetra = kPi / std::acos(1.0 / 3.0);
  double worst_cube = 0.0;
  double worst_tetra = 0.0;
  const auto cube = testkit::triangulated_cube();
  const auto tet = testkit::regular_tetrahedron();
  worst_cube = std::abs(*mesh_edge_dilatation_bound(cube.build()).bound - 2.0);
  worst_tetra = std::abs(*mesh_edge_dilatation_bound(tet.build()).bound - tetra);
  for (int t = 0; t < 20; ++t) {
    const auto m = testkit::random_rigid_motion(rng);
    worst_cube = std::max(worst_cube, std::abs(*mesh_edge_dilatation_bound(cube.transformed(m).build()).bound - 2.0));
    worst_tetra = std::max(worst_tetra, std::abs(*mesh_edge_dilatation_bound(tet.transformed(m).build()).bound - tetra));
  }
  return {worst_cube <= 1e-9 && worst_tetra <= 1e-9,
          fmt("cube error %.2e, tetrahedron error %.2e", worst_cube, worst_tetra)};
}

Outcome link_volumes() {
  const auto cube = testkit::triangulated_cube().build();
  const auto tet = testkit::regular_tetrahedron().build();
  double exact_err = 0.0;
  for (int v = 0; v < 8; ++v) exact_err = std::max(exact_err, std::abs(normalized_link_volume(cube, v).value - 0.125));
  LinkVolumeOptions mc;
  mc.method = LinkMethod::MonteCarlo;
  mc.samples = 1000000;
  mc.threads = 0;
  double worst_sigma = 0.0;
  for (const PolyMesh* m : {&cube, &tet}) {
    const double exact = normalized_link_volume(*m, 0).value;
    const auto est = normalized_link_volume(*m, 0, mc);
    worst_sigma = std::max(worst_sigma, std::abs(est.value - exact) / est.std_error);
  }
  return {exact_err <= 1e-12 && worst_sigma <= 3.0,
          fmt("exact error %.2e, worst Monte Carlo deviation %.2f sigma", exact_err, worst_sigma)};
}

Outcome folding() {
  Rng rng(33);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 1.0;
  for (const auto& [theta, lambda] : {std::pair{kPi, 2 * kPi}, std::pair{3 * kPi, 2 * kPi}, std::pair{2 * kPi, kPi}}) {
    const auto p = FoldParams::make(theta, lambda);
    for (int i = 0; i < 100; ++i) {
      const Polar x{0.1 + 0.9 * u(rng), theta * (0.01 + 0.98 * u(rng))};
      worst = std::max(worst, fold_local_dilatation(p, x));
    }
  }
  return {worst <= 1.0 + 1e-4, fmt("max singular-value ratio %.10f", worst)};
}

Outcome canonical_elements() {
  Rng rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  int built = 0;
  while (built < 50) {
    const double s0 = 0.8 + 0.4 * u(rng), s1 = 0.8 + 0.4 * u(rng), s2 = 0.8 + 0.4 * u(rng);
    AcuteTriangle T;
    try {
      T = AcuteTriangle::from_sides(s0, s1, s2);
    } catch (const DomainError&) {
      continue;
    }
    const double c = 0.6 + 0.39 * u(rng);
    const double j = 1e-4;
    const auto t = AcuteTriangle::from_sides(c * s0 * (1 - j * u(rng)), c * s1 * (1 - j * u(rng)),
                                             c * s2 * (1 - j * u(rng)));
    const auto e = canonical_element(T, t);
    ++built;
    for (int i = 0; i < 3; ++i) worst = std::max(worst, std::abs((e.vertices[6] - e.vertices[i]).norm() - T.R) / T.R);
    for (int p = 0; p < 3; ++p) {
      const int k = (p + 1) % 3;
      const int l = (p + 2) % 3;
      const double half = T.sides[p] / 2;
      worst = std::max(worst, std::abs((e.vertices[k] - e.vertices[3 + p]).norm() - half) / half);
      worst = std::max(worst, std::abs((e.vertices[l] - e.vertices[3 + p]).norm() - half) / half);
    }
  }
  const auto T = AcuteTriangle::from_sides(1, 1, 1);
  bool decreasing = true;
  double prev = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= 6; ++k) {
    const double c = 1 - std::pow(10.0, -k);
    const auto t = AcuteTriangle::from_sides(c, c, c);
    const double d = isometry_defect(canonical_element(T, t), T).max_defect;
    decreasing = decreasing && d < prev;
    prev = d;
  }
  return {worst <= 1e-12 && decreasing && prev <= 1e-4,
          fmt("worst congruence error %.2e, defect at c = 1 - 1e-6: %.2e", worst, prev) +
              (decreasing ? "" : ", defect not strictly decreasing")};
}

// Recomputes the slack named by a witness from graph distances and oracle angles.
double recompute_slack(const MetricGraph& g, VertexId v, const std::array<VertexId, 3>& nb, double kappa,
                       int inequality) {
  const std::array<VertexId, 4> pts{v, nb[0], nb[1], nb[2]};
  const auto d = [&](int i, int j) { return g.distance(pts[i], pts[j]); };
  const auto sum_at = [&](int i, double k) {
    std::array<int, 3> o{};
    int n = 0;
    for (int j = 0; j < 4; ++j) if (j != i) o[n++] = j;
    return std::array<double, 3>{testkit::oracle_angle(k, d(o[0], o[1]), d(i, o[0]), d(i, o[1])),
                                 testkit::oracle_angle(k, d(o[0], o[2]), d(i, o[0]), d(i, o[2])),
                                 testkit::oracle_angle(k, d(o[1], o[2]), d(i, o[1]), d(i, o[2]))};
  };
  if (inequality == 0) {
    double a0 = 0.0;
    for (int i = 0; i < 4; ++i) {
      const auto a = sum_at(i, 0.0);
      a0 = std::max(a0, a[0] + a[1] + a[2]);
    }
    return 2 * kPi - a0;
  }
  if (inequality == 4) {
    const auto a = sum_at(0, kappa);
    return 2 * kPi - (a[0] + a[1] + a[2]);
  }
  const auto a = sum_at(0, 0.0);
  const int j = inequality - 1;
  return a[(j + 1) % 3] + a[(j + 2) % 3] - a[j];
}

MetricGraph perturbed_simplex(int n, Rng& rng, double spread) {
  std::uniform_real_distribution<double> u(1 - spread, 1 + spread);
  MetricGraph::Builder b;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) b.add_edge("p" + std::to_string(i), "p" + std::to_string(j), u(rng));
  }
  return std::move(b).build();
}

Outcome certificates() {
  Rng rng(4242);
  std::vector<MetricGraph> graphs;
  graphs.push_back(testkit::graph_from_text("a b 1\na c 1\na d 1\nb c 1\nb d 1\nc d 1\n"));
  graphs.push_back(testkit::skeleton_of(testkit::icosahedron()));
  std::normal_distribution<double> g(0.0, 0.05);
  for (int i = 0; i < 50; ++i) {
    switch (i % 3) {
      case 0: {
        auto m = testkit::icosahedron();
        for (auto& v : m.vertices) v += Eigen::Vector3d(g(rng), g(rng), g(rng));
        graphs.push_back(testkit::skeleton_of(m));
        break;
      }
      case 1: graphs.push_back(perturbed_simplex(4, rng, 0.45)); break;
      default: graphs.push_back(perturbed_simplex(5, rng, 0.45)); break;
    }
  }
  int feasible = 0, infeasible = 0, realized = 0, bad = 0;
  for (const auto& graph : graphs) {
    for (double kappa : {0.0, 1.0}) {
      CompatibilityReport rep;
      try {
        rep = global_compatibility(graph, Curvature{kappa});
      } catch (const DomainError&) {
        continue;  // kappa not admissible for this metric
      }
      for (const auto& vr : rep.vertices) {
        if (vr.verdict) {
          ++feasible;
          for (const auto& qc : vr.quadruples) {
            if (qc.degenerate) continue;
            const std::array<VertexId, 4> pts{vr.vertex, qc.neighbors[0], qc.neighbors[1], qc.neighbors[2]};
            Eigen::Matrix4d d = Eigen::Matrix4d::Zero();
            for (int i = 0; i < 4; ++i) {
              for (int j = 0; j < 4; ++j) d(i, j) = graph.distance(pts[i], pts[j]);
            }
            if (realize_quadruple(MetricQuadruple::from_matrix(d), Curvature{kappa}, 3)) {
              ++realized;
            } else {
              ++bad;
            }
          }
        } else {
          ++infeasible;
          const auto& w = *vr.witness;
          const double s = recompute_slack(graph, vr.vertex, vr.quadruples[w.quadruple].neighbors, kappa, w.inequality);
          if (!(s < 0.0) || std::abs(s - w.slack) > 1e-7) ++bad;
        }
      }
    }
  }
  return {bad == 0 && feasible > 0 && infeasible > 0,
          std::to_string(feasible) + " feasible vertices (" + std::to_string(realized) + " quadruples realized), " +
              std::to_string(infeasible) + " infeasible witnesses, " + std::to_string(bad) + " failures"};
}

Outcome determinism() {
  const std::string data = PLEMBED_TEST_DATA;
  const std::vector<std::vector<std::string>> commands{
      {"wald", "-q", "1,1.1,1.2,1.05,0.95,1.15"},
      {"embed-check", "-q", "1,1,1,1,1,1", "-k", "1"},
      {"check-local", "-g", data + "/k4.txt", "-v", "a", "-k", "0.5"},
      {"check-global", "-g", data + "/k4.txt", "-k", "0", "--threads", "4"},
      {"qc-bound", "-m", data + "/tetrahedron.off"},
      {"qc-bound", "--faces", "6", "--dim", "3"},
      {"wedge", "--dim", "4", "-a", "pi/2", "-a", "pi/2", "--type", "1", "--fold-to", "pi"},
      {"index-bound", "--dim", "3", "--ki", "5/3"},
      {"link-volume", "-m", data + "/cube.off", "-v", "0"},
      {"link-volume", "-m", data + "/tetrahedron.off", "-v", "1", "--method", "monte-carlo", "--samples", "100000",
       "--seed", "11", "--threads", "3"},
      {"fold", "--theta", "3pi", "--lambda", "2pi", "-p", "0.4,1"},
      {"fold", "--theta", "4pi", "--contraction", "-p", "0.5,2pi"},
      {"bz-element", "--T", "1,1.1,1.2", "--scale", "0.95"},
      {"curve-curvature", "--triple", "0.3,0.4,0.6", "--mode", "both"},
  };
  int differ = 0;
  for (const auto& c : commands) {
    std::ostringstream a, b, ea, eb;
    const int sa = cli::run(c, a, ea);
    const int sb = cli::run(c, b, eb);
    if (sa != sb || a.str() != b.str() || a.str().empty()) {
      ++differ;
      std::cerr << c[0] << ": " << ea.str();
    }
  }
  return {differ == 0, std::to_string(commands.size()) + " invocations, " + std::to_string(differ) + " differ"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"wald-round-trip", wald_round_trip},
      {"flatness", flatness},
      {"monotonicity", monotonicity},
      {"closed-form-table", closed_forms},
      {"mesh-audit", mesh_audit},
      {"link-volumes", link_volumes},
      {"folding-conformality", folding},
      {"canonical-element", canonical_elements},
      {"compatibility-certificates", certificates},
      {"cli-determinism", determinism},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
