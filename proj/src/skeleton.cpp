#include "plembed/skeleton.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "plembed/error.hpp"

namespace plembed {

namespace {

void require_vertex(const MetricGraph& g, VertexId v) {
  if (v < 0 || static_cast<std::size_t>(v) >= g.vertex_count()) {
    throw DomainError("unknown vertex id " + std::to_string(v));
  }
}

std::string quad_name(const MetricGraph& g, VertexId v, const std::array<VertexId, 3>& n) {
  return "(" + g.label(v) + "; " + g.label(n[0]) + ", " + g.label(n[1]) + ", " + g.label(n[2]) +
         ")";
}

Condition condition_of(int inequality) {
  if (inequality == 0) return Condition::ExtrinsicExcess;
  if (inequality <= 3) return Condition::AngleTriangle;
  return Condition::IntrinsicExcess;
}

}  // namespace

std::vector<StarQuadruple> star_quadruples(const MetricGraph& g, VertexId v) {
  require_vertex(g, v);
  const auto& nb = g.neighbors(v);
  std::vector<StarQuadruple> out;
  const std::size_t n = nb.size();
  if (n < 3) return out;
  out.reserve(n * (n - 1) * (n - 2) / 6);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t l = j + 1; l < n; ++l) {
        const std::array<VertexId, 4> pts{v, nb[i], nb[j], nb[l]};
        Eigen::Matrix4d d = Eigen::Matrix4d::Zero();
        for (int a = 0; a < 4; ++a) {
          for (int b = a + 1; b < 4; ++b) d(a, b) = d(b, a) = g.distance(pts[a], pts[b]);
        }
        out.push_back({v, {nb[i], nb[j], nb[l]}, MetricQuadruple::from_matrix(d)});
      }
    }
  }
  return out;
}

RegionResult region_of_curvature(const std::vector<StarQuadruple>& quads, Curvature k,
                                 double angle_tol, PerimeterBound bound) {
  RegionResult r;
  for (std::size_t qi = 0; qi < quads.size(); ++qi) {
    const MetricQuadruple& q = quads[qi].distances;
    if (!nondegenerate(q)) {
      r.skipped.push_back(qi);
      continue;
    }
    if (!r.verdict) continue;
    const VertexExcess ex = vertex_excess(q, k, bound);
    for (int p = 0; p < 4; ++p) {
      if (ex.V[p] > kTwoPi + angle_tol) {
        r.verdict = false;
        r.witness = RegionWitness{qi, p, ex.V[p]};
        break;
      }
    }
  }
  return r;
}

VertexReport local_compatibility(const MetricGraph& g, VertexId v, Curvature k,
                                 const CompatibilityOptions& opts) {
  const auto quads = star_quadruples(g, v);
  VertexReport rep;
  rep.vertex = v;
  rep.kappa = k.kappa;
  rep.quadruples.reserve(quads.size());
  for (std::size_t qi = 0; qi < quads.size(); ++qi) {
    const StarQuadruple& sq = quads[qi];
    QuadrupleCheck c;
    c.neighbors = sq.neighbors;
    if (!nondegenerate(sq.distances)) {
      c.degenerate = true;
      ++rep.skipped;
      rep.quadruples.push_back(c);
      continue;
    }
    c.certificate = s3_embeddability(sq.distances, Curvature{0.0}, opts.angle_tol, opts.bound);
    VertexExcess ex;
    try {
      ex = vertex_excess(sq.distances, k, opts.bound);
    } catch (const DomainError& e) {
      throw DomainError("vertex " + g.label(v) + ", quadruple " + quad_name(g, v, sq.neighbors) +
                        ": " + e.what());
    }
    c.intrinsic_slack = kTwoPi - ex.V[0];
    c.slacks = {c.certificate->slacks[0], c.certificate->slacks[1], c.certificate->slacks[2],
                c.certificate->slacks[3], c.intrinsic_slack};
    rep.max_a0 = std::max(rep.max_a0, kTwoPi - c.certificate->slacks[0]);
    for (int i = 0; i < 5; ++i) {
      if (c.slacks[i] < -opts.angle_tol) {
        c.satisfied = false;
        if (!rep.witness) rep.witness = Witness{v, qi, condition_of(i), i, c.slacks[i]};
        break;
      }
    }
    rep.verdict = rep.verdict && c.satisfied;
    rep.quadruples.push_back(std::move(c));
  }
  return rep;
}

CompatibilityReport global_compatibility(const MetricGraph& g,
                                         const std::map<VertexId, double>& kappa,
                                         const CompatibilityOptions& opts, unsigned threads) {
  const std::size_t n = g.vertex_count();
  for (std::size_t v = 0; v < n; ++v) {
    if (kappa.find(static_cast<VertexId>(v)) == kappa.end()) {
      throw DomainError("no curvature prescribed for vertex " + g.label(static_cast<VertexId>(v)));
    }
  }

  CompatibilityReport rep;
  rep.vertices.resize(n);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));

  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t v = next++; v < n; v = next++) {
      const auto id = static_cast<VertexId>(v);
      try {
        rep.vertices[v] = local_compatibility(g, id, Curvature{kappa.at(id)}, opts);
      } catch (...) {
        errors[v] = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  // Report the error of the lowest vertex, as a sequential run would.
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  for (const VertexReport& vr : rep.vertices) {
    if (!vr.verdict) {
      rep.verdict = false;
      if (!rep.witness) rep.witness = vr.witness;
    }
  }
  return rep;
}

CompatibilityReport global_compatibility(const MetricGraph& g, Curvature k,
                                         const CompatibilityOptions& opts, unsigned threads) {
  std::map<VertexId, double> kappa;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) kappa[static_cast<VertexId>(v)] = k.kappa;
  return global_compatibility(g, kappa, opts, threads);
}

CurveTriple CurveTriple::make(double first, double second, double span) {
  for (double x : {first, second, span}) {
    if (!std::isfinite(x) || x <= 0.0) throw DomainError("curve lengths must be positive");
  }
  const double tol = 1e-12 * std::max({first, second, span});
  if (span > first + second + tol || first > second + span + tol || second > first + span + tol) {
    throw DomainError("curve lengths violate the triangle inequality");
  }
  return CurveTriple{first, second, span};
}

double polyline_curvature(const CurveTriple& t, CurveCurvature mode) {
  const double a = t.first;
  const double b = t.second;
  const double l = t.span;
  if (mode == CurveCurvature::Menger) {
    // Heron in the cancellation-free ordering x >= y >= z.
    double x = a, y = b, z = l;
    if (x < y) std::swap(x, y);
    if (y < z) std::swap(y, z);
    if (x < y) std::swap(x, y);
    const double p = (x + (y + z)) * (z - (x - y)) * (z + (x - y)) * (x + (y - z));
    if (p <= 0.0) return 0.0;
    const double area = 0.25 * std::sqrt(p);
    return 4.0 * area / (a * b * l);
  }
  const double excess = (a + b) - l;
  if (excess <= 0.0) return 0.0;
  return std::sqrt(8.0 * excess / (a * b * l));
}

}  // namespace plembed
