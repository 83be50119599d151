#include <algorithm>
#include <cmath>
#include <map>
#include <thread>

#include <Eigen/Geometry>

#include "plembed/error.hpp"
#include "plembed/qcbounds.hpp"
#include "plembed/spaceform.hpp"

namespace plembed {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Uniform double in [0, 1) from the 53 high bits.
double unit(std::uint64_t x) { return static_cast<double>(x >> 11) * 0x1.0p-53; }

struct Welford {
  std::uint64_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++n;
    const double d = x - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (x - mean);
  }

  void merge(const Welford& o) {
    if (o.n == 0) return;
    const double na = static_cast<double>(n);
    const double nb = static_cast<double>(o.n);
    const double d = o.mean - mean;
    const double total = na + nb;
    mean += d * nb / total;
    m2 += o.m2 + d * d * na * nb / total;
    n += o.n;
  }
};

struct Cone {
  std::vector<int> ring;                 // link vertices in cyclic order
  std::vector<double> dihedral;          // interior angle along (v, ring[i])
  std::vector<Eigen::Vector3d> normals;  // outward normals of the faces (v, ring[i], ring[i+1])
  double face_angle_sum = 0.0;
};

Cone extract_cone(const PolyMesh& mesh, int v) {
  if (v < 0 || static_cast<std::size_t>(v) >= mesh.vertices().size()) {
    throw DomainError("unknown mesh vertex " + std::to_string(v));
  }
  std::map<int, std::pair<int, int>> next;  // a -> (b, triangle)
  for (std::size_t f = 0; f < mesh.triangles().size(); ++f) {
    const auto& t = mesh.triangles()[f];
    for (int i = 0; i < 3; ++i) {
      if (t[i] != v) continue;
      const int a = t[(i + 1) % 3];
      const int b = t[(i + 2) % 3];
      if (!next.emplace(a, std::pair{b, static_cast<int>(f)}).second) {
        throw DomainError("vertex " + std::to_string(v) + " is not a cone vertex (non-manifold)");
      }
    }
  }
  if (next.size() < 3) throw DomainError("vertex " + std::to_string(v) + " has fewer than 3 faces");

  Cone c;
  const auto& P = mesh.vertices();
  int a = next.begin()->first;
  for (std::size_t step = 0; step < next.size(); ++step) {
    const auto it = next.find(a);
    if (it == next.end()) {
      throw DomainError("vertex " + std::to_string(v) + " lies on the boundary; its link is not a cone");
    }
    c.ring.push_back(a);
    const int b = it->second.first;
    c.normals.push_back(mesh.normal(it->second.second));
    const Eigen::Vector3d x = P[a] - P[v];
    const Eigen::Vector3d y = P[b] - P[v];
    c.face_angle_sum += std::atan2(x.cross(y).norm(), x.dot(y));
    a = b;
  }
  if (a != c.ring.front()) {
    throw DomainError("faces around vertex " + std::to_string(v) + " do not form a single cone");
  }
  for (int w : c.ring) {
    const auto e = mesh.find_edge(v, w);
    c.dihedral.push_back(mesh.dihedral_angle(mesh.edges()[*e]));
  }
  return c;
}

}  // namespace

LinkVolume normalized_link_volume(const PolyMesh& mesh, int v, const LinkVolumeOptions& opts) {
  const Cone cone = extract_cone(mesh, v);
  const auto m = static_cast<double>(cone.ring.size());

  LinkVolume out;
  out.valence = static_cast<int>(cone.ring.size());
  out.convex = std::all_of(cone.dihedral.begin(), cone.dihedral.end(),
                           [](double a) { return a <= kPi + 1e-12; });
  out.exterior = (kTwoPi - cone.face_angle_sum) / (4.0 * kPi);

  if (opts.method == LinkMethod::Exact) {
    double sum = 0.0;
    for (double a : cone.dihedral) sum += a;
    out.value = (sum - (m - 2.0) * kPi) / (4.0 * kPi);
    return out;
  }

  if (!out.convex) throw DomainError("Monte Carlo link volume requires a convex corner");
  if (opts.samples < 2) throw DomainError("Monte Carlo needs at least 2 samples");

  constexpr std::uint64_t kChunk = 1 << 16;
  const std::uint64_t chunks = (opts.samples + kChunk - 1) / kChunk;
  const std::uint64_t key = splitmix64(opts.seed);
  std::vector<Welford> partial(chunks);

  auto run_chunk = [&](std::uint64_t c) {
    Welford w;
    const std::uint64_t begin = c * kChunk;
    const std::uint64_t end = std::min(opts.samples, begin + kChunk);
    for (std::uint64_t i = begin; i < end; ++i) {
      const double z = 2.0 * unit(splitmix64(key ^ (2 * i))) - 1.0;
      const double phi = kTwoPi * unit(splitmix64(key ^ (2 * i + 1)));
      const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
      const Eigen::Vector3d u(s * std::cos(phi), s * std::sin(phi), z);
      bool inside = true;
      for (const auto& n : cone.normals) {
        if (n.dot(u) > 0.0) {
          inside = false;
          break;
        }
      }
      w.add(inside ? 1.0 : 0.0);
    }
    partial[c] = w;
  };

  unsigned threads = opts.threads == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                       : opts.threads;
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, chunks));
  if (threads <= 1) {
    for (std::uint64_t c = 0; c < chunks; ++c) run_chunk(c);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        for (std::uint64_t c = t; c < chunks; c += threads) run_chunk(c);
      });
    }
    for (auto& th : pool) th.join();
  }

  Welford total;
  for (const auto& w : partial) total.merge(w);
  out.samples = total.n;
  out.value = total.mean;
  out.std_error = std::sqrt(total.m2 / static_cast<double>(total.n - 1) / static_cast<double>(total.n));
  return out;
}

}  // namespace plembed
