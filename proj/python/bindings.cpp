#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "plembed/bzelement.hpp"
#include "plembed/cli.hpp"
#include "plembed/error.hpp"
#include "plembed/mesh.hpp"
#include "plembed/qcbounds.hpp"
#include "plembed/quadruple.hpp"
#include "plembed/report.hpp"
#include "plembed/skeleton.hpp"

namespace py = pybind11;
using namespace plembed;

namespace {

// Reports cross the boundary as plain dicts, built from the same JSON the
// command-line tool prints.
py::object to_py(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

MetricQuadruple quad(const std::array<double, 6>& d) { return MetricQuadruple(d); }

Angle angle(const py::handle& h) {
  if (py::isinstance<py::str>(h)) return parse_angle(h.cast<std::string>());
  return Angle::radians(h.cast<double>());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Metric curvature and quasiconformality toolkit for PL embeddings";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<TopologyError>(m, "TopologyError", PyExc_ValueError);

  m.def("comparison_angle",
        [](double kappa, double opposite, double b, double c) {
          return comparison_angle(Curvature{kappa}, opposite, b, c);
        },
        py::arg("kappa"), py::arg("opposite"), py::arg("b"), py::arg("c"));

  m.def("cayley_menger", [](const std::array<double, 6>& d) { return cayley_menger(quad(d)); },
        py::arg("distances"));

  m.def("vertex_excess",
        [](const std::array<double, 6>& d, double kappa) {
          const auto ex = vertex_excess(quad(d), Curvature{kappa});
          return py::make_tuple(ex.V, ex.A);
        },
        py::arg("distances"), py::arg("kappa") = 0.0);

  m.def("wald_curvature",
        [](const std::array<double, 6>& d, int samples) {
          WaldOptions o;
          o.samples = samples;
          return to_py(to_json(wald_curvature(quad(d), o)));
        },
        py::arg("distances"), py::arg("samples") = WaldOptions{}.samples);

  m.def("s3_embeddability",
        [](const std::array<double, 6>& d, double kappa, double angle_tol) {
          return to_py(to_json(s3_embeddability(quad(d), Curvature{kappa}, angle_tol)));
        },
        py::arg("distances"), py::arg("kappa") = 0.0, py::arg("angle_tol") = 1e-9);

  m.def("realize_quadruple",
        [](const std::array<double, 6>& d, double kappa, int dim) -> py::object {
          const auto r = realize_quadruple(quad(d), Curvature{kappa}, dim);
          if (!r) return py::none();
          py::list pts;
          for (const auto& c : r->coords) pts.append(std::vector<double>(c.data(), c.data() + c.size()));
          return pts;
        },
        py::arg("distances"), py::arg("kappa"), py::arg("dim") = 2);

  m.def("global_compatibility",
        [](const std::string& graph, py::object kappa, unsigned threads) {
          std::istringstream in(graph);
          const GraphDocument doc = parse_graph_document(in);
          std::map<VertexId, double> kmap = doc.kappa;
          if (!kappa.is_none()) {
            kmap.clear();
            for (std::size_t v = 0; v < doc.graph.vertex_count(); ++v) {
              kmap[static_cast<VertexId>(v)] = kappa.cast<double>();
            }
          }
          return to_py(to_json(global_compatibility(doc.graph, kmap, {}, threads), doc.graph));
        },
        py::arg("graph"), py::arg("kappa") = py::none(), py::arg("threads") = 1,
        "Graph given as edge-list text or a JSON document.");

  m.def("polyline_curvature",
        [](double first, double second, double span, const std::string& mode) {
          const auto t = CurveTriple::make(first, second, span);
          return polyline_curvature(t, mode == "menger" ? CurveCurvature::Menger
                                                        : CurveCurvature::FinslerHaantjes);
        },
        py::arg("first"), py::arg("second"), py::arg("span"), py::arg("mode") = "menger");

  m.def("dihedral_wedge",
        [](int n, int k, const py::list& angles) {
          DihedralWedgeSpec spec{n, k, {}};
          for (const auto& a : angles) spec.angles.push_back(angle(a));
          return to_py(to_json(dihedral_wedge_coefficients(spec)));
        },
        py::arg("n"), py::arg("k"), py::arg("angles"));

  m.def("convex_face_count_bound",
        [](int faces, int n) { return to_py(to_json(convex_face_count_bound(faces, n))); },
        py::arg("faces"), py::arg("n") = 3);

  m.def("uniform_index_bound", &uniform_index_bound, py::arg("n"), py::arg("K_I"));

  m.def("mesh_edge_bound",
        [](const std::string& off) {
          std::istringstream in(off);
          return to_py(to_json(mesh_edge_dilatation_bound(parse_off(in))));
        },
        py::arg("off"), "Edge dihedral report for an OFF document given as text.");

  m.def("link_volume",
        [](const std::string& off, int vertex, const std::string& method, std::uint64_t samples,
           std::uint64_t seed) {
          std::istringstream in(off);
          LinkVolumeOptions o;
          o.method = method == "exact" ? LinkMethod::Exact : LinkMethod::MonteCarlo;
          o.samples = samples;
          o.seed = seed;
          return to_py(to_json(normalized_link_volume(parse_off(in), vertex, o)));
        },
        py::arg("off"), py::arg("vertex"), py::arg("method") = "exact",
        py::arg("samples") = LinkVolumeOptions{}.samples, py::arg("seed") = LinkVolumeOptions{}.seed);

  m.def("standard_vertex_map",
        [](double theta, double lambda, double a, double rho, double phi) {
          const Polar y = standard_vertex_map(FoldParams::make(theta, lambda, a), {rho, phi});
          return py::make_tuple(y.rho, y.phi);
        },
        py::arg("theta"), py::arg("lambda_"), py::arg("a"), py::arg("rho"), py::arg("phi"));

  m.def("canonical_element",
        [](const std::array<double, 3>& T, const std::array<double, 3>& t) {
          const auto big = AcuteTriangle::from_sides(T[0], T[1], T[2]);
          const auto small = AcuteTriangle::from_sides(t[0], t[1], t[2]);
          const auto e = canonical_element(big, small);
          return to_py(Json{{"element", to_json(e)}, {"defect", to_json(isometry_defect(e, big))}});
        },
        py::arg("T"), py::arg("t"));

  m.def("run_cli",
        [](const std::vector<std::string>& args) {
          std::ostringstream out;
          std::ostringstream err;
          const int status = cli::run(args, out, err);
          return py::make_tuple(status, out.str(), err.str());
        },
        py::arg("args"), "Runs the command-line tool in-process: (status, stdout, stderr).");
}
