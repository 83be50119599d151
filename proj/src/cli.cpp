#include "plembed/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "plembed/bzelement.hpp"
#include "plembed/error.hpp"
#include "plembed/graph.hpp"
#include "plembed/mesh.hpp"
#include "plembed/qcbounds.hpp"
#include "plembed/quadruple.hpp"
#include "plembed/report.hpp"
#include "plembed/skeleton.hpp"

#ifndef PLEMBED_VERSION
#define PLEMBED_VERSION "0.0.0"
#endif

namespace plembed::cli {

namespace {

// Input problem attributed to a file (and line, when known).
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Output {
  Json body;
  int status = kOk;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(item);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

double to_double(const std::string& token, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(token, &used);
  } catch (const std::exception&) {
    throw InputError(what + ": '" + token + "' is not a number");
  }
  if (used != token.size()) throw InputError(what + ": '" + token + "' is not a number");
  return v;
}

std::vector<double> number_list(const std::string& s, std::size_t count, const std::string& what) {
  const auto parts = split(s, ',');
  if (parts.size() != count) {
    throw InputError(what + ": expected " + std::to_string(count) + " comma-separated values");
  }
  std::vector<double> out;
  for (const auto& p : parts) out.push_back(to_double(p, what));
  return out;
}

MetricQuadruple quadruple_arg(const std::string& s) {
  const auto v = number_list(s, 6, "--quadruple");
  return MetricQuadruple({v[0], v[1], v[2], v[3], v[4], v[5]});
}

std::ifstream open(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path + ": cannot open file");
  return in;
}

template <class F>
auto parse_file(const std::string& path, F&& parse) {
  auto in = open(path);
  try {
    return parse(in);
  } catch (const ParseError& e) {
    throw InputError(path + ": " + e.what());
  }
}

PerimeterBound perimeter_arg(const std::string& s) {
  return s == "literal" ? PerimeterBound::Literal : PerimeterBound::Scaled;
}

std::uint64_t default_seed() {
  const char* env = std::getenv(kSeedEnv);
  if (env == nullptr || *env == '\0') return 0x5eed;
  try {
    std::size_t used = 0;
    const auto v = std::stoull(env, &used, 0);
    if (used == std::string(env).size()) return v;
  } catch (const std::exception&) {
  }
  throw InputError(std::string(kSeedEnv) + ": '" + env + "' is not an unsigned integer");
}

Rational rational_arg(const std::string& s, const std::string& what) {
  const auto parts = split(s, '/');
  const auto integer = [&](const std::string& t) {
    if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos) {
      throw InputError(what + ": '" + s + "' is not a fraction");
    }
    return static_cast<std::int64_t>(std::stoll(t));
  };
  if (parts.size() == 1) return Rational::make(integer(parts[0]), 1);
  if (parts.size() == 2) return Rational::make(integer(parts[0]), integer(parts[1]));
  throw InputError(what + ": '" + s + "' is not a fraction");
}

// Human-readable rendering: scalars as "key: value", arrays of objects as
// aligned tables, anything else as compact JSON.
void write_table(std::ostream& out, const Json& doc) {
  for (const auto& [key, value] : doc.items()) {
    if (value.is_array() && !value.empty() && value.front().is_object()) {
      out << key << ":\n";
      std::vector<std::string> cols;
      for (const auto& [k, v] : value.front().items()) {
        if (!v.is_structured()) cols.push_back(k);
      }
      std::vector<std::vector<std::string>> rows{cols};
      for (const auto& row : value) {
        std::vector<std::string> r;
        for (const auto& c : cols) r.push_back(row.contains(c) ? row.at(c).dump() : "");
        rows.push_back(r);
      }
      std::vector<std::size_t> width(cols.size(), 0);
      for (const auto& r : rows) {
        for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
      }
      for (const auto& r : rows) {
        out << "  ";
        for (std::size_t i = 0; i < r.size(); ++i) {
          out << r[i] << std::string(width[i] - r[i].size() + 2, ' ');
        }
        out << '\n';
      }
    } else if (value.is_string()) {
      out << key << ": " << value.get<std::string>() << '\n';
    } else {
      out << key << ": " << value.dump() << '\n';
    }
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Metric curvature and quasiconformality toolkit for PL embeddings", "plembed"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", PLEMBED_VERSION);

  std::string output_path;
  std::string format = "json";
  app.add_option("-o,--output", output_path, "Write the report to this file instead of stdout");
  app.add_option("--format", format, "Report format")
      ->check(CLI::IsMember({"json", "table"}))
      ->capture_default_str();

  std::string command;
  const auto sub = [&](const char* name, const char* help) {
    CLI::App* s = app.add_subcommand(name, help);
    s->callback([&command, s] { command = s->get_name(); });
    return s;
  };

  // wald
  std::string quad;
  int samples = WaldOptions{}.samples;
  auto* wald = sub("wald", "Embedding curvature of a metric quadruple");
  wald->add_option("-q,--quadruple", quad, "d12,d13,d14,d23,d24,d34")->required();
  wald->add_option("--samples", samples, "Scan points")->check(CLI::Range(16, 1 << 20))->capture_default_str();

  // embed-check
  double kappa = 0.0;
  double angle_tol = 1e-9;
  std::string perimeter = "scaled";
  auto* embed = sub("embed-check", "Embeddability of a metric quadruple in S^3_k");
  embed->add_option("-q,--quadruple", quad, "d12,d13,d14,d23,d24,d34")->required();
  embed->add_option("-k,--kappa", kappa, "Curvature")->capture_default_str();
  embed->add_option("--angle-tol", angle_tol, "Slack tolerance")->check(CLI::PositiveNumber)->capture_default_str();
  embed->add_option("--perimeter", perimeter, "Spherical perimeter bound")
      ->check(CLI::IsMember({"scaled", "literal"}))
      ->capture_default_str();

  // check-local / check-global
  std::string graph_path;
  std::string vertex_label;
  std::optional<double> kappa_opt;
  std::string kappa_file;
  unsigned threads = 1;
  auto* local = sub("check-local", "Local compatibility system at one vertex of a metric graph");
  local->add_option("-g,--graph", graph_path, "Graph document")->required();
  local->add_option("-v,--vertex", vertex_label, "Vertex label")->required();
  local->add_option("-k,--kappa", kappa_opt, "Curvature (default: from the document)");
  local->add_option("--angle-tol", angle_tol, "Slack tolerance")->check(CLI::PositiveNumber)->capture_default_str();
  local->add_option("--perimeter", perimeter, "Spherical perimeter bound")
      ->check(CLI::IsMember({"scaled", "literal"}));

  auto* global = sub("check-global", "Compatibility system at every vertex of a metric graph");
  global->add_option("-g,--graph", graph_path, "Graph document")->required();
  auto* kopt = global->add_option("-k,--kappa", kappa_opt, "Constant curvature");
  global->add_option("--kappa-file", kappa_file, "Per-vertex curvature, 'label kappa' lines")->excludes(kopt);
  global->add_option("--angle-tol", angle_tol, "Slack tolerance")->check(CLI::PositiveNumber)->capture_default_str();
  global->add_option("--perimeter", perimeter, "Spherical perimeter bound")
      ->check(CLI::IsMember({"scaled", "literal"}));
  global->add_option("--threads", threads, "Worker threads (0 = all cores)")->capture_default_str();

  // qc-bound
  std::string mesh_path;
  std::optional<int> faces;
  int dim = 3;
  double min_angle = 1e-6;
  auto* qc = sub("qc-bound", "Lower bound on the coefficient of quasiconformality of a polyhedron");
  auto* mopt = qc->add_option("-m,--mesh", mesh_path, "OFF mesh");
  qc->add_option("--faces", faces, "Face count of a convex polyhedron")->excludes(mopt);
  qc->add_option("--dim", dim, "Dimension (with --faces)")->capture_default_str();
  qc->add_option("--min-angle", min_angle, "Conditioning threshold")->check(CLI::PositiveNumber)->capture_default_str();

  // wedge
  std::optional<int> type;
  std::vector<std::string> angles;
  std::string fold_to;
  auto* wedge = sub("wedge", "Coefficients of a (dihedral) wedge");
  wedge->add_option("--dim", dim, "Ambient dimension")->capture_default_str();
  wedge->add_option("--type", type, "Wedge type k (default n - 2)");
  wedge->add_option("-a,--angle", angles, "Angle, e.g. pi/3 or 1.2 (repeat for several)")->required();
  wedge->add_option("--fold-to", fold_to, "Also report the folding dilatation onto this angle");

  // index-bound
  std::string ki = "1";
  auto* index = sub("index-bound", "Ceiling n^(n-1) K_I on the local index of a quasiregular map");
  index->add_option("--dim", dim, "Dimension n >= 3")->capture_default_str();
  index->add_option("--ki", ki, "Inner dilatation, decimal or fraction")->capture_default_str();

  // link-volume
  int mesh_vertex = 0;
  std::string method = "exact";
  std::uint64_t mc_samples = LinkVolumeOptions{}.samples;
  std::optional<std::uint64_t> seed;
  auto* link = sub("link-volume", "Normalized link volume at a mesh vertex");
  link->add_option("-m,--mesh", mesh_path, "OFF mesh")->required();
  link->add_option("-v,--vertex", mesh_vertex, "Vertex index")->required();
  link->add_option("--method", method, "exact or monte-carlo")
      ->check(CLI::IsMember({"exact", "monte-carlo"}))
      ->capture_default_str();
  link->add_option("--samples", mc_samples, "Monte Carlo samples")->capture_default_str();
  link->add_option("--seed", seed, std::string("Monte Carlo seed (default: $") + kSeedEnv + " or 24301)");
  link->add_option("--threads", threads, "Worker threads (0 = all cores)")->capture_default_str();

  // fold
  std::string theta = "pi";
  std::string lambda = "2pi";
  double scale_a = 1.0;
  std::string point;
  bool contraction = false;
  auto* fold = sub("fold", "Folding map between cones, or the contraction for cone angle > 2 pi");
  fold->add_option("--theta", theta, "Source cone angle")->capture_default_str();
  fold->add_option("--lambda", lambda, "Target cone angle")->capture_default_str();
  fold->add_option("--a", scale_a, "Scale factor")->capture_default_str();
  fold->add_option("-p,--point", point, "rho,phi (phi may be written as pi/2)")->required();
  fold->add_flag("--contraction", contraction, "Apply the contraction map instead");

  // bz-element
  std::string big;
  std::string small;
  std::optional<double> ratio;
  SimilarityOptions sim;
  std::string obj_path;
  auto* bz = sub("bz-element", "Pleated construction element of an acute triangle");
  bz->add_option("--T", big, "Sides of T: s0,s1,s2")->required();
  auto* topt = bz->add_option("--t", small, "Sides of t: s0,s1,s2");
  bz->add_option("--scale", ratio, "Take t = scale * T")->excludes(topt);
  bz->add_option("--angle-tol", sim.angle_tol, "Almost-similar angle tolerance")->capture_default_str();
  bz->add_option("--c-min", sim.c_min, "Minimum side ratio")->capture_default_str();
  bz->add_option("--min-angle", sim.min_angle, "Minimum angle of T")->capture_default_str();
  bz->add_option("--obj", obj_path, "Write the element as OBJ to this file");

  // curve-curvature
  std::string triple;
  std::string mode = "both";
  auto* curve = sub("curve-curvature", "Discrete curvature of three consecutive polyline points");
  curve->add_option("--triple", triple, "first,second,span")->required();
  curve->add_option("--mode", mode, "menger, finsler-haantjes or both")
      ->check(CLI::IsMember({"menger", "finsler-haantjes", "both"}))
      ->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << PLEMBED_VERSION << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "plembed: " << e.what() << '\n';
    return kUsage;
  }

  Output result;
  try {
    const auto graph_doc = [&] {
      return parse_file(graph_path, [](std::istream& in) { return parse_graph_document(in); });
    };
    const auto mesh = [&] { return parse_file(mesh_path, [](std::istream& in) { return parse_off(in); }); };

    if (command == "wald") {
      const auto q = quadruple_arg(quad);
      WaldOptions opts;
      opts.samples = samples;
      Json body{{"quadruple", to_json(q)}};
      body.update(to_json(wald_curvature(q, opts)));
      result.body = body;
    } else if (command == "embed-check") {
      const auto q = quadruple_arg(quad);
      const auto cert = s3_embeddability(q, Curvature{kappa}, angle_tol, perimeter_arg(perimeter));
      Json body{{"quadruple", to_json(q)}, {"kappa", kappa}};
      body.update(to_json(cert));
      result.body = body;
      result.status = cert.verdict ? kOk : kVerdictFalse;
    } else if (command == "check-local") {
      const GraphDocument doc = graph_doc();
      const auto v = doc.graph.find(vertex_label);
      if (!v) throw InputError(graph_path + ": no vertex '" + vertex_label + "'");
      double k = 0.0;
      if (kappa_opt) {
        k = *kappa_opt;
      } else if (const auto it = doc.kappa.find(*v); it != doc.kappa.end()) {
        k = it->second;
      } else {
        throw InputError("no curvature for vertex " + vertex_label + " (use --kappa)");
      }
      CompatibilityOptions opts{angle_tol, perimeter_arg(perimeter)};
      const auto rep = local_compatibility(doc.graph, *v, Curvature{k}, opts);
      result.body = to_json(rep, doc.graph);
      result.status = rep.verdict ? kOk : kVerdictFalse;
    } else if (command == "check-global") {
      const GraphDocument doc = graph_doc();
      std::map<VertexId, double> kmap = doc.kappa;
      if (kappa_opt) {
        kmap.clear();
        for (std::size_t v = 0; v < doc.graph.vertex_count(); ++v) kmap[static_cast<VertexId>(v)] = *kappa_opt;
      } else if (!kappa_file.empty()) {
        kmap = parse_file(kappa_file, [&](std::istream& in) { return parse_kappa_map(in, doc.graph); });
      }
      CompatibilityOptions opts{angle_tol, perimeter_arg(perimeter)};
      const auto rep = global_compatibility(doc.graph, kmap, opts, threads);
      result.body = to_json(rep, doc.graph);
      result.status = rep.verdict ? kOk : kVerdictFalse;
    } else if (command == "qc-bound") {
      if (faces) {
        result.body = Json{{"faces", *faces}, {"dim", dim}};
        result.body.update(to_json(convex_face_count_bound(*faces, dim)));
      } else if (!mesh_path.empty()) {
        result.body = to_json(mesh_edge_dilatation_bound(mesh(), min_angle));
      } else {
        err << "plembed: qc-bound: one of --mesh or --faces is required\n";
        return kUsage;
      }
    } else if (command == "wedge") {
      DihedralWedgeSpec spec;
      spec.n = dim;
      spec.k = type.value_or(dim - 2);
      for (const auto& a : angles) spec.angles.push_back(parse_angle(a));
      result.body = Json{{"dim", spec.n}, {"type", spec.k}};
      result.body.update(to_json(dihedral_wedge_coefficients(spec)));
      if (!fold_to.empty()) {
        result.body["folding"] = to_json(folding_dilatation(spec.angles.front(), parse_angle(fold_to)));
      }
    } else if (command == "index-bound") {
      std::optional<Rational> exact;
      double value = 0.0;
      if (ki.find_first_not_of("0123456789/") == std::string::npos) {
        const Rational q = rational_arg(ki, "--ki");
        value = uniform_index_bound(dim, q.value());
        exact = uniform_index_bound_exact(dim, q);
      } else {
        value = uniform_index_bound(dim, to_double(ki, "--ki"));
      }
      result.body = Json{{"dim", dim}, {"K_I", ki}, {"bound", value}};
      result.body["exact"] = exact ? Json(exact->str()) : Json(nullptr);
    } else if (command == "link-volume") {
      const PolyMesh m = mesh();
      LinkVolumeOptions opts;
      opts.method = method == "exact" ? LinkMethod::Exact : LinkMethod::MonteCarlo;
      opts.samples = mc_samples;
      opts.seed = seed ? *seed : default_seed();
      opts.threads = threads;
      result.body = Json{{"vertex", mesh_vertex}, {"method", method}};
      if (opts.method == LinkMethod::MonteCarlo) result.body["seed"] = opts.seed;
      result.body.update(to_json(normalized_link_volume(m, mesh_vertex, opts)));
    } else if (command == "fold") {
      const auto parts = split(point, ',');
      if (parts.size() != 2) throw InputError("--point: expected rho,phi");
      const Polar x{to_double(parts[0], "--point"), parse_angle(parts[1]).value()};
      if (contraction) {
        const double th = parse_angle(theta).value();
        const Polar y = contraction_map(th, x);
        result.body = Json{{"map", "contraction"}, {"theta", th}, {"rho", x.rho}, {"phi", x.phi},
                           {"r", y.rho}, {"psi", y.phi}};
      } else {
        const auto p = FoldParams::make(parse_angle(theta).value(), parse_angle(lambda).value(), scale_a);
        const Polar y = standard_vertex_map(p, x);
        result.body = Json{{"map", "fold"}, {"theta", p.theta}, {"lambda", p.lambda}, {"a", p.a},
                           {"rho", x.rho},  {"phi", x.phi},     {"r", y.rho},       {"psi", y.phi}};
        result.body["local_dilatation"] = x.rho > 0.0 ? Json(fold_local_dilatation(p, x)) : Json(nullptr);
      }
    } else if (command == "bz-element") {
      const auto s = number_list(big, 3, "--T");
      const auto T = AcuteTriangle::from_sides(s[0], s[1], s[2]);
      std::vector<double> st;
      if (ratio) {
        st = {*ratio * s[0], *ratio * s[1], *ratio * s[2]};
      } else if (!small.empty()) {
        st = number_list(small, 3, "--t");
      } else {
        err << "plembed: bz-element: one of --t or --scale is required\n";
        return kUsage;
      }
      const auto t = AcuteTriangle::from_sides(st[0], st[1], st[2]);
      const auto e = canonical_element(T, t, sim);
      result.body = Json{{"element", to_json(e)}, {"defect", to_json(isometry_defect(e, T))}};
      if (!obj_path.empty()) {
        std::ofstream obj(obj_path);
        if (!obj) throw InputError(obj_path + ": cannot write file");
        write_obj(obj, e);
      }
    } else if (command == "curve-curvature") {
      const auto v = number_list(triple, 3, "--triple");
      const auto t = CurveTriple::make(v[0], v[1], v[2]);
      result.body = Json{{"triple", v}};
      if (mode != "finsler-haantjes") result.body["menger"] = polyline_curvature(t, CurveCurvature::Menger);
      if (mode != "menger") {
        result.body["finsler_haantjes"] = polyline_curvature(t, CurveCurvature::FinslerHaantjes);
      }
    }
  } catch (const InputError& e) {
    err << "plembed: " << command << ": " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "plembed: " << command << ": " << e.what() << '\n';
    return kInputError;
  }

  const Json doc = document(command, result.body);
  std::ofstream file;
  if (!output_path.empty()) {
    file.open(output_path);
    if (!file) {
      err << "plembed: " << output_path << ": cannot write file\n";
      return kInputError;
    }
  }
  std::ostream& sink = output_path.empty() ? out : file;
  if (format == "table") {
    write_table(sink, doc);
  } else {
    sink << doc.dump(2) << '\n';
  }
  return result.status;
}

}  // namespace plembed::cli
