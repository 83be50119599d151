#include "plembed/report.hpp"

namespace plembed {

namespace {

Json witness_json(const Witness& w, const MetricGraph& g) {
  return Json{{"vertex", g.label(w.vertex)},
              {"quadruple", w.quadruple},
              {"condition", static_cast<int>(w.condition)},
              {"inequality", w.inequality},
              {"slack", w.slack}};
}

Json root_json(const WaldRoot& r) {
  return Json{{"kappa", r.kappa},
              {"residual", r.residual},
              {"minors_ok", r.minors_ok},
              {"realized", r.realized}};
}

template <class T, std::size_t N>
Json array_json(const std::array<T, N>& a) {
  Json out = Json::array();
  for (const auto& x : a) out.push_back(x);
  return out;
}

Json point_json(const Eigen::Vector3d& p) { return Json::array({p.x(), p.y(), p.z()}); }

}  // namespace

Json to_json(const MetricQuadruple& q) { return array_json(q.distances()); }

Json to_json(const WaldResult& r) {
  Json roots = Json::array();
  for (const auto& x : r.roots) roots.push_back(root_json(x));
  Json rejected = Json::array();
  for (const auto& x : r.rejected) rejected.push_back(root_json(x));
  return Json{{"classification", to_string(r.classification)},
              {"cayley_menger", r.cayley_menger},
              {"roots", roots},
              {"rejected", rejected},
              {"kappa_range", Json::array({r.kappa_min, r.kappa_max})}};
}

Json to_json(const EmbeddabilityCertificate& c) {
  Json out{{"verdict", c.verdict},
           {"planar", c.planar},
           {"angle_tol", c.angle_tol},
           {"slacks", array_json(c.slacks)}};
  if (c.witness) {
    out["witness"] = Json{{"index", *c.witness},
                          {"inequality", EmbeddabilityCertificate::describe_inequality(*c.witness)},
                          {"slack", c.slacks[*c.witness]}};
  } else {
    out["witness"] = nullptr;
  }
  return out;
}

Json to_json(const VertexReport& r, const MetricGraph& g) {
  Json quads = Json::array();
  for (const auto& q : r.quadruples) {
    Json item{{"neighbors", Json::array({g.label(q.neighbors[0]), g.label(q.neighbors[1]),
                                         g.label(q.neighbors[2])})},
              {"degenerate", q.degenerate}};
    if (!q.degenerate) {
      item["satisfied"] = q.satisfied;
      item["slacks"] = array_json(q.slacks);
      item["certificate"] = to_json(*q.certificate);
    }
    quads.push_back(item);
  }
  Json out{{"vertex", g.label(r.vertex)},
           {"kappa", r.kappa},
           {"verdict", r.verdict},
           {"max_a0", r.max_a0},
           {"skipped", r.skipped},
           {"quadruples", quads}};
  out["witness"] = r.witness ? witness_json(*r.witness, g) : Json(nullptr);
  return out;
}

Json to_json(const CompatibilityReport& r, const MetricGraph& g) {
  Json verts = Json::array();
  for (const auto& v : r.vertices) verts.push_back(to_json(v, g));
  Json out{{"verdict", r.verdict}, {"vertices", verts}};
  out["witness"] = r.witness ? witness_json(*r.witness, g) : Json(nullptr);
  return out;
}

Json to_json(const DilatationBounds& b) {
  Json out{{"K_I", b.K_I}, {"K_O_lower", b.K_O_lower}, {"K", b.K}};
  out["exact"] = b.exact ? Json(b.exact->str()) : Json(nullptr);
  return out;
}

Json to_json(const EdgeAngleReport& r) {
  Json edges = Json::array();
  Json angles = Json::array();
  for (const auto& e : r.edges) {
    Json item{{"u", e.u}, {"v", e.v}, {"alpha", e.alpha}, {"convex", e.convex}};
    item["contribution"] = e.contribution ? Json(*e.contribution) : Json("unknown");
    if (e.ill_conditioned) item["ill_conditioned"] = true;
    edges.push_back(item);
    angles.push_back(e.alpha);
  }
  Json reflex = Json::array();
  for (auto i : r.reflex) reflex.push_back(Json{{"u", r.edges[i].u}, {"v", r.edges[i].v}, {"alpha", r.edges[i].alpha}});
  Json out{{"edges", edges}, {"angles", angles}};
  out["bound"] = r.bound ? Json(*r.bound) : Json(nullptr);
  out["reflex"] = reflex;
  out["boundary_edges"] = r.boundary_edges;
  out["warnings"] = r.warnings;
  return out;
}

Json to_json(const LinkVolume& v) {
  return Json{{"value", v.value},   {"std_error", v.std_error}, {"samples", v.samples},
              {"exterior", v.exterior}, {"convex", v.convex},   {"valence", v.valence}};
}

Json to_json(const PleatedElement& e) {
  Json verts = Json::array();
  for (const auto& p : e.vertices) verts.push_back(point_json(p));
  Json faces = Json::array();
  for (const auto& f : e.faces) faces.push_back(array_json(f));
  return Json{{"vertices", verts}, {"faces", faces},          {"h", e.h},
              {"z", array_json(e.z)}, {"ratios", array_json(e.ratios)}, {"c", e.c}};
}

Json to_json(const DefectReport& d) {
  return Json{{"pleat", array_json(d.pleat)},
              {"boundary", array_json(d.boundary)},
              {"apex", array_json(d.apex)},
              {"max_defect", d.max_defect},
              {"c", d.c}};
}

Json document(const std::string& command, const Json& body) {
  Json out{{"schema_version", kSchemaVersion}, {"command", command}};
  for (const auto& [k, v] : body.items()) out[k] = v;
  return out;
}

}  // namespace plembed
