#include <cctype>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "plembed/error.hpp"
#include "plembed/graph.hpp"

namespace plembed {

namespace {

// Strips a `#` comment and surrounding whitespace.
std::string strip(const std::string& line) {
  std::string s = line.substr(0, line.find('#'));
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_number(const std::string& token, std::size_t line) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(token, &used);
  } catch (const std::exception&) {
    throw ParseError("expected a number, got '" + token + "'", line);
  }
  if (used != token.size()) throw ParseError("expected a number, got '" + token + "'", line);
  return v;
}

}  // namespace

GraphDocument parse_edge_list(std::istream& in) {
  MetricGraph::Builder builder;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = strip(raw);
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string a;
    std::string b;
    std::string len;
    std::string extra;
    if (!(ls >> a >> b >> len) || (ls >> extra)) {
      throw ParseError("expected 'label label length'", line_no);
    }
    const double length = parse_number(len, line_no);
    try {
      builder.add_edge(a, b, length);
    } catch (const std::exception& e) {
      throw ParseError(e.what(), line_no);
    }
  }
  return {std::move(builder).build(), {}};
}

GraphDocument parse_graph_json(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), 0);
  }
  if (!doc.is_object()) throw ParseError("graph document must be a JSON object", 0);

  MetricGraph::Builder builder;
  std::map<std::string, double> kappa_by_label;
  try {
    if (doc.contains("vertices")) {
      for (const auto& v : doc.at("vertices")) {
        const std::string label = v.at("label").get<std::string>();
        builder.vertex(label);
        if (v.contains("kappa")) kappa_by_label[label] = v.at("kappa").get<double>();
      }
    }
    for (const auto& e : doc.at("edges")) {
      builder.add_edge(e.at("u").get<std::string>(), e.at("v").get<std::string>(),
                       e.at("length").get<double>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed graph document: ") + e.what(), 0);
  } catch (const DomainError& e) {
    throw ParseError(e.what(), 0);
  } catch (const TopologyError& e) {
    throw ParseError(e.what(), 0);
  }
  GraphDocument out{std::move(builder).build(), {}};
  for (const auto& [label, k] : kappa_by_label) {
    if (!std::isfinite(k)) throw ParseError("kappa for " + label + " must be finite", 0);
    out.kappa[*out.graph.find(label)] = k;
  }
  return out;
}

GraphDocument parse_graph_document(std::istream& in) {
  std::ws(in);
  if (in.peek() == '{') return parse_graph_json(in);
  return parse_edge_list(in);
}

std::map<VertexId, double> parse_kappa_map(std::istream& in, const MetricGraph& g) {
  std::map<VertexId, double> out;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = strip(raw);
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string label;
    std::string value;
    std::string extra;
    if (!(ls >> label >> value) || (ls >> extra)) throw ParseError("expected 'label kappa'", line_no);
    const auto v = g.find(label);
    if (!v) throw ParseError("unknown vertex '" + label + "'", line_no);
    const double k = parse_number(value, line_no);
    if (!std::isfinite(k)) throw ParseError("kappa must be finite", line_no);
    if (!out.emplace(*v, k).second) throw ParseError("duplicate kappa for '" + label + "'", line_no);
  }
  return out;
}

}  // namespace plembed
