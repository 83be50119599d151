#pragma once

// JSON views of the result types. Key order is fixed, so equal results
// serialize to identical bytes.

#include <json.hpp>

#include "plembed/bzelement.hpp"
#include "plembed/graph.hpp"
#include "plembed/qcbounds.hpp"
#include "plembed/quadruple.hpp"
#include "plembed/skeleton.hpp"

namespace plembed {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1.0";

Json to_json(const MetricQuadruple& q);
Json to_json(const WaldResult& r);
Json to_json(const EmbeddabilityCertificate& c);
Json to_json(const VertexReport& r, const MetricGraph& g);
Json to_json(const CompatibilityReport& r, const MetricGraph& g);
Json to_json(const DilatationBounds& b);
Json to_json(const EdgeAngleReport& r);
Json to_json(const LinkVolume& v);
Json to_json(const PleatedElement& e);
Json to_json(const DefectReport& d);

/// Top-level document: {"schema_version": ..., "command": ..., <body>}.
Json document(const std::string& command, const Json& body);

}  // namespace plembed
