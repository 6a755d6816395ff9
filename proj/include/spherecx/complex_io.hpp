#pragma once

#include <string>

#include <json.hpp>

#include "spherecx/flag_complex.hpp"
#include "spherecx/search.hpp"

namespace spherecx {

using Json = nlohmann::json;

/// {"vertices": [id...], "edges": [[id, id]...], "meta": {...}}. Tags, when
/// present, are written to meta.tags as {id: [tag...]}.
Json complex_to_json(const FlagComplex& c, const Json& meta = Json::object());
/// Throws std::invalid_argument on a malformed document.
FlagComplex complex_from_json(const Json& doc);

/// Undirected graph in DOT syntax; `name` must be a DOT identifier.
std::string complex_to_dot(const FlagComplex& c, const std::string& name = "complex");

/// {source_id: target_id, ...}
Json vertex_map_to_json(const FlagComplex& src, const FlagComplex& dst, const VertexMap& f);
VertexMap vertex_map_from_json(const FlagComplex& src, const FlagComplex& dst, const Json& doc);

}  // namespace spherecx
