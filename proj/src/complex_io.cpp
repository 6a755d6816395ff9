#include "spherecx/complex_io.hpp"

#include <sstream>
#include <stdexcept>

namespace spherecx {

namespace {

std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  out += '"';
  return out;
}

}  // namespace

Json complex_to_json(const FlagComplex& c, const Json& meta) {
  Json doc;
  doc["vertices"] = c.vertices();
  Json edges = Json::array();
  for (const Edge& e : c.edges()) edges.push_back({c.id(e.u), c.id(e.v)});
  doc["edges"] = std::move(edges);
  Json m = meta.is_object() ? meta : Json::object();
  Json tags = Json::object();
  for (VertexIndex v = 0; v < c.size(); ++v) {
    if (!c.tags(v).empty()) tags[c.id(v)] = c.tags(v);
  }
  if (!tags.empty()) m["tags"] = std::move(tags);
  if (!m.empty()) doc["meta"] = std::move(m);
  return doc;
}

FlagComplex complex_from_json(const Json& doc) {
  if (!doc.is_object() || !doc.contains("vertices") || !doc["vertices"].is_array()) {
    throw std::invalid_argument("complex document needs a 'vertices' array");
  }
  std::vector<std::string> vertices;
  for (const auto& v : doc["vertices"]) {
    if (!v.is_string()) throw std::invalid_argument("vertex ids must be strings");
    vertices.push_back(v.get<std::string>());
  }
  std::vector<std::pair<std::string, std::string>> pairs;
  if (doc.contains("edges")) {
    if (!doc["edges"].is_array()) throw std::invalid_argument("'edges' must be an array");
    for (const auto& e : doc["edges"]) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string()) {
        throw std::invalid_argument("each edge must be a pair of vertex ids");
      }
      pairs.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
    }
  }
  FlagComplex c = FlagComplex::from_adjacency(std::move(vertices), pairs);
  if (doc.contains("meta") && doc["meta"].is_object() && doc["meta"].contains("tags")) {
    const Json& tags = doc["meta"]["tags"];
    if (!tags.is_object()) throw std::invalid_argument("meta.tags must be an object");
    for (const auto& [id, list] : tags.items()) {
      VertexIndex v = c.index(id);
      if (!list.is_array()) throw std::invalid_argument("meta.tags entries must be arrays");
      for (const auto& t : list) c.add_tag(v, t.get<std::string>());
    }
  }
  return c;
}

std::string complex_to_dot(const FlagComplex& c, const std::string& name) {
  std::ostringstream os;
  os << "graph " << name << " {\n";
  for (VertexIndex v = 0; v < c.size(); ++v) {
    os << "  " << dot_quote(c.id(v));
    if (c.has_tag(v, "separating")) os << " [shape=box]";
    os << ";\n";
  }
  for (const Edge& e : c.edges()) os << "  " << dot_quote(c.id(e.u)) << " -- " << dot_quote(c.id(e.v)) << ";\n";
  os << "}\n";
  return os.str();
}

Json vertex_map_to_json(const FlagComplex& src, const FlagComplex& dst, const VertexMap& f) {
  Json doc = Json::object();
  for (VertexIndex v = 0; v < src.size(); ++v) doc[src.id(v)] = dst.id(f(v));
  return doc;
}

VertexMap vertex_map_from_json(const FlagComplex& src, const FlagComplex& dst, const Json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("vertex map must be an object");
  VertexMap f;
  f.image.assign(src.size(), 0);
  std::vector<bool> seen(src.size(), false);
  for (const auto& [key, value] : doc.items()) {
    VertexIndex v = src.index(key);
    f.image[v] = dst.index(value.get<std::string>());
    seen[v] = true;
  }
  for (bool b : seen) {
    if (!b) throw std::invalid_argument("vertex map is not total on the source");
  }
  return f;
}

}  // namespace spherecx
