#include "spherecx/whitney.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace spherecx {

namespace {

constexpr VertexIndex unset = static_cast<VertexIndex>(-1);

std::array<VertexIndex, 2> ends(const MultiEdge& e) { return {std::min(e.u, e.v), std::max(e.u, e.v)}; }

// Does some vertex bijection between the spans of `src` and `dst` send each
// src[i] onto dst[i]?
bool compatible_spans(const Multigraph& a, const Multigraph& b, const std::vector<std::size_t>& src,
                      const std::vector<std::size_t>& dst) {
  std::vector<VertexIndex> va, vb;
  for (std::size_t e : src) {
    va.push_back(a.edges()[e].u);
    va.push_back(a.edges()[e].v);
  }
  for (std::size_t e : dst) {
    vb.push_back(b.edges()[e].u);
    vb.push_back(b.edges()[e].v);
  }
  std::sort(va.begin(), va.end());
  va.erase(std::unique(va.begin(), va.end()), va.end());
  std::sort(vb.begin(), vb.end());
  vb.erase(std::unique(vb.begin(), vb.end()), vb.end());
  if (va.size() != vb.size()) return false;
  std::vector<std::size_t> perm(vb.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  do {
    auto image = [&](VertexIndex v) {
      return vb[perm[static_cast<std::size_t>(std::lower_bound(va.begin(), va.end(), v) - va.begin())]];
    };
    bool ok = true;
    for (std::size_t i = 0; i < src.size() && ok; ++i) {
      const MultiEdge& e = a.edges()[src[i]];
      MultiEdge mapped{"", image(e.u), image(e.v)};
      ok = ends(mapped) == ends(b.edges()[dst[i]]);
    }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

enum class Shape { triangle, star, other };

Shape shape_of(const Multigraph& g, const std::array<std::size_t, 3>& eta) {
  std::vector<VertexIndex> vs;
  for (std::size_t e : eta) {
    if (g.edges()[e].is_loop()) return Shape::other;
    vs.push_back(g.edges()[e].u);
    vs.push_back(g.edges()[e].v);
  }
  std::array<std::array<VertexIndex, 2>, 3> pairs;
  for (std::size_t i = 0; i < 3; ++i) pairs[i] = ends(g.edges()[eta[i]]);
  std::sort(pairs.begin(), pairs.end());
  if (pairs[0] == pairs[1] || pairs[1] == pairs[2]) return Shape::other;
  std::sort(vs.begin(), vs.end());
  std::vector<VertexIndex> distinct = vs;
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (distinct.size() == 3) return Shape::triangle;  // three distinct pairs on three vertices
  if (distinct.size() == 4) {
    for (VertexIndex c : distinct) {
      if (std::count(vs.begin(), vs.end(), c) == 3) return Shape::star;
    }
  }
  return Shape::other;
}

bool has_triangle(const Multigraph& g) {
  const std::size_t m = g.edge_count();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      for (std::size_t k = j + 1; k < m; ++k) {
        if (shape_of(g, {i, j, k}) == Shape::triangle) return true;
      }
    }
  }
  return false;
}

bool is_pair(Shape a, Shape b) {
  return (a == Shape::triangle && b == Shape::star) || (a == Shape::star && b == Shape::triangle);
}

std::optional<std::array<std::size_t, 3>> first_pair(const EdgeBijection& psi, const std::vector<bool>* fresh) {
  const std::size_t m = psi.source.edge_count();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      for (std::size_t k = j + 1; k < m; ++k) {
        if (fresh && !(*fresh)[i] && !(*fresh)[j] && !(*fresh)[k]) continue;
        std::array<std::size_t, 3> eta{i, j, k};
        std::array<std::size_t, 3> image{psi.assignment[i], psi.assignment[j], psi.assignment[k]};
        if (is_pair(shape_of(psi.source, eta), shape_of(psi.target, image))) return eta;
      }
    }
  }
  return std::nullopt;
}

bool only_two_vertices_joined(const Multigraph& g) {
  if (g.vertex_count() != 2) return false;
  return std::none_of(g.edges().begin(), g.edges().end(), [](const MultiEdge& e) { return e.is_loop(); });
}

void check_lift_inputs(const EdgeBijection& psi) {
  if (!psi.source.is_connected()) throw std::invalid_argument("lift: source graph is disconnected");
  for (VertexIndex v = 0; v < psi.target.vertex_count(); ++v) {
    if (psi.target.incident(v).empty() && psi.target.vertex_count() > 1) {
      throw std::invalid_argument("lift: target has an isolated vertex");
    }
  }
  if (!is_edge_isomorphism(psi)) throw std::invalid_argument("lift: map is not an edge isomorphism");
}

// Fills unset entries of phi from local edge data; see lift_edge_isomorphism.
void resolve_vertices(const EdgeBijection& psi, std::vector<VertexIndex>& phi) {
  const Multigraph& g = psi.source;
  const Multigraph& h = psi.target;
  auto image = [&](std::size_t e) -> const MultiEdge& { return h.edges()[psi.assignment[e]]; };
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    if (phi[v] != unset) continue;
    // A loop at v maps to a loop; its vertex is the image of v.
    for (std::size_t e : g.incident(v)) {
      if (g.edges()[e].is_loop()) {
        phi[v] = image(e).u;
        break;
      }
    }
    if (phi[v] != unset) continue;
    // Two incident edges with different far ends meet only at v; so do their images.
    const auto& inc = g.incident(v);
    for (std::size_t i = 0; i < inc.size() && phi[v] == unset; ++i) {
      for (std::size_t j = i + 1; j < inc.size(); ++j) {
        const MultiEdge& a = g.edges()[inc[i]];
        const MultiEdge& b = g.edges()[inc[j]];
        VertexIndex fa = a.u == v ? a.v : a.u;
        VertexIndex fb = b.u == v ? b.v : b.u;
        if (fa == fb) continue;
        auto ia = ends(image(inc[i]));
        auto ib = ends(image(inc[j]));
        for (VertexIndex x : ia) {
          if (x == ib[0] || x == ib[1]) phi[v] = x;
        }
        break;
      }
    }
  }
  // Vertices whose edges all run to one neighbour: take the other end of an image.
  for (bool progress = true; progress;) {
    progress = false;
    for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
      if (phi[v] != unset) continue;
      for (std::size_t e : g.incident(v)) {
        const MultiEdge& edge = g.edges()[e];
        VertexIndex u = edge.u == v ? edge.v : edge.u;
        if (phi[u] == unset) continue;
        const MultiEdge& img = image(e);
        phi[v] = img.u == phi[u] ? img.v : img.u;
        progress = true;
        break;
      }
    }
  }
}

}  // namespace

Multigraph::Multigraph(std::vector<std::string> vertices, const std::vector<std::array<std::string, 3>>& edges)
    : vertices_(std::move(vertices)) {
  std::sort(vertices_.begin(), vertices_.end());
  if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end()) {
    throw std::invalid_argument("duplicate vertex id");
  }
  for (const auto& [id, a, b] : edges) {
    auto u = find_vertex(a);
    auto v = find_vertex(b);
    if (!u || !v) throw std::invalid_argument("edge " + id + " names an unknown vertex");
    edges_.push_back(MultiEdge{id, *u, *v});
  }
  std::sort(edges_.begin(), edges_.end(), [](const MultiEdge& x, const MultiEdge& y) { return x.id < y.id; });
  for (std::size_t i = 1; i < edges_.size(); ++i) {
    if (edges_[i].id == edges_[i - 1].id) throw std::invalid_argument("duplicate edge id " + edges_[i].id);
  }
  incident_.assign(vertices_.size(), {});
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    incident_[edges_[e].u].push_back(e);
    if (!edges_[e].is_loop()) incident_[edges_[e].v].push_back(e);
  }
}

std::optional<VertexIndex> Multigraph::find_vertex(const std::string& id) const {
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), id);
  if (it == vertices_.end() || *it != id) return std::nullopt;
  return static_cast<VertexIndex>(it - vertices_.begin());
}

std::optional<std::size_t> Multigraph::find_edge(const std::string& id) const {
  auto it = std::lower_bound(edges_.begin(), edges_.end(), id,
                             [](const MultiEdge& e, const std::string& key) { return e.id < key; });
  if (it == edges_.end() || it->id != id) return std::nullopt;
  return static_cast<std::size_t>(it - edges_.begin());
}

bool Multigraph::is_connected() const {
  if (vertices_.empty()) return true;
  std::vector<bool> seen(vertices_.size(), false);
  std::deque<VertexIndex> queue{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!queue.empty()) {
    VertexIndex x = queue.front();
    queue.pop_front();
    for (std::size_t e : incident_[x]) {
      VertexIndex y = edges_[e].u == x ? edges_[e].v : edges_[e].u;
      if (!seen[y]) {
        seen[y] = true;
        ++reached;
        queue.push_back(y);
      }
    }
  }
  return reached == vertices_.size();
}

Multigraph to_multigraph(const DualMultigraph& d) {
  std::vector<std::array<std::string, 3>> edges;
  for (std::size_t i = 0; i < d.bonds().size(); ++i) {
    const Bond& b = d.bonds()[i];
    edges.push_back({b.label.empty() ? "b" + std::to_string(i) : b.label, d.pants_ids()[b.a.pants],
                     d.pants_ids()[b.b.pants]});
  }
  return Multigraph(d.pants_ids(), edges);
}

nlohmann::json multigraph_to_json(const Multigraph& g) {
  nlohmann::json doc;
  doc["vertices"] = g.vertices();
  nlohmann::json edges = nlohmann::json::array();
  for (const MultiEdge& e : g.edges()) {
    edges.push_back({{"id", e.id}, {"ends", {g.vertices()[e.u], g.vertices()[e.v]}}});
  }
  doc["edges"] = std::move(edges);
  return doc;
}

Multigraph multigraph_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("vertices") || !doc.contains("edges")) {
    throw std::invalid_argument("multigraph needs 'vertices' and 'edges'");
  }
  std::vector<std::array<std::string, 3>> edges;
  for (const auto& e : doc["edges"]) {
    if (!e.is_object() || !e.contains("id") || !e.contains("ends") || e["ends"].size() != 2) {
      throw std::invalid_argument("each edge needs 'id' and two 'ends'");
    }
    edges.push_back({e["id"].get<std::string>(), e["ends"][0].get<std::string>(), e["ends"][1].get<std::string>()});
  }
  return Multigraph(doc["vertices"].get<std::vector<std::string>>(), edges);
}

EdgeBijection make_edge_bijection(Multigraph source, Multigraph target,
                                  const std::map<std::string, std::string>& map) {
  if (source.edge_count() != target.edge_count() || map.size() != source.edge_count()) {
    throw std::invalid_argument("edge map is not a bijection: sizes differ");
  }
  std::vector<std::size_t> assignment(source.edge_count());
  std::vector<bool> hit(target.edge_count(), false);
  for (const auto& [from, to] : map) {
    auto e = source.find_edge(from);
    auto f = target.find_edge(to);
    if (!e) throw std::invalid_argument("edge map names an unknown source edge: " + from);
    if (!f) throw std::invalid_argument("edge map names an unknown target edge: " + to);
    if (hit[*f]) throw std::invalid_argument("edge map is not injective at " + to);
    hit[*f] = true;
    assignment[*e] = *f;
  }
  return EdgeBijection{std::move(source), std::move(target), std::move(assignment)};
}

nlohmann::json edge_map_to_json(const EdgeBijection& psi) {
  nlohmann::json map = nlohmann::json::object();
  for (std::size_t e = 0; e < psi.assignment.size(); ++e) {
    map[psi.source.edges()[e].id] = psi.target.edges()[psi.assignment[e]].id;
  }
  return {{"source", multigraph_to_json(psi.source)}, {"target", multigraph_to_json(psi.target)}, {"map", map}};
}

EdgeBijection edge_map_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("source") || !doc.contains("target") || !doc.contains("map")) {
    throw std::invalid_argument("edge map document needs 'source', 'target' and 'map'");
  }
  return make_edge_bijection(multigraph_from_json(doc["source"]), multigraph_from_json(doc["target"]),
                             doc["map"].get<std::map<std::string, std::string>>());
}

bool is_edge_isomorphism(const EdgeBijection& psi) {
  const std::size_t m = psi.source.edge_count();
  if (psi.assignment.size() != m || psi.target.edge_count() != m) return false;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i; j < m; ++j) {
      std::vector<std::size_t> src{i}, dst{psi.assignment[i]};
      if (j != i) {
        src.push_back(j);
        dst.push_back(psi.assignment[j]);
      }
      if (!compatible_spans(psi.source, psi.target, src, dst)) return false;
    }
  }
  return true;
}

std::optional<std::array<std::size_t, 3>> find_k3_k13_pair(const EdgeBijection& psi) {
  if (!is_edge_isomorphism(psi)) throw std::invalid_argument("find_k3_k13_pair: not an edge isomorphism");
  if (!has_triangle(psi.source) && !has_triangle(psi.target)) return std::nullopt;
  return first_pair(psi, nullptr);
}

std::string to_string(LiftVerdict v) {
  switch (v) {
    case LiftVerdict::lifted: return "lifted";
    case LiftVerdict::obstructed: return "obstructed";
    case LiftVerdict::ambiguous_order_2: return "ambiguous-order-2";
  }
  return "unknown";
}

bool induces(const EdgeBijection& psi, const std::vector<VertexIndex>& phi) {
  if (phi.size() != psi.source.vertex_count() || phi.size() != psi.target.vertex_count()) return false;
  std::vector<bool> hit(phi.size(), false);
  for (VertexIndex t : phi) {
    if (t >= phi.size() || hit[t]) return false;
    hit[t] = true;
  }
  for (std::size_t e = 0; e < psi.source.edge_count(); ++e) {
    const MultiEdge& edge = psi.source.edges()[e];
    MultiEdge mapped{"", phi[edge.u], phi[edge.v]};
    if (ends(mapped) != ends(psi.target.edges()[psi.assignment[e]])) return false;
  }
  return true;
}

LiftResult lift_edge_isomorphism(const EdgeBijection& psi) {
  check_lift_inputs(psi);
  LiftResult out;
  if (auto eta = find_k3_k13_pair(psi)) {
    out.verdict = LiftVerdict::obstructed;
    out.obstruction = eta;
    return out;
  }
  if (only_two_vertices_joined(psi.source)) {
    out.verdict = LiftVerdict::ambiguous_order_2;
    return out;
  }
  std::vector<VertexIndex> phi(psi.source.vertex_count(), unset);
  if (phi.size() == 1 && psi.source.edge_count() == 0) phi[0] = 0;
  resolve_vertices(psi, phi);
  if (!induces(psi, phi)) throw std::logic_error("lift: local reconstruction does not induce the edge map");
  out.verdict = LiftVerdict::lifted;
  out.vertex_map = std::move(phi);
  return out;
}

LiftResult extend_lift(const EdgeBijection& prev_psi, const LiftResult& prev, const EdgeBijection& psi) {
  if (prev.verdict != LiftVerdict::lifted) throw std::invalid_argument("extend_lift: previous step is not lifted");
  if (prev_psi.source.vertex_count() == 2) throw std::invalid_argument("extend_lift: previous graph has two vertices");
  if (!prev_psi.source.is_connected()) throw std::invalid_argument("extend_lift: previous graph is disconnected");
  check_lift_inputs(psi);

  // Match the smaller graph inside the larger one by ids.
  std::vector<VertexIndex> phi(psi.source.vertex_count(), unset);
  for (VertexIndex v = 0; v < prev_psi.source.vertex_count(); ++v) {
    auto big_v = psi.source.find_vertex(prev_psi.source.vertices()[v]);
    auto big_t = psi.target.find_vertex(prev_psi.target.vertices()[prev.vertex_map.at(v)]);
    if (!big_v || !big_t) throw std::invalid_argument("extend_lift: restriction mismatch (missing vertex)");
    phi[*big_v] = *big_t;
  }
  std::vector<bool> fresh(psi.source.edge_count(), true);
  for (std::size_t e = 0; e < prev_psi.source.edge_count(); ++e) {
    const MultiEdge& small = prev_psi.source.edges()[e];
    auto big = psi.source.find_edge(small.id);
    if (!big) throw std::invalid_argument("extend_lift: restriction mismatch (missing edge " + small.id + ")");
    const MultiEdge& edge = psi.source.edges()[*big];
    bool same_ends = psi.source.vertices()[edge.u] == prev_psi.source.vertices()[small.u] &&
                     psi.source.vertices()[edge.v] == prev_psi.source.vertices()[small.v];
    bool swapped = psi.source.vertices()[edge.u] == prev_psi.source.vertices()[small.v] &&
                   psi.source.vertices()[edge.v] == prev_psi.source.vertices()[small.u];
    if (!same_ends && !swapped) throw std::invalid_argument("extend_lift: edge " + small.id + " changed endpoints");
    const std::string& small_image = prev_psi.target.edges()[prev_psi.assignment[e]].id;
    if (psi.target.edges()[psi.assignment[*big]].id != small_image) {
      throw std::invalid_argument("extend_lift: edge map does not restrict to the previous one at " + small.id);
    }
    fresh[*big] = false;
  }

  LiftResult out;
  // Triples inside the old graph were cleared when prev was lifted.
  if (auto eta = first_pair(psi, &fresh)) {
    out.verdict = LiftVerdict::obstructed;
    out.obstruction = eta;
    return out;
  }
  resolve_vertices(psi, phi);
  if (!induces(psi, phi)) throw std::logic_error("extend_lift: extension does not induce the edge map");
  out.verdict = LiftVerdict::lifted;
  out.vertex_map = std::move(phi);
  return out;
}

}  // namespace spherecx
