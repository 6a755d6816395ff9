#pragma once

// Edge isomorphisms between finite multigraphs (loops and parallel edges
// allowed) and their lifting to vertex isomorphisms.

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "spherecx/dual_graph.hpp"
#include "spherecx/flag_complex.hpp"

namespace spherecx {

struct MultiEdge {
  std::string id;
  VertexIndex u = 0;
  VertexIndex v = 0;
  bool is_loop() const { return u == v; }
};

/// Vertices and edges are kept sorted by id.
class Multigraph {
 public:
  Multigraph() = default;
  /// Edges are (id, endpoint id, endpoint id). Throws on duplicate or
  /// unknown ids.
  Multigraph(std::vector<std::string> vertices,
             const std::vector<std::array<std::string, 3>>& edges);

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<MultiEdge>& edges() const { return edges_; }
  const std::vector<std::size_t>& incident(VertexIndex v) const { return incident_[v]; }

  std::optional<VertexIndex> find_vertex(const std::string& id) const;
  std::optional<std::size_t> find_edge(const std::string& id) const;

  bool is_connected() const;

 private:
  std::vector<std::string> vertices_;
  std::vector<MultiEdge> edges_;
  std::vector<std::vector<std::size_t>> incident_;
};

/// Pants become vertices and bonds become edges (id = bond label, or "b<i>").
Multigraph to_multigraph(const DualMultigraph& d);

/// {"vertices": [id], "edges": [{"id": e, "ends": [u, v]}]}
nlohmann::json multigraph_to_json(const Multigraph& g);
Multigraph multigraph_from_json(const nlohmann::json& doc);

struct EdgeBijection {
  Multigraph source;
  Multigraph target;
  std::vector<std::size_t> assignment;  // source edge index -> target edge index
};

/// Throws std::invalid_argument unless `map` is a bijection between the
/// edge id sets.
EdgeBijection make_edge_bijection(Multigraph source, Multigraph target,
                                  const std::map<std::string, std::string>& map);

/// {"source": <multigraph>, "target": <multigraph>, "map": {edgeId: edgeId}}
nlohmann::json edge_map_to_json(const EdgeBijection& psi);
EdgeBijection edge_map_from_json(const nlohmann::json& doc);

/// Every pair {e, e'} (including e = e') spans a subgraph isomorphic to the
/// one spanned by the images, compatibly with the bijection.
bool is_edge_isomorphism(const EdgeBijection& psi);

/// First 3-edge set (lexicographic on sorted edge indices) spanning a
/// triangle on one side and a 3-star on the other. Throws if psi is not an
/// edge isomorphism.
std::optional<std::array<std::size_t, 3>> find_k3_k13_pair(const EdgeBijection& psi);

enum class LiftVerdict { lifted, obstructed, ambiguous_order_2 };
std::string to_string(LiftVerdict v);

struct LiftResult {
  LiftVerdict verdict = LiftVerdict::obstructed;
  std::vector<VertexIndex> vertex_map;         // when lifted: source vertex -> target vertex
  std::optional<std::array<std::size_t, 3>> obstruction;  // when obstructed
};

/// True iff `vertex_map` is a bijection whose action on edge endpoints
/// reproduces psi exactly.
bool induces(const EdgeBijection& psi, const std::vector<VertexIndex>& vertex_map);

/// Throws std::invalid_argument on a disconnected source, a target with
/// isolated vertices, or a non-edge-isomorphism.
LiftResult lift_edge_isomorphism(const EdgeBijection& psi);

/// Lifts psi on a larger graph, reusing `prev` (a lift of `prev_psi` on a
/// connected subgraph, matched by vertex and edge ids). Throws if prev is
/// not lifted, the subgraph has two vertices, or psi does not restrict to
/// prev_psi.
LiftResult extend_lift(const EdgeBijection& prev_psi, const LiftResult& prev, const EdgeBijection& psi);

}  // namespace spherecx
