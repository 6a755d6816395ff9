#pragma once

// Finite flag (clique) complexes stored as their 1-skeleton.
//
// Vertices carry opaque string ids and are kept sorted, so a vertex index
// is also its position in the canonical (lexicographic) order. Simplices
// are never stored: a vertex set is a simplex iff it is a clique.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace spherecx {

using VertexIndex = std::size_t;
using Bitset = boost::dynamic_bitset<std::uint64_t>;

/// Sorted list of vertex indices of a host complex.
using Simplex = std::vector<VertexIndex>;

struct Edge {
  VertexIndex u = 0;
  VertexIndex v = 0;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Simplex counts per dimension and the alternating sum.
struct FVector {
  std::vector<std::size_t> counts;
  long long euler = 0;
};

class FlagComplex {
 public:
  FlagComplex() = default;

  /// Builds a complex from declared vertices and undirected adjacency
  /// pairs. Duplicate pairs are merged; vertex ids must be unique.
  /// Throws std::invalid_argument on an unknown id, a self pair, or a
  /// duplicate vertex.
  static FlagComplex from_adjacency(
      std::vector<std::string> vertices,
      std::span<const std::pair<std::string, std::string>> pairs);

  /// Same, with pairs given as indices into the sorted vertex list.
  static FlagComplex from_sorted_indices(std::vector<std::string> sorted_vertices,
                                         std::span<const Edge> edges);

  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }

  const std::vector<std::string>& vertices() const { return ids_; }
  const std::string& id(VertexIndex v) const { return ids_.at(v); }
  std::optional<VertexIndex> find(std::string_view id) const;
  /// Throws std::invalid_argument for an unknown id.
  VertexIndex index(std::string_view id) const;

  bool adjacent(VertexIndex u, VertexIndex v) const { return rows_[u][v]; }
  const Bitset& neighbor_set(VertexIndex v) const { return rows_[v]; }
  const std::vector<VertexIndex>& neighbors(VertexIndex v) const { return lists_[v]; }
  std::size_t degree(VertexIndex v) const { return lists_[v].size(); }

  std::size_t edge_count() const { return edge_count_; }
  std::vector<Edge> edges() const;

  bool is_clique(std::span<const VertexIndex> vs) const;
  /// Largest clique size minus one; -1 for the empty complex.
  int dimension() const;

  /// Subcomplex induced on the given vertices (ids and tags preserved).
  FlagComplex induced(std::span<const VertexIndex> vs) const;

  // Free-form per-vertex tags ("separating", "boundary-effect", ...).
  const std::vector<std::string>& tags(VertexIndex v) const { return tags_[v]; }
  bool has_tag(VertexIndex v, std::string_view tag) const;
  void add_tag(VertexIndex v, std::string tag);

  std::size_t component_count() const;
  bool is_connected() const { return component_count() <= 1; }
  /// True iff the 1-skeleton has no cycle.
  bool is_forest() const { return edge_count_ + component_count() == size(); }

  Bitset make_bitset() const { return Bitset(size()); }

  friend bool operator==(const FlagComplex& a, const FlagComplex& b) {
    return a.ids_ == b.ids_ && a.rows_ == b.rows_;
  }

 private:
  std::vector<std::string> ids_;
  std::vector<Bitset> rows_;
  std::vector<std::vector<VertexIndex>> lists_;
  std::vector<std::vector<std::string>> tags_;
  std::size_t edge_count_ = 0;
};

FlagComplex flag_from_adjacency(std::vector<std::string> vertices,
                                std::span<const std::pair<std::string, std::string>> pairs);

/// Induced subcomplex on the common neighbours of `s` (excluding `s`).
/// Throws std::invalid_argument if `s` is not a clique.
FlagComplex link_of(const FlagComplex& c, std::span<const VertexIndex> s);
/// Vertex indices (in `c`) of the link of `s`.
std::vector<VertexIndex> link_vertices(const FlagComplex& c, std::span<const VertexIndex> s);

/// Join: disjoint union plus every cross pair. Throws on id collision.
FlagComplex join_of(const FlagComplex& a, const FlagComplex& b);

/// Inclusion-maximal cliques, each sorted, list sorted lexicographically.
std::vector<Simplex> maximal_cliques(const FlagComplex& c);

/// Every clique of size 1..max_size, grouped by size (index 0 = vertices),
/// each group in lexicographic order.
std::vector<std::vector<Simplex>> cliques_by_size(const FlagComplex& c, std::size_t max_size);

/// Throws std::invalid_argument when max_dim < 0.
FVector f_vector(const FlagComplex& c, int max_dim);

}  // namespace spherecx
