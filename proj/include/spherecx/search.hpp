#pragma once

// Backtracking searches for vertex maps between flag complexes.
//
// All searches are single-threaded and emit results in lexicographic order
// of the image vector, so output is reproducible.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "spherecx/flag_complex.hpp"

namespace spherecx {

/// A total assignment of source vertices to target vertices, by index.
struct VertexMap {
  std::vector<VertexIndex> image;

  VertexIndex operator()(VertexIndex v) const { return image[v]; }
  friend auto operator<=>(const VertexMap&, const VertexMap&) = default;
};

VertexMap identity_map(std::size_t n);

// Property checks. These never assume the map came from a search.
bool is_total(const FlagComplex& src, const FlagComplex& dst, const VertexMap& f);
/// Adjacent vertices go to adjacent or equal vertices.
bool is_simplicial(const FlagComplex& src, const FlagComplex& dst, const VertexMap& f);
/// Injective on every closed star.
bool is_locally_injective(const FlagComplex& src, const FlagComplex& dst, const VertexMap& f);
bool is_injective(const VertexMap& f);
/// Bijective, adjacency preserved and reflected.
bool is_isomorphism(const FlagComplex& src, const FlagComplex& dst, const VertexMap& f);

enum class Decision {
  found,
  exhausted,
  vertex_count_precheck,
  acyclicity_shortcut,
  invariant_precheck,
};

std::string to_string(Decision d);

struct SearchOutcome {
  std::optional<VertexMap> map;
  Decision decided_by = Decision::exhausted;
  std::uint64_t nodes = 0;
};

struct EmbeddingOptions {
  bool vertex_count_precheck = true;
  bool acyclicity_shortcut = true;
};

/// Injective simplicial map src -> dst (adjacent to adjacent). Absence is
/// reported only after exhausting the search, or by a sound precheck.
SearchOutcome search_embedding(const FlagComplex& src, const FlagComplex& dst,
                               const EmbeddingOptions& options = {});

SearchOutcome search_isomorphism(const FlagComplex& a, const FlagComplex& b);

struct LocalMapOptions {
  /// Keep only maps sending every clique in `maximal_cliques` (indices in
  /// the source) to a maximal clique of the target.
  bool require_maximal = false;
  std::vector<Simplex> maximal_cliques;
};

/// All simplicial maps src -> target that are injective on closed stars.
std::vector<VertexMap> enumerate_locally_injective_maps(const FlagComplex& src, const FlagComplex& target,
                                                        const LocalMapOptions& options = {});

/// Automorphisms of `c` agreeing with the given (source, image) pairs.
/// Stops after `limit` results (0 = no limit). Sorted.
std::vector<VertexMap> automorphisms_extending(const FlagComplex& c,
                                               std::span<const std::pair<VertexIndex, VertexIndex>> fixed,
                                               std::size_t limit = 0);

/// Stable colour refinement (1-dimensional Weisfeiler-Leman) run jointly on
/// both complexes so colours are comparable. Initial colours may be empty
/// (all equal). Returns the refined colours of a and b.
std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>> refine_jointly(
    const FlagComplex& a, const FlagComplex& b, std::vector<std::uint32_t> initial_a = {},
    std::vector<std::uint32_t> initial_b = {});

}  // namespace spherecx
