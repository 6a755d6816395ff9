#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "spherecx/flag_complex.hpp"

namespace spherecx {

/// Pairwise-disjoint spheres: a clique of an ambient complex (indices).
struct SphereSystem {
  Simplex members;  // sorted

  bool contains(VertexIndex v) const;
  friend auto operator<=>(const SphereSystem&, const SphereSystem&) = default;
};

/// A maximal sphere system.
struct PantsDecomposition {
  SphereSystem system;

  const Simplex& members() const { return system.members; }
  bool contains(VertexIndex v) const { return system.contains(v); }
  friend auto operator<=>(const PantsDecomposition&, const PantsDecomposition&) = default;
};

/// Throws std::invalid_argument if `members` is not a clique of `ambient`.
SphereSystem make_system(const FlagComplex& ambient, Simplex members);
/// Throws std::invalid_argument if `members` is not a maximal clique.
PantsDecomposition make_pants(const FlagComplex& ambient, Simplex members);

bool is_maximal_system(const FlagComplex& ambient, const SphereSystem& sys);

/// All pants decompositions of an arbitrary flag complex (maximal cliques).
std::vector<PantsDecomposition> enumerate_pants(const FlagComplex& ambient);
/// Pants decompositions of build_genus_zero_complex(s); throws for s < 4.
std::vector<PantsDecomposition> enumerate_pants(int s);

/// Vertices outside P adjacent to all of P \ {a}, other than a. Throws if
/// a is not in P, or if the link of P \ {a} is {a} alone (a self-adjacent).
std::vector<VertexIndex> flip_partners(const FlagComplex& ambient, const PantsDecomposition& p, VertexIndex a);

struct FlipGraph {
  std::vector<PantsDecomposition> nodes;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // node indices, first < second, sorted
  bool connected = false;
  std::size_t diameter = 0;  // meaningful only when connected

  std::vector<std::vector<std::size_t>> adjacency() const;
};

/// Nodes are pants decompositions; edges join decompositions differing in
/// exactly one sphere (a flip).
FlipGraph pants_flip_graph(const FlagComplex& ambient);
FlipGraph pants_flip_graph(int s);

}  // namespace spherecx
