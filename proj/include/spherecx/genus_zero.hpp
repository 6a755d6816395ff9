#pragma once

// Partition model of essential spheres in a sphere with s boundary
// components, the caterpillar model of the two-holed S^2 x S^1 complex, and a
// small catalog of reference complexes.

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "spherecx/flag_complex.hpp"

namespace spherecx {

/// Genus/rank n and boundary count s of a doubled handlebody.
struct ManifoldSignature {
  int n = 0;
  int s = 0;

  /// Spheres in a pants decomposition: 3n + s - 3, or 0 when there are no
  /// essential spheres.
  int pants_size() const { return 3 * n + s >= 4 ? 3 * n + s - 3 : 0; }
  friend auto operator<=>(const ManifoldSignature&, const ManifoldSignature&) = default;
};

std::string to_string(const ManifoldSignature& sig);

/// An unordered 2-block partition of the boundary labels {1..s}, stored by
/// the block containing label 1. Both blocks have at least two labels.
class SpherePartition {
 public:
  static constexpr int max_boundary = 31;

  /// Throws std::invalid_argument unless the block is a valid side.
  /// Either side may be given; it is canonicalised.
  static SpherePartition from_block(int s, std::span<const int> labels);
  static SpherePartition from_mask(int s, std::uint32_t mask);
  /// Parses "p:1,2|s=6".
  static SpherePartition parse(std::string_view id);
  static bool is_partition_id(std::string_view id);

  int boundary_count() const { return s_; }
  /// Bit (k-1) set iff label k is in the canonical block.
  std::uint32_t mask() const { return mask_; }
  std::uint32_t complement_mask() const { return full_mask() & ~mask_; }
  /// The side not containing label 1.
  std::uint32_t far_side_mask() const { return complement_mask(); }
  std::vector<int> block() const;
  std::vector<int> complement() const;
  std::string id() const;

  friend auto operator<=>(const SpherePartition&, const SpherePartition&) = default;

 private:
  SpherePartition(int s, std::uint32_t mask) : s_(s), mask_(mask) {}
  std::uint32_t full_mask() const { return s_ >= 32 ? ~0u : ((1u << s_) - 1u); }
  int s_ = 0;
  std::uint32_t mask_ = 0;
};

std::vector<int> labels_of(std::uint32_t mask);

/// Realisably disjoint iff nested: some block of p lies inside some block of q.
/// Throws on mismatched s or p == q.
bool spheres_disjoint(const SpherePartition& p, const SpherePartition& q);

/// All partitions for s, sorted by id.
std::vector<SpherePartition> all_partitions(int s);

/// Vertices are partitions (ids "p:...|s=S"), edges are disjoint pairs.
/// s = 3 gives the empty complex; s < 3 throws.
FlagComplex build_genus_zero_complex(int s);

/// Partitions of the vertices of a genus-zero complex, by vertex index.
std::vector<SpherePartition> partitions_of(const FlagComplex& c);

/// Spine z:-m..z:m with a pendant leaf w:k on each z:k. Spine vertices are
/// tagged "nonseparating", leaves "separating", and z:-m, z:m additionally
/// "boundary-effect". Throws on m < 0.
FlagComplex build_caterpillar_window(int m);

/// A vertex of the idealised (bi-infinite) caterpillar.
struct CaterpillarVertex {
  bool spine = true;  // z:k if true, w:k otherwise
  long position = 0;

  static CaterpillarVertex parse(std::string_view id);
  std::string id() const;
  bool separating() const { return !spine; }
  friend auto operator<=>(const CaterpillarVertex&, const CaterpillarVertex&) = default;
};

/// Adjacency in the idealised caterpillar.
bool caterpillar_adjacent(const CaterpillarVertex& a, const CaterpillarVertex& b);

/// Names accepted by catalog().
std::vector<std::string> catalog_names();

/// petersen: 2-subsets "ij" of {1..5}, adjacent iff disjoint.
/// k33: "12","13","23" joined with "1'2'","1'3'","2'3'".
/// k3: a,b,c pairwise adjacent. k13: centre "c", leaves "l1".."l3".
/// m11: one vertex "a". m04: build_genus_zero_complex(4).
/// Throws std::invalid_argument for an unknown name.
FlagComplex catalog(std::string_view name);

/// A complementary region of a genus-zero sphere system: a node of the
/// laminar tree over {1..s} (the root is the whole label set).
struct LaminarRegion {
  std::uint32_t mask = 0;              // labels on this node (root: all)
  std::optional<std::size_t> parent;   // region index
  std::vector<std::size_t> children;   // region indices
  std::vector<int> loose_labels;       // boundary labels attached directly here
  /// Number of boundary spheres of the region (children + loose labels +
  /// the parent cuff).
  int boundary_count() const {
    return static_cast<int>(children.size() + loose_labels.size()) + (parent ? 1 : 0);
  }
  bool is_pants() const { return boundary_count() == 3; }
};

/// Region tree of a pairwise-disjoint family of partitions (all with the
/// same s). Region 0 is the root; the others follow in order of decreasing
/// size, then mask. Throws if the family is not pairwise disjoint.
std::vector<LaminarRegion> laminar_regions(int s, std::span<const SpherePartition> system);

/// Index of the region that contains sphere q (q disjoint from the system
/// and not in it).
std::size_t region_of(const std::vector<LaminarRegion>& regions, const SpherePartition& q);

}  // namespace spherecx
