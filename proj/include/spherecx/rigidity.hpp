#pragma once

// Automorphism groups, rigidity certificates and the finite constructions
// used in rigidity arguments: split spheres and pairs, detectable
// intersections, X_sigma, link classes, the caterpillar witness and the
// good-pair census.

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "spherecx/flag_complex.hpp"
#include "spherecx/genus_zero.hpp"
#include "spherecx/homology.hpp"
#include "spherecx/pants.hpp"
#include "spherecx/search.hpp"

namespace spherecx {

// Automorphisms ------------------------------------------------------------

struct AutomorphismGroup {
  std::vector<VertexMap> generators;
  Integer order = 1;
  bool elements_listed = false;
  std::vector<VertexMap> elements;  // sorted; filled when order <= list limit
};

/// Stabiliser-chain computation: exact order and a generating set.
AutomorphismGroup automorphism_group(const FlagComplex& c, std::size_t list_limit = 10000);

/// Maps of build_genus_zero_complex(s) induced by every permutation of the
/// boundary labels, in lexicographic order of permutations.
std::vector<VertexMap> label_action(int s);

// Rigidity -----------------------------------------------------------------

/// Ambient indices of an induced subcomplex given by ids. Throws
/// std::invalid_argument on an unknown id or a non-induced edge set.
Simplex embed_subcomplex(const FlagComplex& ambient, const FlagComplex& x);

enum class RigidityMode { plain, over_maximal_maps };
std::string to_string(RigidityMode m);

struct RigidityCertificate {
  RigidityMode mode = RigidityMode::plain;
  Simplex subcomplex;                        // ambient indices
  std::vector<VertexMap> maps;               // subcomplex position -> ambient vertex
  std::vector<std::size_t> extension_counts; // matching automorphisms, capped at 2
  std::vector<std::optional<VertexMap>> extensions;
  bool all_extend = true;
  std::optional<std::size_t> counterexample;  // index into maps
};

/// Enumerates every locally injective simplicial map from the subcomplex
/// into the ambient and checks each against the ambient's automorphisms.
/// Throws std::invalid_argument unless `x` is sorted and in range.
RigidityCertificate verify_rigidity(const FlagComplex& ambient, const Simplex& x, RigidityMode mode);

nlohmann::json certificate_to_json(const FlagComplex& ambient, const RigidityCertificate& cert);

// Split spheres ------------------------------------------------------------

/// Vertices b outside P meeting a and disjoint from the rest of P.
/// Throws std::invalid_argument if a is not in P.
std::vector<VertexIndex> find_split_spheres(const FlagComplex& ambient, const PantsDecomposition& p, VertexIndex a);

/// Pairs (b1 < b2) of disjoint vertices, each a split sphere for a with
/// respect to some pants decomposition inside x that contains a.
std::vector<std::pair<VertexIndex, VertexIndex>> find_split_pairs(const FlagComplex& ambient, const Simplex& x,
                                                                  VertexIndex a);

/// Pants decompositions inside x that differ exactly by a -> a2, first in
/// lexicographic order. Throws std::invalid_argument unless a, a2 are
/// distinct members of x.
std::optional<std::pair<PantsDecomposition, PantsDecomposition>> detect_x_detectable(const FlagComplex& ambient,
                                                                                      const Simplex& x,
                                                                                      VertexIndex a,
                                                                                      VertexIndex a2);

/// sigma together with the links of sigma minus each member. Throws
/// std::invalid_argument unless sigma is maximal.
Simplex build_x_sigma(const FlagComplex& ambient, const PantsDecomposition& sigma);

// Link classes -------------------------------------------------------------

/// Raised when the link relation fails to be an equivalence relation or a
/// class straddles two complementary regions.
class LinkRelationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LinkClass {
  std::vector<VertexIndex> members;  // ambient indices, sorted
  std::size_t region = 0;            // laminar region index
  ManifoldSignature signature;       // (0, boundary count of the region)
};

/// Classes of a ~ b (some c in the link meets both) on the link of a
/// genus-zero sphere system. Empty when sigma is maximal. Throws
/// std::invalid_argument if sigma is not a clique.
std::vector<LinkClass> link_equivalence_classes(const FlagComplex& ambient, const SphereSystem& sigma);

// Caterpillar --------------------------------------------------------------

struct CaterpillarWitness {
  std::vector<CaterpillarVertex> domain;  // X, in window index order
  std::vector<CaterpillarVertex> image;   // in the bi-infinite caterpillar
  std::size_t mismatch = 0;               // domain position that changes type
  std::string reason;
};

/// A locally injective map from X to the caterpillar that swaps a leaf and a
/// spine vertex at the right frontier of X. Throws std::invalid_argument if
/// |X| < 2, X is disconnected, or (unless allow_boundary) X touches a
/// boundary-effect vertex.
CaterpillarWitness caterpillar_witness(const FlagComplex& window, const Simplex& x, bool allow_boundary = false);

/// Simplicial, injective on closed stars, and some vertex changes between
/// separating and non-separating.
bool validate_caterpillar_witness(const CaterpillarWitness& w);

nlohmann::json witness_to_json(const CaterpillarWitness& w);

// Good-pair census ---------------------------------------------------------

/// Boundary labels of the cut-open manifold: A<i>+ and A<i>- for each of the
/// n cut spheres and B<j> for the original boundary. `origin` maps each
/// label to the sphere or boundary component it came from.
struct CutLabeling {
  int n = 0;
  int s = 0;
  std::vector<std::string> labels;
  std::map<std::string, std::string> origin;
};

/// Throws std::invalid_argument unless n >= 1 and s >= 0.
CutLabeling make_cut_labeling(int n, int s);

struct GoodSphere {
  std::string with_minus;  // grouped with A-
  std::string with_plus;   // grouped with A+
  friend auto operator<=>(const GoodSphere&, const GoodSphere&) = default;
};

struct GoodPair {
  GoodSphere first;
  GoodSphere second;
};

/// All unordered pairs of good spheres for pair A<index> on disjoint label
/// sets. Throws std::invalid_argument unless 1 <= index <= n.
std::vector<GoodPair> good_pair_census(const CutLabeling& cut, int pair_index);

}  // namespace spherecx
