#pragma once

// Trivalent multigraphs with legs, stored by half-edge slots: every pants
// vertex has slots 0, 1, 2, and each slot is the end of exactly one bond or
// carries exactly one leg. Loops and parallel bonds are ordinary bonds.

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "spherecx/flag_complex.hpp"
#include "spherecx/genus_zero.hpp"
#include "spherecx/pants.hpp"

namespace spherecx {

struct Slot {
  std::size_t pants = 0;
  int index = 0;  // 0, 1 or 2
  friend auto operator<=>(const Slot&, const Slot&) = default;
};

struct Bond {
  Slot a;
  Slot b;
  std::string label;  // defining sphere id when built from a decomposition
  bool is_loop() const { return a.pants == b.pants; }
};

struct Leg {
  Slot slot;
  int label = 0;  // boundary label
};

class DualMultigraph {
 public:
  DualMultigraph() = default;
  /// Throws std::invalid_argument unless every slot is used exactly once.
  DualMultigraph(std::vector<std::string> pants_ids, std::vector<Bond> bonds, std::vector<Leg> legs);

  std::size_t pants_count() const { return pants_.size(); }
  const std::vector<std::string>& pants_ids() const { return pants_; }
  const std::vector<Bond>& bonds() const { return bonds_; }
  const std::vector<Leg>& legs() const { return legs_; }

  /// Bond index by label; throws if absent.
  std::size_t bond_index(const std::string& label) const;

  /// Number of connected components of the bond graph (legs ignored).
  std::size_t component_count() const;
  /// First Betti number of the bond graph.
  long betti_number() const;

 private:
  std::vector<std::string> pants_;
  std::vector<Bond> bonds_;
  std::vector<Leg> legs_;
};

/// Signatures of the complementary pieces of a link, in canonical order
/// (rank descending, then boundary count descending). (0,3) pieces are
/// dropped.
struct JoinDecomposition {
  std::vector<ManifoldSignature> factors;
  friend bool operator==(const JoinDecomposition&, const JoinDecomposition&) = default;
};

std::string to_string(const JoinDecomposition& j);

/// Dual tree of a genus-zero pants decomposition (vertex ids must be
/// partition ids). s - 2 pants, s - 3 bonds labelled by sphere id, s legs.
DualMultigraph dual_of_pants(const FlagComplex& ambient, const PantsDecomposition& p);
DualMultigraph dual_of_pants(int s, std::span<const SpherePartition> pants);

/// I-H move on a non-loop bond joining u and v. With u's other slots
/// (x0 < x1) and v's other slots (y0 < y1), choice 0 swaps the half-edges
/// at x1 and y0 and choice 1 swaps x1 and y1. Applying the same choice
/// twice restores the input. Throws on a loop, bad index or bad choice.
DualMultigraph ih_flip(const DualMultigraph& d, std::size_t bond, int choice);

/// Per component of the graph (pants, eta): rank = |eta edges| - |V| + 1 and
/// boundary = legs + slots whose bond is not in eta. Throws if eta contains
/// an index that is not a bond.
JoinDecomposition classify_link(const DualMultigraph& d, std::span<const std::size_t> eta);

/// (first Betti number, number of legs). Throws if d is disconnected.
ManifoldSignature signature_of_dual(const DualMultigraph& d);

/// {"pants": [id], "bonds": [[slot, slot]], "legs": [{"slot":..., "label":...}]}
/// with slot = "pantsId.slotIndex". Bond labels go to "bond_labels" when set.
nlohmann::json dual_to_json(const DualMultigraph& d);
DualMultigraph dual_from_json(const nlohmann::json& doc);

/// Multigraph drawing: loops and parallel bonds as separate edges, legs as
/// half-edges to anonymous point nodes.
std::string dual_to_dot(const DualMultigraph& d, const std::string& name = "dual");

}  // namespace spherecx
