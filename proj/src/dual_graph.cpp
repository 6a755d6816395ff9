#include "spherecx/dual_graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace spherecx {

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t v) {
    while (parent_[v] != v) v = parent_[v] = parent_[parent_[v]];
    return v;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

 private:
  std::vector<std::size_t> parent_;
};

std::string slot_string(const DualMultigraph& d, const Slot& s) {
  return d.pants_ids()[s.pants] + "." + std::to_string(s.index);
}

Slot parse_slot(const std::map<std::string, std::size_t>& where, const std::string& text) {
  auto dot = text.rfind('.');
  if (dot == std::string::npos || dot + 2 != text.size()) {
    throw std::invalid_argument("slot must look like pantsId.k: " + text);
  }
  auto it = where.find(text.substr(0, dot));
  if (it == where.end()) throw std::invalid_argument("slot names an unknown pants: " + text);
  int index = text[dot + 1] - '0';
  if (index < 0 || index > 2) throw std::invalid_argument("slot index must be 0, 1 or 2: " + text);
  return {it->second, index};
}

}  // namespace

DualMultigraph::DualMultigraph(std::vector<std::string> pants_ids, std::vector<Bond> bonds, std::vector<Leg> legs)
    : pants_(std::move(pants_ids)), bonds_(std::move(bonds)), legs_(std::move(legs)) {
  {
    auto sorted = pants_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw std::invalid_argument("duplicate pants id");
    }
  }
  std::vector<int> uses(3 * pants_.size(), 0);
  auto mark = [&](const Slot& s) {
    if (s.pants >= pants_.size() || s.index < 0 || s.index > 2) throw std::invalid_argument("slot out of range");
    ++uses[3 * s.pants + static_cast<std::size_t>(s.index)];
  };
  for (const Bond& b : bonds_) {
    if (b.a == b.b) throw std::invalid_argument("bond joins a slot to itself");
    mark(b.a);
    mark(b.b);
  }
  for (const Leg& l : legs_) mark(l.slot);
  for (std::size_t k = 0; k < uses.size(); ++k) {
    if (uses[k] != 1) {
      throw std::invalid_argument("slot " + pants_[k / 3] + "." + std::to_string(k % 3) +
                                  (uses[k] == 0 ? " is unused" : " is used more than once"));
    }
  }
}

std::size_t DualMultigraph::bond_index(const std::string& label) const {
  for (std::size_t i = 0; i < bonds_.size(); ++i) {
    if (bonds_[i].label == label) return i;
  }
  throw std::invalid_argument("no bond labelled " + label);
}

std::size_t DualMultigraph::component_count() const {
  UnionFind uf(pants_.size());
  for (const Bond& b : bonds_) uf.unite(b.a.pants, b.b.pants);
  std::size_t count = 0;
  for (std::size_t v = 0; v < pants_.size(); ++v) count += uf.find(v) == v;
  return count;
}

long DualMultigraph::betti_number() const {
  return static_cast<long>(bonds_.size()) - static_cast<long>(pants_.size()) +
         static_cast<long>(component_count());
}

std::string to_string(const JoinDecomposition& j) {
  std::string out = "[";
  for (std::size_t i = 0; i < j.factors.size(); ++i) {
    if (i) out += ",";
    out += to_string(j.factors[i]);
  }
  return out + "]";
}

DualMultigraph dual_of_pants(int s, std::span<const SpherePartition> pants) {
  auto regions = laminar_regions(s, pants);
  std::map<std::uint32_t, std::string> sphere_of_side;
  for (const auto& p : pants) sphere_of_side.emplace(p.far_side_mask(), p.id());

  std::vector<std::string> ids;
  for (std::size_t r = 0; r < regions.size(); ++r) {
    if (!regions[r].is_pants()) throw std::invalid_argument("dual_of_pants: system is not a pants decomposition");
    ids.push_back("P" + std::to_string(r));
  }
  // Cuff order in each region: parent first, then children and loose labels by least label.
  struct Cuff {
    int least_label;
    bool is_child;
    std::size_t child;
    int label;
  };
  std::vector<Bond> bonds;
  std::vector<Leg> legs;
  std::vector<Slot> parent_slot(regions.size());
  for (std::size_t r = 0; r < regions.size(); ++r) {
    std::vector<Cuff> cuffs;
    for (std::size_t c : regions[r].children) cuffs.push_back({labels_of(regions[c].mask).front(), true, c, 0});
    for (int l : regions[r].loose_labels) cuffs.push_back({l, false, 0, l});
    std::sort(cuffs.begin(), cuffs.end(), [](const Cuff& a, const Cuff& b) { return a.least_label < b.least_label; });
    int next = regions[r].parent ? 1 : 0;
    if (regions[r].parent) parent_slot[r] = Slot{r, 0};
    for (const Cuff& cuff : cuffs) {
      Slot here{r, next++};
      if (cuff.is_child) {
        bonds.push_back(Bond{here, Slot{cuff.child, 0}, sphere_of_side.at(regions[cuff.child].mask)});
      } else {
        legs.push_back(Leg{here, cuff.label});
      }
    }
  }
  std::sort(bonds.begin(), bonds.end(), [](const Bond& a, const Bond& b) { return a.label < b.label; });
  return DualMultigraph(std::move(ids), std::move(bonds), std::move(legs));
}

DualMultigraph dual_of_pants(const FlagComplex& ambient, const PantsDecomposition& p) {
  std::vector<SpherePartition> parts;
  for (VertexIndex v : p.members()) parts.push_back(SpherePartition::parse(ambient.id(v)));
  if (parts.empty()) throw std::invalid_argument("dual_of_pants: empty decomposition");
  return dual_of_pants(parts.front().boundary_count(), parts);
}

DualMultigraph ih_flip(const DualMultigraph& d, std::size_t bond, int choice) {
  if (bond >= d.bonds().size()) throw std::invalid_argument("ih_flip: no such bond");
  if (choice != 0 && choice != 1) throw std::invalid_argument("ih_flip: pairing choice must be 0 or 1");
  const Bond& e = d.bonds()[bond];
  if (e.is_loop()) throw std::invalid_argument("ih_flip: cannot flip a loop");
  auto others = [](const Slot& s) {
    std::vector<Slot> out;
    for (int k = 0; k < 3; ++k) {
      if (k != s.index) out.push_back({s.pants, k});
    }
    return out;
  };
  const auto xs = others(e.a);
  const auto ys = others(e.b);
  const Slot from = xs[1];
  const Slot to = choice == 0 ? ys[0] : ys[1];
  auto move = [&](const Slot& s) {
    if (s == from) return to;
    if (s == to) return from;
    return s;
  };
  std::vector<Bond> bonds = d.bonds();
  for (std::size_t i = 0; i < bonds.size(); ++i) {
    if (i == bond) {
      bonds[i].label.clear();
      continue;
    }
    bonds[i].a = move(bonds[i].a);
    bonds[i].b = move(bonds[i].b);
  }
  std::vector<Leg> legs = d.legs();
  for (Leg& l : legs) l.slot = move(l.slot);
  return DualMultigraph(d.pants_ids(), std::move(bonds), std::move(legs));
}

JoinDecomposition classify_link(const DualMultigraph& d, std::span<const std::size_t> eta) {
  std::vector<bool> in_eta(d.bonds().size(), false);
  for (std::size_t b : eta) {
    if (b >= d.bonds().size()) throw std::invalid_argument("classify_link: edge set is not a subset of the bonds");
    in_eta[b] = true;
  }
  UnionFind uf(d.pants_count());
  for (std::size_t b = 0; b < d.bonds().size(); ++b) {
    if (in_eta[b]) uf.unite(d.bonds()[b].a.pants, d.bonds()[b].b.pants);
  }
  struct Tally {
    long vertices = 0, edges = 0, boundary = 0;
  };
  std::map<std::size_t, Tally> tally;
  for (std::size_t v = 0; v < d.pants_count(); ++v) ++tally[uf.find(v)].vertices;
  for (const Leg& l : d.legs()) ++tally[uf.find(l.slot.pants)].boundary;
  for (std::size_t b = 0; b < d.bonds().size(); ++b) {
    const Bond& bond = d.bonds()[b];
    if (in_eta[b]) {
      ++tally[uf.find(bond.a.pants)].edges;
    } else {
      // A bond outside eta is a cut sphere: one boundary sphere per end.
      ++tally[uf.find(bond.a.pants)].boundary;
      ++tally[uf.find(bond.b.pants)].boundary;
    }
  }
  JoinDecomposition out;
  for (const auto& [root, t] : tally) {
    ManifoldSignature sig{static_cast<int>(t.edges - t.vertices + 1), static_cast<int>(t.boundary)};
    if (sig.n == 0 && sig.s == 3) continue;
    out.factors.push_back(sig);
  }
  std::sort(out.factors.begin(), out.factors.end(), [](const auto& a, const auto& b) { return a > b; });
  return out;
}

ManifoldSignature signature_of_dual(const DualMultigraph& d) {
  if (d.pants_count() == 0 || d.component_count() != 1) {
    throw std::invalid_argument("signature_of_dual: dual graph is not connected");
  }
  return {static_cast<int>(d.betti_number()), static_cast<int>(d.legs().size())};
}

nlohmann::json dual_to_json(const DualMultigraph& d) {
  nlohmann::json doc;
  doc["pants"] = d.pants_ids();
  nlohmann::json bonds = nlohmann::json::array();
  nlohmann::json labels = nlohmann::json::array();
  bool any_label = false;
  for (const Bond& b : d.bonds()) {
    bonds.push_back({slot_string(d, b.a), slot_string(d, b.b)});
    labels.push_back(b.label);
    any_label = any_label || !b.label.empty();
  }
  doc["bonds"] = std::move(bonds);
  if (any_label) doc["bond_labels"] = std::move(labels);
  nlohmann::json legs = nlohmann::json::array();
  for (const Leg& l : d.legs()) legs.push_back({{"slot", slot_string(d, l.slot)}, {"label", l.label}});
  doc["legs"] = std::move(legs);
  return doc;
}

DualMultigraph dual_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("pants") || !doc["pants"].is_array()) {
    throw std::invalid_argument("dual document needs a 'pants' array");
  }
  std::vector<std::string> ids = doc["pants"].get<std::vector<std::string>>();
  std::map<std::string, std::size_t> where;
  for (std::size_t i = 0; i < ids.size(); ++i) where.emplace(ids[i], i);
  std::vector<Bond> bonds;
  if (doc.contains("bonds")) {
    for (const auto& b : doc["bonds"]) {
      if (!b.is_array() || b.size() != 2) throw std::invalid_argument("each bond must be a pair of slots");
      bonds.push_back(Bond{parse_slot(where, b[0].get<std::string>()), parse_slot(where, b[1].get<std::string>()), {}});
    }
  }
  if (doc.contains("bond_labels")) {
    const auto& labels = doc["bond_labels"];
    if (!labels.is_array() || labels.size() != bonds.size()) {
      throw std::invalid_argument("'bond_labels' must match 'bonds' in length");
    }
    for (std::size_t i = 0; i < bonds.size(); ++i) bonds[i].label = labels[i].get<std::string>();
  }
  std::vector<Leg> legs;
  if (doc.contains("legs")) {
    for (const auto& l : doc["legs"]) {
      if (!l.is_object() || !l.contains("slot") || !l.contains("label")) {
        throw std::invalid_argument("each leg needs 'slot' and 'label'");
      }
      legs.push_back(Leg{parse_slot(where, l["slot"].get<std::string>()), l["label"].get<int>()});
    }
  }
  return DualMultigraph(std::move(ids), std::move(bonds), std::move(legs));
}

std::string dual_to_dot(const DualMultigraph& d, const std::string& name) {
  std::ostringstream os;
  os << "graph " << name << " {\n";
  for (const auto& id : d.pants_ids()) os << "  \"" << id << "\";\n";
  for (std::size_t i = 0; i < d.bonds().size(); ++i) {
    const Bond& b = d.bonds()[i];
    os << "  \"" << d.pants_ids()[b.a.pants] << "\" -- \"" << d.pants_ids()[b.b.pants] << "\" [label=\""
       << (b.label.empty() ? "b" + std::to_string(i) : b.label) << "\"];\n";
  }
  for (std::size_t i = 0; i < d.legs().size(); ++i) {
    const Leg& l = d.legs()[i];
    os << "  leg" << i << " [shape=point];\n";
    os << "  \"" << d.pants_ids()[l.slot.pants] << "\" -- leg" << i << " [label=\"" << l.label << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace spherecx
