#include "spherecx/genus_zero.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <stdexcept>

namespace spherecx {

namespace {

int parse_int(std::string_view text) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw std::invalid_argument("not an integer: " + std::string(text));
  }
  return value;
}

std::uint32_t full(int s) { return s >= 32 ? ~0u : ((1u << s) - 1u); }

}  // namespace

std::string to_string(const ManifoldSignature& sig) {
  return "(" + std::to_string(sig.n) + "," + std::to_string(sig.s) + ")";
}

std::vector<int> labels_of(std::uint32_t mask) {
  std::vector<int> out;
  for (int k = 0; k < 32; ++k) {
    if (mask & (1u << k)) out.push_back(k + 1);
  }
  return out;
}

SpherePartition SpherePartition::from_mask(int s, std::uint32_t mask) {
  if (s < 4 || s > max_boundary) throw std::invalid_argument("partition needs 4 <= s <= 31");
  mask &= full(s);
  if (!(mask & 1u)) mask = full(s) & ~mask;
  int size = std::popcount(mask);
  if (size < 2 || size > s - 2) {
    throw std::invalid_argument("partition blocks must each have at least two labels");
  }
  return SpherePartition(s, mask);
}

SpherePartition SpherePartition::from_block(int s, std::span<const int> labels) {
  std::uint32_t mask = 0;
  for (int k : labels) {
    if (k < 1 || k > s) throw std::invalid_argument("boundary label out of range");
    if (mask & (1u << (k - 1))) throw std::invalid_argument("repeated boundary label");
    mask |= 1u << (k - 1);
  }
  return from_mask(s, mask);
}

bool SpherePartition::is_partition_id(std::string_view id) {
  try {
    (void)parse(id);
    return true;
  } catch (const std::invalid_argument&) {
    return false;
  }
}

SpherePartition SpherePartition::parse(std::string_view id) {
  if (!id.starts_with("p:")) throw std::invalid_argument("partition id must start with 'p:'");
  auto bar = id.find("|s=");
  if (bar == std::string_view::npos) throw std::invalid_argument("partition id lacks '|s='");
  int s = parse_int(id.substr(bar + 3));
  std::vector<int> labels;
  std::string_view body = id.substr(2, bar - 2);
  while (!body.empty()) {
    auto comma = body.find(',');
    labels.push_back(parse_int(body.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    body.remove_prefix(comma + 1);
  }
  SpherePartition p = from_block(s, labels);
  if (p.id() != id) throw std::invalid_argument("partition id is not canonical: " + std::string(id));
  return p;
}

std::vector<int> SpherePartition::block() const { return labels_of(mask_); }
std::vector<int> SpherePartition::complement() const { return labels_of(complement_mask()); }

std::string SpherePartition::id() const {
  std::string out = "p:";
  bool first = true;
  for (int k : block()) {
    if (!first) out += ',';
    out += std::to_string(k);
    first = false;
  }
  out += "|s=" + std::to_string(s_);
  return out;
}

bool spheres_disjoint(const SpherePartition& p, const SpherePartition& q) {
  if (p.boundary_count() != q.boundary_count()) throw std::invalid_argument("spheres_disjoint: mismatched s");
  if (p == q) throw std::invalid_argument("spheres_disjoint: identical partitions");
  const std::uint32_t pb[2] = {p.mask(), p.complement_mask()};
  const std::uint32_t qb[2] = {q.mask(), q.complement_mask()};
  for (std::uint32_t a : pb) {
    for (std::uint32_t b : qb) {
      if ((a & b) == 0) return true;  // a inside the other block of q
    }
  }
  return false;
}

std::vector<SpherePartition> all_partitions(int s) {
  std::vector<SpherePartition> out;
  if (s < 4) return out;
  for (std::uint32_t rest = 0; rest < (1u << (s - 1)); ++rest) {
    std::uint32_t mask = (rest << 1) | 1u;
    int size = std::popcount(mask);
    if (size >= 2 && size <= s - 2) out.push_back(SpherePartition::from_mask(s, mask));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.id() < b.id(); });
  return out;
}

FlagComplex build_genus_zero_complex(int s) {
  if (s < 3) throw std::invalid_argument("build_genus_zero_complex needs s >= 3");
  auto parts = all_partitions(s);
  std::vector<std::string> ids;
  ids.reserve(parts.size());
  for (const auto& p : parts) ids.push_back(p.id());
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (std::size_t j = i + 1; j < parts.size(); ++j) {
      if (spheres_disjoint(parts[i], parts[j])) edges.push_back({i, j});
    }
  }
  return FlagComplex::from_sorted_indices(std::move(ids), edges);
}

std::vector<SpherePartition> partitions_of(const FlagComplex& c) {
  std::vector<SpherePartition> out;
  out.reserve(c.size());
  for (const auto& id : c.vertices()) out.push_back(SpherePartition::parse(id));
  return out;
}

std::string CaterpillarVertex::id() const { return (spine ? "z:" : "w:") + std::to_string(position); }

CaterpillarVertex CaterpillarVertex::parse(std::string_view id) {
  if (id.size() < 3 || id[1] != ':' || (id[0] != 'z' && id[0] != 'w')) {
    throw std::invalid_argument("caterpillar id must look like z:k or w:k");
  }
  long k = 0;
  auto body = id.substr(2);
  auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), k);
  if (ec != std::errc() || ptr != body.data() + body.size()) {
    throw std::invalid_argument("caterpillar id has a bad position: " + std::string(id));
  }
  return {id[0] == 'z', k};
}

bool caterpillar_adjacent(const CaterpillarVertex& a, const CaterpillarVertex& b) {
  if (a.spine && b.spine) return a.position - b.position == 1 || b.position - a.position == 1;
  if (a.spine != b.spine) return a.position == b.position;
  return false;
}

FlagComplex build_caterpillar_window(int m) {
  if (m < 0) throw std::invalid_argument("caterpillar window needs m >= 0");
  std::vector<std::string> ids;
  std::vector<std::pair<std::string, std::string>> pairs;
  for (long k = -m; k <= m; ++k) {
    CaterpillarVertex z{true, k}, w{false, k};
    ids.push_back(z.id());
    ids.push_back(w.id());
    pairs.emplace_back(z.id(), w.id());
    if (k < m) pairs.emplace_back(z.id(), CaterpillarVertex{true, k + 1}.id());
  }
  FlagComplex c = FlagComplex::from_adjacency(std::move(ids), pairs);
  for (VertexIndex v = 0; v < c.size(); ++v) {
    auto cv = CaterpillarVertex::parse(c.id(v));
    c.add_tag(v, cv.spine ? "nonseparating" : "separating");
    if (cv.spine && (cv.position == m || cv.position == -m)) c.add_tag(v, "boundary-effect");
  }
  return c;
}

std::vector<std::string> catalog_names() { return {"k13", "k3", "k33", "m04", "m11", "petersen"}; }

FlagComplex catalog(std::string_view name) {
  using Pairs = std::vector<std::pair<std::string, std::string>>;
  if (name == "petersen") {
    std::vector<std::string> ids;
    for (int i = 1; i <= 5; ++i) {
      for (int j = i + 1; j <= 5; ++j) ids.push_back(std::to_string(i) + std::to_string(j));
    }
    Pairs pairs;
    for (const auto& a : ids) {
      for (const auto& b : ids) {
        bool disjoint = a[0] != b[0] && a[0] != b[1] && a[1] != b[0] && a[1] != b[1];
        if (a < b && disjoint) pairs.emplace_back(a, b);
      }
    }
    return FlagComplex::from_adjacency(ids, pairs);
  }
  if (name == "k33") {
    FlagComplex left = FlagComplex::from_adjacency({"12", "13", "23"}, Pairs{});
    FlagComplex right = FlagComplex::from_adjacency({"1'2'", "1'3'", "2'3'"}, Pairs{});
    return join_of(left, right);
  }
  if (name == "k3") return FlagComplex::from_adjacency({"a", "b", "c"}, Pairs{{"a", "b"}, {"b", "c"}, {"a", "c"}});
  if (name == "k13") {
    return FlagComplex::from_adjacency({"c", "l1", "l2", "l3"}, Pairs{{"c", "l1"}, {"c", "l2"}, {"c", "l3"}});
  }
  if (name == "m11") return FlagComplex::from_adjacency({"a"}, Pairs{});
  if (name == "m04") return build_genus_zero_complex(4);
  throw std::invalid_argument("unknown catalog name: " + std::string(name));
}

std::vector<LaminarRegion> laminar_regions(int s, std::span<const SpherePartition> system) {
  for (std::size_t i = 0; i < system.size(); ++i) {
    if (system[i].boundary_count() != s) throw std::invalid_argument("laminar_regions: mismatched s");
    for (std::size_t j = i + 1; j < system.size(); ++j) {
      if (system[i] == system[j] || !spheres_disjoint(system[i], system[j])) {
        throw std::invalid_argument("laminar_regions: spheres are not pairwise disjoint");
      }
    }
  }
  std::vector<std::uint32_t> masks;
  for (const auto& p : system) masks.push_back(p.far_side_mask());
  std::sort(masks.begin(), masks.end(), [](std::uint32_t a, std::uint32_t b) {
    int pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa > pb : a < b;
  });
  std::vector<LaminarRegion> regions(masks.size() + 1);
  regions[0].mask = full(s);
  for (std::size_t i = 0; i < masks.size(); ++i) regions[i + 1].mask = masks[i];
  // Larger sets come first, so the last strict superset seen is the smallest.
  for (std::size_t i = 1; i < regions.size(); ++i) {
    std::size_t parent = 0;
    for (std::size_t j = 1; j < i; ++j) {
      if ((regions[i].mask & regions[j].mask) == regions[i].mask) parent = j;
    }
    regions[i].parent = parent;
    regions[parent].children.push_back(i);
  }
  for (auto& r : regions) {
    std::uint32_t covered = 0;
    for (std::size_t c : r.children) covered |= regions[c].mask;
    r.loose_labels = labels_of(r.mask & ~covered);
  }
  return regions;
}

std::size_t region_of(const std::vector<LaminarRegion>& regions, const SpherePartition& q) {
  const std::uint32_t side = q.far_side_mask();
  std::size_t best = 0;
  for (std::size_t i = 1; i < regions.size(); ++i) {
    const std::uint32_t m = regions[i].mask;
    if (m == side) throw std::invalid_argument("region_of: sphere belongs to the system");
    if ((side & m) == side && std::popcount(m) < std::popcount(regions[best].mask)) best = i;
  }
  return best;
}

}  // namespace spherecx
