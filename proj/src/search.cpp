#include "spherecx/search.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace spherecx {

namespace {

enum class MapKind { injective_homomorphism, isomorphism, locally_injective };

constexpr VertexIndex unassigned = static_cast<VertexIndex>(-1);

std::vector<std::size_t> sorted_neighbor_degrees(const FlagComplex& c, VertexIndex v) {
  std::vector<std::size_t> d;
  d.reserve(c.degree(v));
  for (VertexIndex u : c.neighbors(v)) d.push_back(c.degree(u));
  std::sort(d.rbegin(), d.rend());
  return d;
}

// True iff the k-th largest of `small` is <= the k-th largest of `large` for all k.
bool dominated(const std::vector<std::size_t>& small, const std::vector<std::size_t>& large) {
  if (small.size() > large.size()) return false;
  for (std::size_t k = 0; k < small.size(); ++k) {
    if (small[k] > large[k]) return false;
  }
  return true;
}

// Degree and neighbourhood-degree candidate filter, valid whenever the map
// sends each star injectively into the image star.
std::vector<Bitset> degree_candidates(const FlagComplex& src, const FlagComplex& dst) {
  std::vector<std::vector<std::size_t>> dst_profile(dst.size());
  for (VertexIndex t = 0; t < dst.size(); ++t) dst_profile[t] = sorted_neighbor_degrees(dst, t);
  std::vector<Bitset> cand(src.size(), dst.make_bitset());
  for (VertexIndex x = 0; x < src.size(); ++x) {
    auto profile = sorted_neighbor_degrees(src, x);
    for (VertexIndex t = 0; t < dst.size(); ++t) {
      if (dominated(profile, dst_profile[t])) cand[x].set(t);
    }
  }
  return cand;
}

class Backtracker {
 public:
  Backtracker(const FlagComplex& src, const FlagComplex& dst, MapKind kind, std::vector<Bitset> candidates)
      : src_(src), dst_(dst), kind_(kind), cand_(std::move(candidates)), f_(src.size(), unassigned),
        used_(dst.make_bitset()) {
    if (kind_ == MapKind::locally_injective) {
      conflicts_.assign(src_.size(), {});
      for (VertexIndex v = 0; v < src_.size(); ++v) {
        std::vector<VertexIndex> star = src_.neighbors(v);
        star.push_back(v);
        for (VertexIndex a : star) {
          for (VertexIndex b : star) {
            if (a != b) conflicts_[a].push_back(b);
          }
        }
      }
      for (auto& c : conflicts_) {
        std::sort(c.begin(), c.end());
        c.erase(std::unique(c.begin(), c.end()), c.end());
      }
    }
    build_order();
  }

  // Visits every complete map; the visitor returns false to stop.
  std::uint64_t run(const std::function<bool(const VertexMap&)>& visit) {
    visit_ = &visit;
    stop_ = false;
    nodes_ = 0;
    for (const Bitset& c : cand_) {
      if (c.none()) return nodes_;
    }
    recurse(0);
    return nodes_;
  }

 private:
  void build_order() {
    const std::size_t n = src_.size();
    std::vector<bool> placed(n, false);
    std::vector<std::size_t> assigned_neighbors(n, 0);
    order_.reserve(n);
    for (std::size_t step = 0; step < n; ++step) {
      VertexIndex best = unassigned;
      for (VertexIndex v = 0; v < n; ++v) {
        if (placed[v]) continue;
        if (best == unassigned) {
          best = v;
          continue;
        }
        auto key = [&](VertexIndex u) {
          return std::make_tuple(assigned_neighbors[u], -static_cast<long>(cand_[u].count()),
                                 src_.degree(u));
        };
        if (key(v) > key(best)) best = v;
      }
      placed[best] = true;
      order_.push_back(best);
      for (VertexIndex u : src_.neighbors(best)) ++assigned_neighbors[u];
    }
  }

  void recurse(std::size_t depth) {
    ++nodes_;
    if (depth == order_.size()) {
      VertexMap m{f_};
      if (!(*visit_)(m)) stop_ = true;
      return;
    }
    const VertexIndex x = order_[depth];
    Bitset avail = cand_[x];
    for (VertexIndex y : src_.neighbors(x)) {
      if (f_[y] != unassigned) avail &= dst_.neighbor_set(f_[y]);
    }
    switch (kind_) {
      case MapKind::injective_homomorphism:
        avail -= used_;
        break;
      case MapKind::isomorphism:
        avail -= used_;
        for (std::size_t k = 0; k < depth; ++k) {
          VertexIndex y = order_[k];
          if (!src_.adjacent(x, y)) avail -= dst_.neighbor_set(f_[y]);
        }
        break;
      case MapKind::locally_injective:
        for (VertexIndex y : conflicts_[x]) {
          if (f_[y] != unassigned) avail.reset(f_[y]);
        }
        break;
    }
    for (std::size_t t = avail.find_first(); t != Bitset::npos && !stop_; t = avail.find_next(t)) {
      f_[x] = t;
      used_.set(t);
      recurse(depth + 1);
      used_.reset(t);
      f_[x] = unassigned;
    }
  }

  const FlagComplex& src_;
  const FlagComplex& dst_;
  MapKind kind_;
  std::vector<Bitset> cand_;
  std::vector<VertexIndex> order_;
  std::vector<std::vector<VertexIndex>> conflicts_;
  std::vector<VertexIndex> f_;
  Bitset used_;
  const std::function<bool(const VertexMap&)>* visit_ = nullptr;
  bool stop_ = false;
  std::uint64_t nodes_ = 0;
};

std::vector<std::size_t> degree_sequence(const FlagComplex& c) {
  std::vector<std::size_t> d(c.size());
  for (VertexIndex v = 0; v < c.size(); ++v) d[v] = c.degree(v);
  std::sort(d.begin(), d.end());
  return d;
}

std::vector<Bitset> colour_candidates(const FlagComplex& a, const FlagComplex& b,
                                      const std::vector<std::uint32_t>& ca,
                                      const std::vector<std::uint32_t>& cb) {
  std::vector<Bitset> cand(a.size(), b.make_bitset());
  for (VertexIndex x = 0; x < a.size(); ++x) {
    for (VertexIndex t = 0; t < b.size(); ++t) {
      if (ca[x] == cb[t]) cand[x].set(t);
    }
  }
  return cand;
}

bool same_colour_histogram(std::vector<std::uint32_t> ca, std::vector<std::uint32_t> cb) {
  std::sort(ca.begin(), ca.end());
  std::sort(cb.begin(), cb.end());
  return ca == cb;
}

}  // namespace

VertexMap identity_map(std::size_t n) {
  VertexMap m;
  m.image.resize(n);
  std::iota(m.image.begin(), m.image.end(), 0);
  return m;
}

bool is_total(const FlagComplex& src, const FlagComplex& dst, const VertexMap& f) {
  if (f.image.size() != src.size()) return false;
  return std::all_of(f.image.begin(), f.image.end(), [&](VertexIndex t) { return t < dst.size(); });
}

bool is_simplicial(const FlagComplex& src, const FlagComplex& dst, const VertexMap& f) {
  if (!is_total(src, dst, f)) return false;
  for (const Edge& e : src.edges()) {
    if (f(e.u) != f(e.v) && !dst.adjacent(f(e.u), f(e.v))) return false;
  }
  return true;
}

bool is_locally_injective(const FlagComplex& src, const FlagComplex& dst, const VertexMap& f) {
  if (!is_total(src, dst, f)) return false;
  for (VertexIndex v = 0; v < src.size(); ++v) {
    std::vector<VertexIndex> images{f(v)};
    for (VertexIndex u : src.neighbors(v)) images.push_back(f(u));
    std::sort(images.begin(), images.end());
    if (std::adjacent_find(images.begin(), images.end()) != images.end()) return false;
  }
  return true;
}

bool is_injective(const VertexMap& f) {
  auto img = f.image;
  std::sort(img.begin(), img.end());
  return std::adjacent_find(img.begin(), img.end()) == img.end();
}

bool is_isomorphism(const FlagComplex& src, const FlagComplex& dst, const VertexMap& f) {
  if (src.size() != dst.size() || !is_total(src, dst, f) || !is_injective(f)) return false;
  for (VertexIndex u = 0; u < src.size(); ++u) {
    for (VertexIndex v = u + 1; v < src.size(); ++v) {
      if (src.adjacent(u, v) != dst.adjacent(f(u), f(v))) return false;
    }
  }
  return true;
}

std::string to_string(Decision d) {
  switch (d) {
    case Decision::found: return "found";
    case Decision::exhausted: return "exhausted";
    case Decision::vertex_count_precheck: return "vertex-count-precheck";
    case Decision::acyclicity_shortcut: return "acyclicity-shortcut";
    case Decision::invariant_precheck: return "invariant-precheck";
  }
  return "unknown";
}

std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>> refine_jointly(
    const FlagComplex& a, const FlagComplex& b, std::vector<std::uint32_t> ca, std::vector<std::uint32_t> cb) {
  if (ca.empty()) ca.assign(a.size(), 0);
  if (cb.empty()) cb.assign(b.size(), 0);
  if (ca.size() != a.size() || cb.size() != b.size()) {
    throw std::invalid_argument("refine_jointly: initial colouring has the wrong length");
  }
  auto classes = [](const std::vector<std::uint32_t>& x, const std::vector<std::uint32_t>& y) {
    std::vector<std::uint32_t> all = x;
    all.insert(all.end(), y.begin(), y.end());
    std::sort(all.begin(), all.end());
    return static_cast<std::size_t>(std::unique(all.begin(), all.end()) - all.begin());
  };
  std::size_t count = classes(ca, cb);
  for (;;) {
    using Signature = std::pair<std::uint32_t, std::vector<std::uint32_t>>;
    std::map<Signature, std::uint32_t> dictionary;
    auto signature = [](const FlagComplex& c, const std::vector<std::uint32_t>& col, VertexIndex v) {
      Signature s{col[v], {}};
      for (VertexIndex u : c.neighbors(v)) s.second.push_back(col[u]);
      std::sort(s.second.begin(), s.second.end());
      return s;
    };
    for (VertexIndex v = 0; v < a.size(); ++v) dictionary.emplace(signature(a, ca, v), 0);
    for (VertexIndex v = 0; v < b.size(); ++v) dictionary.emplace(signature(b, cb, v), 0);
    std::uint32_t next = 0;
    for (auto& [sig, colour] : dictionary) colour = next++;
    std::vector<std::uint32_t> na(a.size()), nb(b.size());
    for (VertexIndex v = 0; v < a.size(); ++v) na[v] = dictionary.at(signature(a, ca, v));
    for (VertexIndex v = 0; v < b.size(); ++v) nb[v] = dictionary.at(signature(b, cb, v));
    ca = std::move(na);
    cb = std::move(nb);
    if (dictionary.size() == count) break;
    count = dictionary.size();
  }
  return {std::move(ca), std::move(cb)};
}

SearchOutcome search_embedding(const FlagComplex& src, const FlagComplex& dst, const EmbeddingOptions& options) {
  SearchOutcome out;
  if (options.vertex_count_precheck && src.size() > dst.size()) {
    out.decided_by = Decision::vertex_count_precheck;
    return out;
  }
  // An injective simplicial map sends a cycle to a cycle.
  if (options.acyclicity_shortcut && dst.is_forest() && !src.is_forest()) {
    out.decided_by = Decision::acyclicity_shortcut;
    return out;
  }
  Backtracker bt(src, dst, MapKind::injective_homomorphism, degree_candidates(src, dst));
  out.nodes = bt.run([&](const VertexMap& m) {
    out.map = m;
    return false;
  });
  out.decided_by = out.map ? Decision::found : Decision::exhausted;
  return out;
}

SearchOutcome search_isomorphism(const FlagComplex& a, const FlagComplex& b) {
  SearchOutcome out;
  if (a.size() != b.size() || a.edge_count() != b.edge_count() || degree_sequence(a) != degree_sequence(b)) {
    out.decided_by = Decision::invariant_precheck;
    return out;
  }
  if (f_vector(a, 2).counts != f_vector(b, 2).counts) {
    out.decided_by = Decision::invariant_precheck;
    return out;
  }
  auto [ca, cb] = refine_jointly(a, b);
  if (!same_colour_histogram(ca, cb)) {
    out.decided_by = Decision::invariant_precheck;
    return out;
  }
  Backtracker bt(a, b, MapKind::isomorphism, colour_candidates(a, b, ca, cb));
  out.nodes = bt.run([&](const VertexMap& m) {
    out.map = m;
    return false;
  });
  out.decided_by = out.map ? Decision::found : Decision::exhausted;
  return out;
}

std::vector<VertexMap> enumerate_locally_injective_maps(const FlagComplex& src, const FlagComplex& target,
                                                        const LocalMapOptions& options) {
  for (const Simplex& s : options.maximal_cliques) {
    if (!src.is_clique(s)) throw std::invalid_argument("supplied maximal clique is not a clique of the source");
  }
  std::vector<VertexMap> out;
  Backtracker bt(src, target, MapKind::locally_injective, degree_candidates(src, target));
  bt.run([&](const VertexMap& m) {
    if (options.require_maximal) {
      for (const Simplex& s : options.maximal_cliques) {
        Simplex img;
        for (VertexIndex v : s) img.push_back(m(v));
        if (!link_vertices(target, img).empty()) return true;
      }
    }
    out.push_back(m);
    return true;
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<VertexMap> automorphisms_extending(const FlagComplex& c,
                                               std::span<const std::pair<VertexIndex, VertexIndex>> fixed,
                                               std::size_t limit) {
  // Individualise the fixed pairs with fresh colours before refining.
  std::vector<std::uint32_t> ca(c.size(), 0), cb(c.size(), 0);
  std::uint32_t colour = 1;
  for (const auto& [x, t] : fixed) {
    if (x >= c.size() || t >= c.size()) throw std::invalid_argument("fixed pair out of range");
    if (ca[x] != 0 || cb[t] != 0) {
      // Repeated pair is fine; a conflicting one admits no bijection.
      if (ca[x] == cb[t]) continue;
      return {};
    }
    ca[x] = colour;
    cb[t] = colour;
    ++colour;
  }
  auto [ra, rb] = refine_jointly(c, c, ca, cb);
  std::vector<VertexMap> out;
  if (!same_colour_histogram(ra, rb)) return out;
  Backtracker bt(c, c, MapKind::isomorphism, colour_candidates(c, c, ra, rb));
  bt.run([&](const VertexMap& m) {
    out.push_back(m);
    return limit == 0 || out.size() < limit;
  });
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace spherecx
