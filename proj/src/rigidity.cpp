#include "spherecx/rigidity.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace spherecx {

namespace {

Simplex without(const Simplex& s, VertexIndex a) {
  Simplex out;
  for (VertexIndex v : s) {
    if (v != a) out.push_back(v);
  }
  return out;
}

bool inside(const Simplex& sorted_superset, const Simplex& s) {
  return std::includes(sorted_superset.begin(), sorted_superset.end(), s.begin(), s.end());
}

void check_subset(const FlagComplex& ambient, const Simplex& x) {
  if (!std::is_sorted(x.begin(), x.end()) || std::adjacent_find(x.begin(), x.end()) != x.end()) {
    throw std::invalid_argument("subcomplex vertex list must be sorted and distinct");
  }
  if (!x.empty() && x.back() >= ambient.size()) throw std::invalid_argument("subcomplex vertex out of range");
}

// Maximal cliques of the ambient lying inside x.
std::vector<Simplex> pants_inside(const FlagComplex& ambient, const Simplex& x) {
  std::vector<Simplex> out;
  for (Simplex& p : maximal_cliques(ambient)) {
    if (inside(x, p)) out.push_back(std::move(p));
  }
  return out;
}

std::string describe(const CaterpillarVertex& v) {
  return v.id() + (v.separating() ? " (separating leaf)" : " (non-separating spine vertex)");
}

}  // namespace

AutomorphismGroup automorphism_group(const FlagComplex& c, std::size_t list_limit) {
  AutomorphismGroup g;
  const std::size_t n = c.size();
  std::vector<std::pair<VertexIndex, VertexIndex>> fixed;
  std::vector<std::uint32_t> initial(n, 0);
  for (;;) {
    auto colours = refine_jointly(c, c, initial, initial).first;
    // First vertex in a non-singleton cell; none means the stabiliser is trivial.
    std::vector<std::size_t> cell_size(n + 1, 0);
    for (auto col : colours) ++cell_size[col];
    std::optional<VertexIndex> base;
    for (VertexIndex v = 0; v < n && !base; ++v) {
      if (cell_size[colours[v]] > 1) base = v;
    }
    if (!base) break;
    const VertexIndex b = *base;

    std::vector<VertexMap> level;
    std::vector<bool> in_orbit(n, false);
    in_orbit[b] = true;
    std::size_t orbit = 1;
    for (VertexIndex t = 0; t < n; ++t) {
      if (in_orbit[t] || colours[t] != colours[b]) continue;
      auto pairs = fixed;
      pairs.emplace_back(b, t);
      auto found = automorphisms_extending(c, pairs, 1);
      if (found.empty()) continue;
      level.push_back(found.front());
      g.generators.push_back(found.front());
      // Close the orbit under this level's representatives.
      std::vector<VertexIndex> queue;
      for (VertexIndex v = 0; v < n; ++v) {
        if (in_orbit[v]) queue.push_back(v);
      }
      while (!queue.empty()) {
        VertexIndex x = queue.back();
        queue.pop_back();
        for (const VertexMap& h : level) {
          if (!in_orbit[h(x)]) {
            in_orbit[h(x)] = true;
            ++orbit;
            queue.push_back(h(x));
          }
        }
      }
    }
    g.order *= orbit;
    fixed.emplace_back(b, b);
    initial.assign(n, 0);
    for (std::size_t i = 0; i < fixed.size(); ++i) initial[fixed[i].first] = static_cast<std::uint32_t>(i + 1);
  }
  if (g.order <= list_limit) {
    g.elements = automorphisms_extending(c, {}, 0);
    g.elements_listed = true;
    if (Integer(g.elements.size()) != g.order) {
      throw std::logic_error("automorphism_group: element count disagrees with the stabiliser chain");
    }
  }
  return g;
}

std::vector<VertexMap> label_action(int s) {
  const FlagComplex c = build_genus_zero_complex(s);
  const auto parts = partitions_of(c);
  std::vector<int> perm(static_cast<std::size_t>(s));
  std::iota(perm.begin(), perm.end(), 1);
  std::vector<VertexMap> out;
  do {
    VertexMap m;
    for (const SpherePartition& p : parts) {
      std::vector<int> moved;
      for (int label : p.block()) moved.push_back(perm[static_cast<std::size_t>(label - 1)]);
      m.image.push_back(c.index(SpherePartition::from_block(s, moved).id()));
    }
    out.push_back(std::move(m));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

Simplex embed_subcomplex(const FlagComplex& ambient, const FlagComplex& x) {
  Simplex out;
  for (const std::string& id : x.vertices()) {
    auto v = ambient.find(id);
    if (!v) throw std::invalid_argument("subcomplex vertex " + id + " is not in the ambient complex");
    out.push_back(*v);
  }
  for (VertexIndex i = 0; i < x.size(); ++i) {
    for (VertexIndex j = i + 1; j < x.size(); ++j) {
      if (x.adjacent(i, j) != ambient.adjacent(out[i], out[j])) {
        throw std::invalid_argument("subcomplex is not induced: " + x.id(i) + " / " + x.id(j));
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string to_string(RigidityMode m) {
  return m == RigidityMode::plain ? "plain" : "over-maximal-maps";
}

RigidityCertificate verify_rigidity(const FlagComplex& ambient, const Simplex& x, RigidityMode mode) {
  check_subset(ambient, x);
  RigidityCertificate cert;
  cert.mode = mode;
  cert.subcomplex = x;
  const FlagComplex sub = ambient.induced(x);
  LocalMapOptions opts;
  if (mode == RigidityMode::over_maximal_maps) {
    opts.require_maximal = true;
    for (const Simplex& p : pants_inside(ambient, x)) {
      Simplex local;
      for (VertexIndex v : p) {
        local.push_back(static_cast<VertexIndex>(std::lower_bound(x.begin(), x.end(), v) - x.begin()));
      }
      opts.maximal_cliques.push_back(std::move(local));
    }
  }
  cert.maps = enumerate_locally_injective_maps(sub, ambient, opts);
  for (std::size_t i = 0; i < cert.maps.size(); ++i) {
    std::vector<std::pair<VertexIndex, VertexIndex>> pairs;
    for (std::size_t k = 0; k < x.size(); ++k) pairs.emplace_back(x[k], cert.maps[i](k));
    auto autos = automorphisms_extending(ambient, pairs, 2);
    cert.extension_counts.push_back(autos.size());
    if (autos.size() == 1) {
      cert.extensions.emplace_back(autos.front());
    } else {
      cert.extensions.emplace_back(std::nullopt);
      if (cert.all_extend) {
        cert.all_extend = false;
        cert.counterexample = i;
      }
    }
  }
  return cert;
}

nlohmann::json certificate_to_json(const FlagComplex& ambient, const RigidityCertificate& cert) {
  nlohmann::json subcomplex = nlohmann::json::array();
  for (VertexIndex v : cert.subcomplex) subcomplex.push_back(ambient.id(v));
  nlohmann::json maps = nlohmann::json::array();
  for (std::size_t i = 0; i < cert.maps.size(); ++i) {
    nlohmann::json image = nlohmann::json::object();
    for (std::size_t k = 0; k < cert.subcomplex.size(); ++k) {
      image[ambient.id(cert.subcomplex[k])] = ambient.id(cert.maps[i](k));
    }
    nlohmann::json entry{{"map", image}, {"extensions", cert.extension_counts[i]}};
    if (cert.extensions[i]) {
      nlohmann::json ext = nlohmann::json::object();
      for (VertexIndex v = 0; v < ambient.size(); ++v) ext[ambient.id(v)] = ambient.id((*cert.extensions[i])(v));
      entry["automorphism"] = ext;
    }
    maps.push_back(std::move(entry));
  }
  nlohmann::json doc{{"mode", to_string(cert.mode)},
                     {"subcomplex", subcomplex},
                     {"total_maps", cert.maps.size()},
                     {"all_extend", cert.all_extend},
                     {"maps", maps}};
  if (cert.counterexample) doc["counterexample"] = *cert.counterexample;
  return doc;
}

std::vector<VertexIndex> find_split_spheres(const FlagComplex& ambient, const PantsDecomposition& p, VertexIndex a) {
  if (!p.contains(a)) throw std::invalid_argument("find_split_spheres: sphere is not in the decomposition");
  std::vector<VertexIndex> out;
  for (VertexIndex b : link_vertices(ambient, without(p.members(), a))) {
    if (b != a && !p.contains(b) && !ambient.adjacent(a, b)) out.push_back(b);
  }
  return out;
}

std::vector<std::pair<VertexIndex, VertexIndex>> find_split_pairs(const FlagComplex& ambient, const Simplex& x,
                                                                  VertexIndex a) {
  check_subset(ambient, x);
  std::set<VertexIndex> splitters;
  for (const Simplex& p : pants_inside(ambient, x)) {
    if (!std::binary_search(p.begin(), p.end(), a)) continue;
    for (VertexIndex b : find_split_spheres(ambient, PantsDecomposition{SphereSystem{p}}, a)) splitters.insert(b);
  }
  std::vector<std::pair<VertexIndex, VertexIndex>> out;
  for (auto i = splitters.begin(); i != splitters.end(); ++i) {
    for (auto j = std::next(i); j != splitters.end(); ++j) {
      if (ambient.adjacent(*i, *j)) out.emplace_back(*i, *j);
    }
  }
  return out;
}

std::optional<std::pair<PantsDecomposition, PantsDecomposition>> detect_x_detectable(const FlagComplex& ambient,
                                                                                      const Simplex& x,
                                                                                      VertexIndex a,
                                                                                      VertexIndex a2) {
  check_subset(ambient, x);
  if (a == a2) throw std::invalid_argument("detect_x_detectable: spheres must differ");
  if (!std::binary_search(x.begin(), x.end(), a) || !std::binary_search(x.begin(), x.end(), a2)) {
    throw std::invalid_argument("detect_x_detectable: both spheres must lie in the subcomplex");
  }
  for (const Simplex& p : pants_inside(ambient, x)) {
    if (!std::binary_search(p.begin(), p.end(), a)) continue;
    Simplex rest = without(p, a);
    Simplex q = rest;
    q.insert(std::upper_bound(q.begin(), q.end(), a2), a2);
    if (!ambient.is_clique(q) || !link_vertices(ambient, q).empty()) continue;
    if (ambient.adjacent(a, a2)) throw std::logic_error("detected flip between disjoint spheres");
    return std::make_pair(PantsDecomposition{SphereSystem{p}}, PantsDecomposition{SphereSystem{q}});
  }
  return std::nullopt;
}

Simplex build_x_sigma(const FlagComplex& ambient, const PantsDecomposition& sigma) {
  if (!ambient.is_clique(sigma.members()) || !is_maximal_system(ambient, sigma.system)) {
    throw std::invalid_argument("build_x_sigma: sphere system is not maximal");
  }
  std::set<VertexIndex> out(sigma.members().begin(), sigma.members().end());
  for (VertexIndex a : sigma.members()) {
    for (VertexIndex v : link_vertices(ambient, without(sigma.members(), a))) out.insert(v);
  }
  return Simplex(out.begin(), out.end());
}

std::vector<LinkClass> link_equivalence_classes(const FlagComplex& ambient, const SphereSystem& sigma) {
  const auto link = link_vertices(ambient, sigma.members);
  const std::size_t k = link.size();
  std::vector<Bitset> related(k, Bitset(k));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) {
      bool rel = i == j || !ambient.adjacent(link[i], link[j]);
      for (std::size_t c = 0; c < k && !rel; ++c) {
        rel = !ambient.adjacent(link[c], link[i]) && !ambient.adjacent(link[c], link[j]);
      }
      related[i][j] = rel;
      related[j][i] = rel;
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (!related[i][j]) continue;
      if (!related[j].is_subset_of(related[i])) {
        throw LinkRelationError("link relation is not transitive at " + ambient.id(link[i]) + " / " +
                                ambient.id(link[j]));
      }
    }
  }

  const auto parts = partitions_of(ambient);
  std::vector<SpherePartition> system;
  for (VertexIndex v : sigma.members) system.push_back(parts[v]);
  const int s = parts.empty() ? 0 : parts.front().boundary_count();
  const auto regions = laminar_regions(s, system);

  std::vector<LinkClass> out;
  std::vector<bool> done(k, false);
  for (std::size_t i = 0; i < k; ++i) {
    if (done[i]) continue;
    LinkClass cls;
    for (std::size_t j = 0; j < k; ++j) {
      if (!related[i][j]) continue;
      done[j] = true;
      cls.members.push_back(link[j]);
    }
    cls.region = region_of(regions, parts[cls.members.front()]);
    for (VertexIndex v : cls.members) {
      if (region_of(regions, parts[v]) != cls.region) {
        throw LinkRelationError("link class spans two complementary regions");
      }
    }
    cls.signature = ManifoldSignature{0, regions[cls.region].boundary_count()};
    out.push_back(std::move(cls));
  }
  return out;
}

CaterpillarWitness caterpillar_witness(const FlagComplex& window, const Simplex& x, bool allow_boundary) {
  check_subset(window, x);
  if (x.size() < 2) throw std::invalid_argument("caterpillar_witness: X needs at least two vertices");
  if (!window.induced(x).is_connected()) throw std::invalid_argument("caterpillar_witness: X is disconnected");
  CaterpillarWitness w;
  std::optional<long> right;
  for (VertexIndex v : x) {
    if (!allow_boundary && window.has_tag(v, "boundary-effect")) {
      throw std::invalid_argument("caterpillar_witness: X touches the window boundary at " + window.id(v));
    }
    w.domain.push_back(CaterpillarVertex::parse(window.id(v)));
    if (w.domain.back().spine) right = std::max(right.value_or(w.domain.back().position), w.domain.back().position);
  }
  if (!right) throw std::invalid_argument("caterpillar_witness: X has no spine vertex");
  const long b = *right;
  w.image = w.domain;
  auto position_of = [&](const CaterpillarVertex& v) -> std::optional<std::size_t> {
    auto it = std::find(w.domain.begin(), w.domain.end(), v);
    if (it == w.domain.end()) return std::nullopt;
    return static_cast<std::size_t>(it - w.domain.begin());
  };
  const CaterpillarVertex leaf{false, b};
  const CaterpillarVertex spine{true, b};
  if (auto at = position_of(leaf)) {
    // The frontier leaf continues the spine instead.
    w.image[*at] = CaterpillarVertex{true, b + 1};
    w.mismatch = *at;
  } else {
    // X ends at z_b without its leaf: fold z_b onto the previous leaf.
    const CaterpillarVertex prev_leaf{false, b - 1};
    const std::size_t at_spine = *position_of(spine);
    w.image[at_spine] = prev_leaf;
    if (auto at_leaf = position_of(prev_leaf)) w.image[*at_leaf] = spine;
    w.mismatch = at_spine;
  }
  w.reason = describe(w.domain[w.mismatch]) + " is sent to " + describe(w.image[w.mismatch]) +
             "; valence-1 and valence-3 vertices are not exchanged by automorphisms";
  return w;
}

bool validate_caterpillar_witness(const CaterpillarWitness& w) {
  const std::size_t n = w.domain.size();
  if (w.image.size() != n || w.mismatch >= n) return false;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<CaterpillarVertex> star{w.image[i]};
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || !caterpillar_adjacent(w.domain[i], w.domain[j])) continue;
      if (!caterpillar_adjacent(w.image[i], w.image[j])) return false;
      star.push_back(w.image[j]);
    }
    std::sort(star.begin(), star.end());
    if (std::adjacent_find(star.begin(), star.end()) != star.end()) return false;
  }
  return w.domain[w.mismatch].separating() != w.image[w.mismatch].separating();
}

nlohmann::json witness_to_json(const CaterpillarWitness& w) {
  nlohmann::json map = nlohmann::json::object();
  for (std::size_t i = 0; i < w.domain.size(); ++i) map[w.domain[i].id()] = w.image[i].id();
  return {{"map", map}, {"mismatch", w.domain[w.mismatch].id()}, {"reason", w.reason}};
}

CutLabeling make_cut_labeling(int n, int s) {
  if (n < 1 || s < 0) throw std::invalid_argument("cut labeling needs n >= 1 and s >= 0");
  CutLabeling cut;
  cut.n = n;
  cut.s = s;
  for (int i = 1; i <= n; ++i) {
    for (const char* side : {"+", "-"}) {
      std::string label = "A" + std::to_string(i) + side;
      cut.labels.push_back(label);
      cut.origin[label] = "Y" + std::to_string(i);
    }
  }
  for (int j = 1; j <= s; ++j) {
    std::string label = "B" + std::to_string(j);
    cut.labels.push_back(label);
    cut.origin[label] = "boundary" + std::to_string(j);
  }
  return cut;
}

std::vector<GoodPair> good_pair_census(const CutLabeling& cut, int pair_index) {
  if (pair_index < 1 || pair_index > cut.n) throw std::invalid_argument("good_pair_census: no such cut pair");
  const std::string plus = "A" + std::to_string(pair_index) + "+";
  const std::string minus = "A" + std::to_string(pair_index) + "-";
  std::vector<std::string> spare;
  for (const std::string& l : cut.labels) {
    if (l != plus && l != minus) spare.push_back(l);
  }
  std::vector<GoodSphere> spheres;
  for (const std::string& p : spare) {
    for (const std::string& q : spare) {
      if (p != q) spheres.push_back(GoodSphere{p, q});
    }
  }
  std::sort(spheres.begin(), spheres.end());
  std::vector<GoodPair> out;
  for (std::size_t i = 0; i < spheres.size(); ++i) {
    for (std::size_t j = i + 1; j < spheres.size(); ++j) {
      const GoodSphere& g = spheres[i];
      const GoodSphere& h = spheres[j];
      if (g.with_minus == h.with_minus || g.with_minus == h.with_plus || g.with_plus == h.with_minus ||
          g.with_plus == h.with_plus) {
        continue;
      }
      out.push_back(GoodPair{g, h});
    }
  }
  return out;
}

}  // namespace spherecx
