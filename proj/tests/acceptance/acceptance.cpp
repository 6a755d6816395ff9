// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure or time overrun.

#include <algorithm>
#include <array>
#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "spherecx/dual_graph.hpp"
#include "spherecx/genus_zero.hpp"
#include "spherecx/homology.hpp"
#include "spherecx/pants.hpp"
#include "spherecx/rigidity.hpp"
#include "spherecx/search.hpp"
#include "spherecx/whitney.hpp"

using namespace spherecx;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[failed: " << what << "] ";
    }
  }
};

struct Criterion {
  int number;
  std::string title;
  double limit_seconds;
  std::function<void(Verdict&)> body;
};

Simplex all_vertices(const FlagComplex& c) {
  Simplex x(c.size());
  for (VertexIndex v = 0; v < c.size(); ++v) x[v] = v;
  return x;
}

// Dual graph with k pants and the given bonds; remaining slots become legs.
DualMultigraph dual(int k, const std::vector<std::pair<int, int>>& ends) {
  std::vector<std::string> ids;
  for (int i = 0; i < k; ++i) ids.push_back("P" + std::to_string(i));
  std::vector<int> next(static_cast<std::size_t>(k), 0);
  auto take = [&](int p) { return Slot{static_cast<std::size_t>(p), next[static_cast<std::size_t>(p)]++}; };
  std::vector<Bond> bonds;
  for (std::size_t i = 0; i < ends.size(); ++i) {
    Slot a = take(ends[i].first);
    Slot b = take(ends[i].second);
    bonds.push_back(Bond{a, b, "b" + std::to_string(i)});
  }
  std::vector<Leg> legs;
  int label = 1;
  for (int p = 0; p < k; ++p) {
    while (next[static_cast<std::size_t>(p)] < 3) legs.push_back(Leg{take(p), label++});
  }
  return DualMultigraph(ids, bonds, legs);
}

void small_complex(Verdict& v) {
  const FlagComplex c = build_genus_zero_complex(4);
  v.require(c.size() == 3 && c.edge_count() == 0, "3 vertices, 0 edges");
  const auto pants = enumerate_pants(c);
  v.require(pants.size() == 3, "3 one-sphere decompositions");
  for (const auto& p : pants) {
    v.require(flip_partners(c, p, p.members()[0]).size() == 2, "each sphere flips to the other two");
  }
  const FlipGraph g = pants_flip_graph(c);
  v.require(g.edges.size() == 3 && g.connected && g.diameter == 1, "all pairs flip-related");
  v.detail << "vertices=" << c.size() << " flip_edges=" << g.edges.size();
}

void five_labels(Verdict& v) {
  const FlagComplex c = build_genus_zero_complex(5);
  v.require(c.size() == 10 && c.edge_count() == 15, "10 vertices, 15 edges");
  v.require(search_isomorphism(c, catalog("petersen")).map.has_value(), "isomorphic to the Petersen graph");
  const AutomorphismGroup g = automorphism_group(c);
  v.require(g.order == 120, "|Aut| = 120");
  auto images = label_action(5);
  std::sort(images.begin(), images.end());
  images.erase(std::unique(images.begin(), images.end()), images.end());
  v.require(images == g.elements, "label action image equals Aut");
  v.detail << "order=" << g.order << " label_images=" << images.size();
}

void six_labels(Verdict& v) {
  const FlagComplex c = build_genus_zero_complex(6);
  const FVector f = f_vector(c, 2);
  v.require(f.counts == std::vector<std::size_t>{25, 105, 105}, "f-vector (25, 105, 105)");
  v.require(f.euler == 25, "Euler characteristic 25");
  const HomologyReport h = betti_numbers(c, 2);
  v.require(h.betti[0] == 1 && h.betti[2] >= 1, "b0 = 1, b2 >= 1");
  v.require(h.betti[0] - h.betti[1] + h.betti[2] == 25, "b0 - b1 + b2 = 25");
  v.require(h.modular_ranks_agree, "modular ranks agree");
  v.detail << "betti=(" << h.betti[0] << "," << h.betti[1] << "," << h.betti[2] << ") chi=" << f.euler;
}

void nonembedding(Verdict& v) {
  const FlagComplex k33 = catalog("k33"), pet = catalog("petersen"), cat = build_caterpillar_window(10);
  const EmbeddingOptions exhaustive{false, false};
  const SearchOutcome a = search_embedding(k33, pet, exhaustive);
  v.require(!a.map && a.decided_by == Decision::exhausted, "K33 -> Petersen exhausted with no map");
  const SearchOutcome b = search_embedding(pet, k33);
  v.require(!b.map && b.decided_by == Decision::vertex_count_precheck, "Petersen -> K33 by vertex count");
  for (const FlagComplex* src : {&k33, &pet}) {
    const SearchOutcome quick = search_embedding(*src, cat);
    const SearchOutcome full = search_embedding(*src, cat, exhaustive);
    v.require(!quick.map && quick.decided_by == Decision::acyclicity_shortcut, "shortcut rejects");
    v.require(!full.map && full.decided_by == Decision::exhausted, "exhaustive search agrees");
  }
  v.detail << "k33->petersen nodes=" << a.nodes;
}

void pants_and_flips(Verdict& v) {
  const std::size_t five = enumerate_pants(5).size(), six = enumerate_pants(6).size();
  v.require(five == 15, "15 decompositions for s = 5");
  v.require(six == 105, "105 decompositions for s = 6");
  v.detail << "pants s=5: " << five << " s=6: " << six;
  for (int s = 4; s <= 6; ++s) {
    const FlagComplex c = build_genus_zero_complex(s);
    const FlipGraph g = pants_flip_graph(c);
    v.require(g.connected, "flip graph connected for s = " + std::to_string(s));
    for (const auto& p : g.nodes) {
      for (VertexIndex a : p.members()) {
        if (flip_partners(c, p, a).size() != 2) v.require(false, "two flip partners");
      }
    }
  }
}

void link_table(Verdict& v) {
  using J = JoinDecomposition;
  struct Row {
    DualMultigraph d;
    std::vector<std::size_t> eta;
    J expected;
  };
  const std::vector<Row> rows{
      {dual(1, {{0, 0}}), {0}, J{{{1, 1}}}},
      {dual(2, {{0, 1}}), {0}, J{{{0, 4}}}},
      {dual(4, {{0, 1}, {1, 2}, {2, 3}}), {0, 2}, J{{{0, 4}, {0, 4}}}},
      {dual(4, {{0, 1}, {1, 2}, {2, 3}}), {0, 1}, J{{{0, 5}}}},
      {dual(2, {{0, 1}, {0, 1}}), {0, 1}, J{{{1, 2}}}},
      {dual(2, {{0, 0}, {0, 1}}), {0, 1}, J{{{1, 2}}}},
      {dual(3, {{0, 0}, {0, 1}, {1, 2}}), {0, 2}, J{{{1, 1}, {0, 4}}}},
      {dual(4, {{0, 1}, {0, 2}, {0, 3}}), {0, 1, 2}, J{{{0, 6}}}},
      {dual(3, {{0, 1}, {1, 2}, {2, 0}}), {0, 1, 2}, J{{{1, 3}}}},
  };
  int matched = 0;
  for (const Row& r : rows) {
    const J got = classify_link(r.d, r.eta);
    if (got == r.expected) {
      ++matched;
    } else {
      v.require(false, "row " + std::to_string(matched + 1) + " gave " + to_string(got));
    }
  }
  v.detail << "rows=" << matched << "/9";
}

void whitney(Verdict& v) {
  std::mt19937_64 rng(7);
  auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  int recovered = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = uniform(3, 12);
    std::vector<std::string> vs;
    for (int i = 0; i < n; ++i) vs.push_back("x" + std::to_string(i));
    std::vector<std::array<std::string, 3>> es;
    for (int i = 1; i < n; ++i) es.push_back({"e" + std::to_string(es.size()), vs[uniform(0, i - 1)], vs[i]});
    for (int k = uniform(0, 2 * n); k > 0; --k) {
      const int a = uniform(0, n - 1);
      const int b = uniform(0, 4) == 0 ? a : uniform(0, n - 1);
      es.push_back({"e" + std::to_string(es.size()), vs[a], vs[b]});
    }
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::string> ws;
    for (int i = 0; i < n; ++i) ws.push_back("y" + std::to_string(perm[i]));
    std::vector<std::array<std::string, 3>> fs;
    std::map<std::string, std::string> edge_map;
    std::vector<std::size_t> order(es.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t k = 0; k < order.size(); ++k) {
      const auto& e = es[order[k]];
      const std::string id = "f" + std::to_string(k);
      edge_map[e[0]] = id;
      const std::string u = ws[std::stoul(e[1].substr(1))], w = ws[std::stoul(e[2].substr(1))];
      fs.push_back(uniform(0, 1) ? std::array<std::string, 3>{id, u, w} : std::array<std::string, 3>{id, w, u});
    }
    const EdgeBijection psi = make_edge_bijection(Multigraph(vs, es), Multigraph(ws, fs), edge_map);
    if (!is_edge_isomorphism(psi)) continue;
    const LiftResult r = lift_edge_isomorphism(psi);
    if (r.verdict != LiftVerdict::lifted) continue;
    bool exact = true;
    for (VertexIndex x = 0; x < psi.source.vertex_count(); ++x) {
      const std::string& id = psi.source.vertices()[x];
      exact = exact && psi.target.vertices()[r.vertex_map[x]] == ws[std::stoul(id.substr(1))];
    }
    recovered += exact;
  }
  v.require(recovered == 100, "100 scramble roundtrips recovered");

  const EdgeBijection k3 = make_edge_bijection(
      Multigraph({"a", "b", "c"}, {{"ab", "a", "b"}, {"bc", "b", "c"}, {"ca", "c", "a"}}),
      Multigraph({"o", "x", "y", "z"}, {{"ox", "o", "x"}, {"oy", "o", "y"}, {"oz", "o", "z"}}),
      {{"ab", "ox"}, {"bc", "oy"}, {"ca", "oz"}});
  v.require(is_edge_isomorphism(k3), "K3 -> K13 accepted as edge isomorphism");
  v.require(find_k3_k13_pair(k3).has_value(), "K3/K13 pair found");
  v.require(lift_edge_isomorphism(k3).verdict == LiftVerdict::obstructed, "lift refused");
  const Multigraph theta({"a", "b"}, {{"e0", "a", "b"}, {"e1", "a", "b"}, {"e2", "a", "b"}});
  const EdgeBijection amb = make_edge_bijection(theta, theta, {{"e0", "e1"}, {"e1", "e2"}, {"e2", "e0"}});
  v.require(lift_edge_isomorphism(amb).verdict == LiftVerdict::ambiguous_order_2, "ambiguous-order-2");
  v.detail << "roundtrips=" << recovered << "/100";
}

void rigidity(Verdict& v) {
  for (auto [s, expected] : {std::pair{5, std::size_t{120}}, std::pair{6, std::size_t{720}}}) {
    const FlagComplex c = build_genus_zero_complex(s);
    const RigidityCertificate cert = verify_rigidity(c, all_vertices(c), RigidityMode::plain);
    v.require(cert.maps.size() == expected, "map count for s = " + std::to_string(s));
    v.require(cert.all_extend, "unique extensions for s = " + std::to_string(s));
    v.detail << "s=" << s << " maps=" << cert.maps.size() << " ";
  }
}

void caterpillar(Verdict& v) {
  const FlagComplex w = build_caterpillar_window(6);
  std::set<Simplex> frontier;
  for (VertexIndex x = 0; x < w.size(); ++x) {
    if (!w.has_tag(x, "boundary-effect")) frontier.insert({x});
  }
  std::size_t checked = 0, valid = 0;
  for (std::size_t size = 1; size < 8; ++size) {
    std::set<Simplex> next;
    for (const Simplex& x : frontier) {
      for (VertexIndex u : x) {
        for (VertexIndex y : w.neighbors(u)) {
          if (w.has_tag(y, "boundary-effect") || std::binary_search(x.begin(), x.end(), y)) continue;
          Simplex grown = x;
          grown.insert(std::upper_bound(grown.begin(), grown.end(), y), y);
          next.insert(std::move(grown));
        }
      }
    }
    for (const Simplex& x : next) {
      ++checked;
      valid += validate_caterpillar_witness(caterpillar_witness(w, x));
    }
    frontier = std::move(next);
  }
  v.require(checked > 0 && valid == checked, "every witness validates");
  v.detail << "subcomplexes=" << checked << " valid=" << valid;
}

void census(Verdict& v) {
  int rows = 0;
  for (int n = 1; n <= 3; ++n) {
    for (int s = 0; s <= 8; ++s, ++rows) {
      const bool nonempty = !good_pair_census(make_cut_labeling(n, s), 1).empty();
      v.require(nonempty == (2 * n + s >= 6), "threshold at n=" + std::to_string(n) + " s=" + std::to_string(s));
    }
  }
  v.detail << "rows=" << rows;
}

void link_classes(Verdict& v) {
  const int s = 7;
  const FlagComplex c = build_genus_zero_complex(s);
  const auto parts = partitions_of(c);
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::size_t> pick(0, c.size() - 1);
  std::uniform_int_distribution<int> size(1, s - 3);
  for (int trial = 0; trial < 200; ++trial) {
    const int want = size(rng);
    Simplex sys;
    for (int attempts = 0; attempts < 500 && static_cast<int>(sys.size()) < want; ++attempts) {
      const VertexIndex x = pick(rng);
      bool ok = std::find(sys.begin(), sys.end(), x) == sys.end();
      for (VertexIndex u : sys) ok = ok && c.adjacent(u, x);
      if (ok) sys.push_back(x);
    }
    std::sort(sys.begin(), sys.end());
    std::vector<LinkClass> classes;
    try {
      classes = link_equivalence_classes(c, make_system(c, sys));
    } catch (const LinkRelationError& e) {
      v.require(false, std::string("trial ") + std::to_string(trial) + ": " + e.what());
      continue;
    }
    std::vector<SpherePartition> system;
    for (VertexIndex x : sys) system.push_back(parts[x]);
    const auto regions = laminar_regions(s, system);
    std::set<std::size_t> non_pants, hit;
    for (std::size_t r = 0; r < regions.size(); ++r) {
      if (!regions[r].is_pants()) non_pants.insert(r);
    }
    for (const LinkClass& cls : classes) hit.insert(cls.region);
    v.require(hit.size() == classes.size() && hit == non_pants, "classes biject with non-pants regions");
  }
  v.detail << "systems=200";
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "four-label complex and its flips", 1, small_complex},
      {2, "five-label complex is the Petersen graph with 120 automorphisms", 5, five_labels},
      {3, "six-label complex f-vector and homology", 30, six_labels},
      {4, "non-embedding searches", 10, nonembedding},
      {5, "pants decompositions and flip graphs", 20, pants_and_flips},
      {6, "link classification table", 1, link_table},
      {7, "edge isomorphism lifting", 10, whitney},
      {8, "local self-maps extend uniquely", 60, rigidity},
      {9, "caterpillar witnesses", 10, caterpillar},
      {10, "good-pair census threshold", 1, census},
      {11, "link equivalence classes", 20, link_classes},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    Verdict v;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.body(v);
    } catch (const std::exception& e) {
      v.require(false, std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds > c.limit_seconds) v.require(false, "time limit");
    failures += !v.pass;
    std::cout << (v.pass ? "PASS" : "FAIL") << " criterion " << c.number << ": " << c.title << " ("
              << static_cast<long>(seconds * 1000) << " ms, limit " << c.limit_seconds << " s) " << v.detail.str()
              << std::endl;
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
