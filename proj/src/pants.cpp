#include "spherecx/pants.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

#include "spherecx/genus_zero.hpp"

namespace spherecx {

bool SphereSystem::contains(VertexIndex v) const {
  return std::binary_search(members.begin(), members.end(), v);
}

SphereSystem make_system(const FlagComplex& ambient, Simplex members) {
  std::sort(members.begin(), members.end());
  if (!ambient.is_clique(members)) throw std::invalid_argument("sphere system is not pairwise disjoint");
  return SphereSystem{std::move(members)};
}

PantsDecomposition make_pants(const FlagComplex& ambient, Simplex members) {
  SphereSystem sys = make_system(ambient, std::move(members));
  if (!is_maximal_system(ambient, sys)) throw std::invalid_argument("sphere system is not maximal");
  return PantsDecomposition{std::move(sys)};
}

bool is_maximal_system(const FlagComplex& ambient, const SphereSystem& sys) {
  return link_vertices(ambient, sys.members).empty();
}

std::vector<PantsDecomposition> enumerate_pants(const FlagComplex& ambient) {
  std::vector<PantsDecomposition> out;
  for (auto& clique : maximal_cliques(ambient)) out.push_back(PantsDecomposition{SphereSystem{std::move(clique)}});
  return out;
}

std::vector<PantsDecomposition> enumerate_pants(int s) {
  if (s < 4) throw std::invalid_argument("enumerate_pants needs s >= 4");
  return enumerate_pants(build_genus_zero_complex(s));
}

std::vector<VertexIndex> flip_partners(const FlagComplex& ambient, const PantsDecomposition& p, VertexIndex a) {
  if (!p.contains(a)) throw std::invalid_argument("flip_partners: sphere is not in the decomposition");
  Simplex rest;
  for (VertexIndex v : p.members()) {
    if (v != a) rest.push_back(v);
  }
  std::vector<VertexIndex> out;
  for (VertexIndex v : link_vertices(ambient, rest)) {
    if (v != a) out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("flip_partners: sphere is self-adjacent, flip undefined");
  return out;
}

std::vector<std::vector<std::size_t>> FlipGraph::adjacency() const {
  std::vector<std::vector<std::size_t>> adj(nodes.size());
  for (const auto& [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (auto& row : adj) std::sort(row.begin(), row.end());
  return adj;
}

FlipGraph pants_flip_graph(const FlagComplex& ambient) {
  FlipGraph g;
  g.nodes = enumerate_pants(ambient);
  std::map<Simplex, std::size_t> where;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) where.emplace(g.nodes[i].members(), i);
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const PantsDecomposition& p = g.nodes[i];
    for (VertexIndex a : p.members()) {
      Simplex rest;
      for (VertexIndex v : p.members()) {
        if (v != a) rest.push_back(v);
      }
      for (VertexIndex b : link_vertices(ambient, rest)) {
        if (b == a) continue;
        Simplex q = rest;
        q.insert(std::upper_bound(q.begin(), q.end(), b), b);
        auto it = where.find(q);
        if (it != where.end() && i < it->second) g.edges.emplace_back(i, it->second);
      }
    }
  }
  std::sort(g.edges.begin(), g.edges.end());
  g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());

  const auto adj = g.adjacency();
  const std::size_t n = g.nodes.size();
  g.connected = true;
  for (std::size_t root = 0; root < n; ++root) {
    std::vector<std::size_t> dist(n, n);
    std::deque<std::size_t> queue{root};
    dist[root] = 0;
    while (!queue.empty()) {
      std::size_t x = queue.front();
      queue.pop_front();
      for (std::size_t y : adj[x]) {
        if (dist[y] == n) {
          dist[y] = dist[x] + 1;
          queue.push_back(y);
        }
      }
    }
    for (std::size_t d : dist) {
      if (d == n) {
        g.connected = false;
        g.diameter = 0;
        return g;
      }
      g.diameter = std::max(g.diameter, d);
    }
  }
  return g;
}

FlipGraph pants_flip_graph(int s) {
  if (s < 4) throw std::invalid_argument("pants_flip_graph needs s >= 4");
  return pants_flip_graph(build_genus_zero_complex(s));
}

}  // namespace spherecx
