#include "spherecx/flag_complex.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace spherecx {

namespace {

// Bron-Kerbosch with Tomita pivoting on bitsets.
void bron_kerbosch(const FlagComplex& c, Simplex& r, Bitset p, Bitset x, std::vector<Simplex>& out) {
  if (p.none()) {
    if (x.none()) {
      Simplex s = r;
      std::sort(s.begin(), s.end());
      out.push_back(std::move(s));
    }
    return;
  }
  Bitset px = p | x;
  std::size_t pivot = px.find_first();
  std::size_t best = (p & c.neighbor_set(pivot)).count();
  for (std::size_t u = px.find_next(pivot); u != Bitset::npos; u = px.find_next(u)) {
    std::size_t k = (p & c.neighbor_set(u)).count();
    if (k > best) {
      best = k;
      pivot = u;
    }
  }
  Bitset candidates = p - c.neighbor_set(pivot);
  for (std::size_t v = candidates.find_first(); v != Bitset::npos; v = candidates.find_next(v)) {
    r.push_back(v);
    bron_kerbosch(c, r, p & c.neighbor_set(v), x & c.neighbor_set(v), out);
    r.pop_back();
    p.reset(v);
    x.set(v);
  }
}

void extend_cliques(const FlagComplex& c, Simplex& current, const Bitset& common, std::size_t max_size,
                    std::vector<std::vector<Simplex>>& out) {
  out[current.size() - 1].push_back(current);
  if (current.size() == max_size) return;
  // Only extend by vertices above the current maximum: each clique once, in lex order.
  for (std::size_t v = common.find_next(current.back()); v != Bitset::npos; v = common.find_next(v)) {
    current.push_back(v);
    extend_cliques(c, current, common & c.neighbor_set(v), max_size, out);
    current.pop_back();
  }
}

}  // namespace

FlagComplex FlagComplex::from_adjacency(std::vector<std::string> vertices,
                                        std::span<const std::pair<std::string, std::string>> pairs) {
  std::sort(vertices.begin(), vertices.end());
  if (std::adjacent_find(vertices.begin(), vertices.end()) != vertices.end()) {
    throw std::invalid_argument("duplicate vertex id");
  }
  std::unordered_map<std::string_view, VertexIndex> where;
  for (VertexIndex i = 0; i < vertices.size(); ++i) where.emplace(vertices[i], i);
  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  for (const auto& [a, b] : pairs) {
    auto ia = where.find(a);
    auto ib = where.find(b);
    if (ia == where.end()) throw std::invalid_argument("unknown vertex id: " + a);
    if (ib == where.end()) throw std::invalid_argument("unknown vertex id: " + b);
    if (ia->second == ib->second) throw std::invalid_argument("self-loop pair on vertex: " + a);
    edges.push_back({ia->second, ib->second});
  }
  return from_sorted_indices(std::move(vertices), edges);
}

FlagComplex FlagComplex::from_sorted_indices(std::vector<std::string> sorted_vertices,
                                             std::span<const Edge> edges) {
  FlagComplex c;
  const std::size_t n = sorted_vertices.size();
  c.ids_ = std::move(sorted_vertices);
  c.rows_.assign(n, Bitset(n));
  c.lists_.assign(n, {});
  c.tags_.assign(n, {});
  for (const Edge& e : edges) {
    if (e.u >= n || e.v >= n) throw std::invalid_argument("edge index out of range");
    if (e.u == e.v) throw std::invalid_argument("self-loop pair on vertex: " + c.ids_[e.u]);
    c.rows_[e.u].set(e.v);
    c.rows_[e.v].set(e.u);
  }
  for (VertexIndex v = 0; v < n; ++v) {
    for (std::size_t u = c.rows_[v].find_first(); u != Bitset::npos; u = c.rows_[v].find_next(u)) {
      c.lists_[v].push_back(u);
    }
    c.edge_count_ += c.lists_[v].size();
  }
  c.edge_count_ /= 2;
  return c;
}

std::optional<VertexIndex> FlagComplex::find(std::string_view id) const {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), id,
                             [](const std::string& a, std::string_view b) { return a < b; });
  if (it == ids_.end() || *it != id) return std::nullopt;
  return static_cast<VertexIndex>(it - ids_.begin());
}

VertexIndex FlagComplex::index(std::string_view id) const {
  auto v = find(id);
  if (!v) throw std::invalid_argument("unknown vertex id: " + std::string(id));
  return *v;
}

std::vector<Edge> FlagComplex::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (VertexIndex u = 0; u < size(); ++u) {
    for (VertexIndex v : lists_[u]) {
      if (u < v) out.push_back({u, v});
    }
  }
  return out;
}

bool FlagComplex::is_clique(std::span<const VertexIndex> vs) const {
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (vs[i] >= size()) return false;
    for (std::size_t j = i + 1; j < vs.size(); ++j) {
      if (vs[i] == vs[j] || !rows_[vs[i]][vs[j]]) return false;
    }
  }
  return true;
}

int FlagComplex::dimension() const {
  std::size_t best = 0;
  for (const auto& s : maximal_cliques(*this)) best = std::max(best, s.size());
  return static_cast<int>(best) - 1;
}

FlagComplex FlagComplex::induced(std::span<const VertexIndex> vs) const {
  std::vector<VertexIndex> sorted(vs.begin(), vs.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<std::string> ids;
  ids.reserve(sorted.size());
  for (VertexIndex v : sorted) ids.push_back(id(v));
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    for (std::size_t j = i + 1; j < sorted.size(); ++j) {
      if (adjacent(sorted[i], sorted[j])) edges.push_back({i, j});
    }
  }
  FlagComplex out = from_sorted_indices(std::move(ids), edges);
  for (std::size_t i = 0; i < sorted.size(); ++i) out.tags_[i] = tags_[sorted[i]];
  return out;
}

bool FlagComplex::has_tag(VertexIndex v, std::string_view tag) const {
  const auto& t = tags_.at(v);
  return std::find(t.begin(), t.end(), tag) != t.end();
}

void FlagComplex::add_tag(VertexIndex v, std::string tag) {
  if (!has_tag(v, tag)) tags_.at(v).push_back(std::move(tag));
}

std::size_t FlagComplex::component_count() const {
  std::vector<VertexIndex> parent(size());
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](VertexIndex v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  std::size_t components = size();
  for (const Edge& e : edges()) {
    VertexIndex a = root(e.u), b = root(e.v);
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  return components;
}

FlagComplex flag_from_adjacency(std::vector<std::string> vertices,
                                std::span<const std::pair<std::string, std::string>> pairs) {
  return FlagComplex::from_adjacency(std::move(vertices), pairs);
}

std::vector<VertexIndex> link_vertices(const FlagComplex& c, std::span<const VertexIndex> s) {
  if (!c.is_clique(s)) throw std::invalid_argument("link_of: vertex set is not a clique");
  Bitset common = c.make_bitset();
  common.set();
  for (VertexIndex v : s) common &= c.neighbor_set(v);
  std::vector<VertexIndex> out;
  for (std::size_t v = common.find_first(); v != Bitset::npos; v = common.find_next(v)) out.push_back(v);
  return out;
}

FlagComplex link_of(const FlagComplex& c, std::span<const VertexIndex> s) {
  return c.induced(link_vertices(c, s));
}

FlagComplex join_of(const FlagComplex& a, const FlagComplex& b) {
  std::vector<std::string> ids = a.vertices();
  ids.insert(ids.end(), b.vertices().begin(), b.vertices().end());
  std::vector<std::string> sorted = ids;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("join_of: vertex id collision");
  }
  auto pos = [&](const std::string& id) {
    return static_cast<VertexIndex>(std::lower_bound(sorted.begin(), sorted.end(), id) - sorted.begin());
  };
  std::vector<VertexIndex> ia(a.size()), ib(b.size());
  for (VertexIndex v = 0; v < a.size(); ++v) ia[v] = pos(a.id(v));
  for (VertexIndex v = 0; v < b.size(); ++v) ib[v] = pos(b.id(v));
  std::vector<Edge> edges;
  for (const Edge& e : a.edges()) edges.push_back({ia[e.u], ia[e.v]});
  for (const Edge& e : b.edges()) edges.push_back({ib[e.u], ib[e.v]});
  for (VertexIndex u : ia) {
    for (VertexIndex v : ib) edges.push_back({u, v});
  }
  FlagComplex out = FlagComplex::from_sorted_indices(std::move(sorted), edges);
  for (VertexIndex v = 0; v < a.size(); ++v) {
    for (const auto& t : a.tags(v)) out.add_tag(ia[v], t);
  }
  for (VertexIndex v = 0; v < b.size(); ++v) {
    for (const auto& t : b.tags(v)) out.add_tag(ib[v], t);
  }
  return out;
}

std::vector<Simplex> maximal_cliques(const FlagComplex& c) {
  std::vector<Simplex> out;
  if (c.empty()) return out;
  Simplex r;
  Bitset p = c.make_bitset();
  p.set();
  bron_kerbosch(c, r, p, c.make_bitset(), out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<Simplex>> cliques_by_size(const FlagComplex& c, std::size_t max_size) {
  std::vector<std::vector<Simplex>> out(max_size);
  if (max_size == 0) return out;
  Simplex current;
  for (VertexIndex v = 0; v < c.size(); ++v) {
    current.assign(1, v);
    extend_cliques(c, current, c.neighbor_set(v), max_size, out);
  }
  for (auto& group : out) std::sort(group.begin(), group.end());
  return out;
}

FVector f_vector(const FlagComplex& c, int max_dim) {
  if (max_dim < 0) throw std::invalid_argument("f_vector: max_dim must be >= 0");
  FVector f;
  auto groups = cliques_by_size(c, static_cast<std::size_t>(max_dim) + 1);
  for (std::size_t k = 0; k < groups.size(); ++k) {
    f.counts.push_back(groups[k].size());
    long long n = static_cast<long long>(groups[k].size());
    f.euler += (k % 2 == 0) ? n : -n;
  }
  return f;
}

}  // namespace spherecx
