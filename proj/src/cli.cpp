#include "spherecx/cli.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <numeric>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "spherecx/complex_io.hpp"
#include "spherecx/dual_graph.hpp"
#include "spherecx/genus_zero.hpp"
#include "spherecx/homology.hpp"
#include "spherecx/pants.hpp"
#include "spherecx/rigidity.hpp"
#include "spherecx/search.hpp"
#include "spherecx/whitney.hpp"

namespace spherecx {

namespace {

using Json = nlohmann::json;
namespace fs = std::filesystem;

// Bad input files or arguments detected after parsing; exit status 2.
struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Run {
  std::vector<std::string> args;
  std::string digest_material;
  Json results = Json::object();
  Json checks = Json::array();
  std::string dot;

  void check(const std::string& name, bool pass, Json value = nullptr) {
    Json c{{"name", name}, {"pass", pass}};
    if (!value.is_null()) c["value"] = std::move(value);
    checks.push_back(std::move(c));
  }
  bool passed() const {
    for (const auto& c : checks) {
      if (!c["pass"].get<bool>()) return false;
    }
    return true;
  }
};

std::string hex64(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << v;
  return os.str();
}

std::string read_file(Run& run, const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  run.digest_material += os.str();
  run.digest_material.push_back('\0');
  return os.str();
}

Json read_json(Run& run, const std::string& path) {
  const std::string text = read_file(run, path);
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ';')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// "petersen", "genus-zero:6", "caterpillar:10", or a complex JSON file.
FlagComplex load_complex(Run& run, const std::string& text) {
  auto number_after = [&](std::string_view prefix) {
    try {
      return std::stoi(text.substr(prefix.size()));
    } catch (const std::exception&) {
      throw InputError("bad number in complex name " + text);
    }
  };
  if (text.rfind("genus-zero:", 0) == 0) return build_genus_zero_complex(number_after("genus-zero:"));
  if (text.rfind("caterpillar:", 0) == 0) return build_caterpillar_window(number_after("caterpillar:"));
  const auto names = catalog_names();
  if (std::find(names.begin(), names.end(), text) != names.end()) return catalog(text);
  return complex_from_json(read_json(run, text));
}

struct Source {
  std::string text;
  int genus_zero = 0;

  void attach(CLI::App* sub) {
    sub->add_option("--complex", text, "catalog name, genus-zero:S, caterpillar:M, or a complex JSON file");
    sub->add_option("--genus-zero", genus_zero, "shorthand for --complex genus-zero:S");
  }
  FlagComplex load(Run& run) const {
    if (!text.empty() && genus_zero) throw InputError("give either --complex or --genus-zero, not both");
    if (genus_zero) return build_genus_zero_complex(genus_zero);
    if (text.empty()) throw InputError("a complex is required (--complex or --genus-zero)");
    return load_complex(run, text);
  }
  std::string label() const { return genus_zero ? "genus-zero:" + std::to_string(genus_zero) : text; }
};

Simplex vertex_list(const FlagComplex& c, const std::string& ids) {
  Simplex out;
  for (const std::string& id : split_list(ids)) {
    auto v = c.find(id);
    if (!v) throw InputError("unknown vertex " + id);
    out.push_back(*v);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

VertexIndex single_vertex(const FlagComplex& c, const std::string& id) {
  auto v = c.find(id);
  if (!v) throw InputError("unknown vertex " + id);
  return *v;
}

Json id_list(const FlagComplex& c, std::span<const VertexIndex> vs) {
  Json out = Json::array();
  for (VertexIndex v : vs) out.push_back(c.id(v));
  return out;
}

bool is_genus_zero(const FlagComplex& c) {
  return !c.empty() && std::all_of(c.vertices().begin(), c.vertices().end(),
                                   [](const std::string& id) { return SpherePartition::is_partition_id(id); });
}

int genus_zero_s(const FlagComplex& c) { return SpherePartition::parse(c.id(0)).boundary_count(); }

Json fvector_json(const FVector& f) {
  return Json{{"counts", f.counts}, {"euler", f.euler}};
}

// --- complex ------------------------------------------------------------

void complex_build(Run& run, const Source& src, const std::string& emit) {
  const FlagComplex c = src.load(run);
  const FVector f = f_vector(c, std::max(c.dimension(), 0));
  run.results["vertices"] = c.size();
  run.results["edges"] = c.edge_count();
  run.results["dimension"] = c.dimension();
  run.results["f_vector"] = fvector_json(f);
  if (is_genus_zero(c)) {
    const int s = genus_zero_s(c);
    const std::size_t expected = (std::size_t{1} << (s - 1)) - static_cast<std::size_t>(s) - 1;
    run.check("vertex_count_formula", c.size() == expected, expected);
  }
  if (!emit.empty()) {
    std::ofstream o(emit);
    if (!o) throw InputError("cannot write " + emit);
    o << complex_to_json(c, Json{{"source", src.label()}}).dump(2) << '\n';
  }
  run.dot = complex_to_dot(c);
}

void complex_stats(Run& run, const Source& src) {
  const FlagComplex c = src.load(run);
  const FVector f = f_vector(c, std::max(c.dimension(), 0));
  std::size_t min_deg = c.empty() ? 0 : c.size(), max_deg = 0;
  for (VertexIndex v = 0; v < c.size(); ++v) {
    min_deg = std::min(min_deg, c.degree(v));
    max_deg = std::max(max_deg, c.degree(v));
  }
  run.results["vertices"] = c.size();
  run.results["edges"] = c.edge_count();
  run.results["dimension"] = c.dimension();
  run.results["f_vector"] = fvector_json(f);
  run.results["components"] = c.component_count();
  run.results["maximal_cliques"] = maximal_cliques(c).size();
  run.results["forest"] = c.is_forest();
  run.results["degree"] = Json{{"min", min_deg}, {"max", max_deg}};
  run.dot = complex_to_dot(c);
}

void complex_homology(Run& run, const Source& src, int max_dim, std::uint64_t seed) {
  const FlagComplex c = src.load(run);
  if (max_dim < 0) max_dim = std::max(c.dimension(), 0);
  const HomologyReport h = betti_numbers(c, max_dim, seed);
  run.results = homology_to_json(h);
  run.check("modular_rank_agreement", h.modular_ranks_agree, h.check_prime);
  if (h.full) {
    run.check("euler_consistency", h.euler_from_betti == h.euler_from_counts, h.euler_from_betti);
  }
}

// --- pants ----------------------------------------------------------------

FlagComplex pants_ambient(Run& run, const Source& src, int s) {
  if (s) return build_genus_zero_complex(s);
  return src.load(run);
}

PantsDecomposition pants_from_args(const FlagComplex& ambient, const std::string& ids, int index) {
  if (!ids.empty()) {
    try {
      return make_pants(ambient, vertex_list(ambient, ids));
    } catch (const InputError&) {
      throw;
    } catch (const std::invalid_argument& e) {
      throw InputError(e.what());
    }
  }
  const auto all = enumerate_pants(ambient);
  if (index < 0 || static_cast<std::size_t>(index) >= all.size()) throw InputError("pants index out of range");
  return all[static_cast<std::size_t>(index)];
}

void pants_enumerate(Run& run, const FlagComplex& ambient) {
  const auto all = enumerate_pants(ambient);
  Json list = Json::array();
  bool maximal = true;
  std::set<std::size_t> sizes;
  for (const auto& p : all) {
    list.push_back(id_list(ambient, p.members()));
    maximal = maximal && is_maximal_system(ambient, p.system);
    sizes.insert(p.members().size());
  }
  run.results["count"] = all.size();
  run.results["sizes"] = sizes;
  run.results["decompositions"] = list;
  run.check("all_maximal", maximal);
  if (is_genus_zero(ambient)) {
    const std::size_t expected = static_cast<std::size_t>(genus_zero_s(ambient) - 3);
    run.check("uniform_size", sizes.size() == 1 && *sizes.begin() == expected, expected);
  }
}

void pants_flip_graph_cmd(Run& run, const FlagComplex& ambient, bool check_connected) {
  const FlipGraph g = pants_flip_graph(ambient);
  std::map<std::size_t, std::size_t> partner_histogram;
  bool any_self_adjacent = false;
  for (const auto& p : g.nodes) {
    for (VertexIndex a : p.members()) {
      try {
        ++partner_histogram[flip_partners(ambient, p, a).size()];
      } catch (const std::invalid_argument&) {
        any_self_adjacent = true;
        ++partner_histogram[0];
      }
    }
  }
  Json hist = Json::object();
  for (const auto& [k, v] : partner_histogram) hist[std::to_string(k)] = v;
  run.results["nodes"] = g.nodes.size();
  run.results["edges"] = g.edges.size();
  run.results["connected"] = g.connected;
  run.results["diameter"] = g.connected ? Json(g.diameter) : Json(nullptr);
  run.results["flip_partner_counts"] = hist;
  run.results["self_adjacent_spheres"] = any_self_adjacent;
  if (check_connected) run.check("connected", g.connected);
  if (is_genus_zero(ambient)) {
    run.check("two_flip_partners", partner_histogram.size() == 1 && partner_histogram.count(2) == 1);
  }
  std::ostringstream dot;
  dot << "graph flips {\n";
  for (std::size_t i = 0; i < g.nodes.size(); ++i) dot << "  n" << i << ";\n";
  for (const auto& [a, b] : g.edges) dot << "  n" << a << " -- n" << b << ";\n";
  dot << "}\n";
  run.dot = dot.str();
}

void pants_dual(Run& run, const FlagComplex& ambient, const std::string& ids, int index) {
  if (!is_genus_zero(ambient)) throw InputError("pants dual needs a genus-zero complex");
  const PantsDecomposition p = pants_from_args(ambient, ids, index);
  const DualMultigraph d = dual_of_pants(ambient, p);
  run.results["pants"] = id_list(ambient, p.members());
  run.results["dual"] = dual_to_json(d);
  run.results["signature"] = to_string(signature_of_dual(d));
  run.check("tree", d.betti_number() == 0 && d.component_count() == 1);
  run.check("pants_count", d.pants_count() == static_cast<std::size_t>(genus_zero_s(ambient) - 2));
  run.dot = dual_to_dot(d);
}

// --- dual -----------------------------------------------------------------

void dual_classify(Run& run, const std::string& input, const std::string& edges) {
  DualMultigraph d;
  try {
    d = dual_from_json(read_json(run, input));
  } catch (const InputError&) {
    throw;
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
  std::vector<std::size_t> eta;
  for (const std::string& token : split_list(edges)) {
    bool found = false;
    for (std::size_t i = 0; i < d.bonds().size(); ++i) {
      if (d.bonds()[i].label == token) {
        eta.push_back(i);
        found = true;
      }
    }
    if (found) continue;
    if (!token.empty() && std::all_of(token.begin(), token.end(), [](char ch) { return std::isdigit(ch); })) {
      std::size_t i = std::stoul(token);
      if (i >= d.bonds().size()) throw InputError("bond index out of range: " + token);
      eta.push_back(i);
    } else {
      throw InputError("unknown bond " + token);
    }
  }
  std::sort(eta.begin(), eta.end());
  eta.erase(std::unique(eta.begin(), eta.end()), eta.end());
  const JoinDecomposition j = classify_link(d, eta);
  Json factors = Json::array();
  long total = 0;
  for (const auto& f : j.factors) {
    factors.push_back({f.n, f.s});
    total += 3L * f.n + f.s - 3;
  }
  run.results["edges"] = eta;
  run.results["factors"] = factors;
  run.results["join"] = to_string(j);
  run.check("complexity_sum", total == static_cast<long>(eta.size()), total);
  run.dot = dual_to_dot(d);
}

// --- whitney --------------------------------------------------------------

EdgeBijection load_edge_map(Run& run, const std::string& input) {
  try {
    return edge_map_from_json(read_json(run, input));
  } catch (const InputError&) {
    throw;
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
}

Json triple_json(const EdgeBijection& psi, const std::array<std::size_t, 3>& eta) {
  Json out = Json::array();
  for (std::size_t e : eta) out.push_back(psi.source.edges()[e].id);
  return out;
}

void whitney_check(Run& run, const std::string& input) {
  const EdgeBijection psi = load_edge_map(run, input);
  const bool iso = is_edge_isomorphism(psi);
  run.results["edge_isomorphism"] = iso;
  run.results["k3_k13_pair"] = nullptr;
  if (iso) {
    if (auto eta = find_k3_k13_pair(psi)) run.results["k3_k13_pair"] = triple_json(psi, *eta);
  }
  run.check("edge_isomorphism", iso);
}

void whitney_lift(Run& run, const std::string& input, const std::string& expect) {
  const EdgeBijection psi = load_edge_map(run, input);
  if (!psi.source.is_connected()) throw InputError("source graph is disconnected");
  if (!is_edge_isomorphism(psi)) {
    run.results["verdict"] = nullptr;
    run.check("edge_isomorphism", false);
    return;
  }
  const LiftResult r = lift_edge_isomorphism(psi);
  run.results["verdict"] = to_string(r.verdict);
  run.results["vertex_map"] = nullptr;
  run.results["obstruction"] = nullptr;
  if (r.verdict == LiftVerdict::lifted) {
    Json map = Json::object();
    for (VertexIndex v = 0; v < r.vertex_map.size(); ++v) {
      map[psi.source.vertices()[v]] = psi.target.vertices()[r.vertex_map[v]];
    }
    run.results["vertex_map"] = map;
    run.check("lift_induces_edge_map", induces(psi, r.vertex_map));
  }
  if (r.obstruction) run.results["obstruction"] = triple_json(psi, *r.obstruction);
  if (!expect.empty()) run.check("expected_verdict", to_string(r.verdict) == expect, expect);
}

// --- rigidity -------------------------------------------------------------

Json map_json(const FlagComplex& c, const VertexMap& m) {
  Json out = Json::object();
  for (VertexIndex v = 0; v < c.size(); ++v) out[c.id(v)] = c.id(m(v));
  return out;
}

void rigidity_aut(Run& run, const Source& src, bool with_labels) {
  const FlagComplex c = src.load(run);
  const AutomorphismGroup g = automorphism_group(c);
  Json gens = Json::array();
  for (const auto& m : g.generators) gens.push_back(map_json(c, m));
  run.results["order"] = g.order.str();
  run.results["generators"] = gens;
  run.results["elements_listed"] = g.elements_listed;
  if (with_labels) {
    if (!is_genus_zero(c)) throw InputError("--label-action needs a genus-zero complex");
    const int s = genus_zero_s(c);
    auto images = label_action(s);
    const std::size_t permutations = images.size();
    std::sort(images.begin(), images.end());
    images.erase(std::unique(images.begin(), images.end()), images.end());
    run.results["label_action"] = Json{{"permutations", permutations}, {"distinct_images", images.size()}};
    run.check("label_action_faithful", images.size() == permutations);
    run.check("label_action_surjective", g.elements_listed && images == g.elements);
  }
}

Simplex subcomplex_from_args(Run& run, const FlagComplex& ambient, const std::string& vertices,
                             const std::string& file) {
  if (!vertices.empty() && !file.empty()) throw InputError("give either --vertices or --subcomplex");
  if (!file.empty()) {
    try {
      return embed_subcomplex(ambient, complex_from_json(read_json(run, file)));
    } catch (const InputError&) {
      throw;
    } catch (const std::invalid_argument& e) {
      throw InputError(e.what());
    }
  }
  if (!vertices.empty()) return vertex_list(ambient, vertices);
  Simplex all(ambient.size());
  std::iota(all.begin(), all.end(), VertexIndex{0});
  return all;
}

void rigidity_verify(Run& run, const Source& src, const std::string& vertices, const std::string& file,
                     const std::string& mode) {
  const FlagComplex ambient = src.load(run);
  const Simplex x = subcomplex_from_args(run, ambient, vertices, file);
  RigidityMode m;
  if (mode == "plain") {
    m = RigidityMode::plain;
  } else if (mode == "over-maximal-maps") {
    m = RigidityMode::over_maximal_maps;
  } else {
    throw InputError("unknown mode " + mode);
  }
  const RigidityCertificate cert = verify_rigidity(ambient, x, m);
  run.results["certificate"] = certificate_to_json(ambient, cert);
  run.check("all_extend_uniquely", cert.all_extend, cert.maps.size());
}

void rigidity_split(Run& run, const Source& src, const std::string& sphere, const std::string& pants,
                    const std::string& vertices) {
  const FlagComplex ambient = src.load(run);
  const VertexIndex a = single_vertex(ambient, sphere);
  if (!pants.empty()) {
    const PantsDecomposition p = pants_from_args(ambient, pants, -1);
    if (!p.contains(a)) throw InputError("sphere is not in the pants decomposition");
    const auto split = find_split_spheres(ambient, p, a);
    run.results["split_spheres"] = id_list(ambient, split);
    bool ok = true;
    for (VertexIndex b : split) {
      for (VertexIndex q : p.members()) ok = ok && (q == a ? !ambient.adjacent(a, b) : ambient.adjacent(q, b));
    }
    run.check("definition_recheck", ok);
    return;
  }
  const Simplex x = subcomplex_from_args(run, ambient, vertices, "");
  const auto pairs = find_split_pairs(ambient, x, a);
  Json list = Json::array();
  bool ok = true;
  for (const auto& [b1, b2] : pairs) {
    list.push_back({ambient.id(b1), ambient.id(b2)});
    ok = ok && b1 != b2 && ambient.adjacent(b1, b2);
  }
  run.results["split_pairs"] = list;
  run.check("pairs_disjoint_and_distinct", ok, pairs.size());
}

void rigidity_xsigma(Run& run, const Source& src, const std::string& pants) {
  const FlagComplex ambient = src.load(run);
  const PantsDecomposition sigma = pants_from_args(ambient, pants, -1);
  const Simplex x = build_x_sigma(ambient, sigma);
  run.results["vertices"] = id_list(ambient, x);
  run.results["count"] = x.size();
  run.check("contains_sigma", std::includes(x.begin(), x.end(), sigma.members().begin(), sigma.members().end()));
  run.dot = complex_to_dot(ambient.induced(x), "x_sigma");
}

void rigidity_detect(Run& run, const Source& src, const std::string& vertices, const std::string& from,
                     const std::string& to) {
  const FlagComplex ambient = src.load(run);
  const Simplex x = subcomplex_from_args(run, ambient, vertices, "");
  const VertexIndex a = single_vertex(ambient, from);
  const VertexIndex a2 = single_vertex(ambient, to);
  auto w = detect_x_detectable(ambient, x, a, a2);
  run.results["witness"] = nullptr;
  if (w) {
    run.results["witness"] = {id_list(ambient, w->first.members()), id_list(ambient, w->second.members())};
    run.check("pair_intersects", !ambient.adjacent(a, a2));
  }
}

void rigidity_classes(Run& run, const Source& src, const std::string& system) {
  const FlagComplex ambient = src.load(run);
  if (!is_genus_zero(ambient)) throw InputError("link classes need a genus-zero complex");
  Simplex members = vertex_list(ambient, system);
  if (!ambient.is_clique(members)) throw InputError("sphere system is not pairwise disjoint");
  const auto classes = link_equivalence_classes(ambient, SphereSystem{members});
  Json list = Json::array();
  std::set<std::size_t> regions;
  for (const auto& cls : classes) {
    list.push_back({{"members", id_list(ambient, cls.members)},
                    {"region", cls.region},
                    {"signature", to_string(cls.signature)}});
    regions.insert(cls.region);
  }
  std::vector<SpherePartition> parts;
  const auto all = partitions_of(ambient);
  for (VertexIndex v : members) parts.push_back(all[v]);
  std::size_t non_pants = 0;
  for (const auto& r : laminar_regions(genus_zero_s(ambient), parts)) non_pants += r.is_pants() ? 0 : 1;
  run.results["classes"] = list;
  run.results["non_pants_regions"] = non_pants;
  run.check("classes_match_regions", regions.size() == classes.size() && classes.size() == non_pants);
}

void rigidity_witness(Run& run, int window_m, const std::string& vertices, bool allow_boundary) {
  const FlagComplex window = build_caterpillar_window(window_m);
  const Simplex x = vertex_list(window, vertices);
  CaterpillarWitness w;
  try {
    w = caterpillar_witness(window, x, allow_boundary);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  run.results["witness"] = witness_to_json(w);
  run.check("witness_valid", validate_caterpillar_witness(w));
}

// --- nonembed / census / catalog -----------------------------------------

void nonembed(Run& run, const std::string& source, const std::string& target, bool exhaustive,
              const std::string& expect) {
  const FlagComplex a = load_complex(run, source);
  const FlagComplex b = load_complex(run, target);
  EmbeddingOptions opts;
  if (exhaustive) opts = EmbeddingOptions{false, false};
  const SearchOutcome r = search_embedding(a, b, opts);
  run.results["embeds"] = r.map.has_value();
  run.results["decided_by"] = to_string(r.decided_by);
  run.results["nodes"] = r.nodes;
  run.results["map"] = r.map ? vertex_map_to_json(a, b, *r.map) : Json(nullptr);
  if (r.map) run.check("map_is_injective_simplicial", is_injective(*r.map) && is_simplicial(a, b, *r.map));
  if (!expect.empty()) {
    if (expect != "none" && expect != "embedding") throw InputError("--expect takes none or embedding");
    run.check("expected_verdict", r.map.has_value() == (expect == "embedding"), expect);
  }
}

Json census_row(int n, int s, int pair, bool list_pairs) {
  const auto pairs = good_pair_census(make_cut_labeling(n, s), pair);
  Json row{{"n", n}, {"s", s}, {"count", pairs.size()}, {"nonempty", !pairs.empty()}};
  if (list_pairs) {
    Json list = Json::array();
    for (const auto& p : pairs) {
      list.push_back({{p.first.with_minus, p.first.with_plus}, {p.second.with_minus, p.second.with_plus}});
    }
    row["pairs"] = list;
  }
  return row;
}

void census(Run& run, int n, int s, int pair, bool sweep) {
  if (sweep) {
    Json rows = Json::array();
    bool ok = true;
    for (int nn = 1; nn <= 3; ++nn) {
      for (int ss = 0; ss <= 8; ++ss) {
        Json row = census_row(nn, ss, 1, false);
        ok = ok && row["nonempty"].get<bool>() == (2 * nn + ss >= 6);
        rows.push_back(std::move(row));
      }
    }
    run.results["rows"] = rows;
    run.check("threshold", ok);
    return;
  }
  if (n < 1 || s < 0 || pair < 1 || pair > n) throw InputError("census needs n >= 1, s >= 0, 1 <= pair <= n");
  Json row = census_row(n, s, pair, true);
  run.results = row;
  run.check("threshold", row["nonempty"].get<bool>() == (2 * n + s >= 6));
}

void catalog_cmd(Run& run) {
  Json list = Json::array();
  for (const std::string& name : catalog_names()) {
    const FlagComplex c = catalog(name);
    list.push_back({{"name", name}, {"vertices", c.size()}, {"edges", c.edge_count()}});
  }
  run.results["complexes"] = list;
}

fs::path resolve_output(const std::string& path) {
  fs::path p(path);
  if (p.is_relative()) {
    if (const char* dir = std::getenv("SPHERECX_OUTPUT_DIR"); dir && *dir) return fs::path(dir) / p;
  }
  return p;
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream o(path);
  if (!o) throw InputError("cannot write " + path.string());
  o << text;
}

void print_summary(std::ostream& out, const Json& report) {
  out << "command: " << report["command"].get<std::string>() << '\n';
  for (const auto& [key, value] : report["results"].items()) {
    if (value.is_primitive()) out << key << ": " << value.dump() << '\n';
  }
  for (const auto& c : report["checks"]) {
    out << "check " << c["name"].get<std::string>() << ": " << (c["pass"].get<bool>() ? "PASS" : "FAIL") << '\n';
  }
  out << "status: " << report["status"].get<std::string>() << '\n';
}

}  // namespace

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sphere complex verification toolkit", "spherecx"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string out_path, dot_path;
  bool as_json = false;
  std::uint64_t seed = 1;
  app.add_option("--out", out_path, "write the JSON report to this file");
  app.add_option("--dot", dot_path, "write a DOT drawing to this file");
  app.add_flag("--json", as_json, "print the JSON report instead of a summary");
  app.add_option("--seed", seed, "seed for randomized steps");

  Run run;
  run.args = args;
  std::function<void()> action;
  auto bind = [&](CLI::App* sub, std::function<void()> f) {
    sub->callback([&action, f] { action = f; });
  };

  // complex
  auto* complex_cmd = app.add_subcommand("complex", "build and inspect flag complexes");
  complex_cmd->require_subcommand(1);
  Source build_src, stats_src, hom_src;
  std::string emit;
  int max_dim = -1;
  auto* c_build = complex_cmd->add_subcommand("build", "build a complex and report its f-vector");
  build_src.attach(c_build);
  c_build->add_option("--emit", emit, "write the complex JSON to this file");
  bind(c_build, [&] { complex_build(run, build_src, emit.empty() ? emit : resolve_output(emit).string()); });
  auto* c_stats = complex_cmd->add_subcommand("stats", "summary statistics");
  stats_src.attach(c_stats);
  bind(c_stats, [&] { complex_stats(run, stats_src); });
  auto* c_hom = complex_cmd->add_subcommand("homology", "integral homology");
  hom_src.attach(c_hom);
  c_hom->add_option("--max-dim", max_dim, "top dimension (default: dimension of the complex)");
  bind(c_hom, [&] { complex_homology(run, hom_src, max_dim, seed); });

  // pants
  auto* pants_cmd = app.add_subcommand("pants", "pants decompositions");
  pants_cmd->require_subcommand(1);
  Source pants_src;
  int pants_s = 0, pants_index = 0;
  bool check_connected = false;
  std::string pants_ids;
  auto* p_enum = pants_cmd->add_subcommand("enumerate", "list all pants decompositions");
  pants_src.attach(p_enum);
  p_enum->add_option("--s", pants_s, "boundary count of the genus-zero surface");
  bind(p_enum, [&] { pants_enumerate(run, pants_ambient(run, pants_src, pants_s)); });
  auto* p_flip = pants_cmd->add_subcommand("flip-graph", "flip graph of pants decompositions");
  pants_src.attach(p_flip);
  p_flip->add_option("--s", pants_s, "boundary count of the genus-zero surface");
  p_flip->add_flag("--check-connected", check_connected, "fail unless the flip graph is connected");
  bind(p_flip, [&] { pants_flip_graph_cmd(run, pants_ambient(run, pants_src, pants_s), check_connected); });
  auto* p_dual = pants_cmd->add_subcommand("dual", "dual tree of a pants decomposition");
  pants_src.attach(p_dual);
  p_dual->add_option("--s", pants_s, "boundary count of the genus-zero surface");
  p_dual->add_option("--pants", pants_ids, "sphere ids separated by ';'");
  p_dual->add_option("--index", pants_index, "index into the enumeration (default 0)");
  bind(p_dual, [&] { pants_dual(run, pants_ambient(run, pants_src, pants_s), pants_ids, pants_index); });

  // dual
  auto* dual_cmd = app.add_subcommand("dual", "dual multigraphs");
  dual_cmd->require_subcommand(1);
  std::string dual_input, dual_edges;
  auto* d_class = dual_cmd->add_subcommand("classify", "classify the link of an edge set");
  d_class->add_option("--input", dual_input, "dual multigraph JSON")->required();
  d_class->add_option("--edges", dual_edges, "bond labels or indices separated by ';'")->required();
  bind(d_class, [&] { dual_classify(run, dual_input, dual_edges); });

  // whitney
  auto* wh_cmd = app.add_subcommand("whitney", "edge isomorphisms of multigraphs");
  wh_cmd->require_subcommand(1);
  std::string wh_input, wh_expect;
  auto* w_check = wh_cmd->add_subcommand("check", "check an edge bijection");
  w_check->add_option("--input", wh_input, "edge map JSON")->required();
  bind(w_check, [&] { whitney_check(run, wh_input); });
  auto* w_lift = wh_cmd->add_subcommand("lift", "lift an edge isomorphism to a vertex isomorphism");
  w_lift->add_option("--input", wh_input, "edge map JSON")->required();
  w_lift->add_option("--expect", wh_expect, "lifted, obstructed or ambiguous-order-2");
  bind(w_lift, [&] { whitney_lift(run, wh_input, wh_expect); });

  // rigidity
  auto* rig_cmd = app.add_subcommand("rigidity", "automorphisms and rigidity");
  rig_cmd->require_subcommand(1);
  Source rig_src;
  bool label_flag = false, allow_boundary = false;
  std::string rig_vertices, rig_subcomplex, rig_mode = "plain", rig_sphere, rig_pants, rig_from, rig_to;
  int window_m = 6;
  auto* r_aut = rig_cmd->add_subcommand("aut", "automorphism group");
  rig_src.attach(r_aut);
  r_aut->add_flag("--label-action", label_flag, "compare with the boundary-label permutation action");
  bind(r_aut, [&] { rigidity_aut(run, rig_src, label_flag); });
  auto* r_verify = rig_cmd->add_subcommand("verify", "certify that every local map extends uniquely");
  rig_src.attach(r_verify);
  r_verify->add_option("--vertices", rig_vertices, "subcomplex vertex ids separated by ';' (default: all)");
  r_verify->add_option("--subcomplex", rig_subcomplex, "subcomplex JSON");
  r_verify->add_option("--mode", rig_mode, "plain or over-maximal-maps");
  bind(r_verify, [&] { rigidity_verify(run, rig_src, rig_vertices, rig_subcomplex, rig_mode); });
  auto* r_split = rig_cmd->add_subcommand("split", "split spheres (with --pants) or split pairs");
  rig_src.attach(r_split);
  r_split->add_option("--sphere", rig_sphere, "the sphere a")->required();
  r_split->add_option("--pants", rig_pants, "pants decomposition ids separated by ';'");
  r_split->add_option("--vertices", rig_vertices, "subcomplex for split pairs (default: all)");
  bind(r_split, [&] { rigidity_split(run, rig_src, rig_sphere, rig_pants, rig_vertices); });
  auto* r_xs = rig_cmd->add_subcommand("xsigma", "sigma together with the links of its faces");
  rig_src.attach(r_xs);
  r_xs->add_option("--pants", rig_pants, "maximal sphere system ids separated by ';'")->required();
  bind(r_xs, [&] { rigidity_xsigma(run, rig_src, rig_pants); });
  auto* r_detect = rig_cmd->add_subcommand("detect", "detectable intersection inside a subcomplex");
  rig_src.attach(r_detect);
  r_detect->add_option("--vertices", rig_vertices, "subcomplex ids separated by ';' (default: all)");
  r_detect->add_option("--from", rig_from, "sphere a")->required();
  r_detect->add_option("--to", rig_to, "sphere a'")->required();
  bind(r_detect, [&] { rigidity_detect(run, rig_src, rig_vertices, rig_from, rig_to); });
  auto* r_classes = rig_cmd->add_subcommand("classes", "equivalence classes on the link of a sphere system");
  rig_src.attach(r_classes);
  r_classes->add_option("--system", rig_vertices, "sphere ids separated by ';'")->required();
  bind(r_classes, [&] { rigidity_classes(run, rig_src, rig_vertices); });
  auto* r_witness = rig_cmd->add_subcommand("witness", "non-extendable local map into the caterpillar");
  r_witness->add_option("--window", window_m, "window half-width m");
  r_witness->add_option("--vertices", rig_vertices, "ids of X separated by ';'")->required();
  r_witness->add_flag("--allow-boundary", allow_boundary, "permit window-boundary vertices in X");
  bind(r_witness, [&] { rigidity_witness(run, window_m, rig_vertices, allow_boundary); });

  // nonembed
  std::string ne_source, ne_target, ne_expect;
  bool exhaustive = false;
  auto* ne = app.add_subcommand("nonembed", "search for an injective simplicial map");
  ne->add_option("--source", ne_source, "catalog name, genus-zero:S, caterpillar:M, or a complex JSON file")->required();
  ne->add_option("--target", ne_target, "catalog name, genus-zero:S, caterpillar:M, or a complex JSON file")->required();
  ne->add_flag("--exhaustive", exhaustive, "disable the vertex-count and acyclicity prechecks");
  ne->add_option("--expect", ne_expect, "none or embedding");
  bind(ne, [&] { nonembed(run, ne_source, ne_target, exhaustive, ne_expect); });

  // census
  auto* census_cmd = app.add_subcommand("census", "label-level censuses");
  census_cmd->require_subcommand(1);
  int cn = 1, cs = 0, cpair = 1;
  bool sweep = false;
  auto* gp = census_cmd->add_subcommand("good-pairs", "good pairs for a cut pair");
  gp->add_option("--n", cn, "number of cut pairs");
  gp->add_option("--s", cs, "number of boundary components");
  gp->add_option("--pair", cpair, "which pair A_i (1-based)");
  gp->add_flag("--sweep", sweep, "tabulate 1 <= n <= 3, 0 <= s <= 8");
  bind(gp, [&] { census(run, cn, cs, cpair, sweep); });

  // catalog
  auto* cat = app.add_subcommand("catalog", "list the reference complexes");
  bind(cat, [&] { catalog_cmd(run); });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  }
  if (!action) {
    err << "usage error: no command given\n";
    return 2;
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    action();
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return 2;
  } catch (const nlohmann::json::exception& e) {
    err << "input error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "input error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "check failure: " << e.what() << '\n';
    run.check("internal_consistency", false, e.what());
  }
  const auto elapsed =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();

  std::string command;
  for (const auto& a : args) command += (command.empty() ? "" : " ") + a;
  std::uint64_t digest = fnv1a(command);
  digest = fnv1a(run.digest_material, digest);

  Json report{{"command", command},
              {"inputs_digest", hex64(digest)},
              {"results", run.results},
              {"checks", run.checks},
              {"status", run.passed() ? "pass" : "fail"},
              {"timing_ms", elapsed}};

  try {
    std::string target = out_path;
    if (target.empty() && std::getenv("SPHERECX_OUTPUT_DIR")) {
      std::string name;
      for (const auto& a : args) {
        if (a.rfind("--", 0) == 0) break;
        name += (name.empty() ? "" : "-") + a;
      }
      target = name + ".json";
    }
    if (!target.empty()) write_text(resolve_output(target), report.dump(2) + "\n");
    if (!dot_path.empty()) {
      if (run.dot.empty()) throw InputError("this command has no DOT drawing");
      write_text(resolve_output(dot_path), run.dot);
    }
  } catch (const std::exception& e) {
    err << "output error: " << e.what() << '\n';
    return 2;
  }

  if (as_json) {
    out << report.dump(2) << '\n';
  } else {
    print_summary(out, report);
  }
  return run.passed() ? 0 : 1;
}

}  // namespace spherecx
