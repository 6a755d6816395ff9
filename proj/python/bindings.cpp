// Python bindings. Structured values cross the boundary as JSON text; the
// package wrapper turns them into Python objects.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "spherecx/cli.hpp"
#include "spherecx/complex_io.hpp"
#include "spherecx/dual_graph.hpp"
#include "spherecx/genus_zero.hpp"
#include "spherecx/homology.hpp"
#include "spherecx/pants.hpp"
#include "spherecx/rigidity.hpp"
#include "spherecx/search.hpp"
#include "spherecx/whitney.hpp"

namespace py = pybind11;
using namespace spherecx;

namespace {

FlagComplex load(const std::string& doc) { return complex_from_json(Json::parse(doc)); }

Simplex select(const FlagComplex& c, const std::vector<std::string>& ids) {
  Simplex out;
  if (ids.empty()) {
    for (VertexIndex v = 0; v < c.size(); ++v) out.push_back(v);
    return out;
  }
  for (const auto& id : ids) out.push_back(c.index(id));
  std::sort(out.begin(), out.end());
  return out;
}

std::string genus_zero(int s) { return complex_to_json(build_genus_zero_complex(s)).dump(); }
std::string caterpillar(int m) { return complex_to_json(build_caterpillar_window(m)).dump(); }
std::string named(const std::string& name) { return complex_to_json(catalog(name)).dump(); }

std::vector<std::size_t> fvector(const std::string& doc, int max_dim) { return f_vector(load(doc), max_dim).counts; }

std::string homology(const std::string& doc, int max_dim, std::uint64_t seed) {
  const FlagComplex c = load(doc);
  return homology_to_json(betti_numbers(c, max_dim < 0 ? std::max(c.dimension(), 0) : max_dim, seed)).dump();
}

std::vector<std::vector<std::string>> pants(int s) {
  const FlagComplex c = build_genus_zero_complex(s);
  std::vector<std::vector<std::string>> out;
  for (const auto& p : enumerate_pants(c)) {
    std::vector<std::string> ids;
    for (VertexIndex v : p.members()) ids.push_back(c.id(v));
    out.push_back(std::move(ids));
  }
  return out;
}

std::string flip_graph(int s) {
  const FlipGraph g = pants_flip_graph(s);
  Json edges = Json::array();
  for (auto [a, b] : g.edges) edges.push_back({a, b});
  return Json{{"nodes", g.nodes.size()},
              {"edges", edges},
              {"connected", g.connected},
              {"diameter", g.connected ? Json(g.diameter) : Json(nullptr)}}
      .dump();
}

std::string dual_tree(int s, std::size_t index) {
  const FlagComplex c = build_genus_zero_complex(s);
  const auto all = enumerate_pants(c);
  if (index >= all.size()) throw std::invalid_argument("pants decomposition index out of range");
  return dual_to_json(dual_of_pants(c, all[index])).dump();
}

std::vector<std::tuple<int, int>> classify(const std::string& dual_doc, const std::vector<std::size_t>& eta) {
  std::vector<std::tuple<int, int>> out;
  for (const auto& f : classify_link(dual_from_json(Json::parse(dual_doc)), eta).factors) out.emplace_back(f.n, f.s);
  return out;
}

std::string lift(const std::string& doc) {
  const EdgeBijection psi = edge_map_from_json(Json::parse(doc));
  const LiftResult r = lift_edge_isomorphism(psi);
  Json out{{"verdict", to_string(r.verdict)}, {"vertex_map", nullptr}, {"obstruction", nullptr}};
  if (r.verdict == LiftVerdict::lifted) {
    Json map = Json::object();
    for (VertexIndex v = 0; v < r.vertex_map.size(); ++v) {
      map[psi.source.vertices()[v]] = psi.target.vertices()[r.vertex_map[v]];
    }
    out["vertex_map"] = map;
  }
  if (r.obstruction) {
    Json ids = Json::array();
    for (std::size_t e : *r.obstruction) ids.push_back(psi.source.edges()[e].id);
    out["obstruction"] = ids;
  }
  return out.dump();
}

bool edge_isomorphism(const std::string& doc) { return is_edge_isomorphism(edge_map_from_json(Json::parse(doc))); }

std::string aut_order(const std::string& doc) { return automorphism_group(load(doc)).order.str(); }

std::string rigidity(const std::string& doc, const std::vector<std::string>& vertices, const std::string& mode) {
  const FlagComplex c = load(doc);
  RigidityMode m;
  if (mode == "plain") {
    m = RigidityMode::plain;
  } else if (mode == "over-maximal-maps") {
    m = RigidityMode::over_maximal_maps;
  } else {
    throw std::invalid_argument("unknown mode " + mode);
  }
  return certificate_to_json(c, verify_rigidity(c, select(c, vertices), m)).dump();
}

std::string embedding(const std::string& src_doc, const std::string& dst_doc, bool exhaustive) {
  const FlagComplex a = load(src_doc), b = load(dst_doc);
  EmbeddingOptions opts;
  if (exhaustive) opts = EmbeddingOptions{false, false};
  const SearchOutcome r = search_embedding(a, b, opts);
  return Json{{"embeds", r.map.has_value()},
              {"decided_by", to_string(r.decided_by)},
              {"map", r.map ? vertex_map_to_json(a, b, *r.map) : Json(nullptr)}}
      .dump();
}

std::string witness(int m, const std::vector<std::string>& vertices, bool allow_boundary) {
  const FlagComplex w = build_caterpillar_window(m);
  const CaterpillarWitness wit = caterpillar_witness(w, select(w, vertices), allow_boundary);
  Json out = witness_to_json(wit);
  out["valid"] = validate_caterpillar_witness(wit);
  return out.dump();
}

std::vector<std::tuple<std::string, std::string, std::string, std::string>> good_pairs(int n, int s, int pair) {
  std::vector<std::tuple<std::string, std::string, std::string, std::string>> out;
  for (const auto& p : good_pair_census(make_cut_labeling(n, s), pair)) {
    out.emplace_back(p.first.with_minus, p.first.with_plus, p.second.with_minus, p.second.with_plus);
  }
  return out;
}

std::tuple<int, std::string, std::string> run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Sphere complexes of genus-zero manifolds and related finite checks";
  py::register_exception<Json::exception>(m, "JsonError", PyExc_ValueError);

  m.def("genus_zero_complex", &genus_zero, py::arg("s"));
  m.def("caterpillar_window", &caterpillar, py::arg("m"));
  m.def("catalog", &named, py::arg("name"));
  m.def("catalog_names", &catalog_names);
  m.def("f_vector", &fvector, py::arg("complex"), py::arg("max_dim"));
  m.def("homology", &homology, py::arg("complex"), py::arg("max_dim") = -1, py::arg("seed") = 1);
  m.def("pants_decompositions", &pants, py::arg("s"));
  m.def("flip_graph", &flip_graph, py::arg("s"));
  m.def("dual_tree", &dual_tree, py::arg("s"), py::arg("index") = 0);
  m.def("classify_link", &classify, py::arg("dual"), py::arg("edges"));
  m.def("is_edge_isomorphism", &edge_isomorphism, py::arg("edge_map"));
  m.def("lift", &lift, py::arg("edge_map"));
  m.def("automorphism_order", &aut_order, py::arg("complex"));
  m.def("verify_rigidity", &rigidity, py::arg("complex"), py::arg("vertices") = std::vector<std::string>{},
        py::arg("mode") = "plain");
  m.def("search_embedding", &embedding, py::arg("source"), py::arg("target"), py::arg("exhaustive") = false);
  m.def("caterpillar_witness", &witness, py::arg("m"), py::arg("vertices"), py::arg("allow_boundary") = false);
  m.def("good_pairs", &good_pairs, py::arg("n"), py::arg("s"), py::arg("pair") = 1);
  m.def("run_cli", &run, py::arg("args"));
}
