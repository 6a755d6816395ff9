"""Sphere complexes of genus-zero manifolds and related finite checks.

Complexes, dual graphs and edge maps are plain dicts in the same JSON
formats the command-line tool reads and writes.
"""

import json

from . import _core

__all__ = [
    "automorphism_order",
    "caterpillar_window",
    "caterpillar_witness",
    "catalog",
    "catalog_names",
    "classify_link",
    "dual_tree",
    "f_vector",
    "flip_graph",
    "genus_zero_complex",
    "good_pairs",
    "homology",
    "is_edge_isomorphism",
    "lift",
    "pants_decompositions",
    "run_cli",
    "search_embedding",
    "verify_rigidity",
]


def _dump(doc):
    return doc if isinstance(doc, str) else json.dumps(doc)


def genus_zero_complex(s):
    return json.loads(_core.genus_zero_complex(s))


def caterpillar_window(m):
    return json.loads(_core.caterpillar_window(m))


def catalog(name):
    return json.loads(_core.catalog(name))


def catalog_names():
    return list(_core.catalog_names())


def f_vector(complex_doc, max_dim):
    return list(_core.f_vector(_dump(complex_doc), max_dim))


def homology(complex_doc, max_dim=-1, seed=1):
    return json.loads(_core.homology(_dump(complex_doc), max_dim, seed))


def pants_decompositions(s):
    return [list(p) for p in _core.pants_decompositions(s)]


def flip_graph(s):
    return json.loads(_core.flip_graph(s))


def dual_tree(s, index=0):
    return json.loads(_core.dual_tree(s, index))


def classify_link(dual_doc, edges):
    return [tuple(f) for f in _core.classify_link(_dump(dual_doc), list(edges))]


def is_edge_isomorphism(edge_map):
    return _core.is_edge_isomorphism(_dump(edge_map))


def lift(edge_map):
    return json.loads(_core.lift(_dump(edge_map)))


def automorphism_order(complex_doc):
    return int(_core.automorphism_order(_dump(complex_doc)))


def verify_rigidity(complex_doc, vertices=(), mode="plain"):
    return json.loads(_core.verify_rigidity(_dump(complex_doc), list(vertices), mode))


def search_embedding(source, target, exhaustive=False):
    return json.loads(_core.search_embedding(_dump(source), _dump(target), exhaustive))


def caterpillar_witness(m, vertices, allow_boundary=False):
    return json.loads(_core.caterpillar_witness(m, list(vertices), allow_boundary))


def good_pairs(n, s, pair=1):
    return [((a, b), (c, d)) for a, b, c, d in _core.good_pairs(n, s, pair)]


def run_cli(args):
    """Returns (exit code, stdout text, stderr text)."""
    return tuple(_core.run_cli([str(a) for a in args]))
