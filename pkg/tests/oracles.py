"""Brute-force reference implementations used only by the tests.

None of these import the package internals; they work from the raw
involution table (``rows[c][v]``) with networkx and sympy.
"""
from itertools import permutations

import networkx as nx
from networkx.algorithms.isomorphism import GraphMatcher, categorical_node_match
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form


def colored_graph(rows, colors=None):
    n = len(rows[0])
    colors = range(len(rows)) if colors is None else colors
    g = nx.MultiGraph()
    g.add_nodes_from(range(n))
    for c in colors:
        for v, w in enumerate(rows[c]):
            if v < w:
                g.add_edge(v, w, color=c)
    return g


def residue_count(rows, colors):
    """Components of the subgraph on ``colors``, by networkx traversal."""
    return nx.number_connected_components(colored_graph(rows, colors))


def component_of(rows, colors):
    g = colored_graph(rows, colors)
    out = {}
    for i, comp in enumerate(nx.connected_components(g)):
        for v in comp:
            out[v] = i
    return out


def dipoles(rows):
    """All (v, w, colors) with v < w joined by exactly ``colors`` that lie in
    different components of the complementary-color subgraph."""
    k = len(rows)
    n = len(rows[0])
    out = []
    for v in range(n):
        for w in range(v + 1, n):
            cs = tuple(c for c in range(k) if rows[c][v] == w)
            if not cs or len(cs) == k:
                continue
            comp = component_of(rows, [c for c in range(k) if c not in cs])
            if comp[v] != comp[w]:
                out.append((v, w, cs))
    return out


def two_coloring(rows):
    g = colored_graph(rows)
    if not nx.is_bipartite(g):
        return None
    side = {0: 0}
    for u, w in nx.bfs_edges(g, 0):
        side[w] = 1 - side[u]
    return [side[v] for v in range(len(rows[0]))]


def _simple_graph(rows, color_map, classes):
    """Encode a colored multigraph as a simple graph: one node per edge,
    tagged with its (mapped) color, plus vertex nodes tagged with class."""
    g = nx.Graph()
    for v in range(len(rows[0])):
        g.add_node(("v", v), tag=("v", None if classes is None else classes[v]))
    for c, row in enumerate(rows):
        for v, w in enumerate(row):
            if v < w:
                e = ("e", c, v)
                g.add_node(e, tag=("e", color_map[c]))
                g.add_edge(e, ("v", v))
                g.add_edge(e, ("v", w))
    return g


def equivalent(a, b, group):
    """VF2 isomorphism test under the symmetry group ``v``, ``vc`` or ``vcr``."""
    if len(a[0]) != len(b[0]):
        return False
    k = len(a)
    ca, cb = two_coloring(a), two_coloring(b)
    keep_class = group != "vcr" and ca is not None and cb is not None
    perms = [tuple(range(k))] if group == "v" else list(permutations(range(k)))
    gb = _simple_graph(b, tuple(range(k)), cb if keep_class else None)
    match = categorical_node_match("tag", None)
    for perm in perms:
        ga = _simple_graph(a, perm, ca if keep_class else None)
        if GraphMatcher(ga, gb, node_match=match).is_isomorphic():
            return True
    return False


def invariant_factors(matrix):
    rows = [list(r) for r in matrix]
    if not rows or not rows[0]:
        return []
    snf = smith_normal_form(Matrix(rows), domain=ZZ)
    diag = [abs(snf[i, i]) for i in range(min(snf.shape))]
    return sorted(x for x in diag if x)


def rank(matrix):
    if not matrix or not matrix[0]:
        return 0
    return Matrix(matrix).rank()
