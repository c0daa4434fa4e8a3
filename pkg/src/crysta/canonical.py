"""Canonical forms by BFS-code minimization.

A labeling is fixed by a start vertex and an ordering of the colors: vertices
are numbered in breadth-first discovery order, scanning colors in that order.
The canonical form is the lexicographically least resulting involution table
(vertex-major), encoded big-endian with a 16-bit order header.

Symmetry groups:

``v``    color-preserving relabelings that keep each bipartition class
         (orientation-preserving isomorphism)
``vc``   as ``v``, plus any permutation of the colors
``vcr``  as ``vc``, plus swapping the classes (orientation reversal)

For non-bipartite graphs there is no class to keep and every vertex seeds.
"""
from __future__ import annotations

import struct
from itertools import permutations

from . import kernels
from .gem import Gem, bipartition

GROUPS = ("v", "vc", "vcr")


def _seeds(g, symmetry):
    if symmetry == "vcr":
        return range(g.order)
    bp = bipartition(g)
    if not bp.bipartite:
        return range(g.order)
    return [v for v in range(g.order) if bp.classes[v] == 0]


def canonical_form(g, symmetry="vcr"):
    if symmetry not in GROUPS:
        raise ValueError(f"unknown symmetry group {symmetry!r}")
    k = g.ncolors
    perms = list(permutations(range(k))) if symmetry != "v" else [tuple(range(k))]
    return kernels.canonical_code(g.flat, g.order, list(_seeds(g, symmetry)), perms)


def decode(code, ncolors=5):
    """Gem whose involution table is the canonical code."""
    n = struct.unpack(">H", code[:2])[0]
    table = struct.unpack(">%dH" % (n * ncolors), code[2:])
    rows = [[table[v * ncolors + c] for v in range(n)] for c in range(ncolors)]
    return Gem(n, rows)


def canonical_gem(g, symmetry="vcr"):
    return decode(canonical_form(g, symmetry), g.ncolors)


def isomorphic(a, b, symmetry="vcr"):
    return a.order == b.order and canonical_form(a, symmetry) == canonical_form(b, symmetry)
