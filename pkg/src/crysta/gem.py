"""Gems: regular edge-colored multigraphs stored as fixed-point-free involutions."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations

from . import kernels

COLORS = (0, 1, 2, 3, 4)


class GemError(ValueError):
    """Base class for invalid gem descriptions."""


class OddOrder(GemError):
    def __init__(self, order):
        super().__init__(f"order {order} is not an even positive integer")
        self.order = order


class FixedPoint(GemError):
    def __init__(self, color, vertex):
        super().__init__(f"color {color} maps vertex {vertex} to itself")
        self.color = color
        self.vertex = vertex


class NotInvolution(GemError):
    def __init__(self, color, vertex):
        super().__init__(f"color {color} is not an involution at vertex {vertex}")
        self.color = color
        self.vertex = vertex


class Disconnected(GemError):
    def __init__(self, components):
        sizes = ", ".join(str(len(c)) for c in components)
        super().__init__(f"graph has {len(components)} components (sizes {sizes})")
        self.components = components


class GemSyntaxError(GemError):
    def __init__(self, line, message):
        super().__init__(f"line {line}: {message}")
        self.line = line


class Gem:
    """An immutable, validated colored graph.

    ``involutions[c][v]`` is the vertex joined to ``v`` by the color-``c``
    edge.  Five colors for gems proper; residues of a gem are returned as
    ``Gem`` objects with fewer colors.
    """

    __slots__ = ("order", "involutions", "_flat", "_hash")

    def __init__(self, order, involutions):
        self.order = order
        self.involutions = tuple(tuple(row) for row in involutions)
        self._flat = None
        self._hash = None

    @property
    def ncolors(self):
        return len(self.involutions)

    @property
    def p(self):
        return self.order // 2

    @property
    def flat(self):
        if self._flat is None:
            self._flat = [w for row in self.involutions for w in row]
        return self._flat

    def partner(self, color, v):
        return self.involutions[color][v]

    def edges(self):
        """``(color, v, w)`` with ``v < w`` for every edge."""
        for c, row in enumerate(self.involutions):
            for v, w in enumerate(row):
                if v < w:
                    yield c, v, w

    def relabel(self, perm):
        """Gem with vertex ``v`` renamed ``perm[v]``."""
        n = self.order
        rows = []
        for row in self.involutions:
            new = [0] * n
            for v in range(n):
                new[perm[v]] = perm[row[v]]
            rows.append(new)
        return Gem(n, rows)

    def recolor(self, colors):
        """Gem whose color ``i`` is the old color ``colors[i]``."""
        return Gem(self.order, [self.involutions[c] for c in colors])

    def __eq__(self, other):
        return isinstance(other, Gem) and self.involutions == other.involutions

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.involutions)
        return self._hash

    def __repr__(self):
        return f"Gem(order={self.order}, ncolors={self.ncolors})"


def validate(order, involutions, ncolors=5):
    """Check a raw description and return the corresponding :class:`Gem`."""
    if not isinstance(order, int) or order < 2 or order % 2:
        raise OddOrder(order)
    rows = [list(r) for r in involutions]
    if len(rows) != ncolors:
        raise GemError(f"expected {ncolors} colors, got {len(rows)}")
    for c, row in enumerate(rows):
        if len(row) != order:
            raise GemError(f"color {c} covers {len(row)} vertices, expected {order}")
        for v, w in enumerate(row):
            if not isinstance(w, int) or not 0 <= w < order:
                raise GemError(f"color {c} maps vertex {v} outside the vertex set")
            if w == v:
                raise FixedPoint(c, v)
        for v, w in enumerate(row):
            if row[w] != v:
                raise NotInvolution(c, v)
    gem = Gem(order, rows)
    count, labels = kernels.residue_labels(gem.flat, order, range(ncolors))
    if count != 1:
        raise Disconnected(_group(labels, count))
    return gem


def _group(labels, count):
    comps = [[] for _ in range(count)]
    for v, lab in enumerate(labels):
        comps[lab].append(v)
    return comps


def from_permutations(sigmas):
    """Bipartite gem with class A = ``0..p-1`` and B = ``p..2p-1``.

    ``sigmas[c][i] = j`` joins A-vertex ``i`` to B-vertex ``p + j`` in color ``c``.
    """
    p = len(sigmas[0])
    n = 2 * p
    rows = []
    for s in sigmas:
        row = [0] * n
        for i, j in enumerate(s):
            row[i] = p + j
            row[p + j] = i
        rows.append(row)
    return validate(n, rows, ncolors=len(sigmas))


def standard_gem(ncolors=5):
    """The order-2 gem: two vertices joined by one edge of every color."""
    return Gem(2, [(1, 0)] * ncolors)


# -- residues ---------------------------------------------------------------

@dataclass(frozen=True)
class Residues:
    colors: tuple
    count: int
    labels: tuple
    components: tuple


def residues(g, colors):
    colors = tuple(sorted(set(colors)))
    if any(c not in range(g.ncolors) for c in colors):
        raise ValueError(f"colors {colors} outside 0..{g.ncolors - 1}")
    count, labels = kernels.residue_labels(g.flat, g.order, colors)
    comps = tuple(tuple(c) for c in _group(labels, count))
    return Residues(colors, count, tuple(labels), comps)


@dataclass
class ResidueTable:
    g_pair: dict
    g_triple: dict
    g_hat: dict
    components: dict = field(repr=False)

    def pair(self, i, j):
        return self.g_pair[tuple(sorted((i, j)))]

    def triple(self, i, j, k):
        return self.g_triple[tuple(sorted((i, j, k)))]


def residue_table(g):
    """All residue counts of a 5-colored gem, components cached by color set."""
    comps = {}
    g_pair, g_triple, g_hat = {}, {}, {}
    for size in (2, 3, 4):
        for cs in combinations(range(g.ncolors), size):
            r = residues(g, cs)
            comps[cs] = r
            if size == 2:
                g_pair[cs] = r.count
            elif size == 3:
                g_triple[cs] = r.count
            else:
                (missing,) = set(range(g.ncolors)) - set(cs)
                g_hat[missing] = r.count
    return ResidueTable(g_pair, g_triple, g_hat, comps)


def is_contracted(g):
    full = tuple(range(g.ncolors))
    return all(residues(g, full[:i] + full[i + 1:]).count == 1 for i in full)


# -- bipartition ------------------------------------------------------------

@dataclass(frozen=True)
class Bipartition:
    classes: tuple | None
    odd_cycle: tuple | None = None

    @property
    def bipartite(self):
        return self.classes is not None

    def class_of(self, v):
        return self.classes[v]


def find_bipartition(n, edges):
    """Two-color an arbitrary multigraph given as ``(u, w)`` pairs.

    Class 0 holds vertex 0 of each component.  Returns an odd cycle (closed
    vertex walk) when no 2-coloring exists.
    """
    adj = [[] for _ in range(n)]
    for u, w in edges:
        adj[u].append(w)
        adj[w].append(u)
    side = [-1] * n
    parent = [-1] * n
    depth = [0] * n
    for s in range(n):
        if side[s] >= 0:
            continue
        side[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if side[w] < 0:
                    side[w] = 1 - side[u]
                    parent[w] = u
                    depth[w] = depth[u] + 1
                    queue.append(w)
                elif side[w] == side[u]:
                    return Bipartition(None, _odd_cycle(u, w, parent, depth))
    return Bipartition(tuple(side))


def _odd_cycle(u, w, parent, depth):
    left, right = [u], [w]
    while depth[u] > depth[w]:
        u = parent[u]
        left.append(u)
    while depth[w] > depth[u]:
        w = parent[w]
        right.append(w)
    while u != w:
        u, w = parent[u], parent[w]
        left.append(u)
        right.append(w)
    right.pop()
    return tuple(left + right[::-1])


def bipartition(g):
    return find_bipartition(g.order, [(v, w) for _, v, w in g.edges()])


# -- text format ------------------------------------------------------------

def serialize(g):
    lines = ["gem v1", f"order {g.order}"]
    for c, row in enumerate(g.involutions):
        pairs = " ".join(f"{v}-{w}" for v, w in enumerate(row) if v < w)
        lines.append(f"{c}: {pairs}")
    return "\n".join(lines) + "\n"


def parse(text, ncolors=5):
    lines = text.split("\n")
    if not lines or lines[0].strip() != "gem v1":
        raise GemSyntaxError(1, "expected header 'gem v1'")
    order = None
    rows = {}
    for lineno, raw in enumerate(lines[1:], start=2):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if order is None:
            head, _, value = line.partition(" ")
            if head != "order":
                raise GemSyntaxError(lineno, "expected 'order <2p>'")
            try:
                order = int(value)
            except ValueError:
                raise GemSyntaxError(lineno, f"bad order {value!r}") from None
            if order < 2 or order % 2:
                raise OddOrder(order)
            continue
        key, sep, rest = line.partition(":")
        if not sep or not key.strip().isdigit():
            raise GemSyntaxError(lineno, "expected '<color>: a-b ...'")
        c = int(key)
        if c >= ncolors or c in rows:
            raise GemSyntaxError(lineno, f"unexpected color line {c}")
        row = [None] * order
        for token in rest.split():
            a, dash, b = token.partition("-")
            if not dash or not a.isdigit() or not b.isdigit():
                raise GemSyntaxError(lineno, f"bad pair {token!r}")
            a, b = int(a), int(b)
            if a >= order or b >= order:
                raise GemSyntaxError(lineno, f"vertex out of range in {token!r}")
            if a == b:
                raise FixedPoint(c, a)
            if row[a] is not None or row[b] is not None:
                raise GemSyntaxError(lineno, f"vertex repeated in color {c}")
            row[a], row[b] = b, a
        if None in row:
            raise GemSyntaxError(lineno, f"color {c} misses vertex {row.index(None)}")
        rows[c] = row
    if order is None:
        raise GemSyntaxError(len(lines), "missing 'order' line")
    if sorted(rows) != list(range(ncolors)):
        missing = sorted(set(range(ncolors)) - set(rows))
        raise GemSyntaxError(len(lines), f"missing color lines {missing}")
    return validate(order, [rows[c] for c in range(ncolors)], ncolors=ncolors)
