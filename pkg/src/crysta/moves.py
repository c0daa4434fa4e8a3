"""Dipole and rho-pair moves on colored graphs.

Works for any number of colors: 5-colored gems, and the 4-colored residues
that the 3-sphere recognizer simplifies.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations

from . import kernels
from .gem import Gem, bipartition, validate

DEFAULT_SEED = 20151
DEFAULT_BUDGET = 64


class StaleMove(ValueError):
    """The move no longer matches the graph it is applied to."""


class NonReducing(RuntimeError):
    pass


@dataclass(frozen=True)
class Dipole:
    v: int
    w: int
    colors: tuple

    @property
    def h(self):
        return len(self.colors)

    def to_text(self):
        return f"dipole {self.v} {self.w} {','.join(map(str, self.colors))}"


@dataclass(frozen=True)
class RhoPair:
    color: int
    e1: tuple
    e2: tuple
    shared: tuple       # colors j whose {color, j}-cycle contains both edges

    def to_text(self):
        return f"rho {self.color} {self.e1[0]}-{self.e1[1]} {self.e2[0]}-{self.e2[1]}"


def _labels(g, colors, cache):
    lab = cache.get(colors)
    if lab is None:
        lab = cache[colors] = kernels.residue_labels(g.flat, g.order, colors)[1]
    return lab


def _parallel(g, v, w):
    return tuple(c for c in range(g.ncolors) if g.involutions[c][v] == w)


def _separated(g, v, w, colors, cache):
    rest = tuple(c for c in range(g.ncolors) if c not in colors)
    lab = _labels(g, rest, cache)
    return lab[v] != lab[w]


def find_dipoles(g, h=None):
    """Every dipole of ``g`` (of order ``h`` when given), sorted by (v, w)."""
    cache = {}
    out = []
    for v in range(g.order):
        seen = set()
        for c in range(g.ncolors):
            w = g.involutions[c][v]
            if w <= v or w in seen:
                continue
            seen.add(w)
            colors = _parallel(g, v, w)
            if len(colors) >= g.ncolors or (h is not None and len(colors) != h):
                continue
            if _separated(g, v, w, colors, cache):
                out.append(Dipole(v, w, colors))
    return out


def eliminate_dipole(g, d):
    if not (0 <= d.v < g.order and 0 <= d.w < g.order) or _parallel(g, d.v, d.w) != tuple(d.colors):
        raise StaleMove(f"{d.to_text()} does not match the graph")
    if not d.colors or len(d.colors) >= g.ncolors or not _separated(g, d.v, d.w, d.colors, {}):
        raise StaleMove(f"{d.to_text()} is not a dipole")
    rows = [list(r) for r in g.involutions]
    for c in range(g.ncolors):
        if c in d.colors:
            continue
        a, b = rows[c][d.v], rows[c][d.w]
        rows[c][a], rows[c][b] = b, a
    keep = [u for u in range(g.order) if u not in (d.v, d.w)]
    new = {u: i for i, u in enumerate(keep)}
    out = [[new[r[u]] for u in keep] for r in rows]
    return validate(g.order - 2, out, ncolors=g.ncolors)


def insert_dipole(g, colors, edges):
    """Blow up a dipole; the inverse of :func:`eliminate_dipole`.

    ``edges[c] = (x, y)`` names a ``c``-colored edge for every color ``c``
    not in ``colors``; it is cut and the new vertices ``v = order``,
    ``w = order + 1`` are attached with ``v`` next to ``x`` and ``w`` next to
    ``y``.  Raises ``ValueError`` when the new pair is not a dipole.
    """
    colors = tuple(sorted(colors))
    n = g.order
    v, w = n, n + 1
    rows = [list(r) + [0, 0] for r in g.involutions]
    for c in range(g.ncolors):
        if c in colors:
            rows[c][v], rows[c][w] = w, v
            continue
        x, y = edges[c]
        if g.involutions[c][x] != y:
            raise ValueError(f"{x}-{y} is not a {c}-colored edge")
        rows[c][x], rows[c][v] = v, x
        rows[c][y], rows[c][w] = w, y
    new = validate(n + 2, rows, ncolors=g.ncolors)
    if not colors or len(colors) >= g.ncolors or not _separated(new, v, w, colors, {}):
        raise ValueError("inserted pair is not a dipole")
    return new, Dipole(v, w, colors)


def random_dipole_insertion(g, rng, h=None):
    """A random valid blow-up of ``g``; returns ``(gem, dipole)``."""
    k = g.ncolors
    h = h or rng.randint(1, k - 1)
    colors = tuple(sorted(rng.sample(range(k), h)))
    rest = [c for c in range(k) if c not in colors]
    bp = bipartition(g)
    side = rng.randrange(2)

    def orient(edges):
        # x-ends in one class keep the blow-up bipartite
        if not bp.bipartite:
            return edges
        return {c: (x, y) if bp.classes[x] == side else (y, x) for c, (x, y) in edges.items()}

    for _ in range(20):
        if rng.random() < 0.5:
            # cut edges met along a random walk in the complementary colors
            x = rng.randrange(g.order)
            edges = {}
            for c in rest:
                y = g.involutions[c][x]
                edges[c] = (x, y) if rng.random() < 0.5 else (y, x)
                x = rng.choice((x, y))
        else:
            edges = {}
            for c in rest:
                x = rng.randrange(g.order)
                edges[c] = (x, g.involutions[c][x])
        try:
            return insert_dipole(g, colors, orient(edges))
        except ValueError:
            continue
    a = rng.randrange(g.order)
    return insert_dipole(g, colors, orient({c: (a, g.involutions[c][a]) for c in rest}))


def find_rho_pairs(g, min_shared=3):
    out = []
    k = g.ncolors
    for i in range(k):
        others = [j for j in range(k) if j != i]
        labs = {j: kernels.residue_labels(g.flat, g.order, tuple(sorted((i, j))))[1] for j in others}
        edges = [(v, w) for v, w in enumerate(g.involutions[i]) if v < w]
        for e1, e2 in combinations(edges, 2):
            shared = tuple(j for j in others if labs[j][e1[0]] == labs[j][e2[0]])
            if len(shared) >= min_shared:
                out.append(RhoPair(i, e1, e2, shared))
    return out


@dataclass
class SwitchResult:
    gem: Gem
    reduced: bool
    log: list = field(default_factory=list)
    status: str = "ok"


def switch_rho_pair(g, r, min_shared=3):
    i = r.color
    (v1, w1), (v2, w2) = r.e1, r.e2
    inv = g.involutions[i]
    if inv[v1] != w1 or inv[v2] != w2 or {v1, w1} & {v2, w2}:
        raise StaleMove(f"{r.to_text()} does not match the graph")
    labs = [kernels.residue_labels(g.flat, g.order, tuple(sorted((i, j))))[1]
            for j in range(g.ncolors) if j != i]
    if sum(lab[v1] == lab[v2] for lab in labs) < min_shared:
        raise StaleMove(f"{r.to_text()} is no longer a rho-pair")
    bp = bipartition(g)
    if bp.bipartite:
        if bp.classes[v1]:
            v1, w1 = w1, v1
        if bp.classes[v2]:
            v2, w2 = w2, v2
    rows = [list(x) for x in g.involutions]
    row = rows[i]
    row[v1], row[w2] = w2, v1
    row[v2], row[w1] = w1, v2
    log = [r.to_text()]
    count, _ = kernels.residue_labels([x for rr in rows for x in rr], g.order, range(g.ncolors))
    if count != 1:
        return SwitchResult(g, False, log, "disconnects")
    cur = validate(g.order, rows, ncolors=g.ncolors)
    cur, steps = eliminate_all(cur)
    log += [d.to_text() for d in steps]
    reduced = cur.order < g.order
    return SwitchResult(cur, reduced, log, "ok" if reduced else "non-reducing")


def eliminate_all(g, rng=None, h=None):
    """Cancel dipoles until none is left; first-found, or random with ``rng``."""
    steps = []
    while True:
        ds = find_dipoles(g, h)
        if not ds:
            return g, steps
        d = rng.choice(ds) if rng is not None else ds[0]
        g = eliminate_dipole(g, d)
        steps.append(d)


def is_rigid_dipole_free(g):
    return not find_dipoles(g, 2) and not find_rho_pairs(g)


def _surfaces_ok(g):
    """All 3-colored residues are spheres (needed for a closed 3-manifold)."""
    k = g.ncolors
    for triple in combinations(range(k), 3):
        res = kernels.residue_labels(g.flat, g.order, triple)
        cycles = [0] * res[0]
        sizes = [0] * res[0]
        for lab in res[1]:
            sizes[lab] += 1
        for pair in combinations(triple, 2):
            cnt, lab2 = kernels.residue_labels(g.flat, g.order, pair)
            first = {}
            for v, l2 in enumerate(lab2):
                first.setdefault(l2, v)
            for v in first.values():
                cycles[res[1][v]] += 1
        if any(cycles[x] - sizes[x] // 2 != 2 for x in range(res[0])):
            return False
    return True


def recognize_s3(g4, seed=DEFAULT_SEED, budget=DEFAULT_BUDGET):
    """Decide whether a 4-colored graph represents the 3-sphere.

    ``"yes"`` when dipole moves reduce ``g4`` to the order-2 graph: a proof,
    since dipole moves preserve the 3-manifold once every 3-residue is a
    sphere, which is checked first.  ``"no"`` when the homology differs from
    that of the 3-sphere.  ``"unknown"`` otherwise.  Restarts blow up at most
    two dipoles (four vertices) at random before cancelling again.
    """
    if g4.ncolors != 4:
        raise ValueError("recognize_s3 expects a 4-colored graph")
    if not _surfaces_ok(g4):
        return "unknown"
    from .complex import build_complex, homology
    hom = homology(build_complex(g4))
    if hom.betti != (1, 0, 0, 1) or any(hom.torsion.values()):
        return "no"
    base, _ = eliminate_all(g4)
    if base.order == 2:
        return "yes"
    rng = random.Random(seed)
    cur = base
    for _ in range(budget):
        for _ in range(rng.randint(1, 2)):
            cur, _ = random_dipole_insertion(cur, rng)
        cur, _ = eliminate_all(cur, rng)
        if cur.order == 2:
            return "yes"
        if cur.order > base.order + 8:
            cur = base
    return "unknown"


def residue_graph(g, missing):
    """Every residue avoiding color ``missing``, each as a 4-colored graph."""
    colors = [c for c in range(g.ncolors) if c != missing]
    _, lab = kernels.residue_labels(g.flat, g.order, colors)
    comps = {}
    for v, l in enumerate(lab):
        comps.setdefault(l, []).append(v)
    out = []
    for verts in comps.values():
        idx = {u: i for i, u in enumerate(verts)}
        rows = [[idx[g.involutions[c][u]] for u in verts] for c in colors]
        out.append(Gem(len(verts), rows))
    return out


def simplify(g, seed=DEFAULT_SEED, budget=DEFAULT_BUDGET):
    """Cancel dipoles, then switch rho-pairs while that lowers the order.

    Returns ``(gem, log)`` with one replayable move per log line.
    """
    cur, steps = eliminate_all(g)
    log = [d.to_text() for d in steps]
    progress = True
    tries = 0
    while progress and tries < budget:
        progress = False
        for r in find_rho_pairs(cur):
            tries += 1
            res = switch_rho_pair(cur, r)
            if res.reduced:
                cur = res.gem
                log += res.log
                progress = True
                break
            if tries >= budget:
                break
    return cur, log


def replay(g, lines):
    """Apply a move log produced by :func:`simplify`."""
    cur = g
    lines = [ln.strip() for ln in lines if ln.strip() and not ln.startswith("#")]
    i = 0
    while i < len(lines):
        parts = lines[i].split()
        if parts[0] == "dipole":
            colors = tuple(int(c) for c in parts[3].split(","))
            cur = eliminate_dipole(cur, Dipole(int(parts[1]), int(parts[2]), colors))
        elif parts[0] == "rho":
            color = int(parts[1])
            e1 = tuple(int(x) for x in parts[2].split("-"))
            e2 = tuple(int(x) for x in parts[3].split("-"))
            rows = [list(r) for r in cur.involutions]
            bp = bipartition(cur)
            (v1, w1), (v2, w2) = e1, e2
            if bp.bipartite:
                if bp.classes[v1]:
                    v1, w1 = w1, v1
                if bp.classes[v2]:
                    v2, w2 = w2, v2
            row = rows[color]
            if row[v1] != w1 or row[v2] != w2:
                raise StaleMove(lines[i])
            row[v1], row[w2] = w2, v1
            row[v2], row[w1] = w1, v2
            cur = validate(cur.order, rows, ncolors=cur.ncolors)
        else:
            raise ValueError(f"unknown move {lines[i]!r}")
        i += 1
    return cur
