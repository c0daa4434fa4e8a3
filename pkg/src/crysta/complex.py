"""The labelled pseudocomplex dual to a colored graph, and its homology.

A d-simplex with vertex labels ``L`` corresponds to a residue in the
complementary colors.  Simplices are oriented by ascending label, so the
facet dropping the label at position ``i`` carries sign ``(-1)**i``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from . import kernels
from .gem import bipartition, is_contracted, residue_table
from .snf import SAFE_LIMIT, invariant_factors


class NotContracted(ValueError):
    pass


@dataclass(frozen=True)
class Simplex:
    labels: tuple
    residue: int          # component index among residues of the complementary colors
    vertices: tuple       # graph vertices of that residue


@dataclass
class Pseudocomplex:
    dim: int
    simplices: list                      # simplices[d] -> list of Simplex
    boundary: list                       # boundary[d][j] -> [(facet index, sign)]
    _rep: dict = field(repr=False)       # label set -> graph vertex -> simplex index

    @property
    def face_vector(self):
        return tuple(len(s) for s in self.simplices)

    def boundary_matrix(self, d):
        """Dense matrix of the boundary map from d-chains to (d-1)-chains."""
        rows = len(self.simplices[d - 1])
        cols = len(self.simplices[d])
        m = [[0] * cols for _ in range(rows)]
        for j, facets in enumerate(self.boundary[d]):
            for i, sign in facets:
                m[i][j] += sign
        return m

    def simplex_at(self, labels, vertex):
        """Index of the simplex with ``labels`` whose residue contains ``vertex``."""
        return self._rep[tuple(labels)][vertex]

    def euler_characteristic(self):
        return sum((-1) ** d * n for d, n in enumerate(self.face_vector))


def build_complex(g):
    n = g.ncolors - 1
    colors = tuple(range(g.ncolors))
    simplices = [[] for _ in range(n + 1)]
    rep = {}
    for d in range(n + 1):
        for labels in combinations(colors, d + 1):
            comp_colors = tuple(c for c in colors if c not in labels)
            count, lab = kernels.residue_labels(g.flat, g.order, comp_colors)
            offset = len(simplices[d])
            members = [[] for _ in range(count)]
            for v, r in enumerate(lab):
                members[r].append(v)
            for r in range(count):
                simplices[d].append(Simplex(labels, r, tuple(members[r])))
            rep[labels] = [offset + r for r in lab]
    boundary = [[]]
    for d in range(1, n + 1):
        layer = []
        for s in simplices[d]:
            v = s.vertices[0]
            facets = []
            for pos in range(d + 1):
                face = s.labels[:pos] + s.labels[pos + 1:]
                facets.append((rep[face][v], -1 if pos % 2 else 1))
            layer.append(facets)
        boundary.append(layer)
    return Pseudocomplex(n, simplices, boundary, rep)


def one_skeleton(k):
    """Edge multiplicities between 0-simplices.

    Returns ``(vertices, matrix)`` where ``vertices`` lists the 0-simplices as
    ``(label, residue)`` and ``matrix[a][b]`` counts 1-simplices joining them.
    """
    verts = [(s.labels[0], s.residue) for s in k.simplices[0]]
    m = [[0] * len(verts) for _ in verts]
    for facets in k.boundary[1]:
        (a, _), (b, _) = facets
        m[a][b] += 1
        m[b][a] += 1
    return verts, m


@dataclass(frozen=True)
class SimplicityCertificate:
    simple: bool
    g_triple: dict
    witness: tuple | None = None


def is_simple(g, table=None):
    if not is_contracted(g):
        raise NotContracted("simplicity is defined for contracted gems only")
    table = table or residue_table(g)
    for triple, count in sorted(table.g_triple.items()):
        if count >= 2:
            return SimplicityCertificate(False, dict(table.g_triple), triple)
    return SimplicityCertificate(True, dict(table.g_triple))


@dataclass(frozen=True)
class HomologyProfile:
    betti: tuple
    torsion: dict

    def to_json(self):
        return {
            "betti": list(self.betti),
            "torsion": {str(d): list(t) for d, t in sorted(self.torsion.items())},
        }


def homology(k, limit=SAFE_LIMIT):
    n = k.dim
    sizes = k.face_vector
    factors = [[] for _ in range(n + 2)]
    for d in range(1, n + 1):
        factors[d] = invariant_factors(k.boundary_matrix(d), limit)
    ranks = [len(f) for f in factors]
    betti = tuple(sizes[d] - ranks[d] - ranks[d + 1] for d in range(n + 1))
    torsion = {d: [x for x in factors[d + 1] if x > 1] for d in range(n + 1)}
    return HomologyProfile(betti, torsion)


# -- intersection form --------------------------------------------------------

@dataclass(frozen=True)
class IntersectionForm:
    rank: int
    signature: int
    even: bool

    def to_json(self):
        return {"rank": self.rank, "signature": self.signature, "even": self.even}


def _nullspace_q(rows, ncols):
    """Basis of {x : r.x = 0 for every row r} over the rationals."""
    m = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        x = [Fraction(0)] * ncols
        x[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            x[pc] = -m[i][fc]
        basis.append(x)
    return basis


def _nullspace_gf2(rows, ncols):
    m = [[x & 1 for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(len(m)):
            if i != r and m[i][c]:
                m[i] = [a ^ b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        x = [0] * ncols
        x[fc] = 1
        for i, pc in enumerate(pivots):
            x[pc] = m[i][fc]
        basis.append(x)
    return basis


def _signature(q):
    """(positive, negative) inertia of a symmetric rational matrix."""
    q = [row[:] for row in q]
    pos = neg = 0
    while q:
        size = len(q)
        i = next((i for i in range(size) if q[i][i]), None)
        if i is None:
            pair = next(((a, b) for a in range(size) for b in range(size) if q[a][b]), None)
            if pair is None:
                break
            a, b = pair
            # congruence: row/column a += row/column b makes the diagonal 2*q[a][b]
            for j in range(size):
                q[a][j] += q[b][j]
            for j in range(size):
                q[j][a] += q[j][b]
            i = a
        d = q[i][i]
        if d > 0:
            pos += 1
        else:
            neg += 1
        rest = [j for j in range(size) if j != i]
        q = [[q[r][c] - q[r][i] * q[i][c] / d for c in rest] for r in rest]
    return pos, neg


def intersection_form(g, k=None, positive=0):
    """Rank, signature and parity of the cup-product pairing on H^2.

    Requires a bipartite 5-colored gem (an oriented closed 4-dimensional
    pseudomanifold).  The fundamental cycle gives each 4-simplex the sign of
    its bipartition class; the pairing of 2-cocycles ``a``, ``b`` is the sum
    over vertices of sign * a(front face) * b(back face), the faces labelled
    {0,1,2} and {2,3,4}.  The class of vertex ``positive`` is taken as
    positively oriented; the other choice negates the signature.
    """
    if g.ncolors != 5:
        raise ValueError("intersection form needs a 5-colored gem")
    bp = bipartition(g)
    if not bp.bipartite:
        raise ValueError("intersection form needs a bipartite gem")
    k = k or build_complex(g)
    d3 = k.boundary_matrix(3)
    n2 = len(k.simplices[2])
    transpose = [[d3[i][j] for i in range(n2)] for j in range(len(d3[0]))]
    front = [k.simplex_at((0, 1, 2), v) for v in range(g.order)]
    back = [k.simplex_at((2, 3, 4), v) for v in range(g.order)]
    sign = [1 if c == bp.classes[positive] else -1 for c in bp.classes]

    def pair(a, b):
        return sum(s * a[f] * b[t] for s, f, t in zip(sign, front, back))

    basis = _nullspace_q(transpose, n2)
    gram = [[(pair(a, b) + pair(b, a)) / 2 for b in basis] for a in basis]
    pos, neg = _signature(gram)
    basis2 = _nullspace_gf2(transpose, n2)
    even = all(pair(x, x) % 2 == 0 for x in basis2)
    return IntersectionForm(pos + neg, pos - neg, even)
