"""Numeric invariants of 5-colored gems and the identities they satisfy."""
from __future__ import annotations

from dataclasses import asdict, dataclass, field
from itertools import combinations, permutations

from .complex import build_complex, homology, is_simple, one_skeleton
from .gem import bipartition, is_contracted, residue_table

PAIRS = tuple(combinations(range(5), 2))
TRIPLES = tuple(combinations(range(5), 3))


class NonBipartite(ValueError):
    pass


class OddGenusValue(ValueError):
    pass


class NotSimple(ValueError):
    pass


class IdentityViolation(AssertionError):
    pass


def cyclic_permutations():
    """The 12 cyclic orders of the five colors, written ending in 4.

    A cyclic order and its reversal give the same set of consecutive pairs;
    the representative has ``eps[0] < eps[3]``.
    """
    out = []
    for head in permutations(range(4)):
        if head[0] < head[3]:
            out.append(head + (4,))
    return out


def all_arrangements():
    """All 24 cyclic orders ending in 4, reversal not quotiented."""
    return [head + (4,) for head in permutations(range(4))]


def _pair(eps, i):
    a, b = eps[i], eps[(i + 1) % 5]
    return (a, b) if a < b else (b, a)


def euler_characteristic(g, table=None):
    t = table or residue_table(g)
    return -3 * g.p + sum(t.g_pair.values()) - sum(t.g_triple.values()) + sum(t.g_hat.values())


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    lhs: int | bool | None = None
    rhs: int | bool | None = None
    applicable: bool = True
    detail: str = ""


def check_relation_d(g, table=None):
    t = table or residue_table(g)
    out = []
    for i, j, k in TRIPLES:
        lhs = 2 * t.g_triple[(i, j, k)]
        rhs = t.g_pair[(i, j)] + t.g_pair[(i, k)] + t.g_pair[(j, k)] - g.p
        out.append(Check(f"relation_d{{{i},{j},{k}}}", lhs == rhs, lhs, rhs, detail=f"{i}{j}{k}"))
    return out


@dataclass(frozen=True)
class SphereVerdict:
    triple: tuple
    component: int
    size: int
    chi: int
    sphere: bool


def check_sphere_3residues(g, table=None):
    """Surface Euler characteristic of every 3-residue; spheres have chi 2."""
    t = table or residue_table(g)
    out = []
    for triple in TRIPLES:
        res = t.components[triple]
        cycles = [0] * res.count
        for pair in combinations(triple, 2):
            sub = t.components[pair]
            for comp in sub.components:
                cycles[res.labels[comp[0]]] += 1
        for idx, comp in enumerate(res.components):
            chi = cycles[idx] - len(comp) // 2
            out.append(SphereVerdict(triple, idx, len(comp), chi, chi == 2))
    return out


@dataclass
class GenusSpectrum:
    values: dict            # cyclic order (tuple) -> genus

    @property
    def minimum(self):
        return min(self.values.values())

    @property
    def constant(self):
        return len(set(self.values.values())) == 1

    def to_json(self):
        return {"".join(map(str, eps)): rho for eps, rho in self.values.items()}


def _genus(g, t, eps):
    s = sum(t.g_pair[_pair(eps, i)] for i in range(5)) - 3 * g.p
    if (2 - s) % 2:
        raise OddGenusValue(f"cyclic order {eps}: 2 - 2*genus = {s} is odd")
    rho = (2 - s) // 2
    if rho < 0:
        raise OddGenusValue(f"cyclic order {eps}: negative genus {rho}")
    return rho


def genus_spectrum(g, table=None, debug=False):
    if not bipartition(g).bipartite:
        raise NonBipartite("regular genus is computed for bipartite gems only")
    t = table or residue_table(g)
    values = {eps: _genus(g, t, eps) for eps in cyclic_permutations()}
    if debug:
        for eps in all_arrangements():
            rev = tuple(reversed(eps[:4])) + (4,)
            assert _genus(g, t, eps) == _genus(g, t, rev)
    return GenusSpectrum(values)


@dataclass(frozen=True)
class HandleSummary:
    partition: tuple        # ((i, j, k), (r, s))
    h0: int
    h2: int
    h4: int
    h1: int = 0
    h3: int = 0


def partitions():
    return [(tuple(c for c in range(5) if c not in rs), rs) for rs in PAIRS]


def handle_summary(g, partition, table=None, betti2=None):
    t = table or residue_table(g)
    cert = is_simple(g, t)
    if not cert.simple:
        raise NotSimple(f"g_{cert.witness} = {t.g_triple[cert.witness]}")
    ijk, rs = partition
    rs = tuple(sorted(rs))
    if sorted(tuple(ijk) + rs) != list(range(5)):
        raise ValueError(f"{partition} is not a partition of the colors")
    h2 = t.g_pair[rs] - 1
    if betti2 is None:
        betti2 = homology(build_complex(g)).betti[2]
    if h2 != betti2:
        raise IdentityViolation(f"g_{rs} - 1 = {h2} but beta_2 = {betti2}")
    return HandleSummary((tuple(sorted(ijk)), rs), 1, h2, 1)


def check_paper_identities(g, table=None, hom=None, spectrum=None):
    """Named identity checks for a contracted bipartite gem.

    Checks that only hold for simple crystallizations are reported with
    ``applicable=False`` on other gems.
    """
    t = table or residue_table(g)
    hom = hom or homology(build_complex(g))
    spectrum = spectrum or genus_spectrum(g, t)
    b1, b2, b3 = hom.betti[1], hom.betti[2], hom.betti[3]
    simple = all(v == 1 for v in t.g_triple.values()) and all(v == 1 for v in t.g_hat.values())
    sum_triple = sum(t.g_triple.values())
    p = g.p
    out = []
    bad = [pq for pq in PAIRS if t.g_pair[pq] != 1 + b2]
    out.append(Check("pairs_equal_1_plus_beta2", not bad, t.g_pair[bad[0]] if bad else 1 + b2,
                     1 + b2, simple, f"first mismatch {bad[0]}" if bad else ""))
    out.append(Check("p_equals_1_plus_3beta2", p == 1 + 3 * b2, p, 1 + 3 * b2, simple))
    off = [eps for eps, rho in spectrum.values.items() if rho != 2 * b2]
    out.append(Check("genus_equals_2beta2", not off,
                     spectrum.values[off[0]] if off else 2 * b2, 2 * b2, simple,
                     f"first mismatch {off[0]}" if off else ""))
    out.append(Check("triple_sum_equals_10", sum_triple == 10, sum_triple, 10, simple))
    dual = b1 == 0 and b3 == 0
    out.append(Check("euler_from_triples", 3 * (2 + b2) == 15 - sum_triple + p,
                     3 * (2 + b2), 15 - sum_triple + p, dual))
    out.append(Check("beta2_at_most_half_genus", b2 <= spectrum.minimum // 2,
                     b2, spectrum.minimum // 2, b1 == 0))
    minimal = g.order == 2 * (3 * b2 + 1)
    out.append(Check("minimal_order_forces_simple", sum_triple == 10 and simple,
                     sum_triple, 10, minimal and dual))
    return out


@dataclass(frozen=True)
class ComplexityBounds:
    upper: int
    exact: int | None


def complexity_bounds(g, table=None, betti2=None):
    if not is_contracted(g):
        raise ValueError("gem-complexity bounds need a crystallization")
    t = table or residue_table(g)
    cert = is_simple(g, t)
    if not cert.simple:
        return ComplexityBounds(g.p - 1, None)
    if betti2 is None:
        betti2 = homology(build_complex(g)).betti[2]
    if 3 * betti2 != g.p - 1:
        raise IdentityViolation(f"simple gem with p - 1 = {g.p - 1} but 3*beta_2 = {3 * betti2}")
    return ComplexityBounds(g.p - 1, 3 * betti2)


@dataclass
class InvariantReport:
    order: int
    chi: int
    chi_faces: int
    bipartite: bool
    contracted: bool
    g_pair: dict
    g_triple: dict
    g_hat: dict
    genus: GenusSpectrum | None
    betti: tuple
    torsion: dict
    simple: bool | None
    witness: tuple | None
    handles: list
    complexity: ComplexityBounds | None
    checks: list = field(default_factory=list)
    skeleton: list | None = None

    @property
    def passed(self):
        return all(c.passed for c in self.checks if c.applicable)

    def to_json(self):
        key = lambda t: "".join(map(str, t))
        return {
            "order": self.order,
            "chi": self.chi,
            "chi_faces": self.chi_faces,
            "bipartite": self.bipartite,
            "contracted": self.contracted,
            "g_pair": {key(k): v for k, v in self.g_pair.items()},
            "g_triple": {key(k): v for k, v in self.g_triple.items()},
            "g_hat": {str(k): v for k, v in self.g_hat.items()},
            "genus": None if self.genus is None else {
                "spectrum": self.genus.to_json(), "minimum": self.genus.minimum},
            "betti": list(self.betti),
            "torsion": {str(d): list(t) for d, t in sorted(self.torsion.items())},
            "simple": self.simple,
            "witness": None if self.witness is None else list(self.witness),
            "handles": [
                {"partition": [list(h.partition[0]), list(h.partition[1])],
                 "h0": h.h0, "h1": h.h1, "h2": h.h2, "h3": h.h3, "h4": h.h4}
                for h in self.handles],
            "complexity": None if self.complexity is None else asdict(self.complexity),
            "skeleton": self.skeleton,
            "checks": [
                {"name": c.name, "passed": c.passed, "applicable": c.applicable,
                 "lhs": c.lhs, "rhs": c.rhs, "detail": c.detail}
                for c in self.checks],
            "passed": self.passed,
        }


def invariant_report(g):
    """Everything computable about ``g``; identity failures are reported, not raised."""
    t = residue_table(g)
    k = build_complex(g)
    hom = homology(k)
    bip = bipartition(g).bipartite
    contracted = all(v == 1 for v in t.g_hat.values())
    chi = euler_characteristic(g, t)
    checks = [Check("euler_two_ways", chi == k.euler_characteristic(), chi, k.euler_characteristic())]
    checks += check_relation_d(g, t)
    for v in check_sphere_3residues(g, t):
        if not v.sphere:
            checks.append(Check(f"sphere_residue{{{','.join(map(str, v.triple))}}}#{v.component}",
                                False, v.chi, 2))
    spectrum = None
    if bip:
        try:
            spectrum = genus_spectrum(g, t)
        except OddGenusValue as exc:
            checks.append(Check("genus_integrality", False, detail=str(exc)))
    simple = witness = None
    handles = []
    complexity = None
    skeleton = None
    if contracted:
        cert = is_simple(g, t)
        simple, witness = cert.simple, cert.witness
        _, skeleton = one_skeleton(k)
        if bip and spectrum is not None:
            checks += check_paper_identities(g, t, hom, spectrum)
        if simple:
            for part in partitions():
                try:
                    handles.append(handle_summary(g, part, t, hom.betti[2]))
                except IdentityViolation as exc:
                    checks.append(Check("handle_count_equals_beta2", False, detail=str(exc)))
        try:
            complexity = complexity_bounds(g, t, hom.betti[2])
        except IdentityViolation as exc:
            checks.append(Check("complexity_equals_3beta2", False, detail=str(exc)))
    return InvariantReport(
        order=g.order, chi=chi, chi_faces=k.euler_characteristic(), bipartite=bip,
        contracted=contracted, g_pair=dict(t.g_pair), g_triple=dict(t.g_triple),
        g_hat=dict(t.g_hat), genus=spectrum, betti=hom.betti, torsion=hom.torsion,
        simple=simple, witness=witness, handles=handles, complexity=complexity,
        checks=checks, skeleton=skeleton)
