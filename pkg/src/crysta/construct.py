"""Graph connected sums and isomorph-free enumeration of simple crystallizations.

A bipartite gem of order 2p is stored as five bijections from class A to
class B.  Renaming B so that color 0 is the identity leaves one permutation
per remaining color, defined up to simultaneous conjugation; the search
fixes color 1 to a cycle-type representative, color 2 up to the centralizer
of color 1, and extends colors 3 and 4 with the compiled kernel.
"""
from __future__ import annotations

import json
import logging
import time
from dataclasses import dataclass, field
from itertools import permutations
from multiprocessing import Pool
from pathlib import Path

from . import kernels
from .canonical import GROUPS, canonical_form, decode
from .complex import intersection_form
from .gem import Gem, bipartition, from_permutations, residue_table, validate
from .invariants import check_sphere_3residues, cyclic_permutations, invariant_report
from .moves import DEFAULT_BUDGET, DEFAULT_SEED, recognize_s3, residue_graph

log = logging.getLogger(__name__)


class ClassMismatch(ValueError):
    pass


class ResourceLimit(RuntimeError):
    pass


# -- connected sum ------------------------------------------------------------

@dataclass(frozen=True)
class SumSpec:
    """Join ``a`` at vertex ``va`` with ``b`` at vertex ``vb``.

    With ``reverse=False`` the two vertices lie in opposite bipartition
    classes, which keeps both orientations; ``reverse=True`` joins same-class
    vertices and reverses the orientation of ``b``.
    """
    a: Gem
    b: Gem
    va: int = 0
    vb: int | None = None
    reverse: bool = False


def connected_sum(spec):
    a, b = spec.a, spec.b
    if a.ncolors != b.ncolors:
        raise ValueError("gems have different numbers of colors")
    va, vb = spec.va, spec.vb
    if not 0 <= va < a.order:
        raise ValueError(f"vertex {va} not in the first gem")
    bpa, bpb = bipartition(a), bipartition(b)
    if bpa.bipartite and bpb.bipartite:
        want = bpa.classes[va] if spec.reverse else 1 - bpa.classes[va]
        if vb is None:
            vb = bpb.classes.index(want)
        elif bpb.classes[vb] != want:
            raise ClassMismatch(
                f"vertices {va} and {vb} are in {'different' if spec.reverse else 'the same'}"
                f" classes; {'same' if spec.reverse else 'opposite'}-class join requested")
    elif vb is None:
        vb = 0
    if not 0 <= vb < b.order:
        raise ValueError(f"vertex {vb} not in the second gem")
    keep_a = [u for u in range(a.order) if u != va]
    keep_b = [u for u in range(b.order) if u != vb]
    na = {u: i for i, u in enumerate(keep_a)}
    nb = {u: len(keep_a) + i for i, u in enumerate(keep_b)}
    n = a.order + b.order - 2
    rows = []
    for c in range(a.ncolors):
        row = [0] * n
        ra, rb = a.involutions[c], b.involutions[c]
        for u in keep_a:
            row[na[u]] = na[ra[u]] if ra[u] != va else nb[rb[vb]]
        for u in keep_b:
            row[nb[u]] = nb[rb[u]] if rb[u] != vb else na[ra[va]]
        rows.append(row)
    out = validate(n, rows, ncolors=a.ncolors)
    if a.ncolors == 5 and _simple_crystallization(a) and _simple_crystallization(b):
        assert _simple_crystallization(out), "sum of simple crystallizations is not simple"
    return out


def _simple_crystallization(g):
    t = residue_table(g)
    return all(v == 1 for v in t.g_hat.values()) and all(v == 1 for v in t.g_triple.values())


def gem_sum(a, b, va=0, vb=None, reverse=False):
    return connected_sum(SumSpec(a, b, va, vb, reverse))


# -- enumeration ----------------------------------------------------------------

@dataclass
class EnumerationTask:
    order: int
    simple: bool = True
    rigid: bool = False
    group: str = "vcr"
    jobs: int = 1
    seed: int = DEFAULT_SEED
    budget: int = DEFAULT_BUDGET
    time_limit: float | None = None

    def __post_init__(self):
        if self.order < 2 or self.order % 2:
            raise ValueError(f"order {self.order} is not even and positive")
        if not self.simple:
            raise ValueError("only simple crystallizations are enumerated")
        if self.group not in GROUPS:
            raise ValueError(f"unknown symmetry group {self.group!r}")
        if self.jobs < 1:
            raise ValueError("jobs must be positive")


@dataclass
class CatalogEntry:
    code: bytes
    gem: Gem
    report: object
    spheres: bool
    s3: list                  # verdict per hat-residue, colors 0..4
    key: tuple
    form: object = None

    @property
    def flagged(self):
        return any(v != "yes" for v in self.s3)

    def manifest(self):
        return {
            "canonical": self.code.hex(),
            "order": self.gem.order,
            "chi": self.report.chi,
            "betti": list(self.report.betti),
            "torsion": {str(d): list(t) for d, t in sorted(self.report.torsion.items())},
            "genus": self.report.genus.minimum,
            "spheres": self.spheres,
            "s3": self.s3,
            "flagged": self.flagged,
            "form": None if self.form is None else self.form.to_json(),
            "key": key_to_json(self.key),
        }


@dataclass
class EnumerationResult:
    task: EnumerationTask
    entries: list
    exhaustive: bool
    stats: dict = field(default_factory=dict)


def _partitions(n, parts, largest=None):
    largest = n if largest is None else largest
    if parts == 0:
        if n == 0:
            yield ()
        return
    for first in range(min(n - parts + 1, largest), 0, -1):
        for rest in _partitions(n - first, parts - 1, first):
            yield (first,) + rest


def _cycle_type_rep(shape):
    perm = []
    start = 0
    for length in shape:
        perm += [start + (i + 1) % length for i in range(length)]
        start += length
    return tuple(perm)


def _compose(a, b):
    """``a`` after ``b``."""
    return tuple(a[x] for x in b)


def _inverse(a):
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def _orbits(p, gens):
    seen = [False] * p
    count = 0
    for s in range(p):
        if seen[s]:
            continue
        count += 1
        stack = [s]
        seen[s] = True
        while stack:
            x = stack.pop()
            for g in gens:
                y = g[x]
                if not seen[y]:
                    seen[y] = True
                    stack.append(y)
    return count


def simple_targets(p):
    """Residue targets for simple crystallizations of order 2p, or None."""
    if (p - 1) % 3:
        return None
    beta = (p - 1) // 3
    return [beta + 1] * 25, [1] * 125


def subtasks(p, pair_t, triple_t):
    """``(sigma_1, sigma_2, candidates)`` work units, split after two colors."""
    target = pair_t[0 * 5 + 1]
    cands = [perm for perm in permutations(range(p)) if kernels.cycle_count(perm) == target]
    units = []
    for shape in _partitions(p, target):
        s1 = _cycle_type_rep(shape)
        cent = [c for c in permutations(range(p)) if _compose(c, s1) == _compose(s1, c)]
        cent_inv = [_inverse(c) for c in cent]
        for s2 in cands:
            if kernels.cycle_count(_compose(_inverse(s2), s1)) != pair_t[1 * 5 + 2]:
                continue
            if _orbits(p, (s1, s2)) != triple_t[0 * 25 + 1 * 5 + 2]:
                continue
            if min(_compose(c, _compose(s2, ci)) for c, ci in zip(cent, cent_inv)) != s2:
                continue
            units.append((s1, s2))
    return units, cands


def _run_unit(args):
    p, s1, s2, cands, pair_t, triple_t, group = args
    tails = kernels.search_tail(p, [s1, s2], [cands, cands], pair_t, triple_t)
    seeds_v = list(range(p))
    ident = [tuple(range(5))]
    perms = list(permutations(range(5))) if group != "v" else ident
    seeds = list(range(2 * p)) if group == "vcr" else seeds_v
    oriented = set()
    codes = set()
    ident_row = tuple(range(p))
    for s3, s4 in tails:
        flat = _flat(p, (ident_row, s1, s2, s3, s4))
        key = kernels.canonical_code(flat, 2 * p, seeds_v, ident)
        if key in oriented:
            continue
        oriented.add(key)
        codes.add(kernels.canonical_code(flat, 2 * p, seeds, perms))
    return len(tails), sorted(codes)


def _flat(p, sigmas):
    n = 2 * p
    out = []
    for s in sigmas:
        row = [0] * n
        for i, j in enumerate(s):
            row[i] = p + j
            row[p + j] = i
        out.extend(row)
    return out


def _progress_path(out_dir):
    return Path(out_dir) / "progress.jsonl"


def enumerate_codes(task, out_dir=None, resume=False):
    """Canonical codes of every simple crystallization of the task's order.

    Returns ``(codes, exhaustive, stats)``.
    """
    p = task.order // 2
    targets = simple_targets(p)
    stats = {"subtasks": 0, "leaves": 0, "ms": 0}
    if targets is None:
        return [], True, stats
    pair_t, triple_t = targets
    if p == 1:
        g = from_permutations([(0,)] * 5)
        return [canonical_form(g, task.group)], True, stats
    units, cands = subtasks(p, pair_t, triple_t)
    stats["subtasks"] = len(units)
    done = {}
    progress = None
    if out_dir is not None:
        Path(out_dir).mkdir(parents=True, exist_ok=True)
        path = _progress_path(out_dir)
        if resume and path.exists():
            for line in path.read_text().splitlines():
                rec = json.loads(line)
                if rec.get("order") == task.order and rec.get("group") == task.group:
                    done[rec["unit"]] = (rec["leaves"], [bytes.fromhex(c) for c in rec["codes"]])
        progress = path.open("a" if resume else "w")
    start = time.monotonic()
    todo = [i for i in range(len(units)) if i not in done]
    args = [(p, units[i][0], units[i][1], cands, pair_t, triple_t, task.group) for i in todo]
    exhaustive = True
    results = dict(done)

    def record(i, res):
        results[i] = res
        if progress is not None:
            progress.write(json.dumps({"order": task.order, "group": task.group, "unit": i,
                                       "leaves": res[0], "codes": [c.hex() for c in res[1]]}) + "\n")
            progress.flush()

    try:
        if task.jobs == 1:
            for i, a in zip(todo, args):
                if task.time_limit is not None and time.monotonic() - start > task.time_limit:
                    exhaustive = False
                    break
                record(i, _run_unit(a))
        else:
            with Pool(task.jobs) as pool:
                for i, res in zip(todo, pool.imap(_run_unit, args)):
                    record(i, res)
                    if task.time_limit is not None and time.monotonic() - start > task.time_limit:
                        exhaustive = False
                        pool.terminate()
                        break
    finally:
        if progress is not None:
            progress.close()
    codes = set()
    for leaves, cs in results.values():
        stats["leaves"] += leaves
        codes.update(cs)
    stats["ms"] = int((time.monotonic() - start) * 1000)
    return sorted(codes), exhaustive, stats


def residue_verdicts(gem, seed=DEFAULT_SEED, budget=DEFAULT_BUDGET, table=None):
    """``(spheres, s3)``: the 3-residue sphere test and one 3-sphere verdict per color.

    A color's verdict is ``"no"`` if some residue missing it is not a homology
    3-sphere, ``"yes"`` if every such residue reduces to order 2, else ``"unknown"``.
    """
    table = table or residue_table(gem)
    spheres = all(v.sphere for v in check_sphere_3residues(gem, table))
    s3 = []
    for missing in range(gem.ncolors):
        verdicts = [recognize_s3(r, seed, budget) for r in residue_graph(gem, missing)]
        if "no" in verdicts:
            s3.append("no")
        elif all(v == "yes" for v in verdicts):
            s3.append("yes")
        else:
            s3.append("unknown")
    return spheres, s3


def catalog_entry(code, group="vcr", seed=DEFAULT_SEED, budget=DEFAULT_BUDGET, verdicts=None):
    gem = decode(code)
    spheres, s3 = verdicts or residue_verdicts(gem, seed, budget)
    report = invariant_report(gem)
    form = intersection_form(gem) if report.bipartite else None
    return CatalogEntry(code, gem, report, spheres, s3, classification_key(report, form), form)


def _screen(args):
    code, task = args
    gem = decode(code)
    spheres, s3 = residue_verdicts(gem, task.seed, task.budget)
    if not spheres or "no" in s3:
        return None
    if task.rigid:
        from .moves import is_rigid_dipole_free
        if not is_rigid_dipole_free(gem):
            return None
    return catalog_entry(code, task.group, task.seed, task.budget, (spheres, s3))


def enumerate_gems(task, out_dir=None, resume=False):
    """Run the task and keep the manifold candidates, sorted by canonical form.

    Codes whose 3-residues are not all spheres, or with a 4-residue that is
    not a homology 3-sphere, are dropped.  Undecided residues are kept and
    the entry is flagged.
    """
    codes, exhaustive, stats = enumerate_codes(task, out_dir, resume)
    args = [(c, task) for c in codes]
    if task.jobs == 1:
        screened = map(_screen, args)
    else:
        pool = Pool(task.jobs)
        screened = pool.imap(_screen, args, chunksize=16)
    try:
        entries = [e for e in screened if e is not None]
    finally:
        if task.jobs != 1:
            pool.close()
            pool.join()
    stats["codes"] = len(codes)
    stats["classes"] = len(entries)
    stats["flagged"] = sum(e.flagged for e in entries)
    return EnumerationResult(task, entries, exhaustive, stats)


# -- classification ---------------------------------------------------------------

def classification_key(report, form=None):
    """Invariant key; the intersection form refines it on bipartite gems."""
    spectrum = tuple(report.genus.values[eps] for eps in cyclic_permutations()) if report.genus else None
    torsion = tuple(tuple(report.torsion[d]) for d in sorted(report.torsion))
    equal_pairs = len(set(report.g_pair.values())) == 1
    form_key = None if form is None else (form.rank, abs(form.signature), form.even)
    return (report.chi, tuple(report.betti), torsion, spectrum, equal_pairs, form_key)


def key_to_json(key):
    chi, betti, torsion, spectrum, equal_pairs, form_key = key
    return {
        "chi": chi,
        "betti": list(betti),
        "torsion": [list(t) for t in torsion],
        "genus_spectrum": None if spectrum is None else list(spectrum),
        "equal_pair_counts": equal_pairs,
        "form": None if form_key is None else
        {"rank": form_key[0], "abs_signature": form_key[1], "even": form_key[2]},
    }


def classify(entries):
    """Group entries by classification key, in order of first appearance."""
    groups = {}
    for e in entries:
        groups.setdefault(e.key, []).append(e)
    return groups
