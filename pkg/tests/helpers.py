"""Fixture loading and random gem generators shared by the tests."""
import random
from pathlib import Path

from crysta.gem import GemError, from_permutations, parse, validate

DATA = Path(__file__).parent / "data"


def load(name):
    return parse((DATA / name).read_text())


def random_bipartite(rng, p, ncolors=5):
    while True:
        sigmas = [tuple(range(p))]
        for _ in range(ncolors - 1):
            s = list(range(p))
            rng.shuffle(s)
            sigmas.append(tuple(s))
        try:
            return from_permutations(sigmas)
        except GemError:
            continue


def random_involution(rng, n):
    verts = list(range(n))
    rng.shuffle(verts)
    row = [0] * n
    for i in range(0, n, 2):
        a, b = verts[i], verts[i + 1]
        row[a], row[b] = b, a
    return row


def random_gem(rng, n, ncolors=5):
    while True:
        try:
            return validate(n, [random_involution(rng, n) for _ in range(ncolors)], ncolors)
        except GemError:
            continue


def relabeled(g, rng):
    perm = list(range(g.order))
    rng.shuffle(perm)
    return g.relabel(perm)


def corpus(seed=7):
    """Deterministic set of 5-colored graphs of order at most 8."""
    rng = random.Random(seed)
    out = [load("order2.gem"), load("order8.gem"), load("torus_residue.gem")]
    for _ in range(6):
        out.append(relabeled(load("order8.gem"), rng))
    for p in (2, 3, 4):
        for _ in range(10):
            out.append(random_bipartite(rng, p))
    for n in (4, 6, 8):
        for _ in range(6):
            out.append(random_gem(rng, n))
    return out


CORPUS = corpus()
