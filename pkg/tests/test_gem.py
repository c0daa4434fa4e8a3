import random
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from helpers import CORPUS, random_bipartite, random_gem
from crysta.gem import (Disconnected, FixedPoint, GemSyntaxError, NotInvolution, OddOrder,
                        bipartition, from_permutations, parse, residue_table, residues,
                        serialize, standard_gem, validate)


def test_standard_gem_counts(order2):
    t = residue_table(order2)
    assert set(t.g_pair.values()) == {1}
    assert set(t.g_triple.values()) == {1}
    assert set(t.g_hat.values()) == {1}
    assert order2 == standard_gem()


def test_round_trip_text(order8):
    assert parse(serialize(order8)) == order8


def test_comments_and_blank_lines():
    text = "gem v1\n# a comment\norder 2\n\n0: 0-1\n1: 0-1\n# mid\n2: 0-1\n3: 0-1\n4: 0-1\n"
    assert parse(text) == standard_gem()


@pytest.mark.parametrize("text, exc, line", [
    ("gem v2\norder 2\n", GemSyntaxError, 1),
    ("gem v1\nsize 2\n", GemSyntaxError, 2),
    ("gem v1\norder 2\n0: 0-1\nzero: 0-1\n", GemSyntaxError, 4),
    ("gem v1\norder 2\n0: 0-1\n0: 0-1\n", GemSyntaxError, 4),
])
def test_syntax_errors_carry_line(text, exc, line):
    with pytest.raises(exc) as info:
        parse(text)
    assert info.value.line == line


def test_odd_order():
    with pytest.raises(OddOrder):
        parse("gem v1\norder 3\n")


def test_fixed_point_names_color_and_vertex():
    rows = [[1, 0, 3, 2]] * 5
    rows = [list(r) for r in rows]
    rows[3] = [1, 0, 2, 3]          # not an involution without fixed points
    with pytest.raises((FixedPoint, NotInvolution)) as info:
        validate(4, rows)
    assert info.value.color == 3
    assert info.value.vertex == 2


def test_not_involution():
    rows = [[1, 0, 3, 2] for _ in range(5)]
    rows[1] = [1, 2, 3, 0]
    with pytest.raises(NotInvolution) as info:
        validate(4, rows)
    assert info.value.color == 1


def test_disconnected_lists_components():
    rows = [[1, 0, 3, 2] for _ in range(5)]
    with pytest.raises(Disconnected) as info:
        validate(4, rows)
    assert sorted(map(sorted, info.value.components)) == [[0, 1], [2, 3]]


@pytest.mark.parametrize("idx", range(len(CORPUS)))
def test_residue_counts_match_oracle(idx):
    g = CORPUS[idx]
    rows = [list(r) for r in g.involutions]
    for size in (1, 2, 3, 4, 5):
        for cs in combinations(range(5), size):
            assert residues(g, cs).count == oracles.residue_count(rows, cs), cs


@pytest.mark.parametrize("idx", range(len(CORPUS)))
def test_bipartition_matches_oracle(idx):
    g = CORPUS[idx]
    ref = oracles.two_coloring([list(r) for r in g.involutions])
    bp = bipartition(g)
    assert bp.bipartite == (ref is not None)
    if ref is not None:
        assert list(bp.classes) == ref
    else:
        cyc = bp.odd_cycle
        assert len(cyc) % 2 == 1
        adj = {(v, w) for _, v, w in g.edges()} | {(w, v) for _, v, w in g.edges()}
        assert all((cyc[i], cyc[(i + 1) % len(cyc)]) in adj for i in range(len(cyc)))


def test_from_permutations_is_bipartite():
    g = from_permutations([(0, 1), (1, 0), (0, 1), (1, 0), (1, 0)])
    assert bipartition(g).classes == (0, 0, 1, 1)


@st.composite
def gems_and_perms(draw):
    seed = draw(st.integers(0, 10**6))
    rng = random.Random(seed)
    if draw(st.booleans()):
        g = random_bipartite(rng, draw(st.integers(1, 5)))
    else:
        g = random_gem(rng, 2 * draw(st.integers(1, 5)))
    perm = draw(st.permutations(range(g.order)))
    colors = draw(st.permutations(range(5)))
    return g, list(perm), list(colors)


@settings(max_examples=60, deadline=None)
@given(gems_and_perms())
def test_residue_counts_invariant_under_relabeling(case):
    g, perm, _ = case
    h = g.relabel(perm)
    assert residue_table(h).g_pair == residue_table(g).g_pair
    assert residue_table(h).g_hat == residue_table(g).g_hat
    assert bipartition(h).bipartite == bipartition(g).bipartite


@settings(max_examples=60, deadline=None)
@given(gems_and_perms())
def test_recoloring_permutes_counts(case):
    g, _, colors = case
    h = g.recolor(colors)
    tg, th = residue_table(g), residue_table(h)
    # color c of h is color colors[c] of g
    for (i, j), n in th.g_pair.items():
        assert n == tg.pair(colors[i], colors[j])
    for (i, j, k), n in th.g_triple.items():
        assert n == tg.triple(colors[i], colors[j], colors[k])


@settings(max_examples=40, deadline=None)
@given(gems_and_perms())
def test_serialize_round_trip(case):
    g, perm, _ = case
    h = g.relabel(perm)
    assert parse(serialize(h)) == h
