import pytest

import oracles
from helpers import CORPUS, load
from crysta.complex import (NotContracted, build_complex, homology, intersection_form,
                            is_simple, one_skeleton)
from crysta.construct import gem_sum
from crysta.gem import bipartition, is_contracted
from crysta.invariants import euler_characteristic


def test_order2_face_vector(order2):
    k = build_complex(order2)
    assert k.face_vector == (5, 10, 10, 5, 2)
    assert homology(k).betti == (1, 0, 0, 0, 1)


def test_order8_face_vector(order8):
    k = build_complex(order8)
    assert k.face_vector == (5, 10, 20, 20, 8)
    hom = homology(k)
    assert hom.betti == (1, 0, 1, 0, 1)
    assert not any(hom.torsion.values())


def test_boundary_squares_to_zero(order16):
    k = build_complex(order16)
    for d in range(2, 5):
        a, b = k.boundary_matrix(d - 1), k.boundary_matrix(d)
        prod = [[sum(a[i][t] * b[t][j] for t in range(len(b))) for j in range(len(b[0]))]
                for i in range(len(a))]
        assert not any(any(r) for r in prod)


@pytest.mark.parametrize("idx", range(len(CORPUS)))
def test_homology_ranks_match_sympy(idx):
    g = CORPUS[idx]
    k = build_complex(g)
    ranks = [0] + [oracles.rank(k.boundary_matrix(d)) for d in range(1, 5)] + [0]
    betti = tuple(k.face_vector[d] - ranks[d] - ranks[d + 1] for d in range(5))
    hom = homology(k)
    assert hom.betti == betti
    for d in range(4):
        ref = [x for x in oracles.invariant_factors(k.boundary_matrix(d + 1)) if x > 1]
        assert sorted(hom.torsion[d]) == ref


@pytest.mark.parametrize("idx", range(len(CORPUS)))
def test_euler_characteristic_two_ways(idx):
    g = CORPUS[idx]
    assert euler_characteristic(g) == build_complex(g).euler_characteristic()


@pytest.mark.parametrize("idx", range(len(CORPUS)))
def test_simple_iff_ten_skeleton_edges(idx):
    g = CORPUS[idx]
    if not is_contracted(g):
        with pytest.raises(NotContracted):
            is_simple(g)
        return
    _, m = one_skeleton(build_complex(g))
    edges = sum(m[a][b] for a in range(5) for b in range(a + 1, 5))
    single = all(m[a][b] == 1 for a in range(5) for b in range(a + 1, 5))
    assert is_simple(g).simple == (edges == 10 and single)


@pytest.mark.parametrize("idx", range(len(CORPUS)))
def test_bipartite_manifold_duality(idx):
    g = CORPUS[idx]
    hom = homology(build_complex(g))
    assert hom.betti[0] == 1
    if bipartition(g).bipartite:
        # an orientable pseudomanifold has a fundamental class
        assert hom.betti[4] == 1


def test_non_simple_witness(order16):
    cert = is_simple(order16)
    assert not cert.simple
    assert cert.witness == (1, 2, 3)
    assert cert.g_triple[(1, 2, 3)] == 2
    assert sorted(cert.g_triple.values()) == [1] * 9 + [2]


class TestIntersectionForm:
    def test_sphere(self, order2):
        f = intersection_form(order2)
        assert (f.rank, f.signature, f.even) == (0, 0, True)

    def test_cp2(self, order8):
        f = intersection_form(order8)
        assert f.rank == 1 and abs(f.signature) == 1 and not f.even

    def test_s2xs2(self, order16):
        f = intersection_form(order16)
        assert (f.rank, f.signature, f.even) == (2, 0, True)

    def test_positive_vertex_flips_sign(self, order8):
        other = bipartition(order8).classes.index(1)
        assert intersection_form(order8, positive=other).signature == \
            -intersection_form(order8).signature

    def test_signature_additive_under_sum(self, order8):
        c = order8
        sc = intersection_form(c).signature
        # in gem_sum(a, b) vertex u != va of a becomes u - (u > va)
        keep = next(u for u in range(1, c.order) if bipartition(c).classes[u] == 0)
        pos = keep - 1
        same = gem_sum(c, c)
        rev = gem_sum(c, c, reverse=True)
        assert intersection_form(same, positive=pos).signature == 2 * sc
        assert intersection_form(rev, positive=pos).signature == 0

    def test_rank_is_beta2(self, order16):
        assert intersection_form(order16).rank == homology(build_complex(order16)).betti[2]


def test_fixture_files_parse():
    for name in ("order2.gem", "order8.gem", "order16_nonsimple.gem", "torus_residue.gem"):
        assert load(name).ncolors == 5
