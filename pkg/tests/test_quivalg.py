from fractions import Fraction

import pytest

from tiltkit import d2n
from tiltkit.errors import InputError, InvalidRelation, NotBasic, NotStabilized
from tiltkit.quivalg import (
    Arrow,
    FDAlgebra,
    Quiver,
    cartan_matrix,
    center,
    center_dimension,
    construct_algebra,
    find_presentation,
    identity_assignment,
    radical,
    radical_layers,
    recover_quiver,
    relation,
    self_injectivity,
    socle_of_projective,
    symmetry_report,
    verify_presentation,
)

import oracles

F = Fraction


def path_a2():
    return construct_algebra(Quiver(("1", "2"), (Arrow("a", "1", "2"),)), name="k(1->2)")


def loop_algebra(m):
    q = Quiver(("1",), (Arrow("x", "1", "1"),))
    return construct_algebra(q, [relation(q, (1, ["x"] * m))])


def point():
    return construct_algebra(Quiver(("1",)))


def two_points():
    return construct_algebra(Quiver(("1", "2")))


# construction ---------------------------------------------------------------


def test_a1_dim_matches_enumeration(a1_4):
    q, _ = d2n.a1_presentation(4)
    forbidden = {tuple(r.terms[0][1].arrows) for r in d2n.a1_presentation(4)[1]}
    assert a1_4.dim == 56 == oracles.monomial_dim(q, forbidden, 8) == oracles.a1_census(4)
    assert a1_4.nvertices == 8


def test_point_and_a2(a2_4):
    assert point().dim == 1
    assert a2_4.dim == 32 == oracles.a2_census(4)


def test_relations_vanish_and_axioms(a2_4):
    for r in a2_4.relations:
        assert a2_4.evaluate_relation(r).is_zero()
    a2_4.check_axioms()
    one = a2_4.one()
    for i in range(a2_4.dim):
        b = a2_4.basis_element(i)
        assert one * b == b == b * one


def test_alpha_power_n_vanishes_in_a2():
    for n in (4, 5):
        a = d2n.a2(n)
        word = [f"alpha{(k % n) + 1}" for k in range(n)]
        assert a.path_element(word).is_zero()
        assert not a.path_element(word[:-1]).is_zero()


def test_not_stabilized_loop():
    q = Quiver(("1",), (Arrow("x", "1", "1"),))
    with pytest.raises(NotStabilized):
        construct_algebra(q)
    with pytest.raises(NotStabilized):
        # nilpotent but beyond the cap
        construct_algebra(q, [relation(q, (1, ["x"] * 9))], max_len=4)


def test_invalid_relations():
    q = Quiver(("1", "2"), (Arrow("a", "1", "2"), Arrow("b", "2", "1")))
    with pytest.raises(InvalidRelation):
        relation(q, (1, ["a"]), (1, ["a", "b"]))
    with pytest.raises(InvalidRelation):
        relation(q, (1, ["a"]), (-1, ["a"]))
    with pytest.raises(InputError):
        relation(q, (1, ["a", "a"]))
    with pytest.raises(InputError):
        construct_algebra(q, [relation(q, (1, ["a", "b"]))], max_len=1)


def test_deterministic():
    x, y = d2n.a2(4), d2n.a2(4)
    assert x.basis_labels == y.basis_labels and x.table == y.table


def test_commutative_square():
    q = Quiver(("1", "2", "3", "4"), (Arrow("a", "1", "2"), Arrow("b", "2", "4"), Arrow("c", "1", "3"), Arrow("d", "3", "4")))
    a = construct_algebra(q, [relation(q, (1, ["a", "b"]), (-1, ["c", "d"]))])
    assert a.dim == 9
    assert a.path_element(["a", "b"]) == a.path_element(["c", "d"])


# invariants -------------------------------------------------------------------


def test_cartan(a1_4):
    c = cartan_matrix(a1_4)
    for i in range(8):
        zeros = [j for j in range(8) if c[i][j] == 0]
        assert len(zeros) == 1 and sum(c[i]) == 7
    assert cartan_matrix(point()) == [[1]]
    assert cartan_matrix(path_a2()) == [[1, 1], [0, 1]]
    assert sum(map(sum, c)) == a1_4.dim


def test_radical(a1_4):
    assert radical(a1_4).dim == 48
    assert radical(two_points()).dim == 0
    r = radical(loop_algebra(2))
    assert r.dim == 1 and r.contains({1: F(1)})


def test_radical_layers(a1_4):
    dims = [s.dim for s in radical_layers(a1_4)]
    assert dims == [48, 40, 32, 24, 16, 8, 0]
    assert [s.dim for s in radical_layers(two_points())] == [0]
    assert [s.dim for s in radical_layers(loop_algebra(3))] == [2, 1, 0]


def test_socles(a1_4, a2_4):
    for v in range(1, 9):
        s, iso = socle_of_projective(a1_4, str(v))
        assert s.dim == 1 and iso == [str((v + 1) % 8 + 1)]
    s, iso = socle_of_projective(path_a2(), "1")
    assert s.dim == 1 and iso == ["2"]
    s, iso = socle_of_projective(a2_4, "B1")
    assert s.dim == 1 and iso == ["B0"]


def test_self_injectivity(a2_4):
    assert not self_injectivity(path_a2()).self_injective
    perm = self_injectivity(a2_4).nakayama_permutation
    for i in range(1, 5):
        assert perm[f"C{i}"] == f"C{(i - 2) % 4 + 1}"
    for i in range(4):
        assert perm[f"B{i}"] == f"B{(i - 1) % 4}"


def test_not_basic():
    # k^{2x2} by structure constants, with one "vertex": dim A/J = 4
    labels = ["e11", "e12", "e21", "e22"]
    table = {}
    for i in range(2):
        for j in range(2):
            for k in range(2):
                table[(2 * i + j, 2 * j + k)] = {2 * i + k: F(1)}
    table[(0, 0)] = {0: F(1)}
    alg = FDAlgebra(["*"], labels, [(0, 0)] * 4, table, [0])
    with pytest.raises(NotBasic):
        self_injectivity(alg)


def test_symmetry_report(a1_4):
    assert symmetry_report(a1_4).verdict == "not symmetric"
    rep = symmetry_report(point())
    assert rep.verdict == "symmetric" and rep.frobenius_symmetric_witness == (F(1),)
    rep = symmetry_report(loop_algebra(2))
    assert rep.verdict == "symmetric"
    w = rep.frobenius_symmetric_witness
    assert w[1] != 0


def test_center(a1_4):
    assert center_dimension(two_points()) == 2
    assert center_dimension(point()) == 1
    z = center(a1_4)
    for v in z.sparse_basis():
        for i in range(a1_4.dim):
            b = {i: F(1)}
            assert a1_4.mul(v, b) == a1_4.mul(b, v)
    assert center_dimension(a1_4) == z.dim == 1


# presentations ----------------------------------------------------------------


def test_recover_quiver(a1_4):
    q = recover_quiver(a1_4)
    assert len(q.arrows) == 8
    assert sorted((a.source, a.target) for a in q.arrows) == sorted((str(v), str((v - 2) % 8 + 1)) for v in range(1, 9))
    assert recover_quiver(two_points()).arrows == ()


def test_verify_presentation(a1_4):
    vmap, amap = identity_assignment(a1_4)
    q, rels = d2n.a1_presentation(4)
    assert verify_presentation(a1_4, q, rels, vmap, amap)
    k = point()
    assert not verify_presentation(two_points(), k.quiver, [], {"1": "1"}, {})


def test_find_presentation_roundtrip():
    for a in (d2n.a2(4), loop_algebra(3), path_a2()):
        q, rels, amap = find_presentation(a)
        vmap = {v: v for v in a.vertices}
        assert verify_presentation(a, q, rels, vmap, amap)
