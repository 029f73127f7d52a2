import random

import pytest

from tiltkit import d2n
from tiltkit.errors import (
    ComplexMismatch,
    InputError,
    NotBasicDecomposition,
    NotIndecomposable,
    NotTwoTerm,
)
from tiltkit.homotopy import (
    BoundedComplex,
    ChainMap,
    HomotopyClass,
    ProjMap,
    ProjModule,
    chain_maps,
    compose,
    endomorphism_algebra,
    hom_space,
    homotopy_hom,
    is_indecomposable,
    stalk,
    summands_pairwise_noniso,
    two_term_tilting_check,
)
from tiltkit.quivalg import recover_quiver

import oracles
import randgen


def P(a, *vs):
    return ProjModule(a, tuple(str(v) for v in vs))


def test_hom_space_table(a1_4):
    assert len(hom_space(P(a1_4, 3), P(a1_4, 2))) == 0
    assert len(hom_space(P(a1_4, 1), P(a1_4, 8))) == 0
    assert len(hom_space(P(a1_4, 2), P(a1_4, 5))) == 1
    assert len(hom_space(P(a1_4, 1, 2), P(a1_4, 5))) == 2


def test_projmap_grading_checked(a1_4):
    with pytest.raises(InputError):
        # a2 lies in e_2 A e_1, not in e_5 A e_1
        ProjMap(P(a1_4, 1), P(a1_4, 5), {(0, 0): a1_4.path_element(["a2"])})


def test_d_squared_rejected(a1_4):
    mods = {2: P(a1_4, 1), 1: P(a1_4, 2), 0: P(a1_4, 3)}
    d2 = ProjMap(mods[2], mods[1], {(0, 0): a1_4.path_element(["a2"])})
    d1 = ProjMap(mods[1], mods[0], {(0, 0): a1_4.path_element(["a3"])})
    with pytest.raises(InputError):
        BoundedComplex(a1_4, mods, {2: d2, 1: d1})


def three_term(a):
    mods = {2: P(a, 1), 1: P(a, 2), 0: P(a, 8)}
    d2 = ProjMap(mods[2], mods[1], {(0, 0): a.path_element(["a2"])})
    d1 = ProjMap(mods[1], mods[0], {(0, 0): a.path_element(["a8", "a7", "a6", "a5", "a4", "a3"])})
    return BoundedComplex(a, mods, {2: d2, 1: d1})


def test_chain_maps_stalk(a1_4):
    x = stalk(a1_4, ["3"])
    assert chain_maps(x, x, 0).dim == len(a1_4.block(2, 2))
    y = build_p1_part(a1_4, "B0")
    assert chain_maps(y, y, 2).dim == 0 and chain_maps(y, y, -2).dim == 0


def build_p1_part(a, name):
    from tiltkit.tiltbench import build_two_term

    return build_two_term(d2n.p1_datum(4, a)).summand(name)


def test_b0_b1_maps_die_in_homotopy(p1_4):
    b0, b1 = p1_4.summand("B0"), p1_4.summand("B1")
    assert chain_maps(b0, b1, 0).dim > 0
    assert homotopy_hom(b0, b1, 0).dim == 0


def test_c_to_b_nonzero_b_to_b_zero(p1_4):
    for i in range(1, 5):
        c, b = p1_4.summand(f"C{i}"), p1_4.summand(f"B{i - 1}")
        assert homotopy_hom(c, b, 0).dim >= 1
        assert homotopy_hom(p1_4.summand(f"B{i - 1}"), p1_4.summand(f"B{i % 4}"), 0).dim == 0


def test_disjoint_support(p1_4):
    for k in (2, -2, 3, -3):
        assert homotopy_hom(p1_4, p1_4, k).dim == 0


def test_three_term_complex(a1_4):
    x = three_term(a1_4)
    sp = homotopy_hom(x, x, 0)
    assert sp.dim >= 1
    assert not sp.is_null_homotopic(ChainMap.identity(x))
    for f in sp.representatives():
        assert f.is_chain_map()
    for shift in (-2, -1, 1, 2):
        for f in homotopy_hom(x, x, shift).representatives():
            assert f.is_chain_map()


def test_contractible_complex(a1_4):
    m = P(a1_4, 4)
    x = BoundedComplex(a1_4, {1: m, 0: m}, {1: ProjMap.identity(m)})
    assert homotopy_hom(x, x, 0).dim == 0
    assert not is_indecomposable(x)


def test_null_homotopies_are_chain_maps():
    rng = random.Random(5)
    a = d2n.a1(4)
    for _ in range(5):
        x, y = randgen.random_two_term(rng, a), randgen.random_two_term(rng, a)
        for shift in (-1, 0, 1):
            sp = homotopy_hom(x, y, shift)
            h = sp.random_null_homotopic(rng)
            assert h.is_chain_map() and sp.is_null_homotopic(h)


def test_hom_dims_match_dense_oracle():
    rng = random.Random(11)
    a = d2n.a1(4)
    for _ in range(6):
        x, y = randgen.random_two_term(rng, a), randgen.random_two_term(rng, a)
        for shift in (-1, 0, 1):
            assert homotopy_hom(x, y, shift).dim == oracles.two_term_hom_dim(x, y, shift)


def test_compose_identity_and_mismatch(p1_4):
    c1, b0 = p1_4.summand("C1"), p1_4.summand("B0")
    (f,) = homotopy_hom(c1, b0, 0).representatives()
    cls = HomotopyClass(f)
    assert compose(HomotopyClass.identity(b0), cls) == cls
    assert compose(cls, HomotopyClass.identity(c1)) == cls
    with pytest.raises(ComplexMismatch):
        compose(cls, cls)


def test_compose_representative_independent():
    rng = random.Random(7)
    a = d2n.a1(4)
    for _ in range(4):
        x, y, z = (randgen.random_two_term(rng, a) for _ in range(3))
        fs = homotopy_hom(x, y, 0).representatives()
        gs = homotopy_hom(y, z, 0).representatives()
        for f in fs[:2]:
            for g in gs[:2]:
                base = compose(HomotopyClass(g), HomotopyClass(f))
                f2 = f + homotopy_hom(x, y, 0).random_null_homotopic(rng)
                g2 = g + homotopy_hom(y, z, 0).random_null_homotopic(rng)
                assert compose(HomotopyClass(g2), HomotopyClass(f2)) == base


def test_endomorphism_algebra_p1(end_4, a2_4):
    e = end_4.algebra
    assert e.dim == 32 == a2_4.dim
    assert set(e.vertices) == {f"B{i}" for i in range(4)} | {f"C{i}" for i in range(1, 5)}
    e.check_axioms()
    q = recover_quiver(e)
    edges = sorted((a.source, a.target) for a in q.arrows)
    assert edges == sorted((a.source, a.target) for a in a2_4.quiver.arrows)


def test_endomorphism_algebra_stalk(a1_4):
    x = stalk(a1_4, ["2"]).with_default_summands()
    e = endomorphism_algebra(x)
    assert e.algebra.dim == len(a1_4.block(1, 1))


def test_endomorphism_algebra_c1_c2(p1_4):
    x = p1_4.summand("C1").direct_sum(p1_4.summand("C2"))
    e = endomorphism_algebra(x)
    assert e.algebra.nvertices == 2
    assert e.algebra.dim == sum(homotopy_hom(u, v, 0).dim for u in e.parts.values() for v in e.parts.values())
    # no intermediate objects: every nonzero Hom between distinct summands is an arrow
    q = recover_quiver(e.algebra)
    want = [(u, v) for u in ("C1", "C2") for v in ("C1", "C2") if u != v and homotopy_hom(e.parts[u], e.parts[v], 0).dim]
    assert sorted((a.source, a.target) for a in q.arrows) == want == [("C1", "C2"), ("C2", "C1")]


def test_endomorphism_algebra_not_basic(p1_4):
    c1 = p1_4.summand("C1")
    with pytest.raises(NotBasicDecomposition):
        endomorphism_algebra(c1.direct_sum(c1))


def test_indecomposable(p1_4, a1_4):
    for i in range(4):
        assert is_indecomposable(p1_4.summand(f"B{i}"))
    assert not is_indecomposable(p1_4.summand("B0").direct_sum(p1_4.summand("C1")))
    for v in a1_4.vertices:
        assert is_indecomposable(stalk(a1_4, [v]))


def test_pairwise_noniso(p1_4):
    parts = p1_4.summand_complexes()
    assert summands_pairwise_noniso(parts)
    c1 = p1_4.summand("C1")
    assert not summands_pairwise_noniso([c1, p1_4.summand("C1")])
    assert summands_pairwise_noniso([p1_4.summand("B0"), c1])
    with pytest.raises(NotIndecomposable):
        summands_pairwise_noniso([p1_4.summand("B0").direct_sum(c1)])


def test_isomorphic_copies_detected():
    rng = random.Random(3)
    a = d2n.a1(4)
    x = build_p1_part(a, "B2")
    y = randgen.conjugate(rng, x)
    assert not summands_pairwise_noniso([x, y])


def test_tilting_check(p1_4, a1_4):
    rep = two_term_tilting_check(p1_4)
    assert rep.tilting and rep.presilting and rep.no_negative and rep.summand_count_ok
    assert two_term_tilting_check(stalk(a1_4, a1_4.vertices)).tilting
    rep = two_term_tilting_check(p1_4.summand("C1"))
    assert not rep.summand_count_ok and not rep.tilting
    x = BoundedComplex(a1_4, {2: P(a1_4, 1), 0: P(a1_4, 1)})
    with pytest.raises(NotTwoTerm):
        two_term_tilting_check(x)


def test_summand_declaration_checked(a1_4):
    from tiltkit.homotopy import Summand

    m = P(a1_4, 1, 2)
    with pytest.raises(InputError):
        BoundedComplex(a1_4, {0: m}, summands=[Summand("x", {0: (0,)})])
    l1, l0 = P(a1_4, 1), P(a1_4, 2, 3)
    d = ProjMap(l1, l0, {(0, 0): a1_4.path_element(["a2"])})
    with pytest.raises(InputError):
        # the differential mixes the two declared summands
        BoundedComplex(a1_4, {1: l1, 0: l0}, {1: d}, [Summand("u", {1: (0,), 0: (1,)}), Summand("v", {0: (0,)})])
