"""The self-injective cluster-tilted algebras of type D_2n and the two-term
tilting complex relating them.

Vertex and arrow names
----------------------
``a1(n)``: vertices ``"1" .. "2n"``; arrow ``a{v}: v -> v-1`` (indices mod
2n, written in ``1..2n``).  All paths of length ``2n-1`` vanish.

``a2(n)``: vertices ``C1..Cn`` and ``B0..B{n-1}``; arrows

* ``alpha{i}: C_i -> C_{i+1}`` (cyclically),
* ``gamma{i}: C_i -> B_{i-1}``,
* ``beta{i}: B_i -> C_i`` for ``0 < i < n`` and ``beta0: B_0 -> C_n``.

The relations are usually written in composition order as
``alpha^(n-1) - beta gamma``, ``alpha beta`` and ``gamma alpha``; since
paths here compose left to right they are stored with the words reversed
(see :data:`FUNCTIONAL_WORDS`).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import InputError, TiltkitError
from .homotopy import ChainMap, EndomorphismAlgebra, ProjMap, ProjModule, Summand, hom_basis
from .quivalg import (
    AlgebraElement,
    Arrow,
    FDAlgebra,
    Quiver,
    Relation,
    construct_algebra,
)
from .tiltbench import ApproximationDatum, Candidate, EquivalenceReport, run_pipeline

# the three relation words in composition (right-to-left) order, per C_i / B_i
FUNCTIONAL_WORDS = ("alpha^(n-1) - beta.gamma", "alpha.beta", "gamma.alpha")


def _check_n(n: int) -> None:
    if not isinstance(n, int) or n < 4:
        raise InputError(f"n must be an integer >= 4, got {n!r}")


def _cyc(v: int, m: int) -> int:
    """Reduce ``v`` into ``1..m``."""
    return (v - 1) % m + 1


# ---------------------------------------------------------------------------
# A_1(n)


def a1_presentation(n: int):
    _check_n(n)
    m = 2 * n
    vertices = tuple(str(v) for v in range(1, m + 1))
    arrows = tuple(Arrow(f"a{v}", str(v), str(_cyc(v - 1, m))) for v in range(1, m + 1))
    q = Quiver(vertices, arrows)
    rels = []
    for v in range(1, m + 1):
        word = tuple(f"a{_cyc(v - k, m)}" for k in range(m - 1))
        rels.append(Relation(((Fraction(1), q.path(word)),)))
    return q, rels


def a1(n: int, max_len: Optional[int] = None) -> FDAlgebra:
    q, rels = a1_presentation(n)
    return construct_algebra(q, rels, max_len=max_len, name=f"A1({n})")


# ---------------------------------------------------------------------------
# A_2(n)


def _c(i: int, n: int) -> str:
    return f"C{_cyc(i, n)}"


def _b(i: int, n: int) -> str:
    return f"B{i % n}"


def a2_presentation(n: int):
    _check_n(n)
    vertices = tuple(f"C{i}" for i in range(1, n + 1)) + tuple(f"B{i}" for i in range(n))
    arrows = []
    for i in range(1, n + 1):
        arrows.append(Arrow(f"alpha{i}", _c(i, n), _c(i + 1, n)))
    for i in range(1, n + 1):
        arrows.append(Arrow(f"gamma{i}", _c(i, n), _b(i - 1, n)))
    for i in range(n):
        arrows.append(Arrow(f"beta{i}", _b(i, n), _c(i, n)))
    q = Quiver(vertices, tuple(arrows))
    rels = []
    for i in range(1, n + 1):
        # beta.gamma = alpha^(n-1) on C_i, read left to right: gamma then beta
        alphas = tuple(f"alpha{_cyc(i + k, n)}" for k in range(n - 1))
        rels.append(
            Relation(
                (
                    (Fraction(1), q.path(alphas)),
                    (Fraction(-1), q.path((f"gamma{i}", f"beta{(i - 1) % n}"))),
                )
            )
        )
    for i in range(n):
        # alpha.beta = 0: beta then alpha
        rels.append(Relation(((Fraction(1), q.path((f"beta{i}", f"alpha{_cyc(i, n)}"))),)))
    for i in range(1, n + 1):
        # gamma.alpha = 0: alpha then gamma
        rels.append(Relation(((Fraction(1), q.path((f"alpha{i}", f"gamma{_cyc(i + 1, n)}"))),)))
    return q, rels


def a2(n: int, max_len: Optional[int] = None) -> FDAlgebra:
    q, rels = a2_presentation(n)
    return construct_algebra(q, rels, max_len=max_len, name=f"A2({n})")


# ---------------------------------------------------------------------------
# the complex P_1 and the comparison with A_2(n)


def hom_table(a: FDAlgebra) -> dict:
    """``dim Hom(P(i), P(j)) = dim e_j A e_i`` for all vertex pairs."""
    out = {}
    for i in a.vertices:
        for j in a.vertices:
            out[(i, j)] = len(hom_basis(ProjModule(a, (i,)), ProjModule(a, (j,))))
    return out


def expected_hom_dim(n: int, i: int, j: int) -> int:
    """Closed form of the table for ``A_1(n)``: 0 iff ``j = i - 1`` mod 2n."""
    return 0 if _cyc(i - 1, 2 * n) == _cyc(j, 2 * n) else 1


def p1_datum(n: int, a: Optional[FDAlgebra] = None) -> ApproximationDatum:
    """``B_i = P(2i+1) -> P(2i+2)`` for ``0 <= i < n`` and ``C_j = 0 -> P(2j)``."""
    _check_n(n)
    if a is None:
        a = a1(n)
    m = 2 * n
    l1 = ProjModule(a, tuple(str(_cyc(2 * i + 1, m)) for i in range(n)))
    l0 = ProjModule(
        a,
        tuple(str(_cyc(2 * i + 2, m)) for i in range(n)) + tuple(str(2 * j) for j in range(1, n + 1)),
    )
    entries = {}
    for i in range(n):
        # the arrow 2i+2 -> 2i+1 spans e_(2i+2) A e_(2i+1)
        entries[(i, i)] = a.path_element([f"a{_cyc(2 * i + 2, m)}"])
    phi = ProjMap(l1, l0, entries)
    summands = [Summand(f"B{i}", {1: (i,), 0: (i,)}) for i in range(n)]
    summands += [Summand(f"C{j}", {0: (n + j - 1,)}) for j in range(1, n + 1)]
    return ApproximationDatum(a, l1, l0, phi, summands, name=f"P1({n})")


def _path_down(a: FDAlgebra, start: int, length: int, m: int) -> AlgebraElement:
    return a.path_element([f"a{_cyc(start - k, m)}" for k in range(length)])


def _degree0_map(end: EndomorphismAlgebra, src: str, tgt: str, x: AlgebraElement) -> ChainMap:
    s, t = end.parts[src], end.parts[tgt]
    return ChainMap(s, t, 0, {0: ProjMap(s.module(0), t.module(0), {(0, 0): x})})


def canonical_chain_maps(n: int, end: EndomorphismAlgebra) -> dict:
    """Unnormalized representatives: ``gamma_i`` is the identity of
    ``P(2i)``, ``alpha_i`` the length-2 path and ``beta_i`` the
    length-(2n-2) path, all in degree 0."""
    a = end.complex.algebra
    m = 2 * n
    out = {}
    for i in range(1, n + 1):
        out[f"gamma{i}"] = _degree0_map(end, f"C{i}", f"B{i - 1}", a.e(str(2 * i)))
        out[f"alpha{i}"] = _degree0_map(end, f"C{i}", _c(i + 1, n), _path_down(a, 2 * i + 2, 2, m))
    for i in range(n):
        tgt = 2 * i if i else m
        out[f"beta{i}"] = _degree0_map(end, f"B{i}", _c(i, n), _path_down(a, tgt, m - 2, m))
    return out


def _ratio(x: dict, y: dict) -> Optional[Fraction]:
    """``c`` with ``c * x == y`` or ``None``."""
    if not x:
        return None
    k = min(x)
    c = y.get(k, Fraction(0)) / x[k]
    if any(c * v != y.get(j, 0) for j, v in x.items()) or any(j not in x for j in y):
        return None
    return c


def canonical_assignment(n: int, end: EndomorphismAlgebra) -> tuple:
    """Vertex and arrow maps ``A_2(n) -> End(P_1(n))``.

    The scalar of each ``beta`` is solved from ``gamma beta = alpha^(n-1)``
    (left to right); with the monomial representatives it is 1.
    """
    maps = canonical_chain_maps(n, end)
    elems = {k: end.element(f) for k, f in maps.items()}
    scalars = {}
    for i in range(1, n + 1):
        b = f"beta{(i - 1) % n}"
        lhs = elems[f"gamma{i}"] * elems[b]
        rhs = elems[f"alpha{i}"]
        for k in range(1, n - 1):
            rhs = rhs * elems[f"alpha{_cyc(i + k, n)}"]
        c = _ratio(lhs.vec, rhs.vec)
        if c is None or c == 0:
            raise TiltkitError(f"gamma{i} beta is not a nonzero multiple of alpha^(n-1)")
        scalars[b] = c
    for b, c in scalars.items():
        elems[b] = c * elems[b]
    vmap = {v: v for v in end.names}
    return vmap, elems, scalars


@dataclass
class D2nInstance:
    n: int
    a1: FDAlgebra
    a2: FDAlgebra
    datum: ApproximationDatum
    candidate: Candidate

    @classmethod
    def build(cls, n: int, max_len: Optional[int] = None) -> "D2nInstance":
        _check_n(n)
        alg1 = a1(n, max_len=max_len)
        alg2 = a2(n, max_len=max_len)
        q, rels = a2_presentation(n)

        def assign(end):
            vmap, amap, _ = canonical_assignment(n, end)
            return vmap, amap

        return cls(n, alg1, alg2, p1_datum(n, alg1), Candidate(q, rels, assign, name=f"A2({n})"))


def run_demo(n: int, max_len: Optional[int] = None) -> EquivalenceReport:
    inst = D2nInstance.build(n, max_len=max_len)
    return run_pipeline(inst.datum, inst.candidate, max_len=max_len)
