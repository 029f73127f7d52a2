"""Finite-dimensional algebras given by quivers with relations.

Conventions
-----------
Paths compose left to right: for arrows ``a: u -> v`` and ``b: v -> w`` the
product ``a*b`` is the path ``u -> v -> w``.  Consequently ``e_u * p * e_v
== p`` for a path ``p`` from ``u`` to ``v``, the right projective
``P(v) = e_v A`` is spanned by the paths starting at ``v`` and

    Hom_A(P(i), P(j)) = e_j A e_i

(a map is left multiplication by an element of ``e_j A e_i``).

An :class:`FDAlgebra` is stored by structure constants over a basis that
is graded by vertex pairs: every basis element ``b`` has a grade ``(u, v)``
with ``e_u b e_v = b``.  Algebras built from a presentation additionally
remember the basis paths and can put arbitrary paths into normal form.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from .errors import InputError, InvalidRelation, NotBasic, NotStabilized, TiltkitError
from .exactla import (
    Echelon,
    Sparse,
    Subspace,
    as_fraction,
    axpy,
    dense_from_sparse,
    kernel_sparse,
    scaled,
    sparse_from_dense,
)


# ---------------------------------------------------------------------------
# quivers, paths, relations


@dataclass(frozen=True)
class Arrow:
    id: str
    source: str
    target: str


@dataclass(frozen=True)
class Quiver:
    vertices: tuple
    arrows: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(str(v) for v in self.vertices))
        arrows = tuple(a if isinstance(a, Arrow) else Arrow(*a) for a in self.arrows)
        object.__setattr__(self, "arrows", arrows)
        if not self.vertices:
            raise InputError("a quiver needs at least one vertex")
        if len(set(self.vertices)) != len(self.vertices):
            raise InputError("vertex labels must be unique")
        if len({a.id for a in arrows}) != len(arrows):
            raise InputError("arrow ids must be unique")
        vs = set(self.vertices)
        for a in arrows:
            if a.source not in vs or a.target not in vs:
                raise InputError(f"arrow {a.id} has an undeclared endpoint")

    @property
    def arrow(self) -> dict:
        return {a.id: a for a in self.arrows}

    def vertex_index(self, v) -> int:
        return self.vertices.index(v)

    def outgoing(self, v) -> list:
        return [a for a in self.arrows if a.source == v]

    def incoming(self, v) -> list:
        return [a for a in self.arrows if a.target == v]

    def path(self, arrow_ids: Sequence[str] = (), start: Optional[str] = None) -> "Path":
        arrow_ids = tuple(arrow_ids)
        amap = self.arrow
        if not arrow_ids:
            if start is None or start not in self.vertices:
                raise InputError("a trivial path needs a declared start vertex")
            return Path(start, (), start)
        for a in arrow_ids:
            if a not in amap:
                raise InputError(f"unknown arrow {a!r}")
        for a, b in zip(arrow_ids, arrow_ids[1:]):
            if amap[a].target != amap[b].source:
                raise InputError(f"arrows {a} and {b} are not composable")
        s = amap[arrow_ids[0]].source
        if start is not None and start != s:
            raise InputError(f"path does not start at {start}")
        return Path(s, arrow_ids, amap[arrow_ids[-1]].target)

    def is_acyclic(self) -> bool:
        indeg = {v: 0 for v in self.vertices}
        for a in self.arrows:
            indeg[a.target] += 1
        stack = [v for v, d in indeg.items() if d == 0]
        seen = 0
        while stack:
            v = stack.pop()
            seen += 1
            for a in self.outgoing(v):
                indeg[a.target] -= 1
                if indeg[a.target] == 0:
                    stack.append(a.target)
        return seen == len(self.vertices)

    def full_subquiver(self, keep: Iterable[str]) -> "Quiver":
        keep = set(keep)
        return Quiver(
            tuple(v for v in self.vertices if v in keep),
            tuple(a for a in self.arrows if a.source in keep and a.target in keep),
        )


@dataclass(frozen=True)
class Path:
    start: str
    arrows: tuple
    end: str

    def __len__(self) -> int:
        return len(self.arrows)

    def __str__(self) -> str:
        if not self.arrows:
            return f"e_{self.start}"
        return "*".join(self.arrows)

    def vertices(self, quiver: Quiver) -> list:
        amap = quiver.arrow
        return [self.start] + [amap[a].target for a in self.arrows]


@dataclass(frozen=True)
class Relation:
    """A linear combination of parallel paths."""

    terms: tuple  # ((Fraction, Path), ...)

    def __post_init__(self):
        merged: dict = {}
        for c, p in self.terms:
            merged[p] = merged.get(p, Fraction(0)) + as_fraction(c)
        terms = tuple((c, p) for p, c in merged.items() if c)
        if not terms:
            raise InvalidRelation("relation has no nonzero terms")
        ends = {(p.start, p.end) for _, p in terms}
        if len(ends) != 1:
            raise InvalidRelation("relation terms are not parallel paths")
        object.__setattr__(self, "terms", terms)

    @property
    def source(self) -> str:
        return self.terms[0][1].start

    @property
    def target(self) -> str:
        return self.terms[0][1].end

    @property
    def max_length(self) -> int:
        return max(len(p) for _, p in self.terms)

    def __str__(self) -> str:
        parts = []
        for c, p in self.terms:
            parts.append(f"{c}*{p}" if c != 1 else str(p))
        return " + ".join(parts)


def relation(quiver: Quiver, *terms) -> Relation:
    """Shorthand: ``relation(q, (1, ["a", "b"]), (-1, ["c"]))``."""
    return Relation(tuple((as_fraction(c), quiver.path(p)) for c, p in terms))


def opposite_presentation(quiver: Quiver, relations: Sequence[Relation]):
    """Presentation of the opposite algebra (arrows and words reversed)."""
    opq = Quiver(quiver.vertices, tuple(Arrow(a.id, a.target, a.source) for a in quiver.arrows))
    rels = [
        Relation(tuple((c, opq.path(tuple(reversed(p.arrows)), start=p.end)) for c, p in r.terms))
        for r in relations
    ]
    return opq, rels


# ---------------------------------------------------------------------------
# algebras by structure constants


class FDAlgebra:
    """Finite-dimensional algebra with a vertex-graded basis.

    ``table[(i, j)]`` is the sparse expansion of ``b_i * b_j``; missing
    keys are zero products.  ``idempotents[k]`` is the basis index of the
    vertex idempotent of ``vertices[k]``.
    """

    def __init__(
        self,
        vertices: Sequence[str],
        basis_labels: Sequence[str],
        grading: Sequence[tuple],
        table: Mapping,
        idempotents: Sequence[int],
        *,
        quiver: Optional[Quiver] = None,
        relations: Sequence[Relation] = (),
        paths: Optional[Sequence[Path]] = None,
        stabilization_length: Optional[int] = None,
        name: str = "",
    ):
        self.vertices = tuple(vertices)
        self.basis_labels = tuple(basis_labels)
        self.grading = tuple(tuple(g) for g in grading)
        self.table = {k: dict(v) for k, v in table.items() if v}
        self.idempotents = tuple(idempotents)
        self.quiver = quiver
        self.relations = tuple(relations)
        self.paths = tuple(paths) if paths is not None else None
        self.stabilization_length = stabilization_length
        self.name = name
        self._nf = None
        self._left = {}
        for (i, j), v in self.table.items():
            self._left.setdefault(i, {})[j] = v
        self._blocks = {}
        for i, g in enumerate(self.grading):
            self._blocks.setdefault(g, []).append(i)
        if len(self.idempotents) != len(self.vertices):
            raise InputError("one idempotent per vertex required")

    def __repr__(self) -> str:
        nm = f" {self.name}" if self.name else ""
        return f"<FDAlgebra{nm} dim={self.dim} vertices={len(self.vertices)}>"

    @property
    def dim(self) -> int:
        return len(self.basis_labels)

    @property
    def nvertices(self) -> int:
        return len(self.vertices)

    def vertex_index(self, v) -> int:
        if isinstance(v, int) and not isinstance(v, bool) and v not in self.vertices:
            return v
        return self.vertices.index(str(v))

    def block(self, u: int, v: int) -> list:
        """Basis indices of ``e_u A e_v`` (vertex indices)."""
        return self._blocks.get((u, v), [])

    def mul(self, x: Sparse, y: Sparse) -> Sparse:
        out: dict = {}
        for i, a in x.items():
            row = self._left.get(i)
            if not row:
                continue
            for j, b in y.items():
                v = row.get(j)
                if v:
                    axpy(out, a * b, v)
        return out

    def element(self, vec) -> "AlgebraElement":
        if not isinstance(vec, dict):
            vec = sparse_from_dense(vec)
        return AlgebraElement(self, vec)

    def basis_element(self, i: int) -> "AlgebraElement":
        return AlgebraElement(self, {i: Fraction(1)})

    def e(self, v) -> "AlgebraElement":
        return self.basis_element(self.idempotents[self.vertex_index(v)])

    def one(self) -> "AlgebraElement":
        return AlgebraElement(self, {i: Fraction(1) for i in self.idempotents})

    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, {})

    # presented algebras ------------------------------------------------

    def path_element(self, arrow_ids: Sequence[str] = (), start: Optional[str] = None) -> "AlgebraElement":
        if self.quiver is None or self._nf is None:
            raise TiltkitError("algebra has no presentation")
        p = self.quiver.path(arrow_ids, start)
        return AlgebraElement(self, self._nf(p))

    def normal_form(self, p: Path) -> "AlgebraElement":
        if self._nf is None:
            raise TiltkitError("algebra has no presentation")
        return AlgebraElement(self, self._nf(p))

    def evaluate_relation(self, r: Relation) -> "AlgebraElement":
        out: dict = {}
        for c, p in r.terms:
            axpy(out, c, self._nf(p))
        return AlgebraElement(self, out)

    def path_length(self, i: int) -> Optional[int]:
        return None if self.paths is None else len(self.paths[i])

    # consistency -----------------------------------------------------

    def check_axioms(self) -> None:
        """Raise if idempotents, grading or associativity fail."""
        n = self.dim
        ids = self.idempotents
        for a, i in enumerate(ids):
            for b, j in enumerate(ids):
                want = {i: Fraction(1)} if a == b else {}
                if self.mul({i: Fraction(1)}, {j: Fraction(1)}) != want:
                    raise TiltkitError("vertex idempotents are not orthogonal")
        one = {i: Fraction(1) for i in ids}
        for k in range(n):
            u, v = self.grading[k]
            bk = {k: Fraction(1)}
            if self.mul(one, bk) != bk or self.mul(bk, one) != bk:
                raise TiltkitError("idempotents do not sum to the identity")
            if self.mul({ids[u]: Fraction(1)}, self.mul(bk, {ids[v]: Fraction(1)})) != bk:
                raise TiltkitError(f"basis element {self.basis_labels[k]} violates its grading")
        for (i, j), v in self.table.items():
            if self.grading[i][1] != self.grading[j][0]:
                raise TiltkitError("nonzero product of incomposable basis elements")
            for k in v:
                if self.grading[k] != (self.grading[i][0], self.grading[j][1]):
                    raise TiltkitError("product leaves its graded component")
        # triples that are not composable vanish on both sides by the grading
        for i in range(n):
            for j in self.block_from(self.grading[i][1]):
                bij = self.table.get((i, j))
                for k in self.block_from(self.grading[j][1]):
                    lhs = self.mul(bij, {k: Fraction(1)}) if bij else {}
                    bjk = self.table.get((j, k))
                    rhs = self.mul({i: Fraction(1)}, bjk) if bjk else {}
                    if lhs != rhs:
                        raise TiltkitError("multiplication is not associative")

    def block_from(self, u: int) -> list:
        return [k for k, g in enumerate(self.grading) if g[0] == u]

    def block_to(self, v: int) -> list:
        return [k for k, g in enumerate(self.grading) if g[1] == v]


class AlgebraElement:
    """Element of an :class:`FDAlgebra` (sparse exact coefficients)."""

    __slots__ = ("algebra", "vec")

    def __init__(self, algebra: FDAlgebra, vec: Sparse):
        self.algebra = algebra
        self.vec = {k: as_fraction(c) for k, c in vec.items() if c}

    @property
    def coefficients(self) -> tuple:
        return dense_from_sparse(self.vec, self.algebra.dim)

    def is_zero(self) -> bool:
        return not self.vec

    def _check(self, other):
        if not isinstance(other, AlgebraElement) or other.algebra is not self.algebra:
            raise TiltkitError("elements of different algebras")

    def __add__(self, other):
        self._check(other)
        out = dict(self.vec)
        axpy(out, Fraction(1), other.vec)
        return AlgebraElement(self.algebra, out)

    def __sub__(self, other):
        self._check(other)
        out = dict(self.vec)
        axpy(out, Fraction(-1), other.vec)
        return AlgebraElement(self.algebra, out)

    def __neg__(self):
        return AlgebraElement(self.algebra, scaled(self.vec, Fraction(-1)))

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            self._check(other)
            return AlgebraElement(self.algebra, self.algebra.mul(self.vec, other.vec))
        return AlgebraElement(self.algebra, scaled(self.vec, as_fraction(other)))

    def __rmul__(self, c):
        return AlgebraElement(self.algebra, scaled(self.vec, as_fraction(c)))

    def __pow__(self, k: int):
        if k < 1:
            raise ValueError("positive powers only")
        out = self
        for _ in range(k - 1):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)) and other == 0:
            return self.is_zero()
        return isinstance(other, AlgebraElement) and other.algebra is self.algebra and other.vec == self.vec

    def __hash__(self):
        return hash(tuple(sorted(self.vec.items())))

    def __repr__(self) -> str:
        if not self.vec:
            return "0"
        labels = self.algebra.basis_labels
        return " + ".join(f"{c}*{labels[k]}" if c != 1 else labels[k] for k, c in sorted(self.vec.items()))


# ---------------------------------------------------------------------------
# construction from a presentation


class _Truncation:
    """The space ``F`` of paths of length <= level modulo ``I + J^(level+1)``.

    Paths longer than ``level`` are treated as zero, so the generators
    ``a*r*b`` are taken whenever their shortest term fits and longer terms
    are dropped.  This is exact for ``(I + J^(level+1)) / J^(level+1)`` and
    handles relations whose terms have different lengths.
    """

    def __init__(self, quiver: Quiver, relations: Sequence[Relation], level: int, paths: "_PathTable"):
        self.q = quiver
        self.rels = list(relations)
        self.pt = paths
        paths.extend_to(level)
        self.level = level
        self.ech = Echelon(key=paths.key)
        for r in self.rels:
            lo = min(len(p) for _, p in r.terms)
            for la in range(level - lo + 1):
                for lb in range(level - lo - la + 1):
                    for ia in paths.end_at.get((r.source, la), ()):
                        pa = paths.paths[ia]
                        for ib in paths.start_at.get((r.target, lb), ()):
                            pb = paths.paths[ib].arrows
                            v: dict = {}
                            for c, p in r.terms:
                                if la + len(p) + lb <= level:
                                    k = paths.index[(pa.start, pa.arrows + p.arrows + pb)]
                                    v[k] = v.get(k, 0) + c
                            v = {k: c for k, c in v.items() if c}
                            if v:
                                self.ech.add(v)

    @property
    def paths(self):
        return self.pt.paths

    def basis_ids(self) -> list:
        n = self.pt.count(self.level)
        ids = [i for i in range(n) if i not in self.ech.rows]
        return sorted(ids, key=self.pt.basis_key)

    def top_layer_free(self) -> bool:
        return all(i in self.ech.rows for i in self.pt.by_len[self.level])

    def normal_form_ids(self, start: str, arrows: tuple, memo: dict) -> Sparse:
        """Expansion over basis path ids, assuming :meth:`top_layer_free`.

        Paths of length ``level`` are rewritten into strictly shorter
        basis paths, so longer paths are reduced prefix by prefix.
        """
        key = (start, arrows)
        if key in memo:
            return memo[key]
        L = self.level
        if len(arrows) <= L:
            out = self.ech.reduce({self.pt.index[key]: Fraction(1)})
        else:
            head = self.ech.reduce({self.pt.index[(start, arrows[:L])]: Fraction(1)})
            tail = arrows[L:]
            out = {}
            for pid, c in head.items():
                p = self.paths[pid]
                axpy(out, c, self.normal_form_ids(p.start, p.arrows + tail, memo))
        memo[key] = out
        return out

    def snapshot(self):
        basis = self.basis_ids()
        pos = {pid: k for k, pid in enumerate(basis)}
        memo: dict = {}
        table = {}
        for i, bi in enumerate(basis):
            pi = self.paths[bi]
            for j, bj in enumerate(basis):
                pj = self.paths[bj]
                if pi.end != pj.start:
                    continue
                nf = self.normal_form_ids(pi.start, pi.arrows + pj.arrows, memo)
                if nf:
                    table[(i, j)] = {pos[k]: c for k, c in nf.items()}
        return tuple(self.paths[b] for b in basis), table


class _PathTable:
    """All paths of a quiver up to some length, enumerated once."""

    def __init__(self, quiver: Quiver):
        self.q = quiver
        self.aidx = {a.id: k for k, a in enumerate(quiver.arrows)}
        self.vidx = {v: k for k, v in enumerate(quiver.vertices)}
        self.paths: list = []
        self.index: dict = {}
        self.by_len: list = []
        self.start_at: dict = {}
        self.end_at: dict = {}
        self._keys: list = []
        self.level = -1

    def key(self, pid: int):
        # pivots are the longest paths, so normal forms prefer short paths
        return self._keys[pid]

    def basis_key(self, pid: int):
        k = self._keys[pid]
        return (-k[0], k[1], k[2])

    def count(self, level: int) -> int:
        return sum(len(self.by_len[i]) for i in range(level + 1))

    def pid(self, start: str, arrows: tuple) -> int:
        return self.index[(start, arrows)]

    def _register(self, p: Path) -> int:
        pid = len(self.paths)
        self.paths.append(p)
        self.index[(p.start, p.arrows)] = pid
        self._keys.append((-len(p), self.vidx[p.start], tuple(self.aidx[a] for a in p.arrows)))
        self.start_at.setdefault((p.start, len(p)), []).append(pid)
        self.end_at.setdefault((p.end, len(p)), []).append(pid)
        return pid

    def extend_to(self, level: int) -> None:
        while self.level < level:
            ell = self.level + 1
            if ell == 0:
                layer = [self._register(Path(v, (), v)) for v in self.q.vertices]
            else:
                layer = []
                for pid in self.by_len[ell - 1]:
                    p = self.paths[pid]
                    for a in self.q.outgoing(p.end):
                        layer.append(self._register(Path(p.start, p.arrows + (a.id,), a.target)))
            self.by_len.append(layer)
            self.level = ell


def default_max_len(quiver: Quiver, relations: Sequence[Relation]) -> int:
    longest = max((r.max_length for r in relations), default=0)
    return 4 * (len(quiver.vertices) + longest)


def construct_algebra(
    quiver: Quiver,
    relations: Sequence[Relation] = (),
    max_len: Optional[int] = None,
    name: str = "",
) -> FDAlgebra:
    """Build ``kQ/I`` by truncated ideal spans.

    The level ``L`` is the least path length such that every path of
    length ``L`` reduces to shorter basis paths and the result (basis and
    structure constants) is unchanged when recomputed at ``L+1`` and
    ``L+2``.  Raises :class:`NotStabilized` if no ``L <= max_len`` works.
    """
    relations = list(relations)
    vs = set(quiver.vertices)
    amap = quiver.arrow
    for r in relations:
        if not isinstance(r, Relation):
            raise InvalidRelation("relations must be Relation instances")
        for _, p in r.terms:
            if p.start not in vs or any(a not in amap for a in p.arrows):
                raise InvalidRelation(f"relation {r} uses symbols outside the quiver")
    if max_len is None:
        max_len = default_max_len(quiver, relations)
    if max_len < 2:
        raise InputError("max_len must be at least 2")
    if not relations and not quiver.is_acyclic():
        raise NotStabilized(max_len, "cyclic quiver without relations")

    table = _PathTable(quiver)
    snaps: dict = {}
    truncs: dict = {}
    for ell in range(max_len + 3):
        tr = _Truncation(quiver, relations, ell, table)
        if not tr.top_layer_free():
            continue
        snaps[ell] = tr.snapshot()
        truncs[ell] = tr
        L = ell - 2
        if L in snaps and L + 1 in snaps and snaps[L] == snaps[L + 1] == snaps[ell]:
            if L > max_len:
                break
            return _algebra_from_snapshot(quiver, relations, snaps[L], L, name, truncs[L])
    raise NotStabilized(max_len)


def _algebra_from_snapshot(quiver, relations, snap, L, name, tr) -> FDAlgebra:
    paths, table = snap
    vidx = {v: k for k, v in enumerate(quiver.vertices)}
    grading = [(vidx[p.start], vidx[p.end]) for p in paths]
    pos = {(p.start, p.arrows): k for k, p in enumerate(paths)}
    idem = [pos[(v, ())] for v in quiver.vertices]
    memo: dict = {}
    arrow_nf = {}
    for ar in quiver.arrows:
        nf = tr.normal_form_ids(ar.source, (ar.id,), memo)
        arrow_nf[ar.id] = {pos[(tr.paths[k].start, tr.paths[k].arrows)]: c for k, c in nf.items()}
    alg = FDAlgebra(
        quiver.vertices,
        [str(p) for p in paths],
        grading,
        table,
        idem,
        quiver=quiver,
        relations=relations,
        paths=paths,
        stabilization_length=L,
        name=name,
    )
    alg._nf = _make_nf(alg, idem, vidx, arrow_nf)
    alg.check_axioms()
    for r in relations:
        if not alg.evaluate_relation(r).is_zero():
            raise TiltkitError(f"relation {r} does not vanish in the constructed algebra")
    return alg


def _make_nf(alg: FDAlgebra, idem, vidx, arrow_nf):
    def nf(p: Path) -> Sparse:
        x = {idem[vidx[p.start]]: Fraction(1)}
        for a in p.arrows:
            x = alg.mul(x, arrow_nf[a])
        return x

    return nf


# ---------------------------------------------------------------------------
# structural invariants


def cartan_matrix(a: FDAlgebra) -> list:
    """``C[i][j] = dim e_i A e_j`` (left-to-right convention)."""
    n = a.nvertices
    return [[len(a.block(i, j)) for j in range(n)] for i in range(n)]


def _trace_vector(a: FDAlgebra) -> dict:
    tr = {}
    for (i, j), v in a.table.items():
        c = v.get(j)
        if c:
            tr[i] = tr.get(i, 0) + c
    return tr


def radical(a: FDAlgebra) -> Subspace:
    """Jacobson radical via the trace form ``(x, y) -> tr(L_{xy})``.

    Over a field of characteristic zero the radical is exactly the kernel
    of this form.  For presented algebras the result is compared with the
    span of the basis paths of positive length.
    """
    tau = _trace_vector(a)
    cols = []
    for i in range(a.dim):
        col = {}
        for j in range(a.dim):
            v = a.table.get((i, j))
            if v:
                s = sum((c * tau.get(k, 0) for k, c in v.items()), Fraction(0))
                if s:
                    col[j] = s
        cols.append(col)
    J = Subspace.span(a.dim, kernel_sparse(cols, a.dim))
    if a.paths is not None:
        arrows = Subspace.span(a.dim, [{k: Fraction(1)} for k, p in enumerate(a.paths) if len(p) >= 1])
        if J != arrows:
            raise TiltkitError("trace-form radical differs from the arrow ideal; presentation is not admissible")
    return J


def _product_span(a: FDAlgebra, xs: Sequence[Sparse], ys: Sequence[Sparse]) -> Subspace:
    ech = Echelon()
    for x in xs:
        for y in ys:
            p = a.mul(x, y)
            if p:
                ech.add(p)
    return Subspace._from_echelon(a.dim, ech)


def radical_layers(a: FDAlgebra, J: Optional[Subspace] = None) -> list:
    """``[J, J^2, ...]`` ending with the zero subspace."""
    if J is None:
        J = radical(a)
    layers = [J]
    jb = J.sparse_basis()
    while layers[-1].dim:
        layers.append(_product_span(a, layers[-1].sparse_basis(), jb))
    return layers


def _block_dim(a: FDAlgebra, S: Subspace, u: int, v: int) -> int:
    idx = set(a.block(u, v))
    ech = Echelon()
    for x in S.sparse_basis():
        y = {k: c for k, c in x.items() if k in idx}
        if y:
            ech.add(y)
    return ech.rank


def socle_of_projective(a: FDAlgebra, v, J: Optional[Subspace] = None, side: str = "right"):
    """Socle of ``e_v A`` (``side='right'``) or of ``A e_v`` (``'left'``).

    Returns the socle as a subspace of ``A`` and the list of composition
    factor isotypes (vertex labels, with multiplicity).
    """
    vi = a.vertex_index(v)
    if J is None:
        J = radical(a)
    jb = J.sparse_basis()
    if side == "right":
        support = a.block_from(vi)
    else:
        support = a.block_to(vi)
    cols = []
    for k in support:
        col = {}
        for t, y in enumerate(jb):
            prod = a.mul({k: Fraction(1)}, y) if side == "right" else a.mul(y, {k: Fraction(1)})
            for m, c in prod.items():
                col[t * a.dim + m] = c
        cols.append(col)
    ker = kernel_sparse(cols, len(support))
    soc = Subspace.span(a.dim, [{support[i]: c for i, c in x.items()} for x in ker])
    isotypes = []
    for u in range(a.nvertices):
        d = _block_dim(a, soc, vi, u) if side == "right" else _block_dim(a, soc, u, vi)
        isotypes.extend([a.vertices[u]] * d)
    return soc, isotypes


@dataclass
class SelfInjectivity:
    self_injective: bool
    nakayama_permutation: Optional[dict]
    socle_isotypes: dict
    left_socle_isotypes: dict

    def to_json(self) -> dict:
        return {
            "self_injective": self.self_injective,
            "nakayama_permutation": self.nakayama_permutation,
            "socle_isotypes": self.socle_isotypes,
        }


def check_basic(a: FDAlgebra, J: Optional[Subspace] = None) -> Subspace:
    if J is None:
        J = radical(a)
    if a.dim - J.dim != a.nvertices:
        raise NotBasic(f"dim A/J = {a.dim - J.dim} but there are {a.nvertices} vertices")
    return J


def self_injectivity(a: FDAlgebra) -> SelfInjectivity:
    """Socle certificate for self-injectivity of a basic algebra.

    Every indecomposable projective must have a simple socle and the map
    ``v -> isotype of soc(e_v A)`` must be a permutation.  The mirror
    condition on the left projectives ``A e_v`` is checked as well.
    """
    J = check_basic(a)
    right = {v: socle_of_projective(a, v, J)[1] for v in a.vertices}
    left = {v: socle_of_projective(a, v, J, side="left")[1] for v in a.vertices}
    ok = all(len(s) == 1 for s in right.values()) and all(len(s) == 1 for s in left.values())
    perm = None
    if ok:
        perm = {v: s[0] for v, s in right.items()}
        lperm = {v: s[0] for v, s in left.items()}
        ok = len(set(perm.values())) == a.nvertices and all(lperm[perm[v]] == v for v in a.vertices)
        if not ok:
            perm = None
    return SelfInjectivity(ok, perm, right, left)


@dataclass
class SymmetryReport:
    nakayama_trivial: bool
    frobenius_symmetric_witness: Optional[tuple]
    trials: int

    @property
    def verdict(self) -> str:
        if not self.nakayama_trivial:
            return "not symmetric"
        if self.frobenius_symmetric_witness is not None:
            return "symmetric"
        return "inconclusive"

    def to_json(self) -> dict:
        w = self.frobenius_symmetric_witness
        return {
            "nakayama_trivial": self.nakayama_trivial,
            "witness": None if w is None else [str(c) for c in w],
            "verdict": self.verdict,
        }


def _rank_of_rows(rows: Iterable[Sparse]) -> int:
    ech = Echelon()
    for r in rows:
        if r:
            ech.add(r)
    return ech.rank


def symmetry_report(a: FDAlgebra, trials: int = 20, seed: int = 0) -> SymmetryReport:
    """Decide (one-sidedly) whether ``a`` is a symmetric algebra.

    A nontrivial Nakayama permutation proves the algebra is not symmetric.
    Otherwise symmetric functionals (those vanishing on all commutators)
    are tried: first a basis of that space, then ``trials`` seeded random
    combinations.  A functional whose form ``(x, y) -> f(xy)`` is
    nondegenerate is returned as the witness.
    """
    cert = self_injectivity(a)
    if not cert.self_injective:
        raise TiltkitError("symmetry_report needs a self-injective algebra")
    trivial = all(cert.nakayama_permutation[v] == v for v in a.vertices)
    if not trivial:
        return SymmetryReport(False, None, 0)
    comm = Echelon()
    for i in range(a.dim):
        for j in range(i + 1, a.dim):
            c = dict(a.table.get((i, j), {}))
            axpy(c, Fraction(-1), a.table.get((j, i), {}))
            if c:
                comm.add(c)
    # symmetric functionals = annihilator of the commutator space
    cols = [dict() for _ in range(a.dim)]
    for r, row in enumerate(comm.basis()):
        for k, c in row.items():
            cols[k][r] = c
    funcs = kernel_sparse(cols, a.dim)
    rng = random.Random(seed)
    cands = list(funcs)
    for _ in range(trials):
        cands.append(_random_combination(funcs, rng))
    for lam in cands:
        if lam and _gram_nondegenerate(a, lam):
            return SymmetryReport(True, dense_from_sparse(lam, a.dim), trials)
    return SymmetryReport(True, None, trials)


def _random_combination(vectors, rng) -> Sparse:
    out: dict = {}
    for v in vectors:
        axpy(out, Fraction(rng.randint(-9, 9)), v)
    return out


def _gram_nondegenerate(a: FDAlgebra, lam: Sparse) -> bool:
    rows = []
    for i in range(a.dim):
        row = {}
        for j in range(a.dim):
            v = a.table.get((i, j))
            if v:
                s = sum((c * lam.get(k, 0) for k, c in v.items()), Fraction(0))
                if s:
                    row[j] = s
        rows.append(row)
    return _rank_of_rows(rows) == a.dim


def center(a: FDAlgebra) -> Subspace:
    cols = []
    for i in range(a.dim):
        col = {}
        for b in range(a.dim):
            c = dict(a.table.get((i, b), {}))
            axpy(c, Fraction(-1), a.table.get((b, i), {}))
            for k, x in c.items():
                col[b * a.dim + k] = x
        cols.append(col)
    return Subspace.span(a.dim, kernel_sparse(cols, a.dim))


def center_dimension(a: FDAlgebra) -> int:
    return center(a).dim


def arrow_lifts(a: FDAlgebra, J: Optional[Subspace] = None) -> dict:
    """For each vertex pair ``(u, v)`` a list of elements of ``e_u J e_v``
    whose classes form a basis of ``e_u (J/J^2) e_v``."""
    J = check_basic(a, J)
    layers = radical_layers(a, J)
    J2 = layers[1] if len(layers) > 1 else Subspace.zero(a.dim)
    out = {}
    for u in range(a.nvertices):
        for v in range(a.nvertices):
            idx = set(a.block(u, v))
            if not idx:
                continue
            sq = Echelon()
            for x in J2.sparse_basis():
                y = {k: c for k, c in x.items() if k in idx}
                if y:
                    sq.add(y)
            lifts = []
            for x in J.sparse_basis():
                y = {k: c for k, c in x.items() if k in idx}
                if y and sq.add(y) is not None:
                    lifts.append(y)
            if lifts:
                out[(u, v)] = lifts
    return out


def recover_quiver(a: FDAlgebra, J: Optional[Subspace] = None) -> Quiver:
    """Gabriel quiver: ``dim e_u (J/J^2) e_v`` arrows ``u -> v``."""
    lifts = arrow_lifts(a, J)
    return _quiver_from_lifts(a, lifts)


def _arrow_name(a: FDAlgebra, u: int, v: int, k: int, mult: int) -> str:
    base = f"{a.vertices[u]}_{a.vertices[v]}"
    return base if mult == 1 else f"{base}_{k}"


def _quiver_from_lifts(a: FDAlgebra, lifts: dict) -> Quiver:
    arrows = []
    for (u, v), xs in sorted(lifts.items()):
        for k in range(len(xs)):
            arrows.append(Arrow(_arrow_name(a, u, v, k, len(xs)), a.vertices[u], a.vertices[v]))
    return Quiver(a.vertices, tuple(arrows))


def find_presentation(a: FDAlgebra):
    """A presentation ``(quiver, relations, arrow_map)`` of a basic algebra.

    Arrows are lifts of a basis of ``J/J^2``; relations are a minimal set
    (greedy, shortest first) of kernel elements of the evaluation map on
    paths of length at most the Loewy length.
    """
    J = check_basic(a)
    lifts = arrow_lifts(a, J)
    quiver = _quiver_from_lifts(a, lifts)
    arrow_map = {}
    for (u, v), xs in sorted(lifts.items()):
        for k, x in enumerate(xs):
            arrow_map[_arrow_name(a, u, v, k, len(xs))] = AlgebraElement(a, x)
    # least m with J^m = 0
    loewy = len(radical_layers(a, J))
    # enumerate paths up to the Loewy length and evaluate them
    paths = [Path(v, (), v) for v in quiver.vertices]
    frontier = list(paths)
    for _ in range(max(loewy, 1)):
        nxt = []
        for p in frontier:
            for ar in quiver.outgoing(p.end):
                nxt.append(Path(p.start, p.arrows + (ar.id,), ar.target))
        paths.extend(nxt)
        frontier = nxt
    images = []
    for p in paths:
        x = {a.idempotents[a.vertex_index(p.start)]: Fraction(1)}
        for ar in p.arrows:
            x = a.mul(x, arrow_map[ar].vec)
        images.append(x)
    # kernel of the evaluation map, with long paths as pivots
    key = {i: (-len(p), i) for i, p in enumerate(paths)}
    ev = Echelon(track=True)
    for i in sorted(range(len(paths)), key=lambda i: (len(paths[i]), i)):
        ev.add(images[i], {i: Fraction(1)})
    kern = Echelon(key=lambda i: key[i])
    for t in ev.relations:
        kern.add(t)
    cands = sorted(kern.basis(), key=lambda t: (max(len(paths[i]) for i in t), min(key[i] for i in t)))
    rels = []
    tr = _PathTable(quiver)
    tr.extend_to(max(loewy, 1))
    pid = {(p.start, p.arrows): tr.pid(p.start, p.arrows) for p in paths}
    span = Echelon()
    for t in cands:
        vec = {pid[(paths[i].start, paths[i].arrows)]: c for i, c in t.items()}
        if span.contains(vec):
            continue
        r = Relation(tuple((c, paths[i]) for i, c in sorted(t.items())))
        rels.append(r)
        _add_ideal_multiples(tr, r, span, max(loewy, 1))
    return quiver, rels, arrow_map


def _add_ideal_multiples(tr: "_PathTable", r: Relation, span: Echelon, top: int) -> None:
    lo = min(len(p) for _, p in r.terms)
    for la in range(top - lo + 1):
        for lb in range(top - lo - la + 1):
            for ia in tr.end_at.get((r.source, la), ()):
                pa = tr.paths[ia]
                for ib in tr.start_at.get((r.target, lb), ()):
                    pb = tr.paths[ib].arrows
                    v = {}
                    for c, p in r.terms:
                        if la + len(p) + lb <= top:
                            k = tr.index[(pa.start, pa.arrows + p.arrows + pb)]
                            v[k] = v.get(k, 0) + c
                    v = {k: c for k, c in v.items() if c}
                    if v:
                        span.add(v)


@dataclass
class PresentationCheck:
    graded: bool
    relations_hold: bool
    generates: bool
    dims_match: bool
    dim_target: int
    dim_candidate: Optional[int]

    @property
    def ok(self) -> bool:
        return self.graded and self.relations_hold and self.generates and self.dims_match

    def to_json(self) -> dict:
        return {
            "graded": self.graded,
            "relations_hold": self.relations_hold,
            "generates": self.generates,
            "dims_match": self.dims_match,
            "dim_target": self.dim_target,
            "dim_candidate": self.dim_candidate,
            "isomorphism_certified": self.ok,
        }


def check_presentation(
    e: FDAlgebra,
    cand_quiver: Quiver,
    cand_rels: Sequence[Relation],
    vertex_map: Mapping,
    arrow_map: Mapping,
    max_len: Optional[int] = None,
) -> PresentationCheck:
    """Test whether ``kQ/I -> e`` given on generators is an isomorphism.

    ``vertex_map`` sends candidate vertices to vertices of ``e``;
    ``arrow_map`` sends each candidate arrow ``u -> v`` to an element of
    ``e_{f(u)} e e_{f(v)}``.
    """
    def vec(x):
        return x.vec if isinstance(x, AlgebraElement) else {k: as_fraction(c) for k, c in x.items() if c}

    images = {aid: vec(x) for aid, x in arrow_map.items()}
    vmap = {v: e.vertex_index(vertex_map[v]) for v in cand_quiver.vertices} if set(vertex_map) >= set(cand_quiver.vertices) else None
    graded = vmap is not None and sorted(vmap.values()) == list(range(e.nvertices)) and len(vmap) == e.nvertices
    if graded:
        for ar in cand_quiver.arrows:
            x = images.get(ar.id)
            if x is None:
                graded = False
                break
            blk = set(e.block(vmap[ar.source], vmap[ar.target]))
            if any(k not in blk for k in x):
                graded = False
                break
    if not graded:
        return PresentationCheck(False, False, False, False, e.dim, None)

    def evaluate(p: Path) -> Sparse:
        x = {e.idempotents[vmap[p.start]]: Fraction(1)}
        for ar in p.arrows:
            x = e.mul(x, images[ar])
        return x

    holds = True
    for r in cand_rels:
        out: dict = {}
        for c, p in r.terms:
            axpy(out, c, evaluate(p))
        if out:
            holds = False
            break

    gens = [images[ar.id] for ar in cand_quiver.arrows]
    span = Echelon()
    frontier = []
    for v in cand_quiver.vertices:
        x = {e.idempotents[vmap[v]]: Fraction(1)}
        if span.add(x) is not None:
            frontier.append(x)
    for g in gens:
        if g and span.add(g) is not None:
            frontier.append(g)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = e.mul(x, g)
                if y and span.add(y) is not None:
                    nxt.append(y)
        frontier = nxt
    generates = span.rank == e.dim

    cand = construct_algebra(cand_quiver, cand_rels, max_len=max_len)
    return PresentationCheck(True, holds, generates, cand.dim == e.dim, e.dim, cand.dim)


def verify_presentation(e, cand_quiver, cand_rels, vertex_map, arrow_map, max_len=None) -> bool:
    return check_presentation(e, cand_quiver, cand_rels, vertex_map, arrow_map, max_len).ok


def identity_assignment(a: FDAlgebra):
    """Vertex and arrow maps sending a presented algebra to itself."""
    vmap = {v: v for v in a.quiver.vertices}
    amap = {ar.id: a.path_element([ar.id]) for ar in a.quiver.arrows}
    return vmap, amap
