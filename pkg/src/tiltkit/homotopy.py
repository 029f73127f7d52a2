"""Bounded complexes of projective modules and Hom spaces in K^b(proj A).

Modules are right modules ``P(v) = e_v A``; a map ``P(s) -> P(t)`` is left
multiplication by an element of ``e_t A e_s`` (see :mod:`tiltkit.quivalg`).
Matrices of such elements act on columns, so ``f @ g`` is ``f`` after
``g``.

Grading is homological: the differential of degree ``k`` goes
``X_k -> X_(k-1)``, and a two-term complex ``L_1 -> L_0`` lives in degrees
1 and 0.  A map ``X -> Y[i]`` has components ``f_k: X_k -> Y_(k-i)``; the
shift negates differentials, so the chain map equation reads

    f_(k-1) d_X = (-1)^i d_Y f_k

and null-homotopic maps are ``(-1)^i d_Y h_k + h_(k-1) d_X`` with
``h_k: X_k -> Y_(k-i+1)``.

Endomorphism algebras are returned with *diagrammatic* multiplication:
the product ``f * g`` of composable morphisms is "``f`` then ``g``".  In
that way the arrows of its quiver point in the direction of the
morphisms, matching the left-to-right path convention used for
presentations.  (For a stalk complex of the regular module this gives the
opposite algebra.)
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from .errors import (
    AlgebraMismatch,
    ComplexMismatch,
    InputError,
    NotBasicDecomposition,
    NotIndecomposable,
    NotTwoTerm,
)
from .exactla import QuotientMap, Sparse, Subspace, axpy, kernel_sparse, scaled
from .quivalg import AlgebraElement, FDAlgebra, radical


# ---------------------------------------------------------------------------
# projective modules and maps


@dataclass(frozen=True, eq=False)
class ProjModule:
    algebra: FDAlgebra
    vertices: tuple = ()

    def __post_init__(self):
        vs = tuple(str(v) for v in self.vertices)
        for v in vs:
            if v not in self.algebra.vertices:
                raise InputError(f"unknown vertex {v!r}")
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "_vidx", tuple(self.algebra.vertex_index(v) for v in vs))

    def __len__(self) -> int:
        return len(self.vertices)

    def __eq__(self, other) -> bool:
        return isinstance(other, ProjModule) and other.algebra is self.algebra and other.vertices == self.vertices

    def __hash__(self):
        return hash((id(self.algebra), self.vertices))

    def __repr__(self) -> str:
        if not self.vertices:
            return "0"
        return " + ".join(f"P({v})" for v in self.vertices)

    def vidx(self, i: int) -> int:
        return self._vidx[i]

    def restrict(self, rows: Sequence[int]) -> "ProjModule":
        return ProjModule(self.algebra, tuple(self.vertices[r] for r in rows))

    def dim(self) -> int:
        a = self.algebra
        return sum(len(a.block_from(u)) for u in self._vidx)


def hom_basis(p: ProjModule, q: ProjModule) -> list:
    """Basis of ``Hom_A(p, q)``: triples ``(t, s, k)``, the matrix with the
    single entry ``b_k`` (in ``e_{q_t} A e_{p_s}``) at position ``(t, s)``."""
    if p.algebra is not q.algebra:
        raise AlgebraMismatch("modules over different algebras")
    a = p.algebra
    out = []
    for t in range(len(q)):
        for s in range(len(p)):
            for k in a.block(q.vidx(t), p.vidx(s)):
                out.append((t, s, k))
    return out


def hom_space(p: ProjModule, q: ProjModule) -> list:
    """``hom_basis`` as a list of :class:`ProjMap`."""
    return [ProjMap(p, q, {(t, s): {k: Fraction(1)}}) for t, s, k in hom_basis(p, q)]


class ProjMap:
    """Map between finite direct sums of indecomposable projectives."""

    __slots__ = ("source", "target", "entries")

    def __init__(self, source: ProjModule, target: ProjModule, entries: Optional[Mapping] = None, check: bool = True):
        if source.algebra is not target.algebra:
            raise AlgebraMismatch("modules over different algebras")
        self.source = source
        self.target = target
        ent = {}
        for (t, s), x in (entries or {}).items():
            if isinstance(x, AlgebraElement):
                x = x.vec
            x = {k: Fraction(c) for k, c in x.items() if c}
            if x:
                ent[(t, s)] = x
        self.entries = ent
        if check:
            a = source.algebra
            for (t, s), x in ent.items():
                if not (0 <= t < len(target) and 0 <= s < len(source)):
                    raise InputError(f"matrix position {(t, s)} out of range")
                blk = set(a.block(target.vidx(t), source.vidx(s)))
                if any(k not in blk for k in x):
                    raise InputError(
                        f"entry {(t, s)} is not in e_{target.vertices[t]} A e_{source.vertices[s]}"
                    )

    @classmethod
    def zero(cls, source, target) -> "ProjMap":
        return cls(source, target, {}, check=False)

    @classmethod
    def identity(cls, m: ProjModule) -> "ProjMap":
        a = m.algebra
        return cls(m, m, {(i, i): {a.idempotents[m.vidx(i)]: Fraction(1)} for i in range(len(m))}, check=False)

    @property
    def algebra(self) -> FDAlgebra:
        return self.source.algebra

    def is_zero(self) -> bool:
        return not self.entries

    def __matmul__(self, other: "ProjMap") -> "ProjMap":
        if other.target != self.source:
            raise ComplexMismatch("maps are not composable")
        a = self.algebra
        by_row: dict = {}
        for (r, s), x in other.entries.items():
            by_row.setdefault(r, []).append((s, x))
        out: dict = {}
        for (t, r), y in self.entries.items():
            for s, x in by_row.get(r, ()):
                prod = a.mul(y, x)
                if prod:
                    cur = out.setdefault((t, s), {})
                    axpy(cur, Fraction(1), prod)
        return ProjMap(other.source, self.target, {k: v for k, v in out.items() if v}, check=False)

    def _same(self, other):
        if other.source != self.source or other.target != self.target:
            raise ComplexMismatch("maps have different source or target")

    def __add__(self, other: "ProjMap") -> "ProjMap":
        self._same(other)
        out = {k: dict(v) for k, v in self.entries.items()}
        for k, v in other.entries.items():
            axpy(out.setdefault(k, {}), Fraction(1), v)
        return ProjMap(self.source, self.target, out, check=False)

    def __neg__(self) -> "ProjMap":
        return self.scale(-1)

    def __sub__(self, other: "ProjMap") -> "ProjMap":
        return self + (-other)

    def scale(self, c) -> "ProjMap":
        c = Fraction(c)
        return ProjMap(self.source, self.target, {k: scaled(v, c) for k, v in self.entries.items()}, check=False)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ProjMap)
            and other.source == self.source
            and other.target == self.target
            and other.entries == self.entries
        )

    def __repr__(self) -> str:
        a = self.algebra
        items = []
        for (t, s), x in sorted(self.entries.items()):
            items.append(f"({t},{s}): {AlgebraElement(a, x)!r}")
        return f"ProjMap({self.source!r} -> {self.target!r}; " + ", ".join(items) + ")"

    def restrict(self, rows: Sequence[int], cols: Sequence[int]) -> "ProjMap":
        rpos = {r: i for i, r in enumerate(rows)}
        cpos = {c: i for i, c in enumerate(cols)}
        ent = {(rpos[t], cpos[s]): x for (t, s), x in self.entries.items() if t in rpos and s in cpos}
        return ProjMap(self.source.restrict(cols), self.target.restrict(rows), ent, check=False)

    def coordinates(self) -> Sparse:
        """Coordinates w.r.t. :func:`hom_basis`."""
        index = {b: i for i, b in enumerate(hom_basis(self.source, self.target))}
        out = {}
        for (t, s), x in self.entries.items():
            for k, c in x.items():
                out[index[(t, s, k)]] = c
        return out


# ---------------------------------------------------------------------------
# complexes


@dataclass(frozen=True)
class Summand:
    name: str
    rows: Mapping  # degree -> tuple of row indices


class BoundedComplex:
    """A bounded complex of projectives with optional named summands.

    ``modules[k]`` is ``X_k`` and ``differentials[k]`` the map
    ``X_k -> X_(k-1)``.  Declared summands must partition the rows in
    every degree and the differentials must be block diagonal for them.
    """

    def __init__(
        self,
        algebra: FDAlgebra,
        modules: Mapping,
        differentials: Optional[Mapping] = None,
        summands: Optional[Sequence[Summand]] = None,
        name: str = "",
    ):
        self.algebra = algebra
        self.name = name
        mods = {}
        for k, m in modules.items():
            if not isinstance(m, ProjModule):
                m = ProjModule(algebra, tuple(m))
            if m.algebra is not algebra:
                raise AlgebraMismatch("module over a different algebra")
            if len(m):
                mods[int(k)] = m
        self.modules = mods
        diffs = {}
        for k, d in (differentials or {}).items():
            k = int(k)
            if d.is_zero():
                continue
            if d.source != self.module(k) or d.target != self.module(k - 1):
                raise InputError(f"differential in degree {k} has the wrong shape")
            diffs[k] = d
        self.differentials = diffs
        for k in diffs:
            if k - 1 in diffs and not (diffs[k - 1] @ diffs[k]).is_zero():
                raise InputError(f"d∘d != 0 at degree {k}")
        self.summands = tuple(summands) if summands else None
        if self.summands:
            self._check_summands()
        self._hom_cache: dict = {}

    def __repr__(self) -> str:
        parts = [f"{k}: {self.modules[k]!r}" for k in sorted(self.modules)]
        nm = f"{self.name} " if self.name else ""
        return f"<Complex {nm}" + "; ".join(parts) + ">"

    def module(self, k: int) -> ProjModule:
        return self.modules.get(k) or ProjModule(self.algebra, ())

    def d(self, k: int) -> ProjMap:
        d = self.differentials.get(k)
        if d is None:
            return ProjMap.zero(self.module(k), self.module(k - 1))
        return d

    @property
    def degrees(self) -> list:
        return sorted(self.modules)

    def is_zero(self) -> bool:
        return not self.modules

    def _check_summands(self) -> None:
        names = [s.name for s in self.summands]
        if len(set(names)) != len(names):
            raise InputError("summand names must be unique")
        owner: dict = {}
        for s in self.summands:
            for k, rows in s.rows.items():
                for r in rows:
                    if (int(k), r) in owner:
                        raise InputError(f"row {r} in degree {k} belongs to two summands")
                    owner[(int(k), r)] = s.name
        for k, m in self.modules.items():
            for r in range(len(m)):
                if (k, r) not in owner:
                    raise InputError(f"row {r} in degree {k} belongs to no summand")
        if len(owner) != sum(len(m) for m in self.modules.values()):
            raise InputError("summand rows outside the complex")
        for k, d in self.differentials.items():
            for (t, s) in d.entries:
                if owner[(k - 1, t)] != owner[(k, s)]:
                    raise InputError("differential is not block diagonal for the declared summands")

    def summand(self, name: str) -> "BoundedComplex":
        for s in self.summands or ():
            if s.name == name:
                return self.restrict(s.rows, name=name)
        raise KeyError(name)

    def summand_complexes(self) -> list:
        return [self.restrict(s.rows, name=s.name) for s in self.summands]

    def restrict(self, rows: Mapping, name: str = "") -> "BoundedComplex":
        rows = {int(k): tuple(v) for k, v in rows.items()}
        mods = {k: self.module(k).restrict(rows.get(k, ())) for k in self.modules}
        diffs = {k: d.restrict(rows.get(k - 1, ()), rows.get(k, ())) for k, d in self.differentials.items()}
        return BoundedComplex(self.algebra, mods, diffs, name=name)

    def with_default_summands(self) -> "BoundedComplex":
        """Copy whose summands are the blocks of the differentials
        (connected components of the graph of nonzero entries)."""
        if self.summands:
            return self
        parent: dict = {}

        def find(x):
            while parent.setdefault(x, x) != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for k, m in self.modules.items():
            for r in range(len(m)):
                find((k, r))
        for k, d in self.differentials.items():
            for (t, s) in d.entries:
                ra, rb = find((k - 1, t)), find((k, s))
                if ra != rb:
                    parent[ra] = rb
        groups: dict = {}
        for node in sorted(parent):
            groups.setdefault(find(node), []).append(node)
        summands = []
        for i, nodes in enumerate(sorted(groups.values(), key=lambda g: (-g[0][0], g[0][1]))):
            rows: dict = {}
            for k, r in nodes:
                rows.setdefault(k, []).append(r)
            summands.append(Summand(f"S{i}", {k: tuple(v) for k, v in rows.items()}))
        return BoundedComplex(self.algebra, self.modules, self.differentials, summands, name=self.name)

    def direct_sum(self, other: "BoundedComplex", name: str = "") -> "BoundedComplex":
        if other.algebra is not self.algebra:
            raise AlgebraMismatch("complexes over different algebras")
        degs = set(self.modules) | set(other.modules)
        mods, diffs, summands = {}, {}, []
        for k in degs:
            mods[k] = ProjModule(self.algebra, self.module(k).vertices + other.module(k).vertices)
        for k in degs:
            n1, m1 = len(self.module(k - 1)), len(self.module(k))
            ent = dict(self.d(k).entries)
            for (t, s), x in other.d(k).entries.items():
                ent[(t + n1, s + m1)] = x
            diffs[k] = ProjMap(mods[k], mods.get(k - 1, ProjModule(self.algebra, ())), ent, check=False)
        used: set = set()
        for comp, off in ((self, 0), (other, 1)):
            decl = comp.summands if comp.summands else comp.with_default_summands().summands
            for s in decl:
                rows = {}
                for k, rs in s.rows.items():
                    shift = len(self.module(int(k))) if off else 0
                    rows[int(k)] = tuple(r + shift for r in rs)
                nm = s.name
                if not comp.summands and comp.name:
                    nm = comp.name if len(decl) == 1 else f"{comp.name}.{s.name}"
                base, i = nm, 1
                while nm in used:
                    nm = f"{base}'{i}" if i > 1 else f"{base}'"
                    i += 1
                used.add(nm)
                summands.append(Summand(nm, rows))
        return BoundedComplex(self.algebra, mods, diffs, summands, name=name)


def stalk(algebra: FDAlgebra, vertices: Sequence[str], degree: int = 0, name: str = "") -> BoundedComplex:
    return BoundedComplex(algebra, {degree: ProjModule(algebra, tuple(vertices))}, name=name)


# ---------------------------------------------------------------------------
# chain maps


class ChainMap:
    """Degreewise maps ``f_k: X_k -> Y_(k - shift)``."""

    def __init__(self, source: BoundedComplex, target: BoundedComplex, shift: int, components: Mapping):
        if source.algebra is not target.algebra:
            raise AlgebraMismatch("complexes over different algebras")
        self.source = source
        self.target = target
        self.shift = shift
        comps = {}
        for k, f in components.items():
            if f.is_zero():
                continue
            if f.source != source.module(k) or f.target != target.module(k - shift):
                raise InputError(f"component in degree {k} has the wrong shape")
            comps[int(k)] = f
        self.components = comps

    def __getitem__(self, k: int) -> ProjMap:
        f = self.components.get(k)
        if f is None:
            return ProjMap.zero(self.source.module(k), self.target.module(k - self.shift))
        return f

    def is_chain_map(self) -> bool:
        sign = -1 if self.shift % 2 else 1
        x, y, i = self.source, self.target, self.shift
        degs = set(x.modules) | {k + 1 for k in x.modules}
        for k in degs:
            lhs = self[k - 1] @ x.d(k)
            rhs = (y.d(k - i) @ self[k]).scale(sign)
            if lhs != rhs:
                return False
        return True

    def _same(self, other):
        if other.source is not self.source or other.target is not self.target or other.shift != self.shift:
            raise ComplexMismatch("chain maps live in different Hom spaces")

    def __add__(self, other: "ChainMap") -> "ChainMap":
        self._same(other)
        ks = set(self.components) | set(other.components)
        return ChainMap(self.source, self.target, self.shift, {k: self[k] + other[k] for k in ks})

    def __sub__(self, other: "ChainMap") -> "ChainMap":
        return self + other.scale(-1)

    def scale(self, c) -> "ChainMap":
        return ChainMap(self.source, self.target, self.shift, {k: f.scale(c) for k, f in self.components.items()})

    def __matmul__(self, other: "ChainMap") -> "ChainMap":
        """``self ∘ other`` (``other`` first)."""
        if other.target is not self.source:
            raise ComplexMismatch("chain maps are not composable")
        comps = {}
        for k, g in other.components.items():
            f = self.components.get(k - other.shift)
            if f is not None:
                comps[k] = f @ g
        return ChainMap(other.source, self.target, self.shift + other.shift, comps)

    def is_zero(self) -> bool:
        return not self.components

    @classmethod
    def identity(cls, x: BoundedComplex) -> "ChainMap":
        return cls(x, x, 0, {k: ProjMap.identity(m) for k, m in x.modules.items()})

    def __repr__(self) -> str:
        return f"ChainMap(shift={self.shift}, {self.components!r})"


class _Layout:
    """Coordinates for degreewise maps ``X_k -> Y_(k - shift)``."""

    def __init__(self, x: BoundedComplex, y: BoundedComplex, shift: int):
        self.x, self.y, self.shift = x, y, shift
        self.slots = []  # (k, t, s, basis index)
        self.index = {}
        for k in x.degrees:
            if k - shift not in y.modules:
                continue
            for t, s, b in hom_basis(x.module(k), y.module(k - shift)):
                self.index[(k, t, s, b)] = len(self.slots)
                self.slots.append((k, t, s, b))

    def __len__(self) -> int:
        return len(self.slots)

    def to_chain_map(self, v: Sparse) -> ChainMap:
        comps: dict = {}
        for i, c in v.items():
            k, t, s, b = self.slots[i]
            comps.setdefault(k, {}).setdefault((t, s), {})[b] = c
        x, y = self.x, self.y
        return ChainMap(
            x, y, self.shift,
            {k: ProjMap(x.module(k), y.module(k - self.shift), e, check=False) for k, e in comps.items()},
        )

    def from_chain_map(self, f: ChainMap) -> Sparse:
        out = {}
        for k, m in f.components.items():
            for (t, s), x in m.entries.items():
                for b, c in x.items():
                    out[self.index[(k, t, s, b)]] = c
        return out


def _left_mult(a: FDAlgebra, d: ProjMap, t: int, s: int, b: int) -> dict:
    """Entries of ``d @ E`` where ``E`` has the single entry ``b_b`` at (t, s)."""
    out = {}
    for (r, c), x in d.entries.items():
        if c == t:
            p = a.mul(x, {b: Fraction(1)})
            if p:
                out[(r, s)] = p
    return out


def _right_mult(a: FDAlgebra, d: ProjMap, t: int, s: int, b: int) -> dict:
    """Entries of ``E @ d``."""
    out = {}
    for (r, c), x in d.entries.items():
        if r == s:
            p = a.mul({b: Fraction(1)}, x)
            if p:
                out[(t, c)] = p
    return out


class HomSpace:
    """``Hom_{K^b(proj A)}(X, Y[shift])`` with chosen representatives."""

    def __init__(self, x: BoundedComplex, y: BoundedComplex, shift: int):
        if x.algebra is not y.algebra:
            raise AlgebraMismatch("complexes over different algebras")
        self.x, self.y, self.shift = x, y, shift
        a = x.algebra
        sign = Fraction(-1) if shift % 2 else Fraction(1)
        lay = self.layout = _Layout(x, y, shift)

        # chain map equations: f_(k-1) d_X - sign d_Y f_k = 0 in Hom(X_k, Y_(k-1-shift))
        eq_index: dict = {}

        def put(col, key, vec, c):
            for kk, cc in vec.items():
                slot = eq_index.setdefault(key + (kk,), len(eq_index))
                v = col.get(slot, 0) + c * cc
                if v:
                    col[slot] = v
                else:
                    col.pop(slot, None)

        cols = []
        for (k, t, s, b) in lay.slots:
            col: dict = {}
            for (r, c), v in _left_mult(a, y.d(k - shift), t, s, b).items():
                put(col, (k, r, c), v, -sign)
            for (r, c), v in _right_mult(a, x.d(k + 1), t, s, b).items():
                put(col, (k + 1, r, c), v, Fraction(1))
            cols.append(col)
        self.cycles = Subspace.span(len(lay), kernel_sparse(cols, len(lay)))

        # null-homotopic maps
        hlay = _Layout(x, y, shift - 1)
        bounds = []
        for (k, t, s, b) in hlay.slots:
            img: dict = {}
            for (r, c), v in _left_mult(a, y.d(k - shift + 1), t, s, b).items():
                for kk, cc in v.items():
                    img[lay.index[(k, r, c, kk)]] = img.get(lay.index[(k, r, c, kk)], 0) + sign * cc
            for (r, c), v in _right_mult(a, x.d(k + 1), t, s, b).items():
                for kk, cc in v.items():
                    img[lay.index[(k + 1, r, c, kk)]] = img.get(lay.index[(k + 1, r, c, kk)], 0) + cc
            img = {i: c for i, c in img.items() if c}
            if img:
                bounds.append(img)
        self.boundaries = Subspace.span(len(lay), bounds)
        self._bound_cols = bounds
        self.quotient = QuotientMap(self.cycles, self.boundaries)

    @property
    def dim(self) -> int:
        return self.quotient.dim

    @property
    def chain_map_dim(self) -> int:
        return self.cycles.dim

    def representatives(self) -> list:
        return [self.layout.to_chain_map(v) for v in self.quotient.representatives]

    def coordinates(self, f: ChainMap) -> tuple:
        return self.quotient(self.layout.from_chain_map(f))

    def coords_sparse(self, f: ChainMap) -> Sparse:
        return self.quotient.coords_sparse(self.layout.from_chain_map(f))

    def is_null_homotopic(self, f: ChainMap) -> bool:
        return self.quotient.is_zero(self.layout.from_chain_map(f))

    def contains(self, f: ChainMap) -> bool:
        return self.cycles.contains(self.layout.from_chain_map(f))

    def random_null_homotopic(self, rng) -> ChainMap:
        v: dict = {}
        for col in self._bound_cols:
            axpy(v, Fraction(rng.randint(-5, 5)), col)
        return self.layout.to_chain_map(v)


def chain_maps(x: BoundedComplex, y: BoundedComplex, shift: int = 0) -> Subspace:
    """Solution space of the chain map equations (before the homotopy quotient)."""
    return homotopy_hom(x, y, shift).cycles


def homotopy_hom(x: BoundedComplex, y: BoundedComplex, shift: int = 0) -> HomSpace:
    if x.algebra is not y.algebra:
        raise AlgebraMismatch("complexes over different algebras")
    key = (id(y), shift)
    hit = x._hom_cache.get(key)
    if hit is not None and hit[0] is y:
        return hit[1]
    space = HomSpace(x, y, shift)
    x._hom_cache[key] = (y, space)
    return space


# ---------------------------------------------------------------------------
# homotopy classes


class HomotopyClass:
    """A morphism of ``K^b(proj A)`` given by a chain map representative."""

    def __init__(self, rep: ChainMap):
        if not rep.is_chain_map():
            raise InputError("representative is not a chain map")
        self.rep = rep

    @property
    def source(self) -> BoundedComplex:
        return self.rep.source

    @property
    def target(self) -> BoundedComplex:
        return self.rep.target

    @property
    def shift(self) -> int:
        return self.rep.shift

    def space(self) -> HomSpace:
        return homotopy_hom(self.source, self.target, self.shift)

    def is_zero(self) -> bool:
        return self.space().is_null_homotopic(self.rep)

    def coordinates(self) -> tuple:
        return self.space().coordinates(self.rep)

    def __eq__(self, other) -> bool:
        if not isinstance(other, HomotopyClass):
            return NotImplemented
        if other.source is not self.source or other.target is not self.target or other.shift != self.shift:
            return False
        return self.space().is_null_homotopic(self.rep - other.rep)

    __hash__ = None

    def __add__(self, other: "HomotopyClass") -> "HomotopyClass":
        return HomotopyClass(self.rep + other.rep)

    def scale(self, c) -> "HomotopyClass":
        return HomotopyClass(self.rep.scale(c))

    def __repr__(self) -> str:
        return f"HomotopyClass({self.rep!r})"

    @classmethod
    def identity(cls, x: BoundedComplex) -> "HomotopyClass":
        return cls(ChainMap.identity(x))


def compose(f: HomotopyClass, g: HomotopyClass) -> HomotopyClass:
    """``f ∘ g`` (apply ``g`` first); needs ``g.target is f.source``."""
    if g.target is not f.source:
        raise ComplexMismatch("target of g is not the source of f")
    return HomotopyClass(f.rep @ g.rep)


# ---------------------------------------------------------------------------
# endomorphism algebras


def _adapted_basis(space: HomSpace, first: Optional[ChainMap]):
    """Quotient basis (as cycle vectors) starting with ``first`` if given,
    and a function giving coordinates in that basis."""
    reps = list(space.quotient.representatives)
    coords = space.quotient.coords_sparse
    if first is None:
        return reps, coords
    c = coords(space.layout.from_chain_map(first))
    if not c:
        raise NotBasicDecomposition(f"identity of summand {space.x.name!r} is null-homotopic")
    j0 = min(c)
    c0 = c[j0]
    others = [j for j in range(len(reps)) if j != j0]
    new_reps = [space.layout.from_chain_map(first)] + [reps[j] for j in others]

    def new_coords(v: Sparse) -> Sparse:
        old = coords(v)
        out = {}
        lead = old.get(j0, 0) / c0
        if lead:
            out[0] = lead
        for pos, j in enumerate(others, start=1):
            val = old.get(j, 0) - lead * c.get(j, 0)
            if val:
                out[pos] = val
        return out

    return new_reps, new_coords


class EndomorphismAlgebra:
    """``End_{K^b(proj A)}(X)`` for a complex with named summands.

    Vertices are the summand names; ``e_a E e_b`` is ``Hom_K(X_a, X_b)``
    and the product is composition in diagrammatic order.
    """

    def __init__(self, x: BoundedComplex, check_basic: bool = True):
        if not x.summands:
            raise InputError("endomorphism_algebra needs a summand decomposition")
        self.complex = x
        self.names = [s.name for s in x.summands]
        self.parts = {s.name: x.restrict(s.rows, name=s.name) for s in x.summands}
        if check_basic:
            parts = [self.parts[n] for n in self.names]
            for p in parts:
                if not is_indecomposable(p):
                    raise NotBasicDecomposition(f"summand {p.name!r} is not indecomposable")
            if not summands_pairwise_noniso(parts):
                raise NotBasicDecomposition("two summands are isomorphic")
        self.spaces = {}
        self.block_basis = {}
        self.block_coords = {}
        labels, grading, offsets = [], [], {}
        idem = []
        for ia, a in enumerate(self.names):
            for ib, b in enumerate(self.names):
                sp = homotopy_hom(self.parts[a], self.parts[b], 0)
                first = ChainMap.identity(self.parts[a]) if a == b else None
                reps, coords = _adapted_basis(sp, first)
                self.spaces[(a, b)] = sp
                self.block_basis[(a, b)] = reps
                self.block_coords[(a, b)] = coords
                offsets[(a, b)] = len(labels)
                for j in range(len(reps)):
                    if a == b and j == 0:
                        labels.append(f"e_{a}")
                        idem.append(len(grading))
                    else:
                        labels.append(f"{a}->{b}#{j}")
                    grading.append((ia, ib))
        self.offsets = offsets
        table = {}
        for a in self.names:
            for b in self.names:
                for c in self.names:
                    sab, sbc = self.spaces[(a, b)], self.spaces[(b, c)]
                    for i, u in enumerate(self.block_basis[(a, b)]):
                        fu = sab.layout.to_chain_map(u)
                        for j, w in enumerate(self.block_basis[(b, c)]):
                            gw = sbc.layout.to_chain_map(w)
                            comp = gw @ fu
                            v = self.block_coords[(a, c)](self.spaces[(a, c)].layout.from_chain_map(comp))
                            if v:
                                off = offsets[(a, c)]
                                table[(offsets[(a, b)] + i, offsets[(b, c)] + j)] = {off + k: x for k, x in v.items()}
        self.algebra = FDAlgebra(self.names, labels, grading, table, idem, name=f"End({x.name})" if x.name else "End")
        self.algebra.check_axioms()

    def element(self, f: ChainMap) -> AlgebraElement:
        """The element of ``E`` represented by a chain map between two summands."""
        a = self._name_of(f.source)
        b = self._name_of(f.target)
        if f.shift != 0:
            raise ComplexMismatch("endomorphism algebra lives in shift 0")
        v = self.block_coords[(a, b)](self.spaces[(a, b)].layout.from_chain_map(f))
        off = self.offsets[(a, b)]
        return AlgebraElement(self.algebra, {off + k: c for k, c in v.items()})

    def chain_map(self, a: str, b: str, index: int) -> ChainMap:
        sp = self.spaces[(a, b)]
        return sp.layout.to_chain_map(self.block_basis[(a, b)][index])

    def _name_of(self, c: BoundedComplex) -> str:
        for n, p in self.parts.items():
            if p is c:
                return n
        raise ComplexMismatch("chain map does not start or end at a summand of this complex")


def endomorphism_algebra(x: BoundedComplex, check_basic: bool = True) -> EndomorphismAlgebra:
    return EndomorphismAlgebra(x, check_basic=check_basic)


@dataclass
class _LocalEnd:
    space: HomSpace
    algebra: Optional[FDAlgebra]
    coords: object
    radical: Optional[Subspace]


def _local_end(x: BoundedComplex) -> _LocalEnd:
    cached = x._hom_cache.get(("local-end",))
    if cached is not None:
        return cached
    sp = homotopy_hom(x, x, 0)
    if sp.dim == 0:
        out = _LocalEnd(sp, None, None, None)
    else:
        reps, coords = _adapted_basis(sp, ChainMap.identity(x))
        table = {}
        maps = [sp.layout.to_chain_map(r) for r in reps]
        for i, u in enumerate(maps):
            for j, w in enumerate(maps):
                v = coords(sp.layout.from_chain_map(w @ u))
                if v:
                    table[(i, j)] = v
        labels = ["id"] + [f"f{j}" for j in range(1, len(reps))]
        alg = FDAlgebra(["*"], labels, [(0, 0)] * len(reps), table, [0])
        out = _LocalEnd(sp, alg, coords, radical(alg))
    x._hom_cache[("local-end",)] = out
    return out


def is_indecomposable(x: BoundedComplex) -> bool:
    """True iff ``End_K(x)`` is local (nonzero with ``dim End/rad End == 1``)."""
    le = _local_end(x)
    if le.algebra is None:
        return False
    return le.algebra.dim - le.radical.dim == 1


def are_isomorphic(x: BoundedComplex, y: BoundedComplex) -> bool:
    """For indecomposable ``x`` and ``y``: some ``g∘f`` with ``f: x -> y``,
    ``g: y -> x`` lies outside ``rad End(x)``."""
    for c in (x, y):
        if not is_indecomposable(c):
            raise NotIndecomposable(f"complex {c.name!r} is not indecomposable")
    if x is y:
        return True
    le = _local_end(x)
    fs = homotopy_hom(x, y, 0).representatives()
    gs = homotopy_hom(y, x, 0).representatives()
    rad = le.radical
    for f in fs:
        for g in gs:
            v = le.coords(le.space.layout.from_chain_map(g @ f))
            if not rad.contains(v):
                return True
    return False


def summands_pairwise_noniso(xs: Sequence[BoundedComplex]) -> bool:
    xs = list(xs)
    for c in xs:
        if not is_indecomposable(c):
            raise NotIndecomposable(f"complex {c.name!r} is not indecomposable")
    for i in range(len(xs)):
        for j in range(i + 1, len(xs)):
            if xs[i] is xs[j] or are_isomorphic(xs[i], xs[j]):
                return False
    return True


def isomorphism_classes(xs: Sequence[BoundedComplex]) -> list:
    """Group indecomposable complexes into isomorphism classes (lists of indices)."""
    classes: list = []
    for i, c in enumerate(xs):
        for cl in classes:
            if are_isomorphic(xs[cl[0]], c):
                cl.append(i)
                break
        else:
            classes.append([i])
    return classes


# ---------------------------------------------------------------------------
# two-term tilting check


@dataclass
class TiltingReport:
    presilting: bool
    no_negative: bool
    summand_count_ok: bool
    hom_dims: dict = field(default_factory=dict)
    summand_names: list = field(default_factory=list)
    indecomposable: dict = field(default_factory=dict)
    iso_classes: int = 0
    nvertices: int = 0

    @property
    def tilting(self) -> bool:
        return self.presilting and self.no_negative and self.summand_count_ok

    def to_json(self) -> dict:
        return {
            "presilting": self.presilting,
            "no_negative": self.no_negative,
            "summand_count_ok": self.summand_count_ok,
            "tilting": self.tilting,
            "hom_dims": {str(k): v for k, v in sorted(self.hom_dims.items())},
            "summands": self.summand_names,
            "indecomposable": self.indecomposable,
            "isomorphism_classes": self.iso_classes,
            "vertices": self.nvertices,
        }


def two_term_tilting_check(x: BoundedComplex) -> TiltingReport:
    """Certify a complex in degrees 0, 1 as a tilting complex.

    Presilting means ``Hom_K(x, x[1]) = 0``; together with
    ``Hom_K(x, x[-1]) = 0`` and exactly ``#vertices`` pairwise
    non-isomorphic indecomposable summands this makes ``x`` tilting.
    """
    if any(k not in (0, 1) for k in x.modules):
        raise NotTwoTerm("complex has terms outside degrees 0 and 1")
    x = x.with_default_summands()
    dims = {i: homotopy_hom(x, x, i).dim for i in (-1, 1)}
    parts = x.summand_complexes()
    indec = {p.name: is_indecomposable(p) for p in parts}
    n = x.algebra.nvertices
    if all(indec.values()):
        classes = len(isomorphism_classes(parts))
        count_ok = classes == n
    else:
        classes = 0
        count_ok = False
    return TiltingReport(
        presilting=dims[1] == 0,
        no_negative=dims[-1] == 0,
        summand_count_ok=count_ok,
        hom_dims=dims,
        summand_names=[p.name for p in parts],
        indecomposable=indec,
        iso_classes=classes,
        nvertices=n,
    )
