"""Exact linear algebra over the rationals.

Everything here works with :class:`fractions.Fraction`.  Vectors are
handled in two shapes: dense tuples (the public matrix API) and sparse
``dict[int, Fraction]`` mappings (used internally by the algebra and
homotopy code, where systems are large but very sparse).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

from .errors import SubspaceNotContained

Sparse = dict  # dict[int, Fraction]


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise TypeError("floating point values are not accepted")
    return Fraction(x)


def sparse_from_dense(v: Sequence) -> Sparse:
    return {i: as_fraction(x) for i, x in enumerate(v) if x != 0}


def dense_from_sparse(v: Sparse, n: int) -> tuple:
    return tuple(v.get(i, Fraction(0)) for i in range(n))


def axpy(y: Sparse, a: Fraction, x: Sparse) -> None:
    """In place ``y += a * x``; drops entries that cancel."""
    if not a:
        return
    for k, c in x.items():
        s = y.get(k, 0) + a * c
        if s:
            y[k] = s
        else:
            y.pop(k, None)


def scaled(x: Sparse, a: Fraction) -> Sparse:
    if not a:
        return {}
    return {k: a * c for k, c in x.items()}


class Echelon:
    """Incrementally maintained *fully reduced* row echelon form.

    Rows are sparse vectors.  The pivot of a row is its nonzero column of
    smallest ``key``; every other stored row is zero in that column.  With
    the default key this is the textbook reduced row echelon form.

    If ``track`` is set, every stored row carries a companion vector
    recording which combination of the inserted vectors produced it, which
    is what kernel computations need.
    """

    def __init__(self, key: Optional[Callable[[int], object]] = None, track: bool = False):
        self.key = key
        self.track = track
        self.rows: dict[int, Sparse] = {}
        self.tags: dict[int, Sparse] = {}
        self._by_col: dict[int, set] = {}
        self._count = 0
        self.relations: list = []

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def pivots(self) -> list:
        if self.key is None:
            return sorted(self.rows)
        return sorted(self.rows, key=self.key)

    def _pivot_of(self, v: Sparse) -> int:
        if self.key is None:
            return min(v)
        return min(v, key=self.key)

    def reduce(self, v: Sparse, tag: Optional[Sparse] = None):
        """Remainder of ``v`` modulo the row space (and the updated tag)."""
        r = dict(v)
        t = dict(tag) if tag is not None else None
        for p in [c for c in v if c in self.rows]:
            a = r.get(p)
            if a:
                axpy(r, -a, self.rows[p])
                if t is not None:
                    axpy(t, -a, self.tags[p])
        if t is not None:
            return r, t
        return r

    def contains(self, v: Sparse) -> bool:
        return not self.reduce(v)

    def add(self, v: Sparse, tag: Optional[Sparse] = None):
        """Insert ``v``.

        Returns the pivot column of the new row, or ``None`` if ``v`` was
        dependent.  When tracking, a dependent insertion records the
        relation in :attr:`relations`.
        """
        if self.track and tag is None:
            tag = {self._count: Fraction(1)}
        self._count += 1
        if self.track:
            r, t = self.reduce(v, tag)
        else:
            r, t = self.reduce(v), None
        if not r:
            if self.track:
                self.relations.append(t)
            return None
        p = self._pivot_of(r)
        inv = 1 / r[p]
        r = scaled(r, inv)
        if t is not None:
            t = scaled(t, inv)
        for q in list(self._by_col.get(p, ())):
            row = self.rows[q]
            a = row.get(p)
            if not a:
                continue
            old = set(row)
            axpy(row, -a, r)
            if self.track:
                axpy(self.tags[q], -a, t)
            self._reindex(q, old, row)
        self.rows[p] = r
        if t is not None:
            self.tags[p] = t
        for c in r:
            self._by_col.setdefault(c, set()).add(p)
        return p

    def _reindex(self, q, old, row):
        for c in old - set(row):
            self._by_col[c].discard(q)
        for c in set(row) - old:
            self._by_col.setdefault(c, set()).add(q)

    def basis(self) -> list:
        return [self.rows[p] for p in self.pivots()]


class RationalMatrix:
    """Dense immutable matrix of Fractions."""

    __slots__ = ("nrows", "ncols", "_rows")

    def __init__(self, rows: Iterable[Iterable], ncols: Optional[int] = None):
        data = tuple(tuple(as_fraction(x) for x in row) for row in rows)
        if ncols is None:
            if not data:
                raise ValueError("ncols required for a matrix without rows")
            ncols = len(data[0])
        for row in data:
            if len(row) != ncols:
                raise ValueError("ragged matrix")
        self.nrows = len(data)
        self.ncols = ncols
        self._rows = data

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], ncols=n)

    @classmethod
    def zeros(cls, r: int, c: int) -> "RationalMatrix":
        return cls([[0] * c for _ in range(r)], ncols=c)

    @property
    def shape(self) -> tuple:
        return (self.nrows, self.ncols)

    @property
    def rows(self) -> tuple:
        return self._rows

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i][j]

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalMatrix) and self.shape == other.shape and self._rows == other._rows

    def __hash__(self):
        return hash((self.shape, self._rows))

    def __repr__(self) -> str:
        body = ", ".join("[" + ", ".join(str(x) for x in row) + "]" for row in self._rows)
        return f"RationalMatrix([{body}])"

    def __matmul__(self, other):
        if isinstance(other, RationalMatrix):
            if self.ncols != other.nrows:
                raise ValueError("shape mismatch")
            cols = list(zip(*other.rows)) if other.nrows else [()] * other.ncols
            return RationalMatrix(
                [[sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in cols] for row in self._rows],
                ncols=other.ncols,
            )
        v = tuple(as_fraction(x) for x in other)
        if len(v) != self.ncols:
            raise ValueError("shape mismatch")
        return tuple(sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in self._rows)

    def transpose(self) -> "RationalMatrix":
        cols = [[row[j] for row in self._rows] for j in range(self.ncols)]
        return RationalMatrix(cols, ncols=self.nrows)

    def sparse_rows(self) -> list:
        return [sparse_from_dense(row) for row in self._rows]

    def rank(self) -> int:
        return len(rref(self)[1])


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^ambient_dim, stored by its reduced echelon basis."""

    ambient_dim: int
    basis: tuple  # tuple of dense tuples, RREF, pivots increasing

    @classmethod
    def span(cls, ambient_dim: int, vectors: Iterable) -> "Subspace":
        ech = Echelon()
        for v in vectors:
            ech.add(v if isinstance(v, dict) else sparse_from_dense(v))
        return cls._from_echelon(ambient_dim, ech)

    @classmethod
    def _from_echelon(cls, n: int, ech: Echelon) -> "Subspace":
        return cls(n, tuple(dense_from_sparse(r, n) for r in ech.basis()))

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, ())

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, RationalMatrix.identity(n).rows)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> list:
        return [next(i for i, x in enumerate(v) if x) for v in self.basis]

    def sparse_basis(self) -> list:
        return [sparse_from_dense(v) for v in self.basis]

    def echelon(self) -> Echelon:
        ech = Echelon()
        for v in self.sparse_basis():
            ech.add(v)
        return ech

    def contains(self, v) -> bool:
        if not isinstance(v, dict):
            v = sparse_from_dense(v)
        return self.echelon().contains(v)

    def contains_subspace(self, other: "Subspace") -> bool:
        ech = self.echelon()
        return all(ech.contains(v) for v in other.sparse_basis())

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.span(self.ambient_dim, self.sparse_basis() + other.sparse_basis())

    def __le__(self, other: "Subspace") -> bool:
        return other.contains_subspace(self)


def rref(m: RationalMatrix):
    """Reduced row echelon form and pivot columns of ``m``."""
    ech = Echelon()
    for row in m.sparse_rows():
        ech.add(row)
    piv = ech.pivots()
    rows = [dense_from_sparse(ech.rows[p], m.ncols) for p in piv]
    rows += [(Fraction(0),) * m.ncols] * (m.nrows - len(rows))
    return RationalMatrix(rows, ncols=m.ncols), piv


def kernel_sparse(columns: Sequence[Sparse], ncols: int) -> list:
    """Null space of the map whose ``j``-th column image is ``columns[j]``.

    Returns sparse vectors in the domain forming a basis of the kernel.
    """
    ech = Echelon(track=True)
    for j in range(ncols):
        ech.add(columns[j], {j: Fraction(1)})
    basis = Echelon()
    for t in ech.relations:
        basis.add(t)
    return basis.basis()


def kernel(m: RationalMatrix) -> Subspace:
    """Basis of ``{v : m v = 0}``."""
    r, piv = rref(m)
    free = [j for j in range(m.ncols) if j not in set(piv)]
    vecs = []
    for f in free:
        v = [Fraction(0)] * m.ncols
        v[f] = Fraction(1)
        for i, p in enumerate(piv):
            v[p] = -r[i, f]
        vecs.append(v)
    return Subspace.span(m.ncols, vecs)


def solve_sparse(columns: Sequence[Sparse], b: Sparse) -> Optional[Sparse]:
    """Some ``x`` with ``sum_j x_j columns[j] == b``, or ``None``."""
    ech = Echelon(track=True)
    for j, col in enumerate(columns):
        ech.add(col, {j: Fraction(1)})
    r, t = ech.reduce(b, {})
    if r:
        return None
    return scaled(t, Fraction(-1))


def solve(m: RationalMatrix, b: Sequence) -> Optional[tuple]:
    """Some ``x`` with ``m x = b`` or ``None`` when the system is inconsistent."""
    if len(b) != m.nrows:
        raise ValueError("right-hand side has wrong length")
    cols = [dict() for _ in range(m.ncols)]
    for i, row in enumerate(m.rows):
        for j, x in enumerate(row):
            if x:
                cols[j][i] = x
    x = solve_sparse(cols, sparse_from_dense(b))
    if x is None:
        return None
    return dense_from_sparse(x, m.ncols)


class QuotientMap:
    """Coordinates on ``ambient / sub``.

    The basis of the quotient is given by :attr:`representatives`, lifts
    into the ambient space that are reduced modulo ``sub``.
    """

    def __init__(self, ambient: Subspace, sub: Subspace, preferred: Iterable = ()):
        if ambient.ambient_dim != sub.ambient_dim:
            raise ValueError("ambient dimensions differ")
        if not ambient.contains_subspace(sub):
            raise SubspaceNotContained("subspace is not contained in the ambient space")
        self.n = ambient.ambient_dim
        self._sub = sub.echelon()
        comp = Echelon()
        candidates = [v if isinstance(v, dict) else sparse_from_dense(v) for v in preferred]
        candidates += ambient.sparse_basis()
        for v in candidates:
            comp.add(self._sub.reduce(v))
        self._comp = comp
        self._piv = comp.pivots()
        self.representatives = [comp.rows[p] for p in self._piv]
        self.dim = len(self._piv)

    def __call__(self, v) -> tuple:
        if not isinstance(v, dict):
            v = sparse_from_dense(v)
        r = self._sub.reduce(v)
        return tuple(r.get(p, Fraction(0)) for p in self._piv)

    def coords_sparse(self, v: Sparse) -> Sparse:
        r = self._sub.reduce(v)
        return {i: r[p] for i, p in enumerate(self._piv) if r.get(p)}

    def is_zero(self, v: Sparse) -> bool:
        return self._sub.contains(v)


def quotient_coordinates(ambient: Subspace, sub: Subspace) -> QuotientMap:
    return QuotientMap(ambient, sub)


def determinant(m: Sequence[Sequence]) -> Fraction:
    """Exact determinant by fraction-valued Gaussian elimination."""
    a = [[as_fraction(x) for x in row] for row in m]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            if f:
                for k in range(c, n):
                    a[r][k] -= f * a[c][k]
    return det
