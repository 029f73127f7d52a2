"""Ice quivers with potential and their frozen Jacobian quotients.

A potential is a signed sum of cycles.  Each cycle is stored starting at
its lexicographically least rotation (by arrow ids), so two potentials are
equal iff their term multisets are.

The quotient by the frozen idempotents lives on the full subquiver of
mutable vertices.  Its relations are the cyclic derivatives ``d_a W`` for
every arrow ``a`` with at least one mutable endpoint, after deleting the
monomials that pass through a frozen vertex.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import InputError, InvalidRelation, NonCycleTerm, ParseError, UnknownVertex
from .invariants import InvariantComparison, InvariantTable, compare_invariants, invariant_table
from .quivalg import Arrow, FDAlgebra, Path, Quiver, Relation, construct_algebra
from .schema import load_json, presentation_to_json, quiver_from_json

__all__ = [
    "IceQuiverWithPotential",
    "InvariantComparison",
    "InvariantTable",
    "canonical_cycle",
    "check_symmetry",
    "compare_invariants",
    "cyclic_derivative",
    "find_automorphisms",
    "frozen_jacobian_quotient",
    "invariant_table",
    "iqp_to_json",
    "jacobian_relations",
    "parse_iqp",
    "relabel",
]


def canonical_cycle(arrows: Sequence[str]) -> tuple:
    arrows = tuple(arrows)
    return min(arrows[i:] + arrows[:i] for i in range(len(arrows)))


@dataclass(frozen=True)
class IceQuiverWithPotential:
    quiver: Quiver
    potential: tuple  # ((sign, cycle arrow ids), ...) canonical rotations
    frozen: frozenset = frozenset()
    rotation: Optional[dict] = None
    order: Optional[int] = None
    name: str = ""

    def __post_init__(self):
        q = self.quiver
        amap = q.arrow
        terms = []
        for sign, cyc in self.potential:
            cyc = tuple(cyc)
            if not cyc:
                raise NonCycleTerm("empty potential term")
            for a in cyc:
                if a not in amap:
                    raise ParseError(f"unknown arrow {a!r} in potential")
            for a, b in zip(cyc, cyc[1:]):
                if amap[a].target != amap[b].source:
                    raise ParseError(f"arrows {a} and {b} are not composable")
            if amap[cyc[-1]].target != amap[cyc[0]].source:
                raise NonCycleTerm(f"term {' '.join(cyc)} is not a cycle")
            c = Fraction(sign)
            if c == 0:
                continue
            terms.append((c, canonical_cycle(cyc)))
        object.__setattr__(self, "potential", tuple(terms))
        fr = frozenset(str(v) for v in self.frozen)
        for v in fr:
            if v not in q.vertices:
                raise UnknownVertex(f"frozen vertex {v!r} is not a vertex")
        object.__setattr__(self, "frozen", fr)
        if self.rotation is not None:
            rot = {str(k): str(v) for k, v in self.rotation.items()}
            for v in list(rot) + list(rot.values()):
                if v not in q.vertices:
                    raise UnknownVertex(f"rotation mentions unknown vertex {v!r}")
            object.__setattr__(self, "rotation", rot)

    @property
    def mutable(self) -> tuple:
        return tuple(v for v in self.quiver.vertices if v not in self.frozen)


def parse_iqp(source) -> IceQuiverWithPotential:
    """Read the IQP JSON encoding (algebra schema plus ``potential``,
    ``frozen`` and optional ``rotation`` / ``order``)."""
    d = load_json(source)
    if not isinstance(d, dict):
        raise ParseError("top level must be an object")
    declared = {str(v) for v in d.get("vertices", [])}
    for a in d.get("arrows", []):
        for end in ("src", "tgt"):
            if isinstance(a, dict) and end in a and str(a[end]) not in declared:
                raise UnknownVertex(f"arrow {a.get('id')!r} uses undeclared vertex {a[end]!r}")
    q = quiver_from_json(d)
    pot = []
    for t in d.get("potential", []):
        if not isinstance(t, dict) or "cycle" not in t:
            raise ParseError("potential terms need a 'cycle'")
        sign = t.get("sign", 1)
        if isinstance(sign, bool) or not isinstance(sign, (int, str)):
            raise ParseError(f"bad sign {sign!r}")
        pot.append((Fraction(sign), [str(a) for a in t["cycle"]]))
    order = d.get("order")
    return IceQuiverWithPotential(
        q,
        tuple(pot),
        frozenset(str(v) for v in d.get("frozen", [])),
        d.get("rotation"),
        int(order) if order is not None else None,
        d.get("name", ""),
    )


def iqp_to_json(w: IceQuiverWithPotential) -> dict:
    out = presentation_to_json(w.quiver, ())
    del out["relations"]
    out["potential"] = [{"sign": int(c) if c.denominator == 1 else str(c), "cycle": list(cyc)} for c, cyc in w.potential]
    out["frozen"] = sorted(w.frozen, key=w.quiver.vertices.index)
    if w.rotation is not None:
        out["rotation"] = dict(w.rotation)
    if w.order is not None:
        out["order"] = w.order
    if w.name:
        out["name"] = w.name
    return out


# ---------------------------------------------------------------------------
# cyclic derivatives and the quotient


def _derivative_terms(q: Quiver, potential, arrow_id: str) -> dict:
    amap = q.arrow
    out: dict = {}
    for c, cyc in potential:
        for j, a in enumerate(cyc):
            if a != arrow_id:
                continue
            rest = cyc[j + 1:] + cyc[:j]
            p = Path(amap[a].target, rest, amap[a].source)
            out[p] = out.get(p, Fraction(0)) + c
    return {p: c for p, c in out.items() if c}


def cyclic_derivative(w: IceQuiverWithPotential, arrow_id: str) -> Optional[Relation]:
    """``d_a W``; ``None`` when it vanishes (``a`` absent or cancelling)."""
    if arrow_id not in w.quiver.arrow:
        raise InputError(f"unknown arrow {arrow_id!r}")
    terms = _derivative_terms(w.quiver, w.potential, arrow_id)
    if not terms:
        return None
    return Relation(tuple((c, p) for p, c in terms.items()))


def jacobian_relations(w: IceQuiverWithPotential) -> list:
    """Relations of the frozen Jacobian quotient, on the mutable subquiver."""
    q = w.quiver
    amap = q.arrow
    fr = w.frozen
    rels = []
    for ar in q.arrows:
        if ar.source in fr and ar.target in fr:
            continue
        terms = _derivative_terms(q, w.potential, ar.id)
        kept = []
        for p, c in terms.items():
            verts = [p.start] + [amap[a].target for a in p.arrows]
            if not any(v in fr for v in verts):
                kept.append((c, p))
        if not kept:
            continue
        try:
            rels.append(Relation(tuple(kept)))
        except InvalidRelation:
            continue
    return rels


def frozen_jacobian_quotient(w: IceQuiverWithPotential, max_len: Optional[int] = None) -> FDAlgebra:
    mutable = w.mutable
    if not mutable:
        raise InputError("every vertex is frozen: the quotient has no vertices")
    sub = w.quiver.full_subquiver(mutable)
    return construct_algebra(sub, jacobian_relations(w), max_len=max_len, name=w.name or "P(Q,W,F)/<F>")


# ---------------------------------------------------------------------------
# rotational symmetry


def _potential_counter(potential) -> Counter:
    return Counter((c, cyc) for c, cyc in potential)


def _arrow_bijections(q: Quiver, vmap: dict, limit: int = 10000):
    """Arrow bijections compatible with the vertex map ``vmap``."""
    groups: dict = {}
    for a in q.arrows:
        groups.setdefault((a.source, a.target), []).append(a.id)
    choices = []
    for (u, v), ids in sorted(groups.items()):
        tgt = groups.get((vmap[u], vmap[v]), [])
        if len(tgt) != len(ids):
            return
        choices.append([(ids, perm) for perm in itertools.permutations(tgt)])
    for count, combo in enumerate(itertools.product(*choices)):
        if count >= limit:
            return
        amap = {}
        for ids, perm in combo:
            amap.update(zip(ids, perm))
        yield amap


def _preserves(w: IceQuiverWithPotential, vmap: dict) -> bool:
    if sorted(vmap) != sorted(w.quiver.vertices) or sorted(vmap.values()) != sorted(w.quiver.vertices):
        return False
    if {vmap[v] for v in w.frozen} != set(w.frozen):
        return False
    target = _potential_counter(w.potential)
    for amap in _arrow_bijections(w.quiver, vmap):
        image = Counter((c, canonical_cycle(tuple(amap[a] for a in cyc))) for c, cyc in w.potential)
        if image == target:
            return True
    return False


def _order(vmap: dict) -> int:
    seen, k = set(), 1
    for v in vmap:
        if v in seen:
            continue
        n, x = 0, v
        while True:
            seen.add(x)
            x = vmap[x]
            n += 1
            if x == v:
                break
        k = k * n // _gcd(k, n)
    return k


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def find_automorphisms(w: IceQuiverWithPotential, order: Optional[int] = None, limit: int = 1):
    """Up to ``limit`` non-identity automorphisms of ``(Q, W, F)`` (of the
    given order, if set), by backtracking over degree-preserving matchings."""
    q = w.quiver
    vs = list(q.vertices)

    def sig(v):
        outs = Counter(a.target == v for a in q.outgoing(v))
        return (len(q.outgoing(v)), len(q.incoming(v)), outs[True], v in w.frozen)

    sigs = {v: sig(v) for v in vs}
    mult = Counter((a.source, a.target) for a in q.arrows)
    found = []

    def extend(i, vmap, used):
        if len(found) >= limit:
            return
        if i == len(vs):
            if any(vmap[v] != v for v in vs) and (order is None or _order(vmap) == order) and _preserves(w, vmap):
                found.append(dict(vmap))
            return
        v = vs[i]
        for x in vs:
            if x in used or sigs[x] != sigs[v]:
                continue
            ok = True
            for u, y in vmap.items():
                if mult[(v, u)] != mult[(x, y)] or mult[(u, v)] != mult[(y, x)]:
                    ok = False
                    break
            if ok and mult[(v, v)] != mult[(x, x)]:
                ok = False
            if ok:
                vmap[v] = x
                used.add(x)
                extend(i + 1, vmap, used)
                del vmap[v]
                used.discard(x)

    extend(0, {}, set())
    return found


def check_symmetry(w: IceQuiverWithPotential) -> bool:
    """Is there a quiver automorphism fixing ``F`` setwise and ``W``?

    A supplied rotation is checked directly.  Without one, a non-identity
    automorphism is searched for (of order ``w.order`` if declared).
    """
    if w.rotation is not None:
        vmap = dict(w.rotation)
        if set(vmap) != set(w.quiver.vertices):
            return False
        return _preserves(w, vmap)
    return bool(find_automorphisms(w, order=w.order))


def relabel(w: IceQuiverWithPotential, perm: dict) -> IceQuiverWithPotential:
    """Rename vertices by ``perm`` (a bijection)."""
    q = w.quiver
    nq = Quiver(
        tuple(perm[v] for v in q.vertices),
        tuple(Arrow(a.id, perm[a.source], perm[a.target]) for a in q.arrows),
    )
    rot = None if w.rotation is None else {perm[k]: perm[v] for k, v in w.rotation.items()}
    return IceQuiverWithPotential(nq, w.potential, frozenset(perm[v] for v in w.frozen), rot, w.order, w.name)
