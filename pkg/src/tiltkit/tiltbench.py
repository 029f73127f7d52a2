"""From a two-term approximation datum to a certified derived equivalence.

The datum is a map ``phi: L_1 -> L_0`` of projective modules.  The
pipeline builds the complex ``L_1 -> L_0``, checks that it is tilting,
computes its endomorphism algebra and, if a candidate presentation is
supplied, checks that the presented algebra is isomorphic to it.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence, Union

from .errors import InputError
from .homotopy import (
    BoundedComplex,
    ChainMap,
    EndomorphismAlgebra,
    HomotopyClass,
    ProjMap,
    ProjModule,
    Summand,
    TiltingReport,
    endomorphism_algebra,
    two_term_tilting_check,
)
from .invariants import InvariantComparison, compare_invariants
from .quivalg import (
    AlgebraElement,
    FDAlgebra,
    PresentationCheck,
    Quiver,
    Relation,
    check_presentation,
    opposite_presentation,
    self_injectivity,
)

CERTIFIED = "derived-equivalence certified"
CONSISTENT = "consistent"
NOT_CERTIFIED = "not certified"


@dataclass
class ApproximationDatum:
    algebra: FDAlgebra
    l1: ProjModule
    l0: ProjModule
    phi: ProjMap
    summands: Optional[Sequence[Summand]] = None
    name: str = ""

    def __post_init__(self):
        if self.phi.source != self.l1 or self.phi.target != self.l0:
            raise InputError("phi must be a map L_1 -> L_0")


# images of candidate arrows may be given in any of these forms
ArrowImage = Union[AlgebraElement, dict, ChainMap, HomotopyClass]


@dataclass
class Candidate:
    """A presentation ``kQ/I`` and a map of its generators into ``End``.

    ``assignment`` is either a pair ``(vertex_map, arrow_map)`` or a
    callable building that pair from the computed endomorphism algebra.
    """

    quiver: Quiver
    relations: Sequence[Relation]
    assignment: Union[tuple, Callable[[EndomorphismAlgebra], tuple]]
    name: str = ""


def build_two_term(d: ApproximationDatum) -> BoundedComplex:
    return BoundedComplex(
        d.algebra,
        {1: d.l1, 0: d.l0},
        {1: d.phi},
        d.summands,
        name=d.name,
    ).with_default_summands()


def _as_element(end: EndomorphismAlgebra, x) -> AlgebraElement:
    if isinstance(x, HomotopyClass):
        x = x.rep
    if isinstance(x, ChainMap):
        return end.element(x)
    if isinstance(x, AlgebraElement):
        return x
    return AlgebraElement(end.algebra, dict(x))


@dataclass
class EquivalenceReport:
    tilting: TiltingReport
    end: Optional[EndomorphismAlgebra]
    comparison: Optional[PresentationCheck]
    invariants: Optional[InvariantComparison]
    source_self_injective: bool
    warnings: list = field(default_factory=list)

    @property
    def certified(self) -> bool:
        return self.tilting.tilting and self.comparison is not None and self.comparison.ok

    @property
    def verdict(self) -> str:
        if self.certified:
            return CERTIFIED
        if self.tilting.tilting and self.comparison is None and self.invariants is not None and self.invariants.consistent:
            return CONSISTENT
        return NOT_CERTIFIED

    @property
    def end_dim(self) -> Optional[int]:
        return None if self.end is None else self.end.algebra.dim

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "tilting": self.tilting.to_json(),
            "end_dim": self.end_dim,
            "end_vertices": None if self.end is None else list(self.end.names),
            "presentation": None if self.comparison is None else self.comparison.to_json(),
            "invariants": None if self.invariants is None else self.invariants.to_json(),
            "source_self_injective": self.source_self_injective,
            "warnings": list(self.warnings),
        }


def run_pipeline(d: ApproximationDatum, candidate: Optional[Candidate] = None, max_len: Optional[int] = None) -> EquivalenceReport:
    notes = []
    src_si = self_injectivity(d.algebra).self_injective
    if not src_si:
        msg = "source algebra is not self-injective; the self-injectivity hypothesis is unmet"
        notes.append(msg)
        warnings.warn(msg, stacklevel=2)
    x = build_two_term(d)
    rep = two_term_tilting_check(x)
    if not rep.tilting:
        return EquivalenceReport(rep, None, None, None, src_si, notes)
    # summands were certified indecomposable and pairwise non-isomorphic
    end = endomorphism_algebra(x, check_basic=False)
    inv = compare_invariants(d.algebra, end.algebra)
    cmp = None
    if candidate is not None:
        assignment = candidate.assignment
        if callable(assignment):
            assignment = assignment(end)
        vmap, amap = assignment
        amap = {k: _as_element(end, v) for k, v in amap.items()}
        cmp = check_presentation(end.algebra, candidate.quiver, candidate.relations, vmap, amap, max_len=max_len)
    report = EquivalenceReport(rep, end, cmp, inv, src_si, notes)
    if report.certified and not inv.consistent:
        report.warnings.append("certified equivalence but invariants disagree: internal inconsistency")
    return report


# ---------------------------------------------------------------------------
# the trivial equivalence


def stalk_datum(a: FDAlgebra) -> ApproximationDatum:
    """``0 -> A`` with one summand ``P(v)`` per vertex."""
    l0 = ProjModule(a, a.vertices)
    l1 = ProjModule(a, ())
    summands = [Summand(f"P({v})", {0: (i,)}) for i, v in enumerate(a.vertices)]
    return ApproximationDatum(a, l1, l0, ProjMap.zero(l1, l0), summands, name="A")


def stalk_candidate(a: FDAlgebra) -> Candidate:
    """The opposite presentation of a presented algebra ``a``, mapped to
    ``End(A_A)``: vertex ``v`` goes to ``P(v)`` and each arrow to left
    multiplication by itself."""
    if a.quiver is None:
        raise InputError("algebra has no presentation")
    opq, oprels = opposite_presentation(a.quiver, a.relations)

    def assign(end: EndomorphismAlgebra):
        vmap = {v: f"P({v})" for v in a.vertices}
        amap = {}
        for ar in a.quiver.arrows:
            src, tgt = end.parts[f"P({ar.target})"], end.parts[f"P({ar.source})"]
            f = ProjMap(src.module(0), tgt.module(0), {(0, 0): a.path_element([ar.id])})
            amap[ar.id] = ChainMap(src, tgt, 0, {0: f})
        return vmap, amap

    return Candidate(opq, oprels, assign, name=f"{a.name}^op" if a.name else "A^op")
