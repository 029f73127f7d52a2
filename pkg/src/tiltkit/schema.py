"""JSON encodings of presentations, complexes and assignments.

Coefficients are written as strings ``"p/q"`` so that rationals round-trip
exactly; integers are accepted on input.

Algebra::

    {"vertices": [...],
     "arrows": [{"id": "a", "src": "1", "tgt": "2"}, ...],
     "relations": [{"terms": [{"coeff": "1", "path": ["a", "b"]}, ...]}, ...]}

Complex::

    {"algebra": <algebra object or file name>,
     "degrees": {"0": [vertex labels], "1": [...]},
     "differential": [{"degree": 1, "row": t, "col": s,
                       "element": [{"coeff": "1", "path": [...]}]}],
     "summands": [{"name": "B0", "rows_by_degree": {"1": [0], "0": [0]}}]}

``degree`` defaults to 1 and names the source degree of the entry.  Paths
with no arrows need a ``"start"`` vertex.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path as FilePath
from typing import Optional, Union

from .errors import InputError, ParseError
from .homotopy import BoundedComplex, ProjMap, ProjModule, Summand
from .quivalg import (
    AlgebraElement,
    Arrow,
    FDAlgebra,
    Quiver,
    Relation,
    construct_algebra,
    find_presentation,
)


def fraction_from_json(x) -> Fraction:
    if isinstance(x, bool) or isinstance(x, float):
        raise ParseError(f"coefficient {x!r} must be an integer or a string 'p/q'")
    try:
        return Fraction(x)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise ParseError(f"bad coefficient {x!r}") from exc


def fraction_to_json(c: Fraction) -> str:
    return str(Fraction(c))


def load_json(source: Union[str, FilePath, dict]) -> dict:
    if isinstance(source, dict):
        return source
    try:
        with open(source) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{source}: {exc}") from exc
    except OSError as exc:
        raise InputError(f"cannot read {source}: {exc}") from exc


def _require(d: dict, key: str, kind=None):
    if not isinstance(d, dict) or key not in d:
        raise ParseError(f"missing field {key!r}")
    v = d[key]
    if kind is not None and not isinstance(v, kind):
        raise ParseError(f"field {key!r} has the wrong type")
    return v


# ---------------------------------------------------------------------------
# presentations


def quiver_from_json(d: dict) -> Quiver:
    vertices = [str(v) for v in _require(d, "vertices", list)]
    arrows = []
    for a in d.get("arrows", []):
        arrows.append(Arrow(str(_require(a, "id")), str(_require(a, "src")), str(_require(a, "tgt"))))
    return Quiver(tuple(vertices), tuple(arrows))


def terms_from_json(q: Quiver, terms: list) -> tuple:
    if not isinstance(terms, list):
        raise ParseError("terms must be a list")
    out = []
    for t in terms:
        path = _require(t, "path", list)
        out.append((fraction_from_json(t.get("coeff", 1)), q.path([str(x) for x in path], start=t.get("start"))))
    return tuple(out)


def terms_to_json(terms) -> list:
    out = []
    for c, p in terms:
        item = {"coeff": fraction_to_json(c), "path": list(p.arrows)}
        if not p.arrows:
            item["start"] = p.start
        out.append(item)
    return out


def presentation_from_json(d: dict):
    q = quiver_from_json(d)
    rels = [Relation(terms_from_json(q, _require(r, "terms", list))) for r in d.get("relations", [])]
    return q, rels


def presentation_to_json(q: Quiver, rels) -> dict:
    return {
        "vertices": list(q.vertices),
        "arrows": [{"id": a.id, "src": a.source, "tgt": a.target} for a in q.arrows],
        "relations": [{"terms": terms_to_json(r.terms)} for r in rels],
    }


def algebra_from_json(source, max_len: Optional[int] = None, name: str = "") -> FDAlgebra:
    d = load_json(source)
    q, rels = presentation_from_json(d)
    return construct_algebra(q, rels, max_len=max_len, name=name or d.get("name", ""))


def algebra_to_json(a: FDAlgebra) -> dict:
    """The algebra's own presentation if it has one, else a computed one."""
    if a.quiver is not None:
        out = presentation_to_json(a.quiver, a.relations)
    else:
        q, rels, _ = find_presentation(a)
        out = presentation_to_json(q, rels)
    if a.name:
        out["name"] = a.name
    return out


def element_from_json(a: FDAlgebra, terms: list) -> AlgebraElement:
    if a.quiver is None:
        raise InputError("algebra has no presentation")
    x = a.zero()
    for c, p in terms_from_json(a.quiver, terms):
        x = x + c * a.normal_form(p)
    return x


def element_to_json(x: AlgebraElement) -> list:
    a = x.algebra
    if a.paths is None:
        raise InputError("algebra has no path basis")
    return terms_to_json((c, a.paths[k]) for k, c in sorted(x.vec.items()))


# ---------------------------------------------------------------------------
# complexes


def complex_from_json(source, max_len: Optional[int] = None, algebra: Optional[FDAlgebra] = None) -> BoundedComplex:
    d = load_json(source)
    if algebra is None:
        alg = _require(d, "algebra")
        if isinstance(alg, str):
            base = FilePath(source).parent if not isinstance(source, dict) else FilePath(".")
            alg = load_json(base / alg)
        algebra = algebra_from_json(alg, max_len=max_len)
    degrees = _require(d, "degrees", dict)
    try:
        mods = {int(k): ProjModule(algebra, tuple(str(v) for v in vs)) for k, vs in degrees.items()}
    except ValueError as exc:
        raise ParseError("degree keys must be integers") from exc
    entries: dict = {}
    for e in d.get("differential", []):
        k = int(e.get("degree", 1))
        t, s = int(_require(e, "row")), int(_require(e, "col"))
        entries.setdefault(k, {})[(t, s)] = element_from_json(algebra, _require(e, "element", list)).vec
    empty = ProjModule(algebra, ())
    diffs = {k: ProjMap(mods.get(k, empty), mods.get(k - 1, empty), ent) for k, ent in entries.items()}
    summands = None
    if "summands" in d:
        summands = [
            Summand(str(_require(s, "name")), {int(k): tuple(int(r) for r in v) for k, v in _require(s, "rows_by_degree", dict).items()})
            for s in d["summands"]
        ]
    return BoundedComplex(algebra, mods, diffs, summands, name=d.get("name", ""))


def complex_to_json(x: BoundedComplex, algebra_ref=None) -> dict:
    out = {
        "algebra": algebra_ref if algebra_ref is not None else algebra_to_json(x.algebra),
        "degrees": {str(k): list(m.vertices) for k, m in sorted(x.modules.items())},
        "differential": [],
    }
    for k, dk in sorted(x.differentials.items()):
        for (t, s), v in sorted(dk.entries.items()):
            out["differential"].append(
                {"degree": k, "row": t, "col": s, "element": element_to_json(AlgebraElement(x.algebra, v))}
            )
    if x.summands:
        out["summands"] = [
            {"name": s.name, "rows_by_degree": {str(k): list(v) for k, v in sorted(s.rows.items())}}
            for s in x.summands
        ]
    if x.name:
        out["name"] = x.name
    return out


# ---------------------------------------------------------------------------
# assignments for presentation checks


def assignment_from_json(e: FDAlgebra, source) -> tuple:
    """``{"vertices": {cand: target}, "arrows": {id: [terms]}}`` where the
    terms are paths of ``e``'s own presentation."""
    d = load_json(source)
    vmap = {str(k): str(v) for k, v in _require(d, "vertices", dict).items()}
    amap = {str(k): element_from_json(e, v) for k, v in _require(d, "arrows", dict).items()}
    return vmap, amap
