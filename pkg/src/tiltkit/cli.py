"""Command-line front end.

Every command emits one JSON report (stdout, or ``--json PATH``).  Exit
codes: 0 success, 1 a mathematical check failed, 2 bad input or usage,
3 a presentation did not stabilize.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from pathlib import Path
from typing import Optional

from . import d2n, schema
from .errors import InputError, NotStabilized, TiltkitError
from .homotopy import endomorphism_algebra, two_term_tilting_check
from .invariants import compare_invariants
from .postnikov import check_symmetry, frozen_jacobian_quotient, parse_iqp
from .quivalg import (
    cartan_matrix,
    center_dimension,
    check_presentation,
    radical,
    radical_layers,
    self_injectivity,
    symmetry_report,
)
from .tiltbench import build_two_term

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_UNSTABLE = 0, 1, 2, 3


def _algebra_report(a, seed: int) -> dict:
    J = radical(a)
    cert = self_injectivity(a)
    rep = {
        "name": a.name,
        "dim": a.dim,
        "vertices": list(a.vertices),
        "stabilization_length": a.stabilization_length,
        "block_dims": {f"{a.vertices[u]}->{a.vertices[v]}": len(a.block(u, v))
                       for u in range(a.nvertices) for v in range(a.nvertices) if a.block(u, v)},
        "cartan": cartan_matrix(a),
        "radical_layer_dims": [s.dim for s in radical_layers(a, J)],
        "self_injectivity": cert.to_json(),
        "center_dim": center_dimension(a),
    }
    if cert.self_injective:
        rep["symmetry"] = symmetry_report(a, seed=seed).to_json()
    return rep


def _load_any_algebra(path: str, max_len: Optional[int]):
    """An algebra file, an IQP file (its frozen Jacobian quotient) or a
    complex file (its endomorphism algebra)."""
    d = schema.load_json(path)
    if isinstance(d, dict) and "potential" in d:
        return frozen_jacobian_quotient(parse_iqp(d), max_len=max_len)
    if isinstance(d, dict) and "degrees" in d:
        x = schema.complex_from_json(path, max_len=max_len).with_default_summands()
        return endomorphism_algebra(x).algebra
    return schema.algebra_from_json(d, max_len=max_len, name=Path(path).stem)


def cmd_algebra_build(args) -> tuple:
    a = schema.algebra_from_json(args.file, max_len=args.max_len, name=Path(args.file).stem)
    return EXIT_OK, _algebra_report(a, args.seed)


def cmd_algebra_verify_iso(args) -> tuple:
    e = _load_any_algebra(args.target, args.max_len)
    if e.quiver is None:
        raise InputError("target must be a presented algebra file")
    q, rels = schema.presentation_from_json(schema.load_json(args.candidate))
    vmap, amap = schema.assignment_from_json(e, args.assignment)
    chk = check_presentation(e, q, rels, vmap, amap, max_len=args.max_len)
    return (EXIT_OK if chk.ok else EXIT_FAILED), chk.to_json()


def cmd_complex_check(args) -> tuple:
    x = schema.complex_from_json(args.file, max_len=args.max_len)
    rep = two_term_tilting_check(x)
    return (EXIT_OK if rep.tilting else EXIT_FAILED), rep.to_json()


def cmd_complex_endo(args) -> tuple:
    x = schema.complex_from_json(args.file, max_len=args.max_len).with_default_summands()
    e = endomorphism_algebra(x)
    out = schema.algebra_to_json(e.algebra)
    out["dim"] = e.algebra.dim
    return EXIT_OK, out


def cmd_d2n_demo(args) -> tuple:
    rep = d2n.run_demo(args.n, max_len=args.max_len)
    out = rep.to_json()
    out["n"] = args.n
    return (EXIT_OK if rep.certified else EXIT_FAILED), out


def cmd_d2n_export(args) -> tuple:
    d2n._check_n(args.n)
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    q1, r1 = d2n.a1_presentation(args.n)
    q2, r2 = d2n.a2_presentation(args.n)
    files = {
        f"a1_{args.n}.json": schema.presentation_to_json(q1, r1),
        f"a2_{args.n}.json": schema.presentation_to_json(q2, r2),
    }
    x = build_two_term(d2n.p1_datum(args.n))
    files[f"p1_{args.n}.json"] = schema.complex_to_json(x, algebra_ref=f"a1_{args.n}.json")
    for name, data in files.items():
        (outdir / name).write_text(json.dumps(data, indent=1) + "\n")
    return EXIT_OK, {"written": sorted(str(outdir / n) for n in files)}


def cmd_postnikov_check(args) -> tuple:
    w = parse_iqp(args.file)
    a = frozen_jacobian_quotient(w, max_len=args.max_len)
    cert = self_injectivity(a)
    sym = check_symmetry(w) if (w.rotation is not None or w.order is not None) else None
    out = {
        "finite_dimensional": True,
        "dim": a.dim,
        "vertices": list(a.vertices),
        "relations": [str(r) for r in a.relations],
        "symmetric": sym,
        "self_injectivity": cert.to_json(),
    }
    ok = cert.self_injective and sym is not False
    return (EXIT_OK if ok else EXIT_FAILED), out


def cmd_postnikov_compare(args) -> tuple:
    a = _load_any_algebra(args.a, args.max_len)
    b = _load_any_algebra(args.b, args.max_len)
    cmp = compare_invariants(a, b)
    return (EXIT_OK if cmp.consistent else EXIT_FAILED), cmp.to_json()


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-len", type=int, default=None, help="path length cap for presentations")
    common.add_argument("--json", metavar="PATH", default=None, help="write the report here")
    common.add_argument("--seed", type=int, default=0, help="seed for the symmetric-form search")
    common.add_argument("--quiet", action="store_true", help="print nothing")

    p = argparse.ArgumentParser(prog="tiltkit", description="Exact checks for two-term tilting complexes.")
    sub = p.add_subparsers(dest="group", required=True)

    g = sub.add_parser("algebra").add_subparsers(dest="cmd", required=True)
    s = g.add_parser("build", parents=[common], help="construct kQ/I and report invariants")
    s.add_argument("file")
    s.set_defaults(func=cmd_algebra_build)
    s = g.add_parser("verify-iso", parents=[common], help="check a presentation of an algebra")
    s.add_argument("target")
    s.add_argument("candidate")
    s.add_argument("assignment")
    s.set_defaults(func=cmd_algebra_verify_iso)

    g = sub.add_parser("complex").add_subparsers(dest="cmd", required=True)
    s = g.add_parser("check", parents=[common], help="two-term tilting check")
    s.add_argument("file")
    s.set_defaults(func=cmd_complex_check)
    s = g.add_parser("endo", parents=[common], help="endomorphism algebra in the homotopy category")
    s.add_argument("file")
    s.set_defaults(func=cmd_complex_endo)

    g = sub.add_parser("d2n").add_subparsers(dest="cmd", required=True)
    s = g.add_parser("demo", parents=[common], help="End(P1) = A2 for the D_2n family")
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_d2n_demo)
    s = g.add_parser("export", parents=[common], help="write A1, A2 and P1 as JSON files")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--out", default=".")
    s.set_defaults(func=cmd_d2n_export)

    g = sub.add_parser("postnikov").add_subparsers(dest="cmd", required=True)
    s = g.add_parser("check", parents=[common], help="frozen Jacobian quotient of an ice quiver with potential")
    s.add_argument("file")
    s.set_defaults(func=cmd_postnikov_check)
    s = g.add_parser("compare", parents=[common], help="compare derived invariants of two algebras")
    s.add_argument("a")
    s.add_argument("b")
    s.set_defaults(func=cmd_postnikov_compare)
    return p


def _emit(report: dict, args) -> None:
    text = json.dumps(report, indent=2, sort_keys=True, default=str)
    if args.json:
        Path(args.json).write_text(text + "\n")
    if not args.quiet:
        print(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.max_len is not None and args.max_len < 2:
        parser.error("--max-len must be at least 2")
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            code, report = args.func(args)
    except NotStabilized as exc:
        code, report = EXIT_UNSTABLE, {"error": "not stabilized", "detail": str(exc)}
    except InputError as exc:
        code, report = EXIT_INPUT, {"error": "input", "detail": str(exc)}
    except TiltkitError as exc:
        code, report = EXIT_FAILED, {"error": type(exc).__name__, "detail": str(exc)}
    report["exit_code"] = code
    _emit(report, args)
    return code


if __name__ == "__main__":
    sys.exit(main())
