"""Command-line front-end: ``crsym <command> ...``."""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .blowup import normalize, parse_map_spec, pullback
from .catalog import builtin_models, get_model, verify_model
from .fields import solve_polynomial_symmetries
from .hypersurface import DefiningFunction, classify_degeneracy, levi_signature_at
from .io import SCHEMA_VERSION, dump_json, parse_defining, parse_point, record_from_json
from .lie import fingerprint, structure_constants
from .parse import ExprSyntaxError, NotHolomorphicError, NotRealError, format_poly
from .unitary import audit_subalgebra_bound, gap_thresholds, max_parabolic, parabolic_dimension

# Published values of d_n(s), rows n = 1..7, columns s = 1, 2, ...
PUBLISHED_DIMENSIONS = {
    1: (5,),
    2: (10, 11),
    3: (17, 16),
    4: (26, 23, 26),
    5: (37, 32, 33),
    6: (50, 43, 42, 47),
    7: (65, 56, 53, 56),
}


class CommandError(Exception):
    """A user-facing failure; printed without a traceback."""


def _load_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CommandError(f"cannot read {path}: {exc.strerror}") from exc


def _load_defining(path: str) -> DefiningFunction:
    """A model JSON file, or a plain-text file holding one defining expression."""
    text = _load_text(path)
    try:
        obj = json.loads(text)
    except json.JSONDecodeError:
        return parse_defining(text.strip())
    if isinstance(obj, dict) and "defining" in obj:
        rec = record_from_json(obj)
        if rec.defining is None:
            raise CommandError(f"{path}: model has no defining function")
        return rec.defining
    raise CommandError(f"{path}: expected a model file or a defining expression")


def _load_record(args):
    if args.model and args.file:
        raise CommandError("give either --model or --file, not both")
    if args.model:
        try:
            return get_model(args.model)
        except KeyError:
            raise CommandError(f"unknown model {args.model!r}; see `crsym list`") from None
    if args.file:
        try:
            return record_from_json(json.loads(_load_text(args.file)))
        except json.JSONDecodeError as exc:
            raise CommandError(f"{args.file}: invalid JSON ({exc.msg} at line {exc.lineno})") from None
    raise CommandError("one of --model or --file is required")


def _emit(args, payload: dict, text_lines) -> None:
    if getattr(args, "json", False):
        print(dump_json({"schema_version": SCHEMA_VERSION, **payload}))
    else:
        for line in text_lines:
            print(line)


# commands ------------------------------------------------------------------------------------


def cmd_list(args) -> int:
    for rec in builtin_models():
        print(f"{rec.name:32s} {rec.mode:13s} dim {rec.expected_dim:3d}  {rec.expected_algebra.label}")
    return 0


def cmd_verify(args) -> int:
    rec = _load_record(args)
    solver = {"auto": "auto", "on": True, "off": False}[args.solver]
    rep = verify_model(rec, solver=solver)
    _emit(args, rep.as_dict(), rep.lines())
    return 0 if rep.passed else 1


def cmd_solve(args) -> int:
    dfn = _load_defining(args.file)
    basis = solve_polynomial_symmetries(dfn, args.degree)
    fp = fingerprint(structure_constants(basis)).as_dict() if basis else None
    payload = {"degree": args.degree, "dim": len(basis), "basis": [str(X) for X in basis], "fingerprint": fp}
    lines = [f"dimension {len(basis)} (degree <= {args.degree})"]
    lines += [f"  X{j + 1} = {X}" for j, X in enumerate(basis)]
    _emit(args, payload, lines)
    return 0


def cmd_dim_table(args) -> int:
    rows = {
        n: tuple(parabolic_dimension(n, s) for s in range(1, n // 2 + 2)) for n in range(1, args.n_max + 1)
    }
    for n, row in rows.items():
        print(f"n={n}: " + " ".join(str(d) for d in row))
    if not args.check_paper:
        return 0
    total = sum(len(r) for n, r in PUBLISHED_DIMENSIONS.items() if n <= args.n_max)
    bad = [
        (n, s + 1, want, rows[n][s])
        for n, ref in PUBLISHED_DIMENSIONS.items()
        if n <= args.n_max
        for s, want in enumerate(ref)
        if rows[n][s] != want
    ]
    for n, s, want, got in bad:
        print(f"MISMATCH n={n} s={s}: published {want}, computed {got}")
    status = "OK" if not bad else "FAIL"
    print(f"{status}: {total - len(bad)}/{total} cells match")
    return 0 if not bad else 1


def cmd_thresholds(args) -> int:
    print(" ".join(str(x) for x in gap_thresholds(args.n)))
    return 0


def cmd_max_parabolic(args) -> int:
    top, where = max_parabolic(args.n)
    print(f"{top} at s in {{{', '.join(str(s) for s in sorted(where))}}}")
    return 0


def cmd_stabilizer(args) -> int:
    from .unitary import stabilizer_of_subspace

    rec = _load_record(args)
    basis = list(rec.generators)
    if not basis:
        if rec.defining is None or rec.solver_degree is None:
            raise CommandError(f"{rec.name} has neither generators nor a solver degree")
        basis = solve_polynomial_symmetries(rec.defining, rec.solver_degree)
    coords = [c.strip() for c in args.subspace.split(",") if c.strip()]
    res = stabilizer_of_subspace(basis, coords, rec.defining)
    payload = {"model": rec.name, "subspace": coords, "dim": res.dim, "basis": [str(X) for X in res.basis]}
    lines = [f"stabilizer of {{{', '.join(c + '=0' for c in coords)}}} in {rec.name}: dimension {res.dim}"]
    lines += [f"  Y{j + 1} = {X}" for j, X in enumerate(res.basis)]
    _emit(args, payload, lines)
    return 0


def cmd_blowup(args) -> int:
    dfn = _load_defining(args.file)
    bmap = parse_map_spec(args.map, dfn.n)
    out = pullback(dfn, bmap)
    raw = format_poly(out.rho)
    payload = {"map": str(bmap), "defining": raw, "normalized": format_poly(normalize(out.rho))}
    _emit(args, payload, [f"map: {bmap}", f"pullback: {raw}", f"normalized: {payload['normalized']}"])
    return 0


def cmd_levi(args) -> int:
    dfn = _load_defining(args.file)
    pt = parse_point(args.point)
    verdict = levi_signature_at(dfn, pt)
    locus = classify_degeneracy(dfn)
    payload = {
        "point": {k: v.to_json() for k, v in pt.items()},
        "nondegenerate": verdict.nondegenerate,
        "signature": list(verdict.signature),
        "rank": verdict.rank,
        "degeneracy_locus": locus.kind,
        "certificate": format_poly(locus.certificate),
    }
    _emit(args, payload, [str(verdict), f"degeneracy locus: {locus.kind}"])
    return 0


def cmd_audit(args) -> int:
    ok = True
    entries = []
    for n in range(1, args.n_max + 1):
        rep = audit_subalgebra_bound(n)
        ok &= rep.ok
        entries.append(
            {
                "n": n,
                "threshold": rep.threshold,
                "ok": rep.ok,
                "candidates": [list(c) for c in rep.candidates],
            }
        )
        if args.verbose:
            for line in rep.lines():
                print(line)
    if getattr(args, "json", False):
        print(dump_json({"schema_version": SCHEMA_VERSION, "ok": ok, "audits": entries}))
    else:
        failing = [e["n"] for e in entries if not e["ok"]]
        if ok:
            print(f"OK: n=1..{args.n_max}, every candidate below the parabolic maximum")
        else:
            print(f"FAIL: candidates reach the threshold for n in {failing}")
    return 0 if ok else 1


def _verify_by_name(name: str) -> dict:
    return verify_model(get_model(name)).as_dict()


def cmd_report(args) -> int:
    names = [rec.name for rec in builtin_models()]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            reports = list(pool.map(_verify_by_name, names))
    else:
        reports = [_verify_by_name(name) for name in names]
    passed = sum(r["passed"] for r in reports)
    summary = {
        "schema_version": SCHEMA_VERSION,
        "models": len(reports),
        "passed": passed,
        "failed": [r["model"] for r in reports if not r["passed"]],
        "reports": reports,
    }
    print(dump_json(summary))
    return 0 if passed == len(reports) else 1


# parser ----------------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="crsym", description="Exact symmetry computations for real hypersurfaces."
    )
    sub = ap.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def model_args(p):
        p.add_argument("--model", help="name of a built-in model")
        p.add_argument("--file", help="path to a model JSON file")

    p = sub.add_parser("list", help="list built-in models")
    p.set_defaults(func=cmd_list)

    p = sub.add_parser("verify", help="verify a model record")
    model_args(p)
    p.add_argument("--solver", choices=("auto", "on", "off"), default="auto")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("solve", help="all polynomial symmetries up to a degree")
    p.add_argument("--file", required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("dim-table", help="dimensions of the parabolic subalgebras")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--check-paper", action="store_true", help="compare n <= 7 with the published table")
    p.set_defaults(func=cmd_dim_table)

    p = sub.add_parser("thresholds", help="maximal, submaximal and d0 dimensions")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_thresholds)

    p = sub.add_parser("max-parabolic", help="largest parabolic and where it is attained")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_max_parabolic)

    p = sub.add_parser("stabilizer", help="fields tangent to a coordinate subspace")
    model_args(p)
    p.add_argument("--subspace", required=True, help="coordinates set to zero, e.g. z2,w")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_stabilizer)

    p = sub.add_parser("blowup", help="pull back a defining function")
    p.add_argument("--file", required=True)
    p.add_argument(
        "--map", required=True, help="point | center:z1,w[:pivot] | weighted:m | ramified:r[:sigma]"
    )
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_blowup)

    p = sub.add_parser("levi", help="Levi form signature at a point")
    p.add_argument("--file", required=True)
    p.add_argument("--point", required=True, help="e.g. z1=0,w=1/2*i")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_levi)

    p = sub.add_parser("audit", help="audit the maximal-subalgebra bound")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--verbose", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("report", help="verify the whole catalog")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_report)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CommandError as exc:
        parser.print_usage(sys.stderr)
        print(f"crsym: error: {exc}", file=sys.stderr)
        return 2
    except ExprSyntaxError as exc:
        print(f"crsym: {exc}", file=sys.stderr)
        return 2
    except (NotRealError, NotHolomorphicError, ValueError, KeyError) as exc:
        print(f"crsym: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
