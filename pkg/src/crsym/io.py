"""JSON model files and text front-ends returning domain objects.

Numbers are always exact strings ("a/b", "a/b+c/d*i"); polynomials and
fields travel as expressions in the parser's surface syntax.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .catalog import AlgebraRef, ModelRecord
from .fields import HoloField
from .gaussian import GaussRational, as_gauss
from .hypersurface import DefiningFunction, SignatureVector
from .parse import format_poly, parse_defining_poly, parse_field_components, parse_poly

__all__ = [
    "SCHEMA_VERSION",
    "parse_defining",
    "parse_field",
    "record_to_json",
    "record_from_json",
    "load_model",
    "dump_json",
    "point_to_json",
    "point_from_json",
    "parse_point",
]

SCHEMA_VERSION = 1


def parse_defining(src: str, n: int | None = None, witnesses=(), name: str = "") -> DefiningFunction:
    return DefiningFunction(parse_defining_poly(src, n), witnesses=tuple(witnesses), name=name)


def parse_field(src: str, n: int | None = None) -> HoloField:
    vs, comps = parse_field_components(src, n)
    return HoloField(vs, comps)


def point_to_json(pt: dict) -> dict:
    return {k: as_gauss(v).to_json() for k, v in pt.items()}


def point_from_json(obj: dict) -> dict:
    return {k: GaussRational.from_json(str(v)) for k, v in obj.items()}


def parse_point(spec: str) -> dict:
    """Points such as "z1=1/2, z2=0, w=1+i"; each value is a constant expression."""
    out = {}
    for part in spec.split(","):
        if not part.strip():
            continue
        key, sep, val = part.partition("=")
        if not sep:
            raise ValueError(f"expected name=value, found {part.strip()!r}")
        P = parse_poly(val)
        if not P.is_constant():
            raise ValueError(f"coordinate {key.strip()} must be a number, found {val.strip()!r}")
        out[key.strip()] = P.constant_term()
    return out


def _params_to_json(params) -> Any:
    if isinstance(params, (tuple, list)):
        return [_params_to_json(x) for x in params]
    if isinstance(params, (int, str)):
        return params
    return str(params)


def _params_from_json(obj) -> Any:
    if isinstance(obj, list):
        return tuple(_params_from_json(x) for x in obj)
    return obj


def record_to_json(rec: ModelRecord) -> dict:
    out: dict[str, Any] = {
        "schema_version": SCHEMA_VERSION,
        "name": rec.name,
        "n": rec.n,
        "signature": list(rec.signature.signs) if rec.signature else None,
        "defining": format_poly(rec.defining.rho) if rec.defining else None,
        "generators": [str(X) for X in rec.generators],
        "labels": list(rec.labels),
        "expected_dim": rec.expected_dim,
        "expected_algebra": {
            "kind": rec.expected_algebra.kind,
            "params": _params_to_json(rec.expected_algebra.params),
            "label": rec.expected_algebra.label,
        },
        "mode": rec.mode,
        "citation": rec.citation,
        "witnesses": {
            "nondegenerate": [point_to_json(p) for p in rec.nondegenerate_witnesses],
            "degenerate": [point_to_json(p) for p in rec.degenerate_witnesses],
        },
        "solver_degree": rec.solver_degree,
        "vanishing_order": rec.vanishing_order,
        "degeneracy": rec.degeneracy,
        "locus_vanishing": rec.locus_vanishing,
        "source": {"base": format_poly(rec.source[0]), "map": rec.source[1]} if rec.source else None,
        "notes": rec.notes,
    }
    return out


def record_from_json(obj: dict) -> ModelRecord:
    version = obj.get("schema_version")
    if version != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema_version {version!r} (expected {SCHEMA_VERSION})")
    n = int(obj["n"])
    wit = obj.get("witnesses") or {}
    nondeg = tuple(point_from_json(p) for p in wit.get("nondegenerate", ()))
    deg = tuple(point_from_json(p) for p in wit.get("degenerate", ()))
    defining = None
    if obj.get("defining"):
        defining = parse_defining(obj["defining"], n, nondeg + deg, obj["name"])
    alg = obj.get("expected_algebra") or {"kind": "table", "params": [0, [], []], "label": "unspecified"}
    src = obj.get("source")
    expected_dim = obj.get("expected_dim")
    gens = tuple(parse_field(g, n) for g in obj.get("generators", ()))
    if expected_dim is None:
        expected_dim = len(gens)
    return ModelRecord(
        name=obj["name"],
        n=n,
        signature=SignatureVector(tuple(obj["signature"])) if obj.get("signature") else None,
        defining=defining,
        generators=gens,
        labels=tuple(obj.get("labels", ())),
        expected_dim=int(expected_dim),
        expected_algebra=AlgebraRef(alg["kind"], _params_from_json(alg["params"]), alg["label"]),
        mode=obj.get("mode", "full"),
        citation=obj.get("citation", ""),
        nondegenerate_witnesses=nondeg,
        degenerate_witnesses=deg,
        solver_degree=obj.get("solver_degree"),
        vanishing_order=obj.get("vanishing_order"),
        degeneracy=obj.get("degeneracy"),
        locus_vanishing=obj.get("locus_vanishing"),
        source=(parse_poly(src["base"], n), src["map"]) if src else None,
        notes=obj.get("notes", ""),
    )


def load_model(path: str | Path) -> ModelRecord:
    return record_from_json(json.loads(Path(path).read_text(encoding="utf-8")))


def dump_json(obj: Any) -> str:
    """Deterministic serialization: sorted keys, fixed indentation."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False)
