"""The built-in model zoo and the verification driver."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from gmpy2 import mpq

from . import families as fam
from .blowup import parse_map_spec, pullback
from .fields import (
    HoloField,
    field_vector,
    is_tangent,
    max_vanishing_order,
    real_kernel,
    solve_polynomial_symmetries,
    span_contains,
)
from .gaussian import GaussRational, I
from .hypersurface import (
    DefiningFunction,
    NotOnHypersurface,
    SignatureVector,
    SingularPoint,
    classify_degeneracy,
    full_point,
    levi_signature_at,
)
from .lie import (
    NotClosedError,
    StructureConstants,
    fingerprint,
    fingerprints_match,
    from_relations,
    structure_constants,
)
from .linalg import Echelon
from .poly import Poly, evaluate, substitute
from .unitary import (
    HermitianForm,
    ParabolicSpec,
    chart_algebra,
    parabolic_subalgebra,
    stabilizer_of_subspace,
    su_basis,
    u_basis,
    u_plus_sol2,
)

__all__ = [
    "AlgebraRef",
    "ModelRecord",
    "Check",
    "VerificationReport",
    "builtin_models",
    "get_model",
    "verify_model",
    "quadric_model",
    "point_blowup_model",
    "subspace_blowup_model",
    "eq_one_model",
    "eq_two_model",
    "vfrepres_model",
    "ramified_model",
    "vanishing_on_locus",
]

MODES = ("full", "bracket-only", "solver-only")


# expected algebras ------------------------------------------------------------------------


@dataclass(frozen=True)
class AlgebraRef:
    """A target algebra: a matrix construction or an explicit table.

    kinds: ``su`` (p, q); ``parabolic`` (p, q, crosses); ``u`` (signs);
    ``u+sol2`` (signs); ``stabilizer`` (p, q, coordinates); ``table``
    (dim, relations, labels) with relations as ((i, j), ((k, coef), ...)).
    """

    kind: str
    params: tuple
    label: str

    def structure(self) -> StructureConstants:
        return _structure(self.kind, self.params)


@lru_cache(maxsize=None)
def _structure(kind: str, params: tuple) -> StructureConstants:
    if kind == "su":
        return structure_constants(list(su_basis(*params).basis))
    if kind == "parabolic":
        p, q, crosses = params
        spec = ParabolicSpec(p + q - 2, frozenset(crosses))
        return structure_constants(list(parabolic_subalgebra(p, q, spec).basis))
    if kind == "u":
        return structure_constants(u_basis(params))
    if kind == "u+sol2":
        return structure_constants(u_plus_sol2(params))
    if kind == "stabilizer":
        p, q, coords = params
        _, fields = chart_algebra(p, q, 0)
        return structure_constants(list(stabilizer_of_subspace(fields, coords).basis))
    if kind == "table":
        dim, rels, labels = params
        return from_relations(dim, {ij: dict(v) for ij, v in rels}, labels)
    raise ValueError(f"unknown algebra kind {kind!r}")


def _pq(signs: Sequence[int]) -> tuple[int, int]:
    """(p, q) with p <= q for the quadric of the given z-signs."""
    pos = sum(1 for s in signs if s > 0) + 1
    neg = len(signs) + 2 - pos
    return min(pos, neg), max(pos, neg)


def _parabolic_ref(n: int, s: int, signs: Sequence[int]) -> AlgebraRef:
    p, q = _pq(signs)
    crosses = tuple(sorted({s, n + 2 - s}))
    return AlgebraRef("parabolic", (p, q, crosses), f"p_{{{s},{n - s + 2}}} in su({p},{q})")


def _fmt_signs(signs) -> str:
    return "".join("p" if s > 0 else "m" for s in signs)


# records --------------------------------------------------------------------------------------


@dataclass(frozen=True)
class ModelRecord:
    name: str
    n: int
    signature: SignatureVector | None
    defining: DefiningFunction | None
    generators: tuple[HoloField, ...]
    expected_dim: int
    expected_algebra: AlgebraRef
    mode: str
    citation: str
    labels: tuple[str, ...] = ()
    nondegenerate_witnesses: tuple[dict, ...] = ()
    degenerate_witnesses: tuple[dict, ...] = ()
    solver_degree: int | None = None
    vanishing_order: int | None = None
    degeneracy: str | None = None  # expected classify_degeneracy kind
    locus_vanishing: int | None = None  # expected dim of fields vanishing on {w = 0}
    source: tuple[Poly, str] | None = None  # (base polynomial, map spec)
    notes: str = ""

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        if self.generators and len(self.generators) != self.expected_dim:
            raise ValueError(
                f"{self.name}: {len(self.generators)} generators but expected_dim {self.expected_dim}"
            )
        if self.mode != "solver-only" and not self.generators:
            raise ValueError(f"{self.name}: mode {self.mode} needs generators")
        if self.mode != "bracket-only" and self.defining is None:
            raise ValueError(f"{self.name}: mode {self.mode} needs a defining function")
        if self.mode == "solver-only" and self.solver_degree is None:
            raise ValueError(f"{self.name}: solver-only records need a degree bound")

    @property
    def witnesses(self) -> tuple[dict, ...]:
        return self.nondegenerate_witnesses + self.degenerate_witnesses


def _df(rho: Poly, name: str, nondeg, deg) -> DefiningFunction:
    return DefiningFunction(rho, witnesses=tuple(nondeg) + tuple(deg), name=name)


def _pt(n: int, w, **zs) -> dict:
    pt = {f"z{j}": 0 for j in range(1, n + 1)}
    pt.update(zs)
    pt["w"] = w
    return pt


def quadric_model(signs: Sequence[int]) -> ModelRecord:
    n = len(signs)
    p, q = _pq(signs)
    pos = sum(1 for s in signs if s > 0)
    if list(signs) != [1] * pos + [-1] * (n - pos):
        raise ValueError("list positive signs first")
    form, fields = chart_algebra(pos + 1, n + 1 - pos, 0)
    nondeg = [_pt(n, 0), _pt(n, GaussRational(0, signs[0]), z1=1)]
    name = f"quadric-n{n}-{_fmt_signs(signs)}"
    return ModelRecord(
        name=name,
        n=n,
        signature=SignatureVector(tuple(signs)),
        defining=_df(form.quadric().rho, name, nondeg, ()),
        generators=tuple(fields),
        expected_dim=n * n + 4 * n + 3,
        expected_algebra=AlgebraRef("su", (p, q), f"su({p},{q})"),
        mode="full",
        citation="hyperquadric; symmetry su(p,q) of dimension n^2+4n+3",
        nondegenerate_witnesses=tuple(nondeg),
        solver_degree=2,
        degeneracy="empty",
    )


def eq_one_model(n: int, s: int, p: int | None = None, name: str | None = None) -> ModelRecord:
    """First realization of p_{s,n-s+2}: blow-up along an s-1 dimensional null subspace."""
    p = (n + 2) // 2 if p is None else p
    k, sig = fam.eq_split(n, s, p)
    rho, gens = fam.eq_one(n, s, p)
    q = n + 2 - p
    from .unitary import parabolic_dimension

    nondeg = [_pt(n, 1)]
    deg = [_pt(n, 0)]
    center = [f"z{a}" for a in range(1, k + 1)] + [f"z{j}" for j in range(2 * k + 1, n + 1)] + ["w"]
    base = HermitianForm.adapted(p, q, k).quadric().rho
    name = name or f"eqI-n{n}-s{s}"
    full_signs = tuple([1] * k + [-1] * k) + sig
    return ModelRecord(
        name=name,
        n=n,
        signature=SignatureVector(full_signs),
        defining=_df(rho, name, nondeg, deg),
        generators=tuple(gens),
        expected_dim=parabolic_dimension(n, s),
        expected_algebra=_parabolic_ref(n, s, full_signs),
        mode="full",
        citation="blow-up of the hyperquadric along a null (s-1)-plane; printed generator list, "
        "symmetry p_{s,n-s+2}",
        nondegenerate_witnesses=tuple(nondeg),
        degenerate_witnesses=tuple(deg),
        solver_degree=max(X.degree() for X in gens),
        degeneracy="w=0" if k == 0 else None,
        locus_vanishing=1 if k == 0 else None,
        source=(base, "center:" + ",".join(center)),
    )


def point_blowup_model(signs: Sequence[int]) -> ModelRecord:
    """Blow-up of a point: Im w = |w|^2 ||z||^2, the s = 1 case of the first realization."""
    n = len(signs)
    pos = sum(1 for s in signs if s > 0)
    rec = eq_one_model(n, 1, pos + 1, name=f"blowup-point-n{n}-{_fmt_signs(signs)}")
    extra = _pt(n, GaussRational(0, signs[0]), z1=1)
    return _replace(
        rec,
        defining=_df(
            rec.defining.rho, rec.name, rec.nondegenerate_witnesses + (extra,), rec.degenerate_witnesses
        ),
        nondegenerate_witnesses=rec.nondegenerate_witnesses + (extra,),
        citation="blow-up of the hyperquadric at the origin, Im w = |w|^2 ||z||^2; symmetry p_{1,n+1}",
        source=(HermitianForm.adapted(pos + 1, n + 1 - pos, 0).quadric().rho, "point"),
    )


def eq_two_model(n: int, s: int, p: int | None = None) -> ModelRecord:
    """Second realization: blow-up along a subspace not contained in the quadric."""
    p = (n + 2) // 2 if p is None else p
    k, sig = fam.eq_split(n, s, p)
    rho, gens = fam.eq_two(n, s, p)
    q = n + 2 - p
    from .unitary import parabolic_dimension

    nondeg = [_pt(n, 1)]
    deg = [_pt(n, 0)]
    center = [f"z{a}" for a in range(1, k + 1)] + ["w"]
    full_signs = tuple([1] * k + [-1] * k) + sig
    name = f"eqII-n{n}-s{s}"
    return ModelRecord(
        name=name,
        n=n,
        signature=SignatureVector(full_signs),
        defining=_df(rho, name, nondeg, deg),
        generators=tuple(gens),
        expected_dim=parabolic_dimension(n, s),
        expected_algebra=_parabolic_ref(n, s, full_signs),
        mode="full",
        citation="blow-up of the hyperquadric along an (n-s+1)-dimensional subspace; printed "
        "generator list, symmetry p_{s,n-s+2}",
        nondegenerate_witnesses=tuple(nondeg),
        degenerate_witnesses=tuple(deg),
        solver_degree=max(X.degree() for X in gens),
        source=(HermitianForm.adapted(p, q, k).quadric().rho, "center:" + ",".join(center)),
    )


def subspace_blowup_model(signs: Sequence[int], moved: Sequence[int]) -> ModelRecord:
    """Im w = |w|^2 ||z'||^2 + ||z''||^2, blow-up along the span of the fixed coordinates."""
    n = len(signs)
    rho = fam.blowup_subspace(signs, moved)
    p, q = _pq(signs)
    pos = sum(1 for s in signs if s > 0)
    fixed = [j for j in range(1, n + 1) if j not in moved]
    L = tuple(f"z{j}" for j in moved) + ("w",)
    nondeg = [_pt(n, 1)]
    deg = [_pt(n, 0)]
    name = f"blowup-subspace-n{n}-{_fmt_signs(signs)}-fix{''.join(map(str, fixed))}"
    base = HermitianForm.adapted(pos + 1, n + 1 - pos, 0).quadric().rho
    return ModelRecord(
        name=name,
        n=n,
        signature=SignatureVector(tuple(signs)),
        defining=_df(rho, name, nondeg, deg),
        generators=(),
        expected_dim=8 if (n, p, q) == (2, 2, 2) else _stabilizer_dim(pos + 1, n + 1 - pos, L),
        expected_algebra=AlgebraRef(
            "stabilizer", (pos + 1, n + 1 - pos, L), f"stabilizer of {{{'=0,'.join(L)}=0}} in su({p},{q})"
        ),
        mode="solver-only",
        citation="blow-up along a coordinate subspace not contained in the quadric; 8-dimensional "
        "symmetry for signature (1,1)",
        nondegenerate_witnesses=tuple(nondeg),
        degenerate_witnesses=tuple(deg),
        solver_degree=3,
        source=(base, "center:" + ",".join(L)),
    )


def _stabilizer_dim(p: int, q: int, L) -> int:
    _, fields = chart_algebra(p, q, 0)
    return stabilizer_of_subspace(fields, L).dim


def _default_signs(n: int) -> tuple[int, ...]:
    p = (n + 2) // 2
    return tuple([1] * (p - 1) + [-1] * (n - p + 1))


def vfrepres_model(n: int, m: int, eps: int, signs: Sequence[int] | None = None) -> ModelRecord:
    signs = _default_signs(n) if signs is None else tuple(signs)
    rho, gens = fam.vfrepres(signs, m, eps)
    suffix = "" if signs == _default_signs(n) else f"-{_fmt_signs(signs)}"
    name = f"vfrepres-n{n}-m{m}-{'plus' if eps > 0 else 'minus'}{suffix}"
    nondeg = [_pt(n, 1)]
    deg = [_pt(n, 0, z1=mpq(1, 2))]
    base = HermitianForm.adapted(*_quadric_pq(signs), 0).quadric().rho
    return ModelRecord(
        name=name,
        n=n,
        signature=SignatureVector(signs),
        defining=_df(rho, name, nondeg, deg),
        generators=tuple(gens),
        expected_dim=n * n + 2 * n + 2,
        expected_algebra=_parabolic_ref(n, 1, signs),
        mode="full",
        citation="the family M_{m,eps}, stored through its polynomial hull "
        "Im(w^{2m}) = eps |w|^{2m} ||z||^2; printed generator list, symmetry p_{1,n+1}",
        nondegenerate_witnesses=tuple(nondeg),
        degenerate_witnesses=tuple(deg),
        solver_degree=2 * m + 1,
        vanishing_order=2 * m + 1,
        degeneracy="w=0",
        locus_vanishing=2 * n + 2,
        source=(base, f"ramified:{2 * m}:{eps};weighted:{m}"),
    )


def _quadric_pq(signs: Sequence[int]) -> tuple[int, int]:
    pos = sum(1 for s in signs if s > 0)
    return pos + 1, len(signs) + 1 - pos


def ramified_model(n: int, m: int, r: int, sigma: int = 1, signs: Sequence[int] | None = None) -> ModelRecord:
    """Weighted blow-up of a ramified cover, Im(w^r) = sigma |w|^{2m} ||z||^2."""
    signs = _default_signs(n) if signs is None else tuple(signs)
    rho, gens = fam.ramified(signs, m, r, sigma)
    name = f"ramified-n{n}-m{m}-r{r}" + ("" if sigma > 0 else "-minus")
    nondeg = [_pt(n, 1)]
    deg = [_pt(n, 0, z1=mpq(1, 2))]
    p, q = _pq(signs)
    base = HermitianForm.adapted(*_quadric_pq(signs), 0).quadric().rho
    return ModelRecord(
        name=name,
        n=n,
        signature=SignatureVector(signs),
        defining=_df(rho, name, nondeg, deg),
        generators=tuple(gens),
        expected_dim=n * n + 2,
        expected_algebra=AlgebraRef("u+sol2", signs, f"u({p - 1},{q - 1}) + sol(2)"),
        mode="full",
        citation="ramified cover followed by a weighted blow-up; printed generators of "
        "u(pbar,qbar) + sol(2), dimension n^2+2",
        nondegenerate_witnesses=tuple(nondeg),
        degenerate_witnesses=tuple(deg),
        solver_degree=r + 1,
        degeneracy="w=0",
        source=(base, f"ramified:{r}:{sigma};weighted:{m}"),
        notes="the polynomial solver finds n^2+2n+2 fields when r >= m; see the README",
    )


def iterated_point_model(n: int, m: int) -> ModelRecord:
    signs = _default_signs(n)
    rho, _ = fam.ramified(signs, m, 1, 1)
    p, q = _pq(signs)
    name = f"iterated-point-n{n}-m{m}"
    nondeg = [_pt(n, 1)]
    deg = [_pt(n, 0)]
    base = HermitianForm.adapted(*_quadric_pq(signs), 0).quadric().rho
    return ModelRecord(
        name=name,
        n=n,
        signature=SignatureVector(signs),
        defining=_df(rho, name, nondeg, deg),
        generators=(),
        expected_dim=n * n + 2,
        expected_algebra=AlgebraRef("u+sol2", signs, f"u({p - 1},{q - 1}) + sol(2)"),
        mode="solver-only",
        citation="m-fold blow-up of the hyperquadric at the origin, Im w = |w|^{2m} ||z||^2, dimension n^2+2",
        nondegenerate_witnesses=tuple(nondeg),
        degenerate_witnesses=tuple(deg),
        solver_degree=6 if m == 2 else 2 * m + 2,
        source=(base, ";".join(["point"] * m)),
    )


def _ep2_model() -> ModelRecord:
    nondeg, deg = [_pt(2, 1)], [_pt(2, 0)]
    return ModelRecord(
        name="e:p2",
        n=2,
        signature=SignatureVector((1, -1)),
        defining=_df(fam.ep2(), "e:p2", nondeg, deg),
        generators=(),
        expected_dim=11,
        expected_algebra=AlgebraRef("parabolic", (2, 2, (2,)), "p_2 in su(2,2)"),
        mode="solver-only",
        citation="blow-up of Im w = 2 Re(z1 conj(z2)) along {z1 = 0 = w}; symmetry p_2",
        nondegenerate_witnesses=tuple(nondeg),
        degenerate_witnesses=tuple(deg),
        solver_degree=3,
        source=(HermitianForm.adapted(2, 2, 1).quadric().rho, "center:z1,w"),
    )


def _ep123_model() -> ModelRecord:
    rho, gens = fam.ep123()
    nondeg, deg = [_pt(2, 1)], [_pt(2, 0)]
    return ModelRecord(
        name="e:p123",
        n=2,
        signature=SignatureVector((1, -1)),
        defining=_df(rho, "e:p123", nondeg, deg),
        generators=tuple(gens),
        expected_dim=9,
        expected_algebra=AlgebraRef("parabolic", (2, 2, (1, 2, 3)), "Borel p_{1,2,3} in su(2,2)"),
        mode="full",
        citation="second blow-up of e:p2 along {z1 = 0 = w}; printed generators of the Borel subalgebra",
        nondegenerate_witnesses=tuple(nondeg),
        degenerate_witnesses=tuple(deg),
        solver_degree=4,
        source=(fam.ep2(), "center:z1,w"),
    )


def _ep13_model() -> ModelRecord:
    nondeg, deg = [_pt(2, 1)], [_pt(2, 0)]
    return ModelRecord(
        name="e:p13",
        n=2,
        signature=SignatureVector((1, -1)),
        defining=_df(fam.ep13(), "e:p13", nondeg, deg),
        generators=(),
        expected_dim=10,
        expected_algebra=AlgebraRef("parabolic", (2, 2, (1, 3)), "p_{1,3} in su(2,2)"),
        mode="solver-only",
        citation="blow-up of e:p2 along {z2 = 0 = w}; symmetry p_{1,3} in su(2,2)",
        nondegenerate_witnesses=tuple(nondeg),
        degenerate_witnesses=tuple(deg),
        solver_degree=3,
        source=(fam.ep2(), "center:z2,w"),
    )


HEIS_TABLE = (
    6,
    (
        ((0, 3), ((3, 1),)),
        ((0, 4), ((4, 1),)),
        ((0, 5), ((5, 2),)),
        ((2, 3), ((4, 1),)),
        ((2, 4), ((3, -1),)),
        ((3, 4), ((5, 1),)),
    ),
    ("R", "S", "J", "X", "Y", "Z"),
)


def _heis_model() -> ModelRecord:
    labels, gens = fam.heis_fields()
    return ModelRecord(
        name="heis-semidirect",
        n=2,
        signature=None,
        defining=None,
        generators=tuple(gens),
        labels=tuple(labels),
        expected_dim=6,
        expected_algebra=AlgebraRef("table", HEIS_TABLE, "R^3 x| heis_3"),
        mode="bracket-only",
        citation="six fields on C^3 spanning R^3 x| heis_3; the defining equation involves a square "
        "root, so only the bracket relations are checked",
    )


def _m5_model() -> ModelRecord:
    nondeg = [_pt(2, I, z2=1)]
    deg = [_pt(2, 0)]
    return ModelRecord(
        name="M5",
        n=2,
        signature=None,
        defining=_df(fam.m5(), "M5", nondeg, deg),
        generators=(),
        expected_dim=9,
        expected_algebra=AlgebraRef("u", (1, 1, -1), "u(1,2)"),
        mode="solver-only",
        citation="Im w = |z1|^2 + |z2|^4, symmetry u(1,2)",
        nondegenerate_witnesses=tuple(nondeg),
        degenerate_witnesses=tuple(deg),
        solver_degree=3,
    )


def _replace(rec: ModelRecord, **kw) -> ModelRecord:
    from dataclasses import replace

    return replace(rec, **kw)


@lru_cache(maxsize=1)
def _catalog() -> tuple[ModelRecord, ...]:
    out = [
        quadric_model((1,)),
        quadric_model((-1,)),
        quadric_model((1, 1)),
        quadric_model((1, -1)),
        point_blowup_model((1,)),
        point_blowup_model((1, 1)),
        subspace_blowup_model((1, -1), moved=(2,)),
    ]
    for n in (2, 3, 4):
        for s in range(1, n // 2 + 2):
            out.append(eq_one_model(n, s))
            if 1 < s < n / 2 + 1:
                out.append(eq_two_model(n, s))
    for n, ms in ((1, (1, 2, 3)), (2, (1, 2))):
        for m in ms:
            for eps in (1, -1):
                out.append(vfrepres_model(n, m, eps))
    for n, m, r in ((1, 2, 3), (2, 2, 3), (2, 3, 5)):
        out.append(ramified_model(n, m, r))
    out.append(iterated_point_model(2, 2))
    out += [_ep2_model(), _ep123_model(), _ep13_model(), _heis_model(), _m5_model()]
    return tuple(out)


def builtin_models() -> list[ModelRecord]:
    return list(_catalog())


def get_model(name: str) -> ModelRecord:
    for rec in _catalog():
        if rec.name == name:
            return rec
    raise KeyError(f"unknown model {name!r}; try one of: {', '.join(r.name for r in _catalog())}")


# verification ------------------------------------------------------------------------------------


@dataclass(frozen=True)
class Check:
    name: str
    status: str  # "pass", "fail" or "skip"
    detail: str
    data: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status != "fail"

    def as_dict(self) -> dict:
        return {"name": self.name, "status": self.status, "detail": self.detail, "data": self.data}


@dataclass(frozen=True)
class VerificationReport:
    model: str
    mode: str
    checks: tuple[Check, ...]
    dim: int | None
    fingerprint: dict | None
    seconds: float

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def as_dict(self) -> dict:
        return {
            "model": self.model,
            "mode": self.mode,
            "passed": self.passed,
            "dim": self.dim,
            "fingerprint": self.fingerprint,
            "checks": [c.as_dict() for c in self.checks],
        }

    def lines(self) -> list[str]:
        head = f"{self.model} [{self.mode}]: {'PASS' if self.passed else 'FAIL'}"
        return [head] + [f"  {c.status.upper():4} {c.name}: {c.detail}" for c in self.checks]


def vanishing_on_locus(fields: Sequence[HoloField]) -> int:
    """Dimension of the real span of fields whose components all vanish on {w = 0}."""
    if not fields:
        return 0
    vs = fields[0].vars
    sigma = {vs.w: Poly.zero(vs), vs.wb: Poly.zero(vs)}
    return len(real_kernel(fields, lambda X: [substitute(c, sigma) for c in X.comps]))


def _ok(flag: bool) -> str:
    return "pass" if flag else "fail"


def verify_model(rec: ModelRecord, solver: bool | str = "auto") -> VerificationReport:
    """Run every applicable sub-check; failures are report entries, never exceptions.

    ``solver``: True runs the polynomial solver whenever the record has a
    degree bound, False never runs it, "auto" runs it for records with a
    degree bound (the catalog only sets one where it is affordable).
    """
    t0 = time.perf_counter()
    checks: list[Check] = []
    rho = rec.defining.rho if rec.defining is not None else None
    run_solver = solver in (True, "auto") and rec.solver_degree is not None

    if rho is not None:
        vals = [evaluate(rho, full_point(rho.vars, pt)) for pt in rec.witnesses]
        checks.append(
            Check("witnesses", _ok(not any(vals)), f"rho vanishes at {len(rec.witnesses)} witness point(s)")
        )

    gens = list(rec.generators)
    if gens and rec.mode == "full":
        verdicts = [is_tangent(X, rho) for X in gens]
        bad = [i for i, v in enumerate(verdicts) if not v]
        checks.append(
            Check(
                "tangency",
                _ok(not bad),
                f"{len(gens) - len(bad)}/{len(gens)} generators tangent",
                {"failing": bad, "certificates": [str(v) for v in verdicts]},
            )
        )

    sc = None
    if gens:
        ech = Echelon(track=False)
        rank = sum(1 for X in gens if ech.add(field_vector(X)) is None)
        checks.append(Check("independence", _ok(rank == len(gens)), f"real rank {rank} of {len(gens)}"))
        checks.append(
            Check("dimension", _ok(rank == rec.expected_dim), f"{rank} vs expected {rec.expected_dim}")
        )
        if rank == len(gens):
            try:
                sc = structure_constants(gens, rec.labels)
                checks.append(Check("closure", "pass", "all brackets lie in the span"))
            except NotClosedError as err:
                checks.append(Check("closure", "fail", str(err), {"pair": list(err.pair)}))

    solved = None
    if run_solver:
        solved = solve_polynomial_symmetries(rho, rec.solver_degree)
        good = len(solved) == rec.expected_dim
        detail = f"degree <= {rec.solver_degree}: {len(solved)} fields vs expected {rec.expected_dim}"
        data = {"dim": len(solved), "degree": rec.solver_degree}
        if gens:
            inside = all(span_contains(solved, X) is not None for X in gens)
            data["generators_in_span"] = inside
            good = good and inside
        checks.append(Check("solver", _ok(good), detail, data))
    elif rec.mode == "solver-only" or rec.solver_degree is not None:
        checks.append(Check("solver", "skip", "solver cross-check not run"))

    basis_sc = sc
    if basis_sc is None and solved:
        try:
            basis_sc = structure_constants(solved)
        except NotClosedError as err:
            checks.append(Check("closure", "fail", f"solver output not closed: {err}"))

    fp = None
    if basis_sc is not None:
        fp = fingerprint(basis_sc)
        target = fingerprint(rec.expected_algebra.structure())
        rep = fingerprints_match(fp, target)
        checks.append(
            Check(
                "fingerprint",
                _ok(bool(rep)),
                f"vs {rec.expected_algebra.label}: {rep}",
                {"computed": fp.as_dict(), "target": target.as_dict()},
            )
        )
        if rec.expected_algebra.kind == "table" and sc is not None:
            want = rec.expected_algebra.structure()
            same = want.table == sc.table
            checks.append(
                Check(
                    "relations",
                    _ok(same),
                    "bracket table equals the stated relations" if same else "bracket table differs",
                    {"computed": sc.relations(), "target": want.relations()},
                )
            )
    elif rec.mode != "bracket-only":
        checks.append(Check("fingerprint", "skip", "no basis available"))

    if rec.vanishing_order is not None and gens:
        got = max_vanishing_order(gens)
        checks.append(
            Check(
                "vanishing-order",
                _ok(got == rec.vanishing_order),
                f"{got} at the origin vs {rec.vanishing_order}",
            )
        )

    if rho is not None:
        checks.extend(_levi_checks(rec, rho))

    span = gens or (solved or [])
    if span and rho is not None:
        got = vanishing_on_locus(span)
        if rec.locus_vanishing is None:
            checks.append(Check("locus-vanishing", "pass", f"{got} fields vanish on w = 0 (informational)"))
        else:
            checks.append(
                Check(
                    "locus-vanishing",
                    _ok(got == rec.locus_vanishing),
                    f"{got} fields vanish on w = 0 vs {rec.locus_vanishing}",
                )
            )

    if rec.source is not None and rho is not None:
        base, spec = rec.source
        try:
            got = pullback(base, parse_map_spec(spec, rec.n)).rho
            checks.append(Check("pullback", _ok(got == rho), f"source pulled back by {spec}"))
        except ValueError as err:
            checks.append(Check("pullback", "fail", str(err)))

    dim = len(gens) if gens else (len(solved) if solved is not None else None)
    return VerificationReport(
        rec.name, rec.mode, tuple(checks), dim, fp.as_dict() if fp else None, time.perf_counter() - t0
    )


def _fmt_point(pt: dict) -> str:
    return "(" + ", ".join(f"{k}={v}" for k, v in pt.items()) + ")"


def _levi_checks(rec: ModelRecord, rho: Poly) -> list[Check]:
    out = []
    loc = classify_degeneracy(rho)
    cert = loc.certificate
    vs = rho.vars
    if rec.degeneracy is not None:
        out.append(
            Check(
                "degeneracy-locus",
                _ok(loc.kind == rec.degeneracy),
                f"certificate {cert} classified as {loc.kind!r}, expected {rec.degeneracy!r}",
            )
        )
    for pt in rec.nondegenerate_witnesses:
        c = evaluate(cert, full_point(vs, pt))
        try:
            v = levi_signature_at(rho, pt)
            ok = v.nondegenerate and bool(c)
            detail = f"{_fmt_point(pt)}: {v}; certificate {c}"
        except (SingularPoint, NotOnHypersurface) as err:
            ok, detail = False, f"{_fmt_point(pt)}: {err}"
        out.append(Check("levi-nondegenerate", _ok(ok), detail))
    for pt in rec.degenerate_witnesses:
        c = evaluate(cert, full_point(vs, pt))
        try:
            v = levi_signature_at(rho, pt)
            ok = not v.nondegenerate and not c
            detail = f"{_fmt_point(pt)}: {v}; certificate {c}"
        except SingularPoint:
            ok = not c
            detail = f"{_fmt_point(pt)}: singular point of the polynomial; certificate {c}"
        out.append(Check("levi-degenerate", _ok(ok), detail))
    return out
