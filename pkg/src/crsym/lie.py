"""Structure constants of real Lie algebras and isomorphism-invariant fingerprints."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from gmpy2 import mpq

from .fields import HoloField, bracket, field_vector
from .linalg import Echelon, LinearDependence, inertia, nullspace
from .matrices import commutator, matrix_vector

__all__ = [
    "StructureConstants",
    "Fingerprint",
    "MatchReport",
    "NotClosedError",
    "structure_constants",
    "from_relations",
    "fingerprint",
    "fingerprints_match",
    "killing_form",
    "change_basis",
    "direct_sum",
]


class NotClosedError(ValueError):
    def __init__(self, i: int, j: int):
        super().__init__(f"bracket of basis elements {i} and {j} leaves the span")
        self.pair = (i, j)


Vec = dict  # sparse {index: mpq}


@dataclass(frozen=True)
class StructureConstants:
    """[e_i, e_j] = sum_k table[(i, j)][k] e_k for i < j; missing pairs are zero."""

    dim: int
    table: dict = field(default_factory=dict)
    labels: tuple = ()

    def __post_init__(self):
        for (i, j), v in self.table.items():
            if not (0 <= i < j < self.dim):
                raise ValueError(f"table keys must satisfy 0 <= i < j < dim, got {(i, j)}")
            if any(not x for x in v.values()):
                raise ValueError("stored zero coefficient")

    def c(self, i: int, j: int) -> Vec:
        if i == j:
            return {}
        if i < j:
            return self.table.get((i, j), {})
        return {k: -x for k, x in self.table.get((j, i), {}).items()}

    def bracket(self, u: Vec, v: Vec) -> Vec:
        out: dict = {}
        for i, a in u.items():
            for j, b in v.items():
                if i == j:
                    continue
                ab = a * b
                for k, x in self.c(i, j).items():
                    out[k] = out.get(k, 0) + ab * x
        return {k: x for k, x in out.items() if x}

    def check_jacobi(self) -> tuple[int, int, int] | None:
        """First basis triple violating Jacobi, or None."""
        e = [{i: mpq(1)} for i in range(self.dim)]
        for i, j, k in combinations(range(self.dim), 3):
            total: dict = {}
            for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                for key, x in self.bracket(e[a], self.bracket(e[b], e[c])).items():
                    total[key] = total.get(key, 0) + x
            if any(total.values()):
                return (i, j, k)
        return None

    def relations(self) -> list[str]:
        names = self.labels or tuple(f"e{i}" for i in range(self.dim))
        out = []
        for (i, j), v in sorted(self.table.items()):
            rhs = " + ".join(f"{_q(x)}*{names[k]}" for k, x in sorted(v.items()))
            out.append(f"[{names[i]},{names[j]}] = {rhs}")
        return out


def _q(x) -> str:
    x = mpq(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def from_relations(dim: int, rels: dict, labels: Sequence[str] = ()) -> StructureConstants:
    """Build from {(i, j): {k: coef}} with arbitrary order of i, j."""
    table = {}
    for (i, j), v in rels.items():
        v = {k: mpq(x) for k, x in v.items() if x}
        if i > j:
            i, j = j, i
            v = {k: -x for k, x in v.items()}
        if v:
            table[(i, j)] = v
    return StructureConstants(dim, table, tuple(labels))


def _vector_and_bracket(basis):
    if isinstance(basis[0], HoloField):
        return field_vector, bracket
    return matrix_vector, commutator


def structure_constants(basis: Sequence, labels: Sequence[str] = ()) -> StructureConstants:
    """Exact structure constants of the real span of fields or matrices.

    Fields use the half-bracket of :func:`crsym.fields.bracket`; matrices use
    the plain commutator.
    """
    if not basis:
        return StructureConstants(0, {}, tuple(labels))
    vec, br = _vector_and_bracket(basis)
    ech = Echelon()
    for j, X in enumerate(basis):
        rel = ech.add(vec(X), tag=j)
        if rel is not None:
            raise LinearDependence(f"basis element {j} depends on earlier ones: {rel}", rel)
    table = {}
    for i, j in combinations(range(len(basis)), 2):
        coeffs = ech.express(vec(br(basis[i], basis[j])))
        if coeffs is None:
            raise NotClosedError(i, j)
        coeffs = {k: x for k, x in coeffs.items() if x}
        if coeffs:
            table[(i, j)] = coeffs
    return StructureConstants(len(basis), table, tuple(labels))


def change_basis(sc: StructureConstants, P: Sequence[Sequence]) -> StructureConstants:
    """Structure constants in the basis f_a = sum_b P[a][b] e_b (P invertible)."""
    d = sc.dim
    rows = [{b: mpq(x) for b, x in enumerate(r) if x} for r in P]
    ech = Echelon()
    for a, r in enumerate(rows):
        if ech.add(r, tag=a) is not None:
            raise LinearDependence("change of basis matrix is singular")
    rels = {}
    for a, b in combinations(range(d), 2):
        coeffs = ech.express(sc.bracket(rows[a], rows[b]))
        rels[(a, b)] = coeffs
    return from_relations(d, rels)


def direct_sum(a: StructureConstants, b: StructureConstants) -> StructureConstants:
    rels = dict(a.table)
    off = a.dim
    for (i, j), v in b.table.items():
        rels[(i + off, j + off)] = {k + off: x for k, x in v.items()}
    return StructureConstants(a.dim + b.dim, rels)


# invariants ---------------------------------------------------------------------------


def _span(vectors) -> list[Vec]:
    ech = Echelon(track=False)
    for v in vectors:
        ech.add(v)
    return [row for row, _ in ech.rows.values()]


def _derived_series(sc: StructureConstants) -> tuple[int, ...]:
    dims = [sc.dim]
    cur = [{i: mpq(1)} for i in range(sc.dim)]
    while cur:
        nxt = _span(sc.bracket(u, v) for u, v in combinations(cur, 2))
        if len(nxt) == len(cur):
            break
        dims.append(len(nxt))
        cur = nxt
    return tuple(dims)


def _lower_central_series(sc: StructureConstants) -> tuple[int, ...]:
    dims = [sc.dim]
    gens = [{i: mpq(1)} for i in range(sc.dim)]
    cur = gens
    while cur:
        nxt = _span(sc.bracket(g, v) for g in gens for v in cur)
        if len(nxt) == len(cur):
            break
        dims.append(len(nxt))
        cur = nxt
    return tuple(dims)


def _center_dim(sc: StructureConstants) -> int:
    cols = []
    for i in range(sc.dim):
        col = {}
        for j in range(sc.dim):
            for k, x in sc.c(i, j).items():
                col[(j, k)] = x
        cols.append(col)
    return len(nullspace(cols))


def killing_form(sc: StructureConstants) -> list[list[mpq]]:
    d = sc.dim
    # ad_i as sparse {(row r, col k): c_ik^r}
    ads = []
    for i in range(d):
        m = {}
        for k in range(d):
            for r, x in sc.c(i, k).items():
                m[(r, k)] = x
        ads.append(m)
    by_row = []
    for m in ads:
        rows: dict = {}
        for (r, k), x in m.items():
            rows.setdefault(r, []).append((k, x))
        by_row.append(rows)
    B = [[mpq(0)] * d for _ in range(d)]
    for i in range(d):
        for j in range(i, d):
            # tr(ad_i ad_j) = sum_{r,k} ad_i[r,k] ad_j[k,r]
            s = mpq(0)
            rows_j = by_row[j]
            for (r, k), x in ads[i].items():
                for kk, y in rows_j.get(k, ()):
                    if kk == r:
                        s += x * y
            B[i][j] = B[j][i] = s
    return B


@dataclass(frozen=True)
class Fingerprint:
    dim: int
    derived: tuple[int, ...]
    lower_central: tuple[int, ...]
    center: int
    killing_rank: int
    killing_signature: tuple[int, int]

    def as_dict(self) -> dict:
        return {
            "dim": self.dim,
            "derived_series": list(self.derived),
            "lower_central_series": list(self.lower_central),
            "center": self.center,
            "killing_rank": self.killing_rank,
            "killing_signature": list(self.killing_signature),
        }

    def __str__(self):
        return (
            f"dim {self.dim}, derived {self.derived}, lower central {self.lower_central}, "
            f"center {self.center}, Killing rank {self.killing_rank} "
            f"signature {self.killing_signature}"
        )


def fingerprint(sc: StructureConstants) -> Fingerprint:
    pos, neg, _ = inertia(killing_form(sc))
    return Fingerprint(
        dim=sc.dim,
        derived=_derived_series(sc),
        lower_central=_lower_central_series(sc),
        center=_center_dim(sc),
        killing_rank=pos + neg,
        killing_signature=(pos, neg),
    )


@dataclass(frozen=True)
class MatchReport:
    match: bool
    differences: tuple[str, ...]

    def __bool__(self):
        return self.match

    def __str__(self):
        if self.match:
            return "fingerprints agree (necessary, not sufficient, for isomorphism)"
        return "fingerprints differ in " + ", ".join(self.differences)


def fingerprints_match(a: Fingerprint, b: Fingerprint) -> MatchReport:
    da, db = a.as_dict(), b.as_dict()
    diff = tuple(k for k in da if da[k] != db[k])
    return MatchReport(not diff, diff)
