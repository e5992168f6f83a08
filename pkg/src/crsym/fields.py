"""Holomorphic polynomial vector fields and the tangency machinery.

A :class:`HoloField` stores the holomorphic part ``X = sum f_j d/dz_j + g d/dw``
and stands for the real field ``Re X``.  Brackets carry a factor 1/2 so that
``bracket(X, Y)`` is again the holomorphic part of ``[Re X, Re Y]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Callable, Iterable, Sequence

from gmpy2 import mpq

from .gaussian import ONE, GaussRational, I, as_gauss
from .linalg import Echelon, LinearDependence, gauss_vector, nullspace
from .poly import (
    Poly,
    VarSet,
    conjugate,
    normal_form,
    partial,
    pseudo_divide,
    substitute,
    try_exact_multiplier,
)

__all__ = [
    "HoloField",
    "TangencyVerdict",
    "real_action",
    "is_tangent",
    "bracket",
    "field_vector",
    "vector_to_field",
    "vanishing_order",
    "max_vanishing_order",
    "solve_polynomial_symmetries",
    "real_kernel",
    "span_contains",
    "monomials",
]

INF = float("inf")


def _rho(r) -> Poly:
    return getattr(r, "rho", r)


class HoloField:
    """Holomorphic polynomial field on (z_1..z_n, w); represents its real part."""

    __slots__ = ("vars", "comps")

    def __init__(self, vars: VarSet, comps: Sequence[Poly]):
        comps = tuple(comps)
        if len(comps) != vars.n + 1:
            raise ValueError(f"expected {vars.n + 1} components, got {len(comps)}")
        for c in comps:
            if c.vars != vars:
                raise ValueError("component VarSet mismatch")
            if not c.is_holomorphic():
                raise ValueError(f"component {c} contains barred variables")
        self.vars = vars
        self.comps = comps

    # constructors ----------------------------------------------------------
    @classmethod
    def zero(cls, vs: VarSet) -> "HoloField":
        return cls(vs, [Poly.zero(vs)] * (vs.n + 1))

    @classmethod
    def d(cls, vs: VarSet, var) -> "HoloField":
        """The coordinate field d/dz_j or d/dw."""
        i = vs.index(var)
        if vs.is_barred(i):
            raise ValueError("coordinate fields are holomorphic")
        comps = [Poly.zero(vs)] * (vs.n + 1)
        comps[_slot(vs, i)] = Poly.const(vs, 1)
        return cls(vs, comps)

    @classmethod
    def parse(cls, src: str, n: int | None = None) -> "HoloField":
        from .parse import parse_field_components

        vs, comps = parse_field_components(src, n)
        return cls(vs, comps)

    # algebra -----------------------------------------------------------------
    def __add__(self, other: "HoloField") -> "HoloField":
        _same(self, other)
        return HoloField(self.vars, [a + b for a, b in zip(self.comps, other.comps)])

    def __sub__(self, other: "HoloField") -> "HoloField":
        _same(self, other)
        return HoloField(self.vars, [a - b for a, b in zip(self.comps, other.comps)])

    def __neg__(self) -> "HoloField":
        return HoloField(self.vars, [-a for a in self.comps])

    def __mul__(self, c) -> "HoloField":
        """Multiply by a scalar or a holomorphic polynomial."""
        if isinstance(c, Poly):
            return HoloField(self.vars, [c * a for a in self.comps])
        return HoloField(self.vars, [a.scale(c) for a in self.comps])

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, HoloField) and self.vars == other.vars and self.comps == other.comps

    def __hash__(self):
        return hash(self.comps)

    def __bool__(self):
        return any(self.comps)

    def is_zero(self) -> bool:
        return not self

    def degree(self) -> int:
        return max((c.degree() for c in self.comps if c), default=-1)

    def apply(self, P: Poly) -> Poly:
        """The holomorphic derivation X(P)."""
        acc = Poly.zero(self.vars)
        for i, c in zip(self.vars.holomorphic_indices(), self.comps):
            if c:
                acc = acc + c * partial(P, i)
        return acc

    def __str__(self):
        from .parse import format_field

        return format_field(self.vars, self.comps)

    def __repr__(self):
        return f"HoloField({self})"


def _slot(vs: VarSet, i: int) -> int:
    return vs.holomorphic_indices().index(i)


def _same(a: HoloField, b: HoloField):
    if a.vars != b.vars:
        raise ValueError("fields live on different VarSets")


def real_action(X: HoloField, rho) -> Poly:
    """X(rho) + Xbar(rho): the derivative of rho along Re X (times 2)."""
    P = _rho(rho)
    if P.vars != X.vars:
        raise ValueError(f"field has n={X.vars.n}, defining function has n={P.vars.n}")
    vs = P.vars
    acc = Poly.zero(vs)
    for i, c in zip(vs.holomorphic_indices(), X.comps):
        if c:
            acc = acc + c * partial(P, i) + conjugate(c) * partial(P, vs.conj_perm[i])
    return acc


@dataclass(frozen=True)
class TangencyVerdict:
    tangent: bool
    method: str | None  # "multiplier", "pseudo-remainder" or None
    multiplier: Poly | None = None
    variable: str | None = None

    def __bool__(self):
        return self.tangent

    def __str__(self):
        if not self.tangent:
            return "not tangent"
        if self.method == "multiplier":
            return f"tangent, multiplier {self.multiplier}"
        return f"tangent, zero pseudo-remainder in {self.variable}"


def is_tangent(X: HoloField, rho) -> TangencyVerdict:
    P = _rho(rho)
    action = real_action(X, P)
    mu = try_exact_multiplier(action, P)
    if mu is not None:
        return TangencyVerdict(True, "multiplier", multiplier=mu)
    for i in sorted(P.variables()):
        _, r, _ = pseudo_divide(action, P, i)
        if not r:
            return TangencyVerdict(True, "pseudo-remainder", variable=P.vars.names[i])
    return TangencyVerdict(False, None)


def bracket(X: HoloField, Y: HoloField) -> HoloField:
    """Holomorphic part of [Re X, Re Y], i.e. half the holomorphic commutator."""
    _same(X, Y)
    half = mpq(1, 2)
    return HoloField(X.vars, [(X.apply(b) - Y.apply(a)).scale(half) for a, b in zip(X.comps, Y.comps)])


# real linear algebra on fields -------------------------------------------------


def field_vector(X: HoloField) -> dict:
    """Real coordinates keyed by (component, exponent, 0 for re | 1 for im)."""
    out = {}
    for k, c in enumerate(X.comps):
        out.update(gauss_vector({(k, e): x for e, x in c.terms.items()}))
    return out


def vector_to_field(vs: VarSet, vec: dict) -> HoloField:
    comps: list[dict] = [dict() for _ in range(vs.n + 1)]
    for (k, e, part), x in vec.items():
        c = GaussRational(x) if part == 0 else GaussRational(0, x)
        d = comps[k]
        d[e] = d[e] + c if e in d else c
    return HoloField(vs, [Poly(vs, d) for d in comps])


def _vec_key(key):
    k, e, part = key
    return (sum(e), k, e, part)


def real_kernel(basis: Sequence[HoloField], image: Callable[[HoloField], Iterable[Poly]]) -> list[HoloField]:
    """Real span elements whose image under an R-linear map is zero.

    ``image`` maps a field to a sequence of polynomials and must be R-linear
    (for instance substitution into components).  The result is a basis.
    """
    columns = []
    for X in basis:
        col = {}
        for slot, P in enumerate(image(X)):
            col.update(gauss_vector(P.terms, prefix=(slot,)))
        columns.append(col)
    out = []
    for rel in nullspace(columns):
        acc = None
        for j, c in sorted(rel.items()):
            term = basis[j] * c
            acc = term if acc is None else acc + term
        out.append(acc)
    return out


def span_contains(basis: Sequence[HoloField], X: HoloField) -> dict | None:
    """Real coefficients expressing X in the basis, or None."""
    ech = Echelon(order=_vec_key)
    for j, B in enumerate(basis):
        if ech.add(field_vector(B), tag=j) is not None:
            raise LinearDependence(f"basis element {j} is dependent on earlier ones")
    return ech.express(field_vector(X))


# vanishing orders -----------------------------------------------------------------


def _shift_to(X: HoloField, pt) -> HoloField:
    vs = X.vars
    if not pt:
        return X
    sigma = {}
    for key, val in pt.items():
        i = vs.index(key)
        if vs.is_barred(i):
            raise ValueError("give holomorphic coordinates only")
        v = as_gauss(val)
        if v:
            sigma[i] = Poly.var(vs, i) + Poly.const(vs, v)
    if not sigma:
        return X
    return HoloField(vs, [substitute(c, sigma) for c in X.comps])


def vanishing_order(X: HoloField, pt=None) -> int | float:
    """Lowest total degree in the Taylor expansion at ``pt``; inf for zero."""
    Y = _shift_to(X, pt)
    orders = [min(sum(e) for e in c.terms) for c in Y.comps if c]
    return min(orders) if orders else INF


def max_vanishing_order(basis: Sequence[HoloField], pt=None) -> int:
    """Largest vanishing order at ``pt`` over nonzero elements of the real span."""
    if not basis:
        raise ValueError("empty basis")
    ech = Echelon(order=_vec_key)
    for j, X in enumerate(basis):
        rel = ech.add(field_vector(_shift_to(X, pt)), tag=j)
        if rel is not None:
            raise LinearDependence(f"basis element {j} depends on the others", rel)
    return max(_vec_key(p)[0] for p in ech.pivots())


# the solver -------------------------------------------------------------------------


def monomials(vs: VarSet, indices: Sequence[int], max_degree: int) -> list[tuple]:
    """All exponent vectors in the given variables with total degree <= max_degree."""
    out = []
    for d in range(max_degree + 1):
        for combo in combinations_with_replacement(indices, d):
            e = [0] * vs.size
            for i in combo:
                e[i] += 1
            out.append(tuple(e))
    return out


def solve_polynomial_symmetries(rho, D: int, margin: int = 0, method: str = "normal_form") -> list[HoloField]:
    """Basis of all HoloField with coefficient degree <= D tangent to {rho = 0}.

    ``method="normal_form"`` reduces the action of each real basis field
    modulo rho and takes the real kernel.  ``method="multiplier"`` sets up
    the system X(rho) + Xbar(rho) = mu*rho with the coefficients of mu as
    extra unknowns.  Both give the same space whenever margin >= 0, because
    the monomial order is graded.
    """
    P = _rho(rho)
    if D < 0:
        raise ValueError("degree bound must be non-negative")
    if method not in ("normal_form", "multiplier"):
        raise ValueError(f"unknown method {method!r}")
    vs = P.vars
    hol = vs.holomorphic_indices()
    dz = [partial(P, i) for i in hol]
    dzb = [partial(P, vs.conj_perm[i]) for i in hol]
    perm = vs.conj_perm
    tags = []
    columns = []
    for k in range(len(hol)):
        for e in monomials(vs, hol, D):
            eb = tuple(e[perm[i]] for i in range(vs.size))
            for part, c in ((0, ONE), (1, I)):
                action = dz[k].shift(e, c) + dzb[k].shift(eb, c.conjugate())
                if method == "normal_form":
                    _, action = normal_form(action, P)
                tags.append((k, e, part))
                columns.append(gauss_vector(action.terms))
    nx = len(columns)
    if method == "multiplier":
        mdeg = D - 1 + margin
        if mdeg >= 0:
            for e in monomials(vs, range(vs.size), mdeg):
                for c in (ONE, I):
                    columns.append(gauss_vector(P.shift(e, -c).terms))
    out = []
    for rel in nullspace(columns):
        vec = {tags[j]: x for j, x in rel.items() if j < nx}
        if vec:
            out.append(vector_to_field(vs, vec))
    return out
