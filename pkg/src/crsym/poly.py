"""Exact multivariate polynomials over Q(i) in z_1..z_n, zb_1..zb_n, w, wb.

The barred variables are formal: they are independent indeterminates tied
to their unbarred partners only by the conjugation involution.  A polynomial
is *real* when it is fixed by :func:`conjugate`.

Monomials are ordered graded-lexicographically with
``z1 < ... < zn < zb1 < ... < zbn < w < wb``.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping

from gmpy2 import mpq

from .gaussian import ONE, ZERO, GaussRational, as_gauss

__all__ = [
    "VarSet",
    "Poly",
    "conjugate",
    "substitute",
    "partial",
    "evaluate",
    "try_exact_multiplier",
    "normal_form",
    "pseudo_divide",
    "order_key",
]

Exp = tuple  # tuple[int, ...]


@dataclass(frozen=True)
class VarSet:
    """The 2n+2 variables of CR-dimension ``n``."""

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("CR-dimension must be at least 1")

    @property
    def size(self) -> int:
        return 2 * self.n + 2

    @cached_property
    def names(self) -> tuple[str, ...]:
        n = self.n
        return (
            tuple(f"z{j}" for j in range(1, n + 1)) + tuple(f"zb{j}" for j in range(1, n + 1)) + ("w", "wb")
        )

    @cached_property
    def _index(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.names)}

    @cached_property
    def conj_perm(self) -> tuple[int, ...]:
        n = self.n
        perm = list(range(n, 2 * n)) + list(range(n)) + [2 * n + 1, 2 * n]
        return tuple(perm)

    def index(self, var) -> int:
        if isinstance(var, int):
            if not 0 <= var < self.size:
                raise KeyError(f"variable index {var} out of range")
            return var
        try:
            return self._index[var]
        except KeyError:
            raise KeyError(f"unknown variable {var!r} for n={self.n}") from None

    def z(self, j: int) -> int:
        """Index of z_j (1-based j)."""
        return j - 1

    def zb(self, j: int) -> int:
        return self.n + j - 1

    @property
    def w(self) -> int:
        return 2 * self.n

    @property
    def wb(self) -> int:
        return 2 * self.n + 1

    def holomorphic_indices(self) -> tuple[int, ...]:
        """z_1..z_n, w, in that order."""
        return tuple(range(self.n)) + (2 * self.n,)

    def is_barred(self, i: int) -> bool:
        return self.n <= i < 2 * self.n or i == 2 * self.n + 1


def order_key(e: Exp):
    """Sort key realizing the graded-lex order (larger key = larger monomial)."""
    return (sum(e), e[::-1])


def _neg_key(e: Exp):
    return (-sum(e), tuple(-x for x in reversed(e)))


def _add_exp(a: Exp, b: Exp) -> Exp:
    return tuple(x + y for x, y in zip(a, b))


class Poly:
    """Immutable polynomial: a map from exponent vectors to nonzero coefficients."""

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vars: VarSet, terms: Mapping[Exp, GaussRational] | None = None):
        self.vars = vars
        clean = {}
        if terms:
            size = vars.size
            for e, c in terms.items():
                if len(e) != size:
                    raise ValueError("exponent vector length does not match VarSet")
                c = as_gauss(c)
                if c:
                    clean[tuple(e)] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _wrap(cls, vars: VarSet, terms: dict) -> "Poly":
        obj = object.__new__(cls)
        obj.vars = vars
        obj.terms = terms
        obj._hash = None
        return obj

    # constructors -----------------------------------------------------------
    @classmethod
    def zero(cls, vars: VarSet) -> "Poly":
        return cls._wrap(vars, {})

    @classmethod
    def const(cls, vars: VarSet, c) -> "Poly":
        c = as_gauss(c)
        if not c:
            return cls.zero(vars)
        return cls._wrap(vars, {(0,) * vars.size: c})

    @classmethod
    def var(cls, vars: VarSet, name) -> "Poly":
        i = vars.index(name)
        e = [0] * vars.size
        e[i] = 1
        return cls._wrap(vars, {tuple(e): ONE})

    @classmethod
    def monomial(cls, vars: VarSet, e: Exp, c=ONE) -> "Poly":
        return cls(vars, {tuple(e): c})

    # basic queries ------------------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, var) -> int:
        i = self.vars.index(var)
        return max((e[i] for e in self.terms), default=-1)

    def sorted_terms(self) -> list[tuple[Exp, GaussRational]]:
        """Terms in decreasing monomial order (the canonical form)."""
        return sorted(self.terms.items(), key=lambda t: order_key(t[0]), reverse=True)

    def leading_term(self) -> tuple[Exp, GaussRational]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=order_key)
        return e, self.terms[e]

    def constant_term(self) -> GaussRational:
        return self.terms.get((0,) * self.vars.size, ZERO)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def is_holomorphic(self) -> bool:
        vs = self.vars
        barred = [i for i in range(vs.size) if vs.is_barred(i)]
        return all(not any(e[i] for i in barred) for e in self.terms)

    def is_real(self) -> bool:
        return conjugate(self) == self

    def variables(self) -> set[int]:
        used = set()
        for e in self.terms:
            used.update(i for i, x in enumerate(e) if x)
        return used

    # arithmetic ---------------------------------------------------------------
    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.vars != self.vars:
                raise ValueError(f"VarSet mismatch: n={self.vars.n} vs n={other.vars.n}")
            return other
        return Poly.const(self.vars, other)

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e)
            if s is None:
                terms[e] = c
            else:
                s = s + c
                if s:
                    terms[e] = s
                else:
                    del terms[e]
        return Poly._wrap(self.vars, terms)

    __radd__ = __add__

    def __neg__(self):
        return Poly._wrap(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c) -> "Poly":
        c = as_gauss(c)
        if not c:
            return Poly.zero(self.vars)
        return Poly._wrap(self.vars, {e: v * c for e, v in self.terms.items()})

    def shift(self, e: Exp, c=ONE) -> "Poly":
        """Multiply by the monomial c * x^e."""
        c = as_gauss(c)
        if not c:
            return Poly.zero(self.vars)
        return Poly._wrap(self.vars, {_add_exp(k, e): v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Poly):
            if not isinstance(other, (int, GaussRational, mpq, Fraction)):
                return NotImplemented
            return self.scale(other)
        other = self._coerce(other)
        if len(self.terms) < len(other.terms):
            a, b = self.terms, other.terms
        else:
            a, b = other.terms, self.terms
        acc: dict = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                s = acc.get(e)
                acc[e] = c1 * c2 if s is None else s + c1 * c2
        return Poly._wrap(self.vars, {e: c for e, c in acc.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Poly):
            raise TypeError("use try_exact_multiplier for polynomial division")
        return self.scale(as_gauss(other).inverse())

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = Poly.const(self.vars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # equality -----------------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.vars == other.vars and self.terms == other.terms
        if isinstance(other, (int, GaussRational)):
            return self == Poly.const(self.vars, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars.n, frozenset(self.terms.items())))
        return self._hash

    # real structure -------------------------------------------------------------
    def real_part(self) -> "Poly":
        return (self + conjugate(self)).scale(GaussRational(1, 0) / 2)

    def imag_part(self) -> "Poly":
        return (self - conjugate(self)).scale(GaussRational(0, -1) / 2)

    # formatting -----------------------------------------------------------------
    def __repr__(self):
        return f"Poly(n={self.vars.n}, {self})"

    def __str__(self):
        from .parse import format_poly

        return format_poly(self)


# --------------------------------------------------------------------------
# operations


def conjugate(P: Poly) -> Poly:
    """Swap z_j <-> zb_j, w <-> wb and conjugate every coefficient."""
    perm = P.vars.conj_perm
    return Poly._wrap(
        P.vars,
        {tuple(e[perm[i]] for i in range(len(e))): c.conjugate() for e, c in P.terms.items()},
    )


def partial(P: Poly, v) -> Poly:
    """Formal partial derivative in variable ``v`` (name or index)."""
    i = P.vars.index(v)
    out = {}
    for e, c in P.terms.items():
        k = e[i]
        if k:
            e2 = e[:i] + (k - 1,) + e[i + 1 :]
            out[e2] = c * k
    return Poly._wrap(P.vars, out)


def substitute(P: Poly, sigma: Mapping, codomain: VarSet | None = None) -> Poly:
    """Simultaneous substitution ``v -> sigma[v]``, fully expanded.

    Variables missing from ``sigma`` are kept, which requires the codomain
    VarSet to equal the domain VarSet.
    """
    vs = P.vars
    images: dict[int, Poly] = {}
    target = codomain
    for key, img in sigma.items():
        i = vs.index(key)
        if not isinstance(img, Poly):
            raise TypeError("substitution images must be Poly")
        if target is None:
            target = img.vars
        elif img.vars != target:
            raise ValueError(f"substitution image uses VarSet n={img.vars.n}, codomain is n={target.n}")
        images[i] = img
    if target is None:
        target = vs
    for i in range(vs.size):
        if i not in images:
            if target != vs:
                raise ValueError(f"variable {vs.names[i]} is not mapped and codomain differs from domain")
            images[i] = Poly.var(vs, i)
    powers: dict[tuple[int, int], Poly] = {}

    def power(i: int, k: int) -> Poly:
        key = (i, k)
        got = powers.get(key)
        if got is None:
            got = images[i] if k == 1 else power(i, k - 1) * images[i]
            powers[key] = got
        return got

    acc: dict = {}
    for e, c in P.terms.items():
        term = Poly.const(target, c)
        for i, k in enumerate(e):
            if k:
                term = term * power(i, k)
        for e2, c2 in term.terms.items():
            s = acc.get(e2)
            acc[e2] = c2 if s is None else s + c2
    return Poly._wrap(target, {e: c for e, c in acc.items() if c})


def evaluate(P: Poly, pt: Mapping) -> GaussRational:
    """Exact value at a point given as ``{variable: value}``."""
    vs = P.vars
    vals: dict[int, GaussRational] = {}
    for key, val in pt.items():
        vals[vs.index(key)] = as_gauss(val)
    used = P.variables()
    missing = [vs.names[i] for i in sorted(used) if i not in vals]
    if missing:
        raise KeyError(f"no value for variable(s) {', '.join(missing)}")
    total = ZERO
    for e, c in P.terms.items():
        t = c
        for i, k in enumerate(e):
            if k:
                t = t * vals[i] ** k
        total = total + t
    return total


def normal_form(P: Poly, rho: Poly) -> tuple[Poly, Poly]:
    """Divide ``P`` by ``rho`` steered by the leading monomial of ``rho``.

    Returns ``(q, r)`` with ``P = q*rho + r`` where no monomial of ``r`` is
    divisible by the leading monomial of ``rho``.  Since a single polynomial
    is a Groebner basis of the ideal it generates, ``r`` is the unique normal
    form and ``r == 0`` exactly when ``rho`` divides ``P``.
    """
    if P.vars != rho.vars:
        raise ValueError("VarSet mismatch")
    if rho.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    lm, lc = rho.leading_term()
    inv = lc.inverse()
    tail = [(e, c) for e, c in rho.terms.items() if e != lm]
    p = dict(P.terms)
    heap = [(_neg_key(e), e) for e in p]
    heapq.heapify(heap)
    q: dict = {}
    r: dict = {}
    while heap:
        _, e = heapq.heappop(heap)
        c = p.pop(e, None)
        if c is None:
            continue
        if all(x >= y for x, y in zip(e, lm)):
            d = tuple(x - y for x, y in zip(e, lm))
            f = c * inv
            q[d] = q[d] + f if d in q else f
            for e2, c2 in tail:
                e3 = tuple(x + y for x, y in zip(e2, d))
                old = p.get(e3)
                if old is None:
                    p[e3] = -(f * c2)
                    heapq.heappush(heap, (_neg_key(e3), e3))
                else:
                    new = old - f * c2
                    if new:
                        p[e3] = new
                    else:
                        del p[e3]
        else:
            r[e] = c
    vs = P.vars
    return Poly._wrap(vs, {e: c for e, c in q.items() if c}), Poly._wrap(vs, r)


def try_exact_multiplier(P: Poly, rho: Poly) -> Poly | None:
    """The unique ``mu`` with ``P == mu*rho``, or None if none exists."""
    q, r = normal_form(P, rho)
    return None if r else q


def coefficients_in(P: Poly, v) -> dict[int, Poly]:
    """Write ``P`` as a polynomial in ``v``: ``{degree: coefficient}``."""
    i = P.vars.index(v)
    out: dict[int, dict] = {}
    for e, c in P.terms.items():
        k = e[i]
        out.setdefault(k, {})[e[:i] + (0,) + e[i + 1 :]] = c
    return {k: Poly._wrap(P.vars, t) for k, t in out.items()}


def pseudo_divide(P: Poly, rho: Poly, v) -> tuple[Poly, Poly, int]:
    """Pseudo-division in the variable ``v``: ``lc**k * P == q*rho + r``.

    ``lc`` is the leading coefficient of ``rho`` as a polynomial in ``v``
    and ``deg_v(r) < deg_v(rho)``.  A step whose leading coefficient is an
    exact multiple of ``lc`` does not raise ``k``, so ``k`` counts only the
    steps that needed the multiplier.
    """
    vs = P.vars
    if rho.vars != vs:
        raise ValueError("VarSet mismatch")
    i = vs.index(v)
    d = rho.degree_in(i)
    if d <= 0:
        raise ValueError(f"rho is constant in {vs.names[i]}")
    lc = coefficients_in(rho, i)[d]
    unit = [0] * vs.size
    q = Poly.zero(vs)
    r = P
    k = 0
    while r and r.degree_in(i) >= d:
        top = r.degree_in(i)
        lr = coefficients_in(r, i)[top]
        unit[i] = top - d
        mono = tuple(unit)
        ratio = try_exact_multiplier(lr, lc)
        if ratio is not None:
            step = ratio.shift(mono)
            q = q + step
            r = r - step * rho
        else:
            step = lr.shift(mono)
            q = q * lc + step
            r = r * lc - step * rho
            k += 1
    return q, r, k


def monomial_poly(vs: VarSet, **powers: int) -> Poly:
    """Convenience: ``monomial_poly(vs, z1=2, w=1)``."""
    e = [0] * vs.size
    for name, k in powers.items():
        e[vs.index(name)] = k
    return Poly.monomial(vs, tuple(e))


def linear_combination(vs: VarSet, pairs: Iterable[tuple[object, Poly]]) -> Poly:
    acc = Poly.zero(vs)
    for c, p in pairs:
        acc = acc + p.scale(c)
    return acc
