"""Real-algebraic hypersurfaces {rho = 0}, their Levi form and degeneracy."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .gaussian import GaussRational, as_gauss
from .linalg import inertia
from .poly import Poly, VarSet, conjugate, evaluate, partial

__all__ = [
    "SignatureVector",
    "DefiningFunction",
    "LeviVerdict",
    "norm2",
    "im_w",
    "quadric",
    "levi_matrix",
    "degeneracy_certificate",
    "levi_signature_at",
    "DegeneracyLocus",
    "classify_degeneracy",
    "full_point",
    "NotOnHypersurface",
    "SingularPoint",
]


class NotOnHypersurface(ValueError):
    pass


class SingularPoint(ValueError):
    pass


@dataclass(frozen=True)
class SignatureVector:
    """Signs sigma_1..sigma_n of the Hermitian form sum sigma_j |z_j|^2."""

    signs: tuple[int, ...]

    def __post_init__(self):
        if not self.signs or any(s not in (1, -1) for s in self.signs):
            raise ValueError("signature entries must be +1 or -1")

    @classmethod
    def standard(cls, pbar: int, qbar: int) -> "SignatureVector":
        return cls((1,) * pbar + (-1,) * qbar)

    @property
    def n(self) -> int:
        return len(self.signs)

    @property
    def pbar(self) -> int:
        return sum(1 for s in self.signs if s > 0)

    @property
    def qbar(self) -> int:
        return sum(1 for s in self.signs if s < 0)

    def __getitem__(self, j: int) -> int:
        """1-based access, sigma_j."""
        return self.signs[j - 1]


def norm2(vs: VarSet, sigma: SignatureVector | Sequence[int], indices: Sequence[int] | None = None) -> Poly:
    """sum sigma_j z_j zb_j over the given 1-based indices (default all)."""
    signs = sigma.signs if isinstance(sigma, SignatureVector) else tuple(sigma)
    if indices is None:
        indices = range(1, vs.n + 1)
        pairs = zip(indices, signs)
    else:
        pairs = zip(indices, signs)
    acc = Poly.zero(vs)
    for j, s in pairs:
        acc = acc + (Poly.var(vs, vs.z(j)) * Poly.var(vs, vs.zb(j))).scale(s)
    return acc


def im_w(vs: VarSet) -> Poly:
    return Poly.var(vs, "w").imag_part()


def quadric(sigma: SignatureVector) -> "DefiningFunction":
    """Im(w) - ||z||^2 with the origin as witness."""
    vs = VarSet(sigma.n)
    rho = im_w(vs) - norm2(vs, sigma)
    origin = {name: 0 for name in ("w", *[f"z{j}" for j in range(1, vs.n + 1)])}
    return DefiningFunction(rho, witnesses=(origin,), name=f"quadric{sigma.signs}")


def full_point(vs: VarSet, pt: Mapping) -> dict[int, GaussRational]:
    """Complete a holomorphic point {z_j, w} with the conjugate coordinates."""
    vals: dict[int, GaussRational] = {}
    for key, val in pt.items():
        i = vs.index(key)
        if vs.is_barred(i):
            raise ValueError("give only holomorphic coordinates; conjugates are derived")
        vals[i] = as_gauss(val)
        vals[vs.conj_perm[i]] = as_gauss(val).conjugate()
    for i in vs.holomorphic_indices():
        if i not in vals:
            raise KeyError(f"no value for {vs.names[i]}")
    return vals


@dataclass(frozen=True)
class DefiningFunction:
    rho: Poly
    witnesses: tuple = field(default=())
    name: str = ""

    def __post_init__(self):
        if self.rho.is_zero():
            raise ValueError("defining function must be nonzero")
        if conjugate(self.rho) != self.rho:
            raise ValueError("defining function is not real")
        for pt in self.witnesses:
            if evaluate(self.rho, full_point(self.rho.vars, pt)):
                raise NotOnHypersurface(f"witness {pt} is not on {self.name or 'M'}")

    @property
    def vars(self) -> VarSet:
        return self.rho.vars

    @property
    def n(self) -> int:
        return self.rho.vars.n


def _rho(r) -> Poly:
    return r.rho if isinstance(r, DefiningFunction) else r


def _zeta(vs: VarSet) -> tuple[list[int], list[int]]:
    hol = list(vs.holomorphic_indices())
    return hol, [vs.conj_perm[i] for i in hol]


def levi_matrix(rho) -> list[list[Poly]]:
    """Complex Hessian d^2 rho / d zeta_j d zetabar_k, zeta = (z_1..z_n, w)."""
    P = _rho(rho)
    hol, bar = _zeta(P.vars)
    firsts = [partial(P, j) for j in hol]
    return [[partial(fj, k) for k in bar] for fj in firsts]


def _det(mat: list[list[Poly]], zero: Poly) -> Poly:
    size = len(mat)
    memo: dict[tuple[int, frozenset], Poly] = {}

    def minor(r: int, cols: frozenset) -> Poly:
        if r == size:
            return Poly.const(zero.vars, 1)
        key = (r, cols)
        got = memo.get(key)
        if got is not None:
            return got
        acc = zero
        ordered = sorted(cols)
        for pos, c in enumerate(ordered):
            entry = mat[r][c]
            if not entry:
                continue
            sub = minor(r + 1, cols - {c})
            if not sub:
                continue
            term = entry * sub
            acc = acc - term if pos % 2 else acc + term
        memo[key] = acc
        return acc

    return minor(0, frozenset(range(size)))


def degeneracy_certificate(rho) -> Poly:
    """Bordered determinant det[[0, d rho/d zetabar], [d rho/d zeta, Levi]]."""
    P = _rho(rho)
    hol, bar = _zeta(P.vars)
    zero = Poly.zero(P.vars)
    top = [zero] + [partial(P, k) for k in bar]
    body = levi_matrix(P)
    rows = [top] + [[partial(P, j)] + body[a] for a, j in enumerate(hol)]
    return _det(rows, zero)


@dataclass(frozen=True)
class LeviVerdict:
    nondegenerate: bool
    signature: tuple[int, int]  # (positive, negative) of the Levi form
    rank: int

    def __str__(self):
        if self.nondegenerate:
            return f"nondegenerate, signature {self.signature}"
        return f"degenerate, rank {self.rank}, signature {self.signature}"


def levi_signature_at(rho, pt: Mapping) -> LeviVerdict:
    """Exact inertia of the Levi form on the complex tangent space at ``pt``.

    The Levi form is taken as minus the complex Hessian of ``rho`` so that a
    defining function normalized as Im(w) - Phi reports the inertia of the
    Hessian of Phi.
    """
    P = _rho(rho)
    vs = P.vars
    vals = full_point(vs, pt)
    if evaluate(P, vals):
        where = ", ".join(f"{k}={v}" for k, v in pt.items())
        raise NotOnHypersurface(f"point ({where}) is not on the hypersurface")
    hol, _ = _zeta(vs)
    grad = [evaluate(partial(P, j), vals) for j in hol]
    a = next((j for j, g in enumerate(grad) if g), None)
    if a is None:
        raise SingularPoint(f"holomorphic gradient vanishes at {dict(pt)}")
    L = [[evaluate(e, vals) for e in row] for row in levi_matrix(P)]
    m = len(hol)
    basis = []
    inv = grad[a].inverse()
    for b in range(m):
        if b == a:
            continue
        vec = [GaussRational(0)] * m
        vec[b] = GaussRational(1)
        vec[a] = -(grad[b] * inv)
        basis.append(vec)
    H = [
        [
            -sum(
                (L[j][k] * u[j] * v[k].conjugate() for j in range(m) for k in range(m)),
                GaussRational(0),
            )
            for v in basis
        ]
        for u in basis
    ]
    pos, neg, zero = inertia(H)
    return LeviVerdict(zero == 0, (pos, neg), pos + neg)


@dataclass(frozen=True)
class DegeneracyLocus:
    """Zero set of the certificate when it is c * (w*wb)^a.

    ``kind`` is "empty" for a nonzero constant, "w=0" for a pure power of
    w*wb, and "unclassified" otherwise (then only witness evaluations apply).
    """

    kind: str
    exponent: int
    certificate: Poly


def classify_degeneracy(rho) -> DegeneracyLocus:
    cert = degeneracy_certificate(rho)
    vs = cert.vars
    if len(cert) == 1:
        ((e, _),) = cert.terms.items()
        a = e[vs.w]
        rest = [x for i, x in enumerate(e) if i not in (vs.w, vs.wb)]
        if e[vs.wb] == a and not any(rest):
            return DegeneracyLocus("empty" if a == 0 else "w=0", a, cert)
    return DegeneracyLocus("unclassified", 0, cert)
