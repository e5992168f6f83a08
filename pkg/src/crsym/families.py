"""Defining polynomials and printed generator lists for the model families.

Every builder returns ``(rho, generators)`` with ``rho`` a real Poly and the
generators as holomorphic parts of the symmetry fields.  Index conventions
follow the displays they come from: ``a, b, c`` run over the k hyperbolic
pairs, ``j, l`` over the trailing diagonal block ``z'``.
"""

from __future__ import annotations

from typing import Sequence

from .fields import HoloField
from .gaussian import I
from .hypersurface import norm2
from .poly import Poly, VarSet, conjugate

__all__ = [
    "Builder",
    "eq_split",
    "eq_one",
    "eq_two",
    "vfrepres",
    "ramified",
    "ep2",
    "ep123",
    "ep13",
    "m5",
    "heis_fields",
    "blowup_subspace",
]


class Builder:
    """Shorthand for writing fields: ``B.z(j)``, ``B.w``, ``B.d(j)``, ``B.dw``."""

    def __init__(self, n: int):
        self.vs = VarSet(n)
        self.n = n
        self.w = Poly.var(self.vs, "w")
        self.dw = HoloField.d(self.vs, "w")
        self.zero = HoloField.zero(self.vs)

    def z(self, j: int) -> Poly:
        return Poly.var(self.vs, f"z{j}")

    def zb(self, j: int) -> Poly:
        return Poly.var(self.vs, f"zb{j}")

    def d(self, j: int) -> HoloField:
        return HoloField.d(self.vs, f"z{j}")

    def euler(self, indices: Sequence[int]) -> HoloField:
        acc = self.zero
        for j in indices:
            acc = acc + self.z(j) * self.d(j)
        return acc

    def const(self, c) -> Poly:
        return Poly.const(self.vs, c)


def _two_re(P: Poly) -> Poly:
    return P + conjugate(P)


def eq_split(n: int, s: int, p: int) -> tuple[int, tuple[int, ...]]:
    """k = s-1 and the signs of z' = (z_{2k+1}, ..., z_n): p-1-k plus, the rest minus."""
    k = s - 1
    m = n - 2 * k
    if k < 0 or m < 0:
        raise ValueError(f"s={s} is out of range for n={n}")
    pos = p - 1 - k
    if pos < 0 or pos > m:
        raise ValueError(f"signature p={p} incompatible with n={n}, s={s}")
    return k, tuple([1] * pos + [-1] * (m - pos))


def _pairing(B: Builder, k: int) -> Poly:
    """sum_a (z_a w zb_{a+k} + z_{a+k} wb zb_a)."""
    vs = B.vs
    wb = Poly.var(vs, "wb")
    acc = Poly.zero(vs)
    for a in range(1, k + 1):
        acc = acc + B.z(a) * B.w * B.zb(a + k) + B.z(a + k) * wb * B.zb(a)
    return acc


def eq_one(n: int, s: int, p: int) -> tuple[Poly, list[HoloField]]:
    """Im w = sum(z_a w zb_{a+k} + c.c.) + |w|^2 ||z'||^2 and its generator list."""
    k, sig = eq_split(n, s, p)
    B = Builder(n)
    vs = B.vs
    wb = Poly.var(vs, "wb")
    J = list(range(2 * k + 1, n + 1))
    sj = {j: sig[j - 2 * k - 1] for j in J}
    rho = B.w.imag_part() - _pairing(B, k) - B.w * wb * norm2(vs, sig, J)
    w = B.w
    zeta = B.euler(J) - w * B.dw
    xi = B.euler(range(1, k + 1)) + zeta
    eta = B.euler(range(k + 1, 2 * k + 1)) + w * B.dw
    A = range(1, k + 1)
    gens = []
    for a in A:
        za, zak = B.z(a), B.z(a + k)
        gens += [
            B.d(a) + (zak * eta) * (2 * I),
            B.d(a) * I + (zak * eta) * 2,
            B.d(a + k) - (za * xi) * (2 * I),
            B.d(a + k) * I - (za * xi) * 2,
            w * (B.d(a + k) + (za * eta) * (2 * I)),
            w * (B.d(a + k) * I + (za * eta) * 2),
        ]
    gens += [w * eta, zeta - w * B.dw]
    for a in A:
        gens.append((B.z(a) * w * B.d(a + k)) * I)
    for a in A:
        for b in A:
            gens += [
                B.z(a) * B.d(b) - B.z(b + k) * B.d(a + k),
                (B.z(a) * B.d(b) + B.z(b + k) * B.d(a + k)) * I,
            ]
    for a in A:
        for c in A:
            if a < c:
                gens += [
                    w * (B.z(a) * B.d(c + k) - B.z(c) * B.d(a + k)),
                    w * (B.z(a) * B.d(c + k) + B.z(c) * B.d(a + k)) * I,
                ]
    for a in A:
        for j in J:
            gens += [
                B.z(a) * B.d(j) - (B.z(j) * w * B.d(a + k)) * sj[j],
                (B.z(a) * B.d(j) + (B.z(j) * w * B.d(a + k)) * sj[j]) * I,
            ]
    gens += _diagonal_block(B, J, sj)
    for j in J:
        gens += [
            B.d(j) + (B.z(j) * w * eta) * (2 * sj[j] * I),
            B.d(j) * I + (B.z(j) * w * eta) * (2 * sj[j]),
        ]
    return rho, gens


def eq_two(n: int, s: int, p: int) -> tuple[Poly, list[HoloField]]:
    """Im w = sum(z_a w zb_{a+k} + c.c.) + ||z'||^2 and its generator list (1 < s < n/2+1)."""
    k, sig = eq_split(n, s, p)
    if not (k >= 1 and 2 * k < n):
        raise ValueError(f"second realization needs 1 < s < n/2 + 1, got n={n}, s={s}")
    B = Builder(n)
    vs = B.vs
    J = list(range(2 * k + 1, n + 1))
    sj = {j: sig[j - 2 * k - 1] for j in J}
    rho = B.w.imag_part() - _pairing(B, k) - norm2(vs, sig, J)
    w = B.w
    zeta = B.euler(J) + w * B.dw
    xi = B.euler(range(k + 1, 2 * k + 1)) + zeta
    eta = B.euler(range(1, k + 1)) - w * B.dw
    A = range(1, k + 1)
    gens = []
    for a in A:
        za, zak = B.z(a), B.z(a + k)
        gens += [
            B.d(a) + (zak * xi) * (2 * I),
            B.d(a) * I + (zak * xi) * 2,
            B.d(a + k) - (za * eta) * (2 * I),
            B.d(a + k) * I - (za * eta) * 2,
            w * (B.d(a + k) + (za * xi) * (2 * I)),
            w * (B.d(a + k) * I + (za * xi) * 2),
        ]
    gens += [w * xi, zeta + w * B.dw]
    for a in A:
        gens.append((B.z(a) * w * B.d(a + k)) * I)
    for a in A:
        for b in A:
            gens += [
                B.z(a) * B.d(b) - B.z(b + k) * B.d(a + k),
                (B.z(a) * B.d(b) + B.z(b + k) * B.d(a + k)) * I,
            ]
    for a in A:
        for c in A:
            if a < c:
                gens += [
                    w * (B.z(a) * B.d(c + k) - B.z(c) * B.d(a + k)),
                    w * (B.z(a) * B.d(c + k) + B.z(c) * B.d(a + k)) * I,
                ]
    for a in A:
        for j in J:
            gens += [
                B.z(j) * B.d(a + k) - (B.z(a) * w * B.d(j)) * sj[j],
                (B.z(j) * B.d(a + k) + (B.z(a) * w * B.d(j)) * sj[j]) * I,
            ]
    gens += _diagonal_block(B, J, sj)
    for j in J:
        gens += [
            w * B.d(j) + (B.z(j) * xi) * (2 * sj[j] * I),
            (w * B.d(j)) * I + (B.z(j) * xi) * (2 * sj[j]),
        ]
    return rho, gens


def _diagonal_block(B: Builder, J: Sequence[int], sj) -> list[HoloField]:
    """u(pbar, qbar) rotations of a diagonal block."""
    gens = []
    for j in J:
        for ell in J:
            if j < ell:
                gens += [
                    B.z(j) * B.d(ell) - (B.z(ell) * B.d(j)) * (sj[j] * sj[ell]),
                    (B.z(j) * B.d(ell) + (B.z(ell) * B.d(j)) * (sj[j] * sj[ell])) * I,
                ]
        gens.append((B.z(j) * B.d(j)) * I)
    return gens


def _im_power(B: Builder, r: int) -> Poly:
    return (B.w**r).imag_part()


def _check_params(signs: Sequence[int], m: int, sign: int) -> None:
    if not signs or any(x not in (1, -1) for x in signs):
        raise ValueError("signs must be a nonempty sequence of +-1")
    if m < 1:
        raise ValueError("m must be >= 1")
    if sign not in (1, -1):
        raise ValueError("the sign parameter must be +-1")


def vfrepres(signs: Sequence[int], m: int, eps: int) -> tuple[Poly, list[HoloField]]:
    """Im(w^{2m}) = eps |w|^{2m} ||z||^2 with the n^2+2n+2 printed fields.

    The fields are stated for the transcendental branch equation; this
    polynomial contains every branch (it is the ramified weighted blow-up with
    r = 2m), so tangency is checked against it.
    """
    _check_params(signs, m, eps)
    n = len(signs)
    B = Builder(n)
    vs = B.vs
    wb = Poly.var(vs, "wb")
    rho = _im_power(B, 2 * m) - (B.w * wb) ** m * norm2(vs, signs).scale(eps)
    w = B.w
    xi = B.euler(range(1, n + 1))
    core = xi * m + w * B.dw
    wm = w**m
    gens = [w * B.dw, (w ** (2 * m)) * core]
    gens += _diagonal_block(B, range(1, n + 1), {j: signs[j - 1] for j in range(1, n + 1)})
    for j in range(1, n + 1):
        c = m * eps * signs[j - 1]
        gens += [
            (B.z(j) * wm) * core + (wm * B.d(j)) * (c * I),
            ((B.z(j) * wm) * core) * I + (wm * B.d(j)) * c,
        ]
    return rho, gens


def ramified(signs: Sequence[int], m: int, r: int, sigma: int = 1) -> tuple[Poly, list[HoloField]]:
    """Im(w^r) = sigma |w|^{2m} ||z||^2 with the n^2+2 fields u(pbar,qbar) + sol(2).

    The Euler field in the last two generators is the plain sum z_j d/dz_j.
    """
    _check_params(signs, m, sigma)
    if r < 1:
        raise ValueError("ramification order must be >= 1")
    n = len(signs)
    B = Builder(n)
    vs = B.vs
    wb = Poly.var(vs, "wb")
    rho = _im_power(B, r) - (B.w * wb) ** m * norm2(vs, signs).scale(sigma)
    w = B.w
    xi = B.euler(range(1, n + 1))
    from fractions import Fraction

    gens = _diagonal_block(B, range(1, n + 1), {j: signs[j - 1] for j in range(1, n + 1)})
    gens += [
        w * B.dw - xi * Fraction(2 * m - r, 2),
        (w**r) * (w * B.dw - xi * (m - r)),
    ]
    return rho, gens


def ep2() -> Poly:
    B = Builder(2)
    return B.w.imag_part() - _two_re(B.z(1) * B.w * B.zb(2))


def ep123() -> tuple[Poly, list[HoloField]]:
    B = Builder(2)
    w = B.w
    rho = w.imag_part() - _two_re(B.z(1) * w * w * B.zb(2))
    z1, z2 = B.z(1), B.z(2)
    t = z1 * B.d(1) - z2 * B.d(2) - w * B.dw
    u = (z1 * B.d(1)) * 2 - w * B.dw
    gens = [
        (z1 * B.d(1)) * 3 - z2 * B.d(2) - (w * B.dw) * 2,
        w * t,
        B.d(2) - (z1 * w * u) * (2 * I),
        B.d(2) * I - (z1 * w * u) * 2,
        w * B.d(2) - (z1 * w * w * t) * (2 * I),
        (w * B.d(2)) * I - (z1 * w * w * t) * 2,
        z1 * B.d(1) - z2 * B.d(2),
        (z1 * B.d(1) + z2 * B.d(2)) * I,
        (z1 * w * w * B.d(2)) * I,
    ]
    return rho, gens


def ep13() -> Poly:
    B = Builder(2)
    wb = Poly.var(B.vs, "wb")
    return B.w.imag_part() - _two_re(B.z(1) * B.zb(2)) * B.w * wb


def m5() -> Poly:
    B = Builder(2)
    a1 = B.z(1) * B.zb(1)
    a2 = B.z(2) * B.zb(2)
    return B.w.imag_part() - a1 - a2 * a2


def blowup_subspace(signs: Sequence[int], moved: Sequence[int]) -> Poly:
    """Im w = |w|^2 ||z'||^2 + ||z''||^2 where z' are the ``moved`` coordinates."""
    n = len(signs)
    B = Builder(n)
    vs = B.vs
    wb = Poly.var(vs, "wb")
    moved = sorted(moved)
    fixed = [j for j in range(1, n + 1) if j not in moved]
    return (
        B.w.imag_part()
        - B.w * wb * norm2(vs, [signs[j - 1] for j in moved], moved)
        - norm2(vs, [signs[j - 1] for j in fixed], fixed)
    )


def heis_fields() -> tuple[list[str], list[HoloField]]:
    """Labelled fields spanning a six-dimensional algebra on C^3, in the order R, S, J, X, Y, Z."""
    B = Builder(2)
    w = B.w
    z1, z2 = B.z(1), B.z(2)
    R = (z2 * B.d(2)) * (-2) + (w * B.dw) * 4
    S = (z1 * B.d(1)) * I
    J = (z2 * B.d(2)) * (-2 * I)
    X = (z1 * z2 * w * B.d(1)) * I + B.d(2) + (z2 * w * w * B.dw) * (2 * I)
    Y = z1 * z2 * w * B.d(1) + B.d(2) * I + (z2 * w * w * B.dw) * 2
    Z = z1 * w * B.d(1) + (w * w * B.dw) * 2
    return ["R", "S", "J", "X", "Y", "Z"], [R, S, J, X, Y, Z]
