"""su(p,q) in a flag-adapted basis, parabolic subalgebras and the chart action.

Coordinates on C^{n+2} are ordered Z = (z_1, ..., z_n, w, xi).  The Hermitian
form is h(Z) = H(z) - (w*conj(xi) - xi*conj(w))/(2i), so the affine chart
xi = 1 of the null cone {h = 0} is the quadric Im(w) = H(z).  With ``pairs``
hyperbolic pairs, H pairs z_j with z_{j+k} (j <= k) and is diagonal with
signs on the remaining coordinates.  The standard null planes are

    V_1 = span(e_xi),  V_s = span(e_xi, e_{z_{k+1}}, ..., e_{z_{k+s-1}}),

all coordinate subspaces, so parabolics are zero patterns.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt
from typing import Iterable, Sequence

from gmpy2 import mpq

from .fields import HoloField, is_tangent, real_kernel
from .gaussian import ONE, ZERO, GaussRational, I
from .hypersurface import DefiningFunction
from .linalg import inertia, nullspace
from .matrices import (
    Matrix,
    adjoint,
    block_diag,
    madd,
    matmul,
    matrix,
    trace,
    vector_to_matrix,
)
from .poly import Poly, VarSet

__all__ = [
    "HermitianForm",
    "MatrixAlgebra",
    "ParabolicSpec",
    "NotInAlgebra",
    "su_basis",
    "u_basis",
    "sol2_basis",
    "parabolic_subalgebra",
    "parabolic_dimension",
    "max_parabolic",
    "gap_thresholds",
    "chart_action",
    "chart_algebra",
    "stabilizer_of_subspace",
    "StabilizerResult",
    "audit_subalgebra_bound",
    "AuditReport",
]


class NotInAlgebra(ValueError):
    pass


@dataclass(frozen=True)
class HermitianForm:
    gram: Matrix
    p: int
    q: int
    pairs: int = 0  # hyperbolic z-pairs; 0 means H is diagonal

    def __post_init__(self):
        g = self.gram
        if adjoint(g) != g:
            raise ValueError("Gram matrix is not Hermitian")
        pos, neg, zero = inertia(g)
        if zero or (pos, neg) != (self.p, self.q):
            raise ValueError(f"Gram matrix has inertia {(pos, neg, zero)}, not {(self.p, self.q)}")

    @property
    def size(self) -> int:
        return len(self.gram)

    @property
    def n(self) -> int:
        return self.size - 2

    @classmethod
    def adapted(cls, p: int, q: int, pairs: int | None = None) -> "HermitianForm":
        """Form of signature (p, q) on C^{p+q}; ``pairs`` defaults to min(p, q) - 1."""
        if p < 1 or q < 1:
            raise ValueError("sign-definite forms are excluded; need p, q >= 1")
        if p + q < 3:
            raise ValueError("need p + q >= 3")
        k = min(p, q) - 1 if pairs is None else pairs
        n = p + q - 2
        if not 0 <= k <= min(p - 1, q - 1):
            raise ValueError(f"number of hyperbolic pairs must be in 0..{min(p, q) - 1}")
        N = n + 2
        g = [[ZERO] * N for _ in range(N)]
        for j in range(k):
            g[j][j + k] = g[j + k][j] = ONE
        npos = p - 1 - k
        for idx in range(2 * k, n):
            g[idx][idx] = ONE if idx - 2 * k < npos else -ONE
        w, xi = n, n + 1
        g[xi][w] = GaussRational(0, mpq(1, 2))
        g[w][xi] = GaussRational(0, mpq(-1, 2))
        return cls(matrix(g), p, q, k)

    def hermitian_part(self, vs: VarSet) -> Poly:
        """H(z) = sum conj(z_a) G_ab z_b over the z-block."""
        acc = Poly.zero(vs)
        for a in range(self.n):
            for b in range(self.n):
                c = self.gram[a][b]
                if c:
                    acc = acc + (Poly.var(vs, vs.zb(a + 1)) * Poly.var(vs, vs.z(b + 1))).scale(c)
        return acc

    def quadric(self) -> DefiningFunction:
        vs = VarSet(self.n)
        rho = Poly.var(vs, "w").imag_part() - self.hermitian_part(vs)
        origin = {"w": 0, **{f"z{j}": 0 for j in range(1, self.n + 1)}}
        return DefiningFunction(rho, witnesses=(origin,), name=f"quadric su({self.p},{self.q})")

    def null_plane(self, s: int) -> tuple[int, ...]:
        """Coordinate indices of the standard null s-plane."""
        k = self.pairs
        if not 1 <= s <= k + 1:
            raise ValueError(f"standard null planes exist for 1 <= s <= {k + 1}")
        return (self.n + 1,) + tuple(range(k, k + s - 1))


@dataclass(frozen=True)
class MatrixAlgebra:
    form: HermitianForm
    basis: tuple[Matrix, ...]
    name: str = ""
    constraints: str = "A* G + G A = 0, tr A = 0"

    @property
    def dim(self) -> int:
        return len(self.basis)


def _skew_system(G: Matrix, forbidden: set = frozenset(), traceless: bool = True) -> list[Matrix]:
    """Real basis of {A : A* G + G A = 0 [, tr A = 0], A[r][c] = 0 for (r, c) in forbidden}."""
    N = len(G)
    tags = []
    cols = []
    for r in range(N):
        for c in range(N):
            if (r, c) in forbidden:
                continue
            for part, u in ((0, ONE), (1, I)):
                col: dict = {}
                # (u E_rc)* G = conj(u) E_cr G : row c gets conj(u) * G[r][:]
                for b in range(N):
                    x = G[r][b]
                    if x:
                        col[(c, b)] = col.get((c, b), ZERO) + u.conjugate() * x
                # G (u E_rc) : column c gets u * G[:][r]
                for a in range(N):
                    x = G[a][r]
                    if x:
                        col[(a, c)] = col.get((a, c), ZERO) + u * x
                vec = {}
                for key, v in col.items():
                    if v.re:
                        vec[key + (0,)] = v.re
                    if v.im:
                        vec[key + (1,)] = v.im
                if traceless and r == c and part == 1:
                    vec[(N, N, 0)] = mpq(1)  # trace row
                tags.append((r, c, part))
                cols.append(vec)
    out = []
    for rel in nullspace(cols):
        out.append(vector_to_matrix(N, {tags[j]: x for j, x in rel.items()}))
    return out


def su_basis(p: int, q: int, pairs: int | None = None) -> MatrixAlgebra:
    form = HermitianForm.adapted(p, q, pairs)
    basis = _skew_system(form.gram)
    return MatrixAlgebra(form, tuple(basis), f"su({p},{q})")


def u_basis(signs: Sequence[int]) -> list[Matrix]:
    """u(p,q) for the diagonal form diag(signs); no trace condition."""
    G = matrix([[s if r == c else 0 for c in range(len(signs))] for r, s in enumerate(signs)])
    return _skew_system(G, traceless=False)


def sol2_basis() -> list[Matrix]:
    """The two-dimensional non-abelian algebra: [E11, E12] = E12."""
    return [matrix([[1, 0], [0, 0]]), matrix([[0, 1], [0, 0]])]


def u_plus_sol2(signs: Sequence[int]) -> list[Matrix]:
    """Block-diagonal realization of u(pbar, qbar) + sol(2)."""
    n = len(signs)
    zero_n = matrix([[0] * n for _ in range(n)])
    zero_2 = matrix([[0, 0], [0, 0]])
    return [block_diag(A, zero_2) for A in u_basis(signs)] + [block_diag(zero_n, B) for B in sol2_basis()]


# parabolics ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ParabolicSpec:
    """Crossed nodes of the A_{n+1} diagram; nodes i and n+2-i are arrow-paired."""

    n: int
    crosses: frozenset

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        cr = frozenset(self.crosses)
        object.__setattr__(self, "crosses", cr)
        if not cr:
            raise ValueError("empty cross set")
        for i in cr:
            if not 1 <= i <= self.n + 1:
                raise ValueError(f"node {i} outside 1..{self.n + 1}")
            if self.n + 2 - i not in cr:
                raise ValueError(f"node {i} is crossed but its arrow partner {self.n + 2 - i} is not")

    @classmethod
    def maximal(cls, n: int, s: int) -> "ParabolicSpec":
        if not 1 <= s <= n // 2 + 1:
            raise ValueError(f"s must lie in 1..{n // 2 + 1}")
        return cls(n, frozenset({s, n + 2 - s}))

    @property
    def plane_dims(self) -> tuple[int, ...]:
        """Dimensions of the stabilized null planes."""
        return tuple(sorted(i for i in self.crosses if i <= (self.n + 2) // 2))

    def label(self) -> str:
        return "p_{" + ",".join(str(i) for i in sorted(self.crosses)) + "}"

    def check_admissible(self, p: int, q: int):
        if p + q != self.n + 2:
            raise ValueError(f"su({p},{q}) does not have rank n+1 = {self.n + 1}")
        for s in self.plane_dims:
            if s > min(p, q):
                raise ValueError(f"node {s} is black in su({p},{q}); no null {s}-plane")


def parabolic_subalgebra(p: int, q: int, spec: ParabolicSpec) -> MatrixAlgebra:
    """Stabilizer in su(p,q) of the standard null planes of the cross set."""
    spec.check_admissible(p, q)
    form = HermitianForm.adapted(p, q)
    N = form.size
    forbidden = set()
    for s in spec.plane_dims:
        plane = set(form.null_plane(s))
        forbidden |= {(r, c) for c in plane for r in range(N) if r not in plane}
    basis = _skew_system(form.gram, forbidden)
    return MatrixAlgebra(form, tuple(basis), f"{spec.label()} in su({p},{q})")


def parabolic_dimension(n: int, s: int) -> int:
    if n < 1 or not 1 <= s <= n // 2 + 1:
        raise ValueError(f"need n >= 1 and 1 <= s <= {max(n, 1) // 2 + 1}")
    return n * n - 2 * s * n + 3 * s * s + 4 * n - 4 * s + 3


def max_parabolic(n: int) -> tuple[int, frozenset]:
    vals = {s: parabolic_dimension(n, s) for s in range(1, n // 2 + 2)}
    top = max(vals.values())
    return top, frozenset(s for s, v in vals.items() if v == top)


def gap_thresholds(n: int) -> tuple[int, int, int]:
    if n < 1:
        raise ValueError("n must be >= 1")
    d_max = n * n + 4 * n + 3
    d_smax = n * n + 2 * n + 2 + (1 if n == 2 else 0)
    d0 = 3 if n == 1 else n * n + 4
    return d_max, d_smax, d0


# chart action ----------------------------------------------------------------------------


def _in_algebra(A: Matrix, G: Matrix) -> bool:
    if len(A) != len(G):
        return False
    lhs = madd(matmul(adjoint(A), G), matmul(G, A))
    return all(not x for row in lhs for x in row) and not trace(A)


def chart_action(A: Matrix, form: HermitianForm) -> HoloField:
    """Projective vector field of A on the chart xi = 1.

    The map is a Lie anti-homomorphism for the plain commutator; with the
    half-bracket on fields, bracket(phi(A), phi(B)) == phi((B A - A B) / 2).
    """
    if not _in_algebra(A, form.gram):
        raise NotInAlgebra("matrix is not in the skew algebra of the form")
    n = form.n
    vs = VarSet(n)
    hat = [Poly.var(vs, vs.z(j)) for j in range(1, n + 1)] + [Poly.var(vs, "w"), Poly.const(vs, 1)]
    image = []
    for a in range(n + 2):
        acc = Poly.zero(vs)
        for b, x in enumerate(A[a]):
            if x:
                acc = acc + hat[b].scale(x)
        image.append(acc)
    last = image[-1]
    comps = [image[k] - hat[k] * last for k in range(n + 1)]
    return HoloField(vs, comps)


def chart_algebra(p: int, q: int, pairs: int = 0) -> tuple[HermitianForm, list[HoloField]]:
    """The quadric's form and the images of a full su(p,q) basis."""
    alg = su_basis(p, q, pairs)
    return alg.form, [chart_action(A, alg.form) for A in alg.basis]


# stabilizers ----------------------------------------------------------------------------------


@dataclass(frozen=True)
class StabilizerResult:
    basis: tuple[HoloField, ...]
    equations: tuple[str, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)


def stabilizer_of_subspace(fields: Sequence[HoloField], L: Iterable[str], rho=None) -> StabilizerResult:
    """Real subspace of fields tangent to the coordinate subspace {v = 0 : v in L}.

    For each equation v = 0 the v-component must vanish identically after
    setting every variable of L to zero.
    """
    if not fields:
        return StabilizerResult((), ())
    vs = fields[0].vars
    eqs = tuple(L)
    idx = [vs.index(v) for v in eqs]
    for v, i in zip(eqs, idx):
        if vs.is_barred(i):
            raise ValueError(f"{v}: give holomorphic coordinates")
    if rho is not None:
        for j, X in enumerate(fields):
            if not is_tangent(X, rho):
                raise ValueError(f"field {j} is not tangent to the hypersurface")
    hol = vs.holomorphic_indices()
    sigma = {}
    for i in idx:
        sigma[i] = Poly.zero(vs)
        sigma[vs.conj_perm[i]] = Poly.zero(vs)
    from .poly import substitute

    def normal(X: HoloField):
        return [substitute(X.comps[hol.index(i)], sigma) for i in idx]

    basis = real_kernel(fields, normal) if idx else list(fields)
    return StabilizerResult(tuple(basis), eqs)


# audit -------------------------------------------------------------------------------------------


@dataclass(frozen=True)
class AuditReport:
    n: int
    threshold: int
    candidates: tuple[tuple[str, int, bool], ...]  # (name, dim, strictly below)

    @property
    def ok(self) -> bool:
        return all(below for _, _, below in self.candidates)

    def lines(self) -> list[str]:
        return [
            f"n={self.n} {name}: {d} {'<' if ok else '>='} {self.threshold}"
            for name, d, ok in self.candidates
        ]


_EXCEPTIONAL = (("g2", 14, 7), ("f4", 52, 26), ("e6", 78, 27), ("e7", 133, 56), ("e8", 248, 248))


def audit_subalgebra_bound(n: int) -> AuditReport:
    """Every non-parabolic maximal-subalgebra candidate is below the parabolic maximum."""
    if n < 1:
        raise ValueError("n must be >= 1")
    N = n + 2
    threshold, _ = max_parabolic(n)
    cands: list[tuple[str, int]] = [("pseudotorus centralizer u(p,q-1)", (n + 1) ** 2)]
    for s in range(2, isqrt(N) + 1):
        if N % s == 0:
            t = N // s
            cands.append((f"sl({s}) + sl({t}) tensor", s * s + t * t - 2))
    cands.append((f"A-type sl({n + 1})", n * n + 2 * n))
    cands.append((f"B/D-type so({N})", N * (N - 1) // 2))
    k = n // 2
    cands.append((f"C-type sp({2 * k + 2})", (k + 1) * (2 * k + 3)))
    for name, dim, rep in _EXCEPTIONAL:
        if N >= rep:
            cands.append((name, dim))
    return AuditReport(n, threshold, tuple((name, d, d < threshold) for name, d in cands))
