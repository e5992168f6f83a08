"""Blow-ups, weighted blow-ups and ramified covers as polynomial substitutions."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from gmpy2 import mpq

from .gaussian import GaussRational
from .hypersurface import DefiningFunction
from .linalg import Echelon, gauss_vector
from .poly import Poly, VarSet, conjugate, order_key, partial, substitute

__all__ = [
    "BlowupMap",
    "DegenerateCenter",
    "blowup_along",
    "weighted_blowup",
    "ramified_cover",
    "identity_map",
    "compose",
    "pullback",
    "normalize",
    "SingularSystem",
    "singular_locus",
    "LaurentMonomialMap",
    "ChartAtlas",
    "point_blowup_atlas",
    "parse_map_spec",
]


class DegenerateCenter(ValueError):
    pass


@dataclass(frozen=True)
class BlowupMap:
    """Holomorphic polynomial map given by the images of z_1..z_n, w."""

    kind: str
    vars: VarSet
    images: tuple[Poly, ...]  # one per holomorphic coordinate
    label: str = ""

    def __post_init__(self):
        if len(self.images) != self.vars.n + 1:
            raise ValueError("one image per holomorphic coordinate is required")
        for img in self.images:
            if img.vars != self.vars or not img.is_holomorphic():
                raise ValueError("images must be holomorphic polynomials on the same VarSet")

    def substitution(self) -> dict[int, Poly]:
        """Conjugation-equivariant substitution on all 2n+2 variables."""
        vs = self.vars
        out = {}
        for i, img in zip(vs.holomorphic_indices(), self.images):
            out[i] = img
            out[vs.conj_perm[i]] = conjugate(img)
        return out

    def __str__(self):
        from .parse import format_poly

        vs = self.vars
        coords = ", ".join(vs.names[i] for i in vs.holomorphic_indices())
        parts = ", ".join(format_poly(img) for img in self.images)
        return f"{self.label or self.kind}: ({coords}) -> ({parts})"


def identity_map(n: int) -> BlowupMap:
    vs = VarSet(n)
    return BlowupMap("identity", vs, tuple(Poly.var(vs, i) for i in vs.holomorphic_indices()), "id")


def blowup_along(n: int, center: Iterable[str], pivot: str = "w") -> BlowupMap:
    """pi_L for L = {v = 0 : v in center}: each v != pivot in center maps to v*pivot."""
    vs = VarSet(n)
    names = [vs.names[vs.index(v)] for v in center]
    pivot = vs.names[vs.index(pivot)]
    if pivot not in names:
        raise ValueError("the pivot coordinate must vanish on the center")
    if len(names) < 2:
        raise ValueError("blow-up centers must have codimension >= 2")
    pv = Poly.var(vs, pivot)
    images = []
    for i in vs.holomorphic_indices():
        x = Poly.var(vs, i)
        images.append(x * pv if vs.names[i] in names and vs.names[i] != pivot else x)
    label = "pi_{" + ",".join(names) + "}"
    return BlowupMap("blowup", vs, tuple(images), label)


def weighted_blowup(n: int, m: int) -> BlowupMap:
    """pi_{o,m}: (z, w) -> (z w^m, w)."""
    if m < 1:
        raise ValueError("weight must be >= 1")
    vs = VarSet(n)
    wm = Poly.var(vs, "w") ** m
    images = [Poly.var(vs, vs.z(j)) * wm for j in range(1, n + 1)] + [Poly.var(vs, "w")]
    return BlowupMap("weighted", vs, tuple(images), f"pi_(o,{m})")


def ramified_cover(n: int, r: int, sigma: int = 1) -> BlowupMap:
    """psi_{r,sigma}: (z, w) -> (z, sigma w^r)."""
    if r < 1 or sigma not in (1, -1):
        raise ValueError("need r >= 1 and sigma = +-1")
    vs = VarSet(n)
    images = [Poly.var(vs, vs.z(j)) for j in range(1, n + 1)] + [(Poly.var(vs, "w") ** r).scale(sigma)]
    return BlowupMap("ramified", vs, tuple(images), f"psi_({r},{sigma:+d})")


def compose(maps: Sequence[BlowupMap]) -> BlowupMap:
    """Map whose pullback equals pulling back by maps[0], then maps[1], ..."""
    if not maps:
        raise ValueError("nothing to compose")
    acc = maps[0]
    for nxt in maps[1:]:
        if nxt.vars != acc.vars:
            raise ValueError(f"cannot chain n={acc.vars.n} with n={nxt.vars.n}")
        sub = nxt.substitution()
        acc = BlowupMap(
            "composite",
            acc.vars,
            tuple(substitute(img, sub) for img in acc.images),
            f"{nxt.label} . {acc.label}",
        )
    return acc


def _wwb_content(P: Poly) -> int:
    vs = P.vars
    return min(min(e[vs.w], e[vs.wb]) for e in P.terms)


def normalize(P: Poly) -> Poly:
    """Strip (w*wb)^a content and fix a real rational scale.

    The anchor is the leading term of the part free of z's if there is one,
    else the leading term of the lowest-degree homogeneous part.  A non-real
    anchor is scaled to imaginary part 1/2 (so Im(w) appears as such), a real
    one to 1.
    """
    if not P:
        raise DegenerateCenter("zero polynomial")
    vs = P.vars
    a = _wwb_content(P)
    if a:
        P = Poly._wrap(
            vs,
            {
                tuple(x - a if i in (vs.w, vs.wb) else x for i, x in enumerate(e)): c
                for e, c in P.terms.items()
            },
        )
    zs = [i for i in range(vs.size) if i not in (vs.w, vs.wb)]
    pure = [e for e in P.terms if all(e[i] == 0 for i in zs)]
    if pure:
        anchor = max(pure, key=order_key)
    else:
        low = min(sum(e) for e in P.terms)
        anchor = max((e for e in P.terms if sum(e) == low), key=order_key)
    c = P.terms[anchor]
    scale = mpq(1, 2) / c.im if c.im else 1 / c.re
    return P.scale(scale)


def pullback(rho, bmap: BlowupMap) -> DefiningFunction:
    P = getattr(rho, "rho", rho)
    if P.vars != bmap.vars:
        raise ValueError(f"map acts on n={bmap.vars.n}, defining function has n={P.vars.n}")
    Q = substitute(P, bmap.substitution())
    if not Q:
        raise DegenerateCenter("the substitution annihilates the defining function")
    Q = normalize(Q)
    name = f"{bmap.label}^*({getattr(rho, 'name', '') or 'rho'})"
    return DefiningFunction(Q, name=name)


# singular loci ------------------------------------------------------------------------------


@dataclass(frozen=True)
class SingularSystem:
    """Real equations cutting out {rho = 0, d rho = 0}."""

    equations: tuple[Poly, ...]
    complex_equations: tuple[Poly, ...]  # rho and its holomorphic partials

    @property
    def empty(self) -> bool:
        """True when some equation is a nonzero constant."""
        return any(e.is_constant() and e for e in self.equations)

    def vanishes_at(self, pt) -> bool:
        from .hypersurface import full_point
        from .poly import evaluate

        if not self.complex_equations:
            return True
        vals = full_point(self.complex_equations[0].vars, pt)
        return all(not evaluate(e, vals) for e in self.complex_equations)

    def deduce_zero_coordinates(self) -> tuple[frozenset, tuple[Poly, ...]]:
        """Coordinates forced to vanish by equations of the form c*x, found
        iteratively with substitution; returns them and the residual system."""
        if not self.complex_equations:
            return frozenset(), ()
        vs = self.complex_equations[0].vars
        eqs = list(self.complex_equations)
        zeros: set[int] = set()
        changed = True
        while changed:
            changed = False
            for P in eqs:
                if len(P) == 1:
                    ((e, _),) = P.terms.items()
                    if sum(e) == 1:
                        i = e.index(1)
                        h = i if not vs.is_barred(i) else vs.conj_perm[i]
                        if h not in zeros:
                            zeros.add(h)
                            changed = True
            if changed:
                sub = {}
                for h in zeros:
                    sub[h] = Poly.zero(vs)
                    sub[vs.conj_perm[h]] = Poly.zero(vs)
                eqs = [q for q in (substitute(P, sub) for P in eqs) if q]
        return frozenset(vs.names[i] for i in zeros), tuple(eqs)


def singular_locus(rho) -> SingularSystem:
    P = getattr(rho, "rho", rho)
    vs = P.vars
    cplx = [P] + [partial(P, i) for i in vs.holomorphic_indices()]
    real = [P]
    for D in cplx[1:]:
        real.append(D.real_part())
        real.append(D.imag_part())
    ech = Echelon(track=False)
    kept = []
    for E in real:
        if E and ech.add(gauss_vector(E.terms)) is None:
            kept.append(E)
    return SingularSystem(tuple(kept), tuple(c for c in cplx if c))


# Laurent monomial maps and the point blow-up atlas -------------------------------------------


@dataclass(frozen=True)
class LaurentMonomialMap:
    """Coordinate x_a -> prod_b x_b^E[a][b] on (z_1..z_n, w), integer E."""

    n: int
    exponents: tuple[tuple[int, ...], ...]
    label: str = ""

    def __post_init__(self):
        if len(self.exponents) != self.n + 1 or any(len(r) != self.n + 1 for r in self.exponents):
            raise ValueError("exponent matrix must be (n+1) x (n+1)")

    def then(self, other: "LaurentMonomialMap") -> "LaurentMonomialMap":
        """The map x -> self(other(x))."""
        E, F = self.exponents, other.exponents
        N = self.n + 1
        prod = tuple(tuple(sum(E[a][b] * F[b][c] for b in range(N)) for c in range(N)) for a in range(N))
        return LaurentMonomialMap(self.n, prod, f"{self.label} . {other.label}")

    def is_identity(self) -> bool:
        N = self.n + 1
        return all(self.exponents[a][b] == (a == b) for a in range(N) for b in range(N))

    def apply(self, P: Poly) -> tuple[Poly, tuple[int, ...]]:
        """P o map = Q * x^shift with Q a polynomial and shift in Z^(2n+2)."""
        vs = P.vars
        hol = vs.holomorphic_indices()
        E = self.exponents
        out: dict = {}
        for e, c in P.terms.items():
            img = [0] * vs.size
            for a, i in enumerate(hol):
                for ib, k in ((i, e[i]), (vs.conj_perm[i], e[vs.conj_perm[i]])):
                    if not k:
                        continue
                    barred = ib != i
                    for b, j in enumerate(hol):
                        t = j if not barred else vs.conj_perm[j]
                        img[t] += k * E[a][b]
            key = tuple(img)
            out[key] = out[key] + c if key in out else c
        out = {k: v for k, v in out.items() if v}
        if not out:
            return Poly.zero(vs), (0,) * vs.size
        shift = tuple(min(k[i] for k in out) for i in range(vs.size))
        Q = Poly._wrap(vs, {tuple(x - s for x, s in zip(k, shift)): v for k, v in out.items()})
        return Q, shift


@dataclass(frozen=True)
class ChartAtlas:
    charts: tuple[DefiningFunction, ...]  # U_0 .. U_n
    projections: tuple[BlowupMap, ...]
    gluings: tuple[LaurentMonomialMap | None, ...]  # phi_k : U_k -> U_0, None for k = 0
    inverses: tuple[LaurentMonomialMap | None, ...]
    singular: tuple[SingularSystem, ...]

    def check_gluing(self, k: int) -> tuple[bool, tuple[int, ...]]:
        """Pull U_0 back along phi_k; equal to U_k up to a monomial factor?"""
        Q, shift = self.gluings[k].apply(self.charts[0].rho)
        return normalize(Q) == self.charts[k].rho, shift

    def check_inverse(self, k: int) -> bool:
        return (
            self.gluings[k].then(self.inverses[k]).is_identity()
            and self.inverses[k].then(self.gluings[k]).is_identity()
        )


def _diagonal_signs(rho: Poly) -> tuple[int, ...]:
    vs = rho.vars
    signs = []
    for j in range(1, vs.n + 1):
        e = [0] * vs.size
        e[vs.z(j)] = e[vs.zb(j)] = 1
        c = rho.terms.get(tuple(e))
        if c is None or c not in (GaussRational(1), GaussRational(-1)):
            raise ValueError("not a diagonal hyperquadric Im(w) = sum sigma_j |z_j|^2")
        signs.append(-int(c.re))
    return tuple(signs)


def point_blowup_atlas(rho) -> ChartAtlas:
    """Charts U_0..U_n of the blow-up of a diagonal hyperquadric at the origin."""
    P = getattr(rho, "rho", rho)
    vs = P.vars
    n = vs.n
    signs = _diagonal_signs(P)
    from .hypersurface import norm2

    if P != Poly.var(vs, "w").imag_part() - norm2(vs, signs):
        raise ValueError("point_blowup_atlas needs a hyperquadric Im(w) - sum sigma_j |z_j|^2")
    projections = [blowup_along(n, [f"z{j}" for j in range(1, n + 1)] + ["w"], pivot="w")]
    for k in range(1, n + 1):
        zk = Poly.var(vs, vs.z(k))
        imgs = []
        for j in range(1, n + 1):
            imgs.append(zk if j == k else Poly.var(vs, vs.z(j)) * zk)
        imgs.append(Poly.var(vs, "w") * zk)
        projections.append(BlowupMap("blowup", vs, tuple(imgs), f"pi_o^{k}"))
    charts = tuple(DefiningFunction(pullback(P, pr).rho, name=f"U_{k}") for k, pr in enumerate(projections))
    N = n + 1
    gl: list = [None]
    inv: list = [None]
    for k in range(1, n + 1):
        kk = k - 1
        E = [[0] * N for _ in range(N)]
        F = [[0] * N for _ in range(N)]
        for j in range(n):
            if j == kk:
                E[j][n] = -1  # 1/w
                F[j][j] = 1  # w * z_k
                F[j][n] = 1
            else:
                E[j][j] = 1  # z_j / w
                E[j][n] = -1
                F[j][j] = 1  # z_j / z_k
                F[j][kk] = -1
        E[n][kk] = 1  # z_k * w
        E[n][n] = 1
        F[n][kk] = -1  # 1 / z_k
        gl.append(LaurentMonomialMap(n, tuple(map(tuple, E)), f"phi_{k}"))
        inv.append(LaurentMonomialMap(n, tuple(map(tuple, F)), f"phi_{k}^-1"))
    return ChartAtlas(
        charts, tuple(projections), tuple(gl), tuple(inv), tuple(singular_locus(c) for c in charts)
    )


def parse_map_spec(spec: str, n: int) -> BlowupMap:
    """Text forms: "point", "center:z1,w[:pivot]", "weighted:m", "ramified:r[:sigma]",
    joined by ";" for composition in pullback order."""
    maps = []
    for part in spec.split(";"):
        part = part.strip()
        head, _, rest = part.partition(":")
        if head == "point":
            maps.append(blowup_along(n, [f"z{j}" for j in range(1, n + 1)] + ["w"]))
        elif head == "center":
            bits = rest.split(":")
            center = [c.strip() for c in bits[0].split(",") if c.strip()]
            pivot = bits[1].strip() if len(bits) > 1 else "w"
            maps.append(blowup_along(n, center, pivot))
        elif head == "weighted":
            maps.append(weighted_blowup(n, int(rest)))
        elif head == "ramified":
            bits = rest.split(":")
            maps.append(ramified_cover(n, int(bits[0]), int(bits[1]) if len(bits) > 1 else 1))
        else:
            raise ValueError(f"unknown map kind {head!r}")
    return compose(maps)
