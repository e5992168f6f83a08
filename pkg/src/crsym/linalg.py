"""Exact sparse linear algebra over Q by fraction-free elimination.

Vectors are dicts ``{key: rational}``.  Internally every stored row is an
integer vector with content removed, so elimination never builds fractions:
a step replaces ``v`` by ``p*v - a*row`` and divides out the gcd.
"""

from __future__ import annotations

from math import gcd, lcm
from typing import Callable, Hashable, Iterable, Mapping, Sequence

from gmpy2 import mpq

from .gaussian import GaussRational, as_gauss

__all__ = [
    "Echelon",
    "LinearDependence",
    "nullspace",
    "rank",
    "inertia",
    "gauss_vector",
]


class LinearDependence(ValueError):
    """Raised when vectors expected to be independent are not."""

    def __init__(self, message: str, relation: dict | None = None):
        super().__init__(message)
        self.relation = relation or {}


def _integerize(vec: Mapping[Hashable, object]) -> tuple[dict, int]:
    """Scale a rational vector to a primitive integer vector; returns (ints, scale)."""
    qs = {k: mpq(v) if not isinstance(v, mpq) else v for k, v in vec.items() if v}
    if not qs:
        return {}, 1
    den = 1
    for q in qs.values():
        den = lcm(den, int(q.denominator))
    ints = {k: int(q * den) for k, q in qs.items()}
    return ints, den


def _content(*dicts: dict) -> int:
    g = 0
    for d in dicts:
        for v in d.values():
            g = gcd(g, v)
            if g == 1:
                return 1
    return g


class Echelon:
    """Incremental row echelon form with optional provenance tracking.

    ``add(vec, tag)`` reduces ``vec`` against the stored rows.  If something
    survives it becomes a new pivot row and ``None`` is returned; otherwise
    the vector was dependent and the returned dict expresses the relation
    ``sum(coef[t] * vec_t) == 0`` over the tags seen so far (including the
    new one), as exact rationals.

    ``order`` ranks keys; the pivot of a row is its smallest key under it.
    """

    def __init__(self, order: Callable[[Hashable], object] | None = None, track: bool = True):
        self.order = order or (lambda k: k)
        self.track = track
        self.rows: dict[Hashable, tuple[dict, dict]] = {}  # pivot key -> (row, comb)
        self.scales: dict[Hashable, int] = {}  # tag -> integerizing scale
        self.tags: list[Hashable] = []

    def __len__(self):
        return len(self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def _reduce(self, v: dict, comb: dict) -> tuple[dict, dict]:
        rows = self.rows
        order = self.order
        while True:
            hits = [k for k in v if k in rows]
            if not hits:
                return v, comb
            key = min(hits, key=order)
            row, rcomb = rows[key]
            p = row[key]
            a = v[key]
            g = gcd(p, a)
            mp, ma = p // g, a // g
            nv = {k: x * mp for k, x in v.items()}
            for k, x in row.items():
                y = nv.get(k, 0) - ma * x
                if y:
                    nv[k] = y
                else:
                    nv.pop(k, None)
            if self.track:
                nc = {k: x * mp for k, x in comb.items()}
                for k, x in rcomb.items():
                    y = nc.get(k, 0) - ma * x
                    if y:
                        nc[k] = y
                    else:
                        nc.pop(k, None)
            else:
                nc = comb
            c = _content(nv, nc) if self.track else _content(nv)
            if c > 1:
                nv = {k: x // c for k, x in nv.items()}
                if self.track:
                    nc = {k: x // c for k, x in nc.items()}
            v, comb = nv, nc

    def add(self, vec: Mapping, tag: Hashable | None = None) -> dict | None:
        if tag is None:
            tag = len(self.tags)
        v, scale = _integerize(vec)
        self.scales[tag] = scale
        self.tags.append(tag)
        comb = {tag: 1} if self.track else {}
        v, comb = self._reduce(v, comb)
        if v:
            key = min(v, key=self.order)
            if v[key] < 0:
                v = {k: -x for k, x in v.items()}
                comb = {k: -x for k, x in comb.items()}
            self.rows[key] = (v, comb)
            return None
        # relation sum comb[t] * (scale_t * vec_t) == 0
        return {t: mpq(c * self.scales[t]) for t, c in comb.items()}

    def reduce(self, vec: Mapping) -> dict:
        """Remainder of ``vec`` (up to a positive integer multiple)."""
        v, _ = _integerize(vec)
        v, _ = self._reduce(v, {})
        return v

    def contains(self, vec: Mapping) -> bool:
        return not self.reduce(vec)

    def express(self, vec: Mapping) -> dict | None:
        """Coefficients ``c`` with ``vec == sum(c[t] * vec_t)``, or None."""
        if not self.track:
            raise ValueError("express() needs provenance tracking")
        v, scale = _integerize(vec)
        marker = object()
        v, comb = self._reduce(v, {marker: 1})
        if v:
            return None
        m = comb.pop(marker)
        # m*scale*vec + sum comb[t]*scale_t*vec_t == 0
        return {t: mpq(-c * self.scales[t], m * scale) for t, c in comb.items() if c}

    def pivots(self) -> list:
        return sorted(self.rows, key=self.order)


def rank(vectors: Iterable[Mapping]) -> int:
    e = Echelon(track=False)
    for v in vectors:
        e.add(v)
    return e.rank


def nullspace(columns: Sequence[Mapping], order=None) -> list[dict[int, mpq]]:
    """Basis of ``{x : sum_j x[j] * columns[j] == 0}`` as sparse rational dicts.

    Columns are split into connected blocks (columns sharing a row key), so
    block-diagonal systems such as graded ones are eliminated block by block.
    """
    parent = list(range(len(columns)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    owner: dict = {}
    for j, col in enumerate(columns):
        for key, val in col.items():
            if not val:
                continue
            o = owner.get(key)
            if o is None:
                owner[key] = j
            else:
                ra, rb = find(o), find(j)
                if ra != rb:
                    parent[rb] = ra
    blocks: dict[int, list[int]] = {}
    for j in range(len(columns)):
        blocks.setdefault(find(j), []).append(j)
    basis = []
    for members in sorted(blocks.values()):
        ech = Echelon(order=order)
        for j in members:
            rel = ech.add(columns[j], tag=j)
            if rel is not None:
                basis.append(_normalize_relation(rel))
    basis.sort(key=lambda d: sorted(d))
    return basis


def _normalize_relation(rel: dict) -> dict:
    ints, _ = _integerize(rel)
    g = _content(ints)
    first = min(ints)
    sign = -1 if ints[first] < 0 else 1
    return {k: mpq(sign * v // g) for k, v in ints.items()}


def gauss_vector(vec: Mapping[Hashable, object], prefix: tuple = ()) -> dict:
    """Split Gaussian-rational entries into real coordinates ``(*key, 0|1)``."""
    out = {}
    for k, c in vec.items():
        c = as_gauss(c)
        kk = k if isinstance(k, tuple) else (k,)
        if c.re:
            out[prefix + kk + (0,)] = c.re
        if c.im:
            out[prefix + kk + (1,)] = c.im
    return out


def inertia(matrix: Sequence[Sequence[object]]) -> tuple[int, int, int]:
    """(positive, negative, zero) counts of a Hermitian matrix over Q(i).

    Symmetric elimination: a nonzero diagonal pivot is split off by a Schur
    complement; if the diagonal vanishes but some entry a_ij does not, the
    congruence e_i -> e_i + conj(a_ij) e_j creates the pivot 2|a_ij|^2.
    """
    m = [[as_gauss(x) for x in row] for row in matrix]
    size = len(m)
    for r in range(size):
        if len(m[r]) != size:
            raise ValueError("matrix is not square")
        for c in range(size):
            if m[r][c] != m[c][r].conjugate():
                raise ValueError("matrix is not Hermitian")
    pos = neg = 0
    active = list(range(size))
    while active:
        piv = next((i for i in active if m[i][i]), None)
        if piv is None:
            pair = next(((i, j) for i in active for j in active if i != j and m[i][j]), None)
            if pair is None:
                break
            i, j = pair
            t = m[i][j].conjugate()
            tb = m[i][j]
            # column i += t * column j ; row i += conj(t) * row j
            for r in active:
                m[r][i] = m[r][i] + m[r][j] * t
            for c in active:
                m[i][c] = m[i][c] + m[j][c] * tb
            piv = i
        d = m[piv][piv]
        if d.re > 0:
            pos += 1
        else:
            neg += 1
        active.remove(piv)
        inv = d.inverse()
        col = {r: m[r][piv] for r in active}
        row = {c: m[piv][c] for c in active}
        for r in active:
            if not col[r]:
                continue
            f = col[r] * inv
            for c in active:
                if row[c]:
                    m[r][c] = m[r][c] - f * row[c]
    zero = size - pos - neg
    return pos, neg, zero


def solve_unique(rows: Sequence[Sequence[object]], rhs: Sequence[object]) -> list[GaussRational]:
    """Solve a square nonsingular system over Q(i) by Gaussian elimination."""
    n = len(rows)
    a = [[as_gauss(x) for x in r] + [as_gauss(b)] for r, b in zip(rows, rhs)]
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c]), None)
        if p is None:
            raise LinearDependence("singular system")
        a[c], a[p] = a[p], a[c]
        inv = a[c][c].inverse()
        a[c] = [x * inv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c]:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [a[r][n] for r in range(n)]
