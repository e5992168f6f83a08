"""Square matrices over Q(i) as tuples of tuples of GaussRational."""

from __future__ import annotations

from typing import Sequence

from .gaussian import ONE, ZERO, GaussRational, as_gauss
from .linalg import gauss_vector

Matrix = tuple[tuple[GaussRational, ...], ...]

__all__ = [
    "Matrix",
    "matrix",
    "zeros",
    "identity",
    "unit",
    "matmul",
    "madd",
    "msub",
    "mscale",
    "adjoint",
    "commutator",
    "trace",
    "matrix_vector",
    "vector_to_matrix",
    "block_diag",
    "format_matrix",
]


def matrix(rows: Sequence[Sequence[object]]) -> Matrix:
    out = tuple(tuple(as_gauss(x) for x in r) for r in rows)
    if any(len(r) != len(out) for r in out):
        raise ValueError("matrix is not square")
    return out


def zeros(n: int) -> Matrix:
    return tuple((ZERO,) * n for _ in range(n))


def identity(n: int) -> Matrix:
    return tuple(tuple(ONE if r == c else ZERO for c in range(n)) for r in range(n))


def unit(n: int, r: int, c: int, value=ONE) -> Matrix:
    v = as_gauss(value)
    return tuple(tuple(v if (a, b) == (r, c) else ZERO for b in range(n)) for a in range(n))


def matmul(A: Matrix, B: Matrix) -> Matrix:
    n = len(A)
    cols = list(zip(*B))
    out = []
    for r in range(n):
        row = A[r]
        nz = [(k, x) for k, x in enumerate(row) if x]
        out.append(tuple(sum((x * cols[c][k] for k, x in nz if cols[c][k]), ZERO) for c in range(n)))
    return tuple(out)


def madd(A: Matrix, B: Matrix) -> Matrix:
    return tuple(tuple(a + b for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def msub(A: Matrix, B: Matrix) -> Matrix:
    return tuple(tuple(a - b for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def mscale(A: Matrix, c) -> Matrix:
    c = as_gauss(c)
    return tuple(tuple(a * c for a in r) for r in A)


def adjoint(A: Matrix) -> Matrix:
    """Conjugate transpose."""
    return tuple(tuple(x.conjugate() for x in col) for col in zip(*A))


def commutator(A: Matrix, B: Matrix) -> Matrix:
    return msub(matmul(A, B), matmul(B, A))


def trace(A: Matrix) -> GaussRational:
    return sum((A[i][i] for i in range(len(A))), ZERO)


def matrix_vector(A: Matrix) -> dict:
    """Real coordinates keyed by (row, col, 0 | 1)."""
    return gauss_vector({(r, c): x for r, row in enumerate(A) for c, x in enumerate(row) if x})


def vector_to_matrix(n: int, vec: dict) -> Matrix:
    rows = [[ZERO] * n for _ in range(n)]
    for (r, c, part), x in vec.items():
        rows[r][c] = rows[r][c] + (GaussRational(x) if part == 0 else GaussRational(0, x))
    return tuple(tuple(r) for r in rows)


def block_diag(*blocks: Matrix) -> Matrix:
    n = sum(len(b) for b in blocks)
    rows = [[ZERO] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for r, row in enumerate(b):
            for c, x in enumerate(row):
                rows[off + r][off + c] = x
        off += len(b)
    return tuple(tuple(r) for r in rows)


def format_matrix(A: Matrix) -> str:
    cells = [[str(x) for x in r] for r in A]
    width = max((len(s) for r in cells for s in r), default=1)
    return "\n".join("[" + "  ".join(s.rjust(width) for s in r) + "]" for r in cells)
