"""Fraction-free (Bareiss) elimination over the Scalar field."""
from __future__ import annotations

from .algebra import ONE, ZERO, Scalar
from .errors import SingularMatrix


def _forward(M: list[list[Scalar]], n: int):
    """In-place Bareiss elimination on the first ``n`` columns; returns the row-swap sign."""
    sign = 1
    prev = ONE
    for k in range(n):
        p = next((i for i in range(k, n) if M[i][k]), None)
        if p is None:
            raise SingularMatrix(f"matrix is singular (no pivot in column {k})")
        if p != k:
            M[k], M[p] = M[p], M[k]
            sign = -sign
        pivot = M[k][k]
        rowk = M[k]
        for i in range(k + 1, n):
            rowi = M[i]
            f = rowi[k]
            if not f:
                if not (pivot == prev):
                    rowi[k + 1:] = [pivot * x / prev if x else x for x in rowi[k + 1:]]
                continue
            rowi[k + 1:] = [
                (pivot * x - f * y) / prev if (x or y) else ZERO
                for x, y in zip(rowi[k + 1:], rowk[k + 1:])
            ]
            rowi[k] = ZERO
        prev = pivot
    return sign


def det(rows: list[list[Scalar]]) -> Scalar:
    n = len(rows)
    if n == 0:
        return ONE
    M = [[Scalar.coerce(x) for x in r] for r in rows]
    try:
        sign = _forward(M, n)
    except SingularMatrix:
        return ZERO
    d = M[n - 1][n - 1]
    return d if sign == 1 else -d


def solve(rows: list[list[Scalar]], rhs: list[list[Scalar]]) -> list[list[Scalar]]:
    """Solve ``A X = B`` exactly; ``rhs`` is a list of rows of B."""
    n = len(rows)
    m = len(rhs[0]) if rhs else 0
    M = [[Scalar.coerce(x) for x in r] + [Scalar.coerce(x) for x in b] for r, b in zip(rows, rhs)]
    _forward(M, n)
    X = [[ZERO] * m for _ in range(n)]
    for i in range(n - 1, -1, -1):
        piv = M[i][i]
        for c in range(m):
            acc = M[i][n + c]
            for j in range(i + 1, n):
                if M[i][j] and X[j][c]:
                    acc = acc - M[i][j] * X[j][c]
            X[i][c] = acc / piv if acc else ZERO
    return X


def inverse(rows: list[list[Scalar]]) -> list[list[Scalar]]:
    n = len(rows)
    eye = [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    return solve(rows, eye)
