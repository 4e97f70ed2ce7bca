"""Sparse exact matrices on tensor powers of the vector representation.

Tensor-square basis: (i, j) -> i*N + j with 0-based i, j (row-major).
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Callable, Iterable

from .. import linalg
from ..algebra import ONE, ZERO, Scalar
from ..errors import SingularMatrix, ValidationError


class QMatrix:
    """Square matrix over Scalar stored as ``{(row, col): value}`` without zeros."""

    __slots__ = ("dim", "entries")

    def __init__(self, dim: int, entries: dict | None = None):
        self.dim = int(dim)
        clean = {}
        for (r, c), x in (entries or {}).items():
            if not (0 <= r < self.dim and 0 <= c < self.dim):
                raise ValidationError(f"index {(r, c)} outside a {self.dim}x{self.dim} matrix")
            x = Scalar.coerce(x)
            if x:
                clean[(r, c)] = x
        self.entries = clean

    @classmethod
    def _raw(cls, dim, entries):
        obj = cls.__new__(cls)
        obj.dim = dim
        obj.entries = entries
        return obj

    @classmethod
    def identity(cls, dim: int) -> "QMatrix":
        return cls._raw(dim, {(i, i): ONE for i in range(dim)})

    @classmethod
    def zeros(cls, dim: int) -> "QMatrix":
        return cls._raw(dim, {})

    @classmethod
    def from_rows(cls, rows) -> "QMatrix":
        return cls(len(rows), {(i, j): x for i, r in enumerate(rows) for j, x in enumerate(r)})

    @classmethod
    def unit(cls, dim: int, r: int, c: int, value=1) -> "QMatrix":
        return cls(dim, {(r, c): value})

    @classmethod
    def flip(cls, N: int) -> "QMatrix":
        """P: u (x) v -> v (x) u on V (x) V."""
        return cls._raw(N * N, {(j * N + i, i * N + j): ONE for i in range(N) for j in range(N)})

    def __getitem__(self, rc) -> Scalar:
        return self.entries.get(tuple(rc), ZERO)

    def nnz(self) -> int:
        return len(self.entries)

    def rows(self) -> list[list[Scalar]]:
        out = [[ZERO] * self.dim for _ in range(self.dim)]
        for (r, c), x in self.entries.items():
            out[r][c] = x
        return out

    def _by_row(self):
        out = defaultdict(dict)
        for (r, c), x in self.entries.items():
            out[r][c] = x
        return out

    # -- algebra ------------------------------------------------------------
    def _same(self, other: "QMatrix"):
        if self.dim != other.dim:
            raise ValidationError(f"dimension mismatch {self.dim} vs {other.dim}")

    def __add__(self, other: "QMatrix") -> "QMatrix":
        self._same(other)
        out = dict(self.entries)
        for k, x in other.entries.items():
            s = out.get(k)
            s = x if s is None else s + x
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return QMatrix._raw(self.dim, out)

    def __neg__(self) -> "QMatrix":
        return QMatrix._raw(self.dim, {k: -x for k, x in self.entries.items()})

    def __sub__(self, other: "QMatrix") -> "QMatrix":
        return self + (-other)

    def scale(self, s) -> "QMatrix":
        s = Scalar.coerce(s)
        if not s:
            return QMatrix.zeros(self.dim)
        return QMatrix._raw(self.dim, {k: x * s for k, x in self.entries.items()})

    def __mul__(self, other):
        if not isinstance(other, QMatrix):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        return self.matmul(other)

    def __rmul__(self, other):
        return self.scale(other)

    def matmul(self, other: "QMatrix") -> "QMatrix":
        self._same(other)
        right = other._by_row()
        acc: dict = {}
        for (r, k), x in self.entries.items():
            row = right.get(k)
            if not row:
                continue
            for c, y in row.items():
                key = (r, c)
                p = x * y
                s = acc.get(key)
                acc[key] = p if s is None else s + p
        return QMatrix._raw(self.dim, {k: v for k, v in acc.items() if v})

    __matmul__ = matmul

    def apply(self, vec: dict) -> dict:
        """Matrix times a sparse vector ``{index: Scalar}``."""
        out: dict = {}
        for (r, c), x in self.entries.items():
            y = vec.get(c)
            if y:
                s = out.get(r)
                out[r] = x * y if s is None else s + x * y
        return {k: v for k, v in out.items() if v}

    def kron(self, other: "QMatrix") -> "QMatrix":
        m = other.dim
        out = {}
        for (r1, c1), x in self.entries.items():
            for (r2, c2), y in other.entries.items():
                out[(r1 * m + r2, c1 * m + c2)] = x * y
        return QMatrix._raw(self.dim * m, out)

    def transpose(self) -> "QMatrix":
        return QMatrix._raw(self.dim, {(c, r): x for (r, c), x in self.entries.items()})

    def partial_transpose_1(self, N: int) -> "QMatrix":
        """``(R^{t1})_{(i j),(k l)} = R_{(k j),(i l)}`` on V (x) V."""
        if N * N != self.dim:
            raise ValidationError(f"dimension {self.dim} is not N^2 for N={N}")
        out = {}
        for (r, c), x in self.entries.items():
            k, j = divmod(r, N)
            i, l = divmod(c, N)
            out[(i * N + j, k * N + l)] = x
        return QMatrix._raw(self.dim, out)

    def map(self, fn: Callable[[Scalar], Scalar]) -> "QMatrix":
        return QMatrix(self.dim, {k: fn(x) for k, x in self.entries.items()})

    def block(self, a: int, b: int, N: int) -> "QMatrix":
        """The N x N block ``X_{ij} = M_{(a,i),(b,j)}`` in the first tensor leg."""
        out = {}
        for (r, c), x in self.entries.items():
            ra, i = divmod(r, N)
            cb, j = divmod(c, N)
            if ra == a and cb == b:
                out[(i, j)] = x
        return QMatrix._raw(N, out)

    def blocks(self, N: int) -> list[list["QMatrix"]]:
        out = [[{} for _ in range(N)] for _ in range(N)]
        for (r, c), x in self.entries.items():
            a, i = divmod(r, N)
            b, j = divmod(c, N)
            out[a][b][(i, j)] = x
        return [[QMatrix._raw(N, out[a][b]) for b in range(N)] for a in range(N)]

    # -- exact linear algebra -------------------------------------------------
    def _components(self):
        """Connected components of the row/column incidence graph."""
        parent = list(range(2 * self.dim))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for r, c in self.entries:
            a, b = find(r), find(self.dim + c)
            if a != b:
                parent[a] = b
        comps = defaultdict(lambda: ([], []))
        for r in range(self.dim):
            comps[find(r)][0].append(r)
        for c in range(self.dim):
            comps[find(self.dim + c)][1].append(c)
        return list(comps.values())

    def det(self) -> Scalar:
        sign_perm = []
        d = ONE
        for rows, cols in self._components():
            if len(rows) != len(cols):
                return ZERO
            sub = [[self[(r, c)] for c in cols] for r in rows]
            d = d * linalg.det(sub)
            sign_perm.extend(zip(rows, cols))
        # permutation taking block-ordered rows/cols to natural order
        rows = [r for r, _ in sign_perm]
        cols = [c for _, c in sign_perm]
        return d if _parity(rows) == _parity(cols) else -d

    def inverse(self) -> "QMatrix":
        out = {}
        for rows, cols in self._components():
            if len(rows) != len(cols):
                raise SingularMatrix("matrix is singular (unbalanced block)")
            sub = [[self[(r, c)] for c in cols] for r in rows]
            inv = linalg.inverse(sub)
            for a, c in enumerate(cols):
                for b, r in enumerate(rows):
                    if inv[a][b]:
                        out[(c, r)] = inv[a][b]
        return QMatrix._raw(self.dim, out)

    # -- comparisons -----------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, QMatrix):
            return NotImplemented
        return self.dim == other.dim and self.entries == other.entries

    def __hash__(self):
        return hash((self.dim, frozenset(self.entries.items())))

    def residual_terms(self, other: "QMatrix") -> int:
        """Number of entries in which the two matrices differ."""
        return (self - other).nnz()

    def scalar_value(self) -> Scalar | None:
        """``s`` if the matrix equals ``s * I``, else None."""
        diag = {self[(i, i)] for i in range(self.dim)}
        if len(diag) != 1 or any(r != c for r, c in self.entries):
            return None
        return next(iter(diag))

    def is_zero(self) -> bool:
        return not self.entries

    def free_params(self) -> tuple[str, ...]:
        names = set()
        for x in self.entries.values():
            names.update(x.free_params())
        return tuple(sorted(names))

    # -- output ------------------------------------------------------------------
    def to_json(self, D: int | None = None) -> dict:
        rows = self.rows()
        return {"dim": self.dim, "entries": [[x.to_text(D) for x in r] for r in rows]}

    def to_text(self, D: int | None = None) -> str:
        rows = self.rows()
        cells = [[x.to_text(D) for x in r] for r in rows]
        w = max((len(c) for r in cells for c in r), default=1)
        return "\n".join("[ " + "  ".join(c.rjust(w) for c in r) + " ]" for r in cells)

    def __repr__(self):
        return f"QMatrix(dim={self.dim}, nnz={self.nnz()})"


def _parity(seq: Iterable[int]) -> int:
    seq = list(seq)
    seen = [False] * len(seq)
    idx = {v: i for i, v in enumerate(sorted(seq))}
    perm = [idx[v] for v in seq]
    p = 0
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, L = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            L += 1
        p ^= (L - 1) & 1
    return p


@dataclass(frozen=True)
class CheckReport:
    """Outcome of an exact matrix identity check."""

    identity: str
    holds: bool
    residual_terms: int

    def to_json(self) -> dict:
        return {"identity": self.identity, "holds": self.holds, "residual_terms": self.residual_terms}
