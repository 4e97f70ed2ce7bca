"""Classical root systems A, B, C, D and BC in the epsilon basis.

Weights are stored with doubled integer coordinates so that half-integral
vectors (rho for type B, spin weights of type D) stay integer data.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from math import factorial
from typing import Iterable, Sequence

from .algebra import LaurentPoly
from .errors import BoundExceeded, LatticeError, ValidationError

TYPES = ("A", "B", "C", "D", "BC")
WEYL_BOUND = 10**6


@dataclass(frozen=True, order=True)
class Weight:
    """A weight in the epsilon basis, stored doubled.

    ``doubled`` must be all even (integral weight) or all odd (half-integral).
    """

    doubled: tuple[int, ...]

    def __post_init__(self):
        d = tuple(int(x) for x in self.doubled)
        object.__setattr__(self, "doubled", d)
        if d and len({x % 2 for x in d}) > 1:
            raise ValidationError(f"mixed parity weight {self.coords}")

    @classmethod
    def of(cls, coords: Iterable) -> "Weight":
        out = []
        for c in coords:
            c2 = Fraction(c) * 2
            if c2.denominator != 1:
                raise ValidationError(f"coordinate {c} is not a half-integer")
            out.append(int(c2))
        return cls(tuple(out))

    @property
    def rank(self) -> int:
        return len(self.doubled)

    @property
    def half(self) -> bool:
        """Parity flag: True when every coordinate is a half-odd-integer."""
        return bool(self.doubled) and self.doubled[0] % 2 == 1

    @property
    def coords(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, 2) for x in self.doubled)

    def ints(self) -> tuple[int, ...]:
        if self.half:
            raise LatticeError(f"{self} is not integral")
        return tuple(x // 2 for x in self.doubled)

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(tuple(a + b for a, b in zip(self.doubled, other.doubled)))

    def __sub__(self, other: "Weight") -> "Weight":
        return Weight(tuple(a - b for a, b in zip(self.doubled, other.doubled)))

    def __neg__(self) -> "Weight":
        return Weight(tuple(-a for a in self.doubled))

    def dot(self, other) -> Fraction:
        other = other.coords if isinstance(other, Weight) else other
        return sum((a * Fraction(b) for a, b in zip(self.coords, other)), Fraction(0))

    def size(self) -> Fraction:
        return sum((abs(c) for c in self.coords), Fraction(0))

    def to_json(self) -> dict:
        return {"doubled": list(self.doubled), "half": self.half}

    def __str__(self):
        return "(" + ",".join(str(c) for c in self.coords) + ")"


@dataclass(frozen=True)
class WeylElement:
    """Signed permutation: ``(w.x)[perm[i]] = signs[i] * x[i]``."""

    perm: tuple[int, ...]
    signs: tuple[int, ...]

    def act(self, x: Sequence):
        out = [None] * len(x)
        for i, (p, s) in enumerate(zip(self.perm, self.signs)):
            out[p] = x[i] if s == 1 else -x[i]
        return tuple(out)

    def act_weight(self, w: Weight) -> Weight:
        return Weight(self.act(w.doubled))

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        # (self * other).x = self.(other.x)
        perm = tuple(self.perm[other.perm[i]] for i in range(len(self.perm)))
        signs = tuple(other.signs[i] * self.signs[other.perm[i]] for i in range(len(self.perm)))
        return WeylElement(perm, signs)

    def inverse(self) -> "WeylElement":
        n = len(self.perm)
        perm = [0] * n
        signs = [1] * n
        for i, (p, s) in enumerate(zip(self.perm, self.signs)):
            perm[p] = i
            signs[p] = s
        return WeylElement(tuple(perm), tuple(signs))

    @classmethod
    def identity(cls, n: int) -> "WeylElement":
        return cls(tuple(range(n)), (1,) * n)


@dataclass(frozen=True)
class RootSystem:
    """Positive roots in height-then-lex order (lex descending on coordinates)."""

    type: str
    rank: int
    dim: int
    positive_roots: tuple[tuple[int, ...], ...]
    simple_roots: tuple[tuple[int, ...], ...] = field(repr=False)

    @cached_property
    def roots(self) -> frozenset:
        return frozenset(self.positive_roots) | {tuple(-x for x in a) for a in self.positive_roots}

    @staticmethod
    def norm2(alpha: Sequence) -> int:
        return sum(x * x for x in alpha)

    def length_classes(self) -> tuple[int, ...]:
        return tuple(sorted({self.norm2(a) for a in self.positive_roots}, key=(2, 4, 1).index))

    def simple_coefficients(self, vec: Sequence) -> tuple[Fraction, ...] | None:
        """Coordinates of ``vec`` in the simple-root basis, or None if outside the span."""
        return _solve_in_span(self.simple_roots, [Fraction(x) for x in vec])

    def height(self, alpha: Sequence) -> Fraction:
        return sum(self.simple_coefficients(alpha))

    def is_dominant(self, w: Weight) -> bool:
        c = w.coords
        if self.type == "A":
            return all(c[i] >= c[i + 1] for i in range(len(c) - 1))
        if self.type == "D":
            return all(c[i] >= c[i + 1] for i in range(len(c) - 1)) and (
                len(c) < 2 or c[-2] >= abs(c[-1])
            )
        return all(c[i] >= c[i + 1] for i in range(len(c) - 1)) and c[-1] >= 0

    @cached_property
    def weyl_group(self) -> tuple[WeylElement, ...]:
        return tuple(weyl_enumerate(self))

    @property
    def weyl_order(self) -> int:
        if self.type == "A":
            return factorial(self.dim)
        if self.type == "D":
            return 2 ** (self.rank - 1) * factorial(self.rank)
        return 2**self.rank * factorial(self.rank)

    def to_json(self) -> dict:
        return {
            "type": self.type,
            "rank": self.rank,
            "positive_roots": [list(a) for a in self.positive_roots],
        }

    def label(self) -> str:
        return f"{self.type}{self.rank}"


def _solve_in_span(basis, vec):
    """Exact solve of ``sum c_i basis_i = vec``; None if inconsistent."""
    m = len(basis)
    n = len(vec)
    rows = [[Fraction(basis[j][i]) for j in range(m)] + [vec[i]] for i in range(n)]
    piv_cols = []
    r = 0
    for col in range(m):
        p = next((i for i in range(r, n) if rows[i][col] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][col]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(n):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        piv_cols.append(col)
        r += 1
    if any(rows[i][m] != 0 for i in range(r, n)):
        return None
    out = [Fraction(0)] * m
    for i, col in enumerate(piv_cols):
        out[col] = rows[i][m]
    return tuple(out)


def _eps(n, *pairs):
    v = [0] * n
    for i, s in pairs:
        v[i] += s
    return tuple(v)


@lru_cache(maxsize=None)
def build_root_system(type: str, rank: int) -> RootSystem:
    """Root system of the given type; for type A the ambient dimension is rank + 1."""
    type = str(type).upper()
    if type not in TYPES:
        raise ValidationError(f"unsupported root system type {type!r}")
    rank = int(rank)
    if rank < 1 or (type == "D" and rank < 2):
        raise ValidationError(f"unsupported rank {rank} for type {type}")
    n = rank + 1 if type == "A" else rank
    pos = []
    for i in range(n):
        for j in range(i + 1, n):
            pos.append(_eps(n, (i, 1), (j, -1)))
            if type != "A":
                pos.append(_eps(n, (i, 1), (j, 1)))
    if type in ("B", "BC"):
        pos += [_eps(n, (i, 1)) for i in range(n)]
    if type in ("C", "BC"):
        pos += [_eps(n, (i, 2)) for i in range(n)]
    simple = [_eps(n, (i, 1), (i + 1, -1)) for i in range(n - 1)]
    if type in ("B", "BC"):
        simple.append(_eps(n, (n - 1, 1)))
    elif type == "C":
        simple.append(_eps(n, (n - 1, 2)))
    elif type == "D":
        simple.append(_eps(n, (n - 2, 1), (n - 1, 1)))
    rs = RootSystem(type, rank, n, (), tuple(simple))
    pos.sort(key=lambda a: (rs.height(a), tuple(-x for x in a)))
    return RootSystem(type, rank, n, tuple(pos), tuple(simple))


def weyl_enumerate(rs: RootSystem, bound: int = WEYL_BOUND) -> list[WeylElement]:
    """All Weyl group elements as signed permutations, identity first."""
    if rs.weyl_order > bound:
        raise BoundExceeded(f"|W({rs.label()})| = {rs.weyl_order} exceeds {bound}")
    n = rs.dim
    out = []
    for perm in itertools.permutations(range(n)):
        if rs.type == "A":
            out.append(WeylElement(perm, (1,) * n))
            continue
        for signs in itertools.product((1, -1), repeat=n):
            if rs.type == "D" and signs.count(-1) % 2:
                continue
            out.append(WeylElement(perm, signs))
    out.sort(key=lambda w: (length(w, rs), w.perm, tuple(-s for s in w.signs)))
    return out


def length(w: WeylElement, rs: RootSystem) -> int:
    """Number of positive roots sent to negative roots."""
    pos = set(rs.positive_roots)
    return sum(1 for a in rs.positive_roots if w.act(a) not in pos)


def dominance_leq(mu: Weight, lam: Weight, rs: RootSystem, order: str = "cone") -> bool:
    """``mu <= lam``: ``lam - mu`` is a nonnegative combination of simple roots.

    ``order="cone"`` allows rational coefficients, ``order="lattice"`` requires integers.
    """
    if mu.rank != lam.rank or mu.rank != rs.dim:
        raise ValidationError("weights of different ambient dimension")
    c = rs.simple_coefficients((lam - mu).coords)
    if c is None or any(x < 0 for x in c):
        return False
    if order == "lattice":
        return all(x.denominator == 1 for x in c)
    if order != "cone":
        raise ValidationError(f"unknown dominance order {order!r}")
    return True


def dominant_weights_up_to(rs: RootSystem, bound, spin: bool = False) -> list[Weight]:
    """Dominant weights with sum of |coordinates| <= bound, in a linear extension of dominance.

    Types B, C, BC, D use integer vectors; ``spin=True`` adds the half-integral
    vectors for type D. Type A lists partitions with at most ``dim`` parts.
    """
    bound = Fraction(bound)
    if bound < 0:
        raise ValidationError("bound must be nonnegative")
    n = rs.dim
    cands: set[Weight] = set()
    top = int(bound)
    box = range(-top, top + 1) if rs.type == "D" else range(0, top + 1)
    for vec in itertools.product(box, repeat=n):
        if sum(abs(x) for x in vec) <= bound:
            w = Weight(tuple(2 * x for x in vec))
            if rs.is_dominant(w):
                cands.add(w)
    if spin and rs.type == "D":
        hbox = [Fraction(2 * k + 1, 2) for k in range(-top - 1, top + 1)]
        for vec in itertools.product(hbox, repeat=n):
            if sum(abs(x) for x in vec) <= bound:
                w = Weight.of(vec)
                if rs.is_dominant(w):
                    cands.add(w)
    return sorted(cands, key=lambda w: dominance_key(w, rs))


def dominance_key(w: Weight, rs: RootSystem):
    """Sort key compatible with dominance: pairing with 2*rho (positive on every
    positive root), ties broken lexicographically."""
    return (w.dot(half_sum_rho(rs).doubled), w.doubled)


@lru_cache(maxsize=None)
def half_sum_rho(rs: RootSystem) -> Weight:
    s = [sum(a[i] for a in rs.positive_roots) for i in range(rs.dim)]
    return Weight(tuple(s))


def orbit(mu: Weight, rs: RootSystem) -> list[Weight]:
    return sorted({w.act_weight(mu) for w in rs.weyl_group}, reverse=True)


def orbit_sum(mu: Weight, rs: RootSystem, variables: Sequence[str] | None = None) -> LaurentPoly:
    """``m_mu = sum of x^nu over the W-orbit of mu``; ``mu`` must be dominant and integral."""
    if not rs.is_dominant(mu):
        raise ValidationError(f"{mu} is not dominant for {rs.label()}")
    variables = tuple(variables or default_variables(rs))
    return LaurentPoly(variables, {nu.ints(): 1 for nu in orbit(mu, rs)})


def default_variables(rs: RootSystem) -> tuple[str, ...]:
    return tuple(f"x{i + 1}" for i in range(rs.dim))
