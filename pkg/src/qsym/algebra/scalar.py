"""Exact coefficient field: rational functions in a root ``v`` of ``q`` and free parameters.

Numerators and denominators are python-flint ``fmpq_mpoly`` objects; this module
owns the normal form (gcd-reduced, integer-primitive denominator with positive
leading coefficient under deglex) so that equality is structural.
"""
from __future__ import annotations

import operator
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from numbers import Rational

import flint

from ..errors import ScalarDivisionByZero, ValidationError

V = "v"


@lru_cache(maxsize=None)
def _ctx(names: tuple[str, ...]):
    return flint.fmpq_mpoly_ctx.get(names, "deglex")


def _canonical_names(names) -> tuple[str, ...]:
    rest = sorted(set(names) - {V})
    return (V, *rest)


def _to_fmpq(x) -> flint.fmpq:
    if isinstance(x, flint.fmpq):
        return x
    if isinstance(x, int):
        return flint.fmpq(x)
    x = Fraction(x)
    return flint.fmpq(x.numerator, x.denominator)


def _poly_key(poly, names):
    out = []
    for mono, c in poly.terms():
        m = tuple((names[i], int(e)) for i, e in enumerate(mono) if e)
        out.append((m, int(c.p), int(c.q)))
    out.sort()
    return tuple(out)


class Scalar:
    """An element of Q(v, p_1, ..., p_k), always kept in normal form.

    Instances are immutable; arithmetic with ``int``/``Fraction`` operands
    coerces them to constants.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None, _normalized: bool = False):
        if den is None:
            den = num.context().constant(1)
        if not _normalized:
            num, den = _normalize(num, den)
        self.num = num
        self.den = den
        self._hash = None

    # -- constructors -------------------------------------------------------
    @classmethod
    def const(cls, x) -> "Scalar":
        ctx = _ctx((V,))
        return cls(ctx.constant(_to_fmpq(x)), ctx.constant(1), _normalized=True)

    @classmethod
    def vpow(cls, k: int, coeff=1) -> "Scalar":
        """``coeff * v**k`` for any integer ``k``."""
        ctx = _ctx((V,))
        c = _to_fmpq(coeff)
        if c == 0:
            return cls.const(0)
        if k >= 0:
            return cls(ctx.from_dict({(k,): c}), ctx.constant(1), _normalized=True)
        return cls(ctx.constant(c), ctx.from_dict({(-k,): 1}), _normalized=True)

    @classmethod
    def param(cls, name: str) -> "Scalar":
        if not name.isidentifier() or name in (V, "q"):
            raise ValidationError(f"invalid parameter name {name!r}")
        ctx = _ctx(_canonical_names([name]))
        return cls(ctx.gen(ctx.variable_to_index(name)), ctx.constant(1), _normalized=True)

    @staticmethod
    def coerce(x) -> "Scalar":
        if isinstance(x, Scalar):
            return x
        if isinstance(x, (int, Rational, flint.fmpq)):
            return Scalar.const(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to Scalar")

    # -- structure ----------------------------------------------------------
    @property
    def names(self) -> tuple[str, ...]:
        return self.num.context().names()

    def free_params(self) -> tuple[str, ...]:
        used = set()
        names = self.names
        for poly in (self.num, self.den):
            for mono in poly.monoms():
                used.update(names[i] for i, e in enumerate(mono) if e)
        used.discard(V)
        return tuple(sorted(used))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.den.is_one() and self.num.is_one()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        c = self.num.coefficient(0) if self.num.is_zero() is False else flint.fmpq(0)
        return Fraction(int(c.p), int(c.q))

    def __bool__(self):
        return not self.num.is_zero()

    # -- arithmetic ---------------------------------------------------------
    def _pair(self, other):
        other = Scalar.coerce(other)
        c1, c2 = self.num.context(), other.num.context()
        if c1 is c2:
            return self.num, self.den, other.num, other.den, c1
        ctx = _ctx(_canonical_names(c1.names() + c2.names()))
        return (
            self.num.project_to_context(ctx),
            self.den.project_to_context(ctx),
            other.num.project_to_context(ctx),
            other.den.project_to_context(ctx),
            ctx,
        )

    def __add__(self, other):
        try:
            a, b, c, d, _ = self._pair(other)
        except TypeError:
            return NotImplemented
        if b == d:
            return Scalar(a + c, b)
        return Scalar(a * d + b * c, b * d)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(-self.num, self.den, _normalized=True)

    def __sub__(self, other):
        try:
            a, b, c, d, _ = self._pair(other)
        except TypeError:
            return NotImplemented
        if b == d:
            return Scalar(a - c, b)
        return Scalar(a * d - b * c, b * d)

    def __rsub__(self, other):
        return Scalar.coerce(other) - self

    def __mul__(self, other):
        try:
            a, b, c, d, _ = self._pair(other)
        except TypeError:
            return NotImplemented
        if b.is_one() and d.is_one():
            return Scalar(a * c, b, _normalized=True)
        return Scalar(a * c, b * d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            a, b, c, d, _ = self._pair(other)
        except TypeError:
            return NotImplemented
        if c.is_zero():
            raise ScalarDivisionByZero(f"division of {self} by zero")
        return Scalar(a * d, b * c)

    def __rtruediv__(self, other):
        return Scalar.coerce(other) / self

    def inverse(self) -> "Scalar":
        if self.num.is_zero():
            raise ScalarDivisionByZero("inverse of zero")
        return Scalar(self.den, self.num)

    def __pow__(self, k: int):
        try:
            k = operator.index(k)
        except TypeError:
            raise TypeError("only integer powers are supported") from None
        if k < 0:
            return self.inverse() ** (-k)
        return Scalar(self.num**k, self.den**k, _normalized=True)

    def __eq__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = Scalar.coerce(other)
            except TypeError:
                return NotImplemented
        if self.num.context() is other.num.context():
            return self.num == other.num and self.den == other.den
        return hash(self) == hash(other) and (self - other).is_zero()

    def __hash__(self):
        if self._hash is None:
            names = self.names
            self._hash = hash((_poly_key(self.num, names), _poly_key(self.den, names)))
        return self._hash

    # -- v-adic helpers -----------------------------------------------------
    def _require_univariate(self):
        if self.free_params():
            raise ValidationError(f"{self} depends on parameters {self.free_params()}")

    def _univariate_coeffs(self, poly) -> dict[int, Fraction]:
        names = poly.context().names()
        out = {}
        for mono, c in poly.terms():
            if any(e for i, e in enumerate(mono) if names[i] != V):
                raise ValidationError(f"{self} depends on parameters")
            k = int(mono[names.index(V)])
            out[k] = Fraction(int(c.p), int(c.q))
        return out

    def valuation(self) -> int:
        """v-adic valuation; only for parameter-free elements."""
        if self.is_zero():
            raise ValueError("valuation of zero")
        n = self._univariate_coeffs(self.num)
        d = self._univariate_coeffs(self.den)
        return min(n) - min(d)

    def as_monomial(self):
        """Return ``(c, k)`` when the element is ``c * v**k``, else ``None``."""
        if self.free_params():
            return None
        n = self._univariate_coeffs(self.num)
        d = self._univariate_coeffs(self.den)
        if len(n) != 1 or len(d) != 1:
            return None
        (kn, cn), (kd, cd) = next(iter(n.items())), next(iter(d.items()))
        return cn / cd, kn - kd

    def series(self, order: int) -> dict[int, Fraction]:
        """Laurent expansion in v, all terms of exponent <= ``order``."""
        n = self._univariate_coeffs(self.num)
        d = self._univariate_coeffs(self.den)
        if not n:
            return {}
        s = min(d)
        d0 = {k - s: c for k, c in d.items()}
        inv0 = 1 / d0[0]
        vn = min(n)
        out: dict[int, Fraction] = {}
        # quotient q = num / d0; q_k = (num_k - sum_{j>=1} d0_j q_{k-j}) / d0_0
        top = order + s
        for k in range(vn, top + 1):
            acc = n.get(k, Fraction(0))
            for j, dj in d0.items():
                if j and (k - j) in out:
                    acc -= dj * out[k - j]
            if acc:
                out[k] = acc * inv0
        return {k - s: c for k, c in out.items() if k - s <= order}

    def evaluate(self, values: dict) -> "Scalar":
        """Substitute parameters (and/or ``v``) by Scalars or rationals."""
        values = {k: Scalar.coerce(x) for k, x in values.items()}
        names = self.names

        def ev(poly):
            acc = Scalar.const(0)
            for mono, c in poly.terms():
                t = Scalar.const(Fraction(int(c.p), int(c.q)))
                for i, e in enumerate(mono):
                    e = int(e)
                    if not e:
                        continue
                    name = names[i]
                    if name in values:
                        t = t * values[name] ** e
                    elif name == V:
                        t = t * Scalar.vpow(e)
                    else:
                        t = t * Scalar.param(name) ** e
                acc = acc + t
            return acc

        return ev(self.num) / ev(self.den)

    def at_v(self, x) -> "Scalar":
        return self.evaluate({V: x})

    # -- text ---------------------------------------------------------------
    def to_text(self, D: int | None = None) -> str:
        """Canonical text. With ``D`` given, powers of v are shown as powers of q = v**D."""
        num = _poly_text(self.num, D)
        if self.den.is_one():
            return num
        return f"({num})/({_poly_text(self.den, D)})"

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"Scalar({self.to_text()!r})"


def _normalize(num, den):
    if den.is_zero():
        raise ScalarDivisionByZero("zero denominator")
    ctx = num.context()
    if num.is_zero():
        return num, ctx.constant(1)
    if not den.is_constant():
        g = num.gcd(den)
        if not g.is_constant():
            num = num / g
            den = den / g
    coeffs = den.coeffs()
    L = 1
    G = 0
    for c in coeffs:
        L = lcm(L, int(c.q))
    for c in coeffs:
        G = gcd(G, int(c.p) * (L // int(c.q)))
    s = flint.fmpq(L, G)
    if den.leading_coefficient() < 0:
        s = -s
    if s != 1:
        num = num * s
        den = den * s
    return num, den


def _fmt_exp(k: int, D: int | None) -> str:
    if D is None or D == 1:
        return str(k)
    r = Fraction(k, D)
    return str(r.numerator) if r.denominator == 1 else f"({r})"


def _poly_text(poly, D: int | None = None) -> str:
    names = poly.context().names()
    if poly.is_zero():
        return "0"
    parts = []
    for mono, c in poly.terms():
        factors = []
        for i, e in enumerate(mono):
            e = int(e)
            if not e:
                continue
            name = names[i]
            if name == V and D is not None:
                name = "q"
                r = Fraction(e, D)
                if r == 1:
                    factors.append(name)
                else:
                    factors.append(f"{name}^{_fmt_exp(e, D)}")
                continue
            factors.append(name if e == 1 else f"{name}^{e}")
        c = Fraction(int(c.p), int(c.q))
        sign = "-" if c < 0 else "+"
        c = abs(c)
        if not factors:
            body = str(c)
        elif c == 1:
            body = "*".join(factors)
        else:
            body = f"{c}*" + "*".join(factors)
        parts.append((sign, body))
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


ZERO = Scalar.const(0)
ONE = Scalar.const(1)


def vq(r, D: int) -> Scalar:
    """``q**r`` written in v, where q = v**D; ``r`` may be a Fraction."""
    k = Fraction(r) * D
    if k.denominator != 1:
        raise ValidationError(f"q^{r} is not a power of v when q = v^{D}")
    return Scalar.vpow(int(k))
