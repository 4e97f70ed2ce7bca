"""Truncated v-adic series with Laurent-polynomial coefficients in the torus variables.

A ``QSeries`` stores ``sum_d v^d f_d(x)`` for ``d <= order``; every coefficient
with exponent at most ``order`` is exact. Products follow the usual precision
rule ``min(order_a + val_b, order_b + val_a)``.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from ..errors import NotSummable, VariableMismatch
from .laurent import LaurentPoly, _dot
from .scalar import Scalar

Exp = tuple[int, ...]


def _add_into(dst: dict, e, c):
    s = dst.get(e)
    if s is None:
        dst[e] = c
    else:
        s += c
        if s:
            dst[e] = s
        else:
            del dst[e]


class QSeries:
    __slots__ = ("nvars", "order", "data", "truncated")

    def __init__(self, nvars: int, order: int, data: dict | None = None, truncated: bool = False):
        self.nvars = nvars
        self.order = order
        self.data: dict[int, dict[Exp, Fraction]] = {}
        for d, poly in (data or {}).items():
            if d > order:
                truncated = True
                continue
            clean = {tuple(e): Fraction(c) for e, c in poly.items() if c}
            if clean:
                self.data[d] = clean
        self.truncated = truncated

    # -- constructors -------------------------------------------------------
    @classmethod
    def one(cls, nvars: int, order: int) -> "QSeries":
        return cls(nvars, order, {0: {(0,) * nvars: 1}} if order >= 0 else {})

    @classmethod
    def from_scalar(cls, s, order: int, nvars: int = 0) -> "QSeries":
        s = Scalar.coerce(s)
        zero = (0,) * nvars
        return cls(nvars, order, {d: {zero: c} for d, c in s.series(order).items()})

    @classmethod
    def from_laurent(cls, f: LaurentPoly, order: int) -> "QSeries":
        data: dict[int, dict] = {}
        for e, c in f.terms.items():
            for d, a in c.series(order).items():
                data.setdefault(d, {})[e] = a
        return cls(f.nvars, order, data)

    def copy(self) -> "QSeries":
        return QSeries._raw(self.nvars, self.order, {d: dict(p) for d, p in self.data.items()}, self.truncated)

    @classmethod
    def _raw(cls, nvars, order, data, truncated=False):
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj.order = order
        obj.data = data
        obj.truncated = truncated
        return obj

    # -- queries --------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.data

    def valuation(self) -> int:
        """Smallest exponent present; ``order + 1`` for a series known to be zero."""
        return min(self.data) if self.data else self.order + 1

    def coeff(self, d: int, e: Exp | None = None) -> Fraction:
        e = (0,) * self.nvars if e is None else tuple(e)
        return self.data.get(d, {}).get(e, Fraction(0))

    def leading(self):
        if not self.data:
            return None
        d = min(self.data)
        return d, self.data[d]

    def n_terms(self) -> int:
        return sum(len(p) for p in self.data.values())

    def _check(self, other):
        if self.nvars != other.nvars:
            raise VariableMismatch(f"{self.nvars} vs {other.nvars} variables")

    # -- arithmetic -----------------------------------------------------------
    def truncate(self, order: int) -> "QSeries":
        order = min(order, self.order)
        data = {d: dict(p) for d, p in self.data.items() if d <= order}
        return QSeries._raw(self.nvars, order, data, self.truncated or len(data) < len(self.data))

    def __add__(self, other: "QSeries") -> "QSeries":
        self._check(other)
        order = min(self.order, other.order)
        out = {d: dict(p) for d, p in self.data.items() if d <= order}
        for d, p in other.data.items():
            if d > order:
                continue
            tgt = out.setdefault(d, {})
            for e, c in p.items():
                _add_into(tgt, e, c)
            if not tgt:
                del out[d]
        return QSeries._raw(self.nvars, order, out, self.truncated or other.truncated)

    def __neg__(self):
        return QSeries._raw(
            self.nvars, self.order, {d: {e: -c for e, c in p.items()} for d, p in self.data.items()}, self.truncated
        )

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "QSeries":
        c = Fraction(c)
        if not c:
            return QSeries._raw(self.nvars, self.order, {}, self.truncated)
        return QSeries._raw(
            self.nvars, self.order, {d: {e: x * c for e, x in p.items()} for d, p in self.data.items()}, self.truncated
        )

    def mul_vmono(self, c, k: int) -> "QSeries":
        """Multiply by the constant ``c * v**k``."""
        c = Fraction(c)
        return QSeries._raw(
            self.nvars,
            self.order + k,
            {d + k: {e: x * c for e, x in p.items()} for d, p in self.data.items()},
            self.truncated,
        )

    def __mul__(self, other: "QSeries") -> "QSeries":
        if not isinstance(other, QSeries):
            return self.scale(other)
        self._check(other)
        order = min(self.order + other.valuation(), other.order + self.valuation())
        out: dict[int, dict] = {}
        trunc = self.truncated or other.truncated
        for d1, p1 in self.data.items():
            for d2, p2 in other.data.items():
                d = d1 + d2
                if d > order:
                    trunc = True
                    continue
                tgt = out.setdefault(d, {})
                for e1, c1 in p1.items():
                    for e2, c2 in p2.items():
                        _add_into(tgt, tuple(a + b for a, b in zip(e1, e2)), c1 * c2)
        return QSeries._raw(self.nvars, order, {d: p for d, p in out.items() if p}, trunc)

    __rmul__ = scale

    def mul_binomial(self, c, r: int, beta: Exp) -> "QSeries":
        """Multiply by ``1 - c v^r x^beta`` (``r`` may be zero)."""
        c = Fraction(c)
        beta = tuple(beta)
        order = self.order + min(0, r)
        out = {d: dict(p) for d, p in self.data.items() if d <= order}
        trunc = self.truncated
        for d, p in self.data.items():
            d2 = d + r
            if d2 > order:
                trunc = True
                continue
            tgt = out.setdefault(d2, {})
            for e, x in p.items():
                _add_into(tgt, tuple(a + b for a, b in zip(e, beta)), -c * x)
            if not tgt:
                del out[d2]
        return QSeries._raw(self.nvars, order, out, trunc)

    def div_binomial(self, c, r: int, beta: Exp) -> "QSeries":
        """Divide by ``1 - c v^r x^beta``; requires ``r > 0`` (geometric expansion)."""
        if r <= 0:
            raise NotSummable(f"1/(1 - {c} v^{r} x^{tuple(beta)}) is not q-adically summable")
        c = Fraction(c)
        beta = tuple(beta)
        if not self.data:
            return self.copy()
        out: dict[int, dict] = {}
        lo = min(self.data)
        for d in range(lo, self.order + 1):
            tgt = dict(self.data.get(d, {}))
            prev = out.get(d - r)
            if prev:
                for e, x in prev.items():
                    _add_into(tgt, tuple(a + b for a, b in zip(e, beta)), c * x)
            if tgt:
                out[d] = tgt
        return QSeries._raw(self.nvars, self.order, out, True)

    def inverse(self) -> "QSeries":
        """Multiplicative inverse of a series without torus variables."""
        if self.nvars:
            raise ValueError("inverse only for series without torus variables")
        if not self.data:
            raise ZeroDivisionError("inverse of a series known to be zero")
        k = min(self.data)
        a = {d - k: p[()] for d, p in self.data.items()}
        prec = self.order - k  # a known through exponent prec
        inv0 = 1 / a[0]
        b: dict[int, Fraction] = {}
        for n in range(prec + 1):
            acc = Fraction(1) if n == 0 else Fraction(0)
            for j, aj in a.items():
                if 0 < j <= n and (n - j) in b:
                    acc -= aj * b[n - j]
            if acc:
                b[n] = acc * inv0
        # 1/s = v^{-k} * (1/a), exact through exponent prec - k
        return QSeries._raw(0, prec - k, {n - k: {(): c} for n, c in b.items()}, True)

    def __truediv__(self, other: "QSeries") -> "QSeries":
        return self * other.inverse()

    # -- torus operations -------------------------------------------------------
    def star(self) -> "QSeries":
        return QSeries._raw(
            self.nvars,
            self.order,
            {d: {tuple(-a for a in e): c for e, c in p.items()} for d, p in self.data.items()},
            self.truncated,
        )

    def q_shift(self, mu: Sequence, base_exp: int = 1) -> "QSeries":
        """``T_mu``: ``v^d x^lam -> v^{d + base_exp (lam, mu)} x^lam``.

        Shifts must be nonnegative on the support, otherwise discarded high-order
        terms could fall back into range.
        """
        out: dict[int, dict] = {}
        trunc = self.truncated
        for d, p in self.data.items():
            for e, c in p.items():
                k = _dot(e, mu) * base_exp
                if k.denominator != 1 or k < 0:
                    raise ValueError(f"shift {k} of x^{e} is not a nonnegative integer")
                d2 = d + int(k)
                if d2 > self.order:
                    trunc = True
                    continue
                out.setdefault(d2, {})[e] = c
        return QSeries._raw(self.nvars, self.order, out, trunc)

    def constant_term(self) -> "QSeries":
        zero = (0,) * self.nvars
        data = {d: {(): p[zero]} for d, p in self.data.items() if zero in p}
        return QSeries._raw(0, self.order, data, self.truncated)

    def ct_product(self, other: "QSeries") -> "QSeries":
        """Constant term (in x) of ``self * other`` without forming the product."""
        self._check(other)
        order = min(self.order + other.valuation(), other.order + self.valuation())
        out: dict[int, Fraction] = {}
        for d1, p1 in self.data.items():
            for d2, p2 in other.data.items():
                d = d1 + d2
                if d > order:
                    continue
                acc = Fraction(0)
                if len(p1) <= len(p2):
                    for e, c in p1.items():
                        x = p2.get(tuple(-a for a in e))
                        if x:
                            acc += c * x
                else:
                    for e, c in p2.items():
                        x = p1.get(tuple(-a for a in e))
                        if x:
                            acc += c * x
                if acc:
                    out[d] = out.get(d, Fraction(0)) + acc
        return QSeries._raw(0, order, {d: {(): c} for d, c in out.items() if c}, True)

    # -- comparison / export ---------------------------------------------------
    def agrees_with(self, other: "QSeries", order: int | None = None) -> bool:
        """Equality of all coefficients with exponent <= ``order`` (default: common precision)."""
        self._check(other)
        top = min(self.order, other.order) if order is None else order
        if top > min(self.order, other.order):
            raise ValueError(f"cannot compare through v^{top}: precision is {min(self.order, other.order)}")
        diff = self.truncate(top) - other.truncate(top)
        return diff.is_zero()

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.nvars == other.nvars and self.order == other.order and self.data == other.data

    def to_laurent(self, variables) -> LaurentPoly:
        variables = tuple(variables)
        if len(variables) != self.nvars:
            raise VariableMismatch("variable count")
        terms: dict[Exp, Scalar] = {}
        for d, p in self.data.items():
            for e, c in p.items():
                t = Scalar.vpow(d, c)
                terms[e] = terms[e] + t if e in terms else t
        return LaurentPoly(variables, terms)

    def to_scalar(self) -> Scalar:
        if self.nvars:
            raise ValueError("series still depends on torus variables")
        acc = Scalar.const(0)
        for d, p in sorted(self.data.items()):
            acc = acc + Scalar.vpow(d, p[()])
        return acc

    def to_text(self) -> str:
        if self.nvars:
            return f"{self.to_laurent([f'x{i + 1}' for i in range(self.nvars)])} + O(v^{self.order + 1})"
        return f"{self.to_scalar()} + O(v^{self.order + 1})"

    def __repr__(self):
        return f"QSeries({self.to_text()})"


def _monomial_prefactor(prefactor) -> tuple[Fraction, int]:
    s = Scalar.coerce(prefactor)
    m = s.as_monomial()
    if m is None:
        raise NotSummable(f"prefactor {s} is not of the form c*v^r")
    return m


def pochhammer_truncated(
    prefactor,
    beta: Exp,
    base_exp: int,
    order: int,
    reciprocal: bool = False,
) -> QSeries:
    """Truncation of ``(c v^r x^beta; v^base_exp)_inf`` or of its reciprocal.

    Factors ``1 - c v^{r + i*base_exp} x^beta`` whose v-order exceeds ``order``
    are dropped (and the result flagged as truncated). The reciprocal needs
    ``r > 0``; the direct product admits ``r = 0`` for its first factor.
    """
    c, r = _monomial_prefactor(prefactor)
    if base_exp <= 0:
        raise NotSummable("base must have positive v-valuation")
    if r < 0 or (reciprocal and r == 0):
        raise NotSummable(f"prefactor v-valuation {r} is not summable")
    beta = tuple(beta)
    out = QSeries.one(len(beta), order)
    k = r
    while k <= order:
        out = out.div_binomial(c, k, beta) if reciprocal else out.mul_binomial(c, k, beta)
        k += base_exp
    out.truncated = True
    return out
