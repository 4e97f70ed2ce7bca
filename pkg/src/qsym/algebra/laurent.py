"""Multivariate Laurent polynomials with exact Scalar coefficients."""
from __future__ import annotations

import heapq
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from ..errors import NonCancellation, VariableMismatch
from .scalar import ONE, ZERO, Scalar

Exp = tuple[int, ...]


def _dot(a: Sequence, b: Sequence) -> Fraction:
    return sum((Fraction(x) * Fraction(y) for x, y in zip(a, b)), Fraction(0))


class LaurentPoly:
    """Sparse Laurent polynomial ``sum c_e x^e`` over a fixed ordered variable list."""

    __slots__ = ("variables", "terms")

    def __init__(self, variables: Iterable[str], terms: dict | None = None):
        self.variables = tuple(variables)
        n = len(self.variables)
        clean: dict[Exp, Scalar] = {}
        for e, c in (terms or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != n:
                raise VariableMismatch(f"exponent {e} has wrong length for {self.variables}")
            c = Scalar.coerce(c)
            if c:
                clean[e] = c
        self.terms = clean

    @classmethod
    def _raw(cls, variables, terms):
        obj = cls.__new__(cls)
        obj.variables = variables
        obj.terms = terms
        return obj

    @classmethod
    def zero(cls, variables) -> "LaurentPoly":
        return cls(variables)

    @classmethod
    def one(cls, variables) -> "LaurentPoly":
        variables = tuple(variables)
        return cls(variables, {(0,) * len(variables): ONE})

    @classmethod
    def monomial(cls, variables, exps, coeff=1) -> "LaurentPoly":
        return cls(variables, {tuple(exps): coeff})

    @classmethod
    def gen(cls, variables, i: int) -> "LaurentPoly":
        variables = tuple(variables)
        e = [0] * len(variables)
        e[i] = 1
        return cls(variables, {tuple(e): ONE})

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def _check(self, other: "LaurentPoly"):
        if self.variables != other.variables:
            raise VariableMismatch(f"{self.variables} vs {other.variables}")

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def coefficient(self, exps) -> Scalar:
        return self.terms.get(tuple(exps), ZERO)

    def support(self) -> list[Exp]:
        return sorted(self.terms)

    def __len__(self):
        return len(self.terms)

    # -- ring operations ----------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.one(self.variables).scale(other)
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s = s + c
                if s:
                    out[e] = s
                else:
                    del out[e]
        return LaurentPoly._raw(self.variables, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.one(self.variables).scale(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, s) -> "LaurentPoly":
        s = Scalar.coerce(s)
        if not s:
            return LaurentPoly._raw(self.variables, {})
        return LaurentPoly._raw(self.variables, {e: c * s for e, c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        self._check(other)
        out: dict[Exp, Scalar] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                p = c1 * c2
                s = out.get(e)
                out[e] = p if s is None else s + p
        return LaurentPoly._raw(self.variables, {e: c for e, c in out.items() if c})

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        if k < 0:
            if len(self.terms) == 1:
                (e, c), = self.terms.items()
                return LaurentPoly._raw(
                    self.variables, {tuple(-x * -k for x in e): c ** k}
                )
            raise ValueError("negative powers only for monomials")
        out = LaurentPoly.one(self.variables)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            if isinstance(other, (int, Fraction, Scalar)):
                other = LaurentPoly.one(self.variables).scale(other)
            else:
                return NotImplemented
        return self.variables == other.variables and self.terms == other.terms

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    # -- transformations ------------------------------------------------------
    def map_exponents(self, fn: Callable[[Exp], Exp]) -> "LaurentPoly":
        out: dict[Exp, Scalar] = {}
        for e, c in self.terms.items():
            e2 = tuple(fn(e))
            s = out.get(e2)
            out[e2] = c if s is None else s + c
        return LaurentPoly._raw(self.variables, {e: c for e, c in out.items() if c})

    def map_coeffs(self, fn: Callable[[Scalar], Scalar]) -> "LaurentPoly":
        return LaurentPoly(self.variables, {e: fn(c) for e, c in self.terms.items()})

    def star(self) -> "LaurentPoly":
        """The involution x_j -> 1/x_j, coefficients fixed."""
        return self.map_exponents(lambda e: tuple(-x for x in e))

    def q_shift(self, mu: Sequence, base_exp: int = 1) -> "LaurentPoly":
        """``T_mu x^lam = q^{(lam, mu)} x^lam`` with ``q = v**base_exp`` (orthonormal form)."""
        out = {}
        for e, c in self.terms.items():
            k = _dot(e, mu) * base_exp
            if k.denominator != 1:
                raise ValueError(f"q^{{({e},{tuple(mu)})}} is not an integral power of v")
            out[e] = c * Scalar.vpow(int(k)) if k else c
        return LaurentPoly._raw(self.variables, out)

    def mul_binomial(self, c, beta: Exp) -> "LaurentPoly":
        """Multiply by ``1 - c x^beta``."""
        c = Scalar.coerce(c)
        shifted = LaurentPoly._raw(
            self.variables,
            {tuple(a + b for a, b in zip(e, beta)): x * c for e, x in self.terms.items()},
        )
        return self - shifted

    def div_binomial(self, c, beta: Exp) -> "LaurentPoly":
        """Exact quotient by ``1 - c x^beta``; raises ``NonCancellation`` if not divisible.

        ``beta`` must be nonzero. Works upward from the lex-smallest term.
        """
        c = Scalar.coerce(c)
        beta = tuple(beta)
        if not any(beta):
            raise ValueError("binomial with zero exponent")
        if beta < (0,) * len(beta):
            # 1 - c x^b = -c x^b (1 - c^{-1} x^{-b})
            cinv = c.inverse()
            neg = tuple(-b for b in beta)
            q = self.div_binomial(cinv, neg)
            return q.scale(-cinv).map_exponents(lambda e: tuple(a + b for a, b in zip(e, neg)))
        if not self.terms:
            return LaurentPoly._raw(self.variables, {})
        top = max(self.terms)
        limit = tuple(a - b for a, b in zip(top, beta))
        rem = dict(self.terms)
        heap = list(rem)
        heapq.heapify(heap)
        quot: dict[Exp, Scalar] = {}
        while heap:
            e = heapq.heappop(heap)
            a = rem.pop(e, None)
            if a is None or not a:
                continue
            if e > limit:
                raise NonCancellation(
                    f"remainder {a} x^{e} survives division by (1 - ({c}) x^{beta})"
                )
            quot[e] = a
            e2 = tuple(x + y for x, y in zip(e, beta))
            s = rem.get(e2)
            val = a * c if s is None else s + a * c
            if val:
                if s is None:
                    heapq.heappush(heap, e2)
                rem[e2] = val
            else:
                rem.pop(e2, None)
        return LaurentPoly._raw(self.variables, quot)

    # -- text / json ---------------------------------------------------------
    def to_text(self, D: int | None = None) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.variables, e) if k
            )
            ctext = c.to_text(D)
            if not mono:
                parts.append(ctext if " " not in ctext else f"({ctext})")
            elif c.is_one():
                parts.append(mono)
            elif (-c).is_one():
                parts.append("-" + mono)
            elif " " not in ctext and "/(" not in ctext:
                parts.append(f"{ctext}*{mono}")
            else:
                parts.append(f"({ctext})*{mono}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"LaurentPoly({self.variables}, {self.to_text()!r})"

    def to_json(self) -> dict:
        return {
            "variables": list(self.variables),
            "terms": [
                {"exponents": list(e), "coeff": self.terms[e].to_text()}
                for e in sorted(self.terms, reverse=True)
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "LaurentPoly":
        from .parse import parse_scalar

        return cls(
            data["variables"],
            {tuple(t["exponents"]): parse_scalar(t["coeff"]) for t in data["terms"]},
        )


def q_shift(f: LaurentPoly, mu: Sequence, base_exp: int = 1, form=None) -> LaurentPoly:
    """Apply the q-shift ``T_mu``; ``form`` (a Gram matrix) defaults to the identity."""
    if form is None:
        return f.q_shift(mu, base_exp)
    n = len(mu)
    mu_dual = [sum(Fraction(form[i][j]) * Fraction(mu[j]) for j in range(n)) for i in range(n)]
    return f.q_shift(mu_dual, base_exp)
