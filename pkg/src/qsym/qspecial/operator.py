"""The q-difference operator D_sigma = sum over tau in W.sigma of Phi_tau (T_tau - 1).

Phi_sigma = T_sigma Delta+ / Delta+ telescopes to a finite product of binomials
``1 - c x^beta``; we keep it factored so that Weyl images and the common
denominator of the Weyl sum are cheap to form.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..algebra import ONE, LaurentPoly, Scalar
from ..errors import NonCancellation, NonInvariantInput, NonTelescoping, ValidationError
from ..rootdata import RootSystem, Weight, WeylElement
from .weightfn import WeightFunctionSpec, factors

Exp = tuple[int, ...]


@dataclass(frozen=True)
class Binomial:
    """``1 - c x^beta`` with ``beta`` lexicographically positive."""

    c: Scalar
    beta: Exp

    def poly(self, variables) -> LaurentPoly:
        return LaurentPoly(variables, {(0,) * len(self.beta): 1, self.beta: -self.c})


def _canon(c: Scalar, beta: Exp):
    """Write ``1 - c x^beta`` as ``s * x^m * B`` with B canonical; B is None when beta = 0."""
    zero = (0,) * len(beta)
    if beta == zero:
        return ONE - c, zero, None
    if beta > zero:
        return ONE, zero, Binomial(c, beta)
    return -c, beta, Binomial(c.inverse(), tuple(-b for b in beta))


class RationalFunction:
    """``coeff * x^mono * prod(num) / prod(den)`` with canonical binomial factors."""

    __slots__ = ("nvars", "coeff", "mono", "num", "den")

    def __init__(self, nvars: int, coeff=ONE, mono: Exp | None = None, num=None, den=None):
        self.nvars = nvars
        self.coeff = Scalar.coerce(coeff)
        self.mono = tuple(mono) if mono is not None else (0,) * nvars
        num = Counter(num or {})
        den = Counter(den or {})
        common = num & den
        self.num = num - common
        self.den = den - common

    @classmethod
    def from_binomials(cls, nvars: int, num: list, den: list) -> "RationalFunction":
        """Build from raw ``(c, beta)`` pairs, canonicalizing each binomial."""
        coeff = ONE
        mono = [0] * nvars
        cn, cd = Counter(), Counter()
        for pairs, target, sign in ((num, cn, 1), (den, cd, -1)):
            for c, beta in pairs:
                s, m, b = _canon(Scalar.coerce(c), tuple(beta))
                coeff = coeff * s if sign == 1 else coeff / s
                mono = [x + sign * y for x, y in zip(mono, m)]
                if b is not None:
                    target[b] += 1
        return cls(nvars, coeff, tuple(mono), cn, cd)

    def act(self, w: WeylElement) -> "RationalFunction":
        """Image under x^beta -> x^{w beta}."""
        num = [(b.c, w.act(b.beta)) for b in self.num.elements()]
        den = [(b.c, w.act(b.beta)) for b in self.den.elements()]
        out = RationalFunction.from_binomials(self.nvars, num, den)
        return RationalFunction(
            self.nvars,
            out.coeff * self.coeff,
            tuple(a + b for a, b in zip(out.mono, w.act(self.mono))),
            out.num,
            out.den,
        )

    def numerator(self, variables) -> LaurentPoly:
        p = LaurentPoly.monomial(variables, self.mono, self.coeff)
        for b in self.num.elements():
            p = p.mul_binomial(b.c, b.beta)
        return p

    def denominator(self, variables) -> LaurentPoly:
        p = LaurentPoly.one(variables)
        for b in self.den.elements():
            p = p.mul_binomial(b.c, b.beta)
        return p

    def to_text(self, variables, D: int | None = None) -> str:
        def fac(b):
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(variables, b.beta) if k
            )
            return f"(1 - ({b.c.to_text(D)})*{mono})"

        head = self.coeff.to_text(D)
        mono = "*".join(f"{v}^{k}" for v, k in zip(variables, self.mono) if k)
        top = " * ".join([f"({head})"] + ([mono] if mono else []) + [fac(b) for b in sorted(self.num.elements(), key=_bkey)])
        bottom = " * ".join(fac(b) for b in sorted(self.den.elements(), key=_bkey)) or "1"
        return f"{top} / ({bottom})"


def _bkey(b: Binomial):
    return (b.beta, b.c.to_text())


def _sigma_coords(sigma) -> tuple[Fraction, ...]:
    if isinstance(sigma, Weight):
        return sigma.coords
    return tuple(Fraction(x) for x in sigma)


def phi_sigma_rational(spec: WeightFunctionSpec, sigma=None) -> RationalFunction:
    """Telescoped Phi_sigma = T_sigma Delta+ / Delta+ (sigma defaults to epsilon_1)."""
    n = spec.nvars
    sig = _sigma_coords(sigma) if sigma is not None else tuple(Fraction(int(i == 0)) for i in range(n))
    if len(sig) != n:
        raise ValidationError("sigma has the wrong dimension")
    num, den = [], []
    for f in factors(spec):
        s = spec.base_exp * sum(Fraction(b) * x for b, x in zip(f.beta, sig))
        k = s / f.base
        if k.denominator != 1:
            raise NonTelescoping(
                f"shift of (c x^{f.beta}; v^{f.base}) by sigma is v^{s}, not a multiple of the base"
            )
        k = int(k)
        # (c v^{ek} x; v^e) / (c x; v^e)
        if k > 0:
            ratio_num, ratio_den = [], [(f.c * Scalar.vpow(f.base * i), f.beta) for i in range(k)]
        elif k < 0:
            ratio_num, ratio_den = [(f.c * Scalar.vpow(-f.base * i), f.beta) for i in range(1, -k + 1)], []
        else:
            continue
        if f.num:
            num += ratio_num
            den += ratio_den
        else:
            num += ratio_den
            den += ratio_num
    return RationalFunction.from_binomials(n, num, den)


def _orbit_reps(sigma: tuple, weyl) -> list[tuple[tuple, WeylElement]]:
    seen = {}
    for w in weyl:
        tau = w.act(sigma)
        if tau not in seen:
            seen[tau] = w
    return sorted(seen.items(), reverse=True)


def simple_reflections(rs: RootSystem) -> list:
    """Simple reflections as functions on exponent tuples."""
    out = []
    for a in rs.simple_roots:
        n2 = sum(x * x for x in a)

        def refl(e, a=a, n2=n2):
            k = Fraction(2 * sum(x * y for x, y in zip(e, a)), n2)
            return tuple(int(x - k * y) for x, y in zip(e, a))

        out.append(refl)
    return out


def is_invariant(f: LaurentPoly, rs: RootSystem) -> bool:
    return all(f.map_exponents(s) == f for s in simple_reflections(rs))


class QDiffOp:
    """D_sigma with its Weyl sum over a common denominator, built once and cached.

    ``terms`` lists ``(tau, Phi_tau)`` for tau in the orbit W.sigma.
    """

    def __init__(self, spec: WeightFunctionSpec, sigma=None, phi: RationalFunction | None = None):
        self.spec = spec
        rs = spec.system
        n = spec.nvars
        sig = _sigma_coords(sigma) if sigma is not None else tuple(Fraction(int(i == 0)) for i in range(n))
        if any(x.denominator != 1 for x in sig):
            raise ValidationError("sigma must be integral")
        self.sigma = tuple(int(x) for x in sig)
        self.phi = phi if phi is not None else phi_sigma_rational(spec, self.sigma)
        weyl = rs.weyl_group
        self.terms = [(tau, self.phi.act(w)) for tau, w in _orbit_reps(self.sigma, weyl)]
        self.stabilizer_order = len(weyl) // len(self.terms)
        variables = spec.variables
        self.variables = variables
        common: Counter = Counter()
        for _, ph in self.terms:
            common |= ph.den
        self.common_den = common
        self.numerators = []
        for tau, ph in self.terms:
            p = ph.numerator(variables)
            for b in (common - ph.den).elements():
                p = p.mul_binomial(b.c, b.beta)
            self.numerators.append((tau, p))
        self._order = sorted(common.elements(), key=_bkey)

    def shift(self, f: LaurentPoly, tau: Sequence[int]) -> LaurentPoly:
        return f.q_shift(tau, self.spec.base_exp)

    def apply(self, f: LaurentPoly, check: bool = True) -> LaurentPoly:
        rs = self.spec.system
        if f.variables != self.variables:
            f = LaurentPoly(self.variables, f.terms)
        if check and not is_invariant(f, rs):
            raise NonInvariantInput("D_sigma is applied to W-invariant polynomials only")
        acc = LaurentPoly.zero(self.variables)
        for tau, p in self.numerators:
            acc = acc + p * (self.shift(f, tau) - f)
        for b in self._order:
            acc = acc.div_binomial(b.c, b.beta)
        if check and not is_invariant(acc, rs):
            raise NonCancellation("D_sigma produced a non-invariant result")
        return acc


def apply_D_sigma(op: QDiffOp, f: LaurentPoly) -> LaurentPoly:
    return op.apply(f)


def phi_oracle_check(spec: WeightFunctionSpec, sigma=None, order: int = 10, phi: RationalFunction | None = None) -> bool:
    """Compare telescoped Phi_sigma with T_sigma Delta+ / Delta+ modulo v^order.

    Cross-multiplied as num * Delta+ == den * T_sigma Delta+ so that no truncated
    series has to be inverted.
    """
    from ..algebra import QSeries
    from .weightfn import delta_plus_truncated

    n = spec.nvars
    sig = _sigma_coords(sigma) if sigma is not None else tuple(Fraction(int(i == 0)) for i in range(n))
    phi = phi if phi is not None else phi_sigma_rational(spec, sig)
    variables = spec.variables
    num, den = phi.numerator(variables), phi.denominator(variables)
    slack = -min([0] + [c.valuation() for p in (num, den) for c in p.terms.values()])
    work = order + slack
    dp = delta_plus_truncated(spec, work)
    lhs = QSeries.from_laurent(num, work) * dp
    rhs = QSeries.from_laurent(den, work) * dp.q_shift(sig, spec.base_exp)
    top = order - 1
    if min(lhs.order, rhs.order) < top:
        raise ArithmeticError("not enough precision for the comparison")
    return lhs.agrees_with(rhs, top)
