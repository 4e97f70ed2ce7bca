"""Macdonald and Koornwinder weight functions as lists of q-Pochhammer factors."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Mapping, Sequence

from ..algebra import QSeries, Scalar, pochhammer_truncated
from ..errors import NotSummable, ValidationError
from ..rootdata import RootSystem, build_root_system

MACDONALD = "MACDONALD"
KOORNWINDER = "KOORNWINDER"
LENGTH_CLASSES = (2, 4, 1)  # order of multiplicities per squared root length


@dataclass(frozen=True)
class Factor:
    """``(c x^beta; v^base)_inf`` in the numerator (``num=True``) or denominator of Delta+."""

    num: bool
    c: Scalar
    beta: tuple[int, ...]
    base: int


@dataclass(frozen=True)
class WeightFunctionSpec:
    """Parameters of Delta+ on the restricted root system ``system``.

    The coefficient ring uses a formal root ``v`` with ``q = v**D``. The polynomial
    base is ``v**base_exp``; for MACDONALD, ``mult`` maps squared root length to m_alpha,
    and for KOORNWINDER ``params`` holds a, b, c, d, t as Scalars in v.
    """

    kind: str
    system: RootSystem
    base_exp: int
    D: int = 1
    mult: tuple = ()
    params: tuple = field(default=(), compare=True)

    @property
    def variables(self) -> tuple[str, ...]:
        return tuple(f"x{i + 1}" for i in range(self.system.dim))

    @property
    def nvars(self) -> int:
        return self.system.dim

    def multiplicity(self, alpha: Sequence[int]) -> Fraction:
        n2 = RootSystem.norm2(alpha)
        return dict(self.mult).get(n2, Fraction(0))

    def param(self, name: str) -> Scalar:
        return dict(self.params)[name]

    def describe(self) -> dict:
        out = {"kind": self.kind, "system": self.system.label(), "base": _q_text(self.base_exp, self.D)}
        if self.kind == MACDONALD:
            out["multiplicities"] = {str(k): str(m) for k, m in self.mult}
        else:
            out["parameters"] = {k: v.to_text(self.D) for k, v in self.params}
            out["tuple"] = koornwinder_tuple_text(self)
        return out


def _q_text(k: int, D: int) -> str:
    return Scalar.vpow(k).to_text(D)


def koornwinder_tuple_text(spec: WeightFunctionSpec) -> str:
    """``(a,b,c,d;q,t)`` with every entry written in q."""
    p = dict(spec.params)
    base = Scalar.vpow(spec.base_exp).to_text(spec.D)
    vals = [p[k].to_text(spec.D).replace(" ", "") for k in "abcd"]
    return f"({','.join(vals)};{base},{p['t'].to_text(spec.D).replace(' ', '')})"


def macdonald_spec(system: RootSystem | tuple, mult, base=1) -> WeightFunctionSpec:
    """Macdonald weight with ``t_alpha = q_alpha^(m_alpha/2)``, ``q_alpha = base^((alpha,alpha)/2)``.

    ``base`` is an exponent of q (possibly rational). ``mult`` is either a mapping
    from squared length to multiplicity or a sequence listed in length order 2, 4, 1
    restricted to the lengths present. ``D`` is chosen as the smallest denominator
    making every exponent integral.
    """
    if not isinstance(system, RootSystem):
        system = build_root_system(*system)
    classes = [c for c in LENGTH_CLASSES if c in system.length_classes()]
    if isinstance(mult, Mapping):
        m = {int(k): Fraction(v) for k, v in mult.items()}
    else:
        mult = [mult] if isinstance(mult, (int, Fraction, str)) else list(mult)
        if len(mult) == 1:
            mult = mult * len(classes)
        if len(mult) != len(classes):
            raise ValidationError(
                f"{system.label()} has length classes {classes}; got {len(mult)} multiplicities"
            )
        m = {c: Fraction(x) for c, x in zip(classes, mult)}
    if set(m) - set(classes):
        raise ValidationError(f"no roots of squared length {sorted(set(m) - set(classes))}")
    if any(x < 0 for x in m.values()):
        raise ValidationError("multiplicities must be nonnegative")
    base = Fraction(base)
    if base <= 0:
        raise ValidationError("base exponent must be positive")
    exps = []
    for c in classes:
        exps.append(base * c / 2)
        exps.append(base * c * m.get(c, 0) / 4)
    D = lcm(*(e.denominator for e in exps), base.denominator)
    mult_t = tuple((c, m.get(c, Fraction(0))) for c in classes)
    return WeightFunctionSpec(MACDONALD, system, int(base * D), D, mult_t)


def koornwinder_spec(rank: int, a, b, c, d, t, base_exp: int = 1, D: int = 1) -> WeightFunctionSpec:
    """Koornwinder weight on BC_rank; parameters are Scalars (or rationals) in v."""
    system = build_root_system("BC", rank)
    params = tuple((k, Scalar.coerce(x)) for k, x in zip("abcdt", (a, b, c, d, t)))
    for k, x in params:
        if not x:
            raise ValidationError(f"Koornwinder parameter {k} must be nonzero")
    if base_exp <= 0:
        raise ValidationError("base exponent must be positive")
    return WeightFunctionSpec(KOORNWINDER, system, int(base_exp), int(D), (), params)


def factors(spec: WeightFunctionSpec) -> list[Factor]:
    """Pochhammer factors of Delta+ in a fixed order."""
    out: list[Factor] = []
    one = Scalar.const(1)
    if spec.kind == MACDONALD:
        for alpha in spec.system.positive_roots:
            m = spec.multiplicity(alpha)
            if m == 0:
                continue
            n2 = RootSystem.norm2(alpha)
            e = Fraction(spec.base_exp * n2, 2)
            r = spec.base_exp * n2 * m / 4
            if e.denominator != 1 or r.denominator != 1:
                raise ValidationError("exponents not integral in v; rebuild the spec")
            out.append(Factor(True, one, alpha, int(e)))
            out.append(Factor(False, Scalar.vpow(int(r)), alpha, int(e)))
        return out
    if spec.kind != KOORNWINDER:
        raise ValidationError(f"unknown weight kind {spec.kind!r}")
    p = dict(spec.params)
    n = spec.system.dim
    q = spec.base_exp
    for k in range(n):
        e1 = tuple(1 if i == k else 0 for i in range(n))
        e2 = tuple(2 * x for x in e1)
        out.append(Factor(True, one, e2, q))
        for name in "abcd":
            out.append(Factor(False, p[name], e1, q))
    for i in range(n):
        for j in range(i + 1, n):
            minus = tuple(1 if k == i else -1 if k == j else 0 for k in range(n))
            plus = tuple(1 if k in (i, j) else 0 for k in range(n))
            for beta in (minus, plus):
                out.append(Factor(True, one, beta, q))
                out.append(Factor(False, p["t"], beta, q))
    return out


def delta_plus_truncated(spec: WeightFunctionSpec, order: int) -> QSeries:
    """Delta+ expanded through v^order (product of truncated Pochhammer symbols)."""
    out = QSeries.one(spec.nvars, order)
    for f in factors(spec):
        if f.num:
            if f.c.as_monomial() is None:
                raise NotSummable(f"parameter {f.c} is not of the form c*v^r")
        else:
            cm = f.c.as_monomial()
            if cm is None or cm[1] <= 0:
                raise NotSummable(
                    f"1/({f.c} x^{f.beta}; v^{f.base}) is not v-adically summable"
                )
        out = out * pochhammer_truncated(f.c, f.beta, f.base, order, reciprocal=not f.num)
    return out


def delta_truncated(spec: WeightFunctionSpec, order: int) -> QSeries:
    """Delta = Delta+ * (Delta+)^*."""
    dp = delta_plus_truncated(spec, order)
    return dp * dp.star()
