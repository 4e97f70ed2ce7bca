"""The constant-term scalar product <f|g> = CT(f^* g Delta) / |W|, computed v-adically."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
import random

from ..algebra import LaurentPoly, QSeries, Scalar
from .operator import QDiffOp
from ..errors import QsymError
from ..rootdata import dominant_weights_up_to, orbit_sum
from .weightfn import WeightFunctionSpec, delta_truncated


@dataclass(frozen=True)
class TruncatedScalar:
    """``value`` is exact through v^order (i.e. modulo v^(order+1))."""

    value: Scalar
    order: int

    def is_zero(self) -> bool:
        return self.value.is_zero()

    def valuation(self):
        return None if self.value.is_zero() else self.value.valuation()

    def leading(self):
        """``(exponent, coefficient)`` of the lowest term, or None."""
        if self.value.is_zero():
            return None
        s = self.value.series(self.order)
        k = min(s)
        return k, s[k]

    def agrees(self, other: "TruncatedScalar", order: int | None = None) -> bool:
        top = min(self.order, other.order) if order is None else order
        diff = (self.value - other.value).series(top)
        return not diff

    def to_text(self, D: int | None = None) -> str:
        return f"{self.value.to_text(D)} + O(v^{self.order + 1})"


@lru_cache(maxsize=64)
def _delta(spec: WeightFunctionSpec, order: int) -> QSeries:
    return delta_truncated(spec, order)


def _min_valuation(f: LaurentPoly) -> int:
    return min((c.valuation() for c in f.terms.values()), default=0)


def scalar_product_series(f: LaurentPoly, g: LaurentPoly, spec: WeightFunctionSpec, order: int) -> QSeries:
    """<f|g> as a series in v known through v^order."""
    variables = spec.variables
    f = LaurentPoly(variables, f.terms)
    g = LaurentPoly(variables, g.terms)
    fg = f.star() * g
    if fg.is_zero():
        return QSeries(0, order)
    k = _min_valuation(fg)
    delta = _delta(spec, order - min(0, k))
    s = QSeries.from_laurent(fg, order - min(0, _series_val(delta)))
    ct = s.ct_product(delta)
    if ct.order < order:
        raise ArithmeticError(f"precision loss: only exact through v^{ct.order}")
    return ct.truncate(order).scale(Fraction(1, len(spec.system.weyl_group)))


def scalar_product_truncated(f: LaurentPoly, g: LaurentPoly, spec: WeightFunctionSpec, order: int) -> TruncatedScalar:
    """<f|g> through v^order (that is, modulo v^(order+1))."""
    return TruncatedScalar(scalar_product_series(f, g, spec, order).to_scalar(), order)


def _series_val(s: QSeries) -> int:
    return s.valuation() if not s.is_zero() else 0


@dataclass(frozen=True)
class AdjointReport:
    holds: bool
    order: int
    failures: tuple = ()

    def to_json(self) -> dict:
        return {"identity": "<D f|g> = <f|D g>", "holds": self.holds, "order": self.order,
                "failures": [list(map(str, p)) for p in self.failures]}


def selfadjointness_check(op: QDiffOp, pairs, order: int) -> AdjointReport:
    """<D f|g> == <f|D g> through v^order for every ``(f, g)`` in ``pairs``."""
    bad = []
    for f, g in pairs:
        try:
            lhs = scalar_product_truncated(op.apply(f), g, op.spec, order)
            rhs = scalar_product_truncated(f, op.apply(g), op.spec, order)
        except QsymError:
            # a broken operator may not even clear its denominators
            bad.append((f, g))
            continue
        if not lhs.agrees(rhs, order):
            bad.append((f, g))
    return AdjointReport(not bad, order, tuple(bad))


def random_invariant_pairs(spec: WeightFunctionSpec, count: int = 10, seed: int = 0, degree: int = 3, terms: int = 3) -> list:
    """Seeded pairs of W-invariant polynomials: small integer combinations of orbit sums."""
    rng = random.Random(seed)
    rs = spec.system
    weights = dominant_weights_up_to(rs, degree)
    m = {w: orbit_sum(w, rs, spec.variables) for w in weights}

    def one():
        f = LaurentPoly.zero(spec.variables)
        while f.is_zero():
            for w in rng.sample(weights, min(terms, len(weights))):
                f = f + m[w] * rng.randint(-3, 3)
        return f

    return [(one(), one()) for _ in range(count)]
