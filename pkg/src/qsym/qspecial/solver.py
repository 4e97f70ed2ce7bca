"""Monic eigenfunctions P_mu of D_sigma in the orbit-sum basis.

The default path reads off the triangular matrix of D_sigma and back-substitutes.
When two diagonal entries collide, P_mu is recovered instead by Gram-Schmidt
against the truncated constant-term scalar product.
"""
from __future__ import annotations

import re

from dataclasses import dataclass, field
from fractions import Fraction

from ..algebra import LaurentPoly, QSeries, Scalar
from ..errors import EigenvalueCollision, SingularMatrix, TriangularityViolation, ValidationError
from ..rootdata import Weight, dominance_key, dominance_leq, dominant_weights_up_to, orbit_sum
from .operator import QDiffOp
from .product import scalar_product_series
from .weightfn import WeightFunctionSpec

TRIANGULAR = "triangular"
GRAM_SCHMIDT = "gram-schmidt"


def _as_weight(mu, rs) -> Weight:
    w = mu if isinstance(mu, Weight) else Weight.of(mu)
    if w.rank != rs.dim:
        raise ValidationError(f"weight {w} has {w.rank} coordinates, {rs.label()} needs {rs.dim}")
    if not rs.is_dominant(w):
        raise ValidationError(f"{w} is not dominant for {rs.label()}")
    return w


class DMatrixCache:
    """Columns of D_sigma in the m-basis, computed on demand."""

    def __init__(self, op: QDiffOp):
        self.op = op
        self.rs = op.spec.system
        self.columns: dict[Weight, dict[Weight, Scalar]] = {}

    def column(self, mu: Weight) -> dict[Weight, Scalar]:
        col = self.columns.get(mu)
        if col is None:
            out = self.op.apply(orbit_sum(mu, self.rs, self.op.variables))
            col = {}
            for e, c in out.terms.items():
                nu = Weight.of(e)
                if self.rs.is_dominant(nu):
                    col[nu] = c
            self.columns[mu] = col
        return col


@dataclass
class TriangularMatrix:
    """Entry ``(nu, mu)`` is the coefficient of m_nu in D_sigma m_mu."""

    weights: list
    entries: dict = field(default_factory=dict)

    def diagonal(self) -> dict:
        return {mu: self.entries.get((mu, mu), Scalar.const(0)) for mu in self.weights}

    def to_json(self, D: int = 1) -> dict:
        return {
            "weights": [list(map(str, w.coords)) for w in self.weights],
            "entries": [
                {"nu": [str(x) for x in nu.coords], "mu": [str(x) for x in mu.coords], "value": c.to_text(D)}
                for (nu, mu), c in sorted(self.entries.items(), key=lambda kv: (kv[0][1].doubled, kv[0][0].doubled))
            ],
        }


def triangular_matrix_of_D(op: QDiffOp, bound, order: str = "lattice", cache: DMatrixCache | None = None) -> TriangularMatrix:
    """Matrix of D_sigma on orbit sums of dominant weights up to ``bound``.

    Raises TriangularityViolation if D_sigma m_mu involves some m_nu with nu not <= mu.
    """
    rs = op.spec.system
    cache = cache or DMatrixCache(op)
    weights = dominant_weights_up_to(rs, bound)
    entries = {}
    for mu in weights:
        for nu, c in cache.column(mu).items():
            if not dominance_leq(nu, mu, rs, order):
                raise TriangularityViolation(f"D m_{mu} contains m_{nu}, and {nu} is not <= {mu} ({order} order)")
            entries[(nu, mu)] = c
    return TriangularMatrix(weights, entries)


def lower_support(mu: Weight, rs, order: str = "lattice") -> list[Weight]:
    """Dominant nu <= mu, in increasing dominance_key order (mu last)."""
    bound = sum(abs(x) for x in mu.coords)
    if rs.type == "D":
        bound = 2 * bound  # a negative last coordinate inflates |nu|_1
    out = [nu for nu in dominant_weights_up_to(rs, bound) if dominance_leq(nu, mu, rs, order)]
    return sorted(out, key=lambda w: dominance_key(w, rs))


@dataclass
class OrthoPoly:
    """P_mu = m_mu + sum u_nu m_nu.

    ``precision`` is None for exact coefficients; for the Gram-Schmidt path it is
    the largest k such that every coefficient is known through v^k.
    """

    spec: WeightFunctionSpec
    mu: Weight
    expansion: dict
    eigenvalue: Scalar | None
    method: str = TRIANGULAR
    precision: int | None = None

    def to_laurent(self, variables=None) -> LaurentPoly:
        rs = self.spec.system
        variables = tuple(variables or self.spec.variables)
        acc = LaurentPoly.zero(variables)
        for nu, c in self.expansion.items():
            acc = acc + orbit_sum(nu, rs, variables) * c
        return acc

    def is_monic(self) -> bool:
        return self.expansion.get(self.mu) == Scalar.const(1)

    def support_ok(self, order: str = "lattice") -> bool:
        rs = self.spec.system
        return all(dominance_leq(nu, self.mu, rs, order) for nu in self.expansion)

    def to_json(self) -> dict:
        D = self.spec.D
        out = {
            "system": self.spec.system.label(),
            "parameters": self.spec.describe(),
            "mu": [_num(x) for x in self.mu.coords],
            "expansion": [
                {"nu": [_num(x) for x in nu.coords], "coeff": c.to_text(D)} for nu, c in self.expansion.items()
            ],
            "eigenvalue": self.eigenvalue.to_text(D) if self.eigenvalue is not None else None,
            "method": self.method,
        }
        if self.precision is not None:
            out["precision"] = self.precision
        return out

    def to_text(self) -> str:
        D = self.spec.D
        parts = [f"({c.to_text(D)})*m{_wtext(nu)}" for nu, c in self.expansion.items()]
        return " + ".join(parts)

    def to_latex(self) -> str:
        D = self.spec.D
        parts = []
        for nu, c in self.expansion.items():
            m = "m_{" + ",".join(str(x) for x in nu.coords) + "}"
            parts.append(m if c == Scalar.const(1) else rf"\left({_latex_scalar(c.to_text(D))}\right) {m}")
        head = "P_{" + ",".join(str(x) for x in self.mu.coords) + "}"
        tail = "" if self.precision is None else rf" + O(v^{{{self.precision + 1}}})"
        return f"{head} = " + " + ".join(parts) + tail


def _num(x: Fraction):
    return int(x) if x.denominator == 1 else str(x)


def _wtext(w: Weight) -> str:
    return "(" + ",".join(str(x) for x in w.coords) + ")"


def _latex_scalar(text: str) -> str:
    return re.sub(r"\^(-?[0-9/]+)", r"^{\1}", text.replace("*", " "))


def solve_P_mu(
    spec: WeightFunctionSpec,
    mu,
    sigma=None,
    *,
    op: QDiffOp | None = None,
    cache: DMatrixCache | None = None,
    fallback: bool = True,
    order: str = "lattice",
    gs_order: int = 20,
) -> OrthoPoly:
    """Monic eigenvector of the triangular matrix of D_sigma at mu.

    On an eigenvalue collision, raises EigenvalueCollision unless ``fallback``,
    in which case the Gram-Schmidt path is used through v^gs_order.
    """
    rs = spec.system
    mu = _as_weight(mu, rs)
    op = op or QDiffOp(spec, sigma)
    cache = cache or DMatrixCache(op)
    support = lower_support(mu, rs, order)
    cols = {kappa: cache.column(kappa) for kappa in support}
    for kappa, col in cols.items():
        for nu in col:
            if not dominance_leq(nu, kappa, rs, order):
                raise TriangularityViolation(f"D m_{kappa} contains m_{nu}, and {nu} is not <= {kappa}")
    zero = Scalar.const(0)
    a_mu = cols[mu].get(mu, zero)
    u = {mu: Scalar.const(1)}
    try:
        for nu in reversed(support[:-1]):
            a_nu = cols[nu].get(nu, zero)
            if a_nu == a_mu:
                raise EigenvalueCollision(mu, nu, a_mu)
            rhs = zero
            for kappa, c in u.items():
                x = cols[kappa].get(nu)
                if x is not None:
                    rhs = rhs + x * c
            if not rhs.is_zero():
                u[nu] = rhs / (a_mu - a_nu)
    except EigenvalueCollision:
        if not fallback:
            raise
        p = gram_schmidt_P(spec, mu, gs_order, order=order)
        p.eigenvalue = a_mu
        return p
    expansion = {nu: u[nu] for nu in reversed(support) if nu in u}
    return OrthoPoly(spec, mu, expansion, a_mu, TRIANGULAR)


def _solve_series(A: list, b: list) -> list:
    """Gaussian elimination over truncated v-series; pivots chosen by lowest valuation."""
    n = len(b)
    A = [row[:] for row in A]
    b = b[:]
    for col in range(n):
        best = None
        for r in range(col, n):
            if not A[r][col].is_zero():
                val = A[r][col].valuation()
                if best is None or val < best[0]:
                    best = (val, r)
        if best is None:
            raise SingularMatrix("Gram matrix is singular to the working precision")
        r = best[1]
        A[col], A[r] = A[r], A[col]
        b[col], b[r] = b[r], b[col]
        inv = A[col][col].inverse()
        for rr in range(col + 1, n):
            if A[rr][col].is_zero():
                continue
            f = A[rr][col] * inv
            for cc in range(col, n):
                A[rr][cc] = A[rr][cc] - f * A[col][cc]
            b[rr] = b[rr] - f * b[col]
    x = [None] * n
    for r in reversed(range(n)):
        acc = b[r]
        for cc in range(r + 1, n):
            acc = acc - A[r][cc] * x[cc]
        x[r] = acc * A[r][r].inverse()
    return x


def gram_schmidt_P(spec: WeightFunctionSpec, mu, target: int = 20, order: str = "lattice", max_order: int = 80) -> OrthoPoly:
    """P_mu = m_mu + sum u_nu m_nu orthogonal to every m_kappa, kappa < mu.

    Works with series truncated at increasing orders until all u_nu are known
    through v^target.
    """
    rs = spec.system
    mu = _as_weight(mu, rs)
    support = lower_support(mu, rs, order)
    lower = support[:-1]
    variables = spec.variables
    m = {nu: orbit_sum(nu, rs, variables) for nu in support}
    if not lower:
        return OrthoPoly(spec, mu, {mu: Scalar.const(1)}, None, GRAM_SCHMIDT, target)
    work = target
    while True:
        G = {(k, n): scalar_product_series(m[k], m[n], spec, work) for k in lower for n in support}
        A = [[G[(k, n)] for n in lower] for k in lower]
        b = [-G[(k, mu)] for k in lower]
        x = _solve_series(A, b)
        prec = min(s.order for s in x)
        if prec >= target:
            break
        work += (target - prec) + 2
        if work > max_order:
            raise ArithmeticError(f"Gram-Schmidt lost too much precision (reached v^{prec})")
    expansion = {mu: Scalar.const(1)}
    for nu, s in sorted(zip(lower, x), key=lambda t: dominance_key(t[0], rs), reverse=True):
        c = s.truncate(target).to_scalar()
        if not c.is_zero():
            expansion[nu] = c
    return OrthoPoly(spec, mu, expansion, None, GRAM_SCHMIDT, target)


def verify_eigen(op: QDiffOp, p: OrthoPoly) -> bool:
    """Independent re-application: D_sigma P == a P exactly."""
    f = p.to_laurent(op.variables)
    return op.apply(f) == f * p.eigenvalue
