"""Classical groups SU(N), SO(N), Sp(N) and their vector-representation R-matrices."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from ..algebra import ONE, Scalar, vq
from ..errors import ValidationError
from .matrix import CheckReport, QMatrix

SERIES = ("SU", "SO", "Sp")


@dataclass(frozen=True)
class GroupSpec:
    """``series`` in {SU, SO, Sp} acting on V = C^N. Indices below are 1-based."""

    series: str
    N: int

    def __post_init__(self):
        series = {"su": "SU", "so": "SO", "sp": "Sp"}.get(str(self.series).lower())
        if series is None:
            raise ValidationError(f"unknown group series {self.series!r}")
        object.__setattr__(self, "series", series)
        if int(self.N) < 2:
            raise ValidationError("N must be at least 2")
        if series == "Sp" and self.N % 2:
            raise ValidationError(f"Sp(N) needs even N, got N={self.N}")
        object.__setattr__(self, "N", int(self.N))

    @property
    def D(self) -> int:
        """q = v**D, chosen so q^(1/N) and q^(rho_j) are powers of v."""
        return lcm(2, self.N)

    @property
    def n(self) -> int:
        return self.N // 2

    def prime(self, j: int) -> int:
        return self.N + 1 - j

    def rho(self, j: int) -> Fraction:
        N, n = self.N, self.N // 2
        if self.series == "SU":
            return Fraction(N + 1, 2) - j
        if j > N + 1 - j:
            return -self.rho(self.prime(j))
        if self.series == "SO":
            if N % 2:
                return Fraction(0) if j == n + 1 else Fraction(2 * (n - j) + 1, 2)
            return Fraction(n - j)
        return Fraction(n - j + 1)

    def kappa(self, j: int) -> int:
        if self.series == "Sp":
            return 1 if j <= self.n else -1
        return 1

    def q(self, r=1) -> Scalar:
        return vq(r, self.D)

    def label(self) -> str:
        return f"{self.series}({self.N})"


def build_R(g: GroupSpec, scalar: bool = True, legs: str = "first") -> QMatrix:
    """R-matrix of the vector representation on V (x) V.

    For SU(N) the overall factor q^(-1/N) is kept unless ``scalar=False``.
    For SO/Sp, ``legs="first"`` puts the crossing term on e_ij (x) e_i'j'; ``"second"``
    uses e_i'j' (x) e_ij instead (kept only for the convention test).
    """
    N = g.N
    q = g.q()
    qq = q - q.inverse()
    ent: dict = {}

    def add(i, j, k, l, x):
        # e_ij (x) e_kl, 1-based
        key = ((i - 1) * N + (k - 1), (j - 1) * N + (l - 1))
        s = ent.get(key)
        ent[key] = x if s is None else s + x

    if g.series == "SU":
        for i in range(1, N + 1):
            for j in range(1, N + 1):
                add(i, i, j, j, q if i == j else ONE)
        for i in range(1, N + 1):
            for j in range(1, i):
                add(i, j, j, i, qq)
        R = QMatrix(N * N, ent)
        return R.scale(g.q(Fraction(-1, N))) if scalar else R
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            e = (i == j) - (i == g.prime(j))
            add(i, i, j, j, g.q(e))
    for i in range(1, N + 1):
        for j in range(1, i):
            add(i, j, j, i, qq)
            c = -qq * g.kappa(i) * g.kappa(j) * g.q(g.rho(i) - g.rho(j))
            ip, jp = g.prime(i), g.prime(j)
            if legs == "first":
                add(i, j, ip, jp, c)
            elif legs == "second":
                add(ip, jp, i, j, c)
            else:
                raise ValidationError(f"unknown legs convention {legs!r}")
    return QMatrix(N * N, ent)


def legs_12_13_23(R: QMatrix, N: int):
    """R_12, R_13, R_23 on V (x) V (x) V."""
    I = QMatrix.identity(N)
    R12 = R.kron(I)
    R23 = I.kron(R)
    # R_13 = P_23 R_12 P_23
    P23 = I.kron(QMatrix.flip(N))
    R13 = P23 @ R12 @ P23
    return R12, R13, R23


def yang_baxter_check(R: QMatrix, N: int | None = None) -> CheckReport:
    """Exact test of R12 R13 R23 = R23 R13 R12."""
    if N is None:
        N = round(R.dim**0.5)
    if N * N != R.dim:
        raise ValidationError(f"dimension {R.dim} is not a tensor square")
    R12, R13, R23 = legs_12_13_23(R, N)
    lhs = R12 @ R13 @ R23
    rhs = R23 @ R13 @ R12
    k = lhs.residual_terms(rhs)
    return CheckReport("R12 R13 R23 = R23 R13 R12", k == 0, k)


def reflection_check(R: QMatrix, J: QMatrix) -> CheckReport:
    """Exact test of R12 J1 R12^t1 J2 = J2 R12^t1 J1 R12."""
    N = J.dim
    if R.dim != N * N:
        raise ValidationError(f"R has dimension {R.dim}, J has {N}")
    I = QMatrix.identity(N)
    J1, J2 = J.kron(I), I.kron(J)
    Rt = R.partial_transpose_1(N)
    lhs = R @ J1 @ Rt @ J2
    rhs = J2 @ Rt @ J1 @ R
    k = lhs.residual_terms(rhs)
    return CheckReport("R12 J1 R12^t1 J2 = J2 R12^t1 J1 R12", k == 0, k)
