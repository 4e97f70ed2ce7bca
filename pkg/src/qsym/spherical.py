"""Compact symmetric spaces G/K with their restricted root data, the torus variable
maps, and zonal spherical functions as Macdonald or Koornwinder polynomials."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import Scalar
from .errors import LatticeError, UnimplementedCase, ValidationError
from .qmatrix.families import SPECIAL_GROUPS
from .qspecial.solver import OrthoPoly, solve_P_mu
from .qspecial.weightfn import WeightFunctionSpec, koornwinder_spec, macdonald_spec
from .rootdata import Weight, build_root_system


@dataclass(frozen=True)
class SymmetricSpaceCase:
    """One row of the symmetric-space table.

    ``mult`` lists multiplicities by squared length 2, 4, 1 (only the classes of
    the restricted system). ``base_exp`` is the polynomial base as a power of q.
    """

    case: int
    space: str
    cartan: str
    group: str
    sigma_type: str
    mult: tuple
    base_exp: int | None
    uses_J0: bool

    def rank(self, n: int) -> int:
        """Rank l of the restricted system for the group parameter n."""
        if n < 1:
            raise ValidationError("n must be positive")
        c = self.case
        if c == 1:
            return n - 1
        if c in (2, 3, 4):
            return n
        if c in (5, 6):
            if n % 2:
                raise ValidationError(f"case ({c}) needs n = 2l even, got n = {n}")
            return n // 2
        if n % 2 == 0:
            raise ValidationError(f"case (7) needs n = 2l+1 odd, got n = {n}")
        return (n - 1) // 2

    def group_size(self, n: int) -> int:
        return SPECIAL_GROUPS[self.case][1](n)

    def to_json(self, n: int | None = None) -> dict:
        out = {
            "case": self.case,
            "space": self.space,
            "cartan": self.cartan,
            "group": self.group,
            "restricted_type": self.sigma_type,
            "multiplicities": list(self.mult),
            "base": f"q^{self.base_exp}" if self.base_exp else None,
            "J": "J0 diag(q^rho)" if self.uses_J0 else "diag(q^rho)",
        }
        if n is not None:
            out["n"] = n
            out["rank"] = self.rank(n)
            out["N"] = self.group_size(n)
        return out


_TABLE = (
    SymmetricSpaceCase(1, "SU(n)/SO(n)", "AI", "SU(n)", "A", (1,), None, False),
    SymmetricSpaceCase(2, "SU(2n)/Sp(2n)", "AII", "SU(2n)", "A", (4,), None, True),
    SymmetricSpaceCase(3, "SO(2n)/SO(n)xSO(n)", "DI", "SO(2n)", "D", (1,), 4, False),
    SymmetricSpaceCase(4, "Sp(2n)/U(n)", "CI", "Sp(2n)", "C", (1, 1), 4, False),
    SymmetricSpaceCase(5, "Sp(2n)/Sp(2l)xSp(2l)", "CII", "Sp(2n)", "C", (4, 3), 2, True),
    SymmetricSpaceCase(6, "SO(2n)/U(n)", "DIII", "SO(2n)", "C", (4, 1), 2, True),
    SymmetricSpaceCase(7, "SO(2n)/U(n)", "DIII", "SO(2n)", "BC", (4, 1, 4), 2, True),
)


def case_table() -> list[SymmetricSpaceCase]:
    return list(_TABLE)


def get_case(case: int) -> SymmetricSpaceCase:
    for row in _TABLE:
        if row.case == case:
            return row
    raise ValidationError(f"case must be one of 1..7, got {case!r}")


def _torus_case(case: int) -> SymmetricSpaceCase:
    row = get_case(case)
    if row.case in (1, 2):
        raise UnimplementedCase("type-A cases (1), (2) have no torus map here")
    return row


@dataclass(frozen=True)
class VariableMap:
    """x_j as monomials in z_1..z_n: ``images[j]`` is the exponent vector of x_j.

    With ``half`` (case 3 spin sector) x_j^(1/2) = z_j is allowed, so mu may be
    half-integral.
    """

    case: int
    n: int
    images: tuple
    half: bool = False

    def describe(self) -> list[str]:
        out = []
        for j, e in enumerate(self.images, 1):
            mono = "*".join(f"z{i + 1}" if k == 1 else f"z{i + 1}^{k}" for i, k in enumerate(e) if k)
            out.append(f"x{j} = {mono}")
        return out

    def mu_to_lambda(self, mu) -> tuple:
        mu = [Fraction(x) for x in mu]
        if len(mu) != len(self.images):
            raise ValidationError(f"mu needs {len(self.images)} coordinates")
        lam = [Fraction(0)] * self.n
        for m, e in zip(mu, self.images):
            for i, k in enumerate(e):
                lam[i] += m * k
        if any(x.denominator != 1 for x in lam):
            raise LatticeError(f"x^{tuple(mu)} is not a Laurent monomial in z")
        return tuple(int(x) for x in lam)

    def lambda_to_mu(self, lam) -> Weight:
        """Solve z^lambda = x^mu; raises LatticeError outside the image lattice."""
        lam = tuple(int(x) for x in lam)
        if len(lam) != self.n:
            raise ValidationError(f"lambda needs {self.n} coordinates, got {len(lam)}")
        used = set()
        mu = []
        for e in self.images:
            idx = [i for i, k in enumerate(e) if k]
            used.update(idx)
            vals = {Fraction(lam[i], e[i]) for i in idx}
            if len(vals) != 1:
                raise LatticeError(
                    f"lambda = {lam} is not in the image lattice: coordinates {[i + 1 for i in idx]} must agree"
                )
            mu.append(vals.pop())
        rest = [lam[i] for i in range(self.n) if i not in used]
        if any(rest):
            raise LatticeError(f"lambda = {lam} is not in the image lattice: coordinates outside the map must vanish")
        if any(x.denominator != 1 for x in mu):
            if not self.half:
                raise LatticeError(f"lambda = {lam} needs half-integral mu = {tuple(map(str, mu))}; spin weights are off")
            if len({x.denominator for x in mu}) != 1:
                raise LatticeError(f"lambda = {lam}: mixed integral and half-integral mu")
        return Weight.of(mu)


def variable_map(case: int, n: int, spin: bool = False) -> VariableMap:
    row = _torus_case(case)
    l = row.rank(n)
    images = []
    for j in range(l):
        e = [0] * n
        if case in (3, 4):
            e[j] = 2
        else:
            e[2 * j] = e[2 * j + 1] = 1
        images.append(tuple(e))
    if spin and case != 3:
        raise ValidationError("spin weights exist only for case (3)")
    return VariableMap(case, n, tuple(images), spin)


def spherical_parameters(case: int, n: int) -> WeightFunctionSpec:
    """Weight function of the zonal spherical functions, in v = q."""
    row = _torus_case(case)
    l = row.rank(n)
    if case == 7:
        q = Scalar.vpow
        return koornwinder_spec(l, q(3), q(3), -q(1), -q(1), q(4), base_exp=2, D=1)
    if case == 3 and l < 2:
        raise ValidationError("case (3) needs n >= 2")
    rs = build_root_system(row.sigma_type, l)
    classes = [c for c in (2, 4, 1) if c in rs.length_classes()]
    full = dict(zip((2, 4, 1), row.mult))
    return macdonald_spec(rs, {c: full[c] for c in classes}, base=row.base_exp)


def zonal_restriction(case: int, n: int, lam, spin: bool = False, **solver_kw) -> tuple[OrthoPoly, Weight]:
    """P_mu with z^lambda = x^mu under the case's variable map. Returns ``(P, mu)``."""
    vm = variable_map(case, n, spin)
    mu = vm.lambda_to_mu(lam)
    spec = spherical_parameters(case, n)
    if mu.half:
        raise UnimplementedCase("spin sector: orbit sums of half-integral weights are not Laurent polynomials in x")
    if not spec.system.is_dominant(mu):
        raise ValidationError(f"mu = {mu} is not dominant for {spec.system.label()}")
    return solve_P_mu(spec, mu, **solver_kw), mu
