import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qsym.algebra import LaurentPoly, Scalar, parse_scalar
from qsym.errors import EigenvalueCollision, NonInvariantInput, NonTelescoping, NotSummable, ValidationError
from qsym.qspecial.operator import QDiffOp, RationalFunction, is_invariant, phi_oracle_check, phi_sigma_rational
from qsym.qspecial.product import (
    random_invariant_pairs,
    scalar_product_truncated,
    selfadjointness_check,
)
from qsym.qspecial.solver import (
    GRAM_SCHMIDT,
    DMatrixCache,
    gram_schmidt_P,
    solve_P_mu,
    triangular_matrix_of_D,
    verify_eigen,
)
from qsym.qspecial.weightfn import delta_plus_truncated, koornwinder_spec, koornwinder_tuple_text, macdonald_spec
from qsym.rootdata import Weight, orbit_sum

v = Scalar.vpow


@pytest.fixture(scope="module")
def c1():
    return macdonald_spec(("C", 1), [1], 1)


@pytest.fixture(scope="module")
def c2():
    return macdonald_spec(("C", 2), [1, 1], 4)


def test_macdonald_spec_chooses_root_of_q():
    spec = macdonald_spec(("C", 2), [1, 1], 1)
    # short roots: t = q^(1/2)
    assert spec.D == 2 and spec.base_exp == 2
    with pytest.raises(ValidationError):
        macdonald_spec(("C", 2), [1, 2, 3], 1)
    with pytest.raises(ValidationError):
        macdonald_spec(("C", 2), [-1, 1], 1)


def test_koornwinder_tuple_text():
    spec = koornwinder_spec(2, v(3), v(3), -v(1), -v(1), v(4), base_exp=2)
    assert koornwinder_tuple_text(spec) == "(q^3,q^3,-q,-q;q^2,q^4)"


def test_non_summable_parameters():
    spec = koornwinder_spec(1, Scalar.const(1), v(3), -v(1), -v(1), v(4), base_exp=2)
    with pytest.raises(NotSummable):
        delta_plus_truncated(spec, 5)


def test_phi_c1(c1):
    phi = phi_sigma_rational(c1)
    X = c1.variables
    # (1 - q x^2) / (1 - x^2)
    assert phi.numerator(X) == LaurentPoly(X, {(0,): 1, (2,): -v(1)})
    assert phi.denominator(X) == LaurentPoly(X, {(0,): 1, (2,): -1})


def test_phi_trivial_on_orthogonal_roots():
    # sigma = e1 pairs to zero with the roots +-2e2 of C2: those factors drop out
    spec = macdonald_spec(("C", 2), {2: 0, 4: 1}, 1)
    phi = phi_sigma_rational(spec)
    assert all(b.beta[1] == 0 for b in list(phi.num) + list(phi.den))


def test_non_telescoping_sigma():
    # the long root 2e1 would need a shift by half a base step
    spec = macdonald_spec(("C", 2), [1, 1], 1)
    with pytest.raises(NonTelescoping):
        phi_sigma_rational(spec, Weight.of(("1/2", "1/2")))


@pytest.mark.parametrize(
    "spec",
    [
        macdonald_spec(("C", 1), [1], 1),
        macdonald_spec(("B", 2), [2, 3], 1),
        macdonald_spec(("D", 3), [1], 4),
        koornwinder_spec(1, v(3), v(3), -v(1), -v(1), v(4), base_exp=2),
    ],
    ids=lambda s: s.system.label(),
)
def test_phi_oracle(spec):
    assert phi_oracle_check(spec, order=10)


def test_phi_oracle_negative_control(c2):
    phi = phi_sigma_rational(c2)
    bad = RationalFunction(phi.nvars, phi.coeff * v(1), phi.mono, phi.num, phi.den)
    assert not phi_oracle_check(c2, phi=bad)


def test_d_annihilates_constants(c1):
    op = QDiffOp(c1)
    assert op.apply(LaurentPoly.one(c1.variables)).is_zero()


def test_d_on_m1_c1(c1):
    op = QDiffOp(c1)
    m1 = orbit_sum(Weight.of((1,)), c1.system)
    out = op.apply(m1)
    # frozen after the rank-one symbolic check; no m_0 term by parity
    assert out == m1 * ((v(3) - v(2) - v(1) + 1) / v(1))


def test_non_invariant_input_rejected(c1):
    op = QDiffOp(c1)
    with pytest.raises(NonInvariantInput):
        op.apply(LaurentPoly.gen(c1.variables, 0))


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 1000))
def test_d_preserves_invariance(seed):
    spec = macdonald_spec(("B", 2), [1, 2], 1)
    op = QDiffOp(spec)
    f, _ = random_invariant_pairs(spec, 1, seed)[0]
    assert is_invariant(op.apply(f), spec.system)


def test_triangular_matrix_c2(c2):
    op = QDiffOp(c2)
    tm = triangular_matrix_of_D(op, 2)
    zero = Weight.of((0, 0))
    assert not any(mu == zero for (_, mu) in tm.entries)
    diag = list(tm.diagonal().values())
    assert len(set(diag[1:])) == len(diag) - 1


def test_solver_basics(c1):
    assert solve_P_mu(c1, (0,)).to_laurent() == LaurentPoly.one(c1.variables)
    p1 = solve_P_mu(c1, (1,))
    assert list(p1.expansion) == [Weight.of((1,))]
    p2 = solve_P_mu(c1, (2,))
    assert p2.expansion[Weight.of((0,))] == parse_scalar("(q^2 + 1)/(q^2 + q + 1)")
    assert verify_eigen(QDiffOp(c1), p2)


def test_solver_rejects_non_dominant(c2):
    with pytest.raises(ValidationError):
        solve_P_mu(c2, (0, 1))


class _CollidingCache(DMatrixCache):
    """Forces the diagonal entry at (0) to equal the one at (2)."""

    def column(self, mu):
        col = dict(super().column(mu))
        if mu == Weight.of((0,)):
            col[mu] = dict(super().column(Weight.of((2,))))[Weight.of((2,))]
        return col


def test_eigenvalue_collision_and_fallback(c1):
    op = QDiffOp(c1)
    with pytest.raises(EigenvalueCollision) as err:
        solve_P_mu(c1, (2,), op=op, cache=_CollidingCache(op), fallback=False)
    assert err.value.nu == Weight.of((0,))
    p = solve_P_mu(c1, (2,), op=op, cache=_CollidingCache(op), fallback=True, gs_order=15)
    assert p.method == GRAM_SCHMIDT and p.precision == 15
    exact = solve_P_mu(c1, (2,))
    diff = exact.expansion[Weight.of((0,))] - p.expansion[Weight.of((0,))]
    assert not diff.series(15)


def test_gram_schmidt_agrees_with_solver_mod_v20(c1):
    for k in (2, 3):
        a = solve_P_mu(c1, (k,))
        b = gram_schmidt_P(c1, (k,), 19)
        for nu, c in a.expansion.items():
            assert not (c - b.expansion.get(nu, Scalar.const(0))).series(19)


def test_scalar_product_examples(c1):
    X = c1.variables
    one = LaurentPoly.one(X)
    norm = scalar_product_truncated(one, one, c1, 12)
    assert norm.leading() is not None
    p1 = solve_P_mu(c1, (1,)).to_laurent()
    p2 = solve_P_mu(c1, (2,)).to_laurent()
    assert scalar_product_truncated(p1, p2, c1, 12).is_zero()
    f, g = random_invariant_pairs(c1, 1, 7)[0]
    assert scalar_product_truncated(f, g, c1, 10).agrees(scalar_product_truncated(g, f, c1, 10))


def test_orthogonality_c2(c2):
    ps = [solve_P_mu(c2, mu) for mu in [(1, 1), (2, 0), (0, 0)]]
    L = [p.to_laurent() for p in ps]
    for i in range(3):
        for j in range(i + 1, 3):
            assert scalar_product_truncated(L[i], L[j], c2, 12).is_zero()


def test_selfadjointness(c2):
    op = QDiffOp(c2)
    assert selfadjointness_check(op, random_invariant_pairs(c2, 4, 3), 12).holds
    X = c2.variables
    m = orbit_sum(Weight.of((1, 1)), c2.system)
    assert selfadjointness_check(op, [(LaurentPoly.one(X), m)], 12).holds


def test_selfadjointness_negative_control(c1):
    phi = phi_sigma_rational(c1)
    num = phi.num.copy()
    num[next(iter(num))] -= 1
    broken = QDiffOp(c1, phi=RationalFunction(phi.nvars, phi.coeff, phi.mono, num, phi.den))
    rep = selfadjointness_check(broken, random_invariant_pairs(c1, 3, 1), 12)
    assert not rep.holds and rep.failures


def test_ortho_poly_serialization(c1):
    p = solve_P_mu(c1, (2,))
    data = p.to_json()
    assert data["mu"] == [2] and data["expansion"][0] == {"nu": [2], "coeff": "1"}
    assert p.to_latex().startswith("P_{2} = m_{2}")


def test_koornwinder_bc1_eigen_and_ortho():
    spec = koornwinder_spec(1, v(3), v(3), -v(1), -v(1), v(4), base_exp=2)
    op = QDiffOp(spec)
    ps = [solve_P_mu(spec, (k,), op=op) for k in range(3)]
    assert all(verify_eigen(op, p) for p in ps)
    L = [p.to_laurent() for p in ps]
    assert scalar_product_truncated(L[0], L[2], spec, 12).is_zero()
