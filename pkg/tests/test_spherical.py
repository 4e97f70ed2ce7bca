import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qsym.algebra import LaurentPoly, Scalar
from qsym.errors import LatticeError, UnimplementedCase, ValidationError
from qsym.qspecial.solver import solve_P_mu
from qsym.qspecial.weightfn import koornwinder_tuple_text
from qsym.rootdata import Weight
from qsym.spherical import case_table, get_case, spherical_parameters, variable_map, zonal_restriction


def test_table_rows():
    rows = {r.case: r for r in case_table()}
    assert sorted(rows) == list(range(1, 8))
    assert (rows[5].sigma_type, rows[5].mult, rows[5].base_exp) == ("C", (4, 3), 2)
    assert (rows[7].sigma_type, rows[7].mult) == ("BC", (4, 1, 4))
    assert rows[1].sigma_type == "A" and rows[1].mult == (1,)
    with pytest.raises(ValidationError):
        get_case(8)


@pytest.mark.parametrize("case,n,rank", [(3, 4, 4), (4, 2, 2), (5, 6, 3), (6, 4, 2), (7, 5, 2), (1, 3, 2)])
def test_rank(case, n, rank):
    assert get_case(case).rank(n) == rank


@pytest.mark.parametrize("case,n", [(5, 3), (6, 5), (7, 4)])
def test_rank_parity(case, n):
    with pytest.raises(ValidationError):
        get_case(case).rank(n)


def test_variable_maps():
    assert variable_map(4, 2).describe() == ["x1 = z1^2", "x2 = z2^2"]
    assert variable_map(5, 2).describe() == ["x1 = z1*z2"]
    assert variable_map(7, 5).describe() == ["x1 = z1*z2", "x2 = z3*z4"]
    with pytest.raises(UnimplementedCase):
        variable_map(1, 3)
    with pytest.raises(ValidationError):
        variable_map(4, 2, spin=True)


def _brute_force_image(vm, box):
    """All z-exponents reachable as x^mu with |mu_j| <= box."""
    out = set()
    for mu in itertools.product(range(-box, box + 1), repeat=len(vm.images)):
        out.add(vm.mu_to_lambda(mu))
    return out


@pytest.mark.parametrize("case,n", [(3, 2), (4, 2), (5, 4), (6, 2), (7, 3), (7, 5)])
def test_lattice_membership_matches_brute_force(case, n):
    vm = variable_map(case, n)
    image = _brute_force_image(vm, 2)
    for lam in itertools.product(range(-2, 3), repeat=n):
        try:
            mu = vm.lambda_to_mu(lam)
        except LatticeError:
            assert lam not in image
        else:
            assert lam in image and vm.mu_to_lambda(mu.coords) == lam


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=2, max_size=2))
def test_round_trip_case5(mu):
    vm = variable_map(5, 4)
    assert vm.lambda_to_mu(vm.mu_to_lambda(mu)) == Weight.of(mu)


def test_spin_weights_case3():
    vm = variable_map(3, 2, spin=True)
    assert vm.lambda_to_mu((1, 1)).half
    with pytest.raises(LatticeError):
        variable_map(3, 2).lambda_to_mu((1, 1))
    with pytest.raises(LatticeError):
        vm.lambda_to_mu((1, 2))
    with pytest.raises(UnimplementedCase):
        zonal_restriction(3, 2, (1, 1), spin=True)


def test_parameters_case7():
    spec = spherical_parameters(7, 5)
    assert koornwinder_tuple_text(spec) == "(q^3,q^3,-q,-q;q^2,q^4)"
    assert spec.system.label() == "BC2"


def test_parameters_case3():
    d = spherical_parameters(3, 3).describe()
    assert spherical_parameters(3, 3).system.label() == "D3"
    assert "q^4" in str(d)
    with pytest.raises(ValidationError):
        spherical_parameters(3, 1)


def test_parameters_case6_rank_one_keeps_long_class():
    # C1 has only the long root 2e1
    spec = spherical_parameters(6, 2)
    assert set(spec.system.length_classes()) == {4}
    assert spherical_parameters(6, 4).system.label() == "C2"


def test_zonal_case4():
    P, mu = zonal_restriction(4, 2, (2, 0))
    assert mu == Weight.of((1, 0))
    assert P.is_monic()
    P0, mu0 = zonal_restriction(4, 2, (0, 0))
    assert P0.to_laurent() == LaurentPoly.one(P0.to_laurent().variables)


def test_zonal_case5_matches_direct_solve():
    P, mu = zonal_restriction(5, 4, (1, 1, 0, 0))
    assert mu == Weight.of((1, 0))
    direct = solve_P_mu(spherical_parameters(5, 4), (1, 0))
    assert P.expansion == direct.expansion
    assert all(isinstance(c, Scalar) for c in P.expansion.values())


def test_zonal_rejects_non_dominant_and_type_a():
    with pytest.raises(ValidationError):
        zonal_restriction(4, 2, (0, 2))
    with pytest.raises(LatticeError):
        zonal_restriction(5, 4, (1, 0, 0, 0))
    for case in (1, 2):
        with pytest.raises(UnimplementedCase):
            zonal_restriction(case, 3, (0, 0, 0))
