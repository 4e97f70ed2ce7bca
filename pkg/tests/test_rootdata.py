from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qsym.errors import LatticeError, ValidationError
from qsym.rootdata import (
    Weight,
    build_root_system,
    dominance_leq,
    dominant_weights_up_to,
    half_sum_rho,
    length,
    orbit_sum,
    weyl_enumerate,
)

SYSTEMS = [("A", 2), ("B", 2), ("C", 2), ("D", 3), ("BC", 2), ("C", 1), ("B", 3)]


def test_b2_roots():
    rs = build_root_system("B", 2)
    assert set(rs.positive_roots) == {(1, 0), (0, 1), (1, 1), (1, -1)}
    assert rs.simple_roots == ((1, -1), (0, 1))


@pytest.mark.parametrize("typ,rank,order", [("B", 2, 8), ("C", 3, 48), ("D", 3, 24), ("A", 2, 6), ("BC", 2, 8)])
def test_weyl_order(typ, rank, order):
    rs = build_root_system(typ, rank)
    assert rs.weyl_order == order
    assert len(weyl_enumerate(rs)) == order


@pytest.mark.parametrize("typ,rank,rho", [("C", 2, (2, 1)), ("B", 2, (Fraction(3, 2), Fraction(1, 2))), ("D", 3, (2, 1, 0))])
def test_rho(typ, rank, rho):
    assert half_sum_rho(build_root_system(typ, rank)).coords == tuple(Fraction(x) for x in rho)


@settings(max_examples=20, deadline=None)
@given(st.sampled_from([s for s in SYSTEMS if s[0] != "BC"]))
def test_rho_pairs_to_one_with_simple_coroots(system):
    # reduced systems only; in BC the doubled roots 2e_i shift rho
    rs = build_root_system(*system)
    rho = half_sum_rho(rs)
    for a in rs.simple_roots:
        assert rho.dot(a) * Fraction(2, sum(x * x for x in a)) == 1


def test_dominant_weights_c2():
    rs = build_root_system("C", 2)
    got = [w.ints() for w in dominant_weights_up_to(rs, 2)]
    assert got == [(0, 0), (1, 0), (1, 1), (2, 0)]


def test_cone_and_lattice_orders_differ():
    rs = build_root_system("C", 1)
    assert dominance_leq(Weight.of((0,)), Weight.of((1,)), rs, "cone")
    assert not dominance_leq(Weight.of((0,)), Weight.of((1,)), rs, "lattice")
    with pytest.raises(ValidationError):
        dominance_leq(Weight.of((0,)), Weight.of((1,)), rs, "other")


def test_half_integral_weights():
    w = Weight.of((Fraction(1, 2), Fraction(1, 2)))
    assert w.half
    with pytest.raises(LatticeError):
        w.ints()
    with pytest.raises(Exception):
        Weight.of((Fraction(1, 2), 0))


def test_type_d_rank_one_rejected():
    with pytest.raises(ValidationError):
        build_root_system("D", 1)


def test_length_function():
    rs = build_root_system("C", 2)
    lengths = sorted(length(w, rs) for w in rs.weyl_group)
    assert lengths[0] == 0 and lengths[-1] == len(rs.positive_roots)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(SYSTEMS), st.integers(0, 3))
def test_orbit_sums_are_invariant(system, k):
    rs = build_root_system(*system)
    for mu in dominant_weights_up_to(rs, k):
        m = orbit_sum(mu, rs)
        for w in rs.weyl_group:
            assert m.map_exponents(w.act) == m


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(SYSTEMS), st.data())
def test_dominance_is_a_partial_order(system, data):
    rs = build_root_system(*system)
    ws = dominant_weights_up_to(rs, 3)
    x, y, z = (data.draw(st.sampled_from(ws)) for _ in range(3))
    for order in ("cone", "lattice"):
        assert dominance_leq(x, x, rs, order)
        if dominance_leq(x, y, rs, order) and dominance_leq(y, x, rs, order):
            assert x == y
        if dominance_leq(x, y, rs, order) and dominance_leq(y, z, rs, order):
            assert dominance_leq(x, z, rs, order)


@pytest.mark.parametrize("system", SYSTEMS)
def test_enumeration_is_a_linear_extension(system):
    rs = build_root_system(*system)
    ws = dominant_weights_up_to(rs, 3)
    for i, lo in enumerate(ws):
        for hi in ws[:i]:
            # nothing listed earlier lies strictly above a later weight
            assert not (dominance_leq(lo, hi, rs, "cone") and lo != hi)
