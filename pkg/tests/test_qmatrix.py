import pytest

from qsym.algebra import Scalar, parse_scalar
from qsym.errors import SingularMatrix, ValidationError
from qsym.qmatrix import GroupSpec, QMatrix, build_R, reflection_check, yang_baxter_check
from qsym.qmatrix.coideal import (
    COPRODUCT,
    K_reflection_check,
    build_C_sigma_vector_rep,
    build_M_on_vector,
    centrality_check,
    counit_M,
    wJ_invariance_check,
)
from qsym.qmatrix.families import build_family, certification_matrix


def test_su2_entries():
    g = GroupSpec("SU", 2)
    R = build_R(g)
    q = lambda text: parse_scalar(text, g.D)
    # basis index (i, j) -> 2 i + j; the crossing term sits at row (2,1), column (1,2)
    assert R[(2, 1)] == q("(q - q^-1)*q^(-1/2)")
    assert R[(1, 2)] == Scalar.const(0)
    assert R[(0, 0)] == q("q^(1/2)")
    assert R[(1, 1)] == q("q^(-1/2)")
    assert R.nnz() == 5


def test_unscaled_su_r():
    R = build_R(GroupSpec("SU", 2), scalar=False)
    assert R[(0, 0)] == parse_scalar("q", 2)


def test_group_validation():
    with pytest.raises(ValidationError):
        GroupSpec("Sp", 3)
    with pytest.raises(ValidationError):
        GroupSpec("SO", 1)
    with pytest.raises(ValidationError):
        GroupSpec("G", 4)


@pytest.mark.parametrize("series,N", [("SU", 3), ("SO", 5), ("Sp", 4), ("SO", 6), ("Sp", 6)])
def test_yang_baxter(series, N):
    assert yang_baxter_check(build_R(GroupSpec(series, N)), N).holds


@pytest.mark.parametrize("series,N", [("SO", 3), ("Sp", 4)])
def test_yang_baxter_negative_control(series, N):
    # crossing term placed on the exchanged legs
    rep = yang_baxter_check(build_R(GroupSpec(series, N), legs="second"), N)
    assert not rep.holds and rep.residual_terms > 0


def test_matrix_algebra():
    M = QMatrix.from_rows([[1, 2], [3, 4]])
    assert M.det() == Scalar.const(-2)
    assert M @ M.inverse() == QMatrix.identity(2)
    assert M.transpose()[(0, 1)] == Scalar.const(3)
    with pytest.raises(SingularMatrix):
        QMatrix.from_rows([[1, 2], [2, 4]]).inverse()
    P = QMatrix.flip(2)
    assert P @ P == QMatrix.identity(4)


def test_partial_transpose():
    N = 2
    E = QMatrix.unit(2, 0, 1).kron(QMatrix.unit(2, 1, 0))
    assert E.partial_transpose_1(N) == QMatrix.unit(2, 1, 0).kron(QMatrix.unit(2, 1, 0))


@pytest.mark.parametrize("inst", certification_matrix()[:12], ids=str)
def test_reflection_equation_sample(inst):
    fam = build_family(**inst)
    assert reflection_check(build_R(fam.group), fam.matrix).holds


def test_reflection_negative_control():
    fam = build_family("AII", n=2)
    R = build_R(fam.group).transpose()
    assert not reflection_check(R, fam.matrix).holds


def test_families_free_parameters_and_overrides():
    fam = build_family("AI", n=2)
    assert fam.free == ("a1", "a2")
    fixed = build_family("AI", n=2, overrides={"a1": Scalar.const(1), "a2": Scalar.vpow(2)})
    assert fixed.free == ()
    assert reflection_check(build_R(fixed.group), fixed.matrix).holds
    with pytest.raises(ValidationError):
        build_family("AI", n=2, overrides={"a1": Scalar.const(1), "a2": Scalar.const(0)})
    with pytest.raises(ValidationError):
        build_family("AI", n=2, overrides={"b7": Scalar.const(1)})


def test_diii_dispatch():
    assert build_family("DIII", n=3).tag == "DIII_odd"
    assert build_family("DIII", n=4).tag == "DIII_even"


def test_cii_sign_matters():
    fam = build_family("CII", n=3, l=1, cii_sign=+1)
    assert not reflection_check(build_R(fam.group), fam.matrix).holds


def test_special_j0_is_nonzero():
    fam = build_family("SPECIAL_4_2", case=5, n=2)
    assert fam.matrix.det() != Scalar.const(0)


@pytest.mark.parametrize("inst", [{"tag": "AI", "n": 2}, {"tag": "AII", "n": 2}, {"tag": "BDI", "N": 5, "l": 1},
                                  {"tag": "CII", "n": 2, "l": 1}, {"tag": "DIII", "n": 3}], ids=str)
def test_wj_invariance(inst):
    fam = build_family(**inst)
    assert COPRODUCT == "standard"
    assert wJ_invariance_check(fam.group, fam.matrix).holds


def test_wj_opposite_coproduct_fails():
    fam = build_family("AII", n=2)
    assert not wJ_invariance_check(fam.group, fam.matrix, "opposite").holds


def test_counit_and_vector_action():
    fam = build_family("CI", n=1)
    assert counit_M(fam.matrix).is_zero()
    M = build_M_on_vector(fam.group, fam.matrix)
    assert len(M) == fam.group.N**2


@pytest.mark.parametrize("inst", [{"tag": "AI", "n": 2}, {"tag": "CI", "n": 1}, {"tag": "BDI", "N": 3, "l": 1}], ids=str)
def test_k_matrix_reflection(inst):
    fam = build_family(**inst)
    assert K_reflection_check(fam.group, fam.matrix).holds


@pytest.mark.parametrize("series,N", [("SU", 2), ("SU", 3), ("SO", 3), ("SO", 4), ("Sp", 4)])
def test_central_element_is_scalar(series, N):
    g = GroupSpec(series, N)
    report, s = centrality_check(g)
    assert report.holds
    assert build_C_sigma_vector_rep(g).scalar_value() == s
    assert s.at_v(1) == Scalar.const(N)


def test_central_element_su2_value():
    g = GroupSpec("SU", 2)
    _, s = centrality_check(g)
    assert s == parse_scalar("q^2 + q^-2", g.D)
