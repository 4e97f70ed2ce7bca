"""L-operators on the vector representation, the coideal matrices M and K,
the invariant tensor w_J and the central element C_sigma."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from ..algebra import Scalar
from ..errors import SingularMatrix, ValidationError
from .groups import GroupSpec, build_R
from .matrix import CheckReport, QMatrix

# Order of the coproduct legs on V (x) V. "standard": Delta(L_ab) = sum_c L_ac (x) L_cb
# with the first factor acting on the first copy of V. "opposite" swaps the factors.
COPRODUCT = "standard"


@dataclass(frozen=True)
class LOperators:
    """Images on V of the entries of L+, L- and their antipodes, as N x N blocks.

    ``Lp[a][b]`` is the image of L+_ab; ``SLp``/``SLm`` are images of S(L+_ab), S(L-_ab).
    """

    group: GroupSpec
    Rp: QMatrix
    Rm: QMatrix
    Lp: tuple
    Lm: tuple
    SLp: tuple
    SLm: tuple


@lru_cache(maxsize=None)
def build_L_vector_rep(g: GroupSpec, scalar: bool = True) -> LOperators:
    """L+ -> PRP and L- -> R^-1 in the auxiliary (first) leg; antipodes are the
    inverses in that leg: S(L+) -> (PRP)^-1 and S(L-) -> R."""
    N = g.N
    R = build_R(g, scalar=scalar)
    P = QMatrix.flip(N)
    Rp = P @ R @ P
    Rm = R.inverse()
    as_tuple = lambda M: tuple(tuple(row) for row in M.blocks(N))
    return LOperators(g, Rp, Rm, as_tuple(Rp), as_tuple(Rm), as_tuple(Rp.inverse()), as_tuple(R))


def _coproduct(X, Y, convention: str) -> QMatrix:
    return X.kron(Y) if convention == "standard" else Y.kron(X)


def build_M_on_tensor_square(g: GroupSpec, J: QMatrix, convention: str | None = None) -> dict:
    """Action on V (x) V of M_ij, where M = L+ - J S(L-)^t J^-1.

    Returns ``{(i, j): QMatrix}`` with 0-based i, j.
    """
    convention = convention or COPRODUCT
    if convention not in ("standard", "opposite"):
        raise ValidationError(f"unknown coproduct convention {convention!r}")
    N = g.N
    if J.dim != N:
        raise ValidationError(f"J has size {J.dim}, group acts on C^{N}")
    try:
        Jinv = J.inverse()
    except SingularMatrix:
        raise SingularMatrix("J is singular") from None
    L = build_L_vector_rep(g)
    out = {}
    for i in range(N):
        for j in range(N):
            acc = QMatrix.zeros(N * N)
            for c in range(N):
                acc = acc + _coproduct(L.Lp[i][c], L.Lp[c][j], convention)
            # (J S(L-)^t J^-1)_ij = sum_kl J_ik S(L-_lk) Jinv_lj
            for (ii, k), jik in J.entries.items():
                if ii != i:
                    continue
                for (l, jj), jlj in Jinv.entries.items():
                    if jj != j:
                        continue
                    coef = jik * jlj
                    # Delta(S(L-_lk)) = sum_c S(L-_ck) (x) S(L-_lc)
                    for c in range(N):
                        acc = acc - _coproduct(L.SLm[c][k], L.SLm[l][c], convention).scale(coef)
            out[(i, j)] = acc
    return out


def build_M_on_vector(g: GroupSpec, J: QMatrix) -> dict:
    """Action of M_ij on V itself (tensor level 1)."""
    N = g.N
    Jinv = J.inverse()
    L = build_L_vector_rep(g)
    out = {}
    for i in range(N):
        for j in range(N):
            acc = L.Lp[i][j]
            for (ii, k), jik in J.entries.items():
                if ii != i:
                    continue
                for (l, jj), jlj in Jinv.entries.items():
                    if jj == j:
                        acc = acc - L.SLm[l][k].scale(jik * jlj)
            out[(i, j)] = acc
    return out


def counit_M(J: QMatrix) -> QMatrix:
    """epsilon(M) = I - J I J^-1, which must vanish."""
    return QMatrix.identity(J.dim) - J @ J.inverse()


def build_wJ(J: QMatrix) -> dict:
    """w_J = sum_ij v_i (x) J_ij v_j as a sparse vector on V (x) V."""
    N = J.dim
    return {i * N + j: x for (i, j), x in J.entries.items()}


def wJ_invariance_check(g: GroupSpec, J: QMatrix, convention: str | None = None) -> CheckReport:
    """Every M_ij annihilates w_J."""
    w = build_wJ(J)
    bad = 0
    for Mij in build_M_on_tensor_square(g, J, convention).values():
        bad += len(Mij.apply(w))
    name = f"M_ij . w_J = 0 ({convention or COPRODUCT} coproduct)"
    return CheckReport(name, bad == 0, bad)


def build_C_sigma_vector_rep(g: GroupSpec) -> QMatrix:
    """sum_ij q^(2 rho_i) L+_ij S(L-_ji) on V."""
    N = g.N
    L = build_L_vector_rep(g)
    acc = QMatrix.zeros(N)
    for i in range(N):
        w = g.q(2 * g.rho(i + 1))
        for j in range(N):
            acc = acc + (L.Lp[i][j] @ L.SLm[j][i]).scale(w)
    return acc


def centrality_check(g: GroupSpec) -> tuple[CheckReport, Scalar | None]:
    C = build_C_sigma_vector_rep(g)
    s = C.scalar_value()
    off = C.nnz() - (g.N if s is not None else 0)
    return CheckReport("C_sigma = scalar * I on V", s is not None, off), s


def build_K_vector_rep(g: GroupSpec, J: QMatrix) -> QMatrix:
    """K = S(L+) J S(L-)^t as a matrix on (aux) (x) V: block (i, j) is the image of K_ij."""
    N = g.N
    L = build_L_vector_rep(g)
    ent = {}
    for i in range(N):
        for j in range(N):
            acc = QMatrix.zeros(N)
            for (k, l), x in J.entries.items():
                acc = acc + (L.SLp[i][k] @ L.SLm[j][l]).scale(x)
            for (r, c), y in acc.entries.items():
                ent[(i * N + r, j * N + c)] = y
    return QMatrix(N * N, ent)


def K_reflection_check(g: GroupSpec, J: QMatrix) -> CheckReport:
    """Reflection equation for K with two auxiliary copies and V as third leg:

        R12 K1 R12^t1 K2 = K2 R12^t1 K1 R12,   K1 = K_13, K2 = K_23.
    """
    N = g.N
    R = build_R(g)
    K = build_K_vector_rep(g, J)
    I = QMatrix.identity(N)
    P23 = I.kron(QMatrix.flip(N))
    K1 = P23 @ K.kron(I) @ P23
    K2 = I.kron(K)
    R12 = R.kron(I)
    Rt = R.partial_transpose_1(N).kron(I)
    lhs = R12 @ K1 @ Rt @ K2
    rhs = K2 @ Rt @ K1 @ R12
    k = lhs.residual_terms(rhs)
    return CheckReport("R12 K1 R12^t1 K2 = K2 R12^t1 K1 R12 (K1 = K_13, K2 = K_23)", k == 0, k)
