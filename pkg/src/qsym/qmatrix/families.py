"""Constant solutions J of the reflection equation, one family per symmetric space."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..algebra import ONE, Scalar
from ..errors import ValidationError
from .groups import GroupSpec
from .matrix import QMatrix

FAMILIES = ("AI", "AII", "BDI", "CI", "CII", "DIII_even", "DIII_odd", "SPECIAL_4_2")

# symmetric-space case -> (series, N as a function of n, uses J0)
SPECIAL_GROUPS = {
    1: ("SU", lambda n: n, False),
    2: ("SU", lambda n: 2 * n, True),
    3: ("SO", lambda n: 2 * n, False),
    4: ("Sp", lambda n: 2 * n, False),
    5: ("Sp", lambda n: 2 * n, True),
    6: ("SO", lambda n: 2 * n, True),
    7: ("SO", lambda n: 2 * n, True),
}


@dataclass(frozen=True)
class JFamily:
    """A member of a J family with its constraint relations already substituted.

    ``params`` maps every a_k (and the common product ``c`` where one exists)
    to its value in terms of the remaining free parameters.
    """

    tag: str
    group: GroupSpec
    n: int
    l: int | None
    params: dict = field(compare=False)
    matrix: QMatrix = field(compare=False)
    free: tuple[str, ...] = ()

    def to_json(self) -> dict:
        D = self.group.D
        return {
            "family": self.tag,
            "group": self.group.label(),
            "n": self.n,
            "l": self.l,
            "free_parameters": list(self.free),
            "parameters": {k: v.to_text(D) for k, v in sorted(self.params.items())},
            "J": self.matrix.to_json(D),
        }


def _p(name: str) -> Scalar:
    return Scalar.param(name)


def _skew_blocks(g: GroupSpec, J: dict, a: dict, kmax: int):
    """-e_{2k,2k-1} a_{2k-1} + e_{2k-1,2k} a_{2k} and the primed mirror, k <= kmax."""
    pr = g.prime
    for k in range(1, kmax + 1):
        i, j = 2 * k - 1, 2 * k
        J[(j, i)] = J.get((j, i), 0) - a[i]
        J[(i, j)] = J.get((i, j), 0) + a[j]
        J[(pr(i), pr(j))] = J.get((pr(i), pr(j)), 0) - a[pr(j)]
        J[(pr(j), pr(i))] = J.get((pr(j), pr(i)), 0) + a[pr(i)]


def _paired_params(g: GroupSpec, kmax: int, prod: Scalar) -> dict:
    """a_{2k} free, a_{2k-1} = q a_{2k}, a_{j'} = prod / a_j for j <= 2*kmax."""
    q = g.q()
    a = {}
    for k in range(1, kmax + 1):
        a[2 * k] = _p(f"a{2 * k}")
        a[2 * k - 1] = q * a[2 * k]
    for j in range(1, 2 * kmax + 1):
        a[g.prime(j)] = prod / a[j]
    return a


def build_family(tag: str, n: int | None = None, l: int | None = None, N: int | None = None,
                 case: int | None = None, overrides: dict | None = None,
                 cii_sign: int = -1) -> JFamily:
    """Build J for a family. Sizes: AI/AII/CI/CII/DIII use ``n``; BDI uses ``N`` and ``l``;
    SPECIAL_4_2 uses ``case`` and ``n``.

    ``overrides`` substitutes free parameters (names such as ``a2`` or ``c``) by Scalars.
    """
    tag = {"DIII": None}.get(tag, tag)
    if tag is None:
        if n is None:
            raise ValidationError("DIII needs n")
        tag = "DIII_even" if n % 2 == 0 else "DIII_odd"
    if tag not in FAMILIES:
        raise ValidationError(f"unknown J family {tag!r}")
    J: dict = {}
    a: dict = {}
    extra: dict = {}

    def need(x, what):
        if x is None or int(x) < 1:
            raise ValidationError(f"{tag} needs a positive {what}")
        return int(x)

    if tag == "AI":
        n = need(n, "n")
        g = GroupSpec("SU", n) if n >= 2 else _fail("AI needs n >= 2")
        for k in range(1, n + 1):
            a[k] = _p(f"a{k}")
            J[(k, k)] = a[k]
    elif tag == "AII":
        n = need(n, "n")
        g = GroupSpec("SU", 2 * n)
        q = g.q()
        for k in range(1, n + 1):
            a[2 * k] = _p(f"a{2 * k}")
            a[2 * k - 1] = q * a[2 * k]
            J[(2 * k, 2 * k - 1)] = -a[2 * k - 1]
            J[(2 * k - 1, 2 * k)] = a[2 * k]
    elif tag == "BDI":
        N = need(N, "N")
        g = GroupSpec("SO", N)
        l = need(l, "l")
        if l > N // 2:
            raise ValidationError(f"BDI needs l <= N//2, got l={l}, N={N}")
        q2r = g.q(2 * g.rho(l))
        lp = g.prime(l)
        for j in range(1, l + 1):
            a[j] = _p(f"a{j}")
            a[g.prime(j)] = q2r / a[j]
        for j, x in a.items():
            J[(j, j)] = x
        for j in range(l + 1, lp):
            J[(j, g.prime(j))] = g.q(-g.rho(j))
        for j in range(1, l + 1):
            key = (j, g.prime(j))
            J[key] = J.get(key, 0) + (1 - q2r) * g.q(-g.rho(j))
    elif tag == "CI":
        n = need(n, "n")
        g = GroupSpec("Sp", 2 * n)
        c = _p("c")
        extra["c"] = c
        for k in range(1, n + 1):
            a[k] = _p(f"a{k}")
            a[g.prime(k)] = c / a[k]
        for k, x in a.items():
            J[(k, k)] = x
    elif tag == "CII":
        n = need(n, "n")
        l = need(l, "l")
        if 2 * l > n:
            raise ValidationError(f"CII needs l <= n//2, got l={l}, n={n}")
        g = GroupSpec("Sp", 2 * n)
        e = 2 * g.rho(2 * l) - 2
        prod = g.q(e) * cii_sign
        a = _paired_params(g, l, prod)
        _skew_blocks(g, J, a, l)
        for j in range(2 * l + 1, n + 1):
            J[(j, g.prime(j))] = g.q(-g.rho(j))
            J[(g.prime(j), j)] = -g.q(g.rho(j))
        for j in range(1, 2 * l + 1):
            key = (j, g.prime(j))
            J[key] = J.get(key, 0) + (1 - g.q(e)) * g.q(-g.rho(j))
    elif tag == "DIII_even":
        n = need(n, "n")
        if n % 2:
            raise ValidationError("DIII_even needs even n")
        g = GroupSpec("SO", 2 * n)
        c = _p("c")
        extra["c"] = c
        a = _paired_params(g, n // 2, c)
        _skew_blocks(g, J, a, n // 2)
    elif tag == "DIII_odd":
        n = need(n, "n")
        if n % 2 == 0:
            raise ValidationError("DIII_odd needs odd n")
        g = GroupSpec("SO", 2 * n)
        s = _p(f"a{n}")
        c = s * s
        extra["c"] = c
        a = _paired_params(g, n // 2, c)
        a[n] = s
        a[g.prime(n)] = s
        _skew_blocks(g, J, a, n // 2)
        J[(g.prime(n), n)] = -a[n]
        J[(n, g.prime(n))] = a[g.prime(n)]
    else:  # SPECIAL_4_2
        if case not in SPECIAL_GROUPS:
            raise ValidationError(f"case must be 1..7, got {case!r}")
        n = need(n, "n")
        series, size, skew = SPECIAL_GROUPS[case]
        if case == 7 and n % 2 == 0:
            raise ValidationError("case 7 needs odd n")
        if case == 6 and n % 2:
            raise ValidationError("case 6 needs even n")
        if case == 5 and n % 2:
            raise ValidationError("case 5 needs even n")
        g = GroupSpec(series, size(n))
        diag = {j: g.q(g.rho(j)) for j in range(1, g.N + 1)}
        if not skew:
            J = {(j, j): x for j, x in diag.items()}
        else:
            # J0 = sum_k (-e_{2k,2k-1} + e_{2k-1,2k}), then J = J0 diag(q^rho)
            for k in range(1, g.N // 2 + 1):
                J[(2 * k, 2 * k - 1)] = -diag[2 * k - 1]
                J[(2 * k - 1, 2 * k)] = diag[2 * k]
        l = None

    free = sorted({name for x in list(a.values()) + list(extra.values()) for name in x.free_params()})
    if overrides:
        unknown = set(overrides) - set(free)
        if unknown:
            raise ValidationError(f"unknown parameters {sorted(unknown)}; free: {free}")
        subs = {k: Scalar.coerce(v) for k, v in overrides.items()}
        a = {k: x.evaluate(subs) for k, x in a.items()}
        extra = {k: x.evaluate(subs) for k, x in extra.items()}
        J = {k: Scalar.coerce(x).evaluate(subs) for k, x in J.items()}
        free = [f for f in free if f not in subs]
    for k, x in a.items():
        if not x:
            raise ValidationError(f"parameter a{k} must be nonzero")
    for k, x in extra.items():
        if not x:
            raise ValidationError(f"parameter {k} must be nonzero")
    N_ = g.N
    M = QMatrix(N_, {(i - 1, j - 1): x for (i, j), x in J.items()})
    params = {f"a{k}": x for k, x in a.items()}
    params.update(extra)
    return JFamily(tag, g, n if n is not None else N_, l, params, M, tuple(free))


def _fail(msg):
    raise ValidationError(msg)


def build_J(fam: JFamily) -> QMatrix:
    return fam.matrix


def certification_matrix() -> list[dict]:
    """Family instances covered by the reflection-equation certification."""
    out = []
    for n in (2, 3):
        out.append({"tag": "AI", "n": n})
    for n in (1, 2, 3):
        out.append({"tag": "AII", "n": n})
    for N in range(2, 8):
        for l in range(1, min(2, N // 2) + 1):
            out.append({"tag": "BDI", "N": N, "l": l})
    for n in (1, 2, 3):
        out.append({"tag": "CI", "n": n})
    for n in (2, 3, 4):
        out.append({"tag": "CII", "n": n, "l": 1})
    for n in (1, 2, 3, 4, 5):
        out.append({"tag": "DIII_even" if n % 2 == 0 else "DIII_odd", "n": n})
    for case, ns in ((1, (2, 3)), (2, (1, 2)), (3, (1, 2, 3)), (4, (1, 2, 3)), (5, (2, 4)),
                     (6, (2, 4)), (7, (1, 3, 5))):
        for n in ns:
            out.append({"tag": "SPECIAL_4_2", "case": case, "n": n})
    return out
