"""Command-line front end.

Scalar arguments are expressions in q: integers, fractions, ``q``, ``q^3``,
``q^(1/2)``, ``-q``, sums, products and quotients, and names of free parameters
such as ``a2``. The default truncation order comes from ``QSYM_ORDER`` when set.

Exit codes: 0 success, 1 a property check failed, 2 invalid input, 3 unimplemented.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import asdict, dataclass, field, fields
from fractions import Fraction
from math import lcm

from .algebra import parse_scalar, q_denominator
from .errors import LatticeError, QsymError, UnimplementedCase, ValidationError

EXIT_OK, EXIT_CHECK, EXIT_INVALID, EXIT_UNIMPLEMENTED = 0, 1, 2, 3
FORMATS = ("json", "text", "latex")
ORDER_ENV = "QSYM_ORDER"


@dataclass
class RunConfig:
    """Everything a run depends on; ``to_json`` round-trips through ``--config``."""

    command: str = ""
    group: str | None = None
    N: int | None = None
    family: str | None = None
    n: int | None = None
    l: int | None = None
    case: int | None = None
    system: str | None = None
    rank: int | None = None
    mult: list | None = None
    base: str | None = None
    koornwinder: list | None = None
    mu: list | None = None
    degree: int | None = None
    lam: list | None = None
    spin: bool = False
    overrides: dict = field(default_factory=dict)
    check: list = field(default_factory=list)
    verify: list = field(default_factory=list)
    Q: int | None = None
    seed: int = 0
    format: str = "json"

    def to_json(self) -> dict:
        return {k: v for k, v in asdict(self).items() if v not in (None, [], {})}

    @classmethod
    def from_json(cls, data: dict) -> "RunConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValidationError(f"unknown config keys {sorted(unknown)}")
        return cls(**data)


def default_order() -> int:
    raw = os.environ.get(ORDER_ENV)
    if raw is None:
        return 12
    try:
        k = int(raw)
    except ValueError:
        raise ValidationError(f"{ORDER_ENV} must be an integer, got {raw!r}") from None
    if k < 1:
        raise ValidationError(f"{ORDER_ENV} must be positive")
    return k


# -- argument helpers ------------------------------------------------------------


def _ints(text: str) -> list:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _words(text: str) -> list:
    return [w.strip() for w in text.split(",") if w.strip()]


def _weights(text: str) -> list:
    # "2" or "1,0" or a semicolon-separated list "1,0;1,1"
    return [[str(Fraction(x)) for x in part.split(",")] for part in text.split(";") if part.strip()]


def _assignments(text: str) -> dict:
    out = {}
    for item in _words(text):
        if "=" not in item:
            raise argparse.ArgumentTypeError(f"expected name=value, got {item!r}")
        k, v = item.split("=", 1)
        out[k.strip()] = v.strip()
    return out


# -- commands ----------------------------------------------------------------------


def cmd_rmatrix(cfg: RunConfig):
    from .qmatrix import GroupSpec, build_R, yang_baxter_check
    from .qmatrix.coideal import centrality_check

    if cfg.group is None or cfg.N is None:
        raise ValidationError("rmatrix needs --group and --N")
    g = GroupSpec(cfg.group, cfg.N)
    R = build_R(g)
    out = {"command": "rmatrix", "group": g.label(), "N": g.N, "D": g.D, "R": R.to_json(g.D), "checks": []}
    ok = True
    for name in cfg.check:
        if name == "yb":
            rep = yang_baxter_check(R, g.N).to_json()
        elif name == "centrality":
            report, s = centrality_check(g)
            rep = report.to_json()
            rep["scalar"] = s.to_text(g.D) if s is not None else None
        else:
            raise ValidationError(f"unknown check {name!r} (use yb, centrality)")
        ok &= rep["holds"]
        out["checks"].append(rep)
    if cfg.check:
        out["holds"] = ok
    text = R.to_text(g.D)
    return out, ok, text, _latex_matrix(R, g.D)


def cmd_reflect(cfg: RunConfig):
    from .qmatrix import build_R, reflection_check
    from .qmatrix.coideal import K_reflection_check, wJ_invariance_check
    from .qmatrix.families import build_family

    if cfg.family is None:
        raise ValidationError("reflect needs --family")
    tag = cfg.family.upper()
    if tag in ("SPECIAL", "SPECIAL_4_2"):
        tag = "SPECIAL_4_2"
    if tag == "SPECIAL_4_2" and cfg.case is None:
        raise ValidationError("the special family needs --case")
    D = _family_D(tag, cfg)
    overrides = {k: parse_scalar(v, D) for k, v in cfg.overrides.items()}
    fam = build_family(tag, n=cfg.n, l=cfg.l, N=cfg.N, case=cfg.case, overrides=overrides or None)
    g = fam.group
    checks = cfg.check or ["reflection"]
    reports = []
    for name in checks:
        if name == "reflection":
            reports.append(reflection_check(build_R(g), fam.matrix).to_json())
        elif name == "wj":
            reports.append(wJ_invariance_check(g, fam.matrix).to_json())
        elif name == "k":
            reports.append(K_reflection_check(g, fam.matrix).to_json())
        else:
            raise ValidationError(f"unknown check {name!r} (use reflection, wj, k)")
    ok = all(r["holds"] for r in reports)
    out = {"command": "reflect", "family": fam.to_json(), "checks": reports, "holds": ok}
    lines = [f"{fam.tag} {g.label()}: " + ", ".join(f"{r['identity']}: {r['holds']}" for r in reports)]
    lines.append(fam.matrix.to_text(g.D))
    return out, ok, "\n".join(lines), _latex_matrix(fam.matrix, g.D)


def _family_D(tag: str, cfg: RunConfig) -> int:
    from .qmatrix.families import SPECIAL_GROUPS
    from .qmatrix.groups import GroupSpec

    series = {"AI": "SU", "AII": "SU", "BDI": "SO", "CI": "Sp", "CII": "Sp"}.get(tag)
    if tag.startswith("DIII"):
        series = "SO"
    try:
        if tag == "SPECIAL_4_2":
            s, size, _ = SPECIAL_GROUPS[cfg.case]
            return GroupSpec(s, size(cfg.n or 1)).D
        if tag == "BDI":
            return GroupSpec("SO", cfg.N or 2).D
        if tag == "AI":
            return GroupSpec("SU", cfg.n or 2).D
        if series:
            return GroupSpec(series, 2 * (cfg.n or 1)).D
    except (KeyError, QsymError):
        pass
    return 1


def _macdonald_spec(cfg: RunConfig):
    from .qspecial.weightfn import koornwinder_spec, macdonald_spec
    from .rootdata import build_root_system

    if cfg.system is None or cfg.rank is None:
        raise ValidationError("macdonald needs --system and --rank")
    stype = cfg.system.upper()
    base = cfg.base or "1"
    if cfg.koornwinder is not None or stype == "BC":
        if stype != "BC":
            raise ValidationError("Koornwinder parameters need --system BC")
        if not cfg.koornwinder or len(cfg.koornwinder) != 5:
            raise ValidationError("--koornwinder takes five expressions a,b,c,d,t")
        try:
            base_q = Fraction(base)
        except ValueError:
            raise ValidationError(f"--base is an exponent of q, got {base!r}") from None
        D = lcm(base_q.denominator, *(q_denominator(x) for x in cfg.koornwinder))
        vals = [parse_scalar(x, D) for x in cfg.koornwinder]
        bad = [x for x, s in zip(cfg.koornwinder, vals) if s.free_params()]
        if bad:
            raise ValidationError(f"Koornwinder parameters must be numeric in q, got {bad}")
        return koornwinder_spec(cfg.rank, *vals, base_exp=int(base_q * D), D=D)
    rs = build_root_system(stype, cfg.rank)
    if cfg.mult is None:
        raise ValidationError("macdonald needs --mult")
    try:
        mult = [Fraction(x) for x in cfg.mult]
        base_q = Fraction(base)
    except ValueError:
        raise ValidationError("multiplicities and --base must be rational numbers") from None
    return macdonald_spec(rs, mult, base=base_q)


def _mu_list(cfg: RunConfig, rs):
    from .rootdata import Weight, dominant_weights_up_to

    if cfg.mu is not None:
        return [Weight.of([Fraction(x) for x in m]) for m in cfg.mu]
    if cfg.degree is not None:
        return dominant_weights_up_to(rs, cfg.degree)
    raise ValidationError("give --mu or --degree")


def _verify(spec, polys, op, names, Q, seed, degree):
    from .qspecial.operator import phi_oracle_check
    from .qspecial.product import random_invariant_pairs, scalar_product_truncated, selfadjointness_check
    from .qspecial.solver import verify_eigen

    D = spec.D
    out = {}
    ok = True
    for name in names:
        if name == "eigen":
            rows = [
                {"mu": [str(x) for x in p.mu.coords], "monic": p.is_monic(), "triangular": p.support_ok(),
                 "eigen": p.method == "triangular" and verify_eigen(op, p)}
                for p in polys
            ]
            good = all(r["monic"] and r["triangular"] and r["eigen"] for r in rows)
            out["eigen"] = {"holds": good, "polynomials": rows}
        elif name == "ortho":
            L = [p.to_laurent() for p in polys]
            pairs = []
            good = True
            for i in range(len(polys)):
                for j in range(i, len(polys)):
                    s = scalar_product_truncated(L[i], L[j], spec, Q)
                    passed = (not s.is_zero()) if i == j else s.is_zero()
                    good &= passed
                    pairs.append({"mu": [str(x) for x in polys[i].mu.coords],
                                  "nu": [str(x) for x in polys[j].mu.coords],
                                  "value": s.to_text(D), "holds": passed})
            out["ortho"] = {"holds": good, "order": Q, "pairs": pairs}
        elif name == "adjoint":
            rep = selfadjointness_check(op, random_invariant_pairs(spec, 10, seed, degree or 3), Q)
            good = rep.holds
            out["adjoint"] = {"holds": good, "order": Q, "seed": seed, "pairs": 10}
        elif name == "oracle":
            good = phi_oracle_check(spec, order=Q)
            out["oracle"] = {"holds": good, "order": Q}
        else:
            raise ValidationError(f"unknown verification {name!r} (use eigen, ortho, adjoint, oracle)")
        ok &= good
    return out, ok


def cmd_macdonald(cfg: RunConfig):
    from .qspecial.operator import QDiffOp
    from .qspecial.solver import DMatrixCache, solve_P_mu

    spec = _macdonald_spec(cfg)
    op = QDiffOp(spec)
    cache = DMatrixCache(op)
    polys = [solve_P_mu(spec, mu, op=op, cache=cache) for mu in _mu_list(cfg, spec.system)]
    Q = cfg.Q if cfg.Q is not None else default_order()
    out = {"command": "macdonald", "parameters": spec.describe(), "polynomials": [p.to_json() for p in polys]}
    ok = True
    if cfg.verify:
        out["verify"], ok = _verify(spec, polys, op, cfg.verify, Q, cfg.seed, cfg.degree)
        out["holds"] = ok
    text = "\n".join(f"P{_wt(p.mu)} = {p.to_text()}" for p in polys)
    latex = "\n".join(p.to_latex() for p in polys)
    return out, ok, text, latex


def cmd_spherical(cfg: RunConfig):
    from .qspecial.operator import QDiffOp
    from .qspecial.solver import DMatrixCache, lower_support, solve_P_mu
    from .spherical import get_case, spherical_parameters, variable_map

    if cfg.case is None or cfg.n is None:
        raise ValidationError("spherical needs --case and --n")
    row = get_case(cfg.case)
    if cfg.case in (1, 2):
        raise UnimplementedCase("type-A cases (1), (2) are not implemented")
    if cfg.lam is None:
        raise ValidationError("spherical needs --lambda")
    vm = variable_map(cfg.case, cfg.n, cfg.spin)
    mu = vm.lambda_to_mu(cfg.lam)
    spec = spherical_parameters(cfg.case, cfg.n)
    if mu.half:
        raise UnimplementedCase("spin sector: half-integral mu is not a Laurent polynomial in x")
    if not spec.system.is_dominant(mu):
        raise ValidationError(f"mu = {mu} is not dominant for {spec.system.label()}")
    op = QDiffOp(spec)
    cache = DMatrixCache(op)
    P = solve_P_mu(spec, mu, op=op, cache=cache)
    Q = cfg.Q if cfg.Q is not None else default_order()
    out = {
        "command": "spherical",
        "case": row.to_json(cfg.n),
        "variable_map": vm.describe(),
        "lambda": list(cfg.lam),
        "mu": [str(x) for x in mu.coords],
        "parameters": spec.describe(),
        "polynomial": P.to_json(),
        "provenance": {
            "weight_function": spec.kind,
            "restricted_system": spec.system.label(),
            "solver": P.method,
            "J": row.to_json()["J"],
        },
    }
    ok = True
    if cfg.verify:
        # P_mu together with every P_nu, nu < mu, so that orthogonality is tested
        polys = [solve_P_mu(spec, nu, op=op, cache=cache) for nu in lower_support(mu, spec.system)]
        out["verify"], ok = _verify(spec, polys, op, cfg.verify, Q, cfg.seed, cfg.degree)
        out["holds"] = ok
    text = "\n".join([f"case ({row.case}) {row.space}, {spec.system.label()}", *vm.describe(),
                      f"parameters: {json.dumps(spec.describe(), sort_keys=True)}",
                      f"P{_wt(mu)} = {P.to_text()}"])
    return out, ok, text, P.to_latex()


def _wt(w) -> str:
    return "(" + ",".join(str(x) for x in w.coords) + ")"


def _latex_matrix(M, D) -> str:
    from .qspecial.solver import _latex_scalar

    rows = [" & ".join(_latex_scalar(x.to_text(D)) for x in r) for r in M.rows()]
    return "\\begin{pmatrix}\n" + " \\\\\n".join(rows) + "\n\\end{pmatrix}"


COMMANDS = {"rmatrix": cmd_rmatrix, "reflect": cmd_reflect, "macdonald": cmd_macdonald, "spherical": cmd_spherical}


# -- parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default=None, help="output format (default json)")
    common.add_argument("--config", default=None, help="JSON file with RunConfig fields; flags override it")
    common.add_argument("--Q", type=int, default=None, help=f"truncation order (default ${ORDER_ENV} or 12)")
    common.add_argument("--seed", type=int, default=None, help="seed for randomized checks")

    p = argparse.ArgumentParser(prog="qsym", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("rmatrix", parents=[common], help="R-matrix of SU(N), SO(N) or Sp(N) on V (x) V")
    r.add_argument("--group", choices=["SU", "SO", "Sp", "su", "so", "sp"])
    r.add_argument("--N", type=int)
    r.add_argument("--check", type=_words, default=None, help="comma list of: yb, centrality")

    f = sub.add_parser("reflect", parents=[common], help="J families and the reflection equation")
    f.add_argument("--family", help="AI, AII, BDI, CI, CII, DIII or SPECIAL (with --case)")
    f.add_argument("--n", type=int)
    f.add_argument("--l", type=int)
    f.add_argument("--N", type=int)
    f.add_argument("--case", type=int)
    f.add_argument("--override", dest="overrides", type=_assignments, default=None,
                   help="substitute free parameters, e.g. a1=1,a2=q^2")
    f.add_argument("--check", type=_words, default=None, help="comma list of: reflection (default), wj, k")

    m = sub.add_parser("macdonald", parents=[common], help="Macdonald / Koornwinder polynomials P_mu")
    m.add_argument("--system", help="B, C, D or BC")
    m.add_argument("--rank", type=int)
    m.add_argument("--mult", type=lambda s: _words(s), default=None,
                   help="multiplicities per squared root length, in the order 2,4,1")
    m.add_argument("--base", default=None, help="polynomial base as a power of q (default 1)")
    m.add_argument("--koornwinder", type=_words, default=None, help="a,b,c,d,t as expressions in q")
    m.add_argument("--mu", type=_weights, default=None, help="dominant weight(s), e.g. 2 or 1,0;1,1")
    m.add_argument("--degree", type=int, default=None, help="all dominant mu with |mu|_1 <= degree")
    m.add_argument("--verify", type=_words, default=None, help="comma list of: eigen, ortho, adjoint, oracle")

    s = sub.add_parser("spherical", parents=[common], help="zonal spherical functions of a symmetric space")
    s.add_argument("--case", type=int)
    s.add_argument("--n", type=int)
    s.add_argument("--lambda", dest="lam", type=_ints, default=None, help="weight in z-coordinates, e.g. 1,1,0,0,0")
    s.add_argument("--spin", action="store_true", default=None, help="allow half-integral mu in case (3)")
    s.add_argument("--verify", type=_words, default=None, help="comma list of: eigen, ortho, adjoint, oracle")
    return p


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    base = {}
    if ns.config:
        try:
            with open(ns.config) as fh:
                base = json.load(fh)
        except (OSError, json.JSONDecodeError) as e:
            raise ValidationError(f"cannot read config {ns.config}: {e}") from None
        if base.get("command", ns.command) != ns.command:
            raise ValidationError(f"config is for {base['command']!r}, not {ns.command!r}")
    known = {f.name for f in fields(RunConfig)}
    for k, v in vars(ns).items():
        if k in known and v is not None:
            base[k] = v
    base["command"] = ns.command
    cfg = RunConfig.from_json(base)
    if cfg.format not in FORMATS:
        raise ValidationError(f"format must be one of {FORMATS}")
    return cfg


def _emit(cfg: RunConfig, payload, text: str, latex: str, stream) -> None:
    if cfg.format == "json":
        payload = dict(payload)
        payload["config"] = cfg.to_json()
        stream.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    elif cfg.format == "latex":
        stream.write(latex + "\n")
    else:
        stream.write(text + "\n")


def _error(cfg_format: str, kind: str, message: str, code: int, stream) -> int:
    if cfg_format == "json":
        stream.write(json.dumps({"error": kind, "message": message, "exit_code": code}, sort_keys=True, indent=2) + "\n")
    print(f"{kind}: {message}", file=sys.stderr)
    return code


def main(argv=None, stream=None) -> int:
    stream = stream or sys.stdout
    ns = build_parser().parse_args(argv)
    fmt = ns.format or "json"
    try:
        cfg = config_from_args(ns)
        fmt = cfg.format
        payload, ok, text, latex = COMMANDS[cfg.command](cfg)
    except UnimplementedCase as e:
        return _error(fmt, "unimplemented", str(e), EXIT_UNIMPLEMENTED, stream)
    except LatticeError as e:
        return _error(fmt, "lattice", str(e), EXIT_INVALID, stream)
    except ValidationError as e:
        return _error(fmt, "validation", str(e), EXIT_INVALID, stream)
    _emit(cfg, payload, text, latex, stream)
    return EXIT_OK if ok else EXIT_CHECK


if __name__ == "__main__":
    sys.exit(main())
