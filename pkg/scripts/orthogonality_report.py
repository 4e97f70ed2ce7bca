"""Gram matrix of the P_mu of one weight function, truncated in v.

Off-diagonal entries should vanish through v^(Q-1); the diagonal gives the
leading term of each norm.

    python scripts/orthogonality_report.py --system C --rank 2 --mult 1,1 --base 4 --degree 3
    python scripts/orthogonality_report.py --koornwinder --rank 2 --degree 2
"""
import argparse
from dataclasses import dataclass

from qsym.algebra import Scalar
from qsym.qspecial.operator import QDiffOp
from qsym.qspecial.product import scalar_product_truncated
from qsym.qspecial.solver import DMatrixCache, solve_P_mu
from qsym.qspecial.weightfn import koornwinder_spec, macdonald_spec
from qsym.rootdata import dominant_weights_up_to


@dataclass
class Config:
    system: str = "C"
    rank: int = 1
    mult: str = "1"
    base: int = 1
    koornwinder: bool = False
    degree: int = 3
    Q: int = 12


def build_spec(cfg: Config):
    if cfg.koornwinder:
        q = Scalar.vpow
        # the weight function of the DIII (odd) spherical functions
        return koornwinder_spec(cfg.rank, q(3), q(3), -q(1), -q(1), q(4), base_exp=2)
    mult = [int(m) for m in cfg.mult.split(",")]
    return macdonald_spec((cfg.system, cfg.rank), mult, cfg.base)


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    for f, default in vars(Config()).items():
        if isinstance(default, bool):
            ap.add_argument(f"--{f}", action="store_true")
        else:
            ap.add_argument(f"--{f}", type=type(default), default=default)
    cfg = Config(**vars(ap.parse_args()))
    spec = build_spec(cfg)
    op = QDiffOp(spec)
    cache = DMatrixCache(op)
    mus = dominant_weights_up_to(spec.system, cfg.degree)
    polys = [solve_P_mu(spec, mu, op=op, cache=cache) for mu in mus]
    L = [p.to_laurent() for p in polys]
    print(f"{spec.system.label()}  {spec.describe()}  Q={cfg.Q}")
    bad = 0
    for i, p in enumerate(polys):
        norm = scalar_product_truncated(L[i], L[i], spec, cfg.Q)
        lead = norm.leading()
        others = []
        for j in range(len(polys)):
            if j != i and scalar_product_truncated(L[i], L[j], spec, cfg.Q).value.series(cfg.Q - 1):
                others.append(polys[j].mu)
        bad += len(others)
        lead_text = "0" if lead is None else f"{lead[1]} v^{lead[0]}"
        print(f"mu={tuple(str(x) for x in p.mu.coords)}  norm ~ {lead_text}  nonorthogonal to {others or 'none'}")
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
