"""From a symmetric space and a z-weight lambda to its zonal spherical function
written as a Macdonald or Koornwinder polynomial in the x variables.

    python scripts/spherical_pipeline.py --case 7 --n 5 --lam 1,1,0,0,0
    python scripts/spherical_pipeline.py --case 5 --n 4 --lam 1,1,0,0
"""
import argparse
import json
from dataclasses import dataclass

from qsym.qspecial.operator import QDiffOp
from qsym.qspecial.solver import verify_eigen
from qsym.spherical import get_case, spherical_parameters, variable_map, zonal_restriction


@dataclass
class Config:
    case: int = 7
    n: int = 5
    lam: str = "1,1,0,0,0"


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    for f, default in vars(Config()).items():
        ap.add_argument(f"--{f}", type=type(default), default=default)
    cfg = Config(**vars(ap.parse_args()))
    lam = tuple(int(x) for x in cfg.lam.split(","))
    row = get_case(cfg.case)
    print(json.dumps(row.to_json(cfg.n), sort_keys=True))
    for line in variable_map(cfg.case, cfg.n).describe():
        print(line)
    spec = spherical_parameters(cfg.case, cfg.n)
    print("weight function:", json.dumps(spec.describe(), sort_keys=True))
    P, mu = zonal_restriction(cfg.case, cfg.n, lam)
    print(f"lambda={lam} -> mu={tuple(str(x) for x in mu.coords)}")
    print("P =", P.to_text())
    ok = verify_eigen(QDiffOp(spec), P)
    print("eigenfunction of D_sigma:", ok)
    return 0 if ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
