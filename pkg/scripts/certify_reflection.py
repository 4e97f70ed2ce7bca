"""Check the reflection equation and w_J invariance for every J family in the
certification set, one line per instance.

    python scripts/certify_reflection.py [--no-wj] [--json out.json]
"""
import argparse
import json
import time
from dataclasses import asdict, dataclass

from qsym.qmatrix import build_R, reflection_check
from qsym.qmatrix.coideal import wJ_invariance_check
from qsym.qmatrix.families import build_family, certification_matrix


@dataclass
class Config:
    wj: bool = True
    json: str | None = None


def certify(cfg: Config) -> list[dict]:
    rows = []
    for inst in certification_matrix():
        t = time.time()
        fam = build_family(**inst)
        row = {"instance": inst, "group": fam.group.label(), "free": list(fam.free),
               "reflection": reflection_check(build_R(fam.group), fam.matrix).holds}
        if cfg.wj:
            row["wj"] = wJ_invariance_check(fam.group, fam.matrix).holds
        row["seconds"] = round(time.time() - t, 2)
        rows.append(row)
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--no-wj", dest="wj", action="store_false")
    ap.add_argument("--json", default=None, help="also write the rows here")
    cfg = Config(**vars(ap.parse_args()))
    rows = certify(cfg)
    for r in rows:
        tag = ",".join(f"{k}={v}" for k, v in r["instance"].items())
        flags = "RE " + ("ok" if r["reflection"] else "FAIL")
        if "wj" in r:
            flags += "  wJ " + ("ok" if r["wj"] else "FAIL")
        print(f"{tag:32s} {r['group']:8s} {flags}  ({r['seconds']}s)")
    bad = [r for r in rows if not r["reflection"] or r.get("wj") is False]
    print(f"{len(rows) - len(bad)}/{len(rows)} instances pass")
    if cfg.json:
        with open(cfg.json, "w") as fh:
            json.dump({"config": asdict(cfg), "rows": rows}, fh, indent=2, sort_keys=True)
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
