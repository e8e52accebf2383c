"""Classification survey over a range of levels.

For each n, list the local current subgroups, the maximal phase-one group and
any exceptional invariants, together with the verification outcome. Writes a
JSON-lines file (one record per level) and prints a short table.

    python3 scripts/survey_levels.py --n-min 1 --n-max 40 --out survey.jsonl
"""

import argparse
import json
import time
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Optional

from n2minimal.currents import local_subgroups, max_cyclic
from n2minimal.extensions import classify
from n2minimal.labels import spectrum


@dataclass
class SurveyConfig:
    n_min: int = 1
    n_max: int = 32
    out: Optional[Path] = None


def survey_one(n):
    t0 = time.perf_counter()
    cl = classify(n)
    mc = max_cyclic(n)
    subs = local_subgroups(n)
    return {
        "n": n,
        "sectors": len(spectrum(n)),
        "local_subgroups": [H.structure_name() for H in subs],
        "max_cyclic": mc.structure_name(),
        "max_cyclic_case": mc.details["case"],
        "branch": mc.details.get("branch"),
        "contains_all_local": all(H.forms <= mc.forms for H in subs),
        "exceptional": [e.name for e in cl.entries if e.theta.kind == "exceptional"],
        "verified": cl.passed,
        "seconds": round(time.perf_counter() - t0, 4),
    }


def run(cfg: SurveyConfig):
    rows = [survey_one(n) for n in range(cfg.n_min, cfg.n_max + 1)]
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(json.dumps({"config": {k: str(v) for k, v in asdict(cfg).items()}}) + "\n")
            for r in rows:
                fh.write(json.dumps(r) + "\n")
    print(f"{'n':>3} {'case':>4} {'max cyclic':<14} {'#local':>6} {'exceptional':<12} ok")
    for r in rows:
        print(f"{r['n']:>3} {r['max_cyclic_case']:>4} {r['max_cyclic']:<14} "
              f"{len(r['local_subgroups']):>6} {','.join(r['exceptional']) or '-':<12} "
              f"{'yes' if r['verified'] and r['contains_all_local'] else 'NO'}")
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-min", type=int, default=SurveyConfig.n_min)
    ap.add_argument("--n-max", type=int, default=SurveyConfig.n_max)
    ap.add_argument("--out", type=Path)
    args = ap.parse_args()
    run(SurveyConfig(args.n_min, args.n_max, args.out))


if __name__ == "__main__":
    main()
