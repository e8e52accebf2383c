"""Tabulate the n = 2 mod 4 construction: M, the phase of (0, M/2), the branch
taken and whether the half-label exponent vanishes.

    python3 scripts/case_c_table.py --n-max 126
"""

import argparse
from dataclasses import dataclass

from n2minimal.currents import max_cyclic


@dataclass
class TableConfig:
    n_max: int = 62


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-max", type=int, default=TableConfig.n_max)
    cfg = TableConfig(**vars(ap.parse_args()))

    print(f"{'n':>4} {'M':>4} {'w(0,M/2)':>9} {'M/2 even':>8} {'premises':>8} {'exp':>5}  branch   group")
    for n in range(2, cfg.n_max + 1, 4):
        g = max_cyclic(n)
        d = g.details
        print(f"{n:>4} {d['M']:>4} {d['omega_0_half']:>9} {str(d['half_label_valid']):>8} "
              f"{str(d['half_label_premises']):>8} {d['half_label_exponent']:>5}  "
              f"{d['branch']:<8} {g.structure_name()}")


if __name__ == "__main__":
    main()
