"""Emit every reference dataset (CSV plus matplotlib script) into one directory.

    python scripts/reproduce_figures.py [outdir]
"""

import sys
from pathlib import Path

from nondiophantine.cli import main

RUNS = {
    "lightcone_fechner_origin": ["lightcone", "--f", "fechner:mu=10,nu=-20", "--apex", "0p,0p,0p"],
    "lightcone_fechner_far_a": ["lightcone", "--f", "fechner:mu=10,nu=-20", "--apex", "10000,10001,10002", "--x1", "0,20000", "--x2", "0,20000"],
    "lightcone_fechner_far_b": ["lightcone", "--f", "fechner:mu=10,nu=-20", "--apex", "10000,5000,10000", "--x1", "0,20000", "--x2", "0,20000"],
    "lightcone_fechner_far_c": ["lightcone", "--f", "fechner:mu=10,nu=-20", "--apex", "10000,10000,5000", "--x1", "0,20000", "--x2", "0,20000"],
    "lightcone_fechner_far_d": ["lightcone", "--f", "fechner:mu=10,nu=-20", "--apex", "5000,10000,10001", "--x1", "0,20000", "--x2", "0,20000"],
    "lightcone_tan_offset": ["lightcone", "--f", "tan:L=1", "--apex", "0,-0.4,-0.2"],
    "lightcone_tan_near_origin": ["lightcone", "--f", "tan:L=1", "--apex", "0.01,-0.02,-0.03"],
    "beta_tan": ["beta", "--kind", "tan", "--L", "1", "--n", "101"],
    "beta_artanh": ["beta", "--kind", "artanh", "--L", "1", "--n", "101"],
    "beta_fechner": ["beta", "--kind", "fechner", "--umax", "6"],
    "friedman_tan": ["friedman", "--f", "tan:L=20", "--T0", "one"],
}


def run(outdir: Path) -> int:
    outdir.mkdir(parents=True, exist_ok=True)
    for name, args in RUNS.items():
        code = main(args + ["--out", str(outdir / f"{name}.csv"), "--plot-script"])
        if code != 0:
            print(f"{name}: exit {code}", file=sys.stderr)
            return code
    return 0


if __name__ == "__main__":
    sys.exit(run(Path(sys.argv[1] if len(sys.argv) > 1 else "datasets")))
