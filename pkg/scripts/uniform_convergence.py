"""Normalized uniform (and sparse paving) matroid ranks against a lambda_c net.

    python3 scripts/uniform_convergence.py --c 1/3 --k 2 --n 6 12 24 48
"""
import argparse
import csv
import sys
from dataclasses import asdict, dataclass, field, fields
from fractions import Fraction

from quotient_convergence.cli import uniform_convergence_rows


@dataclass
class Config:
    c: Fraction = Fraction(1, 2)
    k: int = 2
    n: list = field(default_factory=lambda: [4, 8, 16, 32, 64])
    net_m: int = 256
    paving_seed: int | None = 0
    out: str | None = None


def parse(argv=None) -> Config:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--c", type=Fraction)
    p.add_argument("--k", type=int)
    p.add_argument("--n", type=int, nargs="+")
    p.add_argument("--net-m", type=int)
    p.add_argument("--paving-seed", type=int)
    p.add_argument("--no-paving", action="store_true")
    p.add_argument("--out", help="CSV path (default: stdout)")
    a = vars(p.parse_args(argv))
    cfg = Config(**{f.name: a[f.name] for f in fields(Config) if a.get(f.name) is not None})
    if a["no_paving"]:
        cfg.paving_seed = None
    return cfg


def main(argv=None):
    cfg = parse(argv)
    rows = uniform_convergence_rows(cfg.c, cfg.n, cfg.k, cfg.net_m, paving_seed=cfg.paving_seed)
    print(f"config: {asdict(cfg)}", file=sys.stderr)
    fh = open(cfg.out, "w", newline="") if cfg.out else sys.stdout
    w = csv.DictWriter(fh, fieldnames=list(rows[0]))
    w.writeheader()
    w.writerows(rows)
    if cfg.out:
        fh.close()


if __name__ == "__main__":
    main()
