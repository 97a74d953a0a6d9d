"""Cut set functions of W-random graphs approaching a step graphon.

For each n, samples a few W-random graphs, computes Q_k of their cut set
functions and reports the Hausdorff distance to a certified net of
Q_k(rho_W).  Distances are reported as ``d_to_net`` with the net's error
bound, so the true distance lies within ``d_to_net +/- error``.
"""
import argparse
import csv
import statistics
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from quotient_convergence.analytic import StepGraphon, graph_cut_setfunction, sample_w_random_graph, step_graphon_net
from quotient_convergence.metric import hausdorff
from quotient_convergence.profile import quotient_set


@dataclass
class Config:
    weights: tuple = (Fraction(1, 2), Fraction(1, 2))
    values: tuple = ((Fraction(4, 5), Fraction(1, 10)), (Fraction(1, 10), Fraction(3, 5)))
    k: int = 2
    net_m: int = 32
    n: list = field(default_factory=lambda: [4, 6, 8, 10, 12, 14])
    samples: int = 5
    seed: int = 0


def run(cfg: Config):
    W = StepGraphon(cfg.weights, cfg.values)
    net = step_graphon_net(W, cfg.k, cfg.net_m)
    rows = []
    for n in cfg.n:
        ds = []
        for s in range(cfg.samples):
            G = sample_w_random_graph(W, n, cfg.seed + 1000 * n + s)
            ds.append(hausdorff(quotient_set(graph_cut_setfunction(G), cfg.k), net.quotient_set))
        rows.append({"n": n, "mean_d_to_net": statistics.fmean(ds), "min": min(ds), "max": max(ds),
                     "net_error": net.error_bound, "net_points": len(net.quotient_set)})
    return rows


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--n", type=int, nargs="+")
    p.add_argument("--samples", type=int)
    p.add_argument("--net-m", type=int)
    p.add_argument("--seed", type=int)
    a = p.parse_args(argv)
    cfg = Config()
    for name in ("n", "samples", "net_m", "seed"):
        if getattr(a, name) is not None:
            setattr(cfg, name, getattr(a, name))
    rows = run(cfg)
    w = csv.DictWriter(sys.stdout, fieldnames=list(rows[0]))
    w.writeheader()
    w.writerows(rows)


if __name__ == "__main__":
    main()
