"""Command-line entry point: ``qconv <subcommand> [flags]``.

Data goes to stdout (or files under ``--out-dir``); diagnostics go to
stderr.  Every flag can also be given in a JSON file passed with
``--config``; flags on the command line win.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import random
import sys
import time
import warnings
from fractions import Fraction

from .analytic import lambda_c_net
from .core import BudgetError, DomainError
from .formats import (
    ParseError,
    dump_quotient_set,
    fmt_value,
    parse_matroid,
    parse_setfunction,
    read_text,
)
from .matroid import (
    BRUTEFORCE_GROUND,
    has_u24_minor_bruteforce,
    is_binary_via_Q6,
    normalize,
    random_sparse_paving_family,
    sparse_paving_rank,
    uniform_rank,
)
from .metric import hausdorff, pseudometric_d
from .profile import DEFAULT_BUDGET, quotient_set
from .tower import build_sofic_tower, validate_tower, verify_sofic_guarantee


PAVING_MAX_GROUND = 16


class UsageError(Exception):
    pass


def _input(kind):
    return lambda path: (kind, path)


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from None


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a list of integers: {text!r}") from None


def _add_inputs(p):
    p.add_argument("--setfn", dest="inputs", action="append", type=_input("setfn"), metavar="FILE",
                   help="set function file")
    p.add_argument("--matroid", dest="inputs", action="append", type=_input("matroid"), metavar="FILE",
                   help="matroid file (its normalized rank function is used)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qconv", description="Quotient profiles and quotient-convergence experiments.")
    parser.add_argument("--config", help="JSON file of flag defaults")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, fmt):
        p.add_argument("--out-dir", help="write output files here instead of stdout")
        p.add_argument("--format", choices=["json", "csv"], default=fmt)
        p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="enumeration budget")

    p = sub.add_parser("profile", help="enumerate Q_k of a set function or matroid")
    _add_inputs(p)
    p.add_argument("--k", type=int, required=False)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--timing", action="store_true", help="include runtime in the summary")
    common(p, "csv")

    p = sub.add_parser("distance", help="truncated quotient pseudometric between two inputs")
    _add_inputs(p)
    p.add_argument("--k-max", type=int)
    common(p, "json")

    p = sub.add_parser("converge-uniform", help="Q_k of normalized uniform matroids against a lambda_c net")
    p.add_argument("--c", type=_rational)
    p.add_argument("--n-list", type=_int_list)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--net-m", type=int, default=256)
    p.add_argument("--paving", action="store_true", help="also run random sparse paving matroids (needs --seed)")
    p.add_argument("--seed", type=int)
    common(p, "csv")

    p = sub.add_parser("binary-check", help="binary test via Q_6 pattern and brute-force minors")
    _add_inputs(p)
    common(p, "json")

    p = sub.add_parser("tower-demo", help="sofic tower of a finite set function")
    _add_inputs(p)
    p.add_argument("--k-max", type=int, default=2)
    p.add_argument("--levels", type=int, default=3)
    common(p, "csv")
    parser.subcommands = sub.choices
    return parser


def _load_config(argv):
    pre = argparse.ArgumentParser(add_help=False, allow_abbrev=False)  # else --c matches --config
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if not known.config:
        return {}
    try:
        with open(known.config, encoding="utf-8") as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise UsageError(f"cannot read config {known.config}: {e}") from None
    if not isinstance(cfg, dict):
        raise UsageError("config file must hold a JSON object")
    return {k.replace("-", "_"): v for k, v in cfg.items()}


def _apply_config(parser, args, cfg, argv):
    if not cfg:
        return args
    conv = {}
    for k, v in cfg.items():
        if k == "c":
            v = Fraction(str(v))
        elif k == "n_list" and isinstance(v, str):
            v = _int_list(v)
        conv[k] = v
    # appended flags would extend a list default instead of replacing it
    inputs = conv.pop("inputs", None)
    parser.subcommands[args.command].set_defaults(**conv)
    args = parser.parse_args(argv)
    if getattr(args, "inputs", False) is None and inputs is not None:
        args.inputs = [tuple(x) for x in inputs]
    return args


def _load_function(item):
    kind, path = item
    text = read_text(path)
    if kind == "setfn":
        return parse_setfunction(text, path)
    return normalize(parse_matroid(text, path))


def _one_input(args):
    if not args.inputs or len(args.inputs) != 1:
        raise UsageError("exactly one of --setfn/--matroid is required")
    return args.inputs[0]


def _emit(args, name: str, text: str):
    if args.out_dir:
        os.makedirs(args.out_dir, exist_ok=True)
        with open(os.path.join(args.out_dir, name), "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    if rows:
        w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
    return buf.getvalue()


def cmd_profile(args):
    if args.k is None or args.k < 1:
        raise UsageError("--k must be a positive integer")
    f = _load_function(_one_input(args))
    t0 = time.perf_counter()
    Q = quotient_set(f, args.k, budget=args.budget, workers=args.workers)
    elapsed = time.perf_counter() - t0
    summary = {"k": Q.k, "ground_size": f.n, "points": len(Q), "orbit_representatives": True}
    if args.timing:
        summary["runtime_s"] = elapsed
    print(f"Q_{args.k}: {len(Q)} canonical points in {elapsed:.3f}s", file=sys.stderr)
    if args.format == "csv":
        _emit(args, f"quotients_k{Q.k}.csv", dump_quotient_set(Q))
    else:
        pts = [[fmt_value(x) for x in p] for p in Q.sorted_points()]
        _emit(args, f"quotients_k{Q.k}.json", json.dumps({"k": Q.k, "points": pts}) + "\n")
    if args.out_dir:
        _emit(args, "summary.json", json.dumps(summary, sort_keys=True) + "\n")


def cmd_distance(args):
    if args.k_max is None or args.k_max < 1:
        raise UsageError("--k-max must be a positive integer")
    if not args.inputs or len(args.inputs) != 2:
        raise UsageError("distance needs exactly two inputs (--setfn/--matroid)")
    f, g = (_load_function(x) for x in args.inputs)
    rep = pseudometric_d(f, g, args.k_max, budget=args.budget)
    if args.format == "json":
        _emit(args, "distance.json", rep.to_json() + "\n")
    else:
        rows = [{"k": k, "d_H": d, "weighted": 2.0**-k * d} for k, d in enumerate(rep.per_k, start=1)]
        _emit(args, "distance.csv", _csv(rows))


def uniform_convergence_rows(c: Fraction, n_list, k: int, m: int, budget=DEFAULT_BUDGET, paving_seed=None):
    """Rows ``(n, r, d_H^k to the lambda_c net, net error, ...)``.

    Paving columns need the full rank table and are left empty above
    ``PAVING_MAX_GROUND`` elements.
    """
    net = lambda_c_net(k, c, m, budget=budget)
    rng = random.Random(paving_seed) if paving_seed is not None else None
    rows = []
    for n in n_list:
        r = math.floor(c * n)
        if r < 1:
            raise DomainError(f"r = floor(c*n) = {r} for n = {n}; need r >= 1")
        f = normalize(uniform_rank(n, r))
        d = hausdorff(quotient_set(f, k, budget=budget), net.quotient_set)
        row = {"n": n, "r": r, "d_to_net": d, "net_error": net.error_bound,
               "lower": max(0.0, d - net.error_bound), "upper": d + net.error_bound}
        if rng is not None and n > PAVING_MAX_GROUND:
            row.update(dict.fromkeys(("paving_members", "paving_sandwich", "paving_d_to_uniform", "paving_d_to_net")))
        elif rng is not None:
            fam = random_sparse_paving_family(n, r, rng)
            rho_h = normalize(sparse_paving_rank(fam))
            table = f.to_table().values
            sandwich = all(table[X] - Fraction(1, n) <= v <= table[X] for X, v in enumerate(rho_h.values))
            Qh = quotient_set(rho_h, k, budget=budget)
            row.update({"paving_members": len(fam.H), "paving_sandwich": sandwich,
                        "paving_d_to_uniform": hausdorff(Qh, quotient_set(f, k, budget=budget)),
                        "paving_d_to_net": hausdorff(Qh, net.quotient_set)})
        rows.append(row)
    return rows


def cmd_converge_uniform(args):
    if args.c is None or not 0 < args.c < 1:
        raise UsageError("--c must be a rational in (0, 1)")
    if not args.n_list:
        raise UsageError("--n-list is required")
    if args.k < 1 or args.net_m < 1:
        raise UsageError("--k and --net-m must be positive")
    if args.paving and args.seed is None:
        raise UsageError("--paving samples random families and needs --seed")
    rows = uniform_convergence_rows(args.c, args.n_list, args.k, args.net_m, args.budget,
                                    args.seed if args.paving else None)
    if args.format == "csv":
        _emit(args, "converge_uniform.csv", _csv(rows))
    else:
        _emit(args, "converge_uniform.json", json.dumps(rows) + "\n")


def cmd_binary_check(args):
    item = _one_input(args)
    if item[0] != "matroid":
        raise UsageError("binary-check needs --matroid")
    M = parse_matroid(read_text(item[1]), item[1])
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        q6 = is_binary_via_Q6(M)
    verdict = {"ground_size": M.n, "q6_verdict": q6, "vacuous": bool(caught)}
    if M.n <= BRUTEFORCE_GROUND:
        minor = has_u24_minor_bruteforce(M)
        verdict.update({"bruteforce_verdict": minor, "agree": q6 == (not minor), "bruteforce_skipped": False})
    else:
        verdict.update({"bruteforce_verdict": None, "agree": None, "bruteforce_skipped": True})
        print(f"ground size {M.n} > {BRUTEFORCE_GROUND}: brute-force minor search skipped", file=sys.stderr)
    if args.format == "json":
        _emit(args, "binary_check.json", json.dumps(verdict, sort_keys=True) + "\n")
    else:
        _emit(args, "binary_check.csv", _csv([verdict]))


def cmd_tower_demo(args):
    if args.k_max < 1 or args.levels < 1:
        raise UsageError("--k-max and --levels must be positive")
    f = _load_function(_one_input(args))
    if not hasattr(f, "values"):
        f = f.to_table()
    st = build_sofic_tower(f, args.k_max, args.levels, budget=args.budget)
    if not validate_tower(st.tower):
        raise DomainError("constructed tower failed validation")
    checks = verify_sofic_guarantee(st, f, budget=args.budget)
    dist = {}
    for rep, anchor in zip(st.reports, st.anchors):
        dist[rep.n] = pseudometric_d(st.tower.levels[anchor], f, args.k_max, budget=args.budget)
    rows = []
    for row in checks:
        d = dist[row["n"]]
        rows.append({**row, "d_value": d.value, "d_tail": d.tail_bound})
    if args.format == "csv":
        _emit(args, "tower_demo.csv", _csv(rows))
    else:
        _emit(args, "tower_demo.json", json.dumps({"tower": json.loads(st.tower.to_json()), "rows": rows}) + "\n")


COMMANDS = {
    "profile": cmd_profile,
    "distance": cmd_distance,
    "converge-uniform": cmd_converge_uniform,
    "binary-check": cmd_binary_check,
    "tower-demo": cmd_tower_demo,
}


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        cfg = _load_config(argv)
        args = parser.parse_args(argv)
        args = _apply_config(parser, args, cfg, argv)
        COMMANDS[args.command](args)
    except UsageError as e:
        print(f"qconv: usage error: {e}", file=sys.stderr)
        return 2
    except (ParseError, DomainError, BudgetError, OSError) as e:
        print(f"qconv: error: {e}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
