"""Command-line entry point: ``scvote <subcommand> ...``."""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

from . import formats
from .distortion import DistortionError, worst_case_distortion
from .election import (ElectionError, projection_distance_point,
                       projection_distance_set, tally)
from .harness import RunConfig, reproduce_table, sample_outcome, table_csv
from .instances import (METRIC_KINDS, gen_line_lower_bound, gen_random_election,
                        gen_simplex_lower_bound, gen_utility_lower_bound)
from .mechanisms import MECHANISMS, NATURAL_OBJECTIVE, run
from .metric import MetricError, validate
from .strategyproof import VIOLATION_HEADER, audit


def _universe(e, which: str):
    if which == "candidates":
        return list(e.candidates)
    return list(range(e.metric.size))


def _num(x) -> str:
    return "" if x is None else f"{x:.12g}"


def cmd_validate_metric(cfg: RunConfig, out) -> int:
    metric = formats.read_metric(cfg.metric)
    res = validate(metric)
    if res.ok:
        print(f"ok: {metric.size} points", file=out)
        return 0
    for p, q, r in res.triangle:
        print(f"triangle {p} {q} {r}", file=out)
    for p, q in res.asymmetric:
        print(f"asymmetric {p} {q}", file=out)
    for p in res.nonzero_diagonal:
        print(f"diagonal {p}", file=out)
    for p, q in res.negative:
        print(f"negative {p} {q}", file=out)
    return 1


def cmd_show_election(cfg: RunConfig, out) -> int:
    e = formats.read_election(cfg.election)
    labels = e.metric.labels
    counts = tally(e)
    print(f"m={e.m} n={e.n} points={e.metric.size}", file=out)
    print("candidate point label votes pd(y) pd(M_y)", file=out)
    for y, c in enumerate(e.candidates):
        rest = [j for j in range(e.m) if j != y]
        print(f"{y} {c} {labels[c]} {counts[y]} "
              f"{_num(projection_distance_point(e, y))} "
              f"{_num(projection_distance_set(e, rest))}", file=out)
    return 0


def cmd_gen(cfg: RunConfig, args, out) -> int:
    if args.kind == "line-lb":
        bundle = gen_line_lower_bound(args.m, args.L)
    elif args.kind == "simplex-lb":
        bundle = gen_simplex_lower_bound(args.m)
    elif args.kind == "utility-lb":
        bundle = gen_utility_lower_bound(args.m)
    else:
        n = args.n if args.n is not None else args.m
        size = args.universe_size if args.universe_size is not None else 2 * args.m
        bundle = gen_random_election(cfg.seed, args.m, n, size, args.metric_kind)
    path, mpath = formats.write_election(bundle.election, cfg.out)
    print(f"wrote {path} and {mpath}  ({bundle.notes})", file=out)
    for name, x in bundle.witnesses.items():
        print(f"witness {name}: {' '.join(map(str, x))}", file=out)
    return 0


def cmd_run(cfg: RunConfig, out) -> int:
    e = formats.read_election(cfg.election)
    print(formats.format_outcome(run(cfg.mechanism, e, cfg.k)), file=out)
    return 0


def cmd_distortion(cfg: RunConfig, args, out) -> int:
    e = formats.read_election(cfg.election)
    rep = worst_case_distortion(e, cfg.mechanism, cfg.objective,
                                universe=_universe(e, cfg.universe), k=cfg.k,
                                budget=cfg.budget)
    w = csv.writer(out, lineterminator="\n")
    if args.header:
        w.writerow(["mechanism", "objective", "m", "n", "worst_ratio", "analytic_bound",
                    "witness"])
    w.writerow([rep.mechanism, rep.objective, e.m, e.n, _num(rep.worst_ratio),
                _num(rep.analytic_bound),
                " ".join(e.metric.labels[p] for p in rep.witness)])
    return 0


def cmd_audit(cfg: RunConfig, out) -> int:
    e = formats.read_election(cfg.election)
    objective = cfg.objective or NATURAL_OBJECTIVE[cfg.mechanism]
    found = audit(cfg.mechanism, e, universe=_universe(e, cfg.universe),
                  objective=objective, k=cfg.k, budget=cfg.budget)
    w = csv.writer(out, lineterminator="\n")
    w.writerow(VIOLATION_HEADER)
    for v in found:
        w.writerow(v.as_row())
    return 0 if not found else 1


def cmd_reproduce_table(cfg: RunConfig, out) -> int:
    rows = reproduce_table()
    text = table_csv(rows)
    if cfg.out:
        Path(cfg.out).write_text(text)
    else:
        out.write(text)
    return 0 if all(r.passed for r in rows) else 1


def cmd_sample(cfg: RunConfig, out) -> int:
    e = formats.read_election(cfg.election)
    committee = sample_outcome(run(cfg.mechanism, e, cfg.k), cfg.seed)
    winners = " ".join(str(j) for j in committee.winners)
    print(f"eliminated {committee} winners {winners}", file=out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="scvote", description=__doc__)
    sub = p.add_subparsers(dest="subcommand", required=True)
    mechs = sorted(MECHANISMS)

    s = sub.add_parser("validate-metric", help="check the metric axioms of a metric file")
    s.add_argument("metric")

    s = sub.add_parser("show-election", help="tally and projection distances")
    s.add_argument("--election", required=True)

    s = sub.add_parser("gen", help="write a constructed or random instance")
    s.add_argument("--kind", required=True, choices=["line-lb", "simplex-lb", "utility-lb", "random"])
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--L", type=float, default=None)
    s.add_argument("--n", type=int, default=None)
    s.add_argument("--universe-size", type=int, default=None)
    s.add_argument("--metric-kind", choices=METRIC_KINDS, default="line")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out", required=True)

    s = sub.add_parser("run", help="print a mechanism's outcome distribution")
    s.add_argument("--mechanism", required=True, choices=mechs)
    s.add_argument("--election", required=True)
    s.add_argument("--k", type=int, default=None)

    s = sub.add_parser("distortion", help="exact worst-case ratio over a finite universe")
    s.add_argument("--mechanism", required=True, choices=mechs)
    s.add_argument("--election", required=True)
    s.add_argument("--objective", required=True, choices=["cost", "utility"])
    s.add_argument("--universe", choices=["all", "candidates"], default="all")
    s.add_argument("--k", type=int, default=None)
    s.add_argument("--budget", type=int, default=10**7)
    s.add_argument("--header", action="store_true")

    s = sub.add_parser("audit", help="search for profitable unilateral deviations")
    s.add_argument("--mechanism", required=True, choices=mechs)
    s.add_argument("--election", required=True)
    s.add_argument("--objective", choices=["cost", "utility"], default=None)
    s.add_argument("--universe", choices=["all", "candidates"], default="all")
    s.add_argument("--k", type=int, default=None)
    s.add_argument("--budget", type=int, default=10**7)

    s = sub.add_parser("reproduce-table", help="check every cell of the results table")
    s.add_argument("--out", default=None)

    s = sub.add_parser("sample", help="draw one committee from a mechanism's outcome")
    s.add_argument("--mechanism", required=True, choices=mechs)
    s.add_argument("--election", required=True)
    s.add_argument("--k", type=int, default=None)
    s.add_argument("--seed", type=int, default=0)
    return p


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    cfg = RunConfig(**{k: getattr(args, k) for k in
                       ("subcommand", "election", "metric", "mechanism", "objective", "k",
                        "seed", "budget", "universe", "out") if hasattr(args, k)})
    try:
        if cfg.subcommand == "validate-metric":
            return cmd_validate_metric(cfg, out)
        if cfg.subcommand == "show-election":
            return cmd_show_election(cfg, out)
        if cfg.subcommand == "gen":
            return cmd_gen(cfg, args, out)
        if cfg.subcommand == "run":
            return cmd_run(cfg, out)
        if cfg.subcommand == "distortion":
            return cmd_distortion(cfg, args, out)
        if cfg.subcommand == "audit":
            return cmd_audit(cfg, out)
        if cfg.subcommand == "reproduce-table":
            return cmd_reproduce_table(cfg, out)
        if cfg.subcommand == "sample":
            return cmd_sample(cfg, out)
    except (MetricError, ElectionError, DistortionError, formats.FormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 2


if __name__ == "__main__":
    sys.exit(main())
