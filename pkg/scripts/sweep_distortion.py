"""Worst ratio of one mechanism over a seeded random sweep, grouped by m."""

import argparse
from collections import defaultdict

from scvote.distortion import worst_case_distortion
from scvote.harness import SweepConfig, sweep_elections


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--mechanism", default="min_projection")
    p.add_argument("--objective", choices=["cost", "utility"], default="cost")
    p.add_argument("--seeds", type=int, default=1000)
    p.add_argument("--m-max", type=int, default=5)
    p.add_argument("--n-max", type=int, default=5)
    p.add_argument("--universe-max", type=int, default=8)
    p.add_argument("--kinds", default="line,simplex,random_metric")
    p.add_argument("--k", type=int, default=None, help="committee size; default m-1")
    args = p.parse_args()

    kinds = tuple(args.kinds.split(","))
    if args.mechanism == "left_or_right":
        kinds = ("line",)
    cfg = SweepConfig(seeds=range(args.seeds), m_range=(2, args.m_max), n_range=(1, args.n_max),
                      universe_range=(2, args.universe_max), kinds=kinds)
    worst = defaultdict(lambda: None)
    for seed, e in sweep_elections(cfg):
        k = args.k if args.k is not None and args.k < e.m else None
        rep = worst_case_distortion(e, args.mechanism, args.objective, k=k)
        if worst[e.m] is None or rep.worst_ratio > worst[e.m][1].worst_ratio:
            worst[e.m] = (seed, rep)

    print("m,seed,worst_ratio,analytic_bound,witness,actions")
    for m in sorted(worst):
        seed, rep = worst[m]
        bound = "" if rep.analytic_bound is None else f"{rep.analytic_bound:.9f}"
        print(f"{m},{seed},{rep.worst_ratio:.9f},{bound},"
              f"{' '.join(map(str, rep.witness))},{' '.join(map(str, rep.election.actions))}")


if __name__ == "__main__":
    main()
