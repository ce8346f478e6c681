"""Search line grids for the left_or_right worst case and print its witness."""

import argparse

from scvote.distortion import worst_case_distortion
from scvote.harness import line_grid_elections


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--steps", type=int, default=8)
    p.add_argument("--n-max", type=int, default=6)
    args = p.parse_args()
    best = None
    for e in line_grid_elections((2, 3, 4), n_max=args.n_max, steps=args.steps):
        rep = worst_case_distortion(e, "left_or_right", "utility")
        if best is None or rep.worst_ratio > best.worst_ratio + 1e-12:
            best = rep
    e = best.election
    coords = e.metric.coords
    print(f"worst ratio {best.worst_ratio:.12f} (13/7 = {13 / 7:.12f})")
    print(f"candidates at {[coords[c] for c in e.candidates]}")
    print(f"votes {e.actions}, voters at {[coords[p] for p in best.witness]}")
    print(f"outcome {dict((str(W), str(q)) for W, q in best.outcome.items())}")


if __name__ == "__main__":
    main()
