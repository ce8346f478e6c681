"""Strategy-proofness audit of every mechanism over small random templates."""

import argparse

import numpy as np

from scvote.instances import gen_random_election
from scvote.mechanisms import MECHANISMS, NATURAL_OBJECTIVE
from scvote.strategyproof import audit, replay


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--templates", type=int, default=150)
    p.add_argument("--m-max", type=int, default=4)
    p.add_argument("--n-max", type=int, default=4)
    p.add_argument("--universe-max", type=int, default=6)
    args = p.parse_args()

    print("mechanism,objective,templates,violating_templates,violations,replayed")
    for name in sorted(MECHANISMS):
        objective = NATURAL_OBJECTIVE[name]
        bad = total = replayed = used = 0
        for seed in range(args.templates):
            rng = np.random.default_rng([seed, 99])
            m = int(rng.integers(2, args.m_max + 1))
            n = int(rng.integers(1, args.n_max + 1))
            U = int(rng.integers(m, args.universe_max + 1))
            kind = "line" if name == "left_or_right" else ("line", "simplex", "random_metric")[seed % 3]
            t = gen_random_election(seed, m, n, U, kind).election
            vs = audit(name, t, objective=objective)
            used += 1
            bad += bool(vs)
            total += len(vs)
            replayed += sum(replay(v, name, t) for v in vs)
        print(f"{name},{objective},{used},{bad},{total},{replayed}")


if __name__ == "__main__":
    main()
