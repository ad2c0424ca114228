"""Recompute the headline constants: absorption at 0, conditional hitting
time, the finite-N limit, and the Hadamard limit-law spreads."""

import argparse
import math

from pqrswalk import absorption as ab
from pqrswalk.coin import STATE_R, STATE_SYM, WalkType, hadamard
from pqrswalk.limit import limit_mean, limit_sd, make_limit_density
from pqrswalk.walk import distribution, empirical_moment, evolve


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--steps", type=int, default=1000, help="evolution length for the spreads")
    parser.add_argument("--n-cap", type=int, default=None, help="series cap for absorption sums")
    args = parser.parse_args()

    h = hadamard()
    semi = ab.AbsorptionSpec(h, WalkType.A, 1)
    res = ab.absorption_prob(semi, STATE_R, args.n_cap)
    rows = [
        ("P(absorbed), A, R, series", res.prob, 2 / math.pi),
        ("P(absorbed), A, R, closed form", ab.semi_infinite_closed(STATE_R, WalkType.A), 2 / math.pi),
        ("E[T0 | T0 < oo], A, R, series", res.cond_mean_T0, math.pi / 2),
        ("P(absorbed), G, R, closed form", ab.semi_infinite_closed(STATE_R, WalkType.G), 4 / math.pi - 1),
        ("conjectured P on {0..N}, N = 30", ab.conjecture_rhs(30), 1 / math.sqrt(2)),
    ]
    n = args.steps
    for label, state in (("sym", STATE_SYM), ("R", STATE_R)):
        d = make_limit_density(h, WalkType.A, state)
        dist = distribution(evolve(state, h, WalkType.A, n))
        mean = empirical_moment(dist, 1) / n
        sd = math.sqrt(empirical_moment(dist, 2) / n**2 - mean**2)
        rows.append((f"mean/n, state {label}, n={n}", mean, limit_mean(d)))
        rows.append((f"sd/n, state {label}, n={n}", sd, limit_sd(d)))

    width = max(len(r[0]) for r in rows)
    print(f"{'quantity':<{width}}  {'computed':>20}  {'reference':>20}  {'|diff|':>9}")
    for name, got, ref in rows:
        print(f"{name:<{width}}  {got:>20.15f}  {ref:>20.15f}  {abs(got - ref):>9.2e}")
    if not res.converged:
        print(f"note: absorption series hit its cap (tail bound {res.tail_bound:.1e})")


if __name__ == "__main__":
    main()
