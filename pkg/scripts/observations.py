"""Loose, informational comparisons that are not asserted anywhere:

1. large-k absorption on {0, 1, ...} against the k -> oo limits quoted for
   the Hadamard and H(rho) coins (no convergence rate is known, so the
   5e-2 band is only a guide);
2. whether p~_k(z) = z lambda_plus(z)^(k-1), derived for Hadamard, also
   matches the recurrence for H(rho).
"""

import argparse
import math

import numpy as np

from pqrswalk import absorption as ab
from pqrswalk.coin import STATE_L, STATE_R, STATE_SYM, QubitState, WalkType, hadamard, named_coin

BAND = 5e-2


def hadamard_limit(state: QubitState) -> float:
    al, be = state.alpha, state.beta
    return 0.5 * abs(al) ** 2 + (2 / math.pi - 0.5) * abs(be) ** 2 + 2 * (1 / math.pi - 0.5) * (al.conjugate() * be).real


def h_rho_limits(rho: float) -> tuple[float, float]:
    """(state R, state L) limits."""
    arc = math.acos(1 - 2 * rho) / math.pi
    right = rho / (1 - rho) * (arc - 1) + 2 / (math.pi * math.sqrt(1 / rho - 1))
    return right, arc


def large_k(args):
    print(f"absorption from k = {args.k} (semi-infinite, A-type), series cap {args.n_cap}")
    print(f"{'coin':<12} {'state':<6} {'series':>10} {'k->oo limit':>12} {'|diff|':>9}  within {BAND:g}")
    cases = [("hadamard", hadamard(), s, n, hadamard_limit(s)) for n, s in (("R", STATE_R), ("L", STATE_L), ("sym", STATE_SYM))]
    for rho in args.rho:
        right, left = h_rho_limits(rho)
        coin = named_coin("h_rho", [rho])
        cases += [(f"h_rho:{rho:g}", coin, STATE_R, "R", right), (f"h_rho:{rho:g}", coin, STATE_L, "L", left)]
    for name, coin, state, label, limit in cases:
        res = ab.absorption_prob(ab.AbsorptionSpec(coin, WalkType.A, args.k), state, args.n_cap)
        diff = abs(res.prob - limit)
        print(f"{name:<12} {label:<6} {res.prob:>10.6f} {limit:>12.6f} {diff:>9.2e}  {'yes' if diff < BAND else 'no'}")


def general_coin_genfun(args):
    print("\np~_k(z) = z lambda_plus^(k-1): Taylor coefficients vs recurrence, n <= 40")
    for rho in (0.5, *args.rho):
        coin = named_coin("h_rho", [rho])
        for k in (2, 3, 4):
            series = ab.hitting_series(ab.AbsorptionSpec(coin, WalkType.A, k), 40)

            def p_tilde(z):
                lp = np.array([ab.lambda_roots(coin, complex(w))[0] for w in z])
                return z * lp ** (k - 1)

            coef = ab.taylor_coefficients(p_tilde, 40, radius=0.9, nodes=1024)
            print(f"  h_rho:{rho:g}  k={k}  max |diff| = {np.max(np.abs(coef - series.p)):.2e}")


def main():
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--k", type=int, default=25)
    parser.add_argument("--n-cap", type=int, default=20_000)
    parser.add_argument("--rho", type=float, nargs="*", default=[0.25, 0.75])
    args = parser.parse_args()
    large_k(args)
    general_coin_genfun(args)


if __name__ == "__main__":
    main()
