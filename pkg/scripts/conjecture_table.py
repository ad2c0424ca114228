"""Absorption at 0 from site 1 on {0..N} (Hadamard, A-type, state R) three
ways: unit-circle integrals, the first-hit series, and the conjectured
closed form."""

import argparse

from pqrswalk import absorption as ab
from pqrswalk.coin import STATE_R, WalkType, hadamard


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n-max", type=int, default=10)
    parser.add_argument("--panels", type=int, default=2**13)
    args = parser.parse_args()

    print(f"{'N':>3}  {'integrals':>18}  {'series':>18}  {'conjecture':>18}  {'|int - conj|':>12}")
    for N in range(2, args.n_max + 1):
        t8 = ab.parseval_prob(N, 1, STATE_R, WalkType.A, args.panels)
        series = ab.absorption_prob(ab.AbsorptionSpec(hadamard(), WalkType.A, 1, N), STATE_R).prob
        rhs = ab.conjecture_rhs(N)
        print(f"{N:>3}  {t8:>18.15f}  {series:>18.15f}  {rhs:>18.15f}  {abs(t8 - rhs):>12.2e}")


if __name__ == "__main__":
    main()
