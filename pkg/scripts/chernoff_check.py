"""Monte Carlo deviation frequencies of Binomial(m, 1/2) against the Chernoff tail."""

import argparse

from ergbounds.bounds import chernoff_tail
from ergbounds.montecarlo import chernoff_frequency


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=100_000)
    ap.add_argument("--seed", type=int, default=11)
    args = ap.parse_args()
    print("m,eps,freq,se,tail")
    for m in (500, 2000):
        for eps in (0.05, 0.1):
            hits, se = chernoff_frequency(m, 0.5, eps, args.trials, args.seed)
            print(f"{m},{eps},{hits / args.trials},{se:.3g},{chernoff_tail(eps, m * 0.5):.6g}")


if __name__ == "__main__":
    main()
