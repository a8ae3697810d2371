#!/usr/bin/env python3
"""Accuracy table for the 1D sine-Gordon benchmark.

Runs both schemes over the (h, tau)-halving ladder starting from
(1/10, 1/100) and prints errors at t = 1 with observed orders.
"""

import argparse

from expsav.runner import ProblemSpec, convergence_driver


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--levels", type=int, default=4)
    args = parser.parse_args()

    print(f"{'scheme':8s} {'h':>10s} {'tau':>10s} {'L2-error':>12s} {'order':>6s} "
          f"{'Linf-error':>12s} {'order':>6s}")
    for scheme in ("esavs", "eavfs"):
        base = ProblemSpec(problem="sg1d", scheme=scheme, n=400, tau=0.01,
                           t_end=1.0, cadence=100)
        for row in convergence_driver(base, levels=args.levels):
            h = 40.0 / row.n
            o2 = f"{row.order_l2:6.2f}" if row.order_l2 is not None else "     -"
            oi = f"{row.order_inf:6.2f}" if row.order_inf is not None else "     -"
            print(f"{scheme:8s} {h:10.5f} {row.tau:10.5f} {row.err_l2:12.4e} {o2} "
                  f"{row.err_inf:12.4e} {oi}")


if __name__ == "__main__":
    main()
