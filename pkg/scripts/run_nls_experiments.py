#!/usr/bin/env python3
"""Schroedinger benchmarks: soliton conservation, temporal refinement, plane wave.

* 1D soliton (beta = 2, N = 4096): modified-energy deviation over a long
  horizon and a tau-halving refinement ladder at t = 1 for both schemes.
* 2D plane wave (beta = -1): phase tracking of the dispersion relation
  w = k1^2 + k2^2 - beta |A|^2 = 3, with errors decreasing 4x per halving.
"""

import argparse

import numpy as np

from expsav.diagnostics import energy_deviation
from expsav.runner import ProblemSpec, convergence_driver, run


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--t-conserve", type=float, default=100.0,
                        help="horizon for the soliton conservation run")
    args = parser.parse_args()

    spec = ProblemSpec(problem="nls1d_soliton", t_end=args.t_conserve, cadence=10)
    result = run(spec)
    dev = energy_deviation(result.records)
    print(f"soliton conservation to t = {args.t_conserve:g}: "
          f"max |E - E0| = {np.max(dev):.3e} (E0 = {result.records[0].E_mod:.6f})")

    print("\ntemporal refinement, soliton at t = 1 (N = 4096 fixed):")
    for scheme in ("esavs", "eavfs"):
        base = ProblemSpec(problem="nls1d_soliton", scheme=scheme, tau=0.0025,
                           t_end=1.0, cadence=400)
        for row in convergence_driver(base, levels=3):
            order = f"{row.order_l2:6.3f}" if row.order_l2 is not None else "     -"
            print(f"  {scheme:6s} tau = {row.tau:9.6f}  err_l2 = {row.err_l2:.4e}  "
                  f"order {order}")

    print("\nplane wave at t = 1 (64 x 64 modes):")
    base = ProblemSpec(problem="nls2d_planewave", tau=0.01, t_end=1.0, cadence=100)
    for row in convergence_driver(base, levels=3):
        order = f"{row.order_l2:6.3f}" if row.order_l2 is not None else "     -"
        print(f"  esavs  tau = {row.tau:9.6f}  err_l2 = {row.err_l2:.4e}  order {order}")


if __name__ == "__main__":
    main()
