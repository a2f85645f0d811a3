"""Reduced-scale version of the bandwidth-constant table.

The full desk-scale table is available as

    curstat reproduce-table1 --output table.csv

(n = 2000, m = 500, B = 100; a few minutes).  This demo runs a smaller
configuration so it finishes in seconds, and prints the exact theory
row alongside the stochastic rows.

Run:  python3 demos/constants_table.py
"""

import numpy as np

import curstat

N, M, B = 600, 300, 40
SEED = 2
POINTS = (4.0, 6.5)


def main():
    truth = curstat.truth_gamma4_exp3()
    kernel = curstat.triweight()
    sample = curstat.sample_current_status(truth, N, SEED).sample

    print(f"n = {N}, m = {M}, B = {B} (reduced scale)\n")
    print(f"{'row':>16} " + " ".join(f"{'c@' + str(t):>8}" for t in POINTS))

    for c0 in (5.0, 10.0, 15.0):
        cells = []
        for t in POINTS:
            cfg = curstat.BootstrapConfig(m=M, B=B, c0=c0, t=t, seed=SEED)
            cells.append(
                curstat.bootstrap_bandwidth(sample, cfg, "F", "SM", kernel).c_hat
            )
        print(f"{'bootstrap c0=' + format(c0, 'g'):>16} "
              + " ".join(f"{c:>8.3f}" for c in cells))

    cells = [
        curstat.mc_bandwidth(
            truth, N, B, np.geomspace(1.0, 25.0, 60), t, "F", "SM", kernel, seed=SEED
        ).c_tilde
        for t in POINTS
    ]
    print(f"{'mc-sim':>16} " + " ".join(f"{c:>8.3f}" for c in cells))

    cells = [curstat.amse_optimal_c("F", "SM", truth, t, kernel) for t in POINTS]
    print(f"{'theory':>16} " + " ".join(f"{c:>8.3f}" for c in cells))


if __name__ == "__main__":
    main()
