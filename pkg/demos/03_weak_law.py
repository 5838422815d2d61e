"""Exact weak law of large numbers for the digit averages.

For each digit chain the Cesaro average of the digits (or ratio variables)
over log n converges in probability to 1.  The run prints, per grid point,
the median of the normalized statistic and the frequency of |T - 1| > 0.3;
both shrink as n grows even though the variables have infinite mean.
"""

from oppenheimlab import ExperimentConfig, exact_weak_law_run


def main():
    for scheme in ("luroth", "engel", "sylvester"):
        cfg = ExperimentConfig(master_seed=20260823,
                               n_grid=(100, 1000, 10000, 100000),
                               replications=200, scheme=scheme,
                               epsilon=0.3)
        rec = exact_weak_law_run(cfg)
        print(f"\n=== {scheme} chain ===")
        print(f"{'n':>8} {'median T':>10} {'mean T':>10} {'exceed':>8}")
        for row in rec.per_n:
            print(f"{row['n']:>8} {row['t_median']:>10.4f} "
                  f"{row['t_mean']:>10.4f} {row['exceedance']:>8.3f}")
        print(f"limit ell = {rec.per_n[0]['ell']:.4f}  "
              f"({rec.wall_time:.2f} s)")


if __name__ == "__main__":
    main()
