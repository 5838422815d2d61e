"""The general digit scheme, distribution families, and condition checks.

Samples digit sequences from the general scheme, verifies the weight and
family conditions behind the limit theorems numerically, and estimates the
joint characteristic-function distance between a digit chain's ratio
variables and their independent model.
"""

import numpy as np

from oppenheimlab import (
    char_distance_check,
    check_theorem_3_2_conditions,
    check_theorem_4_1_conditions,
    cesaro_scheme,
    discrete_beta_family,
    engel_scheme,
    family_constants,
    mobius_clamped_family,
    power_alpha_scheme,
    sample_oppenheim,
    sylvester_scheme,
    uniform_family,
)


def main():
    rng = np.random.default_rng(11)
    seq, ratios = sample_oppenheim(engel_scheme(), 6, rng)
    print("general-scheme Engel digits:", seq.digits)
    print("ratios:", [round(r, 3) for r in ratios])
    seq, _ = sample_oppenheim(sylvester_scheme(), 5, rng, theta1=2)
    print("general-scheme Sylvester digits:", seq.digits)

    print("\nfamily constants (b, c):")
    for name, fam in [("uniform", uniform_family()),
                      ("mobius", mobius_clamped_family("constant:1")),
                      ("discrete beta=0", discrete_beta_family("constant:0")),
                      ("discrete beta=.5",
                       discrete_beta_family("constant:0.5"))]:
        fc = family_constants(fam, 1)
        print(f"  {name:>16}: b = {fc.b:+.6f}  c = {fc.c:+.6f}")

    print("\nweight-condition verdicts:")
    for name, sch in [("cesaro", cesaro_scheme()),
                      ("power alpha=0.5", power_alpha_scheme(0.5))]:
        weak = check_theorem_3_2_conditions(sch, lambda k: 1.0, 10**5)
        dist = check_theorem_4_1_conditions(sch, lambda k: 1.0, 10**5)
        print(f"  {name:>16}: weak-law passed={weak.passed} "
              f"(ell={weak.ell:.3f}), distributional passed={dist.passed} "
              f"(kappa={dist.kappa:.3f})")

    res = char_distance_check(2, (0.1, 0.2), 10**5)
    print(f"\njoint ECF distance (Engel, n=2, t=(0.1,0.2)): "
          f"{res['estimate']:.4f} vs bound {res['bound']:.2f} "
          f"(+3se = {3 * res['se']:.4f}) -> passed={res['passed']}")


if __name__ == "__main__":
    main()
