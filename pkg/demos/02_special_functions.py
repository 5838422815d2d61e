"""Deterministic special-function identities behind the limit theorems.

Evaluates the cosine-integral split of the constant 1 - gamma, the
Cin/Ci/log identity, the closed-form slices of the Gauss hypergeometric
function, and the discrete centering constant against its digamma form.
"""

import math

import numpy as np
from scipy.special import psi

from oppenheimlab import (
    EULER_GAMMA,
    c2_discrete,
    cin,
    cosine_integral,
    gauss_2f1_unit,
    lemma_a1,
)


def main():
    a_val, b_val, total = lemma_a1()
    print(f"A = {a_val:+.12f}")
    print(f"B = {b_val:+.12f}")
    print(f"A + B = {total:.12f}  vs  1 - gamma = {1 - EULER_GAMMA:.12f}")

    print("\nCin(x) + Ci(x) - log x - gamma:")
    for x in (0.1, 1.0, 10.0):
        gap = cin(x) + cosine_integral(x) - math.log(x) - EULER_GAMMA
        print(f"  x = {x:5.1f}: {gap:+.3e}")

    print("\n2F1 slice at beta = 0 vs -log(1-z)/z:")
    for z in (0.5, -0.9):
        val = gauss_2f1_unit(0.0, z)
        closed = -np.log(1.0 - z) / z
        print(f"  z = {z:+.1f}: {val:.12f} vs {closed:.12f}")

    print("\nc2(beta) vs (1-beta)(psi(1) - psi(1-beta)):")
    for beta in (0.25, 0.5, 0.9):
        print(f"  beta = {beta}: {c2_discrete(beta):.12f} vs "
              f"{(1 - beta) * (psi(1.0) - psi(1.0 - beta)):.12f}")
    print(f"  (beta = 1/2 gives log 2 = {math.log(2):.12f})")


if __name__ == "__main__":
    main()
