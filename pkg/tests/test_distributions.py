"""Distribution families: CDFs, samplers, constants, characteristic parts."""

import math

import numpy as np
import pytest
from scipy.special import psi, sici

from oppenheimlab.distributions import (
    ConditionProfile,
    char_components,
    check_conditions,
    condition_i_profile,
    condition_ii_profile,
    discrete_beta_family,
    discrete_beta_pmf,
    family_constants,
    family_from_config,
    make_sequence,
    mobius_clamped_family,
    mobius_remark2_family,
    proposition_2_4_profile,
    uniform_family,
)
from oppenheimlab.errors import ConditionCheckError, DomainError
from oppenheimlab.specfun import EULER_GAMMA

GRID = (0.1, 0.05, 0.02, 0.01, 0.005)


class TestMakeSequence:
    def test_number(self):
        assert make_sequence(2.5)(7) == 2.5

    def test_constant_tag(self):
        assert make_sequence("constant:0.5")(3) == 0.5
        assert make_sequence("constant")(3) == 1.0

    def test_linear_tag(self):
        assert make_sequence("linear:n")(4) == 4.0
        assert make_sequence("linear:0.5")(4) == 2.0

    def test_list_extends(self):
        f = make_sequence([1.0, 2.0, 3.0])
        assert [f(1), f(2), f(3), f(9)] == [1.0, 2.0, 3.0, 3.0]

    def test_bad_tag(self):
        with pytest.raises(DomainError):
            make_sequence("quadratic:n")


class TestCdfSamplerAgreement:
    """Empirical CDFs of the samplers must match the declared CDFs."""

    @pytest.mark.parametrize("family", [
        uniform_family(),
        mobius_clamped_family("constant:1"),
        mobius_clamped_family("constant:2"),
        mobius_remark2_family("constant:1"),
    ], ids=["uniform", "mc1", "mc2", "mr2"])
    def test_ks_small(self, family):
        rng = np.random.default_rng(42)
        xs = np.sort(family.sampler(1, rng, 200_000))
        f_vals = np.array([family.cdf(1, x) for x in xs])
        emp_hi = np.arange(1, xs.size + 1) / xs.size
        gap = np.max(np.abs(emp_hi - f_vals))
        assert gap < 0.006

    @pytest.mark.parametrize("beta", [0.0, 0.5])
    def test_discrete_atom_frequencies(self, beta):
        fam = discrete_beta_family(f"constant:{beta}")
        rng = np.random.default_rng(42)
        xs = fam.sampler(1, rng, 200_000)
        z = np.rint(1.0 / xs).astype(int)
        for k in range(2, 12):
            p = discrete_beta_pmf(beta, k)
            freq = np.mean(z == k)
            sigma = math.sqrt(p * (1.0 - p) / xs.size)
            assert abs(freq - p) < 4.0 * sigma + 1e-9

    def test_support_bounds(self):
        rng = np.random.default_rng(0)
        fam = mobius_clamped_family("constant:2")
        xs = fam.sampler(1, rng, 10_000)
        assert xs.max() <= fam.support_max(1) + 1e-12
        assert xs.min() > 0.0


class TestDiscreteBeta:
    def test_pmf_beta0_classical(self):
        for k in range(2, 12):
            assert discrete_beta_pmf(0.0, k) == pytest.approx(
                1.0 / (k * (k - 1)), abs=1e-14)

    def test_pmf_sums_to_one(self):
        k = np.arange(2, 400_000)
        total = np.sum([discrete_beta_pmf(0.3, int(kk)) for kk in k[:2000]])
        # tail of the pmf is p_{K} = (1-b)/(K-b)
        total += (1.0 - 0.3) / (k[2000] - 1.0 - 0.3)
        assert total == pytest.approx(1.0, abs=1e-12)

    def test_atoms_match_pmf(self):
        fam = discrete_beta_family("constant:0.25")
        pts, masses = fam.atoms(1, 6)
        assert np.allclose(pts, 1.0 / np.arange(2, 8))
        for k, m in zip(range(2, 8), masses):
            assert m == pytest.approx(discrete_beta_pmf(0.25, k), abs=1e-14)

    def test_pmf_domain(self):
        with pytest.raises(DomainError):
            discrete_beta_pmf(1.0, 3)
        with pytest.raises(DomainError):
            discrete_beta_pmf(0.2, 1)


class TestConditionCheckers:
    @pytest.mark.parametrize("family", [
        uniform_family(),
        mobius_clamped_family("constant:1"),
        mobius_remark2_family("constant:1"),
        discrete_beta_family("constant:0"),
        discrete_beta_family("constant:0.5"),
    ], ids=["uniform", "mc1", "mr2", "db0", "db5"])
    def test_builtins_pass(self, family):
        assert check_conditions(family)

    def test_profile_shapes(self):
        prof = condition_i_profile(uniform_family(), 4, GRID)
        assert isinstance(prof, ConditionProfile)
        assert len(prof.rows) == len(GRID)
        # uniform has F(t)/t = alpha exactly
        assert all(v == 0.0 for _, v in prof.rows)

    def test_condition_ii_uniform_zero(self):
        prof = condition_ii_profile(uniform_family(), 2, GRID)
        assert all(v == 0.0 for _, v in prof.rows)

    def test_condition_ii_discrete_closed_form(self):
        # brute-force the piecewise integral for beta = 0 at t = 0.1
        fam = discrete_beta_family("constant:0")
        t = 0.1
        us = np.linspace(1e-7, t, 400_001)
        vals = np.abs(np.array([fam.cdf(1, u) for u in us]) / us - 1.0) / us
        brute = np.trapezoid(vals, us)
        prof = condition_ii_profile(fam, 1, (t,))
        assert prof.rows[0][1] == pytest.approx(brute, abs=5e-4)

    def test_grid_validation(self):
        with pytest.raises(DomainError):
            condition_i_profile(uniform_family(), 2, (0.0, 0.5))


class TestFamilyConstants:
    def test_uniform(self):
        fc = family_constants(uniform_family(), 1)
        assert fc.b == 0.0
        assert fc.c == pytest.approx(1.0 - EULER_GAMMA, abs=1e-12)

    def test_mobius_clamped_b(self):
        fc = family_constants(mobius_clamped_family("constant:1"), 1)
        # independent numeric oracle on a dense log grid
        us = np.geomspace(1e-10, 1.0, 200_001)
        fam = mobius_clamped_family("constant:1")
        vals = (np.array([fam.cdf(1, u) for u in us]) / us - 1.0) / us
        brute = np.trapezoid(vals, us)
        assert fc.b == pytest.approx(brute, abs=1e-4)

    def test_discrete_digamma_form(self):
        for beta in (0.0, 0.25, 0.5):
            fc = family_constants(discrete_beta_family(f"constant:{beta}"), 1)
            oracle = -(1.0 - beta) * psi(1.0 - beta)
            assert fc.b == pytest.approx(oracle, abs=1e-12)
            assert fc.c == pytest.approx(
                1.0 - (1.0 - beta) * EULER_GAMMA + fc.b, abs=1e-12)

    def test_discrete_beta0_c(self):
        # beta = 0: b = gamma, c = 1 - gamma + gamma = 1
        fc = family_constants(discrete_beta_family("constant:0"), 1)
        assert fc.c == pytest.approx(1.0, abs=1e-10)


class TestCharComponents:
    def test_uniform_closed_form(self):
        # A(t) = cos t - 1 - t(pi/2 - Si(t)), B(t) = sin t - t Ci(t)
        fam = uniform_family()
        for t in (0.3, 1.0, 2.5, 7.0):
            si, ci = sici(t)
            a_val, b_val = char_components(fam, 1, t)
            assert a_val == pytest.approx(
                math.cos(t) - 1.0 - t * (math.pi / 2.0 - si), abs=1e-9)
            assert b_val == pytest.approx(math.sin(t) - t * ci, abs=1e-9)

    def test_odd_even_symmetry(self):
        fam = uniform_family()
        a_pos, b_pos = char_components(fam, 1, 1.4)
        a_neg, b_neg = char_components(fam, 1, -1.4)
        assert a_neg == pytest.approx(a_pos, abs=1e-12)
        assert b_neg == pytest.approx(-b_pos, abs=1e-12)

    def test_zero(self):
        assert char_components(uniform_family(), 1, 0.0) == (0.0, 0.0)

    def test_discrete_against_direct_sum(self):
        fam = discrete_beta_family("constant:0.5")
        t = 0.7
        k = np.arange(2, 2_000_001)
        masses = np.array([0.5 / (kk - 1.5) - 0.5 / (kk - 0.5)
                           for kk in (2, 3)])  # head exact
        kk = k.astype(float)
        m = 0.5 / (kk - 1.5) - 0.5 / (kk - 0.5)
        direct = np.sum(m * np.exp(1j * t * kk))
        a_val, b_val = char_components(fam, 1, t)
        assert a_val == pytest.approx(direct.real - 1.0, abs=1e-5)
        assert b_val == pytest.approx(direct.imag, abs=1e-5)


class TestProposition24:
    def test_uniform_limit(self):
        prof = proposition_2_4_profile(uniform_family(), 1, GRID)
        assert prof.fitted_limit == pytest.approx(1.0 - EULER_GAMMA, abs=1e-3)

    def test_discrete_beta0_limit(self):
        prof = proposition_2_4_profile(discrete_beta_family("constant:0"),
                                       1, GRID)
        assert prof.fitted_limit == pytest.approx(1.0, abs=1e-2)


class TestFamilyFromConfig:
    def test_roundtrip(self):
        fam = family_from_config({"kind": "discrete_beta",
                                  "beta_n": "constant:0.5"})
        assert fam.is_discrete()
        assert fam.beta(1) == 0.5

    def test_unknown(self):
        with pytest.raises(DomainError):
            family_from_config({"kind": "zeta"})
