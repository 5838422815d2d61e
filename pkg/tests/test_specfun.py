"""Special-function layer: quadrature identities against closed forms."""

import math
import time

import numpy as np
import pytest
from scipy.special import psi, sici

from oppenheimlab.errors import DomainError, PoleError
from oppenheimlab.specfun import (
    EULER_GAMMA,
    QuadratureSpec,
    c2_discrete,
    chunked_oscillatory_integral,
    cin,
    cosine_integral,
    euler_accelerated_sum,
    gauss_2f1_unit,
    lemma_a1,
)


def test_euler_gamma_value():
    assert EULER_GAMMA == pytest.approx(-psi(1.0), abs=1e-15)


class TestCosineIntegrals:
    def test_ci_against_scipy(self):
        for x in (0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 40.0):
            assert cosine_integral(x) == pytest.approx(sici(x)[1], abs=1e-11)

    def test_ci_at_one(self):
        # classical tabulated value of Ci(1)
        assert cosine_integral(1.0) == pytest.approx(0.3374039229009681,
                                                     abs=1e-12)

    def test_cin_small_x_series(self):
        # Cin(x) = x^2/4 - x^4/96 + x^6/4320 - ...
        x = 1e-3
        series = x**2 / 4 - x**4 / 96 + x**6 / 4320
        assert cin(x) == pytest.approx(series, rel=1e-12)

    def test_cin_ci_log_identity(self):
        for x in (0.1, 0.5, 1.0, 2.0, 5.0, 10.0):
            lhs = cin(x) + cosine_integral(x)
            rhs = math.log(x) + EULER_GAMMA
            assert lhs == pytest.approx(rhs, abs=1e-10)

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            cosine_integral(0.0)
        with pytest.raises(DomainError):
            cosine_integral(-1.0)
        with pytest.raises(DomainError):
            cin(-0.5)

    def test_cin_at_zero(self):
        assert cin(0.0) == 0.0


class TestLemmaA1:
    def test_value_and_split(self):
        a_val, b_val, total = lemma_a1()
        assert total == pytest.approx(1.0 - EULER_GAMMA, abs=1e-8)
        assert a_val + b_val == pytest.approx(total, abs=1e-14)

    def test_runs_fast(self):
        t0 = time.perf_counter()
        lemma_a1()
        assert time.perf_counter() - t0 < 1.0


class TestGauss2F1:
    def test_beta_zero_closed_form(self):
        # 2F1(1,1;2;z) = -log(1-z)/z
        for z in (0.5, -0.5, 0.5j, -0.9):
            val = gauss_2f1_unit(0.0, z)
            expected = -np.log(1.0 - complex(z)) / complex(z)
            assert abs(val - expected) <= 1e-10

    def test_beta_half_series(self):
        # 2F1(1, 1/2; 3/2; z) = sum_k z^k / (2k+1) = sum_k 0.5/(k+0.5) z^k
        for z in (0.3, -0.4, 0.2 + 0.1j):
            k = np.arange(4000)
            expected = np.sum(0.5 / (k + 0.5) * np.asarray(complex(z))**k)
            assert abs(gauss_2f1_unit(0.5, z) - expected) <= 1e-10

    def test_pole_at_z_one_beta_positive(self):
        with pytest.raises(PoleError):
            gauss_2f1_unit(0.5, 1.0)

    def test_z_zero(self):
        assert gauss_2f1_unit(0.3, 0.0) == pytest.approx(1.0, abs=1e-12)

    def test_beta_domain(self):
        with pytest.raises(DomainError):
            gauss_2f1_unit(1.0, 0.5)
        with pytest.raises(DomainError):
            gauss_2f1_unit(-0.1, 0.5)


class TestC2Discrete:
    def test_half_is_log_two(self):
        assert c2_discrete(0.5) == pytest.approx(math.log(2.0), abs=1e-8)

    def test_digamma_identity(self):
        # c2(beta) = (1-beta)(psi(1) - psi(1-beta))
        for beta in (0.1, 0.25, 0.75, 0.9):
            oracle = (1.0 - beta) * (psi(1.0) - psi(1.0 - beta))
            assert c2_discrete(beta) == pytest.approx(oracle, abs=1e-8)

    def test_beta_zero(self):
        assert c2_discrete(0.0) == pytest.approx(0.0, abs=1e-12)

    def test_domain(self):
        with pytest.raises(DomainError):
            c2_discrete(1.0)
        with pytest.raises(DomainError):
            c2_discrete(-0.2)


class TestSummationHelpers:
    def test_euler_accelerated_alternating_log2(self):
        # sum (-1)^{k+1}/k = log 2
        terms = [(-1.0)**(k + 1) / k for k in range(1, 60)]
        val = euler_accelerated_sum(terms)
        assert val == pytest.approx(math.log(2.0), abs=1e-12)

    def test_chunked_oscillatory_dirichlet(self):
        # int_pi^inf sin(t)/t dt = pi/2 - Si(pi), half-period pi chunks
        val, err = chunked_oscillatory_integral(
            lambda t: np.sin(t) / t, math.pi, math.pi)
        expected = math.pi / 2.0 - sici(math.pi)[0]
        assert val == pytest.approx(expected, abs=1e-9)
        assert err < 1e-8

    def test_quadrature_spec_defaults(self):
        spec = QuadratureSpec()
        assert spec.abs_tol > 0 and spec.rel_tol > 0
        with pytest.raises(DomainError):
            QuadratureSpec(abs_tol=0.0)
