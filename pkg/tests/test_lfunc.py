import math

import numpy as np
import pytest

from quadratios.arith import kronecker, shared_sieve, von_mangoldt_table
from quadratios.errors import NotPrimitiveError, PoleError
from quadratios.gauss import QuadChar, tau_quadratic
from quadratios.lfunc import (
    funceq_gauss_check,
    k_series,
    l2removed,
    l_afe,
    l_D_closed,
    l_D_partial,
    l_hurwitz,
    l_kronecker_hurwitz,
    log_derivative,
    theta_funceq_check,
)
from quadratios.special import gamma_e, zeta, zeta_removed


def dirichlet_sum(s, n, M):
    """Truncated direct Dirichlet series (the small-modulus oracle)."""
    ch = np.array([kronecker(m, n) for m in range(n)], dtype=np.float64)
    m = np.arange(1, M + 1)
    return complex(np.sum(ch[m % n] * np.exp(-complex(s) * np.log(m))))


class TestHurwitzEvaluator:
    def test_against_truncated_series(self):
        ref = dirichlet_sum(3.0, 5, 10**6)
        assert abs(l_hurwitz(3.0, 5) - ref) < 1e-9

    def test_trivial_character(self):
        assert abs(l_hurwitz(2.0, 1) - zeta(2.0)) < 1e-14

    def test_pole_guard_for_principal_kernel(self):
        with pytest.raises(PoleError):
            l_hurwitz(1.0, 9)

    def test_modulus_cap(self):
        with pytest.raises(ValueError):
            l_hurwitz(2.0, 10_001)

    def test_kronecker_family(self):
        # (5/.) and (./5) are the same primitive character
        assert abs(l_kronecker_hurwitz(0.7, 5) - l_hurwitz(0.7, 5)) < 1e-12


class TestAFE:
    def test_agrees_with_hurwitz_all_squarefree_to_999(self, sieve):
        s = 0.75
        worst = 0.0
        for n in range(3, 1000, 2):
            if not sieve.is_squarefree(n):
                continue
            a, err = l_afe(s, n, sieve=sieve)
            h = l_hurwitz(s, n, sieve)
            worst = max(worst, abs(a - h))
            assert abs(a - h) < 1e-8, n
        assert worst < 1e-10  # typically ~1e-14

    def test_err_est_self_report(self, sieve):
        v, err = l_afe(0.75, 10_001 if sieve.is_squarefree(10_001) else 10_003, sieve=sieve)
        assert err <= 1e-8

    def test_real_for_even_character_real_s(self, sieve):
        v, _ = l_afe(0.6, 13, sieve=sieve)
        assert abs(v.imag) < 1e-12

    def test_kronecker_family(self, sieve):
        for d in (5, 8, 12, 13, 24):
            a, _ = l_afe(0.7, d, family="kronecker-top-d", sieve=sieve)
            h = l_kronecker_hurwitz(0.7, d)
            assert abs(a - h) < 1e-9, d

    def test_tier_boundary_agreement(self, sieve):
        # both evaluators around the default tier boundary
        for n in (9997, 10001, 10003):
            if not sieve.is_squarefree(n):
                continue
            a, _ = l_afe(0.75, n, sieve=sieve)
            if n <= 10_000:
                assert abs(a - l_hurwitz(0.75, n, sieve)) < 1e-8

    def test_rejects_non_primitive(self, sieve):
        with pytest.raises(NotPrimitiveError):
            l_afe(0.75, 9, sieve=sieve)

    def test_derivative_vs_finite_difference(self, sieve):
        h = 1e-5
        for n in (13, 35):
            d, _ = l_afe(0.7, n, derivative=1, sieve=sieve)
            fd = (l_hurwitz(0.7 + h, n, sieve) - l_hurwitz(0.7 - h, n, sieve)) / (2 * h)
            assert abs(d - fd) < 1e-8, n


class TestL2Removed:
    def test_square_modulus(self):
        # n = 9: kernel 1, corrections at p = 2 and 3
        ref = zeta_removed(2.5, 2) * (1 - 3**-2.5)
        assert abs(l2removed(2.5, 9) - ref) < 1e-12

    def test_squarefree_definition(self, sieve):
        s = 2.2
        v = l2removed(s, 15, sieve)
        ref = l_hurwitz(s, 15, sieve) * (1 - kronecker(2, 15) * 2.0**-s)
        assert abs(v - ref) < 1e-13

    def test_direct_sum_n45(self, sieve):
        # odd part of the chi_45 series
        ch = np.array([kronecker(m, 45) for m in range(45)], dtype=np.float64)
        m = np.arange(1, 2 * 10**6, 2)
        ref = np.sum(ch[m % 45] * m ** (-3.0))
        assert abs(l2removed(3.0, 45, sieve) - ref) < 1e-9


class TestLogDerivative:
    def test_von_mangoldt_oracle(self, sieve):
        lam = von_mangoldt_table(10**6)
        m = np.arange(1, len(lam))
        ch5 = np.array([kronecker(x, 5) for x in range(5)])
        ref = -np.sum(lam[1:] * ch5[m % 5] * m.astype(float) ** -2.0)
        assert abs(log_derivative(2.0, 5, sieve) - ref) < 1e-7

    def test_central_difference(self, sieve):
        h = 1e-5
        fd = (math.log(abs(l_hurwitz(0.75 + h, 13))) - math.log(abs(l_hurwitz(0.75 - h, 13)))) / (2 * h)
        assert abs(log_derivative(0.75, 13, sieve).real - fd) < 1e-6

    def test_real_on_reals(self, sieve):
        v = log_derivative(2.0, 13, sieve)
        assert abs(v.imag) < 1e-10

    def test_requires_squarefree(self, sieve):
        with pytest.raises(NotPrimitiveError):
            log_derivative(2.0, 9, sieve)


class TestKSeries:
    def test_primitive_reduction(self, sieve):
        # K(s, chi) = tau(chi,1) L(s, chi) for primitive chi
        for n in (5, 3, 13, 15):
            for s in (2.0, 0.6 + 0.2j):
                lhs = k_series(s, n, sieve)
                rhs = tau_quadratic(n, 1, sieve) * l_hurwitz(s, n, sieve)
                assert abs(lhs - rhs) < 1e-9 * max(1, abs(rhs)), (n, s)

    def test_direct_sum_mod9(self, sieve):
        # chi mod 9 (non-primitive): against the raw q-sum at s = 2
        from quadratios.gauss import chi_values_jacobi, tau_all_q

        tau = tau_all_q(chi_values_jacobi(9))
        q = np.arange(1, 10**5 + 1)
        ref = complex(np.sum(tau[q % 9] * q ** (-2.0)))
        assert abs(k_series(2.0, 9, sieve) - ref) < 1e-6

    def test_periodicity_built_in(self, sieve):
        # tau(chi, q + n) = tau(chi, q) is what the continuation uses
        from quadratios.gauss import chi_values_jacobi, tau_all_q

        tau = tau_all_q(chi_values_jacobi(15))
        assert abs(tau[3] - tau[(3 + 15) % 15]) == 0


class TestFunceqGauss:
    @pytest.mark.parametrize("s", [-0.5, -1.5 + 0.3j])
    def test_residuals_small_moduli(self, s, sieve):
        for n in range(1, 30, 2):
            assert funceq_gauss_check(s, n, sieve) <= 1e-8, (n, s)

    def test_classical_zeta_case(self, sieve):
        # n = 1 reduces to the classical zeta functional equation
        assert funceq_gauss_check(-0.5, 1, sieve) < 1e-12


class TestLD:
    def test_partial_vs_closed_chi3(self):
        chi = QuadChar.from_modulus(3)
        assert abs(l_D_partial(2.0, chi, 10**6) - l_D_closed(2.0, chi)) < 2e-6

    def test_partial_vs_closed_chi5_s3(self):
        chi = QuadChar.from_modulus(5)
        assert abs(l_D_partial(3.0, chi, 10**6) - l_D_closed(3.0, chi)) < 1e-9

    def test_trivial_character(self):
        # tail is ~ sum_{d > D} d^{-2} without oscillation
        assert abs(l_D_partial(2.0, None, 10**6) - l_D_closed(2.0, None)) < 2e-6


class TestTheta:
    @pytest.mark.parametrize("y", [0.3, 1.0, 3.0])
    def test_residuals(self, y):
        for n in range(1, 51, 2):
            assert theta_funceq_check(n, y) <= 1e-10, (n, y)

    def test_classical_jacobi_identity(self):
        # n = 1: theta(y) = theta(1/y)/sqrt(y)
        assert theta_funceq_check(1, 2.0) < 1e-14


class TestClassicalFunctionalEquation:
    @pytest.mark.parametrize("s", [0.3, 0.5 + 0.2j, -0.4])
    def test_primitive_moduli_to_100(self, s, sieve):
        # L(s,chi) = eps (pi/n)^{s-1/2} Gamma_{e/o}(s) L(1-s, chi), eps = 1
        from quadratios.special import gamma_o

        for n in range(3, 101, 2):
            if not sieve.is_squarefree(n):
                continue
            gam = gamma_e(s) if n % 4 == 1 else gamma_o(s)
            lhs = l_hurwitz(s, n, sieve)
            rhs = (math.pi / n) ** (complex(s) - 0.5) * gam * l_hurwitz(1 - s, n, sieve)
            assert abs(lhs - rhs) <= 1e-8, (n, s)


class TestMoreInvariants:
    def test_k_reduction_all_primitive_to_100(self, sieve):
        for n in range(3, 101, 2):
            if not sieve.is_squarefree(n):
                continue
            s = 1.7
            lhs = k_series(s, n, sieve)
            rhs = tau_quadratic(n, 1, sieve) * l_hurwitz(s, n, sieve)
            assert abs(lhs - rhs) <= 1e-9 * max(1, abs(rhs)), n

    def test_log_derivative_von_mangoldt_to_50(self, sieve):
        lam = von_mangoldt_table(10**6)
        m = np.arange(1, len(lam))
        mf = m.astype(float) ** -2.0
        for n in range(1, 51, 2):
            if n == 1 or not sieve.is_squarefree(n):
                continue
            ch = np.array([kronecker(x, n) for x in range(n)])
            ref = -np.sum(lam[1:] * ch[m % n] * mf)
            assert abs(log_derivative(2.0, n, sieve) - ref) <= 1e-7, n

    def test_afe_err_est_large_modulus(self, sieve):
        n = 100003
        sv = shared_sieve(max(n, sieve.limit))
        assert sv.is_squarefree(n)
        v, err = l_afe(0.75, n, sieve=sv)
        assert err <= 1e-8
        assert np.isfinite(v.real)

    def test_square_modulus_logderiv_closed_form(self, sieve):
        # chi_9 is principal on its kernel: L = zeta(s)(1 - 3^{-s}) and
        # L'/L = zeta'/zeta + log3/(3^s - 1)
        from quadratios.empirical import _logderiv_direct
        from quadratios.special import zeta

        s = 0.7
        v = _logderiv_direct(s, 9, sieve)
        ref = zeta(s, 1) / zeta(s) + math.log(3) / (3**s - 1)
        assert abs(v - ref) < 1e-9
