"""L-function evaluation for real characters.

Two evaluation tiers:

* Hurwitz tier (exact continuation, cost O(n)): L(s, chi) = n^{-s} sum_r
  chi(r) zeta(s, r/n), valid at every s != 1.  Also used for the Gauss-sum
  series K(s, chi) through the periodicity of tau(chi, q) in q.
* Smoothed approximate functional equation (cost O(sqrt(n))): the theta
  integral split at the conductor-balanced point, giving incomplete-gamma
  weights on two sums of ~C*sqrt(n) terms.  Primitive characters only.

The theta functions themselves and their functional equation live here too,
as do the fundamental-discriminant series L_D and the per-character
functional-equation residuals.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .arith import FactorSieve, fundamental_discriminants_array, kronecker, shared_sieve
from .errors import NotPrimitiveError, PoleError, ZeroDetectedError
from .gauss import Psi8, QuadChar, chi_values_jacobi, chi_values_kronecker_top, tau_all_q
from .special import (
    POLE_GUARD,
    gamma_complex,
    gamma_e,
    gamma_o,
    hurwitz_zeta,
    hurwitz_zeta_vec,
    upper_gamma,
    zeta,
)

HURWITZ_MODULUS_CAP = 10_000
AFE_TRUNCATION_C = 12.0
ZERO_THRESHOLD = 1e-12


@dataclass(frozen=True)
class LValueRecord:
    family: str  # 'jacobi-bottom-n' | 'kronecker-top-d' (':dL' suffix for L')
    modulus: int
    s: complex
    value: complex
    method: str  # 'hurwitz' | 'afe' | 'direct'
    err_est: float


# ---------------------------------------------------------------------------
# periodic-coefficient Dirichlet series (the Hurwitz tier workhorse)


def l_periodic(s: complex, coeffs, derivative: int = 0) -> complex:
    """sum_{n>=1} c(n) n^{-s} for q-periodic coefficients c (c[r] = c(r), r mod q).

    Exact continuation q^{-s} sum_{r=1..q} c(r) zeta(s, r/q); a pole at s=1
    only when the coefficients have nonzero mean (guarded by hurwitz_zeta).
    """
    s = complex(s)
    c = np.asarray(coeffs, dtype=np.float64)
    q = len(c)
    if q == 1:
        out = c[0] * hurwitz_zeta(s, 1.0, derivative)
        return complex(out)
    idx = np.nonzero(c)[0]
    vals = np.array([hurwitz_zeta(s, (r if r > 0 else q) / q) for r in idx])
    qs = q ** (-s)
    base = qs * np.sum(c[idx] * vals)
    if not derivative:
        return complex(base)
    dvals = np.array([hurwitz_zeta(s, (r if r > 0 else q) / q, 1) for r in idx])
    return complex(-math.log(q) * base + qs * np.sum(c[idx] * dvals))


# ---------------------------------------------------------------------------
# the two evaluators


def _principal_on_kernel(n: int, sieve: FactorSieve) -> bool:
    n0, _ = sieve.squarefree_kernel(n)
    return n0 == 1


def l_hurwitz(s: complex, n: int, sieve: FactorSieve | None = None, derivative: int = 0) -> complex:
    """L(s, chi_n) for the Jacobi character (./n), odd n <= 1e4."""
    s = complex(s)
    n = int(n)
    if n < 1 or n % 2 == 0:
        raise ValueError("modulus must be odd and positive")
    if n > HURWITZ_MODULUS_CAP:
        raise ValueError(f"l_hurwitz caps at modulus {HURWITZ_MODULUS_CAP}, got {n}")
    sv = sieve or shared_sieve()
    if abs(s - 1) < POLE_GUARD and _principal_on_kernel(n, sv):
        raise PoleError(f"L(s, chi_{n}) has a pole at s=1 (principal on its kernel)")
    if n == 1:
        return zeta(s, derivative)
    return _l_periodic_real(s, chi_values_jacobi(n), derivative)


def _l_periodic_real(s: complex, c: np.ndarray, derivative: int = 0) -> complex:
    """l_periodic specialized to int8 coefficient vectors via the vectorized
    Hurwitz evaluator (one batched call instead of q scalar calls).

    For Re(s) < 0 the q^{-s} prefactor amplifies the cancellation noise of
    the character sum, so the extended-precision scalar path is used there.
    """
    s = complex(s)
    q = len(c)
    idx = np.nonzero(c)[0]
    a = np.where(idx == 0, q, idx) / q
    if s.real < 0.05:
        vals = np.array([hurwitz_zeta(s, aa) for aa in a])
    else:
        vals = hurwitz_zeta_vec(s, a)
    qs = q ** (-s)
    base = qs * np.sum(c[idx] * vals)
    if not derivative:
        return complex(base)
    if s.real < 0.05:
        dvals = np.array([hurwitz_zeta(s, aa, 1) for aa in a])
    else:
        dvals = hurwitz_zeta_vec(s, a, derivative=1)
    return complex(-math.log(q) * base + qs * np.sum(c[idx] * dvals))


def l_kronecker_hurwitz(s: complex, d: int, derivative: int = 0) -> complex:
    """L(s, (d/.)) for a (fundamental) top discriminant d <= 1e4."""
    d = int(d)
    if d > HURWITZ_MODULUS_CAP:
        raise ValueError(f"l_kronecker_hurwitz caps at modulus {HURWITZ_MODULUS_CAP}")
    if d == 1:
        return zeta(complex(s), derivative)
    return _l_periodic_real(complex(s), chi_values_kronecker_top(d), derivative)


def _afe_char_values(n: int, M: int, family: str) -> np.ndarray:
    m = np.arange(1, M + 1)
    if family == "jacobi-bottom-n":
        return np.array([kronecker(int(mm), n) for mm in m], dtype=np.float64)
    return np.array([kronecker(n, int(mm)) for mm in m], dtype=np.float64)


def l_afe(
    s: complex,
    n: int,
    family: str = "jacobi-bottom-n",
    C: float = AFE_TRUNCATION_C,
    derivative: int = 0,
    sieve: FactorSieve | None = None,
) -> tuple[complex, float]:
    """Smoothed-AFE evaluation of L(s, chi) for a primitive real character.

    Even characters (n = 1 mod 4 Jacobi, or any Kronecker (d/.)):
        pi^{-s/2} Gamma(s/2) L = sum_m chi(m) (pi m^2)^{-s/2} G(s/2, pi m^2/n)
                               + n^{1/2-s} sum_m chi(m) (pi m^2)^{(s-1)/2} G((1-s)/2, pi m^2/n)
    with G the upper incomplete gamma; odd characters get the m-weighted
    variant with exponents (s+1)/2 and (2-s)/2.  Both sums run to C*sqrt(n).
    Returns (value, err_est).
    """
    s = complex(s)
    n = int(n)
    sv = sieve or shared_sieve()
    if family == "jacobi-bottom-n":
        if n == 1:
            raise NotPrimitiveError("chi_1 is trivial; use the zeta path")
        if n % 2 == 0 or not sv.is_squarefree(n):
            raise NotPrimitiveError(f"chi_{n} is not primitive")
        even = n % 4 == 1
    elif family == "kronecker-top-d":
        from .arith import is_fundamental_discriminant

        if not is_fundamental_discriminant(n, sv):
            raise NotPrimitiveError(f"({n}/.) is not a primitive (fundamental) character")
        even = True
    else:
        raise ValueError(f"unknown family {family!r}")

    M = int(math.ceil(C * math.sqrt(n)))
    chi = _afe_char_values(n, M, family)
    m = np.arange(1, M + 1, dtype=np.float64)
    x = np.pi * m * m / n
    lpm2 = np.log(np.pi * m * m)
    if even:
        a, b = s / 2, (1 - s) / 2
        pref = np.pi ** (s / 2) / gamma_complex(s / 2)
        wa = np.array([upper_gamma(a, xx) for xx in x])
        wb = np.array([upper_gamma(b, xx) for xx in x])
        coef1 = np.exp(-(s / 2) * lpm2)
        coef2 = np.exp(((s - 1) / 2) * lpm2)
        S1 = np.sum(chi * coef1 * wa)
        S2 = np.sum(chi * coef2 * wb)
        val = pref * (S1 + n ** (0.5 - s) * S2)
        if derivative:
            from .special import digamma_complex, upper_gamma_da

            dwa = np.array([upper_gamma_da(a.real, xx) for xx in x]) if s.imag == 0 else _dga_num(a, x)
            dwb = np.array([upper_gamma_da(b.real, xx) for xx in x]) if s.imag == 0 else _dga_num(b, x)
            dS1 = np.sum(chi * coef1 * (-0.5 * lpm2 * wa + 0.5 * dwa))
            dS2 = np.sum(chi * coef2 * (0.5 * lpm2 * wb - 0.5 * dwb))
            dpref_over = 0.5 * math.log(np.pi) - 0.5 * digamma_complex(s / 2)
            dval = dpref_over * val + pref * (dS1 + n ** (0.5 - s) * (dS2 - math.log(n) * S2))
    else:
        a, b = (s + 1) / 2, (2 - s) / 2
        pref = np.pi ** ((s + 1) / 2) / gamma_complex((s + 1) / 2)
        wa = np.array([upper_gamma(a, xx) for xx in x])
        wb = np.array([upper_gamma(b, xx) for xx in x])
        coef1 = m * np.exp(-((s + 1) / 2) * lpm2)
        coef2 = m * np.exp(((s - 2) / 2) * lpm2)
        S1 = np.sum(chi * coef1 * wa)
        S2 = np.sum(chi * coef2 * wb)
        val = pref * (S1 + n ** (0.5 - s) * S2)
        if derivative:
            from .special import digamma_complex, upper_gamma_da

            dwa = np.array([upper_gamma_da(a.real, xx) for xx in x]) if s.imag == 0 else _dga_num(a, x)
            dwb = np.array([upper_gamma_da(b.real, xx) for xx in x]) if s.imag == 0 else _dga_num(b, x)
            dS1 = np.sum(chi * coef1 * (-0.5 * lpm2 * wa + 0.5 * dwa))
            dS2 = np.sum(chi * coef2 * (0.5 * lpm2 * wb - 0.5 * dwb))
            dpref_over = 0.5 * math.log(np.pi) - 0.5 * digamma_complex((s + 1) / 2)
            dval = dpref_over * val + pref * (dS1 + n ** (0.5 - s) * (dS2 - math.log(n) * S2))
    # truncation tail: the next weight, times a crude term count
    tailw = abs(upper_gamma(a.real + 0j, np.pi * (M + 1) ** 2 / n)) * (M + 1.0)
    err = float(tailw + 2e-14 * (abs(S1) + abs(S2) + 1.0))
    if derivative:
        return complex(dval), err
    return complex(val), err


def _dga_num(a: complex, x: np.ndarray) -> np.ndarray:
    h = 1e-6
    return np.array([(upper_gamma(a + h, xx) - upper_gamma(a - h, xx)) / (2 * h) for xx in x])


def l_value(s: complex, n: int, family: str = "jacobi-bottom-n", sieve: FactorSieve | None = None, tier: int = HURWITZ_MODULUS_CAP) -> complex:
    """Tiered evaluator: Hurwitz for n <= tier, AFE beyond."""
    if n <= tier:
        if family == "jacobi-bottom-n":
            return l_hurwitz(s, n, sieve)
        return l_kronecker_hurwitz(s, n)
    return l_afe(s, n, family=family, sieve=sieve)[0]


def l2removed(s: complex, n: int, sieve: FactorSieve | None = None) -> complex:
    """L_{(2)}(s, chi_n) = L(s, chi_{n0}) * prod_{p | 2 n1} (1 - chi_{n0}(p) p^{-s})."""
    s = complex(s)
    n = int(n)
    if n % 2 == 0:
        raise ValueError("modulus must be odd")
    sv = sieve or shared_sieve()
    n0, n1 = sv.squarefree_kernel(n)
    if n0 == 1:
        base = zeta(s)
    else:
        base = l_value(s, n0, sieve=sv)
    out = base * (1 - kronecker(2, n0) * 2.0 ** (-s))
    for p, _ in sv.factor(n1).pairs:
        chi = kronecker(p, n0)
        if chi:
            out *= 1 - chi * complex(p) ** (-s)
    return out


def log_derivative(
    s: complex,
    n: int,
    sieve: FactorSieve | None = None,
    radius: float = 0.01,
    points: int = 32,
) -> complex:
    """L'/L(s, chi_n) by Cauchy-integral differentiation on a circle.

    L'(s) = (1/(m R)) sum_j L(s + R e^{i t_j}) e^{-i t_j} (trapezoid, spectrally
    accurate for the analytic integrand); requires n squarefree and the circle
    inside the zero-free region (Re(s) - radius > 1/2 under GRH).
    """
    s = complex(s)
    n = int(n)
    sv = sieve or shared_sieve()
    if n > 1 and not sv.is_squarefree(n):
        raise NotPrimitiveError("log_derivative needs a squarefree (primitive) modulus")

    def L(z):
        if n == 1:
            return zeta(z)
        return l_value(z, n, sieve=sv)

    Ls = L(s)
    if abs(Ls) < ZERO_THRESHOLD:
        raise ZeroDetectedError(f"|L| < {ZERO_THRESHOLD} at s={s}", modulus=n)
    acc = 0.0 + 0.0j
    for j in range(points):
        t = 2 * np.pi * j / points
        z = s + radius * cmath.exp(1j * t)
        Lz = L(z)
        if abs(Lz) < ZERO_THRESHOLD:
            raise ZeroDetectedError(f"|L| < {ZERO_THRESHOLD} on the circle at {z}", modulus=n)
        acc += Lz * cmath.exp(-1j * t)
    return acc / (points * radius) / Ls


def k_series(s: complex, n: int, sieve: FactorSieve | None = None) -> complex:
    """K(s, chi_n) = sum_q tau(chi_n, q) q^{-s}, continued through the
    periodicity of tau in q:  n^{-s} sum_{r mod n} tau(chi,r) zeta(s, r/n)."""
    s = complex(s)
    n = int(n)
    if n > HURWITZ_MODULUS_CAP:
        raise ValueError(f"k_series caps at modulus {HURWITZ_MODULUS_CAP}")
    if n == 1:
        return zeta(s)  # tau == 1 for the trivial character mod 1
    tau = tau_all_q(chi_values_jacobi(n))
    a = np.arange(1, n + 1) / n
    if complex(s).real < 0.05:
        vals = np.array([hurwitz_zeta(s, aa) for aa in a])
    else:
        vals = hurwitz_zeta_vec(s, a)
    tau_shift = np.concatenate([tau[1:], tau[:1]])  # q = 1..n with tau(n) = tau(0)
    return complex(n ** (-s) * np.sum(tau_shift * vals))


def funceq_gauss_check(s: complex, n: int, sieve: FactorSieve | None = None) -> float:
    """Residual |L(s,chi) - eps(chi) pi^{s-1/2} n^{-s} Gamma_{e/o}(s) K(1-s,chi)|.

    eps is the parity constant (1 even, -i odd); valid for every odd n,
    primitive or not.
    """
    s = complex(s)
    n = int(n)
    lhs = l_hurwitz(s, n, sieve)
    if n % 4 == 1 or n == 1:
        eps, gam = 1.0 + 0.0j, gamma_e(s)
    else:
        eps, gam = -1j, gamma_o(s)
    rhs = eps * np.pi ** (s - 0.5) * float(n) ** (-s) * gam * k_series(1 - s, n, sieve)
    return abs(lhs - rhs)


# ---------------------------------------------------------------------------
# the fundamental-discriminant series L_D


def char_spec(chi) -> tuple[int, np.ndarray]:
    """(period q, coefficient vector c[0..q-1]) for QuadChar / Psi8 / None."""
    if chi is None:
        return 1, np.ones(1)
    if isinstance(chi, QuadChar):
        return chi.n, chi_values_jacobi(chi.n).astype(np.float64)
    if isinstance(chi, Psi8):
        if chi.j == 0:
            return 1, np.ones(1)
        return 8, chi.values_mod8().astype(np.float64)
    raise TypeError("chi must be QuadChar, Psi8 or None (trivial)")


def l_D_partial(s: complex, chi, D: int) -> complex:
    """sum over fundamental discriminants 1 < d <= D of chi(d) d^{-s}."""
    s = complex(s)
    q, vec = char_spec(chi)
    d = fundamental_discriminants_array(int(D))
    cv = vec[d % q]
    keep = cv != 0
    return complex(np.sum(cv[keep] * np.exp(-s * np.log(d[keep].astype(np.float64)))))


def l_D_closed(s: complex, chi) -> complex:
    """Closed form of sum_{d>1 fundamental} chi(d) d^{-s}:

    (1/2 + chi(4)/(2 4^s) + chi(8)/8^s) L(s, chi psi_1)/L(2s, chi^2 psi_1)
    + (1/2 - chi(4)/(2 4^s)) L(s, chi psi_-1)/L(2s, chi^2 psi_1)  - 1,

    the -1 removing the d=1 term the Euler products include.
    """
    s = complex(s)
    q, vec = char_spec(chi)
    L = q * 8 // math.gcd(q, 8)
    m = np.arange(L)
    base = vec[m % q]
    psi1 = np.where(m % 2 == 1, 1.0, 0.0)
    psim1_tab = np.array([0, 1, 0, -1, 0, 1, 0, -1], dtype=np.float64)  # (-4/m)
    psim1 = psim1_tab[m % 8]
    chi4 = vec[4 % q]
    chi8 = vec[8 % q]
    num1 = l_periodic(s, base * psi1)
    num2 = l_periodic(s, base * psim1)
    den = l_periodic(2 * s, (base != 0).astype(np.float64) * psi1)
    A = 0.5 + chi4 / (2 * 4.0**s) + chi8 / 8.0**s
    B = 0.5 - chi4 / (2 * 4.0**s)
    return complex(A * num1 / den + B * num2 / den - 1.0)


# ---------------------------------------------------------------------------
# theta functions (AFE backbone) and their functional equation


def _theta_sum(coefs: np.ndarray, x: float, odd: bool) -> complex:
    """sum over m in Z of c(m mod n) [m if odd] e^{-pi m^2 x}, tail < 1e-16."""
    n = len(coefs)
    m_max = 8
    while (n * (m_max + 1.0) if odd else n) * math.exp(-np.pi * m_max * m_max * x) > 1e-18:
        m_max = int(m_max * 1.4) + 2
    m = np.arange(1, m_max + 1)
    w = np.exp(-np.pi * x * m.astype(np.float64) ** 2)
    cpos = coefs[m % n]
    cneg = coefs[(-m) % n]
    if odd:
        out = np.sum(m * (cpos - cneg) * w)  # (-m) c(-m) = -m c(-m)
    else:
        out = np.sum((cpos + cneg) * w) + coefs[0]
    return complex(out)


def theta_funceq_check(n: int, y: float, sieve: FactorSieve | None = None) -> float:
    """Residual of the theta functional equation for chi_n at y.

    Even n=1 mod 4 (and n=1):  |theta_chi(y) - theta_tau(1/(y n^2))/(n sqrt(y))|.
    Odd  n=3 mod 4: the m-weighted variants with the -i/(n^2 y^{3/2}) factor
    (x e^{-pi x^2} is a Fourier eigenfunction with eigenvalue -i).
    """
    n = int(n)
    y = float(y)
    if n % 2 == 0 or n < 1:
        raise ValueError("n must be odd and positive")
    chiv = chi_values_jacobi(n).astype(np.float64)
    tauv = tau_all_q(chiv)
    odd = n % 4 == 3
    lhs = _theta_sum(chiv.astype(np.complex128), y, odd)
    rhs_inner = _theta_sum(tauv, 1.0 / (y * n * n), odd)
    if odd:
        rhs = -1j / (n * n * y**1.5) * rhs_inner
    else:
        rhs = rhs_inner / (n * math.sqrt(y))
    return abs(lhs - rhs)
