"""Partial sums of the triple Dirichlet series and their functional equations.

A_D(s,w,z) = sum* L(w,chi_d) / (L(z,chi_d) d^s)      (fundamental d)
A(s,w,z)   = sum_{n odd} L_(2)(w,chi_n) / (L_(2)(z,chi_n) n^s)
C(s,w,z)   = sum_{m,k odd} mu(k) K(s,(4mk/.)) / (m^w k^z)

plus the psi-twisted components of C, region classification for the listed
convergence regions, and the termwise functional-equation residuals.  All
sums here run at test scale (moduli <= 1e4); the bulk sweeps live elsewhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .arith import fundamental_discriminants_array, kronecker, shared_sieve
from .errors import DivergentRegionError
from .eulerprod import DEFAULT_SPEC, EulerProductSpec, euler_product_plain
from .gauss import Psi8, chi_values_kronecker_top, tau_all_q
from .lfunc import _l_periodic_real, l2removed, l_value
from .special import gamma_e, hurwitz_zeta_vec, zeta_removed

# region name -> list of (cs, cw, cz, bound): cs*Re(s)+cw*Re(w)+cz*Re(z) > bound
REGIONS: dict[str, list[tuple[float, float, float, float]]] = {
    "R0": [(1, 0, 0, 1), (1, 1, 0, 1.5), (0, 0, 1, 0.5)],
    "R1": [(1, 0, 0, 0.25), (0, 1, 0, 1), (0, 0, 1, 1), (1, 1, 0, 1.5), (1, 0, 1, 1.5)],
    "R2": [(1, 0, 0, 0.25), (0, 0, 1, 0.5), (1, 1, 0, 1.5), (1, 0, 1, 1.5)],
    "R3": [(1, 1, 0, 0.75), (0, 0, 1, 0.5), (1, 0, 0, 1), (1, 1, 1, 2)],
    "R4": [
        (1, 0, 0, 0.25),
        (0, 0, 1, 0.5),
        (1, 1, 0, 0.75),
        (2, 1, 0, 1.75),
        (1, 0, 1, 1.5),
        (2, 1, 1, 3),
        (1, 1, 1, 2),
    ],
    "S0": [(1, 0, 0, 1), (1, 1, 0, 1.5), (0, 0, 1, 0.5)],
    "S1": [(0, 1, 0, 1), (0, 0, 1, 1), (1, 1, 0, 1.5), (1, 0, 1, 1.5)],
    "S2": [(0, 0, 1, 0.5), (1, 1, 0, 1.5), (1, 0, 1, 1.5)],
    "S4": [(1, 2, 0, 2), (1, 0, 2, 2), (1, 0, 1, 1), (1, 1, 0, 1), (0, 0, 1, 0.5)],
    "P": [(1, 0, 1, 1.5), (0, 1, 0, 1.5), (0, 0, 1, 1.5)],
}


def region_classify(s: complex, w: complex, z: complex) -> set[str]:
    """All listed regions containing (s, w, z); S3 needs the min() condition."""
    rs, rw, rz = complex(s).real, complex(w).real, complex(z).real
    out = set()
    for name, conds in REGIONS.items():
        if all(cs * rs + cw * rw + cz * rz > b for cs, cw, cz, b in conds):
            out.add(name)
    # S3: Re(s+w) > 1, Re(s+z) > 1, Re(1-s) + min(0, Re(z-w)) > 1
    if rs + rw > 1 and rs + rz > 1 and (1 - rs) + min(0.0, rz - rw) > 1:
        out.add("S3")
    return out


@dataclass(frozen=True)
class TripleSeriesPoint:
    """A point (s, w, z) together with its region memberships."""

    s: complex
    w: complex
    z: complex

    @property
    def regions(self) -> set[str]:
        return region_classify(self.s, self.w, self.z)


def poly_factor(s: complex, w: complex) -> complex:
    """p(s,w) = (s-1)(s+w-3/2), the pole-clearing polynomial."""
    return (complex(s) - 1) * (complex(s) + complex(w) - 1.5)


_ratio_cache: dict = {}


def _ratio_fund(w: complex, z: complex, d: int) -> complex:
    key = ("d", d, complex(w), complex(z))
    if key not in _ratio_cache:
        num = l_value(w, d, family="kronecker-top-d")
        den = l_value(z, d, family="kronecker-top-d") if z != w else num
        _ratio_cache[key] = num / den
    return _ratio_cache[key]


def A_D_partial(s: complex, w: complex, z: complex, D_max: int, warn_region: bool = False) -> complex:
    """Truncated sum over fundamental discriminants d <= D_max."""
    if warn_region and "R0" not in region_classify(s, w, z):
        raise DivergentRegionError("A_D defining sum needs (s,w,z) in R0")
    s = complex(s)
    out = 0.0 + 0.0j
    for d in fundamental_discriminants_array(int(D_max)):
        d = int(d)
        out += _ratio_fund(w, z, d) * d ** (-s)
    return out


def A_partial(s: complex, w: complex, z: complex, N_max: int) -> complex:
    """Truncated sum over odd n <= N_max of L_(2)(w,chi_n)/L_(2)(z,chi_n) n^{-s}."""
    s = complex(s)
    sv = shared_sieve()
    out = 0.0 + 0.0j
    for n in range(1, int(N_max) + 1, 2):
        key = ("n2", n, complex(w))
        if key not in _ratio_cache:
            _ratio_cache[key] = l2removed(w, n, sv)
        num = _ratio_cache[key]
        if z == w:
            den = num
        else:
            key = ("n2", n, complex(z))
            if key not in _ratio_cache:
                _ratio_cache[key] = l2removed(z, n, sv)
            den = _ratio_cache[key]
        out += num / den * n ** (-s)
    return out


def A_partial_exchanged(s: complex, w: complex, z: complex, MK_max: int) -> complex:
    """The (m,k)-major ordering: sum_{m,k odd} mu(k) L(s,(4mk/.)) / (m^w k^z),
    truncated by rank mk <= MK_max; L via the Hurwitz tier."""
    s, w, z = complex(s), complex(w), complex(z)
    sv = shared_sieve()
    out = 0.0 + 0.0j
    for k in range(1, MK_max + 1, 2):
        mu = sv.mobius(k)
        if mu == 0:
            continue
        for m in range(1, MK_max // k + 1, 2):
            key = ("4mk", 4 * m * k, s)
            if key not in _ratio_cache:
                _ratio_cache[key] = _l_periodic_real(s, chi_values_kronecker_top(4 * m * k))
            out += mu * _ratio_cache[key] * m ** (-w) * k ** (-z)
    return out


# ---------------------------------------------------------------------------
# C(s,w,z) and its twisted components


def _tau_4l_row(l: int) -> np.ndarray:
    """tau((4l/.), q) for q = 0..4l-1 (FFT of the mod-4l Kronecker row)."""
    return tau_all_q(chi_values_kronecker_top(4 * l).astype(np.float64))


def C_partial(s: complex, w: complex, z: complex, Q_max: int, L_max: int) -> complex:
    """Truncated C(s,w,z) = sum_{mk = l <= L_max} mu(k) (mk-split) sum_{q <= Q_max}
    tau((4l/.), q) q^{-s} / (m^w k^z); q-sum over 1 <= q <= Q_max."""
    s, w, z = complex(s), complex(w), complex(z)
    sv = shared_sieve()
    q = np.arange(1, int(Q_max) + 1)
    qs = np.exp(-s * np.log(q.astype(np.float64)))
    out = 0.0 + 0.0j
    for l in range(1, int(L_max) + 1, 2):
        tau = _tau_4l_row(l)
        qsum = np.sum(tau[q % (4 * l)] * qs)
        # sum over factorizations l = m*k with mu(k) != 0
        coef = 0.0 + 0.0j
        for k in _divisors(l, sv):
            mu = sv.mobius(k)
            if mu == 0:
                continue
            m = l // k
            coef += mu * m ** (-w) * k ** (-z)
        out += coef * qsum
    return out


def _divisors(n: int, sieve) -> list[int]:
    ds = [1]
    for p, e in sieve.factor(n).pairs:
        ds = [d * p**i for d in ds for i in range(e + 1)]
    return ds


def C_twisted_partial(
    s: complex,
    w: complex,
    z: complex,
    psi: Psi8,
    psi_prime: Psi8,
    Q_max: int,
    L_max: int,
) -> complex:
    """sum_{l odd <= L_max} sum_{q <= Q_max} G((./l),q) psi(l) psi'(q)
    a_{z-w}(l) l^{-w} q^{-s}."""
    from .gauss import G_quadratic

    s, w, z = complex(s), complex(w), complex(z)
    sv = shared_sieve()
    psv = psi.values_mod8()
    ppv = psi_prime.values_mod8() if psi_prime.j != 0 else np.ones(8, dtype=np.int8)
    q = np.arange(1, int(Q_max) + 1)
    qs = np.exp(-s * np.log(q.astype(np.float64))) * ppv[q % 8]
    out = 0.0 + 0.0j
    for l in range(1, int(L_max) + 1, 2):
        pl = psv[l % 8]
        if pl == 0:
            continue
        at = sv.a_t(l, z - w)
        if at == 0 and l > 1:
            pass  # a_t can vanish only at z == w; keep the zero
        g = np.array([G_quadratic(l, int(qq), sv) for qq in q])
        out += pl * at * l ** (-w) * np.sum(g * qs)
    return out


def C_from_twisted(s: complex, w: complex, z: complex, Q: int, L_max: int) -> complex:
    """The decomposition of C into twisted components, with the q-truncations
    matched to a direct C_partial at q <= 4Q:

        C = -2^{-s} (C(psi_2, psi_1) + C(psi_-2, psi_1))     [q <= 2Q]
          + 4^{-s} (C(psi_1, psi_0) + C(psi_-1, psi_0))      [q <= Q]
          + C(psi_1, psi_-1) - C(psi_-1, psi_-1)             [q <= 4Q]
    """
    s = complex(s)
    t1 = C_twisted_partial(s, w, z, Psi8(2), Psi8(1), 2 * Q, L_max)
    t2 = C_twisted_partial(s, w, z, Psi8(-2), Psi8(1), 2 * Q, L_max)
    t3 = C_twisted_partial(s, w, z, Psi8(1), Psi8(0), Q, L_max)
    t4 = C_twisted_partial(s, w, z, Psi8(-1), Psi8(0), Q, L_max)
    t5 = C_twisted_partial(s, w, z, Psi8(1), Psi8(-1), 4 * Q, L_max)
    t6 = C_twisted_partial(s, w, z, Psi8(-1), Psi8(-1), 4 * Q, L_max)
    return -(2.0 ** (-s)) * (t1 + t2) + 4.0 ** (-s) * (t3 + t4) + t5 - t6


# ---------------------------------------------------------------------------
# the inner l-series D(w,t,q;psi) and its L-function factorization


def d_series_direct(w: complex, t: complex, q: int, psi: Psi8, L_max: int) -> complex:
    """sum_{l odd <= L_max} G((./l), q) psi(l) a_t(l) l^{-w}, by a sieve fill
    of the multiplicative G((./l), q) over all l."""
    w, t = complex(w), complex(t)
    L = int(L_max)
    sv = shared_sieve(max(L, 4))
    primes = sv.primes()
    odd_primes = primes[primes > 2]
    qv = int(q)
    # multiplicative fill of G over l, and of a_t
    g = np.ones(L + 1)
    at = np.ones(L + 1, dtype=np.complex128)
    from .gauss import G_prime_power

    for p in odd_primes:
        p = int(p)
        if p > L:
            break
        at[p::p] *= 1.0 - p ** (-t)
        if qv % p:
            g[p::p] *= kronecker(qv, p) * math.sqrt(p)
            if p * p <= L:
                g[p * p :: p * p] = 0.0
        else:
            fac = np.ones(L + 1)
            e = 1
            while p**e <= L:
                fac[p**e :: p**e] = float(G_prime_power(p, e, qv).real)
                e += 1
            g *= fac
    idx = np.arange(1, L + 1, 2)
    vals = g[idx] * at[idx] * Psi8(psi.j).values_mod8()[idx % 8]
    return complex(np.sum(vals * np.exp(-w * np.log(idx.astype(np.float64)))))


def d_series_closed(
    w: complex, t: complex, q: int, psi: Psi8, spec: EulerProductSpec = DEFAULT_SPEC
) -> complex:
    """Factored form: L(w-1/2, (4q/.) psi) / zeta_(4q)(2w-1) * E * P_{p|q}."""
    w, t = complex(w), complex(t)
    qv = int(q)
    sv = shared_sieve()
    # L(w-1/2, (4q/.) psi) on the period lcm(4q, 8)
    per = (4 * qv) * 8 // math.gcd(4 * qv, 8)
    mm = np.arange(per)
    vec = np.array([kronecker(4 * qv, int(m)) for m in range(per)], dtype=np.float64)
    if psi.j != 0:
        vec = vec * psi.values_mod8()[mm % 8]
    lnum = _l_periodic_real(w - 0.5, vec)
    lden = _l_periodic_real(t + w - 0.5, vec)
    den = zeta_removed(2 * w - 1, 4 * qv)

    psv = psi.values_mod8()

    def e_factor(p):
        pi = p.astype(np.int64)
        chi = np.array([kronecker(4 * qv, int(x)) for x in pi], dtype=np.float64)
        cp = chi * psv[pi % 8]
        u = np.exp((t + w - 0.5) * np.log(p))
        v = np.exp((w - 0.5) * np.log(p))
        return (chi * chi) / ((u - cp) * (v + cp))

    eprod, _ = euler_product_plain(e_factor, spec, decay=float((t + 2 * w - 1).real))
    E = eprod / lden
    # finite product over odd p | q
    from .gauss import G_prime_power

    pfin = 1.0 + 0.0j
    for p, alpha in sv.factor(qv).pairs:
        if p == 2:
            continue
        loc = 1.0 + 0.0j
        for k in range(1, alpha + 2):
            gpk = G_prime_power(p, k, qv)
            if gpk == 0:
                continue
            loc += gpk * psv[pow(p, k, 8)] * (1.0 - p ** (-t)) * p ** (-k * w)
        pfin *= loc
    return complex(lnum / den * E * pfin)


# ---------------------------------------------------------------------------
# functional-equation residuals


def funceq_s_termwise(s: complex, m: int, k: int) -> float:
    """Per-(m,k) residual of L(s, (4mk/.)) = pi^{s-1/2} Gamma_e(s) (4mk)^{-s}
    K(1-s, (4mk/.)); the characters (4mk/.) are even, so eps = 1."""
    s = complex(s)
    n = 4 * int(m) * int(k)
    vec = chi_values_kronecker_top(n).astype(np.float64)
    lhs = _l_periodic_real(s, vec)
    tau = tau_all_q(vec)
    a = np.arange(1, n + 1) / n
    vals = hurwitz_zeta_vec(1 - s, a)
    tau_shift = np.concatenate([tau[1:], tau[:1]])
    kser = float(n) ** (s - 1) * np.sum(tau_shift * vals)
    rhs = np.pi ** (s - 0.5) * gamma_e(s) * float(n) ** (-s) * kser
    return abs(lhs - rhs)


def classical_funceq_residual(w: complex, d: int) -> float:
    """|L(w,chi_d) - pi^{w-1/2} d^{1/2-w} Gamma_e(w) L(1-w,chi_d)| for a
    fundamental discriminant d (even primitive character)."""
    w = complex(w)
    lhs = l_value(w, d, family="kronecker-top-d")
    rhs = np.pi ** (w - 0.5) * float(d) ** (0.5 - w) * gamma_e(w) * l_value(1 - w, d, family="kronecker-top-d")
    return abs(lhs - rhs)


def funceq_w_check(s: complex, w: complex, z: complex, D_max: int) -> float:
    """|A_D(s,w,z) - pi^{w-1/2} Gamma_e(w) A_D(s+w-1/2, 1-w, z)| with the two
    truncated sums running over the same discriminants."""
    s, w, z = complex(s), complex(w), complex(z)
    lhs = A_D_partial(s, w, z, D_max)
    rhs = np.pi ** (w - 0.5) * gamma_e(w) * A_D_partial(s + w - 0.5, 1 - w, z, D_max)
    return abs(lhs - rhs)
