"""Euler products and residue constants.

Every product here has factors 1 + c(p) where c(p) is a finite combination of
prime powers p^{-e}.  Truncating at the prime cutoff alone cannot reach the
package tolerances (the slowest factors decay barely faster than p^{-3/2}), so
primes up to the cutoff are accumulated exactly in log space (compensated
fsum) and the tail over p > cutoff is summed analytically: log(1+c(p)) is
expanded on its exponent lattice and the few slowly-decaying lattice terms go
through the prime zeta function.  err_est bounds the dropped lattice
remainder.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .arith import shared_sieve
from .errors import DivergentRegionError, PoleError
from .special import POLE_GUARD, go_plus_ge, prime_zeta, prime_zeta_logsum, zeta, zeta_removed

_EMAX = 7.0  # lattice truncation for series algebra
_ETAIL = 4.5  # exponents above this are bounded, not summed
_KEY_SCALE = 1e9


@dataclass(frozen=True)
class EulerProductSpec:
    prime_cutoff: int = 1_000_000
    tail_bound_mode: str = "geometric-estimate"


DEFAULT_SPEC = EulerProductSpec()

_prime_cache: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def _primes_upto(cutoff: int) -> tuple[np.ndarray, np.ndarray]:
    """(primes, log primes) as float64 arrays, cached per cutoff."""
    if cutoff not in _prime_cache:
        sieve = shared_sieve(max(cutoff, 4))
        p = sieve.primes()
        p = p[p <= cutoff].astype(np.float64)
        _prime_cache[cutoff] = (p, np.log(p))
    return _prime_cache[cutoff]


def _key(e: complex) -> tuple[int, int]:
    return (round(e.real * _KEY_SCALE), round(e.imag * _KEY_SCALE))


class PrimeSeries:
    """Finite sum  sum_e  coeff_e * p^{-e},  truncated at Re(e) <= EMAX."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms = terms or {}

    @classmethod
    def mono(cls, e: complex, c: complex = 1.0) -> "PrimeSeries":
        e = complex(e)
        if e.real > _EMAX:
            return cls()
        return cls({_key(e): (e, complex(c))})

    @classmethod
    def one(cls) -> "PrimeSeries":
        return cls.mono(0.0)

    def min_re(self) -> float:
        if not self.terms:
            return math.inf
        return min(e.real for e, _ in self.terms.values())

    def __add__(self, other: "PrimeSeries") -> "PrimeSeries":
        out = dict(self.terms)
        for k, (e, c) in other.terms.items():
            if k in out:
                out[k] = (e, out[k][1] + c)
            else:
                out[k] = (e, c)
        return PrimeSeries({k: v for k, v in out.items() if v[1] != 0})

    def __neg__(self) -> "PrimeSeries":
        return PrimeSeries({k: (e, -c) for k, (e, c) in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: complex) -> "PrimeSeries":
        return PrimeSeries({k: (e, cc * c) for k, (e, cc) in self.terms.items()})

    def __mul__(self, other: "PrimeSeries") -> "PrimeSeries":
        out: dict = {}
        for e1, c1 in self.terms.values():
            for e2, c2 in other.terms.values():
                e = e1 + e2
                if e.real > _EMAX:
                    continue
                k = _key(e)
                if k in out:
                    out[k] = (e, out[k][1] + c1 * c2)
                else:
                    out[k] = (e, c1 * c2)
        return PrimeSeries({k: v for k, v in out.items() if v[1] != 0})

    @classmethod
    def geometric(cls, e: complex) -> "PrimeSeries":
        """1/(p^e - 1) = sum_{k>=1} p^{-ke}; needs Re(e) > 0."""
        e = complex(e)
        if e.real <= 0:
            raise DivergentRegionError(f"geometric series needs Re(e) > 0, got {e}")
        out = cls()
        k = 1
        while (k * e).real <= _EMAX:
            out = out + cls.mono(k * e)
            k += 1
        return out

    @classmethod
    def inv_p_plus_1(cls) -> "PrimeSeries":
        """1/(p+1) = sum_{j>=1} (-1)^{j+1} p^{-j}."""
        out = cls()
        j = 1
        while j <= _EMAX:
            out = out + cls.mono(float(j), (-1.0) ** (j + 1))
            j += 1
        return out

    def log1p(self) -> "PrimeSeries":
        """log(1 + S) as a lattice series; needs min Re exponent > 0."""
        if not self.terms:
            return PrimeSeries()
        m = self.min_re()
        if m <= 0:
            raise DivergentRegionError("log1p needs all exponents with positive real part")
        out = PrimeSeries()
        power = PrimeSeries(dict(self.terms))
        k = 1
        while power.terms:
            out = out + power.scale((-1.0) ** (k + 1) / k)
            k += 1
            if k * m > _EMAX:
                break
            power = power * self
        return out


def _log1p_complex(c: np.ndarray) -> np.ndarray:
    """log(1+c) with absolute error O(eps*|c|) even for |c| ~ 1e-12.

    np.log(1+c) rounds the sum 1+c and leaves a systematic ~eps absolute
    error per factor, which a million factors turn into ~1e-11; the quartic
    series keeps the error proportional to |c| instead.
    """
    c = np.asarray(c, dtype=np.complex128)
    small = np.abs(c) < 1e-3
    out = np.empty_like(c)
    cs = c[small]
    out[small] = cs * (1.0 - cs * (0.5 - cs * (1.0 / 3.0 - 0.25 * cs)))
    out[~small] = np.log(1.0 + c[~small])
    return out


def _require_convergent(series: PrimeSeries, what: str) -> None:
    m = series.min_re()
    if not math.isfinite(m):
        return
    if m <= 1.0 + 1e-9:
        raise DivergentRegionError(f"{what}: slowest factor decays like p^-{m:.4g}, product diverges")


def _accelerated_product(
    factor_fn,
    c_series: PrimeSeries,
    what: str,
    spec: EulerProductSpec,
    odd_only: bool = False,
) -> tuple[complex, float]:
    """prod over primes (odd primes if odd_only) of (1 + c(p)) -> (value, err).

    factor_fn(p, logp) returns the exact c(p) values used below the cutoff;
    c_series is the same c as a lattice series, used for the analytic tail.
    """
    _require_convergent(c_series, what)
    log_series = c_series.log1p()
    p, logp = _primes_upto(spec.prime_cutoff)
    if odd_only:
        p, logp = p[1:], logp[1:]
    c_vals = np.asarray(factor_fn(p, logp), dtype=np.complex128)
    if np.any(np.abs(1.0 + c_vals) < 1e-15):
        raise DivergentRegionError(f"{what}: factor vanishes at some prime")
    logs = _log1p_complex(c_vals)
    direct = complex(math.fsum(logs.real), math.fsum(logs.imag))
    # analytic tail: slow lattice terms through the prime zeta function
    lattice = 0.0 + 0.0j
    dropped = 0.0
    for e, c in log_series.terms.values():
        if e.real <= _ETAIL:
            tail = prime_zeta(e) - complex(np.sum(np.exp(-e * logp)))
            if odd_only:
                tail -= 2.0 ** (-e)
            lattice += c * tail
        else:
            dropped += abs(c)
    total = direct + lattice
    value = complex(np.exp(total))
    P = float(spec.prime_cutoff)
    err = abs(value) * (dropped * P ** (1.0 - _ETAIL) / (_ETAIL - 1.0) + 5e-15)
    return value, err


def euler_product_plain(factor_fn, spec: EulerProductSpec, odd_only: bool = False, decay: float = 2.0) -> tuple[complex, float]:
    """prod (1 + c(p)) by direct truncation; factor_fn(p_array) -> c values.

    For factors carrying character values (no fixed exponent lattice).
    err_est integrates the dominating p^{-decay} envelope past the cutoff.
    """
    p, _ = _primes_upto(spec.prime_cutoff)
    if odd_only:
        p = p[1:]
    c = np.asarray(factor_fn(p), dtype=np.complex128)
    logs = _log1p_complex(c)
    total = complex(math.fsum(logs.real), math.fsum(logs.imag))
    value = complex(np.exp(total))
    P = float(spec.prime_cutoff)
    amp = float(np.max(np.abs(c[-200:]))) * P**decay
    tail = 2.0 * amp * P ** (1.0 - decay) / max(decay - 1.0, 1e-9) / math.log(P)
    return value, abs(value) * (tail + 5e-15)


def _guard_zeta_arg(u: complex, what: str) -> None:
    if abs(u - 1.0) < POLE_GUARD:
        raise PoleError(f"{what}: zeta argument {u} within guard radius of the pole")


def _pw(e: complex, logp: np.ndarray) -> np.ndarray:
    """p^{-e} over the prime array."""
    if complex(e).imag == 0.0:
        return np.exp(-complex(e).real * logp)
    return np.exp(-complex(e) * logp)


# ---------------------------------------------------------------------------
# the named products


def P_D_err(z: complex, w: complex, spec: EulerProductSpec = DEFAULT_SPEC) -> tuple[complex, float]:
    z, w = complex(z), complex(w)
    c = (PrimeSeries.one() - PrimeSeries.mono(w - z)) * PrimeSeries.geometric(z + w) * PrimeSeries.inv_p_plus_1()

    def f(p, logp):
        return (1.0 - _pw(w - z, logp)) / ((1.0 / _pw(z + w, logp) - 1.0) * (p + 1.0))

    return _accelerated_product(f, c, "P_D", spec)


def P_D(z: complex, w: complex, spec: EulerProductSpec = DEFAULT_SPEC) -> complex:
    """prod_p (1 + (1 - p^{z-w}) / ((p^{z+w} - 1)(p + 1)))."""
    return P_D_err(z, w, spec)[0]


def P_big_err(z: complex, spec: EulerProductSpec = DEFAULT_SPEC) -> tuple[complex, float]:
    z = complex(z)
    c = PrimeSeries.geometric(z - 0.5) * PrimeSeries.inv_p_plus_1()

    def f(p, logp):
        return 1.0 / ((1.0 / _pw(z - 0.5, logp) - 1.0) * (p + 1.0))

    return _accelerated_product(f, c, "P", spec)


def P_big(z: complex, spec: EulerProductSpec = DEFAULT_SPEC) -> complex:
    """prod_p (1 + 1/((p^{z-1/2} - 1)(p + 1)))."""
    return P_big_err(z, spec)[0]


def P_D2_err(alpha: complex, beta: complex, spec: EulerProductSpec = DEFAULT_SPEC) -> tuple[complex, float]:
    a, b = complex(alpha), complex(beta)
    c = (PrimeSeries.one() - PrimeSeries.mono(a - b)) * PrimeSeries.geometric(1 + a + b) * PrimeSeries.inv_p_plus_1()

    def f(p, logp):
        x = _pw(-(a - b), logp)  # p^{a-b}
        return (x - 1.0) / (x * (p + 1.0) * (1.0 / _pw(1 + a + b, logp) - 1.0))

    return _accelerated_product(f, c, "P_D2", spec, odd_only=True)


def P_D2(alpha: complex, beta: complex, spec: EulerProductSpec = DEFAULT_SPEC) -> complex:
    """prod_{p>2} (1 + (p^{a-b} - 1)/(p^{a-b}(p+1)(p^{1+a+b} - 1)))."""
    return P_D2_err(alpha, beta, spec)[0]


def A_D_arith_factor(alpha: complex, beta: complex, spec: EulerProductSpec = DEFAULT_SPEC) -> complex:
    """prod_p (1 - p^{-1-a-b})^{-1} (1 - 1/((p+1)p^{1+2a}) - 1/((p+1)p^{a+b}))."""
    a, b = complex(alpha), complex(beta)
    inv = PrimeSeries.inv_p_plus_1()
    u = inv * PrimeSeries.mono(1 + 2 * a)
    v = inv * PrimeSeries.mono(a + b)
    expand = PrimeSeries.one() + PrimeSeries.geometric(1 + a + b)
    c = (PrimeSeries.one() - u - v) * expand - PrimeSeries.one()

    def f(p, logp):
        x = _pw(1 + a + b, logp)
        return (1.0 - _pw(1 + 2 * a, logp) / (p + 1.0) - _pw(a + b, logp) / (p + 1.0)) / (1.0 - x) - 1.0

    value, _ = _accelerated_product(f, c, "A_D_arith_factor", spec)
    return value


# ---------------------------------------------------------------------------
# residues


def residue_s1_AD(w: complex, z: complex, spec: EulerProductSpec = DEFAULT_SPEC) -> complex:
    """res_{s=1} A_D(s,w,z) = zeta(2w) / (2 zeta(2) zeta(z+w)) * P_D(z,w)."""
    w, z = complex(w), complex(z)
    _guard_zeta_arg(2 * w, "residue_s1_AD")
    _guard_zeta_arg(z + w, "residue_s1_AD")
    return zeta(2 * w) / (2 * zeta(2.0) * zeta(z + w)) * P_D(z, w, spec)


def residue_s1_A(alpha: complex, beta: complex, spec: EulerProductSpec = DEFAULT_SPEC) -> complex:
    """res_{s=1} A(s, 1/2+a, 1/2+b) =
    zeta_(2)(1+2a) / (2 zeta_(2)(1+a+b)) * prod_{p>2}(1 + (p^{a-b}-1)/(p^{1+a-b}(p^{1+a+b}-1)))."""
    a, b = complex(alpha), complex(beta)
    _guard_zeta_arg(1 + 2 * a, "residue_s1_A")
    _guard_zeta_arg(1 + a + b, "residue_s1_A")
    c = (PrimeSeries.mono(1.0) - PrimeSeries.mono(1 + a - b)) * PrimeSeries.geometric(1 + a + b)

    def f(p, logp):
        x = _pw(-(a - b), logp)  # p^{a-b}
        return (x - 1.0) / (x * p * (1.0 / _pw(1 + a + b, logp) - 1.0))

    prod, _ = _accelerated_product(f, c, "residue_s1_A", spec, odd_only=True)
    return zeta_removed(1 + 2 * a, 2) / (2 * zeta_removed(1 + a + b, 2)) * prod


def residue_C_w32(s: complex, z: complex, spec: EulerProductSpec = DEFAULT_SPEC) -> complex:
    """res_{w=3/2} C(s,w,z) = P(z) zeta(2s) / (zeta(2) zeta(z-1/2)) * 2^{z+1/2}/(3*2^{z-1/2} - 2)."""
    s, z = complex(s), complex(z)
    _guard_zeta_arg(2 * s, "residue_C_w32")
    _guard_zeta_arg(z - 0.5, "residue_C_w32")
    return (
        P_big(z, spec)
        * zeta(2 * s)
        / (zeta(2.0) * zeta(z - 0.5))
        * 2 ** (z + 0.5)
        / (3 * 2 ** (z - 0.5) - 2)
    )


def residue_s_1malpha_A(alpha: complex, beta: complex, spec: EulerProductSpec = DEFAULT_SPEC) -> complex:
    """res_{s=1-a} A(s, 1/2+a, 1/2+b) =
    pi^a (Go + Ge)(1/2+a) * P(3/2-a+b) zeta(1-2a) / (zeta(2) zeta(1-a+b) (6 - 2^{1+a-b}))."""
    a, b = complex(alpha), complex(beta)
    if a == b:
        return 0.0 + 0.0j  # 1/zeta at the pole: the residue vanishes in the limit
    _guard_zeta_arg(1 - 2 * a, "residue_s_1malpha_A")
    u = 1 - a + b
    if abs(u - 1.0) < POLE_GUARD:
        return 0.0 + 0.0j
    return (
        np.pi**a
        * go_plus_ge(0.5 + a)
        * P_big(1.5 - a + b, spec)
        * zeta(1 - 2 * a)
        / (zeta(2.0) * zeta(u) * (6 - 2 ** (1 + a - b)))
    )


def residue_s_1malpha_A_intermediate(alpha: complex, beta: complex, spec: EulerProductSpec = DEFAULT_SPEC) -> complex:
    """The pre-closed-form variant with cos(pi a/2) Gamma(1/2-a); must equal
    residue_s_1malpha_A identically (cross-check route)."""
    from .special import gamma_complex

    a, b = complex(alpha), complex(beta)
    if a == b:
        return 0.0 + 0.0j
    _guard_zeta_arg(1 - 2 * a, "residue_s_1malpha_A")
    u = 1 - a + b
    if abs(u - 1.0) < POLE_GUARD:
        return 0.0 + 0.0j
    return (
        np.pi ** (a - 0.5)
        * np.cos(np.pi * a / 2)
        * gamma_complex(0.5 - a)
        * P_big(1.5 - a + b, spec)
        * zeta(1 - 2 * a)
        / (zeta(2.0) * zeta(u))
        * 2**b
        / (3 * 2 ** (b - a) - 1)
    )


# ---------------------------------------------------------------------------
# prime log sums for the log-derivative main terms


def _logsum_tail(e_list, spec: EulerProductSpec) -> complex:
    """sum over (e, c): c * sum_{p > cutoff} log(p) p^{-e}."""
    p, logp = _primes_upto(spec.prime_cutoff)
    out = 0.0 + 0.0j
    for e, c in e_list:
        full = prime_zeta_logsum(e)
        prefix = complex(np.sum(logp * np.exp(-e * logp)))
        out += c * (full - prefix)
    return out


def log_prime_sum_p(r: complex, spec: EulerProductSpec = DEFAULT_SPEC) -> complex:
    """sum_{p>2} log(p) / (p (p^{1+2r} - 1)), exact tail past the cutoff."""
    r = complex(r)
    u = 1 + 2 * r
    if u.real <= 0:
        raise DivergentRegionError("log_prime_sum_p needs Re(1+2r) > 0")
    p, logp = _primes_upto(spec.prime_cutoff)
    p, logp = p[1:], logp[1:]
    vals = logp / (p * (np.exp(u * logp) - 1.0))
    direct = complex(math.fsum(vals.real), math.fsum(vals.imag))
    # 1/(p(p^u - 1)) = sum_{k>=1} p^{-1-ku}
    tail_terms = []
    k = 1
    while (1 + k * u).real <= 42.0:
        tail_terms.append((1 + k * u, 1.0))
        k += 1
    return direct + _logsum_tail(tail_terms, spec)


def log_prime_sum_p_plus_1(r: complex, spec: EulerProductSpec = DEFAULT_SPEC) -> complex:
    """sum_{p>2} log(p) / ((p+1)(p^{1+2r} - 1)), exact tail past the cutoff."""
    r = complex(r)
    u = 1 + 2 * r
    if u.real <= 0:
        raise DivergentRegionError("log_prime_sum_p_plus_1 needs Re(1+2r) > 0")
    p, logp = _primes_upto(spec.prime_cutoff)
    p, logp = p[1:], logp[1:]
    vals = logp / ((p + 1.0) * (np.exp(u * logp) - 1.0))
    direct = complex(math.fsum(vals.real), math.fsum(vals.imag))
    # 1/((p+1)(p^u-1)) = sum_{j>=1} (-1)^{j+1} p^{-j} sum_{k>=1} p^{-ku}
    tail_terms = []
    j = 1
    while j + u.real <= 42.0:
        k = 1
        while (j + k * u).real <= 42.0:
            tail_terms.append((j + k * u, (-1.0) ** (j + 1)))
            k += 1
        j += 1
    return direct + _logsum_tail(tail_terms, spec)
