"""Shifted Gauss sums for real characters.

tau(chi, q) = sum_{j mod n} chi(j) e(jq/n).  The normalized sums
G(chi_n, q) = ((1-i)/2 + (-1/n)(1+i)/2) tau(chi_n, q) are multiplicative in n
and admit an exact case split at odd prime powers, so G (hence tau) is
computed from the factorization of n; the brute-force tau is kept as the
oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .arith import FactorSieve, kronecker, shared_sieve
from .errors import NotPrimitiveError


@dataclass(frozen=True)
class QuadChar:
    """The real character (./n) for odd positive n."""

    n: int
    n0: int
    n1: int
    parity: str  # 'even' iff n = 1 mod 4
    primitive: bool

    @classmethod
    def from_modulus(cls, n: int, sieve: FactorSieve | None = None) -> "QuadChar":
        n = int(n)
        if n < 1 or n % 2 == 0:
            raise ValueError("QuadChar modulus must be odd and positive")
        s = sieve or shared_sieve()
        n0, n1 = s.squarefree_kernel(n)
        parity = "even" if n % 4 == 1 else "odd"
        return cls(n=n, n0=n0, n1=n1, parity=parity, primitive=(n1 == 1))

    def value(self, m: int) -> int:
        return kronecker(m, self.n)

    def values(self) -> np.ndarray:
        return chi_values_jacobi(self.n)


PSI8_J = (0, 1, -1, 2, -2)


@dataclass(frozen=True)
class Psi8:
    """psi_j(m) = (4j/m) for j in {1,-1,2,-2}; psi_0 is identically 1."""

    j: int

    def __post_init__(self):
        if self.j not in PSI8_J:
            raise ValueError("Psi8 index must be one of 0, 1, -1, 2, -2")

    @property
    def modulus(self) -> int:
        return 1 if self.j == 0 else 8

    def value(self, m: int) -> int:
        if self.j == 0:
            return 1
        return kronecker(4 * self.j, m)

    def values_mod8(self) -> np.ndarray:
        return np.array([self.value(m) for m in range(8)], dtype=np.int8)


def chi_values_jacobi(n: int) -> np.ndarray:
    """(j/n) for j = 0..n-1 as int8."""
    return np.array([kronecker(j, n) for j in range(n)], dtype=np.int8)


def chi_values_kronecker_top(d: int) -> np.ndarray:
    """(d/j) for j = 0..d-1 as int8 (periodic mod d for d = 0,1 mod 4)."""
    if d % 4 not in (0, 1):
        raise ValueError("(d/.) is periodic mod d only for d = 0,1 mod 4")
    return np.array([kronecker(d, j) for j in range(d)], dtype=np.int8)


def tau_bruteforce(chi_values, q: int) -> complex:
    """Direct sum_{j mod n} chi(j) e(jq/n); the oracle, n <= 1e4 scale."""
    vals = np.asarray(chi_values, dtype=np.float64)
    n = len(vals)
    j = np.arange(n)
    phase = np.exp((2j * np.pi * int(q) / n) * j)
    return complex(np.sum(vals * phase))


def tau_all_q(chi_values) -> np.ndarray:
    """tau(chi, q) for q = 0..n-1 in one FFT (chi real)."""
    vals = np.asarray(chi_values, dtype=np.float64)
    return np.conj(np.fft.fft(vals))


def g_normalization(n: int) -> complex:
    """G = g_normalization(n) * tau:  1 for n=1 mod 4, -i for n=3 mod 4."""
    return (1 - 1j) / 2 + kronecker(-1, n) * (1 + 1j) / 2


def G_prime_power(p: int, k: int, q: int) -> complex:
    """G((./p^k), q) for odd prime p, via the exact case split on ord_p(q).

    q = 0 behaves as ord_p(q) = infinity.
    """
    if k < 1:
        return 1.0 + 0.0j
    if q == 0:
        alpha = None  # infinite
    else:
        alpha = 0
        qq = abs(int(q))
        while qq % p == 0:
            qq //= p
            alpha += 1
    if alpha is None or k <= alpha:
        if k % 2 == 0:
            return complex(p ** (k - 1) * (p - 1))  # phi(p^k)
        return 0.0 + 0.0j
    if k == alpha + 1:
        if k % 2 == 0:
            return complex(-(p**alpha))
        qred = int(q) // (p**alpha)
        return kronecker(qred, p) * (p**alpha) * math.sqrt(p)
    return 0.0 + 0.0j


def G_quadratic(n: int, q: int, sieve: FactorSieve | None = None) -> complex:
    """G(chi_n, q) by multiplicativity over the prime powers of n."""
    s = sieve or shared_sieve()
    out = 1.0 + 0.0j
    for p, e in s.factor(int(n)).pairs:
        out *= G_prime_power(p, e, q)
        if out == 0:
            return 0.0 + 0.0j
    return out


def tau_quadratic(n: int, q: int, sieve: FactorSieve | None = None) -> complex:
    """tau(chi_n, q) via the multiplicative G route (exact for any odd n)."""
    return G_quadratic(n, q, sieve) / g_normalization(n)


def tau_4l(l: int, q: int, sieve: FactorSieve | None = None) -> complex:
    """tau((4l/.), q) from tau((./l), q) by the six-case parity table."""
    l = int(l)
    if l < 1 or l % 2 == 0:
        raise ValueError("l must be odd and positive")
    q = int(q)
    if l % 4 == 1:
        if q % 2 == 1:
            return 0.0 + 0.0j
        t = tau_quadratic(l, q, sieve)
        return -2 * t if q % 4 == 2 else 2 * t
    if q % 2 == 0:
        return 0.0 + 0.0j
    t = tau_quadratic(l, q, sieve)
    return -2j * t if q % 4 == 1 else 2j * t


def epsilon_factor(chi: QuadChar, sieve: FactorSieve | None = None) -> tuple[complex, complex]:
    """(a, eps(chi)) with a in {1, -i} by parity and eps = a tau(chi,1)/sqrt(n)."""
    if not chi.primitive:
        raise NotPrimitiveError(f"chi_{chi.n} is not primitive (n not squarefree)")
    a = 1.0 + 0.0j if chi.parity == "even" else -1j
    eps = a * tau_quadratic(chi.n, 1, sieve) / math.sqrt(chi.n)
    return a, eps
