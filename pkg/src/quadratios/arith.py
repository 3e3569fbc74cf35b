"""Exact integer arithmetic: Kronecker symbols, sieves, fundamental discriminants.

Everything here is exact integer work.  A smallest-prime-factor sieve is built
once (default limit 2e6) and shared read-only by the rest of the package; all
factor-dependent helpers require their argument to stay below the limit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SieveTooSmallError

DEFAULT_SIEVE_LIMIT = 2_000_000


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n) for arbitrary integers.

    Conventions: (a/0) = 1 iff a = ±1 else 0; (a/-1) = -1 iff a < 0;
    (a/2) = 0 for even a and ±1 by a mod 8 otherwise.  For odd positive n
    this is the Jacobi symbol, computed with the binary algorithm.
    """
    a = int(a)
    n = int(n)
    if n == 0:
        if a == 0:
            raise ValueError("kronecker(0, 0) is undefined")
        return 1 if a in (1, -1) else 0
    sign = 1
    if n < 0:
        n = -n
        if a < 0:
            sign = -sign
    if n % 2 == 0:
        if a % 2 == 0:
            return 0
        z = (n & -n).bit_length() - 1
        n >>= z
        if z & 1 and a % 8 in (3, 5):
            sign = -sign
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                sign = -sign
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            sign = -sign
        a %= n
    return sign if n == 1 else 0


@dataclass(frozen=True)
class Factorization:
    """n = prod p^e with primes strictly increasing."""

    n: int
    pairs: tuple

    def __post_init__(self):
        m = 1
        for p, e in self.pairs:
            m *= p**e
        if m != self.n:
            raise ValueError(f"inconsistent factorization of {self.n}")


FUND_KIND_1MOD4 = "1mod4-squarefree"
FUND_KIND_4M3 = "4m-m3mod4"
FUND_KIND_8M = "8m-m-odd"


@dataclass(frozen=True)
class FundamentalDiscriminant:
    d: int
    kind: str


class FactorSieve:
    """Smallest-prime-factor table for 2..limit, built once, then immutable."""

    def __init__(self, limit: int = DEFAULT_SIEVE_LIMIT):
        if limit < 4:
            raise ValueError("sieve limit must be at least 4")
        self.limit = int(limit)
        spf = np.zeros(self.limit + 1, dtype=np.int32)
        for p in range(2, int(self.limit**0.5) + 1):
            if spf[p] == 0:
                sl = spf[p * p :: p]
                sl[sl == 0] = p
        rest = np.nonzero(spf == 0)[0]
        spf[rest] = rest  # remaining zeros are 1 and primes > sqrt(limit)
        spf[0] = 0
        spf[1] = 1
        self.spf = spf
        self._primes = None
        self._mobius = None
        self._sqpart = None

    def require(self, n: int) -> None:
        if n > self.limit:
            raise SieveTooSmallError(f"n={n} exceeds sieve limit {self.limit}")

    def primes(self) -> np.ndarray:
        if self._primes is None:
            idx = np.arange(self.limit + 1)
            self._primes = idx[(self.spf == idx) & (idx >= 2)].astype(np.int64)
        return self._primes

    def factor(self, n: int) -> Factorization:
        n = int(n)
        if n < 1:
            raise ValueError("factor() needs n >= 1")
        self.require(n)
        pairs = []
        m = n
        while m > 1:
            p = int(self.spf[m])
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            pairs.append((p, e))
        return Factorization(n, tuple(pairs))

    def mobius(self, n: int) -> int:
        n = int(n)
        self.require(n)
        m = n
        k = 0
        while m > 1:
            p = int(self.spf[m])
            m //= p
            if m % p == 0:
                return 0
            k += 1
        return -1 if k & 1 else 1

    def is_squarefree(self, n: int) -> bool:
        return self.mobius(n) != 0

    def squarefree_kernel(self, n: int) -> tuple[int, int]:
        """Write n = n0 * n1^2 with n0 squarefree; returns (n0, n1)."""
        n = int(n)
        self.require(n)
        n0 = 1
        n1 = 1
        m = n
        while m > 1:
            p = int(self.spf[m])
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            if e & 1:
                n0 *= p
            n1 *= p ** (e // 2)
        return n0, n1

    def a_t(self, l: int, t: complex) -> complex:
        """prod_{p | l} (1 - p^{-t}); exponent-independent multiplicative weight."""
        out = 1.0 + 0.0j
        for p, _ in self.factor(l).pairs:
            out *= 1.0 - complex(p) ** (-t)
        return out

    def mobius_table(self) -> np.ndarray:
        """mu(n) for n = 0..limit as int8 (mu(0) stored as 0)."""
        if self._mobius is None:
            mu = np.ones(self.limit + 1, dtype=np.int8)
            mu[0] = 0
            for p in self.primes():
                p = int(p)
                mu[p::p] *= -1
                sq = p * p
                if sq <= self.limit:
                    mu[sq::sq] = 0
            self._mobius = mu
        return self._mobius

    def square_part_table(self) -> np.ndarray:
        """n1 with n = n0*n1^2 (n0 squarefree) for n = 0..limit, as int32."""
        if self._sqpart is None:
            n1 = np.ones(self.limit + 1, dtype=np.int32)
            for p in self.primes():
                p = int(p)
                q = p * p
                while q <= self.limit:
                    n1[q::q] *= p
                    q *= p * p
            n1[0] = 0
            self._sqpart = n1
        return self._sqpart


_shared_sieve: FactorSieve | None = None


def shared_sieve(limit: int = DEFAULT_SIEVE_LIMIT) -> FactorSieve:
    """Process-wide sieve; grown (never shrunk) on demand."""
    global _shared_sieve
    if _shared_sieve is None or _shared_sieve.limit < limit:
        _shared_sieve = FactorSieve(limit)
    return _shared_sieve


def _is_squarefree_small(n: int, sieve: FactorSieve | None) -> bool:
    if sieve is not None and n <= sieve.limit:
        return sieve.is_squarefree(n)
    if n <= DEFAULT_SIEVE_LIMIT:
        return shared_sieve().is_squarefree(n)
    d = 2
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        while n % d == 0:
            n //= d
        d += 1
    return True


def classify_fundamental_discriminant(d: int, sieve: FactorSieve | None = None) -> str | None:
    """Kind label for a positive fundamental discriminant, else None.

    d=1 is excluded: it would index the trivial character, and the sums
    in this package start at the first nontrivial discriminant d=5.
    """
    if d <= 1:
        return None
    if d % 4 == 1:
        return FUND_KIND_1MOD4 if _is_squarefree_small(d, sieve) else None
    if d % 4 == 0:
        m = d // 4
        r = m % 4
        if r == 3 and _is_squarefree_small(m, sieve):
            return FUND_KIND_4M3
        if r == 2 and _is_squarefree_small(m, sieve):
            return FUND_KIND_8M
    return None


def is_fundamental_discriminant(d: int, sieve: FactorSieve | None = None) -> bool:
    if d < 1:
        raise ValueError("d must be >= 1")
    return classify_fundamental_discriminant(d, sieve) is not None


def squarefree_flags(limit: int) -> np.ndarray:
    """Boolean table of squarefree n for n = 0..limit (self-contained sieve)."""
    flags = np.ones(limit + 1, dtype=bool)
    flags[0] = False
    p = 2
    while p * p <= limit:
        # p prime iff untouched as a square divisor so far is not checkable;
        # marking q^2 multiples for every p is still O(limit) overall.
        flags[p * p :: p * p] = False
        p += 1
    return flags


def fundamental_discriminants_array(X: int, sieve: FactorSieve | None = None) -> np.ndarray:
    """All fundamental discriminants 1 < d <= X, ascending, as int64.

    Uses its own boolean squarefree sieve, so X may exceed the factor
    sieve's limit.
    """
    if X < 1:
        return np.zeros(0, dtype=np.int64)
    sq = squarefree_flags(int(X))
    idx = np.arange(int(X) + 1, dtype=np.int64)
    out = [idx[(idx % 4 == 1) & sq & (idx > 1)]]
    m_hi = int(X) // 4
    if m_hi >= 2:
        m = np.arange(m_hi + 1, dtype=np.int64)
        keep = sq[: m_hi + 1] & ((m % 4 == 2) | (m % 4 == 3))
        out.append(4 * m[keep])
    d = np.concatenate(out)
    d.sort()
    return d


def enumerate_fundamental_discriminants(
    X: int, sieve: FactorSieve | None = None
) -> list[FundamentalDiscriminant]:
    """Exactly the d <= X passing is_fundamental_discriminant, ascending."""
    if X < 1:
        raise ValueError("X must be >= 1")
    out = []
    for d in fundamental_discriminants_array(X, sieve):
        d = int(d)
        kind = classify_fundamental_discriminant(d, sieve)
        out.append(FundamentalDiscriminant(d, kind))
    return out


def mobius(n: int, sieve: FactorSieve | None = None) -> int:
    return (sieve or shared_sieve()).mobius(n)


def is_squarefree(n: int, sieve: FactorSieve | None = None) -> bool:
    return (sieve or shared_sieve()).is_squarefree(n)


def squarefree_kernel(n: int, sieve: FactorSieve | None = None) -> tuple[int, int]:
    if n % 2 == 0:
        raise ValueError("squarefree_kernel is defined for odd n")
    return (sieve or shared_sieve()).squarefree_kernel(n)


def a_t(l: int, t: complex, sieve: FactorSieve | None = None) -> complex:
    return (sieve or shared_sieve()).a_t(l, t)


def von_mangoldt_table(limit: int) -> np.ndarray:
    """Lambda(n) for n = 0..limit as float64 (log p on prime powers)."""
    lam = np.zeros(limit + 1)
    sieve = shared_sieve(max(limit, 4))
    for p in sieve.primes():
        p = int(p)
        if p > limit:
            break
        q = p
        while q <= limit:
            lam[q] = np.log(p)
            q *= p
    return lam
