import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from quadratios.arith import (
    FactorSieve,
    a_t,
    enumerate_fundamental_discriminants,
    fundamental_discriminants_array,
    is_fundamental_discriminant,
    is_squarefree,
    kronecker,
    mobius,
    squarefree_kernel,
)
from quadratios.errors import SieveTooSmallError


class TestKronecker:
    def test_shared_factor(self):
        assert kronecker(5, 5) == 0

    def test_product_of_legendre(self):
        # (2/15) = (2/3)(2/5) = (-1)(-1)
        assert kronecker(2, 15) == 1

    def test_nonresidue(self):
        # 8 = 2 mod 3, a non-residue
        assert kronecker(8, 3) == -1

    def test_conventions(self):
        assert kronecker(1, 0) == 1
        assert kronecker(-1, 0) == 1
        assert kronecker(7, 0) == 0
        assert kronecker(3, -1) == 1
        assert kronecker(-3, -1) == -1
        assert kronecker(0, 1) == 1
        assert kronecker(0, 9) == 0
        with pytest.raises(ValueError):
            kronecker(0, 0)

    def test_against_sympy_grid(self):
        for a in range(-60, 61):
            for n in range(-60, 61):
                if a == 0 and n == 0:
                    continue
                assert kronecker(a, n) == int(sympy.kronecker_symbol(a, n)), (a, n)

    def test_quadratic_residue_oracle(self):
        # for odd prime p <= 1000 and 1 <= a < p: 1 iff a is a square mod p
        for p in sympy.primerange(3, 1001):
            residues = {(j * j) % p for j in range(1, p)}
            for a in range(1, p):
                expect = 1 if a in residues else -1
                assert kronecker(a, p) == expect, (a, p)

    def test_multiplicativity_exhaustive_small(self):
        for m in range(1, 100, 2):
            for n in range(1, 100, 2):
                for a in range(-20, 21):
                    assert kronecker(a, m * n) == kronecker(a, m) * kronecker(a, n)

    @settings(max_examples=300, deadline=None)
    @given(
        st.integers(min_value=-500, max_value=500),
        st.integers(min_value=0, max_value=249),
        st.integers(min_value=0, max_value=249),
    )
    def test_multiplicativity_bottom(self, a, i, j):
        m, n = 2 * i + 1, 2 * j + 1
        assert kronecker(a, m * n) == kronecker(a, m) * kronecker(a, n)

    @settings(max_examples=300, deadline=None)
    @given(
        st.integers(min_value=-500, max_value=500),
        st.integers(min_value=-500, max_value=500),
        st.integers(min_value=0, max_value=249),
    )
    def test_multiplicativity_top(self, a, b, i):
        n = 2 * i + 1
        assert kronecker(a * b, n) == kronecker(a, n) * kronecker(b, n)

    def test_periodicity_times_four(self):
        # (k/n) = (4k/n) for odd n
        for n in range(1, 200, 2):
            for k in range(-30, 31):
                assert kronecker(k, n) == kronecker(4 * k, n)


class TestFundamentalDiscriminants:
    def test_spec_examples(self):
        assert is_fundamental_discriminant(5)
        assert is_fundamental_discriminant(8)  # 8 = 4*2, 2 = 2 mod 4
        assert not is_fundamental_discriminant(9)
        assert not is_fundamental_discriminant(1)  # excluded: trivial character

    def test_enumerate_examples(self):
        assert [f.d for f in enumerate_fundamental_discriminants(10)] == [5, 8]
        assert [f.d for f in enumerate_fundamental_discriminants(1)] == []
        assert [f.d for f in enumerate_fundamental_discriminants(17)] == [5, 8, 12, 13, 17]

    def test_enumerate_matches_filter(self, sieve):
        # the array path uses a p^2-marking boolean sieve; the scalar path
        # factors through the spf table -- independent routes, full range
        X = 10**6
        arr = fundamental_discriminants_array(X)
        flags = np.zeros(X + 1, dtype=bool)
        flags[arr] = True
        mism = [d for d in range(1, X + 1) if flags[d] != is_fundamental_discriminant(d, sieve)]
        assert not mism, mism[:10]

    def test_kinds(self):
        kinds = {f.d: f.kind for f in enumerate_fundamental_discriminants(40)}
        assert kinds[5] == "1mod4-squarefree"
        assert kinds[12] == "4m-m3mod4"  # 12 = 4*3
        assert kinds[8] == "8m-m-odd"  # 8 = 4*2


class TestSieve:
    def test_squarefree_kernel_examples(self, sieve):
        assert squarefree_kernel(45, sieve) == (5, 3)
        assert squarefree_kernel(15, sieve) == (15, 1)
        assert squarefree_kernel(27, sieve) == (3, 3)

    def test_kernel_roundtrip(self, sieve):
        for n in range(1, 10**6, 2):
            n0, n1 = sieve.squarefree_kernel(n)
            if n % 1009 == 0 or n < 10000:  # full below 1e4, strided above
                assert n0 * n1 * n1 == n
                assert sieve.mobius(n0) != 0

    def test_kernel_roundtrip_bulk(self, sieve):
        n1 = sieve.square_part_table()
        n = np.arange(1, 10**6, 2, dtype=np.int64)
        k1 = n1[n].astype(np.int64)
        n0 = n // (k1 * k1)
        assert np.all(n0 * k1 * k1 == n)
        mu = sieve.mobius_table()
        assert np.all(mu[n0] != 0)

    def test_mobius(self, sieve):
        assert mobius(1, sieve) == 1
        assert mobius(12, sieve) == 0
        assert mobius(30, sieve) == -1
        for n in range(1, 3000):
            assert mobius(n, sieve) == int(sympy.mobius(n))

    def test_is_squarefree(self, sieve):
        assert is_squarefree(15, sieve)
        assert not is_squarefree(45, sieve)

    def test_factor(self, sieve):
        f = sieve.factor(360)
        assert f.pairs == ((2, 3), (3, 2), (5, 1))

    def test_limit_guard(self):
        small = FactorSieve(limit=100)
        with pytest.raises(SieveTooSmallError):
            small.factor(101 * 103)

    def test_spf_invariants(self, sieve):
        spf = sieve.spf
        for n in range(2, 5000):
            p = int(spf[n])
            assert n % p == 0
            assert int(spf[p]) == p  # p prime


class TestMultiplicativeWeights:
    def test_a_t_examples(self, sieve):
        assert a_t(1, 2.7, sieve) == 1
        assert abs(a_t(9, 1.5, sieve) - (1 - 3.0**-1.5)) < 1e-15
        assert abs(a_t(15, 0.0, sieve)) < 1e-15

    def test_a_t_exponent_independent(self, sieve):
        assert a_t(3, 0.7, sieve) == a_t(27, 0.7, sieve)
