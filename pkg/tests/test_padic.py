import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tribadic import (
    PAdicInt,
    PrecisionError,
    cube_root,
    padic_exp,
    padic_inv,
    padic_log,
    val_int,
)


def recurrence_oracle(n):
    # direct forward recurrence, independent of the matrix path
    a, b, c = 0, 1, 1
    for _ in range(n):
        a, b, c = b, c, a + b + c
    return a


def trial_division_valuation(x, p):
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


class TestValInt:
    def test_24_base_2(self):
        assert val_int(24, 2) == 3

    def test_t21_base_5(self):
        t21 = recurrence_oracle(21)
        assert t21 == 121415
        assert val_int(121415, 5) == trial_division_valuation(t21, 5) == 1

    def test_t13_base_3(self):
        t13 = recurrence_oracle(13)
        assert t13 == 927 == 3**2 * 103
        assert val_int(927, 3) == trial_division_valuation(t13, 3) == 2

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            val_int(0, 5)

    def test_composite_p_rejected(self):
        with pytest.raises(ValueError):
            val_int(8, 6)

    @given(st.integers(min_value=1, max_value=10**6), st.integers(min_value=1, max_value=10**6))
    @settings(max_examples=60, deadline=None)
    def test_additivity(self, a, b):
        assert val_int(a * b, 5) == val_int(a, 5) + val_int(b, 5)


class TestInverse:
    def test_one(self):
        one = PAdicInt(5, 3, 1)
        assert padic_inv(one) == one

    def test_two_mod_125(self):
        y = padic_inv(PAdicInt(5, 3, 2))
        assert y.residue == 63  # 2 * 63 = 126

    def test_three_mod_169_against_extended_gcd(self):
        # extended-gcd oracle
        def egcd(a, b):
            if b == 0:
                return a, 1, 0
            g, x, y = egcd(b, a % b)
            return g, y, x - (a // b) * y

        g, x, _ = egcd(3, 169)
        assert g == 1
        y = padic_inv(PAdicInt(13, 2, 3))
        assert y.residue == x % 169
        assert 3 * y.residue % 169 == 1

    def test_non_unit_rejected(self):
        with pytest.raises(PrecisionError):
            padic_inv(PAdicInt(5, 3, 10))


def exp_series_oracle(z, p, prec):
    # sum z^n / n! as exact rationals until the guaranteed tail valuation passes prec
    total = Fraction(0)
    n = 0
    while True:
        tail_val = n - trial_division_valuation_factorial(n, p)
        if n > 0 and tail_val >= prec:
            break
        total += Fraction(z) ** n / factorial(n)
        n += 1
    den = total.denominator
    assert den % p != 0
    return total.numerator * pow(den, -1, p**prec) % p**prec


def factorial(n):
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


def trial_division_valuation_factorial(n, p):
    return trial_division_valuation(factorial(n), p) if n > 1 else 0


class TestExpLog:
    def test_exp_zero(self):
        assert padic_exp(PAdicInt(7, 4, 0)).residue == 1

    def test_exp_7_against_series_oracle(self):
        r = padic_exp(PAdicInt(7, 4, 7))
        assert r.residue == exp_series_oracle(7, 7, 4)
        assert (r - 1).known_val == 1
        assert padic_log(r).residue == 7

    def test_exp_preserves_valuation(self):
        rng = random.Random(11)
        for p in (3, 5, 13):
            for _ in range(40):
                v = rng.randrange(1, 6)
                unit = rng.randrange(1, p)
                z = PAdicInt(p, 20, unit * p**v)
                assert (padic_exp(z) - 1).known_val == v == z.known_val

    @given(st.integers(min_value=1, max_value=10**9), st.integers(min_value=1, max_value=10**9))
    @settings(max_examples=50, deadline=None)
    def test_exp_additive(self, a, b):
        p, prec = 7, 16
        z, w = PAdicInt(p, prec, p * a), PAdicInt(p, prec, p * b)
        assert padic_exp(z + w) == padic_exp(z) * padic_exp(w)

    @given(st.integers(min_value=0, max_value=10**9))
    @settings(max_examples=50, deadline=None)
    def test_log_multiplicative(self, a):
        p, prec = 5, 16
        u = PAdicInt(p, prec, 1 + p * a)
        assert padic_log(u * u) == 2 * padic_log(u)

    @given(st.integers(min_value=0, max_value=10**12))
    @settings(max_examples=50, deadline=None)
    def test_exp_log_round_trip(self, a):
        p, prec = 11, 16
        u = PAdicInt(p, prec, 1 + p * a)
        assert padic_exp(padic_log(u)) == u

    @given(st.integers(min_value=0, max_value=10**12))
    @settings(max_examples=50, deadline=None)
    def test_log_exp_round_trip(self, a):
        p, prec = 3, 16
        z = PAdicInt(p, prec, p * a)
        assert padic_log(padic_exp(z)) == z

    def test_log_one(self):
        assert padic_log(PAdicInt(5, 8, 1)).is_zero()

    def test_exp_needs_positive_valuation(self):
        with pytest.raises(ValueError):
            padic_exp(PAdicInt(5, 8, 2))

    def test_log_needs_one_mod_p(self):
        with pytest.raises(ValueError):
            padic_log(PAdicInt(5, 8, 3))


class TestCubeRoot:
    def test_unit_one(self):
        assert cube_root(PAdicInt(5, 3, 1)).residue == 1

    def test_exhaustive_oracle_p5(self):
        expected = [y for y in range(125) if y**3 % 125 == 2]
        assert len(expected) == 1
        assert cube_root(PAdicInt(5, 3, 2)).residue == expected[0]

    def test_defining_identity_and_inverse(self):
        rng = random.Random(5)
        for p in (5, 17, 23):
            for _ in range(100):
                u = PAdicInt(p, 12, rng.randrange(1, p**12))
                if not u.is_unit():
                    continue
                y = cube_root(u)
                assert y * y * y == u
                assert cube_root(u * u * u) == u

    def test_rejects_p_1_mod_3(self):
        with pytest.raises(ValueError):
            cube_root(PAdicInt(7, 4, 2))

    def test_rejects_p_3(self):
        with pytest.raises(ValueError):
            cube_root(PAdicInt(3, 4, 2))


class TestPAdicInt:
    def test_residue_range_and_known_val(self):
        x = PAdicInt(5, 4, -1)
        assert x.residue == 5**4 - 1 and x.known_val == 0
        assert PAdicInt(5, 4, 0).known_val == 4
        assert PAdicInt(5, 4, 50).known_val == 2

    def test_mixed_primes_rejected(self):
        with pytest.raises(ValueError):
            PAdicInt(5, 4, 1) + PAdicInt(7, 4, 1)

    def test_mixed_precision_truncates(self):
        x = PAdicInt(5, 6, 7) * PAdicInt(5, 3, 2)
        assert x.prec == 3 and x.residue == 14

    def test_pow_negative(self):
        x = PAdicInt(7, 5, 3)
        assert x ** (-2) == (x.inv()) ** 2

    def test_p2_rejected(self):
        with pytest.raises(ValueError):
            PAdicInt(2, 4, 1)
