import random
from fractions import Fraction

import pytest

from tribadic import (
    ConditionNotMet,
    PAdicInt,
    PrecisionError,
    classify_zero,
    cube_root_certificate,
    eval_f,
    hensel_zero,
    locate_zero,
    prime_context,
    series_coeffs,
    strassman_mu,
    trib,
    trib_mod,
)
from tribadic.interpolation import SeriesTrunc
from tribadic._factor import primes_upto
from tribadic.galois import splitting_type


class TestSeriesCoeffs:
    def test_beta0_is_t21_over_5(self, ctx5):
        assert trib(21) == 121415
        ser = series_coeffs(ctx5, 21)
        assert ser.e == 1
        assert ser.coeffs[0].residue == 121415 // 5 % 5**24

    def test_condition_46_enforced(self, ctx5):
        with pytest.raises(ConditionNotMet) as err:
            series_coeffs(ctx5, 1)  # T(1) = 1
        assert err.value.condition == "divisibility"

    def test_p3_beta1_valuation(self):
        # single-period series at l = 0: nu_3(beta_1) = 1
        ctx = prime_context(3, 24)
        ser = series_coeffs(ctx, 0, 1)
        assert ser.e == 1
        assert ser.coeffs[1].known_val == 1

    def test_p3_multiplier_3_divisor_and_slope(self):
        # triple-period series at l = -4: divisor exponent 2, nu_3(beta_1) = 3
        ctx = prime_context(3, 24)
        ser = series_coeffs(ctx, -4, 3)
        assert ser.e == 2
        assert ser.coeffs[0].is_zero()
        assert ser.coeffs[1].known_val == 3

    def test_higher_coefficients_in_p_zp(self):
        for p in (5, 7, 13):
            ctx = prime_context(p, 20)
            ell = next(l for l in range(ctx.n_period) if trib_mod(l, p) == 0)
            ser = series_coeffs(ctx, ell)
            for beta in ser.coeffs[2:]:
                assert beta.known_val >= 1

    def test_tail_bound_certified(self, ctx5):
        ser = series_coeffs(ctx5, 21)
        for k in range(ser.cut + 1, ser.cut + 20):
            assert ser.tail_val_bound(k) >= ctx5.prec

    def test_explicit_cut_override(self, ctx5):
        short = series_coeffs(ctx5, 21, J=8)
        full = series_coeffs(ctx5, 21)
        assert short.cut == 8
        assert short.coeffs == full.coeffs[:9]

    def test_series_reproduces_function(self, ctx5):
        # p * sum beta_k z^k = f_l(z) for random z
        ser = series_coeffs(ctx5, 21)
        rng = random.Random(2)
        for _ in range(10):
            z = PAdicInt(5, 24, rng.randrange(5**24))
            assert 5 * ser.eval(z) == eval_f(ctx5, 21, z)

    def test_beta1_matches_divided_difference(self):
        # beta_1 = (T(l+N) - T(l))/p (mod p)
        for p in (5, 7, 13, 47):
            ctx = prime_context(p, 20)
            n_period = ctx.n_period
            for ell in range(n_period):
                if trib_mod(ell, p) != 0:
                    continue
                ser = series_coeffs(ctx, ell)
                delta = (trib_mod(ell + n_period, p * p) - trib_mod(ell, p * p)) % (p * p)
                assert ser.coeffs[1].residue % p == (delta // p) % p

    def test_derivative_congruent_to_beta1_by_finite_difference(self, ctx5):
        ser = series_coeffs(ctx5, 21)
        rng = random.Random(7)
        h_exp = 12
        h = PAdicInt(5, 24, 5**h_exp)
        for _ in range(8):
            z = PAdicInt(5, 24, rng.randrange(5**24))
            quotient_residue = ((ser.eval(z + h) - ser.eval(z)).residue // 5**h_exp) % 5
            assert quotient_residue == ser.coeffs[1].residue % 5


class TestEvalF:
    def test_at_zero_is_t_ell(self, ctx7):
        assert trib(5) == 7
        assert eval_f(ctx7, 5, 0).residue == 7

    def test_interpolates_sequence(self, ctx5, ctx7):
        rng = random.Random(4)
        for ctx in (ctx5, ctx7):
            pk = ctx.p**ctx.prec
            for _ in range(50):
                ell = rng.randrange(ctx.n_period)
                m = rng.randrange(-40, 40)
                assert eval_f(ctx, ell, m).residue == trib_mod(ell + m * ctx.n_period, pk)

    def test_unit_when_46_fails(self, ctx7):
        # p does not divide T(l): f_l never vanishes
        rng = random.Random(5)
        ells = [l for l in range(ctx7.n_period) if trib_mod(l, 7) != 0]
        for ell in rng.sample(ells, 6):
            for _ in range(5):
                z = PAdicInt(7, 24, rng.randrange(7**24))
                assert eval_f(ctx7, ell, z).known_val == 0


class TestStrassman:
    def test_mu_one_for_p5_ell21(self, ctx5):
        assert strassman_mu(series_coeffs(ctx5, 21)) == 1

    def test_unit_beta1_gives_mu_one(self):
        for p in (7, 13, 17):
            ctx = prime_context(p, 20)
            for ell in range(ctx.n_period):
                if trib_mod(ell, p) != 0:
                    continue
                ser = series_coeffs(ctx, ell)
                if ser.coeffs[1].known_val == 0:
                    assert strassman_mu(ser) == 1

    def test_dominant_constant_term_gives_mu_zero(self, ctx5):
        ser = series_coeffs(ctx5, 21)
        tweaked = SeriesTrunc(
            ser.ctx, ser.ell, ser.s, ser.e, ser.log_val,
            (PAdicInt(5, 24, 3),) + tuple(5 * b for b in ser.coeffs[1:]),
        )
        assert strassman_mu(tweaked) == 0

    def test_all_vanishing_raises(self, ctx5):
        ser = series_coeffs(ctx5, 21)
        dead = SeriesTrunc(
            ser.ctx, ser.ell, ser.s, ser.e, ser.log_val,
            tuple(0 * b for b in ser.coeffs),
        )
        with pytest.raises(PrecisionError):
            strassman_mu(dead)


class TestHenselZero:
    def test_p5_ell21_unique_zero_with_u2(self, ctx5):
        rec = hensel_zero(series_coeffs(ctx5, 21))
        assert rec.unique
        a = 21 + 31 * rec.b
        assert a.residue % 5 == 2  # the published u

    def test_integer_zero_at_zt_class(self, ctx83):
        # l = 0 sits over Z_T: the zero is exactly 0
        rec = hensel_zero(series_coeffs(ctx83, 0))
        assert rec.b.is_zero()
        assert classify_zero(ctx83, rec) == classify_zero(ctx83, rec)

    def test_quadratic_convergence(self, ctx5, ctx83):
        rng = random.Random(8)
        for ctx in (ctx5, ctx83):
            candidates = [l for l in range(ctx.n_period) if trib_mod(l, ctx.p) == 0]
            for ell in rng.sample(candidates, min(3, len(candidates))):
                ser = series_coeffs(ctx, ell)
                if ser.coeffs[1].known_val != 0:
                    continue
                rec = hensel_zero(ser)
                vals = rec.residual_vals
                for i in range(len(vals) - 1):
                    assert vals[i + 1] >= min(2 * vals[i], ctx.prec)
                assert vals[-1] >= ctx.prec
                # the zero really is a zero
                assert ser.eval(rec.b).known_val >= ctx.prec

    def test_condition_48_failure_raises(self):
        ctx = prime_context(3, 24)
        with pytest.raises(ConditionNotMet) as err:
            hensel_zero(series_coeffs(ctx, 0))
        assert err.value.condition == "derivative"


class TestClassifyZero:
    def test_p83_all_four_integer_classes(self, ctx83):
        got = {}
        for ell in range(ctx83.n_period):
            if trib_mod(ell, 83) != 0:
                continue
            rec = locate_zero(ctx83, ell)
            assert rec.target.kind == "integer"
            got[ell] = rec.target.value
        assert sorted(got.values()) == [-17, -4, -1, 0]

    def test_p269_six_classes(self, ctx269):
        kinds = []
        for ell in range(ctx269.n_period):
            if trib_mod(ell, 269) != 0:
                continue
            rec = locate_zero(ctx269, ell)
            kinds.append((rec.target.kind, rec.target.value))
        values = {v for _, v in kinds}
        assert values == {0, -1, -4, -17, Fraction(1, 3), Fraction(-5, 3)}

    def test_p5_zero_is_one_third(self, ctx5):
        # u = 2 = 1/3 mod 5 and the zero matches 1/3 at full precision
        rec = locate_zero(ctx5, 21)
        assert rec.target.kind == "rational" and rec.target.value == Fraction(1, 3)
        # independent consequence: nu_5(T(n)) > 0 wherever n = 1/3 + 31 * 5^k-ish points land
        a = 21 + 31 * rec.b
        assert (3 * a - 1).known_val >= ctx5.prec - 2


class TestCubeRootCertificate:
    def test_smallest_qualifying_prime_scan(self):
        found = []
        for p in primes_upto(400):
            if p in (2, 11) or p % 3 != 2:
                continue
            if splitting_type(p)[0] == 1:
                found.append(p)
        assert found[:5] == [47, 53, 257, 269, 311]

    def test_certificate_for_first_prime(self):
        rep = cube_root_certificate(prime_context(47, 24), samples=40, max_extra_val=5)
        assert rep.ok
        assert rep.sum_one_third_vanishes and rep.sum_minus_five_thirds_vanishes
        assert rep.symmetric_identity_holds

    def test_rejects_wrong_splitting(self, ctx5):
        with pytest.raises(ValueError):
            cube_root_certificate(ctx5)  # d = 3 at p = 5
