"""Analytic interpolation of the Tribonacci sequence along residue classes mod the period.

For l with p | T(l), the function f_l(z) = sum c_lambda lambda^l exp(z log lambda^(sN))
interpolates m -> T(l + m*sN).  This module extracts the power-series
coefficients beta_k of g = f_l / p^e with a certified tail bound, locates and
certifies zeros (Hensel iteration plus Strassman's bound), and identifies a
zero b with an element of Z_T or with 1/3 or -5/3 via a = l + sN*b.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from fractions import Fraction

from ._factor import crt_pair
from .galois import PrimeContext, prime_context
from .padic import (
    VAL_INF,
    PAdicInt,
    PrecisionError,
    _vp,
    cube_root,
    val_int,
    vp_factorial,
)
from .tribonacci import trib_mod, trib_val

ZERO_TARGETS_INT = (0, -1, -4, -17)
ZERO_TARGETS_RAT = (Fraction(1, 3), Fraction(-5, 3))


class ConditionNotMet(ValueError):
    """A vanishing-condition precondition failed; .condition names which one."""

    def __init__(self, condition: str, message: str):
        super().__init__(message)
        self.condition = condition


@dataclass(frozen=True)
class SeriesTrunc:
    """Truncated coefficients beta_0..beta_J of g = f_l / p^e, built with period s*N.

    log_val is E = min_lambda nu_p(log lambda^(sN)); the tail obeys
    nu_p(beta_k) >= (k-1)*E - nu_p(k!), which is >= prec for every k > J by the
    choice of J, so the truncation is certified.
    """

    ctx: PrimeContext
    ell: int
    s: int
    e: int
    log_val: int
    coeffs: tuple[PAdicInt, ...]

    @property
    def cut(self) -> int:
        return len(self.coeffs) - 1

    def tail_val_bound(self, k: int) -> int:
        return (k - 1) * self.log_val - vp_factorial(k, self.ctx.p)

    def _coerce(self, z) -> PAdicInt:
        if isinstance(z, int):
            return PAdicInt(self.ctx.p, self.ctx.prec, z)
        return z

    def eval(self, z) -> PAdicInt:
        """g(z) mod p^prec by Horner evaluation of the truncated series."""
        z = self._coerce(z)
        acc = PAdicInt(self.ctx.p, self.ctx.prec, 0)
        for beta in reversed(self.coeffs):
            acc = acc * z + beta
        return acc

    def eval_deriv(self, z) -> PAdicInt:
        z = self._coerce(z)
        acc = PAdicInt(self.ctx.p, self.ctx.prec, 0)
        for k in range(self.cut, 0, -1):
            acc = acc * z + k * self.coeffs[k]
        return acc


@dataclass(frozen=True)
class ZeroTarget:
    """Classification of l + sN*b: an integer zero, one of 1/3, -5/3, or unrecognized."""

    kind: str  # "integer" | "rational" | "other"
    value: object  # int | Fraction | PAdicInt (the residue of b when "other")


@dataclass(frozen=True)
class ZeroRecord:
    """A certified zero b of g, with the Strassman uniqueness flag.

    residual_vals logs nu_p(g(b_i)) over the Newton iterates, which the test
    suite uses to observe quadratic convergence.
    """

    ell: int
    s: int
    b: PAdicInt
    unique: bool
    residual_vals: tuple[int, ...]
    target: ZeroTarget | None = None


def _default_cut(p: int, log_val: int, prec: int) -> int:
    # smallest J with (k-1)*E - nu_p(k!) >= prec for all k > J, via nu_p(k!) <= (k-1)/(p-1)
    num = prec * (p - 1)
    den = log_val * (p - 1) - 1
    return -(-num // den)


def series_coeffs(ctx: PrimeContext, ell: int, s: int = 1, J: int | None = None) -> SeriesTrunc:
    """Coefficients of g = f_l / p^e modulo p^prec.

    Requires condition (p | T(l)); the divisor exponent is
    e = min(min_lambda nu_p(log lambda^(sN)), nu_p(T(l))), which gives e = 1 in
    the single-period case and reproduces the p = 3, s = 3 exponent e = 2.
    Every coefficient is computed in the extension at raised internal precision,
    checked to have vanishing nonconstant coordinates, and projected to Z_p.
    """
    p, prec = ctx.p, ctx.prec
    n = ctx.n_period
    if trib_mod(ell, p) != 0:
        raise ConditionNotMet("divisibility", f"p = {p} does not divide T({ell})")
    if s < 1:
        raise ValueError("period multiplier s must be >= 1")
    logs = [(lam ** (s * n)).log() for lam in ctx.roots]
    log_val = min(lg.val() for lg in logs)
    if log_val >= prec:
        raise PrecisionError(f"log(lambda^(sN)) vanishes mod {p}^{prec}")
    tval = trib_val(ell, p)
    e = log_val if tval == VAL_INF else min(log_val, int(tval))
    if J is None:
        J = _default_cut(p, log_val, prec)
    work = prec + e + vp_factorial(J, p)
    big = prime_context(p, work)
    logs = [(lam ** (s * n)).log() for lam in big.roots]
    terms = [ci * (li**ell) for ci, li in zip(big.weights, big.roots)]
    total = terms[0] + terms[1] + terms[2]
    if total != big.ring.embed(trib_mod(ell, big.ring.pk)):
        raise PrecisionError("Binet sum disagrees with T(l) in the extension")
    coeffs = [PAdicInt(p, prec, trib_mod(ell, p ** (prec + e)) // p**e)]
    pk_small = p**prec
    fact_unit = 1
    vfac = 0
    for k in range(1, J + 1):
        terms = [t * lg for t, lg in zip(terms, logs)]
        sk = terms[0] + terms[1] + terms[2]
        if any(sk.coords[1:]):
            raise PrecisionError("series coefficient has nonvanishing extension coordinates")
        w = _vp(k, p)
        vfac += w
        fact_unit = fact_unit * (k // p**w if w else k) % big.ring.pk
        div = e + vfac
        s0 = sk.coords[0]
        if s0 % p**div:
            raise PrecisionError("series coefficient not divisible by p^(e + nu(k!))")
        coeffs.append(PAdicInt(p, prec, (s0 // p**div) % pk_small * pow(fact_unit, -1, pk_small)))
    return SeriesTrunc(ctx, ell, s, e, log_val, tuple(coeffs))


def eval_f(ctx: PrimeContext, ell: int, z) -> PAdicInt:
    """f_l(z) = sum c_lambda lambda^l exp(z log lambda^N); agrees with T(l + mN) at z = m."""
    p, prec = ctx.p, ctx.prec
    if isinstance(z, PAdicInt):
        if z.p != p:
            raise ValueError("mismatched primes")
        zres = z.residue
    else:
        zres = z % ctx.ring.pk
    acc = ctx.ring.zero
    for ci, li in zip(ctx.weights, ctx.roots):
        lg = (li**ctx.n_period).log()
        acc = acc + ci * (li**ell) * (lg * zres).exp()
    return acc.to_padic()


def strassman_mu(series: SeriesTrunc) -> int:
    """Strassman bound: the largest index attaining the maximal |beta_k|.

    The certified tail (nu >= prec for k > J) rules the tail out as long as
    some computed coefficient is nonzero mod p^prec; if all vanish, precision
    escalation is required and a PrecisionError is raised.
    """
    vals = [b.known_val for b in series.coeffs]
    best = min(vals)
    if best >= series.ctx.prec:
        raise PrecisionError("all series coefficients vanish mod p^prec; double the precision")
    return max(k for k, v in enumerate(vals) if v == best)


def hensel_zero(series: SeriesTrunc) -> ZeroRecord:
    """The zero of g certified by Hensel's lemma, via Newton iteration.

    Requires beta_1 to be a unit (condition T(l+N) != T(l) mod p^2); the start
    b_0 = -beta_0 beta_1^(-1) then satisfies |g(b_0)| < 1, |g'(b_0)| = 1.
    """
    prec = series.ctx.prec
    c0, c1 = series.coeffs[0], series.coeffs[1]
    if c1.known_val != 0:
        raise ConditionNotMet(
            "derivative", f"g'(0) = 0 mod p at l = {series.ell}: T(l+N) = T(l) (mod p^2)"
        )
    b = -(c0 * c1.inv())
    residuals = []
    for _ in range(4 * prec.bit_length() + 8):
        g = series.eval(b)
        residuals.append(g.known_val)
        if g.known_val >= prec:
            break
        b = b - g * series.eval_deriv(b).inv()
    else:
        raise PrecisionError("Newton iteration failed to reach a zero mod p^prec")
    unique = strassman_mu(series) == 1
    return ZeroRecord(series.ell, series.s, b, unique, tuple(residuals))


def classify_zero(ctx: PrimeContext, record: ZeroRecord) -> ZeroTarget:
    """Identify a = l + sN*b with an element of Z_T, with 1/3 or -5/3, or neither.

    Integer targets are matched mod p^prec; rational targets mod p^(prec-2),
    the two guard digits absorbing evaluation error.  Rational targets are not
    p-integral for p = 3 and are skipped there.
    """
    p, prec = ctx.p, ctx.prec
    a = record.ell + record.s * ctx.n_period * record.b
    for t in ZERO_TARGETS_INT:
        if (a - t).known_val >= prec:
            return ZeroTarget("integer", t)
    if p >= 5:
        for r in ZERO_TARGETS_RAT:
            if (a * r.denominator - r.numerator).known_val >= prec - 2:
                return ZeroTarget("rational", r)
    return ZeroTarget("other", record.b)


def locate_zero(ctx: PrimeContext, ell: int, s: int = 1) -> ZeroRecord:
    """series_coeffs + hensel_zero + classify_zero in one step."""
    series = series_coeffs(ctx, ell, s)
    record = hensel_zero(series)
    return replace(record, target=classify_zero(ctx, record))


# ---------------------------------------------------------------------------
# cube-root certificates (the nu_p(T(n)) >= nu_p(n - 1/3) family)


@dataclass(frozen=True)
class CubeRootReport:
    """Verification report for the cube-root zero identities at a fully split prime."""

    p: int
    n_period: int
    sum_one_third_vanishes: bool
    sum_minus_five_thirds_vanishes: bool
    symmetric_identity_holds: bool
    samples: int
    inequality_failures: tuple[tuple[int, object, int], ...]  # (n, nu(T(n)), nu(n - r))

    @property
    def ok(self) -> bool:
        return (
            self.sum_one_third_vanishes
            and self.sum_minus_five_thirds_vanishes
            and self.symmetric_identity_holds
            and not self.inequality_failures
        )


def _cube_root_in_period_subgroup(lam: PAdicInt, n_period: int) -> PAdicInt:
    # start from lambda^(3^-1 mod N) mod p, which cubes to lambda mod p, and lift
    p, prec = lam.p, lam.prec
    if p % 3 == 2:
        return cube_root(lam)
    y = pow(lam.residue % p, pow(3, -1, n_period), p)
    mod = p**prec
    for _ in range(prec.bit_length() + 1):
        y = (y - (y * y * y - lam.residue) * pow(3 * y * y, -1, mod)) % mod
    root = PAdicInt(p, prec, y)
    assert (root * root * root - lam).is_zero()
    return root


def cube_root_certificate(
    ctx: PrimeContext, samples: int = 100, max_extra_val: int = 6, seed: int = 0
) -> CubeRootReport:
    """Certify sum c_lambda lambda^(1/3) = 0 and sum c_lambda lambda^(-5/3) = 0 (mod p^prec),
    then sample n = 1/3 (mod p-1) and check nu_p(T(n)) >= nu_p(n - 1/3), and likewise
    for -5/3.

    Requires all roots rational (d = 1) and 3 coprime to N; for p = 2 (mod 3)
    that is automatic and the canonical cube roots are used.
    """
    p, prec = ctx.p, ctx.prec
    n_period = ctx.n_period
    if ctx.d != 1:
        raise ValueError("cube-root certificate needs all roots in Q_p (d = 1)")
    if n_period % 3 == 0:
        raise ValueError("cube-root certificate needs 3 coprime to the period N")
    lams = [lam.to_padic() for lam in ctx.roots]
    cs = [ci.to_padic() for ci in ctx.weights]
    roots3 = [_cube_root_in_period_subgroup(lam, n_period) for lam in lams]
    s13 = sum((ci * t for ci, t in zip(cs, roots3)), PAdicInt(p, prec, 0))
    s53 = sum((ci * t ** (-5) for ci, t in zip(cs, roots3)), PAdicInt(p, prec, 0))
    # Newton's-identity certificate: sum c^3 lambda = 3 * prod c
    sym = sum((ci**3 * lam for ci, lam in zip(cs, lams)), PAdicInt(p, prec, 0))
    sym_ok = (sym - 3 * cs[0] * cs[1] * cs[2]).is_zero()

    rng = random.Random(seed)
    class_mod = p - 1 if p % 3 == 2 else n_period
    failures = []
    for i in range(samples):
        r = ZERO_TARGETS_RAT[i % 2]
        v = (i // 2) % (max_extra_val + 1)
        u = rng.randrange(1, p)
        pk1 = p ** (v + 1)
        res_p = (r.numerator + u * p**v) * pow(3, -1, pk1) % pk1
        res_m = r.numerator * pow(3, -1, class_mod) % class_mod
        n = crt_pair(res_m, class_mod, res_p, pk1)
        if n == 0:
            n = class_mod * pk1
        rhs = val_int(3 * n - r.numerator, p)
        assert rhs == v, "sample construction is off"
        lhs = trib_val(n, p)
        if not lhs >= rhs:
            failures.append((n, lhs, rhs))
    return CubeRootReport(
        p,
        n_period,
        s13.is_zero(),
        s53.is_zero(),
        sym_ok,
        samples,
        tuple(failures),
    )
