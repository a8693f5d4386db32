"""p-adic valuations of Tribonacci numbers.

Computes nu_p(T(n)) exactly, interpolates the Tribonacci sequence p-adically
along residue classes of its period, locates the zeros of the interpolants,
and decides per prime whether the integer and rational forms of the
Marques-Lengyel valuation conjecture hold, fail, or resist the method.
"""

from .padic import (
    DEFAULT_PRECISION,
    VAL_INF,
    PAdicInt,
    PrecisionError,
    cube_root,
    padic_exp,
    padic_inv,
    padic_log,
    val_int,
)
from .tribonacci import ZERO_SET, trib, trib_mod, trib_val
from .galois import (
    EXCLUDED_PRIMES,
    ExtElem,
    ExtRing,
    PrimeContext,
    compute_N,
    lift_roots,
    prime_context,
    splitting_type,
)
from .interpolation import (
    ConditionNotMet,
    CubeRootReport,
    SeriesTrunc,
    ZeroRecord,
    ZeroTarget,
    classify_zero,
    cube_root_certificate,
    eval_f,
    hensel_zero,
    locate_zero,
    series_coeffs,
    strassman_mu,
)
from .classifier import (
    QT,
    ZT,
    ClassificationRecord,
    FormulaCase,
    FormulaSpec,
    LinearCertificate,
    Verdict,
    builtin_spec,
    classify_prime,
    crt_witness,
    derive_linear_formula,
    p3_pipeline,
    published_table,
    reproduce_table,
    scan_range,
    validate_published_rows,
    verify_formula,
)

__version__ = "0.1.0"
