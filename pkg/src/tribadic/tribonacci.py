"""Exact and modular Tribonacci evaluation on all of Z, and exact valuations nu_p(T(n)).

T(0) = 0, T(1) = T(2) = 1, T(n+3) = T(n+2) + T(n+1) + T(n), extended backwards;
T vanishes exactly on Z_T = {0, -1, -4, -17}.
"""

from __future__ import annotations

from ._factor import is_prime
from .padic import DEFAULT_PRECISION, VAL_INF, _vp

ZERO_SET = (0, -1, -4, -17)

# companion matrix of the recurrence and its exact inverse (det = 1, so the
# backward direction is exact modulo any modulus)
_M_FWD = ((1, 1, 1), (1, 0, 0), (0, 1, 0))
_M_BWD = ((0, 1, 0), (0, 0, 1), (1, -1, -1))


def _mat_mul(a, b, m):
    if m is None:
        return tuple(
            tuple(sum(a[i][k] * b[k][j] for k in range(3)) for j in range(3)) for i in range(3)
        )
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(3)) % m for j in range(3)) for i in range(3)
    )


def _mat_pow(mat, e, m):
    out = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    while e:
        if e & 1:
            out = _mat_mul(out, mat, m)
        mat = _mat_mul(mat, mat, m)
        e >>= 1
    return out


def _power(n: int, m):
    mat = _M_FWD if n >= 0 else _M_BWD
    if m is not None:
        mat = tuple(tuple(x % m for x in row) for row in mat)
    return _mat_pow(mat, abs(n), m)


def trib(n: int) -> int:
    """Exact T(n) for any integer n, by binary matrix powering."""
    a = _power(n, None)
    return a[2][0] + a[2][1]


def trib_mod(n: int, m: int) -> int:
    """T(n) mod m in O(log |n|) 3x3 matrix products."""
    if m < 2:
        raise ValueError("modulus must be >= 2")
    a = _power(n, m)
    return (a[2][0] + a[2][1]) % m


def trib_val(n: int, p: int, start_prec: int = DEFAULT_PRECISION):
    """nu_p(T(n)); VAL_INF exactly when n is in ZERO_SET.

    Works modulo p^K and doubles K until the residue is nonzero, which
    certifies the valuation; the zero-set guard keeps that loop finite.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if n in ZERO_SET:
        return VAL_INF
    k = start_prec
    while True:
        r = trib_mod(n, p**k)
        if r != 0:
            return _vp(r, p)
        k *= 2
