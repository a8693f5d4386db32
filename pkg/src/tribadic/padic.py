"""Fixed-precision arithmetic in Z_p with tracked valuations, plus exp, log and cube roots.

A value is a residue mod p^prec together with the valuation that residue
certifies: residue 0 only certifies "valuation >= prec".  Working precision is
fixed per value (default 24 digits); callers that need a quantity to be
nonzero and find it vanishing mod p^prec are expected to recompute at doubled
precision (see e.g. tribonacci.trib_val).

Values are immutable and all functions are pure, so they are safe to share
across threads.
"""

from __future__ import annotations

from ._factor import is_prime

DEFAULT_PRECISION = 24

VAL_INF = float("inf")  # stands for nu_p(0)


class PrecisionError(ArithmeticError):
    """A quantity that had to be nonzero (or a unit) vanished mod p^prec."""


def _vp(x: int, p: int) -> int:
    # valuation of a nonzero integer, no primality check
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def val_int(x: int, p: int) -> int:
    """nu_p(x) for nonzero x: the largest e with p^e dividing x.

    x = 0 is rejected here; call sites that allow it represent nu_p(0) by the
    VAL_INF marker.
    """
    if x == 0:
        raise ValueError("val_int needs a nonzero integer (nu_p(0) is VAL_INF)")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return _vp(x, p)


def vp_factorial(n: int, p: int) -> int:
    """nu_p(n!) by Legendre's formula."""
    v = 0
    q = p
    while q <= n:
        v += n // q
        q *= p
    return v


class PAdicInt:
    """An element of Z_p known modulo p^prec.

    Invariants: 0 <= residue < p^prec, and known_val = min(nu_p(residue), prec)
    with residue 0 encoding "valuation >= prec".  Arithmetic across different
    primes is an error; mixed precisions truncate to the smaller one.
    """

    __slots__ = ("p", "prec", "residue", "known_val")

    def __init__(self, p: int, prec: int, residue: int):
        if p < 3:
            raise ValueError("PAdicInt needs an odd prime p >= 3")
        if prec < 1:
            raise ValueError("precision must be >= 1")
        self.p = p
        self.prec = prec
        r = residue % (p**prec)
        self.residue = r
        self.known_val = prec if r == 0 else _vp(r, p)

    @classmethod
    def of(cls, x: int, p: int, prec: int = DEFAULT_PRECISION) -> "PAdicInt":
        """Validated constructor from an integer."""
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        return cls(p, prec, x)

    # -- helpers ---------------------------------------------------------

    def _pair(self, other) -> tuple[int, int, int]:
        # returns (prec, self-residue, other-residue) at the common precision
        if isinstance(other, int):
            return self.prec, self.residue, other
        if isinstance(other, PAdicInt):
            if other.p != self.p:
                raise ValueError(f"mixed primes: {self.p} vs {other.p}")
            k = min(self.prec, other.prec)
            return k, self.residue, other.residue
        return -1, 0, 0  # signals NotImplemented

    def at_prec(self, prec: int) -> "PAdicInt":
        """Truncate to a lower precision."""
        if prec > self.prec:
            raise ValueError("cannot invent digits: at_prec only lowers precision")
        return PAdicInt(self.p, prec, self.residue)

    def is_zero(self) -> bool:
        return self.residue == 0

    def is_unit(self) -> bool:
        return self.known_val == 0

    def digits(self) -> list[int]:
        """Base-p digits, least significant first, length prec."""
        out = []
        r = self.residue
        for _ in range(self.prec):
            r, d = divmod(r, self.p)
            out.append(d)
        return out

    # -- ring operations -------------------------------------------------

    def __add__(self, other):
        k, a, b = self._pair(other)
        if k < 0:
            return NotImplemented
        return PAdicInt(self.p, k, a + b)

    __radd__ = __add__

    def __sub__(self, other):
        k, a, b = self._pair(other)
        if k < 0:
            return NotImplemented
        return PAdicInt(self.p, k, a - b)

    def __rsub__(self, other):
        k, a, b = self._pair(other)
        if k < 0:
            return NotImplemented
        return PAdicInt(self.p, k, b - a)

    def __mul__(self, other):
        k, a, b = self._pair(other)
        if k < 0:
            return NotImplemented
        return PAdicInt(self.p, k, a * b)

    __rmul__ = __mul__

    def __neg__(self):
        return PAdicInt(self.p, self.prec, -self.residue)

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        base = self if e >= 0 else self.inv()
        return PAdicInt(self.p, self.prec, pow(base.residue, abs(e), self.p**self.prec))

    def inv(self) -> "PAdicInt":
        """Multiplicative inverse mod p^prec; the value must be a unit."""
        if self.known_val != 0:
            raise PrecisionError(f"not a unit mod {self.p}^{self.prec}: valuation >= {self.known_val}")
        return PAdicInt(self.p, self.prec, pow(self.residue, -1, self.p**self.prec))

    def __eq__(self, other):
        if not isinstance(other, PAdicInt):
            return NotImplemented
        return (self.p, self.prec, self.residue) == (other.p, other.prec, other.residue)

    def __hash__(self):
        return hash((self.p, self.prec, self.residue))

    def __repr__(self):
        return f"PAdicInt({self.residue} mod {self.p}^{self.prec})"


def padic_inv(x: PAdicInt) -> PAdicInt:
    """Inverse of a unit: y with x*y = 1 (mod p^prec)."""
    return x.inv()


def _exp_cutoff(p: int, prec: int) -> int:
    # smallest M with n - nu_p(n!) >= prec for every n >= M, via nu_p(n!) <= (n-1)/(p-1)
    return -((-(prec * (p - 1) - 1)) // (p - 2))


def padic_exp(z: PAdicInt) -> PAdicInt:
    """exp(z) = sum z^n/n!, for p >= 3 and z in pZ_p.

    The output satisfies nu_p(exp(z) - 1) = nu_p(z) whenever nu_p(z) < prec,
    and exp(z + w) = exp(z) exp(w) mod p^prec.
    """
    p, prec = z.p, z.prec
    if z.known_val < 1:
        raise ValueError("padic_exp needs nu_p(z) >= 1 (z in pZ_p)")
    cut = _exp_cutoff(p, prec)
    slack = vp_factorial(cut, p)
    mod = p ** (prec + slack)
    term = 1
    acc = 0
    zres = z.residue
    for n in range(cut + 1):
        if n:
            term = term * zres % mod
            w = _vp(n, p)
            if w:
                term //= p**w
            term = term * pow(n // p**w if w else n, -1, mod) % mod
        acc = (acc + term) % mod
    return PAdicInt(p, prec, acc)


def _log_cutoff(p: int, prec: int) -> int:
    # smallest M with n - nu_p(n) >= prec for every n >= M; n - log_p(n) is increasing
    n = prec
    while True:
        logp = 0
        q = p
        while q <= n:
            logp += 1
            q *= p
        if n - logp >= prec:
            return n
        n += 1


def padic_log(u: PAdicInt) -> PAdicInt:
    """log(u) = sum (-1)^(n-1) (u-1)^n / n, for u = 1 (mod p), p >= 3.

    Inverse to padic_exp: log(exp(z)) = z on pZ_p and exp(log(u)) = u on 1 + pZ_p.
    """
    p, prec = u.p, u.prec
    w = u - 1
    if w.known_val < 1:
        raise ValueError("padic_log needs u = 1 (mod p)")
    cut = _log_cutoff(p, prec)
    slack = 0  # max nu_p(n) over n <= cut
    q = p
    while q <= cut:
        slack += 1
        q *= p
    mod = p ** (prec + slack)
    wres = w.residue
    pw = 1
    acc = 0
    for n in range(1, cut + 1):
        pw = pw * wres % mod
        v = _vp(n, p)
        t = pw // p**v if v else pw
        t = t * pow(n // p**v if v else n, -1, mod) % mod
        acc = (acc - t if n % 2 == 0 else acc + t) % mod
    return PAdicInt(p, prec, acc)


def cube_root(u: PAdicInt) -> PAdicInt:
    """The unique y in Z_p^x with y^3 = u (mod p^prec), for p = 2 (mod 3).

    Hensel iteration on X^3 - u from the residue start u^((2p-1)/3 mod (p-1)).
    """
    p, prec = u.p, u.prec
    if p % 3 != 2:
        raise ValueError("cube roots are unique only for p = 2 (mod 3)")
    if not u.is_unit():
        raise ValueError("cube_root needs a unit")
    e0 = ((2 * p - 1) // 3) % (p - 1)
    y = pow(u.residue % p, e0, p)
    mod = p**prec
    ures = u.residue
    for _ in range(max(prec.bit_length(), 1) + 1):
        fy = (y * y * y - ures) % mod
        y = (y - fy * pow(3 * y * y, -1, mod)) % mod
    root = PAdicInt(p, prec, y)
    assert (root * root * root - u).is_zero()
    return root
