"""Truncated q-expansion arithmetic over exact integers.

A series is a list of arbitrary-precision integer coefficients indexed by
the q-exponent, together with an explicit precision (the number of retained
coefficients).  Precision never grows silently: every binary operation
truncates to the smaller operand.  Nothing in this module touches floating
point.
"""

from __future__ import annotations

from dataclasses import dataclass, field

try:
    from gmpy2 import mpz as _mpz
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    _mpz = None

__all__ = [
    "IntSeries",
    "series_add",
    "series_sub",
    "series_mul",
    "series_pow",
    "sigma_coefficients",
    "eisenstein_e4",
    "eisenstein_e6",
    "delta",
    "mul_coeff_lists",
]

# Below this length the packing overhead of the Kronecker product outweighs
# the big-integer speedup.
_NAIVE_LIMIT = 48


@dataclass
class IntSeries:
    """q-expansion truncated to ``prec`` coefficients (exponents 0..prec-1)."""

    coeffs: list[int]
    prec: int = field(default=-1)

    def __post_init__(self):
        self.coeffs = list(self.coeffs)
        if self.prec == -1:
            self.prec = len(self.coeffs)
        if self.prec < 1:
            raise ValueError("precision must be a positive integer")
        if len(self.coeffs) != self.prec:
            raise ValueError(
                f"coefficient list has {len(self.coeffs)} entries, precision says {self.prec}"
            )

    def coefficient(self, n: int) -> int:
        if not 0 <= n < self.prec:
            raise IndexError(f"coefficient q^{n} not retained at precision {self.prec}")
        return self.coeffs[n]

    def truncate(self, prec: int) -> "IntSeries":
        if prec > self.prec:
            raise ValueError(f"cannot extend precision {self.prec} to {prec}")
        return IntSeries(self.coeffs[:prec], prec)

    def __add__(self, other):
        return series_add(self, other)

    def __sub__(self, other):
        return series_sub(self, other)

    def __mul__(self, other):
        return series_mul(self, other)

    def __pow__(self, e):
        return series_pow(self, e)

    def __neg__(self):
        return IntSeries([-c for c in self.coeffs], self.prec)

    @classmethod
    def one(cls, prec: int) -> "IntSeries":
        return cls([1] + [0] * (prec - 1), prec)

    @classmethod
    def zero(cls, prec: int) -> "IntSeries":
        return cls([0] * prec, prec)


def series_add(a: IntSeries, b: IntSeries) -> IntSeries:
    prec = min(a.prec, b.prec)
    return IntSeries([x + y for x, y in zip(a.coeffs[:prec], b.coeffs[:prec])], prec)


def series_sub(a: IntSeries, b: IntSeries) -> IntSeries:
    prec = min(a.prec, b.prec)
    return IntSeries([x - y for x, y in zip(a.coeffs[:prec], b.coeffs[:prec])], prec)


def series_mul(a: IntSeries, b: IntSeries) -> IntSeries:
    prec = min(a.prec, b.prec)
    return IntSeries(mul_coeff_lists(a.coeffs, b.coeffs, prec), prec)


def series_pow(a: IntSeries, e: int) -> IntSeries:
    """Power by repeated squaring, truncated to a.prec."""
    if e < 0:
        raise ValueError("exponent must be nonnegative")
    prec = a.prec
    result = [1] + [0] * (prec - 1)
    base = a.coeffs[:prec]
    while e:
        if e & 1:
            result = mul_coeff_lists(result, base, prec)
        e >>= 1
        if e:
            base = mul_coeff_lists(base, base, prec)
    return IntSeries(result, prec)


def mul_coeff_lists(a: list[int], b: list[int], prec: int) -> list[int]:
    """Exact Cauchy product of two coefficient lists, truncated to ``prec``."""
    if prec < 1:
        raise ValueError("precision must be a positive integer")
    a = a[:prec]
    b = b[:prec]
    if prec <= _NAIVE_LIMIT or _mpz is None:
        return _mul_naive(a, b, prec)
    return _mul_kronecker(a, b, prec)


def _mul_naive(a, b, prec):
    out = [0] * prec
    for i, ai in enumerate(a):
        if not ai:
            continue
        for j in range(min(len(b), prec - i)):
            bj = b[j]
            if bj:
                out[i + j] += ai * bj
    return out


def _mul_kronecker(a, b, prec):
    """Cauchy product via Kronecker substitution.

    Both series are packed into single large integers with one fixed-width
    slot per coefficient, multiplied once (GMP does the heavy lifting), and
    the product coefficients are read back out of the slots.  The slot width
    is chosen so no convolution sum can overflow into its neighbour, with a
    spare bit that lets signed values be recovered by balanced-digit carry
    propagation.
    """
    bits_a = max((abs(x).bit_length() for x in a), default=0)
    bits_b = max((abs(x).bit_length() for x in b), default=0)
    slot = bits_a + bits_b + prec.bit_length() + 2
    slot += (-slot) % 8
    nb = slot // 8

    prod = int(_mpz(_pack(a, nb)) * _mpz(_pack(b, nb)))
    sign = 1
    if prod < 0:
        sign = -1
        prod = -prod
    need = max((prod.bit_length() + 7) // 8, prec * nb) + 1
    raw = prod.to_bytes(need, "little")

    half = 1 << (slot - 1)
    full = 1 << slot
    out = []
    carry = 0
    for i in range(prec):
        v = int.from_bytes(raw[i * nb : (i + 1) * nb], "little") + carry
        if v >= half:
            v -= full
            carry = 1
        else:
            carry = 0
        out.append(sign * v)
    return out


def _pack(cs, nb):
    pos = bytearray(len(cs) * nb)
    neg = bytearray(len(cs) * nb)
    for i, c in enumerate(cs):
        if c > 0:
            pos[i * nb : (i + 1) * nb] = c.to_bytes(nb, "little")
        elif c < 0:
            neg[i * nb : (i + 1) * nb] = (-c).to_bytes(nb, "little")
    return int.from_bytes(bytes(pos), "little") - int.from_bytes(bytes(neg), "little")


def sigma_coefficients(power: int, prec: int) -> list[int]:
    """Divisor sums: entry n holds sigma_power(n), entry 0 is 0.

    Sieve over divisors, O(prec log prec) additions.
    """
    if prec < 1:
        raise ValueError("precision must be a positive integer")
    out = [0] * prec
    for d in range(1, prec):
        dp = d**power
        for m in range(d, prec, d):
            out[m] += dp
    return out


def eisenstein_e4(prec: int) -> IntSeries:
    """E4 = 1 + 240 sum sigma_3(n) q^n."""
    sig = sigma_coefficients(3, prec)
    return IntSeries([1] + [240 * s for s in sig[1:]], prec)


def eisenstein_e6(prec: int) -> IntSeries:
    """E6 = 1 - 504 sum sigma_5(n) q^n."""
    sig = sigma_coefficients(5, prec)
    return IntSeries([1] + [-504 * s for s in sig[1:]], prec)


def delta(prec: int) -> IntSeries:
    """The weight-12 cusp form (E4^3 - E6^2)/1728; coefficient n is tau(n).

    Every division by 1728 must be exact; an inexact one means the series
    arithmetic is broken and raises immediately.
    """
    e4 = eisenstein_e4(prec)
    e6 = eisenstein_e6(prec)
    num = series_sub(series_pow(e4, 3), series_pow(e6, 2))
    coeffs = []
    for n, c in enumerate(num.coeffs):
        q, r = divmod(c, 1728)
        if r:
            raise ArithmeticError(
                f"discriminant normalization failed: coefficient of q^{n} ({c}) "
                "is not divisible by 1728"
            )
        coeffs.append(q)
    return IntSeries(coeffs, prec)
