"""Level-1 cusp form spaces and Hecke operator matrices.

The weight-k cusp space is spanned by the monomials D*E4^a*E6^b with
4a+6b = k-12 (D the weight-12 cusp form).  For computation we echelonize:
the "Miller" basis f_1..f_d with f_i = q^i + O(q^(d+1)) and integer
coefficients throughout.  It is produced from the unit-triangular ladder
g_j = D^j * (E4/E6 monomial of weight k-12j), whose reduction needs only
integer row operations; the result is the unique reduced echelon basis, the
same one rational row reduction of the monomials yields (that route is kept
as a test oracle in echelon_from_monomials).

T_p acts on coefficients by a_n -> a_(np) + p^(k-1) a_(n/p).  In the echelon
basis the first d coefficients of an image ARE its coordinates, so the
matrix is a read-off once the basis is known to d*p+1 terms.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .primes import is_prime
from .qseries import (
    IntSeries,
    delta,
    eisenstein_e4,
    eisenstein_e6,
    mul_coeff_lists,
)

__all__ = [
    "PrecisionError",
    "cusp_dim",
    "monomial_exponents",
    "monomial_basis",
    "miller_basis",
    "echelon_from_monomials",
    "required_prec",
    "CuspSpace",
    "HeckeMatrix",
    "hecke_matrix",
    "hecke_matrix_direct",
    "BasisCache",
]


class PrecisionError(ValueError):
    """A computation was handed fewer series coefficients than it needs."""


@dataclass
class CuspSpace:
    """Weight-k level-1 cusp space held as its integral echelon basis.

    Basis element i (1-indexed) has coefficient 1 at q^i and 0 at q^j for
    the other j <= dim.  For a Hecke matrix at the prime p the space must
    carry prec >= dim*p + 1 coefficients.
    """

    k: int
    dim: int
    prec: int
    basis: list[IntSeries]


@dataclass
class HeckeMatrix:
    """Matrix of T_p on the echelon basis; row i is the image of basis i."""

    p: int
    k: int
    entries: list[list[int]]


def cusp_dim(k: int) -> int:
    """dim S_k(SL2(Z)) = number of pairs (a,b) >= 0 with 4a+6b = k-12."""
    if k % 2 != 0:
        raise ValueError(f"odd weight {k}: level-1 cusp spaces are zero and not enumerated")
    if k < 0:
        raise ValueError("weight must be nonnegative")
    return len(monomial_exponents(k))


def monomial_exponents(k: int) -> list[tuple[int, int]]:
    """All (a, b) with 4a+6b = k-12, ordered by decreasing a."""
    m = k - 12
    if m < 0:
        return []
    out = []
    for a in range(m // 4, -1, -1):
        r = m - 4 * a
        if r % 6 == 0:
            out.append((a, r // 6))
    return out


def required_prec(k: int, p: int) -> int:
    """Minimal precision for which all T_p rows are complete: dim*p + 1."""
    return cusp_dim(k) * p + 1


def _weight_factor_exponents(m: int) -> tuple[int, int]:
    """Write even m as 4a+6b with b in {0,1}; every even m >= 0 except 2 works."""
    if m < 0 or m % 2 or m == 2:
        raise ValueError(f"no E4^a E6^b monomial of weight {m}")
    if m % 4 == 0:
        return m // 4, 0
    return (m - 6) // 4, 1


class BasisCache:
    """Shared q-expansions at one fixed precision.

    Holds the coefficient lists of D^j and of the pure E4^a / E4^a*E6
    monomials, built lazily by single multiplications along each chain.  A
    sweep over many weights at one prime reuses one cache; instances are
    read-only after construction as far as callers are concerned.
    """

    def __init__(self, prec: int):
        if prec < 1:
            raise ValueError("precision must be a positive integer")
        self.prec = prec
        self._e4 = eisenstein_e4(prec).coeffs
        self._e6 = eisenstein_e6(prec).coeffs
        one = [1] + [0] * (prec - 1)
        self._weight_factors: dict[int, list[int]] = {0: one, 4: self._e4, 6: self._e6}
        self._delta_pows: dict[int, list[int]] = {0: one}

    def weight_factor(self, m: int) -> list[int]:
        """Coefficients of the weight-m monomial E4^a E6^b with b in {0,1}."""
        got = self._weight_factors.get(m)
        if got is not None:
            return got
        a, b = _weight_factor_exponents(m)
        if b == 0:
            prev = self.weight_factor(m - 4)
            cur = mul_coeff_lists(prev, self._e4, self.prec)
        else:
            prev = self.weight_factor(m - 6)
            cur = mul_coeff_lists(prev, self._e6, self.prec)
        self._weight_factors[m] = cur
        return cur

    def delta_power(self, j: int) -> list[int]:
        got = self._delta_pows.get(j)
        if got is not None:
            return got
        if 1 not in self._delta_pows:
            self._delta_pows[1] = delta(self.prec).coeffs
        jmax = max(self._delta_pows)
        cur = self._delta_pows[jmax]
        for i in range(jmax + 1, j + 1):
            cur = mul_coeff_lists(cur, self._delta_pows[1], self.prec)
            self._delta_pows[i] = cur
        return self._delta_pows[j]

    def ladder_element(self, k: int, j: int, prec: int) -> list[int]:
        """Coefficients of D^j * (weight factor of k-12j), truncated to prec."""
        if prec > self.prec:
            raise PrecisionError(f"cache holds {self.prec} coefficients, {prec} requested")
        g = mul_coeff_lists(self.delta_power(j)[:prec], self.weight_factor(k - 12 * j)[:prec], prec)
        jj = min(j, prec - 1)
        if any(g[n] for n in range(jj)) or (j < prec and g[j] != 1):
            raise ArithmeticError(
                f"ladder element (k={k}, j={j}) is not q^{j} + higher order: series bug"
            )
        return g


def monomial_basis(k: int, prec: int) -> list[IntSeries]:
    """The cusp forms D*E4^a*E6^b over all (a,b) with 4a+6b = k-12."""
    d = cusp_dim(k)
    if k < 12 or d == 0:
        return []
    if prec < d + 1:
        raise PrecisionError(f"weight {k} needs at least {d + 1} coefficients, got {prec}")
    dd = delta(prec)
    e4 = eisenstein_e4(prec)
    e6 = eisenstein_e6(prec)
    out = []
    for a, b in monomial_exponents(k):
        f = dd * (e4**a) * (e6**b)
        out.append(f)
    return out


def miller_basis(k: int, prec: int, cache: BasisCache | None = None) -> CuspSpace:
    """Integral echelon basis of S_k(SL2(Z)): f_i = q^i + O(q^(d+1)).

    Unit-triangular ladder plus integer back-substitution; all coefficients
    stay integers by construction.
    """
    d = cusp_dim(k)
    if d == 0:
        return CuspSpace(k, 0, prec, [])
    if prec < d + 1:
        raise PrecisionError(f"weight {k} needs at least {d + 1} coefficients, got {prec}")
    if cache is None:
        cache = BasisCache(prec)
    ladder = {j: cache.ladder_element(k, j, prec) for j in range(1, d + 1)}
    reduced: dict[int, list[int]] = {}
    for i in range(d, 0, -1):
        f = list(ladder[i])
        for n in range(i + 1, d + 1):
            t = f[n]
            if t:
                fn = reduced[n]
                f = [x - t * y for x, y in zip(f, fn)]
        reduced[i] = f
    return CuspSpace(k, d, prec, [IntSeries(reduced[i], prec) for i in range(1, d + 1)])


def echelon_from_monomials(k: int, prec: int) -> CuspSpace:
    """Echelonize the monomial basis by rational row reduction (test oracle).

    Fails loudly if the leading d x d block is singular or any reduced
    coefficient comes out non-integral; either would contradict the
    monomials forming an integral basis.
    """
    mons = monomial_basis(k, prec)
    d = len(mons)
    if d == 0:
        return CuspSpace(k, 0, prec, [])
    rows = [[Fraction(c) for c in s.coeffs] for s in mons]
    for col in range(1, d + 1):
        piv = next((r for r in range(col - 1, d) if rows[r][col] != 0), None)
        if piv is None:
            raise ArithmeticError(f"leading {d}x{d} block singular at weight {k}")
        rows[col - 1], rows[piv] = rows[piv], rows[col - 1]
        pivval = rows[col - 1][col]
        rows[col - 1] = [x / pivval for x in rows[col - 1]]
        for r in range(d):
            if r != col - 1 and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[col - 1])]
    basis = []
    for i, row in enumerate(rows, start=1):
        ints = []
        for n, x in enumerate(row):
            if x.denominator != 1:
                raise ArithmeticError(
                    f"non-integer coefficient {x} at q^{n} in echelon basis element {i}, weight {k}"
                )
            ints.append(int(x))
        basis.append(IntSeries(ints, prec))
    return CuspSpace(k, d, prec, basis)


def hecke_matrix(space: CuspSpace, p: int) -> HeckeMatrix:
    """Matrix of T_p in the echelon basis, rows = images, exact integers."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    d = space.dim
    need = d * p + 1
    if d and space.prec < need:
        raise PrecisionError(
            f"T_{p} at weight {space.k} needs {need} coefficients, basis holds {space.prec}"
        )
    pk = p ** (space.k - 1)
    entries = []
    for f in space.basis:
        c = f.coeffs
        row = []
        for n in range(1, d + 1):
            v = c[n * p]
            if n % p == 0:
                v += pk * c[n // p]
            row.append(v)
        entries.append(row)
    return HeckeMatrix(p, space.k, entries)


def hecke_matrix_direct(p: int, k: int, cache: BasisCache | None = None) -> HeckeMatrix:
    """T_p matrix without materializing full echelon tails.

    Builds the ladder, restricts every element to the columns the matrix
    actually reads (1..d and the multiples np), and performs the echelon
    reduction on those columns only.  Agrees entry-for-entry with
    hecke_matrix(miller_basis(k, d*p+1), p); the restriction is pure
    performance.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    d = cusp_dim(k)
    if d == 0:
        return HeckeMatrix(p, k, [])
    prec = d * p + 1
    if cache is None:
        cache = BasisCache(prec)
    cols = sorted({*range(1, d + 1), *(n * p for n in range(1, d + 1))})
    idx = {c: i for i, c in enumerate(cols)}

    restricted: dict[int, list[int]] = {}
    for j in range(1, d + 1):
        g = cache.ladder_element(k, j, prec)
        restricted[j] = [g[c] for c in cols]

    reduced: dict[int, list[int]] = {}
    for i in range(d, 0, -1):
        v = restricted[i]
        for n in range(i + 1, d + 1):
            t = v[idx[n]]
            if t:
                vn = reduced[n]
                v = [x - t * y for x, y in zip(v, vn)]
        reduced[i] = v

    pk = p ** (k - 1)
    entries = []
    for i in range(1, d + 1):
        v = reduced[i]
        row = []
        for n in range(1, d + 1):
            val = v[idx[n * p]]
            if n % p == 0:
                val += pk * v[idx[n // p]]
            row.append(val)
        entries.append(row)
    return HeckeMatrix(p, k, entries)
