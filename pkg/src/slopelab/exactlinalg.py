"""Exact characteristic polynomials of integer matrices.

The entries that show up here contain powers like p^(k-1) with hundreds or
thousands of digits, so the default path is division-free and exact: the
Berkowitz algorithm over arbitrary-precision integers.  An optional modulus
turns the same recursion into arithmetic mod p^M; that path is used only as
an opt-in accelerator by callers that certify the result afterwards.
"""

from __future__ import annotations

from dataclasses import dataclass

try:
    from gmpy2 import mpz as _mpz
except ImportError:  # pragma: no cover
    _mpz = None

__all__ = ["CharPoly", "char_poly", "det_valuation"]


@dataclass
class CharPoly:
    """Monic integer polynomial, coefficients stored from degree d down to 0."""

    coeffs: list[int]

    def __post_init__(self):
        self.coeffs = [int(c) for c in self.coeffs]
        if not self.coeffs or self.coeffs[0] != 1:
            raise ValueError("characteristic polynomial must be monic")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def constant_term(self) -> int:
        return self.coeffs[-1]

    def trace_coefficient(self) -> int:
        """Coefficient of x^(d-1); equals minus the matrix trace."""
        if self.degree == 0:
            raise ValueError("degree-0 polynomial has no trace coefficient")
        return self.coeffs[1]


def char_poly(m, modulus: int | None = None) -> CharPoly:
    """det(xI - m) for a square integer matrix, computed exactly.

    With ``modulus`` the coefficients are returned reduced into [0, modulus);
    the caller owns the correctness argument for using residues.
    """
    rows = [list(r) for r in m]
    n = len(rows)
    for r in rows:
        if len(r) != n:
            raise ValueError("matrix is not square")
    if n == 0:
        return CharPoly([1])
    if modulus is not None and modulus < 2:
        raise ValueError("modulus must be at least 2")
    coeffs = _berkowitz(rows, modulus)
    if modulus is not None:
        # Leading coefficient is 1 by construction even as a residue.
        coeffs[0] = 1
    return CharPoly(coeffs)


def _berkowitz(rows, modulus):
    """Division-free characteristic polynomial (Berkowitz).

    Iterates over leading principal submatrices; each step convolves the
    previous coefficient vector with a Toeplitz column built from the new
    row/column and powers of the submatrix.
    """
    if _mpz is not None:
        lift = _mpz
    else:  # pragma: no cover
        lift = int
    A = [[lift(x) for x in r] for r in rows]
    n = len(A)
    mod = lift(modulus) if modulus is not None else None

    poly = [lift(1)]
    for r in range(1, n + 1):
        a = A[r - 1][r - 1]
        row = A[r - 1][:r - 1]
        col = [A[i][r - 1] for i in range(r - 1)]
        t = [lift(1), -a]
        v = col
        for step in range(r - 1):
            s = sum(x * y for x, y in zip(row, v))
            t.append(-(s % mod) if mod is not None else -s)
            if step < r - 2:
                nv = []
                for i in range(r - 1):
                    acc = sum(A[i][j] * v[j] for j in range(r - 1))
                    nv.append(acc % mod if mod is not None else acc)
                v = nv
        new = []
        for i in range(r + 1):
            lo = max(0, i - len(poly) + 1)
            hi = min(i, len(t) - 1)
            acc = sum(t[j] * poly[i - j] for j in range(lo, hi + 1))
            new.append(acc % mod if mod is not None else acc)
        poly = new
    return [int(c) for c in poly]


def det_valuation(m, p: int):
    """ord_p of det(m): valuation of the characteristic polynomial's constant
    term (sign-independent).  Returns float('inf') when det(m) = 0."""
    c = char_poly(m).constant_term
    if c == 0:
        return float("inf")
    v = 0
    while c % p == 0:
        c //= p
        v += 1
    return v
