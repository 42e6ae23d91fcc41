"""p-adic valuations and Newton polygons of integer polynomials.

Slopes are extracted from the lower convex hull of the valuation points
(i, ord_p(a_i)), all in exact integer/rational arithmetic: hull turns are
decided by integer cross products and slopes are Fractions, never floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactlinalg import CharPoly

try:
    from gmpy2 import remove as _gmpy_remove
except ImportError:  # pragma: no cover
    _gmpy_remove = None

__all__ = ["INFINITY", "ordp", "NewtonPolygon", "newton_slopes", "polygon_from_valuations"]

INFINITY = float("inf")


def ordp(n: int, p: int):
    """Exact p-adic valuation of an integer, with ord_p(p) = 1.

    Returns INFINITY for n = 0.
    """
    if p < 2:
        raise ValueError("p must be at least 2")
    if n == 0:
        return INFINITY
    if _gmpy_remove is not None:
        return int(_gmpy_remove(n, p)[1])
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


@dataclass
class NewtonPolygon:
    """Lower convex hull of the finite valuation points of a polynomial.

    ``points`` holds (i, ord_p(coeff of x^(d-i))) for i = 0..d, finite
    valuations only.  ``slopes`` pairs each hull-segment slope (an exact
    rational) with its multiplicity (the segment's horizontal length).
    """

    p: int
    points: list[tuple[int, int]]
    vertices: list[tuple[int, int]]
    slopes: list[tuple[Fraction, int]]

    def slope_multiset(self) -> list[Fraction]:
        """Slopes repeated per multiplicity, ascending."""
        out = []
        for s, m in self.slopes:
            out.extend([s] * m)
        return out


def newton_slopes(f: CharPoly, p: int) -> NewtonPolygon:
    """Newton polygon of a monic integer polynomial with nonzero constant term."""
    vals = [ordp(c, p) for c in f.coeffs]
    return polygon_from_valuations(p, vals)


def polygon_from_valuations(p: int, vals: list) -> NewtonPolygon:
    """Build the polygon from per-coefficient valuations (leading to constant).

    Entries may be INFINITY for vanished coefficients; those points are
    simply absent from the candidate set.  The leading valuation must be 0
    (monic) and the constant one finite, else there is a zero eigenvalue.
    """
    d = len(vals) - 1
    if d < 0 or vals[0] != 0:
        raise ValueError("polynomial must be monic")
    if d == 0:
        return NewtonPolygon(p, [(0, 0)], [(0, 0)], [])
    if vals[-1] == INFINITY:
        raise ValueError("zero eigenvalue / infinite slope: constant term vanishes")

    points = [(i, int(v)) for i, v in enumerate(vals) if v != INFINITY]
    vertices = _lower_hull(points)
    slopes = []
    for (x0, y0), (x1, y1) in zip(vertices, vertices[1:]):
        slopes.append((Fraction(y1 - y0, x1 - x0), x1 - x0))

    poly = NewtonPolygon(p, points, vertices, slopes)
    _check_polygon(poly, d, vals[-1])
    return poly


def _lower_hull(points):
    """Monotone chain, integer cross products; collinear interior points are
    dropped so consecutive hull slopes are strictly increasing."""
    hull = []
    for pt in points:
        while len(hull) >= 2:
            (x0, y0), (x1, y1) = hull[-2], hull[-1]
            if (x1 - x0) * (pt[1] - y0) - (y1 - y0) * (pt[0] - x0) <= 0:
                hull.pop()
            else:
                break
        hull.append(pt)
    return hull


def _check_polygon(poly, d, const_val):
    slopes = [s for s, _ in poly.slopes]
    assert all(a < b for a, b in zip(slopes, slopes[1:])), "hull slopes not strictly increasing"
    assert sum(m for _, m in poly.slopes) == d, "slope multiplicities do not cover the degree"
    total = sum(s * m for s, m in poly.slopes)
    assert total == const_val, "slope sum does not match the constant-term valuation"
