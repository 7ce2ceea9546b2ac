"""Bloch-Wigner dilogarithm and signed volumes of ideal tetrahedra.

The single-valued dilogarithm ``D(z) = Im Li2(z) + arg(1-z) log|z|`` gives
the signed hyperbolic volume of the ideal tetrahedron in H^3 whose vertices
on the boundary sphere P^1(C) have cross-ratio ``z``.  Orientation
convention: ``ideal_volume(inf, 0, 1, z) = D(z)``, so the positively
oriented regular tetrahedron has cross-ratio ``exp(i*pi/3)`` and volume
``V3 = D(exp(i*pi/3))``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from .linalg import QQi, scalar_is_zero

_PI2_6 = math.pi * math.pi / 6.0


def _bernoulli_coeffs(count):
    # c_n = B_n / (n+1)!, exact, used by the u-series of Li2
    bern = [Fraction(1)]
    for m in range(1, count):
        acc = Fraction(0)
        for k in range(m):
            acc += math.comb(m + 1, k) * bern[k]
        bern.append(-acc / (m + 1))
    coeffs = []
    fact = 1
    for n, b in enumerate(bern):
        fact *= (n + 1)
        coeffs.append(float(b / fact))
    return coeffs

_U_COEFFS = _bernoulli_coeffs(40)


def _li2_small(z: complex) -> complex:
    # power series sum z^k / k^2, |z| <= 1/2
    term = z
    acc = z
    k = 1
    while abs(term) > 1e-18:
        k += 1
        term *= z
        acc += term / (k * k)
    return acc


def _li2_u_series(z: complex) -> complex:
    # Li2(z) as a series in u = -log(1-z); converges fast for |1-z| >= 1/2
    u = -cmath.log(1 - z)
    acc = 0j
    upow = u
    for c in _U_COEFFS:
        if c:
            acc += c * upow
        upow *= u
    return acc


def _li2(z: complex) -> complex:
    """Principal-branch dilogarithm, accurate to ~1e-15 over C."""
    if z == 0:
        return 0j
    if z == 1:
        return complex(_PI2_6)
    if abs(z) > 1.0:
        return -_li2(1.0 / z) - _PI2_6 - 0.5 * cmath.log(-z) ** 2
    if z.real > 0.5:
        return _PI2_6 - cmath.log(z) * cmath.log(1 - z) - _li2(1 - z)
    if abs(z) <= 0.5:
        return _li2_small(z)
    return _li2_u_series(z)


@dataclass(frozen=True)
class ExtComplex:
    """A point of the Riemann sphere: a finite complex value or infinity."""

    value: complex = 0j
    infinite: bool = False

    @classmethod
    def finite(cls, z) -> "ExtComplex":
        return cls(complex(z), False)

    @classmethod
    def infinity(cls) -> "ExtComplex":
        return cls(0j, True)

    def __repr__(self):
        return "ExtComplex(inf)" if self.infinite else f"ExtComplex({self.value})"


INFINITY = ExtComplex.infinity()


def dilog_bw(z) -> float:
    """Bloch-Wigner function D(z), extended by 0 at 0, 1, infinity and on R.

    Accepts complex numbers, :class:`ExtComplex` and exact Gaussian
    rationals.
    """
    if isinstance(z, ExtComplex):
        if z.infinite:
            return 0.0
        z = z.value
    z = complex(z)
    if z.imag == 0.0:
        return 0.0
    li2 = _li2(z)
    return li2.imag + cmath.phase(1 - z) * math.log(abs(z))


@dataclass(frozen=True)
class ProjPoint:
    """Point ``[a : b]`` of the projective line, homogeneous pair not both zero."""

    a: object
    b: object

    def __post_init__(self):
        if _is_zero_pair(self.a, self.b):
            raise ValueError("projective point needs a nonzero homogeneous pair")

    @classmethod
    def infinity(cls, exact=False) -> "ProjPoint":
        return cls(QQi(1), QQi(0)) if exact else cls(1 + 0j, 0j)

    @classmethod
    def from_affine(cls, z) -> "ProjPoint":
        if isinstance(z, QQi):
            return cls(z, QQi(1))
        return cls(complex(z), 1 + 0j)

    @property
    def is_exact(self) -> bool:
        return isinstance(self.a, QQi)

    def affine(self) -> ExtComplex:
        if scalar_is_zero(self.b, max(abs(self.a), abs(self.b))):
            return INFINITY
        return ExtComplex.finite(complex(self.a) / complex(self.b))

    def to_float(self) -> "ProjPoint":
        return ProjPoint(complex(self.a), complex(self.b))


def _is_zero_pair(a, b):
    if isinstance(a, QQi):
        return (not a) and (not b)
    return a == 0 and b == 0


def cross_ratio(p0: ProjPoint, p1: ProjPoint, p2: ProjPoint,
                p3: ProjPoint) -> ExtComplex:
    """Cross-ratio with convention ``cross_ratio(inf, 0, 1, z) = z``.

    Evaluated projectively through homogeneous 2x2 determinants, hence
    total: coincident points yield 0, 1 or infinity.
    """
    def det(p, q):
        return p.a * q.b - q.a * p.b

    num = det(p0, p2) * det(p1, p3)
    den = det(p0, p3) * det(p1, p2)
    exact = isinstance(num, QQi)
    if exact:
        if not den:
            return INFINITY
        return ExtComplex.finite(complex(num / den))
    scale = max(abs(num), abs(den))
    if scale == 0.0 or abs(den) <= 1e-15 * scale:
        return INFINITY
    return ExtComplex.finite(num / den)


def ideal_volume(p0: ProjPoint, p1: ProjPoint, p2: ProjPoint,
                 p3: ProjPoint) -> float:
    """Signed volume of the ideal tetrahedron spanned by four boundary points.

    Alternating under permutations, zero when two points coincide, and
    bounded by ``V3`` in absolute value.
    """
    return dilog_bw(cross_ratio(p0, p1, p2, p3))


def apply_mobius(g, p: ProjPoint) -> ProjPoint:
    """Act on a projective point by a 2x2 matrix given as ((a,b),(c,d))."""
    (a, b), (c, d) = g
    return ProjPoint(a * p.a + b * p.b, c * p.a + d * p.b)


#: Cross-ratio of the positively oriented regular ideal tetrahedron.  The
#: sixth root of unity here is the one coupled to the sign convention of
#: ``ideal_volume``; flipping one requires flipping the other.
REGULAR_CROSS_RATIO = cmath.exp(1j * math.pi / 3.0)

#: Volume of the regular ideal tetrahedron, the maximum of ``dilog_bw``.
V3 = dilog_bw(REGULAR_CROSS_RATIO)
