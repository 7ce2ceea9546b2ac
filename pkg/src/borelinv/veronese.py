"""Veronese flags, symmetric powers of 2x2 matrices, and flag reduction.

The rational normal curve sends a point ``[x : y]`` of the projective line
to the complete flag of osculating subspaces of the moment curve in
``C^n``.  Step ``n - i`` of that flag is spanned by the binomial power
columns of degrees ``n-1, ..., i``, which makes the construction exact for
rational points.  The induced action of the determinant-one 2x2 matrices
on binary forms gives the equivariant representation ``sym_power``.
"""

from __future__ import annotations

import math

from .linalg import DEFAULT_TOL, EchelonBasis, Matrix, QQi, scalar_is_zero
from .flags import Flag
from .volume import ProjPoint


def binomial_power_column(x, y, i: int, n: int):
    """The degree-``i`` binomial column ``(x^i, C(i,1) x^{i-1} y, ..., y^i)``
    padded with ``n - i - 1`` trailing zeros."""
    if not 0 <= i <= n - 1:
        raise ValueError(f"degree {i} out of range 0..{n - 1}")
    exact = isinstance(x, QQi)
    zero = QQi(0) if exact else 0j
    col = [math.comb(i, j) * x ** (i - j) * y ** j for j in range(i + 1)]
    col.extend([zero] * (n - i - 1))
    return col


def veronese_flag(p: ProjPoint, n: int) -> Flag:
    """Flag of the rational normal curve at a projective-line point.

    The adapted matrix carries the binomial power columns of degrees
    ``n-1`` down to ``1`` followed by the lowest-index standard vector
    outside their span; the top column never influences projective
    quantities downstream.  The point ``[1 : 0]`` degenerates to the
    standard descending flag.
    """
    if n < 2:
        raise ValueError("ambient dimension must be at least 2")
    exact = p.is_exact
    scale = max(abs(p.a), abs(p.b))
    if scalar_is_zero(p.b, scale if scale > 0 else 1.0):
        return Flag(Matrix.identity(n, exact))
    x, y = p.a, p.b
    if not exact:
        # balance the homogeneous pair; the flag is insensitive to the
        # rescaling and the power columns stay well conditioned
        x, y = complex(x) / scale, complex(y) / scale
    cols = [binomial_power_column(x, y, i, n) for i in range(n - 1, 0, -1)]
    ech = EchelonBasis(n, exact, None if exact else _float_tol(cols))
    for c in cols:
        ech.insert(c)
    one = QQi(1) if exact else 1 + 0j
    zero = QQi(0) if exact else 0j
    for idx in range(n):
        e = [zero] * n
        e[idx] = one
        probe = ech.copy()
        if probe.insert(e):
            cols.append(e)
            break
    return Flag(Matrix.from_cols(cols, rows=n))


def _float_tol(cols):
    top = max(abs(x) for c in cols for x in c)
    return DEFAULT_TOL * (top if top > 0 else 1.0)


def sym_power(g: Matrix, n: int, tol=None) -> Matrix:
    """Action of a determinant-one 2x2 matrix on degree ``n-1`` binary forms.

    Computed in the binomial power basis, so it satisfies
    ``sym_power(g) @ binomial_power_column(x, y, n-1, n) =
    binomial_power_column(g.(x,y), n-1, n)`` and is multiplicative in
    ``g``.
    """
    if g.shape != (2, 2):
        raise ValueError("need a 2x2 matrix")
    a, b = g.data[0]
    c, d = g.data[1]
    det = a * d - b * c
    exact = g.is_exact
    if exact:
        if det != QQi(1):
            raise ValueError("determinant must be exactly 1")
    else:
        tol = DEFAULT_TOL if tol is None else tol
        if abs(complex(det) - 1) > tol * max(1.0, g.max_abs() ** 2):
            raise ValueError(f"determinant {complex(det)} is not 1")
    m = n - 1
    one = QQi(1) if exact else 1 + 0j

    def poly_mul(p, q):
        out = [0 * one] * (len(p) + len(q) - 1)
        for i, pi in enumerate(p):
            for j, qj in enumerate(q):
                out[i + j] = out[i + j] + pi * qj
        return out

    def poly_pow(p, e):
        out = [one]
        for _ in range(e):
            out = poly_mul(out, p)
        return out

    # row j of the image: expand C(m,j) (a x + b y)^{m-j} (c x + d y)^j in
    # the monomials x^{m-l} y^l and divide column l by C(m,l)
    rows = []
    for j in range(m + 1):
        poly = poly_mul(poly_pow([a, b], m - j), poly_pow([c, d], j))
        binom = math.comb(m, j)
        row = []
        for l in range(m + 1):
            coeff = binom * poly[l]
            denom = math.comb(m, l)
            row.append(coeff / denom if denom != 1 else coeff)
        rows.append(row)
    return Matrix(rows)


def reduce_flag(f: Flag, tol=None) -> Flag:
    """Project a flag along the first coordinate axis and rescale.

    Deleting the first coordinate collapses exactly one step of the flag;
    the surviving adapted columns, multiplied by ``diag(1, 2, ..., n-1)``,
    give a flag in dimension ``n - 1``.  On Veronese flags this recovers
    the Veronese flag of the same point one dimension down, column by
    column: the degree-``i`` column maps to ``i`` times the degree-``i-1``
    column.
    """
    n = f.n
    if n < 3:
        raise ValueError("reduction needs ambient dimension at least 3")
    exact = f.is_exact
    scale = f.adapted.max_abs()
    ech = EchelonBasis(n - 1, exact,
                       None if exact else DEFAULT_TOL * (scale if scale else 1.0))
    kept = []
    for j in range(n):
        col = list(f.adapted.col(j))[1:]
        if ech.insert(col):
            kept.append(col)
    if len(kept) != n - 1:
        raise ValueError("projection collapsed more than one step")
    scaled = [[(i + 1) * col[i] for i in range(n - 1)] for col in kept]
    return Flag(Matrix.from_cols(scaled, rows=n - 1))
