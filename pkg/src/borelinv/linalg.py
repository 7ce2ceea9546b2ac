"""Complex linear algebra with canonical echelon forms.

Everything downstream (orbit classification, face maps, flag genericity)
reduces to ranks, spans and quotients of small complex matrices.  Two
scalar backends share one code path: exact Gaussian rationals (:class:`QQi`,
``Fraction`` components) and Python ``complex``.  Exact entries make every
zero test exact; float entries are compared against ``tol`` times the
largest modulus present in the matrix, so all decisions are scale invariant.

The reduced row-echelon form is used as a complete invariant for the left
action of the invertible matrices: two matrices have the same canonical
form iff one is an invertible multiple of the other.  Subspaces are stored
through the analogous reduced column-echelon basis, which makes subspace
equality a matrix comparison.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

DEFAULT_TOL = 1e-10


def set_default_tol(tol: float) -> None:
    """Set the process-wide float zero-test tolerance (call once at startup)."""
    global DEFAULT_TOL
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    DEFAULT_TOL = float(tol)


class QQi:
    """Gaussian rational ``re + im*i`` with exact ``Fraction`` components.

    Arithmetic among QQi, int and Fraction stays exact; mixing with float
    or complex falls back to ``complex`` arithmetic.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if isinstance(re, Fraction) else Fraction(re)
        self.im = im if isinstance(im, Fraction) else Fraction(im)

    # -- arithmetic -------------------------------------------------------

    @staticmethod
    def _lift(other):
        if isinstance(other, QQi):
            return other
        if isinstance(other, (int, Fraction)):
            return QQi(other)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return complex(self) + other
        return QQi(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return complex(self) - other
        return QQi(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return other - complex(self)
        return QQi(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return complex(self) * other
        return QQi(self.re * o.re - self.im * o.im,
                   self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return complex(self) / other
        d = o.re * o.re + o.im * o.im
        if d == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return QQi((self.re * o.re + self.im * o.im) / d,
                   (self.im * o.re - self.re * o.im) / d)

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return other / complex(self)
        return o / self

    def __neg__(self):
        return QQi(-self.re, -self.im)

    def __pow__(self, exponent):
        if not isinstance(exponent, int) or exponent < 0:
            return complex(self) ** exponent
        out = QQi(1)
        base = self
        e = exponent
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    # -- comparison and conversion ---------------------------------------

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __abs__(self):
        return abs(complex(self))

    def conjugate(self):
        return QQi(self.re, -self.im)

    def __repr__(self):
        return f"QQi({self.re!s}, {self.im!s})"


def scalar_is_zero(x, scale=1.0, tol=None) -> bool:
    """Zero test: exact for QQi, relative to ``scale`` for floats."""
    if isinstance(x, QQi):
        return not x
    return abs(x) < (DEFAULT_TOL if tol is None else tol) * scale


class Matrix:
    """Immutable complex matrix; column ``j`` is the ``j``-th stored vector."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data, cols=None):
        data = tuple(tuple(row) for row in data)
        self.rows = len(data)
        if self.rows:
            self.cols = len(data[0])
            if any(len(row) != self.cols for row in data):
                raise ValueError("ragged rows")
        else:
            self.cols = 0 if cols is None else int(cols)
        self.data = data

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_cols(cls, cols, rows=None):
        cols = [tuple(c) for c in cols]
        if cols:
            nr = len(cols[0])
            if any(len(c) != nr for c in cols):
                raise ValueError("ragged columns")
        else:
            nr = 0 if rows is None else int(rows)
        return cls([[c[i] for c in cols] for i in range(nr)], cols=len(cols))

    @classmethod
    def identity(cls, n, exact=False):
        one, zero = (QQi(1), QQi(0)) if exact else (1 + 0j, 0j)
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows, cols, exact=False):
        zero = QQi(0) if exact else 0j
        return cls([[zero] * cols for _ in range(rows)], cols=cols)

    # -- accessors ---------------------------------------------------------

    @property
    def shape(self):
        return (self.rows, self.cols)

    @property
    def is_exact(self) -> bool:
        return bool(self.data) and self.cols > 0 and isinstance(self.data[0][0], QQi)

    def entry(self, i, j):
        return self.data[i][j]

    def col(self, j):
        return tuple(self.data[i][j] for i in range(self.rows))

    def columns(self):
        return [self.col(j) for j in range(self.cols)]

    def drop_col(self, j):
        return Matrix([row[:j] + row[j + 1:] for row in self.data],
                      cols=self.cols - 1)

    def transpose(self):
        return Matrix([[self.data[i][j] for i in range(self.rows)]
                       for j in range(self.cols)], cols=self.rows)

    def max_abs(self) -> float:
        best = 0.0
        for row in self.data:
            for x in row:
                a = abs(x)
                if a > best:
                    best = a
        return best

    def to_float(self):
        return Matrix([[complex(x) for x in row] for row in self.data],
                      cols=self.cols)

    def scale_col(self, j, factor):
        return Matrix([row[:j] + (row[j] * factor,) + row[j + 1:]
                       for row in self.data], cols=self.cols)

    def hstack(self, other):
        if other.rows != self.rows:
            raise ValueError("row mismatch in hstack")
        return Matrix([self.data[i] + other.data[i] for i in range(self.rows)],
                      cols=self.cols + other.cols)

    # -- algebra -----------------------------------------------------------

    def __matmul__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        ot = other.transpose().data
        return Matrix([[_dot(row, col) for col in ot] for row in self.data],
                      cols=other.cols)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.data == other.data

    def __hash__(self):
        return hash((self.rows, self.cols, self.data))

    def close_to(self, other, tol=None) -> bool:
        if self.shape != other.shape:
            return False
        tol = DEFAULT_TOL if tol is None else tol
        return all(abs(complex(a) - complex(b)) <= tol
                   for ra, rb in zip(self.data, other.data)
                   for a, b in zip(ra, rb))

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols})"


def _dot(u, v):
    acc = None
    for a, b in zip(u, v):
        term = a * b
        acc = term if acc is None else acc + term
    if acc is None:
        return 0j
    return acc


def _zero_like(x):
    return QQi(0) if isinstance(x, QQi) else 0j


def _one_like(x):
    return QQi(1) if isinstance(x, QQi) else 1 + 0j


def rref(m: Matrix, tol=None):
    """Reduced row-echelon form and rank.

    Canonical under left multiplication by invertible matrices: pivots are
    normalized to 1, whole pivot columns are cleared and eliminated entries
    snapped to exact zero.  The float backend pivots on the largest modulus
    in the column (ties to the lowest row) and treats entries below
    ``tol * max_abs(m)`` as zero.
    """
    tol = DEFAULT_TOL if tol is None else tol
    nr, nc = m.rows, m.cols
    if nr == 0 or nc == 0:
        return m, 0
    exact = m.is_exact
    rows = [list(r) for r in m.data]
    threshold = 0.0
    if not exact:
        scale = m.max_abs()
        threshold = tol * (scale if scale > 0 else 1.0)
    zero = _zero_like(rows[0][0])
    r = 0
    for c in range(nc):
        if r >= nr:
            break
        piv = -1
        if exact:
            for i in range(r, nr):
                if rows[i][c]:
                    piv = i
                    break
        else:
            best = threshold
            for i in range(r, nr):
                a = abs(rows[i][c])
                if a > best:
                    best = a
                    piv = i
        if piv < 0:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][c]
        row_r = [x / inv for x in rows[r]]
        row_r[c] = _one_like(inv)
        rows[r] = row_r
        for i in range(nr):
            if i == r:
                continue
            f = rows[i][c]
            if exact and not f:
                continue
            if not exact and f == 0:
                continue
            rows[i] = [x - f * y for x, y in zip(rows[i], row_r)]
            rows[i][c] = zero
        r += 1
    return Matrix(rows, cols=nc), r


def rank(m: Matrix, tol=None) -> int:
    return rref(m, tol)[1]


def column_echelon(m: Matrix, tol=None):
    """Reduced column-echelon form and rank (canonical for right GL action)."""
    red, r = rref(m.transpose(), tol)
    return red.transpose(), r


@dataclass(frozen=True)
class Subspace:
    """Linear subspace stored through its reduced column-echelon basis.

    Canonical: two subspaces coincide as point sets iff their stored bases
    are entry-wise equal.
    """

    ambient_dim: int
    basis: Matrix
    dim: int

    @classmethod
    def span_of(cls, m: Matrix, tol=None) -> "Subspace":
        ce, r = column_echelon(m, tol)
        basis = Matrix.from_cols([ce.col(j) for j in range(r)], rows=m.rows)
        return cls(m.rows, basis, r)

    def pivot_rows(self):
        pivots = []
        for j in range(self.dim):
            col = self.basis.col(j)
            pivots.append(next(i for i, x in enumerate(col)
                               if not scalar_is_zero(x, 1.0)))
        return pivots

    def close_to(self, other: "Subspace", tol=None) -> bool:
        return (self.ambient_dim == other.ambient_dim and self.dim == other.dim
                and self.basis.close_to(other.basis, tol))


def span_coords(m: Matrix, tol=None):
    """Canonical basis of the column span plus coordinates of each column.

    The basis is in reduced column-echelon form, so its pivot rows carry an
    identity block and the coordinate matrix is just ``m`` restricted to
    those rows; ``basis @ coords`` reproduces ``m``.
    """
    sub = Subspace.span_of(m, tol)
    pivots = sub.pivot_rows()
    coords = Matrix([m.data[p] for p in pivots], cols=m.cols)
    return sub, coords


def complement_completion(s: Subspace, tol=None):
    """Indices of standard basis vectors completing ``s`` greedily in order."""
    n = s.ambient_dim
    ech = EchelonBasis(n, exact=s.basis.is_exact or s.dim == 0, tol=tol)
    exact = s.basis.is_exact
    for j in range(s.dim):
        ech.insert(list(s.basis.col(j)))
    chosen = []
    one = QQi(1) if exact else 1 + 0j
    zero = QQi(0) if exact else 0j
    for i in range(n):
        if ech.rank == n:
            break
        e = [zero] * n
        e[i] = one
        if ech.insert(e):
            chosen.append(i)
    return chosen


def quotient_coords(m: Matrix, s: Subspace, tol=None) -> Matrix:
    """Coordinates of the columns of ``m`` in the quotient by ``s``.

    The quotient is identified with the span of a deterministic complement:
    the basis of ``s`` completed by standard vectors chosen greedily in
    index order.  Columns of ``m`` inside ``s`` map to zero columns.
    """
    if s.ambient_dim != m.rows:
        raise ValueError(
            f"ambient dimension mismatch: subspace {s.ambient_dim}, matrix {m.rows}")
    n = m.rows
    r = s.dim
    if r == 0:
        return m
    if r == n:
        return Matrix([], cols=m.cols)
    exact = m.is_exact if m.cols else s.basis.is_exact
    chosen = complement_completion(s, tol)
    one = QQi(1) if exact else 1 + 0j
    zero = QQi(0) if exact else 0j
    comp_cols = []
    for i in chosen:
        e = [zero] * n
        e[i] = one
        comp_cols.append(e)
    full = Matrix.from_cols([s.basis.col(j) for j in range(r)] + comp_cols,
                            rows=n)
    solved, rk = rref(full.hstack(m), tol)
    if rk < n:
        raise ValueError("complement completion failed (non-invertible basis)")
    return Matrix([solved.data[i][n:] for i in range(r, n)], cols=m.cols)


def nullspace(m: Matrix, tol=None) -> Matrix:
    """Basis of the right kernel, one column per free variable."""
    red, r = rref(m, tol)
    nc = m.cols
    pivots = []
    j = 0
    for i in range(r):
        while j < nc and scalar_is_zero(red.data[i][j], 1.0, tol):
            j += 1
        pivots.append(j)
        j += 1
    free = [j for j in range(nc) if j not in pivots]
    exact = m.is_exact
    one = QQi(1) if exact else 1 + 0j
    zero = QQi(0) if exact else 0j
    cols = []
    for f in free:
        v = [zero] * nc
        v[f] = one
        for i, p in enumerate(pivots):
            v[p] = -red.data[i][f]
        cols.append(v)
    return Matrix.from_cols(cols, rows=nc)


def intersect(s1: Subspace, s2: Subspace, tol=None) -> Subspace:
    """Intersection of two subspaces of a common ambient space."""
    if s1.ambient_dim != s2.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    if s1.dim == 0 or s2.dim == 0:
        empty = Matrix.from_cols([], rows=s1.ambient_dim)
        return Subspace(s1.ambient_dim, empty, 0)
    stacked = s1.basis.hstack(s2.basis)
    null = nullspace(stacked, tol)
    if null.cols == 0:
        empty = Matrix.from_cols([], rows=s1.ambient_dim)
        return Subspace(s1.ambient_dim, empty, 0)
    first = Matrix([null.data[i] for i in range(s1.dim)], cols=null.cols)
    vectors = s1.basis @ first
    return Subspace.span_of(vectors, tol)


def inverse(m: Matrix, tol=None) -> Matrix:
    if m.rows != m.cols:
        raise ValueError("inverse of a non-square matrix")
    n = m.rows
    if rank(m, tol) < n:
        raise ValueError("matrix is singular")
    solved, _ = rref(m.hstack(Matrix.identity(n, exact=m.is_exact)), tol)
    return Matrix([row[n:] for row in solved.data], cols=n)


class EchelonBasis:
    """Mutable reduced echelon basis for incremental rank and reduction.

    Stored vectors are normalized to pivot 1 and mutually reduced, so the
    coordinates of any vector in the span can be read off at the pivot
    positions.  Zero tests are absolute against ``tol``; callers working
    with floats should feed vectors of roughly unit scale.
    """

    __slots__ = ("dim", "vecs", "pivots", "exact", "tol")

    def __init__(self, dim, exact=False, tol=None):
        self.dim = dim
        self.vecs = []
        self.pivots = []
        self.exact = exact
        self.tol = DEFAULT_TOL if tol is None else tol

    def copy(self):
        dup = EchelonBasis(self.dim, self.exact, self.tol)
        dup.vecs = [list(v) for v in self.vecs]
        dup.pivots = list(self.pivots)
        return dup

    @property
    def rank(self):
        return len(self.vecs)

    def reduce(self, vec):
        """Residue of ``vec`` after subtracting its span component."""
        w = list(vec)
        for p, b in zip(self.pivots, self.vecs):
            c = w[p]
            if (self.exact and not c) or (not self.exact and c == 0):
                continue
            w = [wx - c * bx for wx, bx in zip(w, b)]
            w[p] = QQi(0) if self.exact else 0j
        return w

    def _pivot_of(self, w):
        if self.exact:
            for i, x in enumerate(w):
                if x:
                    return i
            return -1
        best, piv = self.tol, -1
        for i, x in enumerate(w):
            a = abs(x)
            if a > best:
                best, piv = a, i
        return piv

    def insert(self, vec) -> bool:
        """Insert a vector; returns True iff it enlarged the span."""
        w = self.reduce(vec)
        p = self._pivot_of(w)
        if p < 0:
            return False
        inv = w[p]
        w = [x / inv for x in w]
        w[p] = QQi(1) if self.exact else 1 + 0j
        for i, b in enumerate(self.vecs):
            c = b[p]
            if (self.exact and not c) or (not self.exact and c == 0):
                continue
            nb = [bx - c * wx for bx, wx in zip(b, w)]
            nb[p] = QQi(0) if self.exact else 0j
            self.vecs[i] = nb
        self.vecs.append(w)
        self.pivots.append(p)
        return True
