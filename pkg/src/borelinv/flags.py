"""Complete flags and the volume cocycle on flag quadruples.

A flag is stored through an adapted basis: column ``j`` of the matrix
spans step ``j+1`` of the flag over step ``j``, so the columns double as
an affine lift.  The cocycle ``borel_bn`` sums signed tetrahedron volumes
of the two-dimensional quotient configurations cut out by all level
multi-indices; it only depends on the underlying flags, is invariant under
the invertible matrices, alternating, and bounded by
``n(n^2-1)/6 * V3``.

For ambient dimension 3 an independent projective evaluation is provided:
a flag is a point on a line in the projective plane, and the cocycle can
be recomputed from pairwise intersections (``b3_projective_oracle``),
which serves as a cross-check of the quotient-sum definition.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import partial
from itertools import combinations
from math import gcd as math_gcd

from .linalg import (EchelonBasis, Matrix, QQi, Subspace, intersect, inverse,
                     nullspace, quotient_coords, rank, scalar_is_zero,
                     span_coords)
from .configs import Chain, Config, make_config
from .volume import REGULAR_CROSS_RATIO, ProjPoint, dilog_bw, ideal_volume

#: Tolerance for rank and genericity decisions on float flags.
FLAG_TOL = 1e-9


class Flag:
    """Complete flag in C^n through an adapted invertible basis.

    Step ``j`` of the flag is the span of the first ``j`` columns.  Flags
    compare through their steps, not through the adapted matrices.
    """

    __slots__ = ("n", "adapted", "_steps")

    def __init__(self, adapted: Matrix, tol=None):
        if adapted.rows != adapted.cols:
            raise ValueError("adapted basis must be square")
        if rank(adapted, tol) < adapted.rows:
            raise ValueError("rank-deficient adapted basis")
        self.n = adapted.rows
        self.adapted = adapted
        self._steps = {}

    def subspace(self, j) -> Subspace:
        """Step ``j`` of the flag, 0 <= j <= n."""
        if not 0 <= j <= self.n:
            raise IndexError(f"flag step {j} out of range 0..{self.n}")
        cached = self._steps.get(j)
        if cached is None:
            cols = [self.adapted.col(t) for t in range(j)]
            cached = Subspace.span_of(Matrix.from_cols(cols, rows=self.n))
            self._steps[j] = cached
        return cached

    def line(self) -> Subspace:
        return self.subspace(1)

    @property
    def is_exact(self) -> bool:
        return self.adapted.is_exact

    def to_float(self) -> "Flag":
        return Flag(self.adapted.to_float())

    def apply(self, g: Matrix) -> "Flag":
        return Flag(g @ self.adapted)

    def rescale_lift(self, factors) -> "Flag":
        """Same flag with columns rescaled by nonzero factors (new lift)."""
        m = self.adapted
        for j, f in enumerate(factors):
            m = m.scale_col(j, f)
        return Flag(m)

    def __repr__(self):
        return f"Flag(n={self.n})"


def flags_equal(f1: Flag, f2: Flag, tol=FLAG_TOL) -> bool:
    """Equality as flags: all steps coincide (canonical bases within tol)."""
    if f1.n != f2.n:
        return False
    if f1.is_exact and f2.is_exact:
        return all(f1.subspace(j) == f2.subspace(j) for j in range(1, f1.n))
    return all(f1.subspace(j).close_to(f2.subspace(j), tol)
               for j in range(1, f1.n))


def standard_descending(n, exact=False) -> Flag:
    """The flag <e1> < <e1,e2> < ..."""
    return Flag(Matrix.identity(n, exact))


def standard_ascending(n, exact=False) -> Flag:
    """The flag <e_n> < <e_n, e_{n-1}> < ..."""
    ident = Matrix.identity(n, exact)
    return Flag(Matrix.from_cols([ident.col(n - 1 - j) for j in range(n)]))


def _check_quad(quad):
    flags = list(quad)
    if len(flags) != 4:
        raise ValueError(f"need exactly four flags, got {len(flags)}")
    n = flags[0].n
    if any(f.n != n for f in flags):
        raise ValueError("flags have mismatched ambient dimensions")
    return flags, n


def _lift_columns(flags, exact):
    """Adapted columns as plain lists; float columns scaled to unit max-abs.

    Rescaling a column replaces the affine lift and leaves every projective
    quantity downstream unchanged, so the float path normalizes for
    scale-free zero tests.
    """
    out = []
    for f in flags:
        cols = []
        for j in range(f.n):
            v = list(f.adapted.col(j))
            if not exact:
                v = [complex(x) for x in v]
                s = max(abs(x) for x in v)
                v = [x / s for x in v]
            cols.append(v)
        out.append(cols)
    return out


# -- exact fast path over Gaussian integers ---------------------------------
#
# Every vector in the level-sum computation is only needed up to a nonzero
# scalar, so the exact backend clears denominators once and eliminates by
# cross-multiplication, never leaving Gaussian integers.  Content gcds keep
# the entries small; no Fraction normalization happens in the loop.


def _int_columns(flags):
    out = []
    for f in flags:
        cols = []
        for j in range(f.n):
            col = f.adapted.col(j)
            denom = 1
            for x in col:
                denom = denom * x.re.denominator // math_gcd(denom, x.re.denominator)
                denom = denom * x.im.denominator // math_gcd(denom, x.im.denominator)
            vec = [(int(x.re * denom), int(x.im * denom)) for x in col]
            cols.append(_int_primitive(vec))
        out.append(cols)
    return out


def _int_primitive(vec):
    g = 0
    for re, im in vec:
        g = math_gcd(g, re)
        g = math_gcd(g, im)
    if g > 1:
        return [(re // g, im // g) for re, im in vec]
    return vec


class _IntEchelon:
    """Triangular echelon basis over Gaussian integers, division free.

    Each inserted vector is reduced against the earlier ones by
    cross-multiplication, which only rescales it; pivots stay integral and
    no entry is ever divided.  The basis is triangular (later vectors
    vanish at earlier pivots), which is enough both to test membership and
    to back-substitute coordinates.
    """

    __slots__ = ("vecs", "pivots")

    def __init__(self):
        self.vecs = []
        self.pivots = []

    def copy(self):
        dup = _IntEchelon.__new__(_IntEchelon)
        dup.vecs = list(self.vecs)
        dup.pivots = list(self.pivots)
        return dup

    def reduce(self, w):
        for p, b in zip(self.pivots, self.vecs):
            wr, wi = w[p]
            if wr == 0 and wi == 0:
                continue
            br, bi = b[p]
            out = []
            for (xr, xi), (yr, yi) in zip(w, b):
                out.append((br * xr - bi * xi - wr * yr + wi * yi,
                            br * xi + bi * xr - wr * yi - wi * yr))
            out[p] = (0, 0)
            w = _int_primitive(out)
        return w

    def insert(self, w):
        w = self.reduce(w)
        for i, (re, im) in enumerate(w):
            if re or im:
                self.vecs.append(w)
                self.pivots.append(i)
                return True
        return False


def _int_quotient_volume(den: _IntEchelon, step_vectors) -> float:
    residues = [den.reduce(v) for v in step_vectors]
    quot = _IntEchelon()
    for r in residues:
        quot.insert(r)
    if len(quot.pivots) != 2:
        return 0.0
    p1, p2 = quot.pivots
    b1, b2 = quot.vecs
    points = []
    for r in residues:
        if not any(re or im for re, im in r):
            return 0.0
        # r = alpha b1 + beta b2 with b2[p1] = 0; back-substitution gives
        # (alpha : beta) = (r[p1] b2[p2] : r[p2] b1[p1] - r[p1] b1[p2])
        a = _gmul(r[p1], b2[p2])
        b = _gsub(_gmul(r[p2], b1[p1]), _gmul(r[p1], b1[p2]))
        points.append((a, b))
    return _int_ideal_volume(points)


def _gmul(x, y):
    return (x[0] * y[0] - x[1] * y[1], x[0] * y[1] + x[1] * y[0])


def _gsub(x, y):
    return (x[0] - y[0], x[1] - y[1])


def _int_ideal_volume(points) -> float:
    def det(p, q):
        (ar, ai), (br, bi) = p
        (cr, ci), (dr, di) = q
        return (ar * dr - ai * di - br * cr + bi * ci,
                ar * di + ai * dr - br * ci - bi * cr)

    n02, n13 = det(points[0], points[2]), det(points[1], points[3])
    n03, n12 = det(points[0], points[3]), det(points[1], points[2])
    numr = (n02[0] * n13[0] - n02[1] * n13[1], n02[0] * n13[1] + n02[1] * n13[0])
    denr = (n03[0] * n12[0] - n03[1] * n12[1], n03[0] * n12[1] + n03[1] * n12[0])
    if denr == (0, 0):
        return 0.0
    mod2 = denr[0] * denr[0] + denr[1] * denr[1]
    zre = Fraction(numr[0] * denr[0] + numr[1] * denr[1], mod2)
    zim = Fraction(numr[1] * denr[0] - numr[0] * denr[1], mod2)
    if zim == 0:
        return 0.0
    return dilog_bw(complex(float(zre), float(zim)))


def borel_bn(quad, tol=None) -> float:
    """Volume cocycle on a flag quadruple.

    Sums the signed tetrahedron volume of the projectivized step vectors
    inside every two-dimensional quotient
    ``<F_0^{j_0+1},..,F_3^{j_3+1}> / <F_0^{j_0},..,F_3^{j_3}>``,
    over level multi-indices ``0 <= j_i <= n-2`` in lexicographic order
    (higher levels only produce quotients of dimension < 2).  Depends only
    on the flags, not on the adapted bases.
    """
    flags, n = _check_quad(quad)
    tol = FLAG_TOL if tol is None else tol
    exact = all(f.is_exact for f in flags)
    if exact:
        cols = _int_columns(flags)
        empty = _IntEchelon()
        summand = _int_quotient_volume
    else:
        cols = _lift_columns(flags, exact)
        empty = EchelonBasis(n, exact, tol)
        summand = partial(_quotient_volume, exact=exact, tol=tol)

    total = 0.0
    e0 = empty
    for j0 in range(n - 1):
        if j0:
            e0.insert(cols[0][j0 - 1])
        e1 = e0.copy()
        for j1 in range(n - 1):
            if j1:
                e1.insert(cols[1][j1 - 1])
            e2 = e1.copy()
            for j2 in range(n - 1):
                if j2:
                    e2.insert(cols[2][j2 - 1])
                e3 = e2.copy()
                for j3 in range(n - 1):
                    if j3:
                        e3.insert(cols[3][j3 - 1])
                    total += summand(
                        e3,
                        (cols[0][j0], cols[1][j1], cols[2][j2], cols[3][j3]))
    return total


def _quotient_volume(den: EchelonBasis, step_vectors, exact=False,
                     tol=FLAG_TOL) -> float:
    """Volume contribution of one level multi-index.

    ``den`` spans the denominator; the step vectors are reduced modulo it
    and read in the residual quotient.  Only two-dimensional quotients with
    four nonvanishing images contribute.
    """
    residues = [den.reduce(v) for v in step_vectors]
    quot = EchelonBasis(den.dim, exact, tol)
    for r in residues:
        if exact:
            quot.insert(r)
            continue
        # dead vectors are judged at ambient scale, surviving ones are
        # rebalanced so pivoting inside the quotient stays accurate
        top = max(abs(x) for x in r)
        if top > tol:
            quot.insert([x / top for x in r])
    if quot.rank != 2:
        return 0.0
    p1, p2 = quot.pivots
    points = []
    for r in residues:
        a, b = r[p1], r[p2]
        if exact:
            if (not a) and (not b):
                return 0.0
        elif abs(a) <= tol and abs(b) <= tol:
            return 0.0
        points.append(ProjPoint(a, b))
    return ideal_volume(*points)


def t_multi(flags, levels, tol=None) -> Config:
    """Quotient configuration of a flag tuple at one level multi-index.

    Returns the configuration of the step vectors
    ``v_i^{j_i+1}`` inside ``<F_i^{j_i+1}> / <F_i^{j_i}>``.
    """
    flags = list(flags)
    n = flags[0].n
    levels = list(levels)
    if len(levels) != len(flags):
        raise ValueError("one level per flag required")
    if any(not 0 <= j <= n - 1 for j in levels):
        raise ValueError(f"levels must lie in 0..{n - 1}")
    den_cols = []
    for f, j in zip(flags, levels):
        den_cols.extend(f.adapted.col(t) for t in range(j))
    den = Subspace.span_of(Matrix.from_cols(den_cols, rows=n), tol)
    steps = Matrix.from_cols([f.adapted.col(j) for f, j in zip(flags, levels)],
                             rows=n)
    images = quotient_coords(steps, den, tol)
    _, coords = span_coords(images, tol)
    return make_config(coords, tol)


def big_t(flags, tol=None) -> Chain:
    """Sum of quotient configurations over all level multi-indices.

    Applied to a ``(k+1)``-tuple of flags this is a chain of ``n^(k+1)``
    terms before like-term collection; together with the face boundaries it
    intertwines the tuple boundary with the configuration boundary ``D``
    (exactly for odd ``k``, up to ``n^k`` copies of the empty-space
    configuration for even ``k``).
    """
    flags = list(flags)
    n = flags[0].n
    if any(f.n != n for f in flags):
        raise ValueError("flags have mismatched ambient dimensions")
    ch = Chain()
    for levels in itertools.product(range(n), repeat=len(flags)):
        ch.add(1, t_multi(flags, levels, tol))
    return ch


def tuple_faces(flags):
    """Signed faces of a flag tuple: drop each entry in turn."""
    flags = list(flags)
    return [((-1) ** i, flags[:i] + flags[i + 1:]) for i in range(len(flags))]


# ---------------------------------------------------------------------------
# projective evaluation for n = 3


def annihilator_flag(f: Flag, tol=None) -> Flag:
    """Incidence-dual flag: step ``j`` is the annihilator of step ``n-j``.

    Dualizing twice gives back the original flag.  The quadruple cocycle is
    not invariant under this operation; it exchanges the level-sum and the
    point-on-line evaluations.
    """
    n = f.n
    ech = EchelonBasis(n, f.is_exact, tol)
    cols = []
    for j in range(1, n + 1):
        step = f.subspace(n - j)
        ann = nullspace(step.basis.transpose(), tol) if step.dim else \
            Matrix.identity(n, f.is_exact)
        for t in range(ann.cols):
            if len(cols) == j:
                break
            c = list(ann.col(t))
            if ech.insert(c):
                cols.append(c)
        if len(cols) != j:
            raise ValueError("annihilator chain degenerated")
    return Flag(Matrix.from_cols(cols, rows=n))


def _point_in_line_coords(x: Subspace, line: Subspace) -> ProjPoint:
    # line is 2-dim in reduced column-echelon form: coordinates of a vector
    # of the line are its values at the pivot rows
    p1, p2 = line.pivot_rows()
    col = x.basis.col(0)
    return ProjPoint(col[p1], col[p2])


def _flag_point_on_line(flag: Flag, line: Subspace, tol) -> Subspace:
    """Intersection of a projective flag with a projective line.

    The flag's own line is returned when the planes coincide, otherwise the
    planes meet in a single point.
    """
    plane = flag.subspace(2)
    if _subspaces_match(plane, line, flag.is_exact and line.basis.is_exact, tol):
        return flag.subspace(1)
    return intersect(plane, line, tol)


def _subspaces_match(s1, s2, exact, tol):
    if exact:
        return s1 == s2
    return s1.close_to(s2, tol)


def _volume_on_line(flags, line: Subspace, tol) -> float:
    points = []
    for f in flags:
        x = _flag_point_on_line(f, line, tol)
        points.append(_point_in_line_coords(x, line))
    return ideal_volume(*points)


def default_auxiliary_line(common: Subspace, tol=None) -> Subspace:
    """First coordinate plane <e_i, e_j> not containing the given point."""
    n = common.ambient_dim
    exact = common.basis.is_exact
    ident = Matrix.identity(n, exact)
    for i, j in combinations(range(n), 2):
        cand = Matrix.from_cols([ident.col(i), ident.col(j)], rows=n)
        if rank(cand.hstack(common.basis), tol) == 3:
            return Subspace.span_of(cand, tol)
    raise ValueError("no coordinate plane avoids the common point")


def b3_projective_oracle(quad, aux_line: Subspace = None, tol=None) -> float:
    """Point-on-line evaluation of the cocycle for ambient dimension 3.

    Each flag of the projective plane is a point on a projective line.  If
    two of the four lines coincide, the four flag-line intersections are
    read on that line; if the four lines pass through a common point, they
    are read on an auxiliary line missing that point (the value does not
    depend on the choice); otherwise the four per-line volumes are summed.

    The case split is applied to the incidence-dual flags: evaluated on the
    flags themselves it computes the cocycle of the duals, and conjugating
    by duality realigns it with the level-sum definition, so this is an
    independent route to the same function.  ``aux_line`` lives in the dual
    plane.
    """
    flags, n = _check_quad(quad)
    if n != 3:
        raise ValueError("projective oracle is specific to ambient dimension 3")
    tol = FLAG_TOL if tol is None else tol
    flags = [annihilator_flag(f, tol) for f in flags]
    exact = all(f.is_exact for f in flags)
    planes = [f.subspace(2) for f in flags]

    for i, j in combinations(range(4), 2):
        if _subspaces_match(planes[i], planes[j], exact, tol):
            return _volume_on_line(flags, planes[i], tol)

    common = planes[0]
    for p in planes[1:]:
        common = intersect(common, p, tol)
    if common.dim == 1:
        line = default_auxiliary_line(common, tol) if aux_line is None else aux_line
        if rank(line.basis.hstack(common.basis), tol) != 3:
            raise ValueError("auxiliary line contains the common point")
        points = [_point_in_line_coords(intersect(p, line, tol), line)
                  for p in planes]
        return ideal_volume(*points)

    return sum(_volume_on_line(flags, planes[i], tol) for i in range(4))


# ---------------------------------------------------------------------------
# genericity and maximal completion


def genericity_report(quad, tol=None) -> dict:
    """Exhaustive general-position check over all admissible level tuples.

    Exact-backend flags get a certified answer; float flags are decided
    with the given tolerance and flagged as non-exact.
    """
    flags, n = _check_quad(quad)
    tol = FLAG_TOL if tol is None else tol
    exact = all(f.is_exact for f in flags)
    cols = _lift_columns(flags, exact)

    def result(violation):
        return {"general_position": violation is None,
                "exact": exact,
                "violation": violation}

    e0 = EchelonBasis(n, exact, tol)
    for j0 in range(n + 1):
        if j0:
            e0.insert(cols[0][j0 - 1])
            if e0.rank != j0:
                return result((j0, 0, 0, 0))
        e1 = e0.copy()
        for j1 in range(n + 1 - j0):
            if j1:
                e1.insert(cols[1][j1 - 1])
                if e1.rank != j0 + j1:
                    return result((j0, j1, 0, 0))
            e2 = e1.copy()
            for j2 in range(n + 1 - j0 - j1):
                if j2:
                    e2.insert(cols[2][j2 - 1])
                    if e2.rank != j0 + j1 + j2:
                        return result((j0, j1, j2, 0))
                e3 = e2.copy()
                for j3 in range(1, n + 1 - j0 - j1 - j2):
                    e3.insert(cols[3][j3 - 1])
                    if e3.rank != j0 + j1 + j2 + j3:
                        return result((j0, j1, j2, j3))
    return result(None)


def is_general_position(quad, tol=None) -> bool:
    return genericity_report(quad, tol)["general_position"]


def _triple_rank_check(f0: Flag, f1: Flag, line: Subspace, tol) -> None:
    """Genericity of a (flag, flag, line) triple; raises naming the failure."""
    n = f0.n
    for j0 in range(n + 1):
        for j1 in range(n + 1):
            cols = ([f0.adapted.col(t) for t in range(j0)]
                    + [f1.adapted.col(t) for t in range(j1)])
            joint = Matrix.from_cols(cols, rows=n)
            r = rank(joint, tol)
            want = min(j0 + j1, n)
            if r != want:
                raise ValueError(
                    f"non-generic triple: dim<F0^{j0},F1^{j1}> = {r}, expected {want}")
            r = rank(joint.hstack(line.basis), tol)
            want = min(j0 + j1 + 1, n)
            if r != want:
                raise ValueError(
                    f"non-generic triple: dim<F0^{j0},F1^{j1},L> = {r}, expected {want}")


def normalize_triple(f0: Flag, f1: Flag, line: Subspace, tol=None) -> Matrix:
    """Invertible ``g`` taking a generic (flag, flag, line) triple to the
    standard one.

    Standard form: descending flag <e1> < <e1,e2> < ..., ascending flag
    <e_n> < <e_n,e_{n-1}> < ..., and the line of ``(1,...,1)``.
    """
    if f0.n != f1.n or line.ambient_dim != f0.n or line.dim != 1:
        raise ValueError("need two flags and a line in a common ambient space")
    n = f0.n
    tol = FLAG_TOL if tol is None else tol
    _triple_rank_check(f0, f1, line, tol)

    basis_cols = []
    for j in range(1, n + 1):
        meet = intersect(f0.subspace(j), f1.subspace(n - j + 1), tol)
        if meet.dim != 1:
            raise ValueError(
                f"non-generic triple: F0^{j} and F1^{n - j + 1} do not meet in a line")
        basis_cols.append(meet.basis.col(0))
    g1 = inverse(Matrix.from_cols(basis_cols, rows=n), tol)
    v = (g1 @ line.basis).col(0)
    vscale = max(abs(x) for x in v)
    exact = isinstance(v[0], QQi)
    rows = []
    for i in range(n):
        if scalar_is_zero(v[i], vscale, tol):
            raise ValueError(
                f"non-generic triple: normalized line has zero coordinate {i}")
        one = QQi(1) if exact else 1 + 0j
        zero = QQi(0) if exact else 0j
        rows.append([one / v[i] if i == j else zero for j in range(n)])
    return Matrix(rows) @ g1


def maximal_completion(f0: Flag, f1: Flag, line2: Subspace, tol=None) -> Subspace:
    """The unique line completing a generic triple to a volume-maximizing
    quadruple.

    In the normalized picture the line is spanned by
    ``(w^{n-1}, ..., w, 1)`` with ``w`` the regular-tetrahedron
    cross-ratio; the result is pulled back through the normalizing map.
    """
    g = normalize_triple(f0, f1, line2, tol)
    n = f0.n
    w = REGULAR_CROSS_RATIO
    target = [w ** (n - 1 - i) for i in range(n)]
    ginv = inverse(g.to_float(), tol)
    col = ginv @ Matrix.from_cols([target], rows=n)
    return Subspace.span_of(col, tol)
