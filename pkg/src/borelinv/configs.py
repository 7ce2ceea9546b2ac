"""Configurations of spanning vector tuples and their chain complex.

A configuration is the orbit of a spanning ``(k+1)``-tuple of vectors in
``C^m`` under the simultaneous action of the invertible matrices.  The
reduced row-echelon form of the ``m x (k+1)`` matrix of the tuple is a
complete orbit invariant, so configurations compare by matrix equality
(entry-wise within a tolerance on the float backend).

Two families of face maps act on configurations: ``epsilon`` drops a vector
and re-reads the rest inside their span, ``eta`` drops a vector and passes
to the quotient by its line.  Their alternating sums give boundary
operators whose difference ``D`` squares to zero; the signed tetrahedron
volume, read on 4-tuples in ``C^2``, is a cocycle for ``D``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .linalg import Matrix, Subspace, quotient_coords, rref, scalar_is_zero, span_coords
from .volume import ProjPoint, ideal_volume

CONFIG_TOL = 1e-9


@dataclass(frozen=True)
class Config:
    """Orbit of a spanning vector tuple, stored in reduced row-echelon form.

    ``m`` is the ambient dimension, ``k+1`` the tuple length; zero columns
    are allowed.  Build through :func:`make_config`.
    """

    m: int
    k: int
    vectors: Matrix

    def column_point(self, j) -> ProjPoint:
        """Column ``j`` as a projective point (only meaningful for m = 2)."""
        a, b = self.vectors.col(j)
        return ProjPoint(a, b)

    def column_is_zero(self, j, tol=CONFIG_TOL) -> bool:
        return all(scalar_is_zero(x, 1.0, tol) for x in self.vectors.col(j))

    def permuted(self, perm) -> "Config":
        cols = self.vectors.columns()
        return make_config(Matrix.from_cols([cols[p] for p in perm],
                                            rows=self.m))

    @property
    def is_exact(self) -> bool:
        return self.vectors.is_exact


def make_config(raw: Matrix, tol=None) -> Config:
    """Canonical configuration of the columns of ``raw``.

    The columns must span the ambient space; pass non-spanning tuples
    through :func:`span_coords` first.
    """
    canonical, r = rref(raw, tol)
    if r < raw.rows:
        raise ValueError(
            f"columns span a {r}-dimensional subspace of C^{raw.rows}, not all of it")
    return Config(raw.rows, raw.cols - 1, canonical)


def configs_close(c1: Config, c2: Config, tol=CONFIG_TOL) -> bool:
    """Orbit equality: exact on the exact backend, entry-wise within ``tol``."""
    if c1.m != c2.m or c1.k != c2.k:
        return False
    if c1.is_exact and c2.is_exact:
        return c1.vectors == c2.vectors
    return c1.vectors.close_to(c2.vectors, tol)


def face_epsilon(c: Config, i: int, tol=None) -> Config:
    """Drop vector ``i`` and re-express the rest inside their span."""
    if not 0 <= i <= c.k:
        raise IndexError(f"face index {i} out of range 0..{c.k}")
    rest = c.vectors.drop_col(i)
    _, coords = span_coords(rest, tol)
    return make_config(coords, tol)


def face_eta(c: Config, i: int, tol=None) -> Config:
    """Drop vector ``i`` and pass to the quotient by its line."""
    if not 0 <= i <= c.k:
        raise IndexError(f"face index {i} out of range 0..{c.k}")
    line = Subspace.span_of(Matrix.from_cols([c.vectors.col(i)], rows=c.m), tol)
    rest = c.vectors.drop_col(i)
    return make_config(quotient_coords(rest, line, tol), tol)


class Chain:
    """Integer combination of configurations with eagerly collected terms."""

    __slots__ = ("terms",)

    def __init__(self, terms=()):
        self.terms = []
        for coeff, cfg in terms:
            self.add(coeff, cfg)

    def add(self, coeff: int, cfg: Config, tol=CONFIG_TOL):
        if coeff == 0:
            return
        for idx, (c0, cfg0) in enumerate(self.terms):
            if configs_close(cfg0, cfg, tol):
                total = c0 + coeff
                if total == 0:
                    del self.terms[idx]
                else:
                    self.terms[idx] = (total, cfg0)
                return
        self.terms.append((coeff, cfg))

    def extend(self, other: "Chain", sign=1, tol=CONFIG_TOL):
        for coeff, cfg in other.terms:
            self.add(sign * coeff, cfg, tol)

    def __iter__(self):
        return iter(self.terms)

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"Chain({len(self.terms)} terms)"


def chains_close(a: Chain, b: Chain, tol=CONFIG_TOL) -> bool:
    diff = Chain(a.terms)
    diff.extend(b, sign=-1, tol=tol)
    return not diff


BOUNDARY_KINDS = ("epsilon", "eta", "D")


def boundary(c: Config, kind: str = "D", tol=None) -> Chain:
    """Signed face sum: ``epsilon``-boundary, ``eta``-boundary or their
    difference ``D``."""
    if kind not in BOUNDARY_KINDS:
        raise ValueError(f"unknown boundary kind {kind!r}")
    if c.k < 1:
        raise ValueError("boundary needs tuples of length at least 2")
    out = Chain()
    for i in range(c.k + 1):
        sign = -1 if i % 2 else 1
        if kind in ("epsilon", "D"):
            out.add(sign, face_epsilon(c, i, tol))
        if kind in ("eta", "D"):
            out.add(-sign if kind == "D" else sign, face_eta(c, i, tol))
    return out


def boundary_chain(ch: Chain, kind: str = "D", tol=None) -> Chain:
    out = Chain()
    for coeff, cfg in ch:
        out.extend(boundary(cfg, kind, tol), sign=coeff)
    return out


def vol3(c: Config, tol=CONFIG_TOL) -> float:
    """Signed tetrahedron volume of a 4-vector configuration.

    Zero outside ambient dimension 2 and whenever a vector vanishes;
    otherwise the ideal volume of the four projectivized columns.
    Alternating in the columns.
    """
    if c.k != 3:
        raise ValueError("vol3 expects 4-vector configurations")
    if c.m != 2:
        return 0.0
    points = []
    for j in range(4):
        if c.column_is_zero(j, tol):
            return 0.0
        points.append(c.column_point(j))
    return ideal_volume(*points)


def eval_chain(f, ch: Chain) -> float:
    """Pair a configuration function with a chain: sum of coeff * f(config)."""
    lengths = {cfg.k for _, cfg in ch}
    if len(lengths) > 1:
        raise ValueError(f"mixed tuple lengths in chain: {sorted(lengths)}")
    return sum(coeff * f(cfg) for coeff, cfg in ch)


def compositions(k: int, n: int) -> int:
    """Number of k-tuples of nonnegative integers with sum n."""
    if k < 1:
        raise ValueError("need at least one part")
    if n < 0:
        raise ValueError("negative total")
    return math.comb(n + k - 1, k - 1)
