"""Canonical echelon forms, spans, quotients: exact and float backends."""

from fractions import Fraction

import numpy as np
import pytest

from borelinv.linalg import (EchelonBasis, Matrix, QQi, Subspace, inverse,
                             intersect, nullspace, quotient_coords, rank,
                             rref, span_coords)


def float_matrix(rng, rows, cols):
    arr = rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))
    return Matrix([[complex(x) for x in row] for row in arr])


def exact_matrix(rng, rows, cols, bound=9):
    re = rng.integers(-bound, bound + 1, (rows, cols))
    im = rng.integers(-bound, bound + 1, (rows, cols))
    return Matrix([[QQi(int(re[i, j]), int(im[i, j])) for j in range(cols)]
                   for i in range(rows)])


def random_invertible(rng, n):
    while True:
        g = float_matrix(rng, n, n)
        if rank(g) == n:
            return g


# -- QQi ---------------------------------------------------------------------

def test_qqi_arithmetic():
    a = QQi(Fraction(1, 2), Fraction(3, 4))
    b = QQi(2, -1)
    assert a + b == QQi(Fraction(5, 2), Fraction(-1, 4))
    assert a * b == QQi(Fraction(7, 4), Fraction(1, 1))
    assert (a / b) * b == a
    assert a ** 3 == a * a * a
    assert a ** 0 == QQi(1)
    assert complex(QQi(1, 2)) == 1 + 2j
    assert QQi(3) == 3
    assert bool(QQi(0, 0)) is False
    with pytest.raises(ZeroDivisionError):
        a / QQi(0)


def test_qqi_mixed_with_float_falls_back_to_complex():
    a = QQi(1, 1)
    assert a * 2.0 == 2 + 2j
    assert 1j * a == 1j * (1 + 1j)


# -- rref --------------------------------------------------------------------

def test_rref_identity_fixed_point():
    for exact in (False, True):
        ident = Matrix.identity(3, exact=exact)
        canonical, r = rref(ident)
        assert canonical == ident
        assert r == 3


def test_rref_proportional_rows():
    m = Matrix([[QQi(1), QQi(2)], [QQi(2), QQi(4)]])
    canonical, r = rref(m)
    assert r == 1
    assert canonical == Matrix([[QQi(1), QQi(2)], [QQi(0), QQi(0)]])


def test_rref_rank_of_product():
    rng = np.random.default_rng(21)
    for _ in range(20):
        a = float_matrix(rng, 4, 3)
        b = float_matrix(rng, 3, 6)
        assert rref(a @ b)[1] == 3
    for _ in range(10):
        a = exact_matrix(rng, 4, 3)
        b = exact_matrix(rng, 3, 6)
        if rank(a) == 3 and rank(b) == 3:
            assert rref(a @ b)[1] == 3


def test_rref_idempotent():
    rng = np.random.default_rng(22)
    for _ in range(20):
        m = float_matrix(rng, 3, 5)
        canonical, _ = rref(m)
        again, _ = rref(canonical)
        assert again.close_to(canonical, 1e-12)
    m = exact_matrix(rng, 3, 5)
    canonical, _ = rref(m)
    assert rref(canonical)[0] == canonical


def test_rref_invariant_under_left_multiplication():
    rng = np.random.default_rng(23)
    for _ in range(20):
        m = float_matrix(rng, 3, 5)
        g = random_invertible(rng, 3)
        assert rref(g @ m)[0].close_to(rref(m)[0], 1e-9)
    for _ in range(10):
        m = exact_matrix(rng, 3, 5)
        g = exact_matrix(rng, 3, 3)
        if rank(g) == 3:
            assert rref(g @ m)[0] == rref(m)[0]


def test_rank_edge_cases():
    assert rank(Matrix.zeros(3, 3)) == 0
    assert rank(Matrix([], cols=4)) == 0
    assert rank(Matrix.from_cols([], rows=4)) == 0
    m = Matrix.from_cols([(1 + 0j, 0j, 0j), (0j, 1 + 0j, 0j), (1 + 0j, 1 + 0j, 0j)])
    assert rank(m) == 2


def test_rank_respects_float_tolerance():
    m = Matrix.from_cols([(1 + 0j, 0j), (1 + 0j, 1e-14 + 0j)])
    assert rank(m, tol=1e-10) == 1
    assert rank(m, tol=1e-16) == 2


def test_rank_of_transpose():
    rng = np.random.default_rng(24)
    for _ in range(20):
        m = float_matrix(rng, 4, 6)
        assert rank(m) == rank(m.transpose())


# -- span and quotient -------------------------------------------------------

def test_span_coords_identity():
    ident = Matrix.identity(3)
    sub, coords = span_coords(ident)
    assert sub.dim == 3
    assert coords == ident


def test_span_coords_line():
    m = Matrix.from_cols([(1 + 0j, 1 + 0j, 0j), (2 + 0j, 2 + 0j, 0j)])
    sub, coords = span_coords(m)
    assert sub.dim == 1
    assert coords.shape == (1, 2)
    ratio = coords.entry(0, 1) / coords.entry(0, 0)
    assert abs(ratio - 2) < 1e-12


def test_span_coords_reconstruction():
    rng = np.random.default_rng(25)
    for _ in range(20):
        m = float_matrix(rng, 5, 7)
        sub, coords = span_coords(m)
        recon = sub.basis @ coords
        err = max(abs(recon.entry(i, j) - m.entry(i, j))
                  for i in range(5) for j in range(7))
        assert err < 1e-10


def test_quotient_coords_standard_projection():
    s = Subspace.span_of(Matrix.from_cols([(1 + 0j, 0j, 0j)]))
    q = quotient_coords(Matrix.identity(3), s)
    assert q.shape == (2, 3)
    assert q.close_to(Matrix([[0j, 1 + 0j, 0j], [0j, 0j, 1 + 0j]]), 1e-12)


def test_quotient_coords_kills_the_subspace():
    rng = np.random.default_rng(26)
    basis = float_matrix(rng, 4, 2)
    s = Subspace.span_of(basis)
    inside = basis @ float_matrix(rng, 2, 3)
    q = quotient_coords(inside, s)
    assert all(abs(q.entry(i, j)) < 1e-10 for i in range(q.rows)
               for j in range(q.cols))
    exact_same = quotient_coords(s.basis, s)
    assert all(abs(x) < 1e-12 for row in exact_same.data for x in row)


def test_quotient_coords_rank_nullity():
    rng = np.random.default_rng(27)
    for _ in range(20):
        s = Subspace.span_of(float_matrix(rng, 5, 2))
        m = float_matrix(rng, 5, 4)
        q = quotient_coords(m, s)
        assert rank(q) == rank(m.hstack(s.basis)) - s.dim


def test_quotient_coords_dimension_mismatch():
    s = Subspace.span_of(Matrix.identity(3))
    with pytest.raises(ValueError):
        quotient_coords(Matrix.identity(4), s)


def test_subspace_canonical_equality():
    # two spanning sets of the same plane give identical stored bases
    a = Matrix.from_cols([(QQi(1), QQi(1), QQi(0)), (QQi(0), QQi(2), QQi(2))])
    b = Matrix.from_cols([(QQi(1), QQi(3), QQi(2)), (QQi(2), QQi(0), QQi(-2))])
    assert Subspace.span_of(a) == Subspace.span_of(b)


def test_nullspace():
    rng = np.random.default_rng(28)
    m = float_matrix(rng, 3, 5)
    null = nullspace(m)
    assert null.cols == 2
    prod = m @ null
    assert all(abs(x) < 1e-10 for row in prod.data for x in row)


def test_inverse_round_trip():
    rng = np.random.default_rng(29)
    g = random_invertible(rng, 4)
    ident = g @ inverse(g)
    assert ident.close_to(Matrix.identity(4), 1e-10)
    e = exact_matrix(rng, 3, 3)
    if rank(e) == 3:
        assert (e @ inverse(e)) == Matrix.identity(3, exact=True)
    with pytest.raises(ValueError):
        inverse(Matrix([[QQi(1), QQi(2)], [QQi(2), QQi(4)]]))


def test_intersect_known_planes():
    e = Matrix.identity(3, exact=True)
    s1 = Subspace.span_of(Matrix.from_cols([e.col(0), e.col(1)], rows=3))
    s2 = Subspace.span_of(Matrix.from_cols([e.col(1), e.col(2)], rows=3))
    meet = intersect(s1, s2)
    assert meet.dim == 1
    assert meet.basis.col(0) == (QQi(0), QQi(1), QQi(0))


def test_echelon_basis_incremental():
    ech = EchelonBasis(3, exact=True)
    assert ech.insert([QQi(1), QQi(2), QQi(0)])
    assert ech.insert([QQi(0), QQi(1), QQi(1)])
    assert not ech.insert([QQi(1), QQi(3), QQi(1)])
    assert ech.rank == 2
    residue = ech.reduce([QQi(0), QQi(0), QQi(5)])
    assert any(x for x in residue)
