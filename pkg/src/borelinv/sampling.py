"""Seeded random generators for flags, configurations and test points.

All randomness flows through numpy's seedable PCG64 generator; independent
streams are derived from ``(seed, index)`` pairs so sample ``i`` of a run
is reproducible regardless of batching or worker count.  Float flags come
from QR factors of complex Gaussian matrices; exact-mode objects draw
small integers and certify their rank conditions exactly.
"""

from __future__ import annotations

import numpy as np

from .configs import Config, make_config
from .flags import Flag
from .linalg import Matrix, QQi, rank
from .volume import ProjPoint


def rng_stream(seed: int, index: int = 0) -> np.random.Generator:
    """Independent generator for sample ``index`` of a seeded run."""
    return np.random.default_rng([int(seed), int(index)])


def _complex_gaussian(rng, rows, cols):
    return rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))


def _to_matrix(arr) -> Matrix:
    return Matrix([[complex(x) for x in row] for row in arr])


def random_flag(rng, n: int) -> Flag:
    """Generic flag: orthonormal columns of a complex Gaussian matrix."""
    q, _ = np.linalg.qr(_complex_gaussian(rng, n, n))
    return Flag(_to_matrix(q))


def random_flags(rng, n: int, count: int):
    return [random_flag(rng, n) for _ in range(count)]


def random_invertible(rng, n: int) -> Matrix:
    """Well-conditioned invertible matrix: unitary factor times a random
    diagonal with moduli in [1/2, 2]."""
    q, _ = np.linalg.qr(_complex_gaussian(rng, n, n))
    moduli = rng.uniform(0.5, 2.0, n)
    phases = np.exp(2j * np.pi * rng.uniform(0.0, 1.0, n))
    return _to_matrix(q * (moduli * phases))


def random_projpoint(rng) -> ProjPoint:
    while True:
        a, b = _complex_gaussian(rng, 2, 1)[:, 0]
        if abs(a) + abs(b) > 1e-3:
            return ProjPoint(complex(a), complex(b))


def random_mobius(rng) -> Matrix:
    """Random determinant-one 2x2 complex matrix."""
    while True:
        m = _complex_gaussian(rng, 2, 2)
        det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
        if abs(det) > 1e-6:
            return _to_matrix(m / np.sqrt(det))


def random_config(rng, m: int, k: int) -> Config:
    """Random spanning configuration of ``k+1`` vectors in ``C^m``."""
    while True:
        raw = _to_matrix(_complex_gaussian(rng, m, k + 1))
        if rank(raw) == m:
            return make_config(raw)


def random_exact_matrix(rng, rows, cols, bound=9) -> Matrix:
    ints_re = rng.integers(-bound, bound + 1, (rows, cols))
    ints_im = rng.integers(-bound, bound + 1, (rows, cols))
    return Matrix([[QQi(int(ints_re[i, j]), int(ints_im[i, j]))
                    for j in range(cols)] for i in range(rows)])


def random_exact_flag(rng, n: int, bound=9) -> Flag:
    """Flag with small Gaussian-integer entries, rank certified exactly."""
    while True:
        m = random_exact_matrix(rng, n, n, bound)
        if rank(m) == n:
            return Flag(m)


def random_exact_config(rng, m: int, k: int, bound=9) -> Config:
    while True:
        raw = random_exact_matrix(rng, m, k + 1, bound)
        if rank(raw) == m:
            return make_config(raw)


def random_exact_projpoint(rng, bound=9) -> ProjPoint:
    while True:
        a = QQi(int(rng.integers(-bound, bound + 1)),
                int(rng.integers(-bound, bound + 1)))
        b = QQi(int(rng.integers(-bound, bound + 1)),
                int(rng.integers(-bound, bound + 1)))
        if a or b:
            return ProjPoint(a, b)


def random_exact_sl2(rng, bound=5) -> Matrix:
    """Exact 2x2 matrix with determinant exactly one."""
    while True:
        a = QQi(int(rng.integers(-bound, bound + 1)),
                int(rng.integers(-bound, bound + 1)))
        if not a:
            continue
        b = QQi(int(rng.integers(-bound, bound + 1)),
                int(rng.integers(-bound, bound + 1)))
        c = QQi(int(rng.integers(-bound, bound + 1)),
                int(rng.integers(-bound, bound + 1)))
        d = (QQi(1) + b * c) / a
        return Matrix([[a, b], [c, d]])
