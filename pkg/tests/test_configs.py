"""Configuration canonical forms, face maps, boundaries and the volume."""

import pytest

from borelinv.configs import (Chain, boundary, boundary_chain, compositions,
                              configs_close, eval_chain, face_epsilon,
                              face_eta, make_config, vol3)
from borelinv.linalg import Matrix, QQi
from borelinv.sampling import random_config, random_exact_config, rng_stream
from borelinv.volume import REGULAR_CROSS_RATIO, V3


def exact_cols(cols):
    return Matrix.from_cols([[QQi(x) for x in c] for c in cols],
                            rows=len(cols[0]))


def test_make_config_orbit_invariance_exact():
    raw = exact_cols([(1, 0), (0, 1), (1, 1), (2, 3)])
    g = exact_cols([(1, 2), (1, -1)])
    assert make_config(g @ raw) == make_config(raw)


def test_make_config_orbit_invariance_float():
    rng = rng_stream(32)
    from borelinv.sampling import random_invertible
    for _ in range(20):
        cfg = random_config(rng, 3, 4)
        g = random_invertible(rng, 3)
        moved = make_config(g @ cfg.vectors)
        assert configs_close(moved, cfg, 1e-9)


def test_make_config_zero_column_preserved():
    raw = exact_cols([(1, 0), (0, 0), (0, 1)])
    cfg = make_config(raw)
    assert cfg.column_is_zero(1)
    assert not cfg.column_is_zero(0)


def test_make_config_rejects_non_spanning():
    with pytest.raises(ValueError):
        make_config(exact_cols([(1, 0, 0), (0, 1, 0), (1, 1, 0)]))
    # tuples shorter than the dimension can never span
    with pytest.raises(ValueError):
        make_config(exact_cols([(1, 0, 0), (0, 1, 0)]))


def test_face_epsilon_keeps_or_drops_dimension():
    # remaining columns still span the plane
    cfg = make_config(exact_cols([(1, 0), (0, 1), (1, 1), (1, 2)]))
    face = face_epsilon(cfg, 0)
    assert (face.m, face.k) == (2, 2)
    # dropping the only column outside a line collapses to dimension 1
    cfg2 = make_config(exact_cols([(1, 0), (2, 0), (0, 1), (3, 0)]))
    face2 = face_epsilon(cfg2, 2)
    assert (face2.m, face2.k) == (1, 2)


def test_face_eta_quotients():
    cfg = make_config(exact_cols([(1, 0), (0, 1), (1, 1), (1, 2)]))
    face = face_eta(cfg, 0)
    assert (face.m, face.k) == (1, 2)
    # a zero column quotients by the zero space: ambient dimension unchanged
    cfg2 = make_config(exact_cols([(1, 0), (0, 0), (0, 1), (1, 1)]))
    face2 = face_eta(cfg2, 1)
    assert (face2.m, face2.k) == (2, 2)


def test_face_index_out_of_range():
    cfg = make_config(exact_cols([(1, 0), (0, 1), (1, 1), (1, 2)]))
    with pytest.raises(IndexError):
        face_epsilon(cfg, 4)
    with pytest.raises(IndexError):
        face_eta(cfg, -1)


def test_simplicial_relations_exact():
    rng = rng_stream(33)
    for sample in range(30):
        m, k = [(2, 3), (3, 3), (3, 4)][sample % 3]
        cfg = random_exact_config(rng, m, k)
        for j in range(k):
            for i in range(j + 1):
                assert face_epsilon(face_epsilon(cfg, i), j) == \
                    face_epsilon(face_epsilon(cfg, j + 1), i)
                assert face_eta(face_eta(cfg, i), j) == \
                    face_eta(face_eta(cfg, j + 1), i)
                assert face_eta(face_epsilon(cfg, i), j) == \
                    face_epsilon(face_eta(cfg, j + 1), i)


def test_boundaries_square_to_zero_exact():
    rng = rng_stream(34)
    for sample in range(10):
        m = 2 + sample % 3
        cfg = random_exact_config(rng, m, 4)
        for kind in ("epsilon", "eta", "D"):
            assert not boundary_chain(boundary(cfg, kind), kind)
        mixed = boundary_chain(boundary(cfg, "eta"), "epsilon")
        mixed.extend(boundary_chain(boundary(cfg, "epsilon"), "eta"))
        assert not mixed


def test_boundary_requires_tuples():
    cfg = make_config(exact_cols([(1,)]))
    with pytest.raises(ValueError):
        boundary(cfg, "D")
    cfg2 = make_config(exact_cols([(1,), (2,)]))
    with pytest.raises(ValueError):
        boundary(cfg2, "nonsense")


def test_vol3_dimension_rule():
    for cols in ([(1,), (2,), (1,), (3,)],
                 [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)]):
        cfg = make_config(exact_cols(cols))
        assert vol3(cfg) == 0.0


def test_vol3_zero_column():
    cfg = make_config(exact_cols([(1, 0), (0, 1), (0, 0), (1, 1)]))
    assert vol3(cfg) == 0.0


def test_vol3_regular_tetrahedron():
    w = REGULAR_CROSS_RATIO
    cols = [(1 + 0j, 0j), (0j, 1 + 0j), (1 + 0j, 1 + 0j), (w, 1 + 0j)]
    cfg = make_config(Matrix.from_cols(cols))
    assert abs(vol3(cfg) - V3) < 1e-14
    # the mirror tuple carries the opposite orientation
    cols2 = [(1 + 0j, 0j), (0j, 1 + 0j), (1 + 0j, 1 + 0j), (1 + 0j, w)]
    cfg2 = make_config(Matrix.from_cols(cols2))
    assert abs(vol3(cfg2) + V3) < 1e-14


def test_vol3_alternating():
    rng = rng_stream(35)
    import itertools
    cfg = random_config(rng, 2, 3)
    base = vol3(cfg)
    for perm in itertools.permutations(range(4)):
        sign = 1
        for i in range(4):
            for j in range(i + 1, 4):
                if perm[i] > perm[j]:
                    sign = -sign
        assert abs(vol3(cfg.permuted(perm)) - sign * base) < 1e-9


def test_vol3_requires_four_vectors():
    cfg = make_config(exact_cols([(1, 0), (0, 1), (1, 1)]))
    with pytest.raises(ValueError):
        vol3(cfg)


def test_eval_chain():
    assert eval_chain(vol3, Chain()) == 0.0
    rng = rng_stream(36)
    cfg = random_config(rng, 2, 4)
    assert abs(eval_chain(vol3, boundary(cfg, "D"))) < 1e-9
    mixed = Chain()
    mixed.add(1, random_config(rng, 2, 3))
    mixed.add(1, random_config(rng, 2, 2))
    with pytest.raises(ValueError):
        eval_chain(vol3, mixed)


def test_boundary_volume_vanishes_on_degenerate_branches():
    from borelinv.verify import degenerate_boundary_configs
    for cfg in degenerate_boundary_configs():
        assert abs(eval_chain(vol3, boundary(cfg, "D"))) < 1e-9


def test_chain_collects_like_terms():
    rng = rng_stream(37)
    cfg = random_exact_config(rng, 2, 3)
    ch = Chain([(2, cfg)])
    ch.add(3, cfg)
    assert len(ch) == 1 and ch.terms[0][0] == 5
    ch.add(-5, cfg)
    assert not ch


def test_compositions():
    assert compositions(4, 1) == 4
    assert compositions(4, 2) == 10
    for n in range(2, 9):
        assert compositions(2, n - 2) == n - 1
        assert compositions(4, n) == (n + 1) * (n + 2) * (n + 3) // 6
    for k in range(1, 6):
        for n in range(0, 8):
            if k >= 2 and n >= 1:
                assert compositions(k, n) == \
                    compositions(k - 1, n) + compositions(k, n - 1)
    with pytest.raises(ValueError):
        compositions(0, 3)
    with pytest.raises(ValueError):
        compositions(2, -1)
