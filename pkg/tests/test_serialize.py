"""JSON round trips and schema error paths."""

from fractions import Fraction

import pytest

from borelinv.flags import Flag, flags_equal
from borelinv.linalg import Matrix, QQi
from borelinv.serialize import (InputInvariantError, SchemaError,
                                flag_from_json, flag_quad_from_json,
                                flag_to_json, matrix_from_json,
                                matrix_to_json, parse_point_literal,
                                point_from_json, point_to_json,
                                scalar_from_json, scalar_to_json)


def test_scalar_round_trips():
    assert scalar_from_json(scalar_to_json(1.5 - 2.5j), "s") == 1.5 - 2.5j
    q = QQi(Fraction(1, 3), Fraction(-7, 2))
    back = scalar_from_json(scalar_to_json(q), "s")
    assert isinstance(back, QQi) and back == q
    assert scalar_from_json(["3/7", "0"], "s") == QQi(Fraction(3, 7))
    assert scalar_from_json(["0.5", "1"], "s") == QQi(Fraction(1, 2), 1)


def test_scalar_errors_name_the_path():
    with pytest.raises(SchemaError, match="root.x"):
        scalar_from_json([1.0], "root.x")
    with pytest.raises(SchemaError, match="root.x"):
        scalar_from_json(["1/0", "0"], "root.x")
    with pytest.raises(SchemaError):
        scalar_from_json([None, 0.0], "s")


def test_matrix_round_trip_and_checks():
    m = Matrix.from_cols([[QQi(1), QQi(2)], [QQi(0), QQi(Fraction(1, 3))]],
                         rows=2)
    assert matrix_from_json(matrix_to_json(m), "m") == m
    with pytest.raises(SchemaError, match="unequal"):
        matrix_from_json([[[1.0, 0.0]], [[1.0, 0.0], [0.0, 0.0]]], "m")
    with pytest.raises(SchemaError, match="mixed"):
        matrix_from_json([[[1.0, 0.0]], [["1", "0"]]], "m")


def test_flag_round_trip():
    f = Flag(Matrix.from_cols([[QQi(1), QQi(1)], [QQi(0), QQi(1)]], rows=2))
    back = flag_from_json(flag_to_json(f), "flag")
    assert flags_equal(back, f)


def test_flag_errors():
    with pytest.raises(SchemaError, match="flag"):
        flag_from_json({"adapted": []}, "flag")
    with pytest.raises(SchemaError, match="expected a 2x2"):
        flag_from_json({"n": 2, "adapted": [[[1.0, 0.0]]]}, "flag")
    with pytest.raises(InputInvariantError, match="rank-deficient"):
        flag_from_json(
            {"n": 2, "adapted": [[[1.0, 0.0], [1.0, 0.0]],
                                 [[2.0, 0.0], [2.0, 0.0]]]}, "flag")


def test_quad_requires_four_matching_flags():
    f = flag_to_json(Flag(Matrix.identity(2)))
    with pytest.raises(SchemaError, match="four"):
        flag_quad_from_json([f, f, f], "quad")
    g = flag_to_json(Flag(Matrix.identity(3)))
    with pytest.raises(InputInvariantError, match="mismatched"):
        flag_quad_from_json([f, f, f, g], "quad")


def test_point_literals():
    assert parse_point_literal("inf").affine().infinite
    p = parse_point_literal("0.5+2i")
    assert p.affine().value == 0.5 + 2j
    assert parse_point_literal("-1.5").affine().value == -1.5
    assert parse_point_literal("2i").affine().value == 2j
    assert parse_point_literal("1e-3+2.5e2i").affine().value == 1e-3 + 250j
    with pytest.raises(SchemaError):
        parse_point_literal("spam", "p")


def test_config_round_trip():
    from borelinv.serialize import chain_from_json, chain_to_json, \
        config_from_json, config_to_json
    from borelinv.configs import Chain, boundary, chains_close, make_config

    raw = Matrix.from_cols([[QQi(1), QQi(0)], [QQi(0), QQi(1)],
                            [QQi(1), QQi(2)], [QQi(0), QQi(0)]], rows=2)
    cfg = make_config(raw)
    assert config_from_json(config_to_json(cfg), "c") == cfg
    with pytest.raises(InputInvariantError, match="span"):
        config_from_json({"m": 3, "vectors": [[[1.0, 0.0], [0.0, 0.0],
                                               [0.0, 0.0]]]}, "c")
    with pytest.raises(SchemaError, match="c.m"):
        config_from_json({"m": -1, "vectors": []}, "c")

    ch = boundary(make_config(Matrix.from_cols(
        [[QQi(1), QQi(0)], [QQi(0), QQi(1)], [QQi(1), QQi(1)],
         [QQi(2), QQi(1)], [QQi(1), QQi(-1)]], rows=2)), "D")
    back = chain_from_json(chain_to_json(ch), "ch")
    assert chains_close(back, ch)
    assert not chain_from_json([], "ch")
    with pytest.raises(SchemaError, match="coeff"):
        chain_from_json([{"coeff": 1.5, "config": config_to_json(cfg)}], "ch")


def test_point_json_forms():
    p = point_from_json([[0.5, 0.25], [1.0, 0.0]], "p")
    assert p.a == 0.5 + 0.25j and p.b == 1 + 0j
    assert point_from_json(point_to_json(p), "p").a == p.a
    q = point_from_json([["1/2", "0"], ["1", "0"]], "p")
    assert isinstance(q.a, QQi)
    with pytest.raises(InputInvariantError):
        point_from_json([[0.0, 0.0], [0.0, 0.0]], "p")
    with pytest.raises(SchemaError, match="mixed"):
        point_from_json([[0.5, 0.0], ["1", "0"]], "p")
