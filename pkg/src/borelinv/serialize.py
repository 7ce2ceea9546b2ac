"""JSON forms of scalars, matrices, flags and projective points.

Scalars travel as two-element ``[re, im]`` arrays: IEEE doubles on the
float backend, rational strings (``"2/3"``, also plain integers or finite
decimals) on the exact backend.  Matrices are arrays of columns.  A
projective point is a pair of scalars; the shorthand string ``"inf"`` and
complex literals like ``"0.5+2i"`` are accepted wherever a point is
expected.
"""

from __future__ import annotations

from fractions import Fraction

from .linalg import Matrix, QQi
from .configs import Chain, Config, make_config
from .flags import Flag
from .volume import ProjPoint


class SchemaError(ValueError):
    """Malformed input file: wrong structure or value at ``path``."""

    def __init__(self, path, message):
        self.path = path
        super().__init__(f"{path}: {message}")


class InputInvariantError(ValueError):
    """Structurally valid input violating a mathematical invariant."""

    def __init__(self, path, message):
        self.path = path
        super().__init__(f"{path}: {message}")


def scalar_to_json(x):
    if isinstance(x, QQi):
        return [str(x.re), str(x.im)]
    z = complex(x)
    return [z.real, z.imag]


def scalar_from_json(obj, path):
    if not isinstance(obj, (list, tuple)) or len(obj) != 2:
        raise SchemaError(path, "scalar must be a two-element [re, im] array")
    re_, im_ = obj
    if isinstance(re_, str) or isinstance(im_, str):
        try:
            return QQi(Fraction(str(re_)), Fraction(str(im_)))
        except (ValueError, ZeroDivisionError) as exc:
            raise SchemaError(path, f"bad rational component: {exc}") from None
    if not isinstance(re_, (int, float)) or not isinstance(im_, (int, float)):
        raise SchemaError(path, "scalar components must be numbers or strings")
    return complex(re_, im_)


def matrix_to_json(m: Matrix):
    return [[scalar_to_json(x) for x in col] for col in m.columns()]


def matrix_from_json(obj, path, rows=None):
    if not isinstance(obj, list):
        raise SchemaError(path, "matrix must be an array of columns")
    cols = []
    for j, col in enumerate(obj):
        if not isinstance(col, list):
            raise SchemaError(f"{path}[{j}]", "column must be an array")
        cols.append([scalar_from_json(x, f"{path}[{j}][{i}]")
                     for i, x in enumerate(col)])
    if cols:
        height = len(cols[0])
        if any(len(c) != height for c in cols):
            raise SchemaError(path, "columns have unequal heights")
        kinds = {isinstance(x, QQi) for c in cols for x in c}
        if len(kinds) > 1:
            raise SchemaError(path, "mixed exact and float scalars")
    return Matrix.from_cols(cols, rows=rows)


def flag_to_json(f: Flag):
    return {"n": f.n, "adapted": matrix_to_json(f.adapted)}


def flag_from_json(obj, path):
    if not isinstance(obj, dict):
        raise SchemaError(path, "flag must be an object with n and adapted")
    if "n" not in obj or "adapted" not in obj:
        raise SchemaError(path, "flag needs fields 'n' and 'adapted'")
    n = obj["n"]
    if not isinstance(n, int) or n < 1:
        raise SchemaError(f"{path}.n", "ambient dimension must be a positive integer")
    m = matrix_from_json(obj["adapted"], f"{path}.adapted")
    if m.shape != (n, n):
        raise SchemaError(f"{path}.adapted",
                          f"expected a {n}x{n} matrix, got {m.rows}x{m.cols}")
    try:
        return Flag(m)
    except ValueError as exc:
        raise InputInvariantError(f"{path}.adapted", str(exc)) from None


def parse_point_literal(text: str, path="point") -> ProjPoint:
    """Parse ``"inf"`` or a complex literal ``"x+yi"`` into a point."""
    s = text.strip()
    if s.lower() in ("inf", "infinity"):
        return ProjPoint.infinity()
    try:
        z = complex(s.replace(" ", "").replace("i", "j").replace("I", "j"))
    except ValueError:
        raise SchemaError(path, f"cannot parse point literal {text!r}") from None
    return ProjPoint.from_affine(z)


def point_to_json(p: ProjPoint):
    return [scalar_to_json(p.a), scalar_to_json(p.b)]


def point_from_json(obj, path) -> ProjPoint:
    if isinstance(obj, str):
        return parse_point_literal(obj, path)
    if not isinstance(obj, (list, tuple)) or len(obj) != 2:
        raise SchemaError(path, "point must be [[re_a, im_a], [re_b, im_b]] or a literal")
    a = scalar_from_json(obj[0], f"{path}[0]")
    b = scalar_from_json(obj[1], f"{path}[1]")
    if isinstance(a, QQi) != isinstance(b, QQi):
        raise SchemaError(path, "mixed exact and float components")
    try:
        return ProjPoint(a, b)
    except ValueError as exc:
        raise InputInvariantError(path, str(exc)) from None


def flag_quad_from_json(obj, path="quad"):
    if not isinstance(obj, list) or len(obj) != 4:
        raise SchemaError(path, "expected an array of exactly four flags")
    flags = [flag_from_json(f, f"{path}[{i}]") for i, f in enumerate(obj)]
    n = flags[0].n
    if any(f.n != n for f in flags):
        raise InputInvariantError(path, "flags have mismatched ambient dimensions")
    return flags


def config_to_json(cfg: Config):
    return {"m": cfg.m, "vectors": matrix_to_json(cfg.vectors)}


def config_from_json(obj, path="config") -> Config:
    if not isinstance(obj, dict) or "m" not in obj or "vectors" not in obj:
        raise SchemaError(path, "configuration needs fields 'm' and 'vectors'")
    m = obj["m"]
    if not isinstance(m, int) or m < 0:
        raise SchemaError(f"{path}.m",
                          "ambient dimension must be a nonnegative integer")
    vectors = matrix_from_json(obj["vectors"], f"{path}.vectors", rows=m)
    if vectors.rows != m:
        raise SchemaError(f"{path}.vectors",
                          f"columns have height {vectors.rows}, expected {m}")
    try:
        return make_config(vectors)
    except ValueError as exc:
        raise InputInvariantError(f"{path}.vectors", str(exc)) from None


def chain_to_json(ch: Chain):
    return [{"coeff": coeff, "config": config_to_json(cfg)} for coeff, cfg in ch]


def chain_from_json(obj, path="chain") -> Chain:
    if not isinstance(obj, list):
        raise SchemaError(path, "chain must be an array of {coeff, config}")
    out = Chain()
    for i, term in enumerate(obj):
        tpath = f"{path}[{i}]"
        if not isinstance(term, dict) or "coeff" not in term or "config" not in term:
            raise SchemaError(tpath, "term needs fields 'coeff' and 'config'")
        coeff = term["coeff"]
        if not isinstance(coeff, int):
            raise SchemaError(f"{tpath}.coeff", "coefficient must be an integer")
        out.add(coeff, config_from_json(term["config"], f"{tpath}.config"))
    return out
