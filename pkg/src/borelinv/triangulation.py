"""Decorated ideal triangulations and their volume invariant.

A decorated complex is a list of oriented combinatorial tetrahedra whose
vertices carry complete flags (or projective-line points, which for
ambient dimension 2 are the same thing).  The invariant is the orientation
weighted sum of the flag-quadruple cocycle over the tetrahedra; the tool
evaluates that sum on whatever cycle it is given and does not attempt to
certify that the input triangulates anything.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace

from .flags import Flag, borel_bn
from .serialize import (InputInvariantError, SchemaError, flag_from_json,
                        flag_to_json, point_from_json, point_to_json)
from .veronese import veronese_flag
from .volume import ProjPoint, ideal_volume


@dataclass(frozen=True)
class DecoratedComplex:
    """Oriented tetrahedra over a vertex decoration table.

    ``decoration`` maps vertex ids to :class:`Flag` or :class:`ProjPoint`;
    ``tetrahedra`` is a tuple of ``(vertex_ids, orientation)`` with
    orientation +1 or -1; ``volume`` is optional metadata (the hyperbolic
    volume of the underlying manifold, used for the maximality ratio).
    """

    n: int
    decoration: dict
    tetrahedra: tuple
    volume: float = None

    @property
    def points_decorated(self) -> bool:
        return all(isinstance(d, ProjPoint) for d in self.decoration.values())


def loads(obj, path="complex") -> DecoratedComplex:
    """Validate a parsed JSON object into a decorated complex."""
    if not isinstance(obj, dict):
        raise SchemaError(path, "top level must be an object")
    if "n" not in obj:
        raise SchemaError(f"{path}.n", "missing ambient dimension")
    n = obj["n"]
    if not isinstance(n, int) or n < 2:
        raise SchemaError(f"{path}.n", "ambient dimension must be an integer >= 2")

    volume = obj.get("volume")
    if volume is not None:
        if not isinstance(volume, (int, float)) or volume <= 0:
            raise SchemaError(f"{path}.volume", "volume must be a positive number")
        volume = float(volume)

    dec_obj = obj.get("decoration")
    if not isinstance(dec_obj, dict) or not dec_obj:
        raise SchemaError(f"{path}.decoration", "need a non-empty vertex table")
    decoration = {}
    for vid, value in dec_obj.items():
        vpath = f"{path}.decoration.{vid}"
        if isinstance(value, dict):
            flag = flag_from_json(value, vpath)
            if flag.n != n:
                raise InputInvariantError(
                    vpath, f"flag lives in C^{flag.n}, complex has n = {n}")
            decoration[str(vid)] = flag
        else:
            decoration[str(vid)] = point_from_json(value, vpath)

    tets_obj = obj.get("tetrahedra")
    if not isinstance(tets_obj, list) or not tets_obj:
        raise SchemaError(f"{path}.tetrahedra", "need a non-empty array")
    tetrahedra = []
    for t, tet in enumerate(tets_obj):
        tpath = f"{path}.tetrahedra[{t}]"
        if not isinstance(tet, dict) or "v" not in tet:
            raise SchemaError(tpath, "tetrahedron needs a vertex array 'v'")
        verts = tet["v"]
        if not isinstance(verts, list) or len(verts) != 4:
            raise SchemaError(f"{tpath}.v", "exactly four vertex ids required")
        ids = tuple(str(v) for v in verts)
        for v in ids:
            if v not in decoration:
                raise SchemaError(f"{tpath}.v", f"undecorated vertex {v!r}")
        orientation = tet.get("or", 1)
        if orientation not in (1, -1):
            raise SchemaError(f"{tpath}.or", "orientation must be +1 or -1")
        tetrahedra.append((ids, orientation))

    kinds = {isinstance(d, Flag) for d in decoration.values()}
    if len(kinds) > 1:
        raise SchemaError(f"{path}.decoration",
                          "mix of flag and point decorations")
    return DecoratedComplex(n, decoration, tuple(tetrahedra), volume)


def load(path) -> DecoratedComplex:
    """Load and validate a triangulation JSON file."""
    with open(path) as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(str(path), f"invalid JSON: {exc}") from None
    return loads(obj)


def dumps(dc: DecoratedComplex) -> str:
    dec = {}
    for vid, d in dc.decoration.items():
        dec[vid] = flag_to_json(d) if isinstance(d, Flag) else point_to_json(d)
    obj = {"n": dc.n, "decoration": dec,
           "tetrahedra": [{"v": list(ids), "or": o} for ids, o in dc.tetrahedra]}
    if dc.volume is not None:
        obj["volume"] = dc.volume
    return json.dumps(obj, indent=2, sort_keys=True)


def _vertex_flags(dc: DecoratedComplex):
    flags = {}
    for vid, d in dc.decoration.items():
        if isinstance(d, Flag):
            flags[vid] = d
        elif dc.n == 2:
            flags[vid] = veronese_flag(d, 2)
        else:
            raise InputInvariantError(
                f"decoration.{vid}",
                f"point decoration cannot feed an n = {dc.n} evaluation; lift it first")
    return flags


def tetrahedron_contributions(dc: DecoratedComplex):
    """Per-tetrahedron signed cocycle values, in file order."""
    flags = _vertex_flags(dc)
    return [orientation * borel_bn([flags[v] for v in ids])
            for ids, orientation in dc.tetrahedra]


def borel_invariant(dc: DecoratedComplex) -> float:
    """Orientation-weighted sum of the flag cocycle over all tetrahedra."""
    return sum(tetrahedron_contributions(dc))


def geometric_volume(dc: DecoratedComplex) -> float:
    """Sum of unsigned ideal volumes of a point-decorated complex."""
    if not dc.points_decorated:
        raise InputInvariantError(
            "decoration", "geometric volume needs projective-point decorations")
    total = 0.0
    for ids, _ in dc.tetrahedra:
        pts = [dc.decoration[v] for v in ids]
        total += abs(ideal_volume(*pts))
    return total


def lift_veronese(dc: DecoratedComplex, n: int) -> DecoratedComplex:
    """Replace point decorations by their Veronese flags in dimension ``n``."""
    if not dc.points_decorated:
        raise InputInvariantError(
            "decoration", "decorations are already flags; nothing to lift")
    lifted = {vid: veronese_flag(p, n) for vid, p in dc.decoration.items()}
    return replace(dc, n=n, decoration=lifted)


@dataclass(frozen=True)
class MaximalityRatio:
    """The invariant as a multiple of the volume, and how close to extremal."""

    lam: float
    normalized: float
    verdict: str
    consistent: bool


def maximality_ratio(b: float, vol_m: float, n: int,
                     slack: float = 1e-6) -> MaximalityRatio:
    """Ratio ``lambda = b / vol_m`` with its normalization by the sharp bound.

    The normalized value lies in [-1, 1] up to tolerance for consistent
    inputs; values beyond ``1 + slack`` are flagged as inconsistent (they
    would contradict the boundedness of the cocycle).
    """
    if vol_m <= 0:
        raise ValueError("volume must be positive")
    lam = b / vol_m
    bound = n * (n * n - 1) / 6.0
    normalized = lam / bound
    if abs(normalized) > 1 + slack:
        return MaximalityRatio(lam, normalized, "inconsistent", False)
    verdict = "maximal" if abs(normalized) > 1 - slack else "non-maximal"
    return MaximalityRatio(lam, normalized, verdict, True)
