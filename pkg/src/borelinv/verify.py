"""Seeded Monte-Carlo suites for the structural identities of the cocycle.

Each property draws its ``i``-th sample from an RNG stream keyed by
``(seed, i)``, so results are independent of batching and worker count;
reduction happens in sample order.  A suite returns a :class:`RunReport`
plus the per-sample residual list for reporting.
"""

from __future__ import annotations

import itertools
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass

from .configs import (Chain, Config, boundary, boundary_chain, eval_chain,
                      make_config, vol3)
from .flags import Flag, b3_projective_oracle, big_t, borel_bn, tuple_faces
from .linalg import Matrix, QQi, Subspace
from .sampling import (random_config, random_exact_config, random_exact_flag,
                       random_exact_projpoint, random_flag, random_invertible,
                       random_projpoint, rng_stream)
from .veronese import veronese_flag
from .volume import V3, ideal_volume

_PERMUTATIONS4 = list(itertools.permutations(range(4)))


def _perm_sign(perm):
    sign = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


_SIGNS4 = [_perm_sign(p) for p in _PERMUTATIONS4]


def sharp_bound(n: int) -> float:
    """The extremal value ``n(n^2-1)/6 * V3`` of the cocycle."""
    return n * (n * n - 1) / 6.0 * V3


@dataclass(frozen=True)
class RunReport:
    """Outcome of one verification run."""

    command: str
    samples: int
    failures: int
    max_abs_residual: float
    seed: int
    wall_time: float

    def to_dict(self):
        return asdict(self)


# ---------------------------------------------------------------------------
# per-sample residuals


def _sample_flags(rng, n, count, exact):
    if exact:
        return [random_exact_flag(rng, n) for _ in range(count)]
    return [random_flag(rng, n) for _ in range(count)]


def _residual_cocycle(rng, n, exact):
    flags = _sample_flags(rng, n, 5, exact)
    total = 0.0
    for i in range(5):
        total += (-1) ** i * borel_bn(flags[:i] + flags[i + 1:])
    return abs(total)


def _residual_gl_invariance(rng, n, exact):
    quad = _sample_flags(rng, n, 4, exact)
    g = random_invertible(rng, n)
    if exact:
        quad = [f.to_float() for f in quad]
    moved = [f.apply(g) for f in quad]
    return abs(borel_bn(moved) - borel_bn(quad))


def _residual_alternation(rng, n, exact):
    quad = _sample_flags(rng, n, 4, exact)
    base = borel_bn(quad)
    worst = 0.0
    for perm, sign in zip(_PERMUTATIONS4, _SIGNS4):
        value = borel_bn([quad[p] for p in perm])
        worst = max(worst, abs(value - sign * base))
    return worst


def _residual_bound(rng, n, exact):
    quad = _sample_flags(rng, n, 4, exact)
    return max(0.0, abs(borel_bn(quad)) - sharp_bound(n))


def _residual_lift_independence(rng, n, exact):
    quad = _sample_flags(rng, n, 4, exact)
    if exact:
        quad = [f.to_float() for f in quad]
    base = borel_bn(quad)
    factors = [complex(rng.uniform(0.2, 3.0), rng.uniform(-1.0, 1.0))
               for _ in range(n)]
    moved = [quad[0].rescale_lift(factors)] + quad[1:]
    return abs(borel_bn(moved) - base)


def _residual_d4vol(rng, _n, exact):
    m = 2 if int(rng.integers(0, 2)) == 0 else 3
    cfg = (random_exact_config(rng, m, 4) if exact
           else random_config(rng, m, 4))
    return abs(eval_chain(vol3, boundary(cfg, "D")))


def _chain_residual(a: Chain, b: Chain) -> float:
    diff = Chain(list(a))
    diff.extend(b, sign=-1)
    return float(max((abs(c) for c, _ in diff), default=0))


def _empty_config(k: int) -> Config:
    return make_config(Matrix([], cols=k + 1))


def _residual_chainmap(rng, n, exact):
    flags = _sample_flags(rng, n, 4, exact)
    # odd tuple length: the boundary of the level sum matches the level sum
    # of the boundary exactly
    lhs = Chain()
    for sign, face in tuple_faces(flags):
        lhs.extend(big_t(face), sign=sign)
    rhs = boundary_chain(big_t(flags), "D")
    worst = _chain_residual(lhs, rhs)
    # even tuple length: the mismatch is n^k copies of the empty-space
    # configuration
    triple = flags[:3]
    lhs2 = Chain()
    for sign, face in tuple_faces(triple):
        lhs2.extend(big_t(face), sign=sign)
    lhs2.extend(boundary_chain(big_t(triple), "D"), sign=-1)
    expected = Chain([(n * n, _empty_config(1))])
    return max(worst, _chain_residual(lhs2, expected))


def _residual_veronese_value(rng, n, exact):
    sample = random_exact_projpoint if exact else random_projpoint
    pts = [sample(rng) for _ in range(4)]
    flags = [veronese_flag(p, n) for p in pts]
    factor = n * (n * n - 1) / 6.0
    target = factor * ideal_volume(*pts)
    return abs(borel_bn(flags) - target) / factor


def _residual_oracle_b3(rng, _n, exact):
    quad = _sample_flags(rng, 3, 4, exact)
    return abs(borel_bn(quad) - b3_projective_oracle(quad))


def _residual_relations(rng, _n, exact):
    from .configs import face_epsilon, face_eta
    shapes = [(2, 3), (3, 3), (2, 4), (3, 4), (4, 4)]
    m, k = shapes[int(rng.integers(0, len(shapes)))]
    cfg = random_exact_config(rng, m, k) if exact else random_config(rng, m, k)
    bad = 0
    for j in range(k):
        for i in range(j + 1):
            if face_epsilon(face_epsilon(cfg, i), j) != \
               face_epsilon(face_epsilon(cfg, j + 1), i):
                bad += 1
            if face_eta(face_eta(cfg, i), j) != \
               face_eta(face_eta(cfg, j + 1), i):
                bad += 1
            if face_eta(face_epsilon(cfg, i), j) != \
               face_epsilon(face_eta(cfg, j + 1), i):
                bad += 1
    if k >= 2:
        for kind in ("epsilon", "eta", "D"):
            if boundary_chain(boundary(cfg, kind), kind):
                bad += 1
        mixed = boundary_chain(boundary(cfg, "eta"), "epsilon")
        mixed.extend(boundary_chain(boundary(cfg, "epsilon"), "eta"))
        if mixed:
            bad += 1
    return float(bad)


_SAMPLERS = {
    "cocycle": _residual_cocycle,
    "gl-invariance": _residual_gl_invariance,
    "alternation": _residual_alternation,
    "bound": _residual_bound,
    "lift-independence": _residual_lift_independence,
    "d4vol": _residual_d4vol,
    "chainmap": _residual_chainmap,
    "veronese-value": _residual_veronese_value,
    "oracle-b3": _residual_oracle_b3,
    "relations": _residual_relations,
}

PROPERTY_NAMES = tuple(sorted(_SAMPLERS))

DEFAULT_TOLERANCES = {
    "cocycle": 1e-8,
    "gl-invariance": 1e-8,
    "alternation": 1e-8,
    "bound": 1e-9,
    "lift-independence": 1e-8,
    "d4vol": 1e-9,
    "chainmap": 1e-9,
    "veronese-value": 1e-8,
    "oracle-b3": 1e-9,
    "relations": 0.0,
}

# properties whose decisions belong on the exact backend: integer and
# canonical-form statements, and branch-heavy Veronese flags whose float
# conditioning degrades at extreme points
_EXACT_BY_DEFAULT = {"relations", "chainmap", "veronese-value"}


# ---------------------------------------------------------------------------
# engineered extra inputs


def _q(x):
    return QQi(*x) if isinstance(x, tuple) else QQi(x)


def _flag_from_cols(cols) -> Flag:
    qcols = [[_q(x) for x in col] for col in cols]
    return Flag(Matrix.from_cols(qcols, rows=len(cols[0])))


def equal_plane_quad():
    """Two flags sharing their plane but not their point (n = 3)."""
    f0 = _flag_from_cols([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    f2 = _flag_from_cols([((0, 1), 1, 0), (1, 0, 0), (0, 0, 1)])
    f1 = _flag_from_cols([(1, 1, (1, 1)), (1, 2, 3), (1, 0, 0)])
    f3 = _flag_from_cols([(1, -1, (0, 2)), (0, 1, 1), (1, 0, 0)])
    return [f0, f1, f2, f3]


def concurrent_plane_quad():
    """Four distinct planes through a common projective point (n = 3)."""
    quad = []
    for w, comp in (((0, 1, 0), (0, 0, 1)), ((0, 0, 1), (0, 1, 0)),
                    ((0, 1, 1), (0, 1, 0)), ((0, 1, (0, 1)), (0, 1, 0))):
        point = tuple(1 if i == 0 else w[i] for i in range(3))
        quad.append(_flag_from_cols([point, (1, 0, 0), comp]))
    return quad


def equal_and_concurrent_quad():
    """Both degenerations at once; the value collapses to zero."""
    f0 = _flag_from_cols([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    f1 = _flag_from_cols([(0, 1, 0), (1, 0, 0), (0, 0, 1)])
    f2 = _flag_from_cols([(0, 0, 1), (1, 0, 0), (0, 1, 0)])
    f3 = _flag_from_cols([(0, 1, (1, 1)), (1, 0, 0), (0, 1, 0)])
    return [f0, f1, f2, f3]


def equal_point_quad():
    """Two flags sharing their point but not their plane (n = 3)."""
    f0 = _flag_from_cols([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    f2 = _flag_from_cols([(1, 0, 0), (0, 0, 1), (0, (0, 1), 0)])
    f1 = _flag_from_cols([(1, 1, (1, 1)), (1, 2, 3), (1, 0, 0)])
    f3 = _flag_from_cols([(1, -1, (0, 2)), (0, 1, 1), (1, 0, 0)])
    return [f0, f1, f2, f3]


def collinear_point_quad():
    """Four flags whose points lie on one projective line (n = 3).

    The dual planes are then concurrent, which drives the point-on-line
    evaluation through its auxiliary-line branch.
    """
    f0 = _flag_from_cols([(1, 0, 0), (0, 0, 1), (0, 1, 0)])
    f1 = _flag_from_cols([(0, 1, 0), (1, 0, 1), (1, 0, 0)])
    f2 = _flag_from_cols([(1, 1, 0), (0, 0, 1), (1, 0, 0)])
    f3 = _flag_from_cols([(1, (0, 1), 0), (0, 1, 1), (1, 0, 0)])
    return [f0, f1, f2, f3]


def _exact_plane(cols) -> Subspace:
    return Subspace.span_of(
        Matrix.from_cols([[QQi(x) for x in c] for c in cols], rows=3))


def _extras_oracle_b3():
    residuals = []
    for quad in (equal_plane_quad(), concurrent_plane_quad(),
                 equal_and_concurrent_quad(), equal_point_quad(),
                 collinear_point_quad()):
        residuals.append(abs(borel_bn(quad) - b3_projective_oracle(quad)))
    # choice of auxiliary line is immaterial in the concurrent branch
    quad = collinear_point_quad()
    aux1 = _exact_plane([(1, 0, 0), (0, 1, 0)])
    aux2 = _exact_plane([(1, 0, 0), (0, 1, 1)])
    v1 = b3_projective_oracle(quad, aux_line=aux1)
    v2 = b3_projective_oracle(quad, aux_line=aux2)
    residuals.append(abs(v1 - v2))
    residuals.append(abs(v1 - borel_bn(quad)))
    return residuals


def degenerate_boundary_configs():
    """One configuration per degenerate branch of the coboundary argument:
    a zero vector, a repeated line, a 4-subtuple spanning a plane, a
    non-generic spanning 5-tuple, and a generic one, in both ambient
    dimensions 2 and 3."""
    def cfg(m, cols):
        qcols = [[QQi(x) for x in col] for col in cols]
        return make_config(Matrix.from_cols(qcols, rows=m))

    return [
        cfg(2, [(1, 0), (0, 1), (1, 2), (0, 0), (1, -1)]),
        cfg(2, [(1, 0), (2, 0), (0, 1), (1, 1), (1, -1)]),
        cfg(2, [(1, 0), (0, 1), (1, 1), (1, 2), (1, 3)]),
        cfg(3, [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1), (0, 0, 0)]),
        cfg(3, [(1, 0, 0), (3, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)]),
        cfg(3, [(1, 0, 0), (0, 1, 0), (1, 1, 0), (1, -1, 0), (0, 0, 1)]),
        cfg(3, [(1, 0, 0), (0, 1, 0), (1, 1, 0), (0, 0, 1), (1, 1, 1)]),
        cfg(3, [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1), (1, 2, 4)]),
    ]


def _extras_d4vol():
    return [abs(eval_chain(vol3, boundary(cfg, "D")))
            for cfg in degenerate_boundary_configs()]


_EXTRAS = {
    "d4vol": _extras_d4vol,
    "oracle-b3": _extras_oracle_b3,
}


# ---------------------------------------------------------------------------
# driver


def _chunk_residuals(prop, n, seed, lo, hi, exact):
    sampler = _SAMPLERS[prop]
    return [sampler(rng_stream(seed, i), n, exact) for i in range(lo, hi)]


def run_property(prop, n=3, samples=200, seed=0, tol=None, exact=None,
                 workers=1):
    """Run a named property suite; returns (RunReport, residuals).

    Sample ``i`` always uses the RNG stream ``(seed, i)``, so reports are
    reproducible for a fixed seed regardless of ``workers``.
    """
    if prop not in _SAMPLERS:
        raise ValueError(f"unknown property {prop!r}; "
                         f"choose from {', '.join(PROPERTY_NAMES)}")
    if prop == "oracle-b3":
        n = 3
    if exact is None:
        exact = prop in _EXACT_BY_DEFAULT
    if tol is None:
        tol = DEFAULT_TOLERANCES[prop]
    start = time.perf_counter()
    if workers > 1 and samples > 1:
        bounds = [(samples * w // workers, samples * (w + 1) // workers)
                  for w in range(workers)]
        residuals = []
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_chunk_residuals, prop, n, seed, lo, hi, exact)
                       for lo, hi in bounds]
            for fut in futures:
                residuals.extend(fut.result())
    else:
        residuals = _chunk_residuals(prop, n, seed, 0, samples, exact)
    extras = _EXTRAS.get(prop)
    if extras is not None:
        residuals = residuals + extras()
    failures = sum(1 for r in residuals if r > tol)
    report = RunReport(
        command=f"verify:{prop}",
        samples=len(residuals),
        failures=failures,
        max_abs_residual=float(max(residuals, default=0.0)),
        seed=seed,
        wall_time=time.perf_counter() - start,
    )
    return report, residuals
