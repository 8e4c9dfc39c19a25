"""Sampling verifiers for the convexity classes.

Every class here is universally quantified over the domain, so each checker
draws a seeded finite sample, records the worst residual (negative means a
violation) and keeps the first violating sample as a witness.  Residuals are
signed so that ``residual >= -tol`` is "the defining inequality holds".
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import CapabilityError, DegenerateBoxError, DomainError, EmptyDomainError
from .models import CONVEX, FunctionModel, Modulus
from .order import cone_slack, point_to_json

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass
class ClassVerdict:
    holds: bool
    worst_residual: float
    samples_tested: int
    witness: dict | None = None
    seed: int | None = None
    skipped: int = 0
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "holds": self.holds,
            "worst_residual": float(self.worst_residual),
            "samples_tested": self.samples_tested,
            "skipped": self.skipped,
            "seed": self.seed,
            "witness": self.witness,
            "details": self.details,
        }


class _Tracker:
    """Worst residual plus first violating sample, in sample-index order."""

    def __init__(self, tol: float):
        self.tol = tol
        self.worst = math.inf
        self.witness = None
        self.count = 0

    def add(self, residual: float, witness: Callable[[], dict]):
        self.count += 1
        if residual < self.worst:
            self.worst = residual
        if self.witness is None and residual < -self.tol:
            w = witness()
            w["residual"] = float(residual)
            w["index"] = self.count - 1
            self.witness = w

    @property
    def ok(self) -> bool:
        return self.worst >= -self.tol

    def verdict(self, seed=None, skipped=0, details=None) -> ClassVerdict:
        worst = self.worst if self.count else 0.0
        return ClassVerdict(
            holds=bool(self.count == 0 or self.worst >= -self.tol),
            worst_residual=float(worst),
            samples_tested=self.count,
            witness=self.witness,
            seed=seed,
            skipped=skipped,
            details=details or {},
        )


def _pj(f: FunctionModel, p) -> list:
    return point_to_json(f.space, np.asarray(p, dtype=float))


def _pairs(f: FunctionModel, rng, n, extra=None, comparable=False):
    for pair in extra or ():
        yield np.asarray(pair[0], dtype=float), np.asarray(pair[1], dtype=float)
    if comparable:
        for _ in range(n):
            yield f.sample_comparable_pair(rng)
    else:
        pts = f.sample_points(rng, 2 * n)
        for k in range(n):
            yield pts[2 * k], pts[2 * k + 1]


def check_omega_convex(
    f: FunctionModel,
    w: Modulus,
    n_samples: int = 1000,
    seed: int = 0,
    tol: float = 1e-9,
    extra: Sequence | None = None,
) -> ClassVerdict:
    """``f((1-t)x + t y) <= (1-t) f(x) + t f(y) - t(1-t) w(|x - y|)`` on samples.

    ``extra`` holds fixed ``(x, y, t)`` triples checked before the random ones.
    """
    rng = np.random.default_rng(seed)
    track = _Tracker(tol)
    skipped = 0
    jobs = [(np.asarray(x, float), np.asarray(y, float), float(t)) for x, y, t in (extra or ())]
    if n_samples:
        pts = f.sample_points(rng, 2 * n_samples)
        ts = rng.uniform(0.0, 1.0, n_samples)
        ts = np.clip(ts, 1e-6, 1 - 1e-6)
        jobs += [(pts[2 * k], pts[2 * k + 1], ts[k]) for k in range(n_samples)]
    for x, y, t in jobs:
        z = (1 - t) * x + t * y
        if not (f.contains(x) and f.contains(y) and f.contains(z)):
            skipped += 1
            continue
        gap = w(f.space.norm(x - y))
        res = (1 - t) * f(x) + t * f(y) - t * (1 - t) * gap - f(z)
        track.add(res, lambda x=x, y=y, t=t: {"x": _pj(f, x), "y": _pj(f, y), "lambda": float(t)})
    if track.count == 0:
        raise EmptyDomainError("every sample fell outside the domain")
    return track.verdict(seed, skipped, {"modulus": w.describe()})


def gradient_inequality_residual(f: FunctionModel, w: Modulus, a, x) -> float:
    """``f(x) - f(a) - <grad f(a), x - a> - w(|x - a|)``; nonnegative for w-convex f."""
    a = f.require(a)
    x = f.require(x)
    return f(x) - f(a) - f.space.inner(f.grad(a), x - a) - w(f.space.norm(x - a))


def _need_gradient(f: FunctionModel):
    if not f.has_gradient:
        raise CapabilityError(f"{f.name} has no gradient")


def check_strongly_smooth(
    f: FunctionModel,
    sigma: float,
    n_samples: int = 1000,
    seed: int = 0,
    tol: float = 1e-9,
) -> ClassVerdict:
    """Lipschitz gradient and the quadratic upper bound, with the co-coercive
    lower bound on the Bregman divergence reported when ``f`` claims convexity.

    The verdict aggregates the Lipschitz and upper-bound residuals.  The lower
    bound is reported twice in ``details``: with the squared gradient gap
    (standard form) and with the unsquared gap.
    """
    _need_gradient(f)
    rng = np.random.default_rng(seed)
    lip, upper = _Tracker(tol), _Tracker(tol)
    lower_sq, lower_plain = _Tracker(tol), _Tracker(tol)
    both = _Tracker(tol)
    sp = f.space
    for x, y in _pairs(f, rng, n_samples):
        gx, gy = f.grad(x), f.grad(y)
        fx, fy = f(x), f(y)
        dist = sp.norm(x - y)
        dg = sp.norm(gx - gy)
        wit = lambda x=x, y=y: {"x": _pj(f, x), "y": _pj(f, y)}
        r1 = sigma * dist - dg
        bregman = fy - fx - sp.inner(gx, y - x)
        r2 = 0.5 * sigma * dist * dist - bregman
        lip.add(r1, wit)
        upper.add(r2, wit)
        both.add(min(r1, r2), wit)
        if f.has(CONVEX):
            lower_sq.add(bregman - dg * dg / (2 * sigma), wit)
            lower_plain.add(bregman - dg / (2 * sigma), wit)
    details = {
        "sigma": sigma,
        "lipschitz_worst": lip.worst,
        "upper_bound_worst": upper.worst,
    }
    if f.has(CONVEX):
        details["lower_bound_squared_worst"] = lower_sq.worst
        details["lower_bound_unsquared_worst"] = lower_plain.worst
        details["lower_bound_squared_holds"] = lower_sq.ok
        details["lower_bound_unsquared_holds"] = lower_plain.ok
    return both.verdict(seed, 0, details)


def legendre_conjugate(
    f: FunctionModel,
    x_star,
    search_box,
    grid_per_axis: int = 41,
    embed: Callable[[np.ndarray], np.ndarray] | None = None,
    refine_iters: int = 40,
) -> float:
    """Lower bound of ``sup_x <x*, x> - f(x)`` by grid search plus golden-section refinement.

    ``search_box = (lo, hi)`` bounds the search parameters; ``embed`` maps a
    parameter vector to a point of ``f``'s space (default: identity), which
    allows searching over affine slices such as the simplex.
    """
    lo = np.atleast_1d(np.asarray(search_box[0], dtype=float))
    hi = np.atleast_1d(np.asarray(search_box[1], dtype=float))
    x_star = np.asarray(x_star, dtype=float)
    to_point = embed if embed is not None else (lambda t: t)

    def objective(t):
        x = np.asarray(to_point(t), dtype=float)
        if not f.contains(x):
            return -math.inf
        return f.space.inner(x_star, x) - f(x)

    axes = [np.linspace(a, b, grid_per_axis + 2)[1:-1] for a, b in zip(lo, hi)]
    mesh = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, lo.size)
    vals = np.array([objective(t) for t in mesh])
    k = int(np.argmax(vals))
    best_val = float(vals[k])
    if not np.isfinite(best_val):
        raise EmptyDomainError("no grid point of the search box lies in the domain")
    best = mesh[k].copy()

    spacing = (hi - lo) / (grid_per_axis + 1)
    a = np.maximum(best - spacing, lo)
    b = np.minimum(best + spacing, hi)
    for _ in range(refine_iters):
        for i in range(lo.size):
            c = b[i] - GOLDEN * (b[i] - a[i])
            d = a[i] + GOLDEN * (b[i] - a[i])
            tc, td = best.copy(), best.copy()
            tc[i], td[i] = c, d
            vc, vd = objective(tc), objective(td)
            if vc >= vd:
                b[i] = d
                cand, val = tc, vc
            else:
                a[i] = c
                cand, val = td, vd
            if val > best_val:
                best_val, best = val, cand
    return best_val


def box_increment(f: FunctionModel, base, i: int, j: int, vi: float, wi: float, vj: float, wj: float) -> float:
    """Mixed second difference of ``f`` over the box ``[vi, wi] x [vj, wj]`` in axes i, j."""
    if f.space.is_matrix:
        raise CapabilityError("box increments need a coordinate space")
    if i == j:
        raise ValueError("axes must differ")
    if vi == wi or vj == wj:
        raise DegenerateBoxError("box has an empty side")
    if vi > wi or vj > wj:
        raise ValueError("box sides must satisfy v < w")
    u = np.array(base, dtype=float)

    def corner(a, b):
        p = u.copy()
        p[i], p[j] = a, b
        return f(f.require(p))

    return corner(vi, vj) - corner(vi, wj) - corner(wi, vj) + corner(wi, wj)


def check_2box_monotone(
    f: FunctionModel,
    n_samples: int = 1000,
    seed: int = 0,
    tol: float = 1e-9,
    box=None,
) -> ClassVerdict:
    """All sampled axis-parallel 2-box increments are nonnegative."""
    d = f.space.ambient_dim
    if f.space.is_matrix or d < 2:
        raise CapabilityError("2-box monotonicity needs a coordinate space of dimension >= 2")
    rng = np.random.default_rng(seed)
    lo, hi = f.sampling_box() if box is None else (np.asarray(box[0], float), np.asarray(box[1], float))
    track = _Tracker(tol)
    skipped = 0
    for _ in range(n_samples):
        u = rng.uniform(lo, hi)
        i, j = sorted(rng.choice(d, 2, replace=False))
        vi, wi = np.sort(rng.uniform(lo[i], hi[i], 2))
        vj, wj = np.sort(rng.uniform(lo[j], hi[j], 2))
        if vi == wi or vj == wj:
            skipped += 1
            continue
        try:
            inc = box_increment(f, u, i, j, vi, wi, vj, wj)
        except DomainError:
            skipped += 1
            continue
        track.add(inc, lambda u=u, i=i, j=j, vi=vi, wi=wi, vj=vj, wj=wj: {
            "base": u.tolist(), "i": int(i), "j": int(j),
            "vi": float(vi), "wi": float(wi), "vj": float(vj), "wj": float(wj),
        })
    if track.count == 0:
        raise EmptyDomainError("no sampled box fit in the domain")
    return track.verdict(seed, skipped)


def check_isotone(
    f: FunctionModel,
    n_samples: int = 1000,
    seed: int = 0,
    tol: float = 1e-9,
    extra_pairs: Sequence | None = None,
) -> ClassVerdict:
    """Gradient-in-cone test at sampled points and direct test ``f(x) <= f(y)`` on pairs ``x <= y``.

    Without any gradient path the first test is skipped and noted in
    ``details``; the pair test always runs.
    """
    rng = np.random.default_rng(seed)
    grad_track, pair_track = _Tracker(tol), _Tracker(tol)
    if f.has_gradient:
        for a in f.sample_points(rng, n_samples):
            grad_track.add(cone_slack(f.space, f.grad(a)), lambda a=a: {"test": "gradient", "a": _pj(f, a)})
    for x, y in _pairs(f, rng, n_samples, extra_pairs, comparable=True):
        pair_track.add(f(y) - f(x), lambda x=x, y=y: {"test": "pair", "x": _pj(f, x), "y": _pj(f, y)})
    details = {
        "gradient_test": "skipped" if not f.has_gradient else ("pass" if grad_track.ok else "fail"),
        "gradient_worst": grad_track.worst if grad_track.count else None,
        "pair_test": "pass" if pair_track.ok else "fail",
        "pair_worst": pair_track.worst,
    }
    return _merge(seed, details, grad_track, pair_track)


def check_isotone_differential(
    f: FunctionModel,
    n_samples: int = 1000,
    seed: int = 0,
    tol: float = 1e-9,
    extra_pairs: Sequence | None = None,
    hessian_tol: float | None = None,
) -> ClassVerdict:
    """Second-derivative sign test plus the direct test ``grad f(x) <= grad f(y)`` for ``x <= y``.

    For functions claiming convexity only the mixed partials must be
    nonnegative; otherwise every second partial.  The Hessian test runs on
    R^N spaces only.
    """
    _need_gradient(f)
    rng = np.random.default_rng(seed)
    htol = tol if hessian_tol is None else hessian_tol
    hess_track, pair_track = _Tracker(htol), _Tracker(tol)
    for x, y in _pairs(f, rng, n_samples, extra_pairs, comparable=True):
        slack = cone_slack(f.space, f.grad(y) - f.grad(x))
        pair_track.add(slack, lambda x=x, y=y: {"test": "pair", "x": _pj(f, x), "y": _pj(f, y)})
    if not f.space.is_matrix:
        convex = f.has(CONVEX)
        d = f.space.ambient_dim
        off = ~np.eye(d, dtype=bool)
        for a in f.sample_points(rng, n_samples):
            h = f.hess(a)
            if convex:
                val = float(np.min(h[off])) if d > 1 else 0.0
            else:
                val = float(np.min(h))
            hess_track.add(val, lambda a=a: {"test": "hessian", "a": _pj(f, a)})
    details = {
        "hessian_test": "skipped" if f.space.is_matrix else ("pass" if hess_track.ok else "fail"),
        "hessian_worst": hess_track.worst if hess_track.count else None,
        "criterion": "mixed" if f.has(CONVEX) else "all",
        "pair_test": "pass" if pair_track.ok else "fail",
        "pair_worst": pair_track.worst,
    }
    return _merge(seed, details, pair_track, hess_track)


def _merge(seed, details, *tracks: _Tracker) -> ClassVerdict:
    used = [t for t in tracks if t.count]
    worst = min((t.worst for t in used), default=0.0)
    witness = next((t.witness for t in used if t.witness is not None), None)
    return ClassVerdict(
        holds=all(t.ok for t in used),
        worst_residual=float(worst),
        samples_tested=sum(t.count for t in used),
        witness=witness,
        seed=seed,
        details=details,
    )


def check_increasing_increments(
    f: FunctionModel,
    n_samples: int = 1000,
    seed: int = 0,
    tol: float = 1e-9,
) -> ClassVerdict:
    """``f(x + z) - f(x) <= f(y + z) - f(y)`` for ``x <= y``, ``z > 0`` (one variable)."""
    if f.space.ambient_dim != 1:
        raise CapabilityError("increasing increments are a one-variable property")
    rng = np.random.default_rng(seed)
    lo, hi = f.sampling_box()
    track = _Tracker(tol)
    skipped = 0
    for _ in range(n_samples):
        x, y, top = np.sort(rng.uniform(lo[0], hi[0], 3))
        z = top - y
        if z <= 0:
            skipped += 1
            continue
        p = lambda v: np.array([v])
        res = (f(p(y + z)) - f(p(y))) - (f(p(x + z)) - f(p(x)))
        track.add(res, lambda x=x, y=y, z=z: {"x": float(x), "y": float(y), "z": float(z)})
    return track.verdict(seed, skipped)
