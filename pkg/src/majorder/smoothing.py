"""Smooth approximation by a strongly convex shift and a mollifier.

``mollify`` evaluates ``sum_j w_j * (f(x - y_j) + eps * |x - y_j|^2)`` over a
tensor grid of nodes ``y_j`` in ``[-h, h]^N`` weighted by the standard bump
``exp(-1 / (1 - (y/h)^2))``.  Being a convex combination of translates, the
sum keeps every property that is stable under translation and convex
combination (2-box monotonicity, eps-strong convexity, isotonicity) exactly,
up to rounding.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, replace

import numpy as np

from .convex import check_2box_monotone, check_omega_convex
from .errors import DomainError
from .models import CONVEX, ISOTONE, STRONGLY_CONVEX, TWO_BOX_MONOTONE, FunctionModel, Modulus


@dataclass(frozen=True)
class MollifierSpec:
    """Bandwidth ``h``, nodes per axis ``q`` (odd), shift ``epsilon`` and target box ``K``.

    ``epsilon="auto"`` picks ``1e-3 / diam(K)``.
    """

    bandwidth: float
    box: tuple
    epsilon: float | str = 0.0
    nodes_per_axis: int = 5

    def __post_init__(self):
        if not self.bandwidth > 0:
            raise ValueError("bandwidth must be positive")
        if self.nodes_per_axis < 3 or self.nodes_per_axis % 2 == 0:
            raise ValueError("nodes_per_axis must be odd and at least 3")
        lo, hi = (np.atleast_1d(np.asarray(b, dtype=float)) for b in self.box)
        if lo.shape != hi.shape or np.any(hi <= lo):
            raise ValueError("box must satisfy lo < hi")
        object.__setattr__(self, "box", (lo, hi))
        if self.epsilon == "auto":
            object.__setattr__(self, "epsilon", 1e-3 / float(np.linalg.norm(hi - lo)))
        elif float(self.epsilon) < 0:
            raise ValueError("epsilon must be nonnegative")
        else:
            object.__setattr__(self, "epsilon", float(self.epsilon))


def bump_nodes(h: float, q: int, dim: int) -> tuple[np.ndarray, np.ndarray]:
    """Tensor quadrature nodes and normalised weights for the bump on ``[-h, h]^dim``."""
    u = np.linspace(-1.0, 1.0, q + 2)[1:-1]
    w1 = np.exp(-1.0 / (1.0 - u * u))
    w1 /= w1.sum()
    nodes = np.array(list(itertools.product(h * u, repeat=dim)))
    weights = np.array([math.prod(c) for c in itertools.product(w1, repeat=dim)])
    weights /= weights.sum()
    return nodes, weights


def mollify(f: FunctionModel, spec: MollifierSpec) -> FunctionModel:
    """Smooth approximant of ``f + eps |.|^2`` valid on ``spec.box``."""
    if f.space.is_matrix:
        raise DomainError("mollification is implemented for coordinate spaces")
    lo, hi = spec.box
    dim = f.space.ambient_dim
    if lo.size != dim:
        raise DomainError(f"box has dimension {lo.size}, function has {dim}")
    h = spec.bandwidth
    if f.domain_box is not None:
        flo, fhi = f.domain_box
        inside = np.all(lo - h >= flo) and np.all(hi + h <= fhi) if f.closed_box else (
            np.all(lo - h > flo) and np.all(hi + h < fhi)
        )
        if not inside:
            raise DomainError("box expanded by the bandwidth leaves the function's domain")
    nodes, weights = bump_nodes(h, spec.nodes_per_axis, dim)
    eps = spec.epsilon
    inner = f.eval

    def ev(x):
        shifted = x - nodes
        total = 0.0
        for wj, p in zip(weights, shifted):
            total += wj * (inner(p) + eps * float(p @ p))
        return total

    claims = {c for c in f.claims if c in (CONVEX, TWO_BOX_MONOTONE, ISOTONE)}
    if eps > 0 and CONVEX in f.claims:
        claims.add(STRONGLY_CONVEX)
    return FunctionModel(
        name=f"mollified({f.name},h={h:g},eps={eps:g})",
        space=f.space,
        eval=ev,
        domain_box=(lo, hi),
        closed_box=True,
        claims=frozenset(claims),
        constants={"alpha": 2 * eps} if eps > 0 else {},
        differentiable=True,
        fd_step=1e-5,
    )


def shifted(f: FunctionModel, epsilon: float) -> FunctionModel:
    """``f + eps |.|^2`` (the target the mollified model converges to)."""
    inner = f.eval
    return replace(
        f,
        name=f"{f.name}+{epsilon:g}|x|^2",
        eval=lambda x: inner(x) + epsilon * float(x @ x),
        gradient=None if f.gradient is None else (lambda x, g=f.gradient: g(x) + 2 * epsilon * x),
        hessian=None,
    )


def uniform_error(f: FunctionModel, g: FunctionModel, box, grid_per_axis: int = 41) -> float:
    """``max |f - g|`` over a tensor grid of the box (faces included)."""
    lo, hi = (np.atleast_1d(np.asarray(b, dtype=float)) for b in box)
    axes = [np.linspace(a, b, grid_per_axis) for a, b in zip(lo, hi)]
    worst = 0.0
    for p in itertools.product(*axes):
        x = np.array(p)
        worst = max(worst, abs(f(x) - g(x)))
    return worst


def convergence_bound(lipschitz: float, h: float, epsilon: float, box) -> float:
    """``Lip * h * sqrt(N) + eps * max_K (2 h |x| + h^2)`` bound on the mollifier error."""
    lo, hi = (np.atleast_1d(np.asarray(b, dtype=float)) for b in box)
    n = lo.size
    far = float(np.linalg.norm(np.maximum(np.abs(lo), np.abs(hi))))
    return lipschitz * h * math.sqrt(n) + epsilon * (2 * h * far * math.sqrt(n) + n * h * h)


def lipschitz_estimate(f: FunctionModel, box, grid_per_axis: int = 21) -> float:
    """Euclidean Lipschitz bound from the steepest axis slopes on a tensor grid."""
    lo, hi = (np.atleast_1d(np.asarray(b, dtype=float)) for b in box)
    axes = [np.linspace(a, b, grid_per_axis) for a, b in zip(lo, hi)]
    vals = np.array([f(np.array(p)) for p in itertools.product(*axes)]).reshape([grid_per_axis] * lo.size)
    slopes = [float(np.max(np.abs(np.diff(vals, axis=k)))) / (ax[1] - ax[0]) for k, ax in enumerate(axes)]
    return float(np.linalg.norm(slopes))


def smoothing_report(f: FunctionModel, spec: MollifierSpec, n_samples: int = 500, seed: int = 0, tol: float = 1e-10, grid_per_axis: int = 21) -> dict:
    """Mollify and measure what survives: box increments, strong convexity, distance."""
    g = mollify(f, spec)
    out = {
        "function": f.name,
        "bandwidth": spec.bandwidth,
        "epsilon": spec.epsilon,
        "nodes_per_axis": spec.nodes_per_axis,
        "box": [spec.box[0].tolist(), spec.box[1].tolist()],
    }
    if f.space.ambient_dim >= 2:
        out["two_box"] = check_2box_monotone(g, n_samples, seed, tol).to_json()
    if spec.epsilon > 0:
        out["omega_convex"] = check_omega_convex(g, Modulus.quadratic(2 * spec.epsilon), n_samples, seed, tol).to_json()
    err = uniform_error(shifted(f, spec.epsilon), g, spec.box, grid_per_axis)
    lip = lipschitz_estimate(f, spec.box)
    bound = convergence_bound(lip, spec.bandwidth, spec.epsilon, spec.box)
    out.update(uniform_error=err, lipschitz=lip, bound=bound, within_bound=bool(err <= bound))
    return out
