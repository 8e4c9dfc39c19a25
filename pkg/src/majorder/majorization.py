"""Discrete measures and the majorization relations between them.

The vector relations compare two measures with the same weights
``lambda_1..lambda_N``:

* ``ldown`` / ``wldown``: the left support x_1 >= ... >= x_N is a decreasing
  chain and the weighted prefix sums of x are dominated by those of y;
* ``rup`` / ``wrup``: the right support y_1 <= ... <= y_N is increasing, same
  prefix condition.

The non-weak forms also require equal barycenters.  ``hlp`` / ``whlp`` are the
classical scalar relations on decreasing rearrangements.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import ChainViolationError, DimensionError, WeightMismatchError
from .order import (
    DEFAULT_TOL,
    Direction,
    OrderedSpace,
    Tolerance,
    cone_slack,
    first_chain_break,
    point_from_json,
    point_to_json,
)

WEIGHT_TOL = 1e-12


class Relation(str, enum.Enum):
    HLP = "hlp"
    WHLP = "whlp"
    LDOWN = "ldown"
    WLDOWN = "wldown"
    RUP = "rup"
    WRUP = "wrup"

    @property
    def weak(self) -> bool:
        return self.value.startswith("w")

    @property
    def strong(self) -> "Relation":
        return Relation(self.value.lstrip("w"))

    @property
    def is_down(self) -> bool:
        return self.strong is Relation.LDOWN

    @property
    def is_up(self) -> bool:
        return self.strong is Relation.RUP


@dataclass(frozen=True)
class DiscreteMeasure:
    """``sum_k weights[k] * delta(support[k])`` on an ordered space."""

    space: OrderedSpace
    weights: np.ndarray
    support: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float).reshape(-1)
        pts = np.asarray(self.support, dtype=float)
        if pts.ndim == 1:
            pts = pts.reshape(-1, 1) if self.space.ambient_dim == 1 else pts.reshape(1, -1)
        if pts.shape != (w.size, self.space.ambient_dim):
            raise DimensionError(
                f"support shape {pts.shape} does not match {w.size} weights in "
                f"{self.space.describe()}"
            )
        if w.size == 0:
            raise DimensionError("a measure needs at least one atom")
        if np.any(w <= 0) or np.any(w > 1):
            raise ValueError("weights must lie in (0, 1]")
        if abs(w.sum() - 1.0) > WEIGHT_TOL:
            raise ValueError(f"weights sum to {w.sum()!r}, not 1")
        if not np.all(np.isfinite(pts)):
            raise ValueError("support points must be finite")
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "support", pts)

    @classmethod
    def uniform(cls, space: OrderedSpace, support) -> "DiscreteMeasure":
        pts = np.asarray(support, dtype=float)
        n = pts.shape[0]
        return cls(space, np.full(n, 1.0 / n), pts)

    def __len__(self) -> int:
        return self.weights.size

    def barycenter(self) -> np.ndarray:
        return self.weights @ self.support

    def to_json(self) -> dict:
        return {
            "space": self.space.to_json(),
            "weights": [float(v) for v in self.weights],
            "support": [point_to_json(self.space, p) for p in self.support],
        }

    @classmethod
    def from_json(cls, data: dict, space: OrderedSpace | None = None) -> "DiscreteMeasure":
        space = OrderedSpace.from_json(data["space"]) if "space" in data else space
        if space is None:
            raise ValueError("measure JSON needs a space")
        pts = np.array([point_from_json(space, p) for p in data["support"]])
        return cls(space, np.asarray(data["weights"], dtype=float), pts)


@dataclass
class MajorizationVerdict:
    holds: bool
    relation: Relation
    prefix_slacks: list[float] = field(default_factory=list)
    failing_index: int | None = None
    equality_defect: float = 0.0
    chain_ok: bool = True

    def to_json(self) -> dict:
        return {
            "holds": self.holds,
            "relation": self.relation.value,
            "prefix_slacks": [float(s) for s in self.prefix_slacks],
            "failing_index": self.failing_index,
            "equality_defect": float(self.equality_defect),
            "chain_ok": self.chain_ok,
        }


def check_hlp(x, y, weak: bool = False, tol=None) -> MajorizationVerdict:
    """Classical majorization of real vectors by prefix sums of x and y sorted descending."""
    x = np.asarray(x, dtype=float).reshape(-1)
    y = np.asarray(y, dtype=float).reshape(-1)
    if x.shape != y.shape:
        raise DimensionError(f"lengths differ: {x.size} vs {y.size}")
    if x.size == 0:
        raise DimensionError("empty vectors")
    tol = Tolerance.of(tol)
    # stable sort; ties cannot change prefix sums
    xs = -np.sort(-x, kind="stable")
    ys = -np.sort(-y, kind="stable")
    px, py = np.cumsum(xs), np.cumsum(ys)
    slacks = py - px
    scale = max(float(np.max(np.abs(px))), float(np.max(np.abs(py))))
    thr = tol.threshold(scale)
    defect = abs(float(slacks[-1]))
    failing = None
    bad = np.nonzero(slacks < -thr)[0]
    if bad.size:
        failing = int(bad[0])
    elif not weak and defect > thr:
        failing = x.size - 1
    return MajorizationVerdict(
        holds=failing is None,
        relation=Relation.WHLP if weak else Relation.HLP,
        prefix_slacks=slacks.tolist(),
        failing_index=failing,
        equality_defect=defect,
    )


def hinge_family_test(x, y, weak: bool = False) -> bool:
    """Is ``sum f(x_k) <= sum f(y_k)`` for every test function of the family?

    The family is ``t -> max(t - c, 0)`` over c in the merged support, plus
    ``t`` and (unless ``weak``) ``-t``.  Exact on integer data, so callers
    comparing against :func:`check_hlp` should use integer or dyadic inputs.
    """
    x = np.asarray(x, dtype=float).reshape(-1)
    y = np.asarray(y, dtype=float).reshape(-1)
    for c in np.union1d(x, y):
        if np.maximum(x - c, 0).sum() > np.maximum(y - c, 0).sum():
            return False
    if x.sum() > y.sum():
        return False
    if not weak and -x.sum() > -y.sum():
        return False
    return True


def _check_same_weights(mu: DiscreteMeasure, nu: DiscreteMeasure) -> None:
    if mu.space != nu.space:
        raise DimensionError(f"measures live in {mu.space.describe()} and {nu.space.describe()}")
    if len(mu) != len(nu):
        raise WeightMismatchError(f"measures have {len(mu)} and {len(nu)} atoms")
    if np.max(np.abs(mu.weights - nu.weights)) > WEIGHT_TOL:
        raise WeightMismatchError("majorized measures must share their weights")


def _prefix_verdict(space, weights, xs, ys, relation: Relation, tol: Tolerance) -> MajorizationVerdict:
    px = np.cumsum(weights[:, None] * xs, axis=0)
    py = np.cumsum(weights[:, None] * ys, axis=0)
    diffs = py - px
    slacks = [cone_slack(space, d) for d in diffs]
    scale = max(max(space.norm(p) for p in px), max(space.norm(p) for p in py))
    thr = tol.threshold(scale)
    defect = space.norm(diffs[-1])
    failing = next((k for k, s in enumerate(slacks) if s < -thr), None)
    if failing is None and not relation.weak and defect > thr:
        failing = len(slacks) - 1
    return MajorizationVerdict(
        holds=failing is None,
        relation=relation,
        prefix_slacks=slacks,
        failing_index=failing,
        equality_defect=defect,
    )


def _check_vector_relation(mu, nu, relation: Relation, tol) -> MajorizationVerdict:
    _check_same_weights(mu, nu)
    tol = Tolerance.of(tol)
    space = mu.space
    if relation.is_down:
        chain, direction, side = mu.support, Direction.DECREASING, "left"
    else:
        chain, direction, side = nu.support, Direction.INCREASING, "right"
    broken = first_chain_break(space, chain, direction, tol)
    if broken is not None:
        verdict = MajorizationVerdict(
            holds=False, relation=relation, failing_index=broken, chain_ok=False
        )
        raise ChainViolationError(
            f"{side} support is not {direction.value} at link {broken}->{broken + 1}",
            verdict,
        )
    return _prefix_verdict(space, mu.weights, mu.support, nu.support, relation, tol)


def check_L_down(mu: DiscreteMeasure, nu: DiscreteMeasure, weak: bool = False, tol=None) -> MajorizationVerdict:
    return _check_vector_relation(mu, nu, Relation.WLDOWN if weak else Relation.LDOWN, tol)


def check_R_up(mu: DiscreteMeasure, nu: DiscreteMeasure, weak: bool = False, tol=None) -> MajorizationVerdict:
    return _check_vector_relation(mu, nu, Relation.WRUP if weak else Relation.RUP, tol)


def check_relation(mu, nu, relation: Relation | str, tol=None) -> MajorizationVerdict:
    relation = Relation(relation)
    if relation in (Relation.HLP, Relation.WHLP):
        if mu.space.ambient_dim != 1:
            raise DimensionError("hlp compares real vectors")
        if np.max(np.abs(mu.weights - mu.weights[0])) > WEIGHT_TOL:
            raise WeightMismatchError("hlp is defined for uniform weights")
        return check_hlp(mu.support[:, 0], nu.support[:, 0], relation.weak, tol)
    return _check_vector_relation(mu, nu, relation, tol)


@dataclass(frozen=True)
class DoublyStochasticMatrix:
    entries: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.entries, dtype=float)
        if p.ndim != 2 or p.shape[0] != p.shape[1]:
            raise DimensionError("doubly stochastic matrix must be square")
        if np.any(p < -WEIGHT_TOL):
            raise ValueError("entries must be nonnegative")
        if np.max(np.abs(p.sum(axis=0) - 1)) > WEIGHT_TOL or np.max(np.abs(p.sum(axis=1) - 1)) > WEIGHT_TOL:
            raise ValueError("rows and columns must sum to 1")
        object.__setattr__(self, "entries", p)

    @classmethod
    def uniform(cls, n: int) -> "DoublyStochasticMatrix":
        return cls(np.full((n, n), 1.0 / n))

    @classmethod
    def random(cls, n: int, rng: np.random.Generator, n_perms: int = 4) -> "DoublyStochasticMatrix":
        """Random convex combination of permutation matrices (Birkhoff)."""
        coeffs = rng.dirichlet(np.ones(n_perms))
        p = np.zeros((n, n))
        for c in coeffs:
            p[np.arange(n), rng.permutation(n)] += c
        return cls(p)


def apply_doubly_stochastic(P: DoublyStochasticMatrix, points) -> np.ndarray:
    pts = np.asarray(points, dtype=float)
    if pts.ndim == 1:
        pts = pts[:, None]
    if pts.shape[0] != P.entries.shape[0]:
        raise DimensionError(f"{pts.shape[0]} points for a {P.entries.shape[0]}x{P.entries.shape[0]} matrix")
    return P.entries @ pts


def verify_ostrowski(P: DoublyStochasticMatrix, space: OrderedSpace, nu_points, tol=None) -> MajorizationVerdict:
    """Check that ``(1/N) sum delta(P y)`` is L-down majorized by ``(1/N) sum delta(y)``.

    Raises :class:`ChainViolationError` when the image is not decreasing; that
    case is outside the statement and means "not applicable", not "refuted".
    """
    y = np.asarray(nu_points, dtype=float).reshape(len(nu_points), space.ambient_dim)
    broken = first_chain_break(space, y, Direction.DECREASING, tol)
    if broken is not None:
        raise ChainViolationError(f"input chain is not decreasing at link {broken}")
    x = apply_doubly_stochastic(P, y)
    nu = DiscreteMeasure.uniform(space, y)
    mu = DiscreteMeasure(space, nu.weights, x)
    return check_L_down(mu, nu, weak=False, tol=tol)
