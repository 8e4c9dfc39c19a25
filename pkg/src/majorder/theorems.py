"""Verifiers for the vector majorization inequalities and their applications.

Every verifier returns an :class:`InequalityReport` whose ``residual`` is
``lhs - rhs`` with the inequality read as ``lhs >= rhs``; a report holds when
the residual clears ``-tol``.  Hypotheses on the *instance* (majorization,
orderings) are hard preconditions.  Hypotheses on the *function* (claims such
as ``isotone_differential``) only produce advisories, because the necessity
experiments deliberately run on functions that break them.

Right-chain (``rup``) conclusions are stated with the roles of the two
families exchanged: for an increasing right chain the Abel-summation argument
bounds ``sum lambda_k Phi(x_k)`` from below by ``sum lambda_k Phi(y_k)``.
"""

from __future__ import annotations

import enum
import hashlib
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import AmbiguousCaseError, CapabilityError, ChainViolationError, PreconditionError
from .majorization import DiscreteMeasure, Relation, check_relation
from .models import (
    ANTITONE,
    ANTITONE_DIFFERENTIAL,
    CONVEX,
    ISOTONE,
    ISOTONE_DIFFERENTIAL,
    SEMICONVEX,
    STRONGLY_SMOOTH,
    TWO_BOX_MONOTONE,
    FunctionModel,
    Modulus,
)
from .order import (
    Direction,
    OrderedSpace,
    Tolerance,
    cone_contains,
    cone_slack,
    eigvalsh_packed,
    first_chain_break,
    leq,
    packed_size_to_m,
    point_to_json,
)
from .zoo import Scalar, scalar


class Theorem(str, enum.Enum):
    T4_CONS1 = "T4_Cons1"
    T4_CONS2 = "T4_Cons2"
    T5_MAJ1SM = "T5_maj1sm"
    T5_MAJ2SM = "T5_maj2sm"
    T6 = "T6"
    T7_JENSEN_GAP = "T7_JensenGap"
    C1_PARALLELOGRAM = "C1_Parallelogram"
    R9_WEAK_PARALLELOGRAM = "R9_WeakParallelogram"
    T8_SZEGO_BELLMAN = "T8_SzegoBellman"
    T9_TRACE_FAMILY = "T9_TraceFamily"
    T10_POPOVICIU_A = "T10_Popoviciu_a"
    T10_POPOVICIU_B = "T10_Popoviciu_b"


@dataclass
class PrefixReport:
    n: int
    lhs: float
    rhs: float
    residual: float
    holds: bool

    def to_json(self) -> dict:
        return {"n": self.n, "lhs": self.lhs, "rhs": self.rhs, "residual": self.residual, "holds": self.holds}


@dataclass
class InequalityReport:
    theorem: Theorem
    lhs: float
    rhs: float
    residual: float
    holds: bool
    tol: float
    instance: dict
    prefix_reports: list[PrefixReport] | None = None
    advisories: list[str] = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def instance_digest(self) -> str:
        blob = json.dumps(self.instance, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()[:16]

    def to_json(self) -> dict:
        return {
            "theorem": self.theorem.value,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "residual": self.residual,
            "holds": self.holds,
            "tol": self.tol,
            "prefix_reports": None if self.prefix_reports is None else [p.to_json() for p in self.prefix_reports],
            "advisories": list(self.advisories),
            "details": self.details,
            "instance": self.instance,
            "instance_digest": self.instance_digest,
        }


def _threshold(tol, *values) -> float:
    scale = max((abs(v) for v in values), default=0.0)
    return Tolerance.of(tol).threshold(scale)


def _advise(f_claims, required, name: str, strict: bool) -> list[str]:
    missing = sorted(set(required) - set(f_claims))
    if missing and strict:
        raise CapabilityError(f"{name} does not claim {', '.join(missing)}")
    return [f"{name} does not claim {c}" for c in missing]


def _convexity_claims(w: Modulus) -> set[str]:
    if w.form == "negquad":
        return {SEMICONVEX}
    return {CONVEX}


def _eval_all(f: FunctionModel, pts) -> np.ndarray:
    return np.array([f(f.require(p)) for p in pts])


def _pj(space: OrderedSpace, pts) -> list:
    return [point_to_json(space, p) for p in pts]


def _confirm(mu: DiscreteMeasure, nu: DiscreteMeasure, relation: Relation, tol):
    try:
        verdict = check_relation(mu, nu, relation, tol)
    except ChainViolationError as exc:
        raise PreconditionError(str(exc), verdict=exc.verdict) from exc
    if not verdict.holds:
        raise PreconditionError(
            f"{relation.value} fails at prefix {verdict.failing_index + 1}", verdict=verdict
        )
    return verdict


def _measure_report(
    theorem: Theorem,
    f: FunctionModel,
    mu: DiscreteMeasure,
    nu: DiscreteMeasure,
    relation: Relation,
    big_side: str,
    penalty: np.ndarray,
    penalty_on_lhs: bool,
    tol,
    extra_instance: dict,
    advisories: list[str],
) -> InequalityReport:
    lam = mu.weights
    phi_x = _eval_all(f, mu.support)
    phi_y = _eval_all(f, nu.support)
    big, small = (phi_y, phi_x) if big_side == "y" else (phi_x, phi_y)
    lhs_terms = lam * (big + penalty) if penalty_on_lhs else lam * big
    rhs_terms = lam * small if penalty_on_lhs else lam * (small + penalty)
    lhs_c, rhs_c = np.cumsum(lhs_terms), np.cumsum(rhs_terms)
    prefixes = None
    if relation.weak:
        prefixes = []
        for n in range(len(lam)):
            lo, ro = float(lhs_c[n]), float(rhs_c[n])
            prefixes.append(PrefixReport(n + 1, lo, ro, lo - ro, lo - ro >= -_threshold(tol, lo, ro)))
    lhs, rhs = float(lhs_c[-1]), float(rhs_c[-1])
    residual = lhs - rhs
    holds = residual >= -_threshold(tol, lhs, rhs)
    if prefixes is not None:
        holds = all(p.holds for p in prefixes)
    instance = {
        "function": f.name,
        "relation": relation.value,
        "space": mu.space.to_json(),
        "weights": [float(v) for v in lam],
        "x": _pj(mu.space, mu.support),
        "y": _pj(mu.space, nu.support),
        **extra_instance,
    }
    return InequalityReport(
        theorem=theorem,
        lhs=lhs,
        rhs=rhs,
        residual=residual,
        holds=bool(holds),
        tol=_threshold(tol, lhs, rhs),
        instance=instance,
        prefix_reports=prefixes,
        advisories=advisories,
        details={
            "phi_x": phi_x.tolist(),
            "phi_y": phi_y.tolist(),
            "penalty": [float(v) for v in penalty],
            "weighted_phi_x": float(lam @ phi_x),
            "weighted_phi_y": float(lam @ phi_y),
        },
    )


def _distances(mu: DiscreteMeasure, nu: DiscreteMeasure) -> np.ndarray:
    return np.array([mu.space.norm(a - b) for a, b in zip(mu.support, nu.support)])


def verify_T4(
    f: FunctionModel,
    w: Modulus,
    mu: DiscreteMeasure,
    nu: DiscreteMeasure,
    relation: Relation | str = Relation.LDOWN,
    tol=1e-9,
    strict_claims: bool = False,
) -> InequalityReport:
    """Majorization inequality for omega-convex functions with isotone differential.

    ``ldown``: ``sum lam Phi(y) >= sum lam Phi(x) + sum lam w(|x - y|)``;
    ``rup``: the same with x and y exchanged.  Weak relations report every
    prefix ``n``.
    """
    relation = Relation(relation)
    if relation.strong not in (Relation.LDOWN, Relation.RUP):
        raise ValueError("T4 takes ldown, wldown, rup or wrup")
    required = {ISOTONE_DIFFERENTIAL} | _convexity_claims(w)
    if relation is Relation.WLDOWN:
        required.add(ISOTONE)
    elif relation is Relation.WRUP:
        # the boundary term -dPhi(y_N) D_N needs dPhi <= 0
        required.add(ANTITONE)
    advisories = _advise(f.claims, required, f.name, strict_claims)
    _confirm(mu, nu, relation, tol)
    penalty = np.array([w(d) for d in _distances(mu, nu)])
    return _measure_report(
        Theorem.T4_CONS2 if relation.weak else Theorem.T4_CONS1,
        f, mu, nu, relation,
        big_side="y" if relation.is_down else "x",
        penalty=penalty,
        penalty_on_lhs=False,
        tol=tol,
        extra_instance={"modulus": w.describe()},
        advisories=advisories,
    )


def verify_T5(
    f: FunctionModel,
    sigma: float | None,
    mu: DiscreteMeasure,
    nu: DiscreteMeasure,
    relation: Relation | str = Relation.LDOWN,
    tol=1e-9,
    strict_claims: bool = False,
) -> InequalityReport:
    """Dual inequality for sigma-smooth functions with antitone differential.

    ``ldown``: ``sum lam Phi(x) + sigma/2 sum lam |x - y|^2 >= sum lam Phi(y)``;
    ``rup``: the same with x and y exchanged.
    """
    relation = Relation(relation)
    if relation.strong not in (Relation.LDOWN, Relation.RUP):
        raise ValueError("T5 takes ldown, wldown, rup or wrup")
    if sigma is None:
        if "sigma" not in f.constants:
            raise CapabilityError(f"{f.name} has no smoothness constant; pass sigma")
        sigma = float(f.constants["sigma"])
    if sigma < 0:
        raise ValueError("sigma must be nonnegative")
    required = {STRONGLY_SMOOTH, ANTITONE_DIFFERENTIAL}
    if relation is Relation.WLDOWN:
        required.add(ANTITONE)
    elif relation is Relation.WRUP:
        # boundary term -dPhi(y_N) D_N must be <= 0
        required.add(ISOTONE)
    advisories = _advise(f.claims, required, f.name, strict_claims)
    _confirm(mu, nu, relation, tol)
    penalty = 0.5 * sigma * _distances(mu, nu) ** 2
    report = _measure_report(
        Theorem.T5_MAJ1SM if relation.is_down else Theorem.T5_MAJ2SM,
        f, mu, nu, relation,
        big_side="x" if relation.is_down else "y",
        penalty=penalty,
        penalty_on_lhs=True,
        tol=tol,
        extra_instance={"sigma": float(sigma)},
        advisories=advisories,
    )
    report.details["smoothing_slack"] = float(mu.weights @ penalty)
    return report


def verify_T6(
    f: FunctionModel,
    mu: DiscreteMeasure,
    nu: DiscreteMeasure,
    relation: Relation | str = Relation.LDOWN,
    tol=1e-9,
    strict_claims: bool = False,
) -> InequalityReport:
    """Majorization inequality for 2-box monotone convex functions (no gradient used)."""
    relation = Relation(relation)
    if relation not in (Relation.LDOWN, Relation.RUP):
        raise ValueError("T6 takes ldown or rup")
    advisories = _advise(f.claims, {CONVEX, TWO_BOX_MONOTONE}, f.name, strict_claims)
    if f.space.is_matrix:
        advisories.append("box monotonicity is a coordinate notion; matrix space used as is")
    _confirm(mu, nu, relation, tol)
    return _measure_report(
        Theorem.T6, f, mu, nu, relation,
        big_side="y" if relation.is_down else "x",
        penalty=np.zeros(len(mu)),
        penalty_on_lhs=False,
        tol=tol,
        extra_instance={},
        advisories=advisories,
    )


def _require_links(space: OrderedSpace, links, tol) -> None:
    for name, lo, hi in links:
        if not leq(space, lo, hi, tol):
            raise PreconditionError(f"ordering link {name} is violated", detail=name)


def _pts(f: FunctionModel, *pts) -> list[np.ndarray]:
    out = []
    for p in pts:
        p = np.atleast_1d(np.asarray(p, dtype=float))
        f.space.check(p)
        out.append(p)
    return out


def gap(f: FunctionModel, p1, p2, lam: float) -> float:
    """Jensen gap ``(1-lam) Phi(p1) + lam Phi(p2) - Phi((1-lam) p1 + lam p2)``."""
    m = (1 - lam) * p1 + lam * p2
    return (1 - lam) * f(f.require(p1)) + lam * f(f.require(p2)) - f(f.require(m))


def verify_T7(f: FunctionModel, x1, x2, y1, y2, lam: float, tol=1e-9, strict_claims: bool = False) -> InequalityReport:
    """Jensen gap contraction: ``0 <= gap(x) <= gap(y)`` under the interval nesting."""
    if not 0 < lam < 1:
        raise ValueError("lambda must lie in (0, 1)")
    x1, x2, y1, y2 = _pts(f, x1, x2, y1, y2)
    advisories = _advise(f.claims, {CONVEX, ISOTONE_DIFFERENTIAL}, f.name, strict_claims)
    my = (1 - lam) * y1 + lam * y2
    _require_links(
        f.space,
        [("y2<=x2", y2, x2), ("x2<=m_y", x2, my), ("m_y<=x1", my, x1), ("x1<=y1", x1, y1)],
        tol,
    )
    gx, gy = gap(f, x1, x2, lam), gap(f, y1, y2, lam)
    residual = gy - gx
    thr = _threshold(tol, gx, gy)
    sp = f.space
    return InequalityReport(
        theorem=Theorem.T7_JENSEN_GAP,
        lhs=gy,
        rhs=gx,
        residual=residual,
        holds=bool(residual >= -thr and gx >= -thr),
        tol=thr,
        instance={
            "function": f.name,
            "space": sp.to_json(),
            "lambda": float(lam),
            "x1": point_to_json(sp, x1), "x2": point_to_json(sp, x2),
            "y1": point_to_json(sp, y1), "y2": point_to_json(sp, y2),
        },
        advisories=advisories,
        details={"gap_x": gx, "gap_y": gy, "gap_x_nonnegative": bool(gx >= -thr)},
    )


def verify_parallelogram(
    f: FunctionModel, x1, x2, y1, y2, variant: str = "equal", tol=1e-9, strict_claims: bool = False
) -> InequalityReport:
    """``Phi(x1) + Phi(x2) <= Phi(y1) + Phi(y2)``.

    ``equal``: ``y2 <= x2 <= x1 <= y1`` and ``x1 + x2 = y1 + y2``.
    ``weak_sum``: points in the cone, ``x2 <= x1 <= y1`` and ``x1 + x2 <= y1 + y2``;
    additionally wants ``Phi`` isotone.
    """
    x1, x2, y1, y2 = _pts(f, x1, x2, y1, y2)
    sp = f.space
    required = {CONVEX, ISOTONE_DIFFERENTIAL}
    if variant == "equal":
        theorem = Theorem.C1_PARALLELOGRAM
        _require_links(sp, [("y2<=x2", y2, x2), ("x2<=x1", x2, x1), ("x1<=y1", x1, y1)], tol)
        defect = sp.norm((x1 + x2) - (y1 + y2))
        scale = max(sp.norm(x1 + x2), sp.norm(y1 + y2))
        if defect > Tolerance.of(tol).threshold(scale):
            raise PreconditionError(f"midpoints differ by {defect:.3g}", detail="x1+x2=y1+y2")
    elif variant == "weak_sum":
        theorem = Theorem.R9_WEAK_PARALLELOGRAM
        required.add(ISOTONE)
        for name, p in (("x1", x1), ("x2", x2), ("y1", y1), ("y2", y2)):
            if not cone_contains(sp, p, tol):
                raise PreconditionError(f"{name} is not in the positive cone", detail=f"{name}>=0")
        _require_links(sp, [("x2<=x1", x2, x1), ("x1<=y1", x1, y1), ("x1+x2<=y1+y2", x1 + x2, y1 + y2)], tol)
    else:
        raise ValueError(f"unknown variant {variant!r}")
    advisories = _advise(f.claims, required, f.name, strict_claims)
    fy = f(f.require(y1)) + f(f.require(y2))
    fx = f(f.require(x1)) + f(f.require(x2))
    residual = fy - fx
    thr = _threshold(tol, fx, fy)
    return InequalityReport(
        theorem=theorem,
        lhs=fy,
        rhs=fx,
        residual=residual,
        holds=bool(residual >= -thr),
        tol=thr,
        instance={
            "function": f.name,
            "space": sp.to_json(),
            "variant": variant,
            "x1": point_to_json(sp, x1), "x2": point_to_json(sp, x2),
            "y1": point_to_json(sp, y1), "y2": point_to_json(sp, y2),
        },
        advisories=advisories,
    )


def verify_T8(
    f: FunctionModel, w: Modulus, chain, tol=1e-9, last_gap: bool = False, strict_claims: bool = False
) -> InequalityReport:
    """Alternating-sum inequality for a decreasing chain ``x_1 >= ... >= x_n >= 0``.

    The modulus sum runs over consecutive gaps ``k = 1..n-1``; ``last_gap=True``
    also adds ``w(|x_n|)`` (reading ``x_{n+1}`` as the origin).
    """
    pts = _pts(f, *chain)
    if not pts:
        raise PreconditionError("empty chain")
    sp = f.space
    broken = first_chain_break(sp, pts, Direction.DECREASING, tol)
    if broken is not None:
        raise PreconditionError(f"chain is not decreasing at link {broken + 1}", detail=broken)
    if not cone_contains(sp, pts[-1], tol):
        raise PreconditionError("last point of the chain is not >= 0", detail="x_n>=0")
    advisories = _advise(f.claims, {ISOTONE_DIFFERENTIAL} | _convexity_claims(w), f.name, strict_claims)
    signs = np.array([1.0 if k % 2 == 0 else -1.0 for k in range(len(pts))])
    s = sum(sg * p for sg, p in zip(signs, pts))
    zero = sp.zero()
    for name, p in (("origin", zero), ("alternating sum", s)):
        if not f.contains(p):
            raise PreconditionError(f"{name} is outside the domain of {f.name}", detail=name)
    lhs = (1 - signs.sum()) * f(zero) + sum(sg * f(p) for sg, p in zip(signs, pts))
    gaps = [sp.norm(pts[k] - pts[k + 1]) for k in range(len(pts) - 1)]
    if last_gap:
        gaps.append(sp.norm(pts[-1]))
    omega_sum = sum(w(g) for g in gaps) + w(sp.norm(s))
    rhs = f(s) + omega_sum
    residual = lhs - rhs
    thr = _threshold(tol, lhs, rhs)
    return InequalityReport(
        theorem=Theorem.T8_SZEGO_BELLMAN,
        lhs=float(lhs),
        rhs=float(rhs),
        residual=float(residual),
        holds=bool(residual >= -thr),
        tol=thr,
        instance={
            "function": f.name,
            "space": sp.to_json(),
            "modulus": w.describe(),
            "chain": _pj(sp, pts),
            "last_gap": last_gap,
        },
        advisories=advisories,
        details={"alternating_sum": point_to_json(sp, s), "omega_sum": float(omega_sum)},
    )


def trace_value(s: Scalar, p: np.ndarray) -> float:
    return float(np.sum(s.f(eigvalsh_packed(p))))


def verify_T9(f_scalar: Scalar | str, A, B, tol=1e-9) -> InequalityReport:
    """``sum tr f(A_k) <= sum tr f(B_k)`` for a decreasing nonnegative chain ``A``
    whose partial sums are dominated by those of ``B``.

    ``A`` and ``B`` hold packed symmetric matrices.
    """
    s = scalar(f_scalar) if isinstance(f_scalar, str) else f_scalar
    A = np.atleast_2d(np.asarray(A, dtype=float))
    B = np.atleast_2d(np.asarray(B, dtype=float))
    if A.shape != B.shape or A.shape[0] == 0:
        raise PreconditionError("A and B must be nonempty families of the same size")
    sp = OrderedSpace.loewner(packed_size_to_m(A.shape[1]))
    broken = first_chain_break(sp, A, Direction.DECREASING, tol)
    if broken is not None:
        raise PreconditionError(f"A is not decreasing at link {broken + 1}", detail=broken)
    if not cone_contains(sp, A[-1], tol):
        raise PreconditionError("A_n is not positive semidefinite", detail="A_n>=0")
    partial = np.cumsum(B - A, axis=0)
    for j, d in enumerate(partial):
        if not cone_contains(sp, d, tol):
            raise PreconditionError(
                f"partial sums fail at j={j + 1} (slack {cone_slack(sp, d):.3g})", detail={"j": j + 1}
            )
    advisories = []
    if not (s.nondecreasing and s.convex):
        advisories.append(f"{s.name} is not nondecreasing and convex")
    if not s.operator_monotone_derivative:
        advisories.append(f"{s.name}' is not operator monotone; trace {s.name} lacks an isotone differential")
    ta = [trace_value(s, a) for a in A]
    tb = [trace_value(s, b) for b in B]
    lhs, rhs = float(sum(tb)), float(sum(ta))
    residual = lhs - rhs
    thr = _threshold(tol, lhs, rhs)
    return InequalityReport(
        theorem=Theorem.T9_TRACE_FAMILY,
        lhs=lhs,
        rhs=rhs,
        residual=residual,
        holds=bool(residual >= -thr),
        tol=thr,
        instance={"scalar": s.name, "space": sp.to_json(), "A": _pj(sp, A), "B": _pj(sp, B)},
        advisories=advisories,
        details={"trace_A": ta, "trace_B": tb},
    )


_T10_COEFFS = {
    # (coefficient, which difference, divisor)
    "a": [(1 / 6, "x-y", 2), (1 / 6, "2z-x-y", 6), (1 / 3, "2y-x-z", 6), (1 / 3, "z-y", 2)],
    "b": [(1 / 3, "x-y", 2), (1 / 6, "2x-y-z", 6), (1 / 3, "2y-x-z", 6), (1 / 6, "z-y", 2)],
}


def popoviciu_case(space: OrderedSpace, x, y, z, tol=1e-9) -> str:
    """Which barycenter position applies: ``"a"`` (x >= b >= y) or ``"b"`` (y >= b >= z)."""
    b = (x + y + z) / 3
    if leq(space, b, x, tol) and leq(space, y, b, tol):
        return "a"
    if leq(space, b, y, tol) and leq(space, z, b, tol):
        return "b"
    raise AmbiguousCaseError("the barycenter sits in neither order interval", detail="barycenter")


def verify_T10(
    f: FunctionModel, w: Modulus, x, y, z, case: str = "auto", tol=1e-9, strict_claims: bool = False
) -> InequalityReport:
    """Popoviciu-type inequality for ``x >= y >= z``; ``case="auto"`` picks the applicable one."""
    x, y, z = _pts(f, x, y, z)
    sp = f.space
    _require_links(sp, [("y<=x", y, x), ("z<=y", z, y)], tol)
    found = popoviciu_case(sp, x, y, z, tol)
    if case == "auto":
        case = found
    elif case not in _T10_COEFFS:
        raise ValueError(f"case must be 'a', 'b' or 'auto', got {case!r}")
    elif case != found:
        b = (x + y + z) / 3
        ok = (leq(sp, b, x, tol) and leq(sp, y, b, tol)) if case == "a" else (
            leq(sp, b, y, tol) and leq(sp, z, b, tol)
        )
        if not ok:
            raise PreconditionError(f"barycenter position of case ({case}) fails", detail=case)
    advisories = _advise(f.claims, {ISOTONE_DIFFERENTIAL} | _convexity_claims(w), f.name, strict_claims)
    diffs = {
        "x-y": x - y, "z-y": z - y,
        "2z-x-y": 2 * z - x - y, "2y-x-z": 2 * y - x - z, "2x-y-z": 2 * x - y - z,
    }
    ev = lambda p: f(f.require(p))
    lhs = (ev(x) + ev(y) + ev(z)) / 3 + ev((x + y + z) / 3)
    omega_terms = [c * w(sp.norm(diffs[key]) / div) for c, key, div in _T10_COEFFS[case]]
    rhs = (2 / 3) * (ev((x + y) / 2) + ev((y + z) / 2) + ev((z + x) / 2)) + sum(omega_terms)
    residual = lhs - rhs
    thr = _threshold(tol, lhs, rhs)
    return InequalityReport(
        theorem=Theorem.T10_POPOVICIU_A if case == "a" else Theorem.T10_POPOVICIU_B,
        lhs=float(lhs),
        rhs=float(rhs),
        residual=float(residual),
        holds=bool(residual >= -thr),
        tol=thr,
        instance={
            "function": f.name,
            "space": sp.to_json(),
            "modulus": w.describe(),
            "case": case,
            "x": point_to_json(sp, x), "y": point_to_json(sp, y), "z": point_to_json(sp, z),
        },
        advisories=advisories,
        details={"omega_terms": [float(t) for t in omega_terms]},
    )


def geomean_counterexample() -> tuple[DiscreteMeasure, DiscreteMeasure]:
    """The two-atom L-down pair on which ``-2 sqrt(xy)`` breaks the majorization inequality."""
    sp = OrderedSpace.orthant_interior(2)
    w = np.array([0.5, 0.5])
    mu = DiscreteMeasure(sp, w, np.array([[1.5, 1.0], [0.5, 1.0]]))
    nu = DiscreteMeasure(sp, w, np.array([[2.0, 2.0], [0.0, 0.0]]))
    return mu, nu


GEOMEAN_RESIDUAL = -2.0 + math.sqrt(1.5) + math.sqrt(0.5)
