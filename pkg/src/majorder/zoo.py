"""Example functions with analytic derivatives and truth-labelled claims.

Claims are fixtures: the checkers in :mod:`majorder.convex` are expected to
confirm every claim and refute every disclaim on seeded samples.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable

import numpy as np

from .errors import DomainError
from .models import (
    ANTITONE,
    ANTITONE_DIFFERENTIAL,
    CONVEX,
    ISOTONE,
    ISOTONE_DIFFERENTIAL,
    STRONGLY_CONVEX,
    STRONGLY_SMOOTH,
    TWO_BOX_MONOTONE,
    FunctionModel,
)
from .order import OrderedSpace, eigvalsh_packed, sym_apply


@dataclass(frozen=True)
class Scalar:
    """A twice differentiable function of one real variable (numpy-vectorised)."""

    name: str
    f: Callable
    df: Callable
    d2f: Callable
    lo: float = -math.inf
    hi: float = math.inf
    convex: bool = True
    nondecreasing: bool = False
    # f' is operator monotone, so A <= B implies f'(A) <= f'(B) in the Loewner order
    operator_monotone_derivative: bool = False


def _xlogx(t):
    t = np.asarray(t, dtype=float)
    if np.any(t <= 0):
        raise DomainError("x log x needs x > 0")
    return t * np.log(t)


def _log_pos(t):
    t = np.asarray(t, dtype=float)
    if np.any(t <= 0):
        raise DomainError("log needs x > 0")
    return np.log(t)


def _sigmoid(t):
    return 0.5 * (1.0 + np.tanh(0.5 * np.asarray(t, dtype=float)))


SCALARS: dict[str, Scalar] = {
    s.name: s
    for s in [
        Scalar("square", lambda t: np.square(t), lambda t: 2.0 * np.asarray(t), lambda t: np.full_like(np.asarray(t, float), 2.0),
               operator_monotone_derivative=True),
        Scalar("half_square", lambda t: 0.5 * np.square(t), lambda t: np.asarray(t, float), lambda t: np.ones_like(np.asarray(t, float)),
               operator_monotone_derivative=True),
        Scalar("exp", np.exp, np.exp, np.exp, nondecreasing=True),
        Scalar("xlogx", _xlogx, lambda t: 1.0 + _log_pos(t), lambda t: 1.0 / np.asarray(t, float), lo=0.0,
               operator_monotone_derivative=True),
        Scalar("linear", lambda t: np.asarray(t, float), lambda t: np.ones_like(np.asarray(t, float)),
               lambda t: np.zeros_like(np.asarray(t, float)), nondecreasing=True,
               operator_monotone_derivative=True),
        Scalar("softplus", lambda t: np.logaddexp(0.0, t), _sigmoid,
               lambda t: _sigmoid(t) * (1.0 - _sigmoid(t)), nondecreasing=True),
        Scalar("pos_square", lambda t: np.square(np.maximum(t, 0.0)), lambda t: 2.0 * np.maximum(t, 0.0),
               lambda t: 2.0 * (np.asarray(t, float) > 0), nondecreasing=True),
        Scalar("abs_cube", lambda t: np.abs(t) ** 3, lambda t: 3.0 * np.asarray(t) * np.abs(t),
               lambda t: 6.0 * np.abs(t)),
        Scalar("sin", np.sin, np.cos, lambda t: -np.sin(t), lo=0.0, hi=2 * math.pi, convex=False),
        Scalar("log", _log_pos, lambda t: 1.0 / np.asarray(t, float), lambda t: -1.0 / np.square(t),
               lo=0.0, convex=False, nondecreasing=True),
    ]
}


def scalar(name: str) -> Scalar:
    try:
        return SCALARS[name]
    except KeyError:
        raise KeyError(f"unknown scalar function {name!r}; known: {sorted(SCALARS)}") from None


def scalar_model(s: Scalar | str, lo: float | None = None, hi: float | None = None) -> FunctionModel:
    """A scalar function as a model on the real line."""
    s = scalar(s) if isinstance(s, str) else s
    lo = s.lo if lo is None else lo
    hi = s.hi if hi is None else hi
    claims = set()
    if s.convex:
        claims |= {CONVEX, ISOTONE_DIFFERENTIAL}
    if s.nondecreasing:
        claims.add(ISOTONE)
    box = None if (lo == -math.inf and hi == math.inf) else ([lo], [hi])
    return FunctionModel(
        name=f"scalar:{s.name}",
        space=OrderedSpace.real_line(),
        eval=lambda x: float(s.f(x[0])),
        gradient=lambda x: np.array([float(s.df(x[0]))]),
        hessian=lambda x: np.array([[float(s.d2f(x[0]))]]),
        domain_box=box,
        claims=frozenset(claims),
    )


def perspective(s: Scalar | str, interval_kind: str = "neg") -> FunctionModel:
    """``(x, y) -> y f(x / y)`` on ``I x (0, inf)`` with I = (-inf, 0), (0, inf) or R."""
    s = scalar(s) if isinstance(s, str) else s
    xlo, xhi = {"neg": (-math.inf, 0.0), "pos": (0.0, math.inf), "all": (-math.inf, math.inf)}[interval_kind]
    xlo, xhi = max(xlo, s.lo), min(xhi, s.hi)

    def ev(p):
        x, y = p
        if y <= 0:
            raise DomainError("perspective needs y > 0")
        return float(y * s.f(x / y))

    def grad(p):
        x, y = p
        r = x / y
        d = float(s.df(r))
        return np.array([d, float(s.f(r)) - r * d])

    def hess(p):
        x, y = p
        r = x / y
        c = float(s.d2f(r))
        return np.array([[c / y, -x / y**2 * c], [-x / y**2 * c, x * x / y**3 * c]])

    def in_domain(p):
        return p[1] > 0 and xlo < p[0] / p[1] < xhi

    claims = {CONVEX} if s.convex else set()
    if interval_kind == "neg" and s.convex:
        claims.add(ISOTONE_DIFFERENTIAL)
    return FunctionModel(
        name=f"perspective:{s.name}:{interval_kind}",
        space=OrderedSpace.orthant(2),
        eval=ev,
        gradient=grad,
        hessian=hess,
        domain_box=([-math.inf, 0.0], [math.inf, math.inf]),
        domain=in_domain,
        claims=frozenset(claims),
    )


def negative_entropy(n: int = 2) -> FunctionModel:
    """``sum x_k log x_k`` on the open positive orthant."""

    def ev(x):
        if np.any(x <= 0):
            raise DomainError("negative entropy needs positive coordinates")
        return float(np.sum(x * np.log(x)))

    return FunctionModel(
        name=f"neg_entropy:{n}",
        space=OrderedSpace.orthant_interior(n),
        eval=ev,
        gradient=lambda x: 1.0 + np.log(x),
        hessian=lambda x: np.diag(1.0 / x),
        domain_box=(np.zeros(n), np.full(n, math.inf)),
        claims=frozenset({CONVEX, ISOTONE_DIFFERENTIAL}),
        disclaims=frozenset({ISOTONE}),
    )


def minus_entropy(n: int = 2, lo: float = 0.5, hi: float = 3.0) -> FunctionModel:
    """``-sum x_k log x_k`` on the box ``(lo, hi)^n``; smooth with constant ``1/lo``."""
    base = negative_entropy(n)
    claims = {ANTITONE_DIFFERENTIAL, STRONGLY_SMOOTH}
    if lo >= math.exp(-1.0):
        claims.add(ANTITONE)
    m = base.negated(name=f"minus_entropy:{n}:{lo:g}:{hi:g}", claims=claims)
    m = m.with_box(np.full(n, lo), np.full(n, hi))
    return replace(m, constants={"sigma": 1.0 / lo})


def log_sum_exp(n: int = 2) -> FunctionModel:
    """``log sum exp(x_k)``, evaluated with max-subtraction."""

    def ev(x):
        m = float(np.max(x))
        return m + math.log(float(np.sum(np.exp(x - m))))

    def softmax(x):
        e = np.exp(x - np.max(x))
        return e / e.sum()

    def hess(x):
        p = softmax(x)
        return np.diag(p) - np.outer(p, p)

    return FunctionModel(
        name=f"lse:{n}",
        space=OrderedSpace.orthant(n),
        eval=ev,
        gradient=softmax,
        hessian=hess,
        claims=frozenset({CONVEX, ISOTONE, STRONGLY_SMOOTH}),
        disclaims=frozenset({ISOTONE_DIFFERENTIAL, TWO_BOX_MONOTONE}),
        constants={"sigma": 1.0},
    )


def trace_function(s: Scalar | str, m: int = 2) -> FunctionModel:
    """``A -> trace f(A)`` on symmetric matrices with spectrum in f's interval."""
    s = scalar(s) if isinstance(s, str) else s

    def ev(a):
        lam = eigvalsh_packed(a)
        with np.errstate(all="ignore"):
            vals = np.asarray(s.f(lam), dtype=float)
        if not np.all(np.isfinite(vals)):
            raise DomainError(f"trace {s.name} undefined on spectrum {lam}")
        return float(np.sum(vals))

    claims, disclaims = set(), set()
    if s.convex:
        claims.add(CONVEX)
        # scalar isotonicity of f' is not enough for matrices (e.g. exp)
        if s.operator_monotone_derivative:
            claims.add(ISOTONE_DIFFERENTIAL)
        else:
            disclaims.add(ISOTONE_DIFFERENTIAL)
    if s.nondecreasing:
        claims.add(ISOTONE)
    spectrum = None if (s.lo == -math.inf and s.hi == math.inf) else (s.lo, s.hi)
    return FunctionModel(
        name=f"trace:{s.name}:{m}",
        space=OrderedSpace.loewner(m),
        eval=ev,
        gradient=lambda a: sym_apply(s.df, a),
        spectrum=spectrum,
        claims=frozenset(claims),
        disclaims=frozenset(disclaims),
    )


def neg_geometric_mean() -> FunctionModel:
    """``-2 sqrt(x y)``: convex, differential not isotone.

    Values extend continuously to the closed quadrant; derivatives need the interior.
    """

    def ev(p):
        x, y = p
        if x < 0 or y < 0:
            raise DomainError("needs nonnegative coordinates")
        return -2.0 * math.sqrt(x * y)

    def grad(p):
        x, y = p
        return -np.array([math.sqrt(y / x), math.sqrt(x / y)])

    def hess(p):
        x, y = p
        return 0.5 * np.array(
            [[x**-1.5 * y**0.5, -(x * y) ** -0.5], [-(x * y) ** -0.5, x**0.5 * y**-1.5]]
        )

    return FunctionModel(
        name="neg_geomean",
        space=OrderedSpace.orthant_interior(2),
        eval=ev,
        gradient=grad,
        hessian=hess,
        domain_box=(np.zeros(2), np.full(2, math.inf)),
        closed_box=True,
        claims=frozenset({CONVEX}),
        disclaims=frozenset({ISOTONE_DIFFERENTIAL, TWO_BOX_MONOTONE}),
    )


def bilinear_saddle() -> FunctionModel:
    """``(2x - 1)(2y - 1)``: isotone differential without convexity."""
    return FunctionModel(
        name="bilinear_saddle",
        space=OrderedSpace.orthant(2),
        eval=lambda p: float((2 * p[0] - 1) * (2 * p[1] - 1)),
        gradient=lambda p: np.array([2 * (2 * p[1] - 1), 2 * (2 * p[0] - 1)]),
        hessian=lambda p: np.array([[0.0, 4.0], [4.0, 0.0]]),
        claims=frozenset({ISOTONE_DIFFERENTIAL, TWO_BOX_MONOTONE}),
        disclaims=frozenset({CONVEX}),
    )


def frechet_hoeffding(kind: str = "upper") -> FunctionModel:
    """Copula bounds on [0, 1]^2: ``min(x1, x2)`` (lower) and ``max(x1 + x2 - 1, 0)`` (upper)."""
    kind = kind.lower()
    if kind == "lower":
        ev = lambda p: float(min(p[0], p[1]))
        claims, disclaims = {TWO_BOX_MONOTONE, ISOTONE}, {CONVEX}
    elif kind == "upper":
        ev = lambda p: float(max(p[0] + p[1] - 1.0, 0.0))
        claims, disclaims = {TWO_BOX_MONOTONE, CONVEX, ISOTONE}, set()
    else:
        raise ValueError("kind must be 'lower' or 'upper'")
    return FunctionModel(
        name=f"fh_{kind}",
        space=OrderedSpace.orthant(2),
        eval=ev,
        domain_box=(np.zeros(2), np.ones(2)),
        closed_box=True,
        claims=frozenset(claims),
        disclaims=frozenset(disclaims),
        differentiable=False,
    )


def power_p_sum(n: int = 2, p: float = 2.0, positive: bool = True) -> FunctionModel:
    """``sum |x_i|^p``; on the closed positive orthant by default."""
    if p <= 1:
        raise ValueError("p must exceed 1")

    def grad(x):
        return p * np.abs(x) ** (p - 1) * np.sign(x)

    def hess(x):
        with np.errstate(divide="ignore"):
            return np.diag(p * (p - 1) * np.abs(x) ** (p - 2))

    claims = {CONVEX, ISOTONE_DIFFERENTIAL}
    if positive:
        claims.add(ISOTONE)
    return FunctionModel(
        name=f"power_sum:{n}:{p:g}" + ("" if positive else ":all"),
        space=OrderedSpace.orthant(n),
        eval=lambda x: float(np.sum(np.abs(x) ** p)),
        gradient=grad,
        hessian=hess,
        domain_box=(np.zeros(n), np.full(n, math.inf)) if positive else None,
        closed_box=positive,
        claims=frozenset(claims),
        disclaims=frozenset() if positive else frozenset({ISOTONE}),
    )


def composite_linear(s: Scalar | str, w) -> FunctionModel:
    """``x -> f(<x, w>)`` for convex f and a nonnegative direction w."""
    s = scalar(s) if isinstance(s, str) else s
    w = np.asarray(w, dtype=float)
    if np.any(w < 0):
        raise ValueError("direction must be nonnegative")
    n = w.size

    def in_domain(x):
        t = float(x @ w)
        return s.lo < t < s.hi or (s.lo == -math.inf and s.hi == math.inf)

    claims = {CONVEX, TWO_BOX_MONOTONE, ISOTONE_DIFFERENTIAL} if s.convex else set()
    if s.nondecreasing:
        claims.add(ISOTONE)
    return FunctionModel(
        name=f"composite:{s.name}:" + ",".join(f"{v:g}" for v in w),
        space=OrderedSpace.orthant(n),
        eval=lambda x: float(s.f(float(x @ w))),
        gradient=lambda x: float(s.df(float(x @ w))) * w,
        hessian=lambda x: float(s.d2f(float(x @ w))) * np.outer(w, w),
        domain=None if (s.lo == -math.inf and s.hi == math.inf) else in_domain,
        claims=frozenset(claims),
    )


def linear(c) -> FunctionModel:
    """``x -> <c, x>``: its differential is constant, hence both isotone and antitone."""
    c = np.asarray(c, dtype=float)
    claims = {CONVEX, ISOTONE_DIFFERENTIAL, ANTITONE_DIFFERENTIAL, STRONGLY_SMOOTH, TWO_BOX_MONOTONE}
    if np.all(c >= 0):
        claims.add(ISOTONE)
    if np.all(c <= 0):
        claims.add(ANTITONE)
    return FunctionModel(
        name="linear:" + ",".join(f"{v:g}" for v in c),
        space=OrderedSpace.orthant(c.size),
        eval=lambda x: float(c @ x),
        gradient=lambda x: c.copy(),
        hessian=lambda x: np.zeros((c.size, c.size)),
        claims=frozenset(claims),
        constants={"sigma": 0.0},
    )


def quadratic_form(n: int = 2, alpha: float = 1.0) -> FunctionModel:
    """``(alpha / 2) |x|^2``: alpha-strongly convex and alpha-smooth."""
    return FunctionModel(
        name=f"quadratic:{n}:{alpha:g}",
        space=OrderedSpace.orthant(n),
        eval=lambda x: 0.5 * alpha * float(x @ x),
        gradient=lambda x: alpha * x,
        hessian=lambda x: alpha * np.eye(x.size),
        claims=frozenset({CONVEX, ISOTONE_DIFFERENTIAL, TWO_BOX_MONOTONE, STRONGLY_SMOOTH, STRONGLY_CONVEX}),
        constants={"sigma": alpha, "alpha": alpha},
    )


def _floats(text: str) -> list[float]:
    return [float(v) for v in text.split(",") if v]


def resolve(name: str) -> FunctionModel:
    """Build a zoo model from its registry name.

    Examples: ``neg_entropy:3``, ``lse:2``, ``trace:square:4``, ``neg_geomean``,
    ``bilinear_saddle``, ``fh_lower``, ``fh_upper``, ``power_sum:2:3``,
    ``power_sum:2:1.5:all``, ``composite:square:1,1``, ``perspective:square:neg``,
    ``linear:1,-2``, ``minus_entropy:2:0.5:3``, ``quadratic:2:1``, ``scalar:exp``.
    """
    parts = name.strip().split(":")
    head, args = parts[0], parts[1:]
    try:
        if head == "neg_entropy":
            return negative_entropy(int(args[0]) if args else 2)
        if head == "minus_entropy":
            n = int(args[0]) if args else 2
            lo = float(args[1]) if len(args) > 1 else 0.5
            hi = float(args[2]) if len(args) > 2 else 3.0
            return minus_entropy(n, lo, hi)
        if head == "lse":
            return log_sum_exp(int(args[0]) if args else 2)
        if head == "trace":
            return trace_function(args[0], int(args[1]) if len(args) > 1 else 2)
        if head == "neg_geomean":
            return neg_geometric_mean()
        if head == "bilinear_saddle":
            return bilinear_saddle()
        if head in ("fh_lower", "fh_upper"):
            return frechet_hoeffding(head[3:])
        if head == "power_sum":
            n = int(args[0]) if args else 2
            p = float(args[1]) if len(args) > 1 else 2.0
            return power_p_sum(n, p, positive=not (len(args) > 2 and args[2] == "all"))
        if head == "composite":
            return composite_linear(args[0], _floats(args[1]))
        if head == "perspective":
            return perspective(args[0], args[1] if len(args) > 1 else "neg")
        if head == "linear":
            return linear(_floats(args[0]))
        if head == "quadratic":
            return quadratic_form(int(args[0]) if args else 2, float(args[1]) if len(args) > 1 else 1.0)
        if head == "scalar":
            return scalar_model(args[0])
    except (IndexError, ValueError) as exc:
        raise ValueError(f"malformed zoo name {name!r}: {exc}") from exc
    raise KeyError(f"unknown zoo function {name!r}")


ZOO_EXAMPLES = [
    "neg_entropy:2",
    "neg_entropy:3",
    "minus_entropy:2:0.5:3",
    "lse:2",
    "lse:3",
    "trace:square:2",
    "trace:exp:2",
    "trace:xlogx:2",
    "neg_geomean",
    "bilinear_saddle",
    "fh_lower",
    "fh_upper",
    "power_sum:2:2",
    "power_sum:3:3",
    "power_sum:2:1.5:all",
    "composite:square:1,1",
    "composite:exp:1,2",
    "perspective:square:neg",
    "linear:1,-2",
    "quadratic:2:1",
]
