"""Evaluable function models and perturbation moduli."""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Mapping

import numpy as np

from .errors import CapabilityError, DomainError, EmptyDomainError
from .order import OrderedSpace, _frob_weights, eigvalsh_packed, pack

# claim tags
CONVEX = "convex"
ISOTONE = "isotone"
ANTITONE = "antitone"
ISOTONE_DIFFERENTIAL = "isotone_differential"
ANTITONE_DIFFERENTIAL = "antitone_differential"
TWO_BOX_MONOTONE = "two_box_monotone"
STRONGLY_SMOOTH = "strongly_smooth"
STRONGLY_CONVEX = "strongly_convex"
SEMICONVEX = "semiconvex"

BOX_MARGIN = 1e-3
DEFAULT_RANGE = 3.0


@dataclass(frozen=True)
class Modulus:
    """The perturbation ``omega`` in ``omega``-convexity; ``omega(0) = 0``.

    ``quadratic(a)`` is ``(a/2) t^2`` (a-strong convexity), ``negquadratic(b)``
    is ``-(b/2) t^2`` (b-semiconvexity), ``table`` interpolates linearly between
    ``(t, omega(t))`` knots starting at ``(0, 0)``.
    """

    form: str = "zero"
    param: float = 0.0
    knots: tuple = ()

    def __post_init__(self):
        if self.form not in ("zero", "quadratic", "negquadratic", "table"):
            raise ValueError(f"unknown modulus form {self.form!r}")
        if self.form in ("quadratic", "negquadratic") and not self.param > 0:
            raise ValueError("quadratic moduli need a positive parameter")
        if self.form == "table":
            ts = [k[0] for k in self.knots]
            if not self.knots or ts[0] != 0 or self.knots[0][1] != 0:
                raise ValueError("table modulus must start at (0, 0)")
            if any(b <= a for a, b in zip(ts, ts[1:])):
                raise ValueError("table knots must be strictly increasing")

    @classmethod
    def zero(cls) -> "Modulus":
        return cls()

    @classmethod
    def quadratic(cls, alpha: float) -> "Modulus":
        return cls("quadratic", float(alpha))

    @classmethod
    def negquadratic(cls, beta: float) -> "Modulus":
        return cls("negquadratic", float(beta))

    @classmethod
    def table(cls, knots) -> "Modulus":
        return cls("table", 0.0, tuple((float(a), float(b)) for a, b in knots))

    @classmethod
    def parse(cls, text: str) -> "Modulus":
        name, _, arg = text.strip().partition(":")
        name = name.lower()
        if name == "zero":
            return cls.zero()
        if name in ("quad", "quadratic"):
            return cls.quadratic(float(arg))
        if name in ("negquad", "negquadratic"):
            return cls.negquadratic(float(arg))
        raise ValueError(f"cannot parse modulus {text!r} (zero | quad:A | negquad:B)")

    def __call__(self, t: float) -> float:
        if t < 0:
            raise ValueError("modulus is defined for t >= 0")
        if self.form == "zero":
            return 0.0
        if self.form == "quadratic":
            return 0.5 * self.param * t * t
        if self.form == "negquadratic":
            return -0.5 * self.param * t * t
        ts, vs = zip(*self.knots)
        if t > ts[-1]:
            # extend with the last slope
            if len(ts) == 1:
                return vs[-1]
            slope = (vs[-1] - vs[-2]) / (ts[-1] - ts[-2])
            return vs[-1] + slope * (t - ts[-1])
        return float(np.interp(t, ts, vs))

    def describe(self) -> str:
        if self.form == "zero":
            return "zero"
        if self.form == "quadratic":
            return f"quad:{self.param:g}"
        if self.form == "negquadratic":
            return f"negquad:{self.param:g}"
        return "table:" + ",".join(f"{a:g}/{b:g}" for a, b in self.knots)

    def to_json(self):
        return self.describe()


def _random_orthogonal(rng: np.random.Generator, m: int) -> np.ndarray:
    q, r = np.linalg.qr(rng.standard_normal((m, m)))
    return q * np.sign(np.diag(r))


@dataclass(frozen=True)
class FunctionModel:
    """A real-valued function on (a subset of) an ordered space.

    ``domain_box`` is an axis-aligned box ``(lo, hi)`` (open unless
    ``closed_box``); ``spectrum`` restricts Loewner-space domains to matrices
    with eigenvalues inside an open interval.  ``gradient`` returns a point of
    the same space representing the differential through the space's inner
    product (for matrices: the packed symmetric gradient).  ``hessian`` returns
    the coordinate Hessian as an (N, N) array (R^N spaces only).

    ``claims`` and ``disclaims`` are truth labels used as test oracles;
    ``constants`` carries parameters such as the smoothness constant.
    """

    name: str
    space: OrderedSpace
    eval: Callable[[np.ndarray], float]
    gradient: Callable[[np.ndarray], np.ndarray] | None = None
    hessian: Callable[[np.ndarray], np.ndarray] | None = None
    domain_box: tuple | None = None
    closed_box: bool = False
    spectrum: tuple | None = None
    domain: Callable[[np.ndarray], bool] | None = None
    claims: frozenset = frozenset()
    disclaims: frozenset = frozenset()
    constants: Mapping[str, float] = field(default_factory=dict)
    differentiable: bool = True
    fd_step: float = 1e-5

    def __post_init__(self):
        if self.domain_box is not None:
            lo, hi = self.domain_box
            lo = np.broadcast_to(np.asarray(lo, dtype=float), (self.space.ambient_dim,)).copy()
            hi = np.broadcast_to(np.asarray(hi, dtype=float), (self.space.ambient_dim,)).copy()
            if np.any(hi <= lo):
                raise ValueError("domain box must have lo < hi")
            object.__setattr__(self, "domain_box", (lo, hi))
        object.__setattr__(self, "claims", frozenset(self.claims))
        object.__setattr__(self, "disclaims", frozenset(self.disclaims))

    # -- evaluation -------------------------------------------------------

    def __call__(self, x) -> float:
        return float(self.eval(np.asarray(x, dtype=float)))

    def contains(self, x) -> bool:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.space.ambient_dim,) or not np.all(np.isfinite(x)):
            return False
        if self.domain_box is not None:
            lo, hi = self.domain_box
            if self.closed_box:
                if np.any(x < lo) or np.any(x > hi):
                    return False
            elif np.any(x <= lo) or np.any(x >= hi):
                return False
        if self.spectrum is not None:
            lam = eigvalsh_packed(x)
            if lam.min() <= self.spectrum[0] or lam.max() >= self.spectrum[1]:
                return False
        if self.domain is not None and not self.domain(x):
            return False
        return True

    def require(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if not self.contains(x):
            raise DomainError(f"{x.tolist()} is outside the domain of {self.name}")
        return x

    def has(self, claim: str) -> bool:
        return claim in self.claims

    @property
    def has_gradient(self) -> bool:
        return self.gradient is not None or self.differentiable

    def grad(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if self.gradient is not None:
            return np.asarray(self.gradient(x), dtype=float)
        if not self.differentiable:
            raise CapabilityError(f"{self.name} is not differentiable and has no gradient")
        return self.fd_gradient(x)

    def fd_gradient(self, x, step: float | None = None) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        h = (self.fd_step if step is None else step) * max(1.0, float(np.linalg.norm(x)))
        d = x.size
        g = np.empty(d)
        for k in range(d):
            e = np.zeros(d)
            e[k] = h
            g[k] = (self.eval(x + e) - self.eval(x - e)) / (2 * h)
        if self.space.is_matrix:
            g = g / _frob_weights(self.space.n)
        return g

    def hess(self, x, step: float = 1e-3) -> np.ndarray:
        """Coordinate Hessian: analytic, else differences of the gradient, else of values."""
        if self.space.is_matrix:
            raise CapabilityError("coordinate Hessians are only defined on R^N spaces")
        x = np.asarray(x, dtype=float)
        if self.hessian is not None:
            return np.asarray(self.hessian(x), dtype=float)
        if not self.differentiable and self.gradient is None:
            raise CapabilityError(f"{self.name} has no second-derivative path")
        h = step * max(1.0, float(np.linalg.norm(x)))
        d = x.size
        out = np.empty((d, d))
        if self.gradient is not None:
            for k in range(d):
                e = np.zeros(d)
                e[k] = h
                out[:, k] = (self.grad(x + e) - self.grad(x - e)) / (2 * h)
            return 0.5 * (out + out.T)
        f = self.eval
        f0 = f(x)
        for i in range(d):
            ei = np.zeros(d)
            ei[i] = h
            out[i, i] = (f(x + ei) - 2 * f0 + f(x - ei)) / (h * h)
            for j in range(i + 1, d):
                ej = np.zeros(d)
                ej[j] = h
                v = (f(x + ei + ej) - f(x + ei - ej) - f(x - ei + ej) + f(x - ei - ej)) / (4 * h * h)
                out[i, j] = out[j, i] = v
        return out

    # -- derived models ---------------------------------------------------

    def with_box(self, lo, hi, closed: bool = False) -> "FunctionModel":
        """Restrict to a smaller box (intersected with the current one)."""
        d = self.space.ambient_dim
        lo = np.broadcast_to(np.asarray(lo, dtype=float), (d,)).copy()
        hi = np.broadcast_to(np.asarray(hi, dtype=float), (d,)).copy()
        if self.domain_box is not None:
            lo = np.maximum(lo, self.domain_box[0])
            hi = np.minimum(hi, self.domain_box[1])
        return replace(self, domain_box=(lo, hi), closed_box=closed)

    def with_spectrum(self, lo: float, hi: float) -> "FunctionModel":
        if self.spectrum is not None:
            lo, hi = max(lo, self.spectrum[0]), min(hi, self.spectrum[1])
        return replace(self, spectrum=(float(lo), float(hi)))

    def negated(self, name: str | None = None, claims=frozenset(), disclaims=frozenset()) -> "FunctionModel":
        g, h = self.gradient, self.hessian
        return replace(
            self,
            name=name or f"neg({self.name})",
            eval=lambda x, f=self.eval: -f(x),
            gradient=None if g is None else (lambda x, g=g: -np.asarray(g(x))),
            hessian=None if h is None else (lambda x, h=h: -np.asarray(h(x))),
            claims=frozenset(claims),
            disclaims=frozenset(disclaims),
            constants={},
        )

    # -- sampling ---------------------------------------------------------

    def sampling_box(self) -> tuple[np.ndarray, np.ndarray]:
        d = self.space.ambient_dim
        if self.domain_box is None:
            lo, hi = np.full(d, -DEFAULT_RANGE), np.full(d, DEFAULT_RANGE)
        else:
            lo, hi = self.domain_box
            lo = np.where(np.isfinite(lo), lo, np.minimum(hi, 0.0) - 2 * DEFAULT_RANGE)
            lo = np.where(np.isfinite(lo), lo, -DEFAULT_RANGE)
            hi = np.where(np.isfinite(hi), hi, np.maximum(lo, 0.0) + 2 * DEFAULT_RANGE)
        margin = BOX_MARGIN * (hi - lo)
        return lo + margin, hi - margin

    def sample_points(self, rng: np.random.Generator, n: int, max_tries: int = 100) -> np.ndarray:
        """``n`` points in the domain, kept a relative margin away from box faces."""
        out = []
        tries = 0
        while len(out) < n:
            tries += 1
            if tries > max_tries * max(n, 1):
                raise EmptyDomainError(f"could not sample the domain of {self.name}")
            p = self._draw(rng)
            if self.contains(p):
                out.append(p)
        return np.array(out).reshape(n, self.space.ambient_dim)

    def _draw(self, rng) -> np.ndarray:
        if self.space.is_matrix:
            m = self.space.n
            if self.spectrum is not None:
                a, b = self.spectrum
                a = a if np.isfinite(a) else min(b, 0.0) - 2 * DEFAULT_RANGE
                b = b if np.isfinite(b) else max(a, 0.0) + 2 * DEFAULT_RANGE
                span = b - a
                lam = rng.uniform(a + BOX_MARGIN * span, b - BOX_MARGIN * span, m)
            else:
                lam = rng.uniform(-DEFAULT_RANGE, DEFAULT_RANGE, m)
            q = _random_orthogonal(rng, m)
            return pack((q * lam) @ q.T)
        lo, hi = self.sampling_box()
        return rng.uniform(lo, hi)

    def sample_comparable_pair(self, rng: np.random.Generator, max_tries: int = 200):
        """A pair ``x <= y`` (cone order) with both points in the domain."""
        for _ in range(max_tries):
            if self.space.is_matrix:
                x = self._draw(rng)
                if not self.contains(x):
                    continue
                m = self.space.n
                g = rng.standard_normal((m, m))
                inc = g @ g.T
                inc *= rng.uniform(0.05, 1.0) / max(np.linalg.norm(inc), 1e-300)
                for _ in range(30):
                    y = x + pack(inc)
                    if self.contains(y):
                        return x, y
                    inc *= 0.5
                continue
            a, b = self._draw(rng), self._draw(rng)
            x, y = np.minimum(a, b), np.maximum(a, b)
            if self.contains(x) and self.contains(y):
                return x, y
        raise EmptyDomainError(f"could not sample comparable pairs for {self.name}")


def scalar_function(name: str, f, df=None, d2f=None, lo=-math.inf, hi=math.inf, claims=(), disclaims=()) -> FunctionModel:
    """Wrap a scalar function of one real variable as a model on the real line."""
    space = OrderedSpace.real_line()
    return FunctionModel(
        name=name,
        space=space,
        eval=lambda x: float(f(x[0])),
        gradient=None if df is None else (lambda x: np.array([df(x[0])])),
        hessian=None if d2f is None else (lambda x: np.array([[d2f(x[0])]])),
        domain_box=None if (lo == -math.inf and hi == math.inf) else ([lo], [hi]),
        claims=frozenset(claims),
        disclaims=frozenset(disclaims),
    )

