"""Constructive instance generators.

Every generator builds its output so that the theorem's hypotheses hold by
construction (no rejection against the hypotheses themselves):

* chains are partial sums of cone-valued increments;
* majorized pairs come from cone-valued deficits ``d_n`` telescoped as
  ``y_n = x_n + (d_n - d_{n-1}) / lambda_n``, so the n-th weighted prefix
  difference is exactly ``d_n``;
* small configurations (Jensen gap, parallelogram, Popoviciu triples) are
  built around the origin and then fitted into the target region by a common
  positive scaling and translation, which preserve every order relation.

Distributions are a free choice: increments are uniform on ``[0, scale]``
per coordinate (with random zero coordinates, so ties occur) on orthants,
and ``u * G G^T / |G G^T|`` with Gaussian ``G`` and uniform ``u`` on the
Loewner cone.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import BoxTooSmallError, DomainEscapeError
from .majorization import DiscreteMeasure, Relation
from .models import BOX_MARGIN, DEFAULT_RANGE, FunctionModel
from .order import OrderedSpace, eigvalsh_packed, pack

MAX_RETRIES = 8
MIN_WEIGHT = 1e-3


class WeightScheme(str, enum.Enum):
    UNIFORM = "uniform"
    DIRICHLET = "dirichlet"


@dataclass(frozen=True)
class GeneratorConfig:
    """Knobs of the pair generator.

    ``region`` is a coordinate box ``(lo, hi)`` on orthants and a spectral
    interval on the Loewner cone; ``contains`` is an extra domain predicate.
    """

    space: OrderedSpace
    n_points: int = 3
    relation: Relation = Relation.LDOWN
    seed: int = 0
    weight_scheme: WeightScheme = WeightScheme.UNIFORM
    chain_scale: float = 1.0
    deficit_scale: float = 0.5
    region: tuple = (-DEFAULT_RANGE, DEFAULT_RANGE)
    contains: Callable[[np.ndarray], bool] | None = None

    def __post_init__(self):
        if self.n_points < 1:
            raise ValueError("n_points must be at least 1")
        if self.chain_scale <= 0 or self.deficit_scale < 0:
            raise ValueError("chain_scale must be positive and deficit_scale nonnegative")
        object.__setattr__(self, "relation", Relation(self.relation))
        object.__setattr__(self, "weight_scheme", WeightScheme(self.weight_scheme))
        if self.relation in (Relation.HLP, Relation.WHLP):
            raise ValueError("generators build ldown/rup families")

    def rng(self) -> np.random.Generator:
        return np.random.default_rng(self.seed)


def region_for(f: FunctionModel, nonnegative: bool = False) -> tuple:
    """Finite generation region of a model: its sampling box, or spectral interval."""
    if f.space.is_matrix:
        lo, hi = f.spectrum if f.spectrum is not None else (-DEFAULT_RANGE, DEFAULT_RANGE)
        lo = lo if np.isfinite(lo) else min(hi, 0.0) - 2 * DEFAULT_RANGE
        hi = hi if np.isfinite(hi) else max(lo, 0.0) + 2 * DEFAULT_RANGE
        if nonnegative:
            lo = max(lo, 0.0)
        return float(lo), float(hi)
    lo, hi = f.sampling_box()
    if nonnegative:
        lo = np.maximum(lo, 0.0)
        hi = np.maximum(hi, lo + 2 * DEFAULT_RANGE)
    return lo, hi


def config_for(f: FunctionModel, relation=Relation.LDOWN, n_points: int = 3, seed: int = 0, **kw) -> GeneratorConfig:
    return GeneratorConfig(
        space=f.space,
        n_points=n_points,
        relation=relation,
        seed=seed,
        region=kw.pop("region", None) or region_for(f),
        contains=f.contains,
        **kw,
    )


# -- primitive draws ------------------------------------------------------


def draw_weights(scheme: WeightScheme | str, n: int, rng: np.random.Generator) -> np.ndarray:
    if WeightScheme(scheme) is WeightScheme.UNIFORM:
        return np.full(n, 1.0 / n)
    w = np.maximum(rng.dirichlet(np.ones(n)), MIN_WEIGHT)
    return w / w.sum()


def cone_draw(space: OrderedSpace, rng: np.random.Generator, scale: float) -> np.ndarray:
    """A random cone element with sup-norm (or spectral norm) at most ``scale``."""
    if space.is_matrix:
        m = space.n
        g = rng.standard_normal((m, m))
        a = g @ g.T
        a /= max(float(np.linalg.eigvalsh(a)[-1]), 1e-300)
        return scale * rng.uniform() * pack(a)
    d = space.ambient_dim
    return scale * rng.uniform(size=d) * (rng.uniform(size=d) < 0.85)


def _bounds(space: OrderedSpace, region) -> tuple[np.ndarray, np.ndarray]:
    lo, hi = region
    if space.is_matrix:
        return np.array([float(lo)]), np.array([float(hi)])
    d = space.ambient_dim
    return np.broadcast_to(np.asarray(lo, float), (d,)).copy(), np.broadcast_to(np.asarray(hi, float), (d,)).copy()


def _extent(space: OrderedSpace, pts: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Per-coordinate (or spectral) min and max over a family of points."""
    if space.is_matrix:
        ev = np.array([eigvalsh_packed(p) for p in pts])
        return np.array([ev.min()]), np.array([ev.max()])
    return pts.min(axis=0), pts.max(axis=0)


def _shift(space: OrderedSpace, t: np.ndarray) -> np.ndarray:
    """Translation by ``t`` (a scalar multiple of the identity on Sym)."""
    return float(t[0]) * space.identity() if space.is_matrix else t


def fit_into(space: OrderedSpace, pts: np.ndarray, region, rng: np.random.Generator, fill: float = 0.9) -> np.ndarray:
    """Scale (about the origin) and translate ``pts`` to sit inside ``region``."""
    lo, hi = _bounds(space, region)
    width = hi - lo
    if np.any(~np.isfinite(width)) or np.any(width <= 0):
        raise BoxTooSmallError(f"region {region} is empty or unbounded")
    m = BOX_MARGIN * width
    avail = width - 2 * m
    pmin, pmax = _extent(space, pts)
    ext = pmax - pmin
    fac = 1.0
    if np.any(ext > fill * avail):
        fac = float(np.min(fill * avail / np.where(ext > 0, ext, np.inf)))
        pts = pts * fac
        pmin, pmax = pmin * fac, pmax * fac
        ext = pmax - pmin
    t = lo + m - pmin + rng.uniform(size=lo.size) * (avail - ext)
    return pts + _shift(space, t)


def _inside(space: OrderedSpace, region, pts, contains) -> bool:
    lo, hi = _bounds(space, region)
    pmin, pmax = _extent(space, np.atleast_2d(pts))
    if np.any(pmin <= lo) or np.any(pmax >= hi):
        return False
    return contains is None or all(contains(p) for p in pts)


# -- chains and pairs ----------------------------------------------------


def gen_decreasing_chain(cfg: GeneratorConfig, rng: np.random.Generator | None = None, room: float = 0.0) -> np.ndarray:
    """``x_1 >= ... >= x_N`` inside the region, leaving ``room`` to every face."""
    rng = cfg.rng() if rng is None else rng
    space = cfg.space
    lo, hi = _bounds(space, cfg.region)
    width = hi - lo
    if np.any(~np.isfinite(width)) or np.any(width <= 0):
        raise BoxTooSmallError(f"region {cfg.region} is empty or unbounded")
    m = BOX_MARGIN * width + room
    avail = width - 2 * m
    if np.any(avail <= 0):
        raise BoxTooSmallError("region is too small for the requested room")
    n = cfg.n_points
    inc = np.array([cone_draw(space, rng, cfg.chain_scale) for _ in range(n - 1)]).reshape(n - 1, space.ambient_dim)
    total = inc.sum(axis=0) if n > 1 else space.zero()
    _, tmax = _extent(space, total[None, :])
    tmax = np.maximum(tmax, 0.0)
    if np.any(tmax > 0.9 * avail):
        inc = inc * float(np.min(0.9 * avail / np.where(tmax > 0, tmax, np.inf)))
        total = inc.sum(axis=0)
        tmax = np.maximum(_extent(space, total[None, :])[1], 0.0)
    if space.is_matrix:
        mm = space.n
        lam = lo + m + rng.uniform(size=mm) * (avail - tmax)
        q, r = np.linalg.qr(rng.standard_normal((mm, mm)))
        q = q * np.sign(np.diag(r))
        base = pack((q * lam) @ q.T)
    else:
        base = lo + m + rng.uniform(size=lo.size) * (avail - tmax)
    tails = np.cumsum(inc[::-1], axis=0)[::-1] if n > 1 else np.zeros((0, space.ambient_dim))
    return np.vstack([base + tails, base[None, :]])


def pair_from_deficits(space: OrderedSpace, weights, chain, deficits, relation: Relation | str):
    """Telescope deficits onto a chain.

    ``ldown``: ``chain`` is the decreasing left support and
    ``y_n = x_n + (d_n - d_{n-1}) / lambda_n``.  ``rup``: ``chain`` is the
    increasing right support and ``x_n = y_n - (d_n - d_{n-1}) / lambda_n``.
    """
    relation = Relation(relation)
    w = np.asarray(weights, float)
    chain = np.asarray(chain, float)
    d = np.asarray(deficits, float)
    steps = np.diff(np.vstack([np.zeros((1, chain.shape[1])), d]), axis=0) / w[:, None]
    if relation.is_down:
        return DiscreteMeasure(space, w, chain), DiscreteMeasure(space, w, chain + steps)
    return DiscreteMeasure(space, w, chain - steps), DiscreteMeasure(space, w, chain)


def gen_majorized_pair(cfg: GeneratorConfig, rng: np.random.Generator | None = None, return_deficits: bool = False):
    """A certified pair ``mu < nu`` for ``cfg.relation``.

    Deficits are capped so the telescoped partner moves at most
    ``2 * deficit_scale`` per coordinate (spectrally on Sym); the chain is
    placed with that much room.  If a domain predicate still rejects a point,
    the deficits are halved, up to ``MAX_RETRIES`` times.
    """
    rng = cfg.rng() if rng is None else rng
    space, n, relation = cfg.space, cfg.n_points, cfg.relation
    lo, hi = _bounds(space, cfg.region)
    scale = min(cfg.deficit_scale, float(np.min(hi - lo)) / 8)
    w = draw_weights(cfg.weight_scheme, n, rng)
    chain = gen_decreasing_chain(cfg, rng, room=2 * scale)
    if relation.is_up:
        chain = chain[::-1].copy()
    caps = np.minimum(w, np.append(w[1:], np.inf))
    d = np.array([cone_draw(space, rng, scale) * caps[k] for k in range(n)]).reshape(n, space.ambient_dim)
    if not relation.weak:
        d[-1] = 0.0
    for _ in range(MAX_RETRIES + 1):
        mu, nu = pair_from_deficits(space, w, chain, d, relation)
        if _inside(space, cfg.region, mu.support, cfg.contains) and _inside(space, cfg.region, nu.support, cfg.contains):
            return (mu, nu, d) if return_deficits else (mu, nu)
        d = d * 0.5
    raise DomainEscapeError(f"generated support left the domain after {MAX_RETRIES} retries")


# -- small configurations ------------------------------------------------


def _scalar_or_coords(space: OrderedSpace, rng: np.random.Generator) -> np.ndarray | float:
    """Interpolation factor(s) in [0, 1]: per coordinate on orthants, one scalar on Sym."""
    return rng.uniform() if space.is_matrix else rng.uniform(size=space.ambient_dim)


def _fitted(f: FunctionModel, build, rng, region=None, nonnegative: bool = False) -> list[np.ndarray]:
    region = region or region_for(f, nonnegative)
    for _ in range(MAX_RETRIES + 1):
        shape = np.asarray(build(), dtype=float)
        pts = fit_into(f.space, shape, region, rng)
        if all(f.contains(p) for p in pts):
            return list(pts)
    raise DomainEscapeError(f"could not place an instance in the domain of {f.name}")


def gen_jensen_gap(f: FunctionModel, rng: np.random.Generator, scale: float = 1.0) -> dict:
    """``y2 <= x2 <= (1-lam) y1 + lam y2 <= x1 <= y1`` with random lam."""
    sp = f.space
    lam = float(rng.uniform(0.05, 0.95))

    def build():
        d = cone_draw(sp, rng, scale)
        my = (1 - lam) * d
        x1 = my + _scalar_or_coords(sp, rng) * (d - my)
        x2 = _scalar_or_coords(sp, rng) * my
        return [x1, x2, d, sp.zero()]

    x1, x2, y1, y2 = _fitted(f, build, rng)
    return {"x1": x1, "x2": x2, "y1": y1, "y2": y2, "lam": lam}


def gen_parallelogram(f: FunctionModel, rng: np.random.Generator, variant: str = "equal", scale: float = 1.0) -> dict:
    sp = f.space
    if variant == "equal":

        def build():
            a = cone_draw(sp, rng, scale)
            b = _scalar_or_coords(sp, rng) * a
            return [b, -b, a, -a]

        nonneg = False
    else:

        def build():
            x2 = cone_draw(sp, rng, scale)
            x1 = x2 + cone_draw(sp, rng, scale)
            e1 = cone_draw(sp, rng, scale)
            y1 = x1 + e1
            extra = cone_draw(sp, rng, scale)
            y2 = x2 + extra if sp.is_matrix else np.maximum(x2 - e1, 0.0) + extra
            return [x1, x2, y1, y2]

        nonneg = True
    x1, x2, y1, y2 = _fitted(f, build, rng, nonnegative=nonneg)
    return {"x1": x1, "x2": x2, "y1": y1, "y2": y2, "variant": variant}


def gen_szego_chain(f: FunctionModel, rng: np.random.Generator, n_points: int, scale: float = 1.0) -> dict:
    """Decreasing chain ending at a point ``>= 0``; the region is cut to the cone."""
    cfg = GeneratorConfig(space=f.space, n_points=n_points, chain_scale=scale, region=region_for(f, nonnegative=True))
    for _ in range(MAX_RETRIES + 1):
        chain = gen_decreasing_chain(cfg, rng)
        if all(f.contains(p) for p in chain):
            return {"chain": list(chain)}
    raise DomainEscapeError(f"could not place a chain in the domain of {f.name}")


def gen_trace_family(space: OrderedSpace, rng: np.random.Generator, n_points: int, weak: bool = True, scale: float = 1.0) -> dict:
    """``A_1 >= ... >= A_n >= 0`` and ``B`` with dominated partial sums."""
    cfg = GeneratorConfig(
        space=space,
        n_points=n_points,
        relation=Relation.WLDOWN if weak else Relation.LDOWN,
        chain_scale=scale,
        deficit_scale=0.5 * scale,
        region=(0.0, 2 * DEFAULT_RANGE),
    )
    mu, nu = gen_majorized_pair(cfg, rng)
    return {"A": list(mu.support), "B": list(nu.support)}


def gen_popoviciu(f: FunctionModel, rng: np.random.Generator, case: str = "a", scale: float = 1.0) -> dict:
    """``x >= y >= z`` with the barycenter placed per ``case``."""
    sp = f.space

    def build():
        e1 = cone_draw(sp, rng, scale)
        y = e1
        if case == "a":
            x = y + e1 + cone_draw(sp, rng, scale)
        else:
            x = y + _scalar_or_coords(sp, rng) * e1
        return [x, y, sp.zero()]

    x, y, z = _fitted(f, build, rng)
    return {"x": x, "y": y, "z": z, "case": case}
