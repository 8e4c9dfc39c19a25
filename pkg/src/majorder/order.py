"""Finite-dimensional ordered spaces.

Two cones are supported: the nonnegative orthant of R^N (with R as the
one-dimensional case) and the positive semidefinite cone of symmetric M x M
matrices (Loewner order).  Points are plain 1-D float arrays; a Loewner point
stores the upper triangle of its matrix row by row, so every module above this
one can treat both orders with the same code.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import DimensionError, DomainError, EmptyChainError, NumericError


class SpaceKind(str, enum.Enum):
    REAL_LINE = "real_line"
    ORTHANT = "orthant"
    ORTHANT_INTERIOR = "orthant_interior"
    LOEWNER = "loewner"


class Direction(str, enum.Enum):
    DECREASING = "decreasing"
    INCREASING = "increasing"


@dataclass(frozen=True)
class Tolerance:
    """Absolute plus relative slack used by every order test.

    The effective threshold for a quantity of size ``s`` is
    ``abs_tol + rel_tol * s``.
    """

    abs_tol: float = 1e-9
    rel_tol: float = 1e-9
    exact: bool = False

    def __post_init__(self):
        if self.abs_tol < 0 or self.rel_tol < 0:
            raise ValueError("tolerances must be nonnegative")
        if self.abs_tol == 0 and self.rel_tol == 0 and not self.exact:
            raise ValueError("zero tolerance requires exact=True")

    @classmethod
    def zero(cls) -> "Tolerance":
        return cls(0.0, 0.0, exact=True)

    @classmethod
    def of(cls, tol: "Tolerance | float | None") -> "Tolerance":
        if tol is None:
            return cls()
        if isinstance(tol, Tolerance):
            return tol
        tol = float(tol)
        if tol == 0.0:
            return cls.zero()
        return cls(tol, 0.0)

    def threshold(self, scale: float = 0.0) -> float:
        return self.abs_tol + self.rel_tol * scale

    def scaled(self, factor: float) -> "Tolerance":
        return Tolerance(self.abs_tol * factor, self.rel_tol * factor, self.exact)


DEFAULT_TOL = Tolerance()


@dataclass(frozen=True)
class OrderedSpace:
    """A finite-dimensional space with its cone and norm.

    ``n`` is N for R^N-type spaces and the matrix size M for Loewner spaces;
    ``ambient_dim`` is the length of a point's coordinate array.
    """

    kind: SpaceKind
    n: int = 1

    def __post_init__(self):
        object.__setattr__(self, "kind", SpaceKind(self.kind))
        if self.n < 1:
            raise DimensionError(f"space dimension must be >= 1, got {self.n}")
        if self.kind is SpaceKind.REAL_LINE and self.n != 1:
            raise DimensionError("the real line has dimension 1")

    @classmethod
    def real_line(cls) -> "OrderedSpace":
        return cls(SpaceKind.REAL_LINE, 1)

    @classmethod
    def orthant(cls, n: int) -> "OrderedSpace":
        return cls(SpaceKind.ORTHANT, n)

    @classmethod
    def orthant_interior(cls, n: int) -> "OrderedSpace":
        return cls(SpaceKind.ORTHANT_INTERIOR, n)

    @classmethod
    def loewner(cls, m: int) -> "OrderedSpace":
        return cls(SpaceKind.LOEWNER, m)

    @property
    def is_matrix(self) -> bool:
        return self.kind is SpaceKind.LOEWNER

    @property
    def ambient_dim(self) -> int:
        if self.is_matrix:
            return self.n * (self.n + 1) // 2
        return self.n

    @property
    def norm_name(self) -> str:
        return "frobenius" if self.is_matrix else "euclidean"

    def point(self, coords) -> np.ndarray:
        """Validate and return coordinates as a float array."""
        p = np.asarray(coords, dtype=float).reshape(-1)
        self.check(p)
        return p

    def check(self, p: np.ndarray) -> None:
        if p.shape != (self.ambient_dim,):
            raise DimensionError(
                f"point of length {p.size} does not belong to {self.describe()}"
            )
        if not np.all(np.isfinite(p)):
            raise NumericError("point has non-finite coordinates")

    def zero(self) -> np.ndarray:
        return np.zeros(self.ambient_dim)

    def identity(self) -> np.ndarray:
        """Unit element: all-ones vector or the identity matrix (packed)."""
        if self.is_matrix:
            return pack(np.eye(self.n))
        return np.ones(self.n)

    def inner(self, p: np.ndarray, q: np.ndarray) -> float:
        if self.is_matrix:
            return float(np.dot(_frob_weights(self.n) * p, q))
        return float(np.dot(p, q))

    def norm(self, p: np.ndarray) -> float:
        if self.is_matrix:
            return float(math.sqrt(max(np.dot(_frob_weights(self.n) * p, p), 0.0)))
        return float(np.linalg.norm(p))

    def describe(self) -> str:
        if self.kind is SpaceKind.REAL_LINE:
            return "RealLine"
        if self.is_matrix:
            return f"Loewner({self.n})"
        name = "Orthant" if self.kind is SpaceKind.ORTHANT else "OrthantInterior"
        return f"{name}({self.n})"

    def to_json(self) -> dict:
        return {"kind": self.kind.value, "n": self.n}

    @classmethod
    def from_json(cls, data) -> "OrderedSpace":
        if isinstance(data, str):
            return parse_space(data)
        return cls(SpaceKind(data["kind"]), int(data.get("n", 1)))


def parse_space(text: str) -> OrderedSpace:
    """Parse ``real``, ``orthant:3``, ``orthant_interior:2`` or ``loewner:2``."""
    name, _, arg = text.partition(":")
    name = name.strip().lower()
    if name in ("real", "real_line", "realline"):
        return OrderedSpace.real_line()
    if name in ("loewner", "sym"):
        return OrderedSpace.loewner(int(arg))
    return OrderedSpace(SpaceKind(name), int(arg))


_FROB_CACHE: dict[int, np.ndarray] = {}


def _frob_weights(m: int) -> np.ndarray:
    # off-diagonal packed entries appear twice in the full matrix
    w = _FROB_CACHE.get(m)
    if w is None:
        iu = np.triu_indices(m)
        w = np.where(iu[0] == iu[1], 1.0, 2.0)
        _FROB_CACHE[m] = w
    return w


def packed_size_to_m(size: int) -> int:
    m = int(round((math.sqrt(8 * size + 1) - 1) / 2))
    if m * (m + 1) // 2 != size:
        raise DimensionError(f"{size} is not a triangular number")
    return m


def pack(a: np.ndarray) -> np.ndarray:
    """Upper triangle of a symmetric matrix, row-major."""
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionError("pack expects a square matrix")
    return a[np.triu_indices(a.shape[0])].copy()


def unpack(p: np.ndarray, m: int | None = None) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    if m is None:
        m = packed_size_to_m(p.size)
    elif p.size != m * (m + 1) // 2:
        raise DimensionError(f"packed length {p.size} does not match M={m}")
    a = np.zeros((m, m))
    iu = np.triu_indices(m)
    a[iu] = p
    a[(iu[1], iu[0])] = p
    return a


def jacobi_eigh(a: np.ndarray, tol: float = 1e-12, max_sweeps: int = 64):
    """Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.

    Returns ``(eigenvalues, Q)`` with ``a = Q diag(eigenvalues) Q^T``.
    Sweeps stop once the off-diagonal Frobenius mass is below
    ``tol * ||a||_F``.
    """
    a = np.array(a, dtype=float)
    if not np.all(np.isfinite(a)):
        raise NumericError("matrix has non-finite entries")
    n = a.shape[0]
    v = np.eye(n)
    scale = float(np.linalg.norm(a))
    if n == 1 or scale == 0.0:
        return np.diag(a).copy(), v
    target = tol * scale
    off_mask = ~np.eye(n, dtype=bool)
    for _ in range(max_sweeps):
        if math.sqrt(float(np.sum(a[off_mask] ** 2))) < target:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
                if theta < 0:
                    t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                a[p, q] = a[q, p] = 0.0
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    return np.diag(a).copy(), v


def eigvalsh_packed(m: np.ndarray) -> np.ndarray:
    return jacobi_eigh(unpack(m))[0]


def min_eigenvalue(m: np.ndarray) -> float:
    m = np.asarray(m, dtype=float)
    if not np.all(np.isfinite(m)):
        raise NumericError("matrix has non-finite entries")
    return float(np.min(eigvalsh_packed(m)))


def sym_apply(f_scalar: Callable[[np.ndarray], np.ndarray], m: np.ndarray) -> np.ndarray:
    """Spectral calculus: ``Q f(Lambda) Q^T`` for ``m = Q Lambda Q^T``, repacked."""
    lam, q = jacobi_eigh(unpack(m))
    with np.errstate(all="ignore"):
        try:
            fl = np.asarray(f_scalar(lam), dtype=float)
        except (ValueError, ArithmeticError) as exc:
            raise DomainError(f"function undefined on spectrum {lam}") from exc
    if fl.shape != lam.shape or not np.all(np.isfinite(fl)):
        raise DomainError(f"function undefined on spectrum {lam}")
    return pack((q * fl) @ q.T)


def cone_slack(space: OrderedSpace, p: np.ndarray) -> float:
    """Signed distance-like slack: min coordinate, or min eigenvalue for Loewner."""
    if space.is_matrix:
        return min_eigenvalue(p)
    return float(np.min(p))


def cone_contains(space: OrderedSpace, p, tol: Tolerance | float | None = None) -> bool:
    p = np.asarray(p, dtype=float)
    space.check(p)
    tol = Tolerance.of(tol)
    return cone_slack(space, p) >= -tol.threshold(space.norm(p))


def leq(space: OrderedSpace, a, b, tol: Tolerance | float | None = None) -> bool:
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    space.check(a)
    space.check(b)
    return cone_contains(space, b - a, tol)


def is_monotone_chain(
    space: OrderedSpace,
    points: Sequence,
    direction: Direction | str = Direction.DECREASING,
    tol: Tolerance | float | None = None,
) -> bool:
    return first_chain_break(space, points, direction, tol) is None


def first_chain_break(space, points, direction=Direction.DECREASING, tol=None) -> int | None:
    """Index k of the first link p_k -> p_{k+1} that breaks the chain, else None."""
    if len(points) == 0:
        raise EmptyChainError("a chain needs at least one point")
    direction = Direction(direction)
    for k in range(len(points) - 1):
        hi, lo = points[k], points[k + 1]
        if direction is Direction.INCREASING:
            hi, lo = lo, hi
        if not leq(space, lo, hi, tol):
            return k
    return None


def point_to_json(space: OrderedSpace, p: np.ndarray):
    if space.is_matrix:
        return {"packed_sym": [float(v) for v in p], "M": space.n}
    return [float(v) for v in p]


def point_from_json(space: OrderedSpace, data) -> np.ndarray:
    if isinstance(data, dict):
        if "packed_sym" in data:
            m = int(data["M"])
            if space.is_matrix and m != space.n:
                raise DimensionError(f"point has M={m}, space has M={space.n}")
            return space.point(data["packed_sym"])
        if "matrix" in data:
            return space.point(pack(np.asarray(data["matrix"], dtype=float)))
        raise ValueError(f"unrecognised point encoding: {sorted(data)}")
    if np.isscalar(data):
        data = [data]
    arr = np.asarray(data, dtype=float)
    if space.is_matrix and arr.ndim == 2:
        arr = pack(arr)
    return space.point(arr)
