"""Theorem dispatch, instance serialization and counterexample search."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import PreconditionError
from .generators import (
    config_for,
    gen_jensen_gap,
    gen_majorized_pair,
    gen_parallelogram,
    gen_popoviciu,
    gen_szego_chain,
    gen_trace_family,
)
from .majorization import DiscreteMeasure, Relation
from .models import FunctionModel, Modulus
from .order import OrderedSpace, point_from_json, point_to_json
from .theorems import (
    InequalityReport,
    geomean_counterexample,
    verify_parallelogram,
    verify_T4,
    verify_T5,
    verify_T6,
    verify_T7,
    verify_T8,
    verify_T9,
    verify_T10,
)
from .zoo import resolve

THEOREMS = ("t4", "t5", "t6", "t7", "c1", "r9", "t8", "t9", "t10a", "t10b")
MEASURE_THEOREMS = ("t4", "t5", "t6")


@dataclass(frozen=True)
class Problem:
    """What to verify: a theorem key, a model and the constants it needs.

    For ``t9`` the function is the scalar name and ``space`` fixes the matrix size.
    """

    theorem: str
    function: str
    modulus: str = "zero"
    sigma: float | None = None
    relation: str = "ldown"
    n_points: int = 3
    weight_scheme: str = "uniform"
    chain_scale: float = 1.0
    deficit_scale: float = 0.5
    matrix_size: int = 2
    tol: float = 1e-9

    def __post_init__(self):
        if self.theorem not in THEOREMS:
            raise ValueError(f"unknown theorem {self.theorem!r}; expected one of {', '.join(THEOREMS)}")
        Relation(self.relation)
        Modulus.parse(self.modulus)

    def model(self) -> FunctionModel | None:
        return None if self.theorem == "t9" else resolve(self.function)

    def space(self, f: FunctionModel | None = None) -> OrderedSpace:
        return OrderedSpace.loewner(self.matrix_size) if f is None else f.space


# -- instances --------------------------------------------------------------


def generate_instance(problem: Problem, f: FunctionModel | None, rng: np.random.Generator) -> dict:
    """A certified instance (numpy payload) for ``problem``."""
    t = problem.theorem
    if t in MEASURE_THEOREMS:
        cfg = config_for(
            f,
            relation=problem.relation,
            n_points=problem.n_points,
            weight_scheme=problem.weight_scheme,
            chain_scale=problem.chain_scale,
            deficit_scale=problem.deficit_scale,
        )
        mu, nu = gen_majorized_pair(cfg, rng)
        return {"mu": mu, "nu": nu, "relation": problem.relation}
    if t == "t7":
        return gen_jensen_gap(f, rng, problem.chain_scale)
    if t in ("c1", "r9"):
        return gen_parallelogram(f, rng, "equal" if t == "c1" else "weak_sum", problem.chain_scale)
    if t == "t8":
        return gen_szego_chain(f, rng, problem.n_points, problem.chain_scale)
    if t == "t9":
        return gen_trace_family(problem.space(), rng, problem.n_points, scale=problem.chain_scale)
    return gen_popoviciu(f, rng, t[-1], problem.chain_scale)


def run_instance(problem: Problem, f: FunctionModel | None, inst: dict) -> InequalityReport:
    t, tol = problem.theorem, problem.tol
    w = Modulus.parse(problem.modulus)
    if t == "t4":
        return verify_T4(f, w, inst["mu"], inst["nu"], inst.get("relation", problem.relation), tol)
    if t == "t5":
        return verify_T5(f, problem.sigma, inst["mu"], inst["nu"], inst.get("relation", problem.relation), tol)
    if t == "t6":
        return verify_T6(f, inst["mu"], inst["nu"], inst.get("relation", problem.relation), tol)
    if t == "t7":
        return verify_T7(f, inst["x1"], inst["x2"], inst["y1"], inst["y2"], inst["lam"], tol)
    if t in ("c1", "r9"):
        variant = "equal" if t == "c1" else "weak_sum"
        return verify_parallelogram(f, inst["x1"], inst["x2"], inst["y1"], inst["y2"], variant, tol)
    if t == "t8":
        return verify_T8(f, w, inst["chain"], tol)
    if t == "t9":
        return verify_T9(problem.function, inst["A"], inst["B"], tol)
    return verify_T10(f, w, inst["x"], inst["y"], inst["z"], t[-1], tol)


def instance_to_json(problem: Problem, f: FunctionModel | None, inst: dict) -> dict:
    sp = problem.space(f)
    out = {}
    for key, val in inst.items():
        if isinstance(val, DiscreteMeasure):
            out[key] = val.to_json()
        elif isinstance(val, list):
            out[key] = [point_to_json(sp, p) for p in val]
        elif isinstance(val, np.ndarray):
            out[key] = point_to_json(sp, val)
        else:
            out[key] = val
    return out


def instance_from_json(problem: Problem, f: FunctionModel | None, data: dict) -> dict:
    """Inverse of :func:`instance_to_json`; measures may also be given as weights/x/y."""
    sp = problem.space(f)
    t = problem.theorem
    if t in MEASURE_THEOREMS:
        if "mu" in data:
            mu = DiscreteMeasure.from_json(data["mu"], sp)
            nu = DiscreteMeasure.from_json(data["nu"], sp)
        else:
            w = np.asarray(data["weights"], float)
            mu = DiscreteMeasure(sp, w, np.array([point_from_json(sp, p) for p in data["x"]]))
            nu = DiscreteMeasure(sp, w, np.array([point_from_json(sp, p) for p in data["y"]]))
        return {"mu": mu, "nu": nu, "relation": data.get("relation", problem.relation)}
    out = {}
    for key, val in data.items():
        if key in ("chain", "A", "B"):
            out[key] = [point_from_json(sp, p) for p in val]
        elif key in ("x1", "x2", "y1", "y2", "x", "y", "z"):
            out[key] = point_from_json(sp, val)
        else:
            out[key] = val
    if "lambda" in out:
        out["lam"] = out.pop("lambda")
    return out


# -- search -----------------------------------------------------------------


@dataclass
class SearchResult:
    report: InequalityReport | None
    instance_index: int | None
    instances_tried: int
    skipped: int

    @property
    def found(self) -> bool:
        return self.report is not None

    def to_json(self) -> dict:
        return {
            "found": self.found,
            "instance_index": self.instance_index,
            "instances_tried": self.instances_tried,
            "skipped": self.skipped,
            "report": None if self.report is None else self.report.to_json(),
        }


def instance_rng(seed: int, cell: int, index: int) -> np.random.Generator:
    return np.random.default_rng([seed, cell, index])


def fixture_instances(problem: Problem, f: FunctionModel | None) -> list[dict]:
    """Deterministic instances tried before any random draw."""
    if problem.theorem == "t4" and f is not None and f.name == "neg_geomean":
        mu, nu = geomean_counterexample()
        return [{"mu": mu, "nu": nu, "relation": "ldown"}]
    return []


def search_counterexample(problem: Problem, budget: int, seed: int = 0, cell: int = 0) -> SearchResult:
    """First instance whose report fails, trying fixtures first; ``None`` on exhaustion."""
    f = problem.model()
    fixtures = fixture_instances(problem, f)
    skipped = 0
    for k in range(budget):
        inst = fixtures[k] if k < len(fixtures) else generate_instance(problem, f, instance_rng(seed, cell, k))
        try:
            report = run_instance(problem, f, inst)
        except PreconditionError:
            skipped += 1
            continue
        if not report.holds:
            return SearchResult(report, k, k + 1, skipped)
    return SearchResult(None, None, budget, skipped)
