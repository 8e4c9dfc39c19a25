"""Suite configuration, execution and report files.

A suite is a TOML file::

    [suite]
    name = "demo"
    seed = 1
    instances_per_cell = 100

    [[cell]]
    theorem = "t4"
    function = "neg_entropy:2"
    relation = "ldown"
    expect = "sound"          # or "violation"

Each instance draws from ``default_rng([seed, cell, instance])``, so results
do not depend on how cells are split across worker processes.
"""

from __future__ import annotations

import csv
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from importlib import resources
from pathlib import Path

import tomli

from .errors import MajorderError, PreconditionError
from .harness import Problem, fixture_instances, generate_instance, instance_rng, run_instance

EXPECTATIONS = ("sound", "violation")
CHUNK = 250


class SuiteConfigError(ValueError):
    pass


@dataclass(frozen=True)
class CellConfig:
    problem: Problem
    expect: str = "sound"
    line: int | None = None

    @property
    def label(self) -> str:
        p = self.problem
        return f"{p.theorem}/{p.function}/{p.relation}/{p.modulus}"


@dataclass(frozen=True)
class SuiteConfig:
    name: str = "suite"
    seed: int = 0
    instances_per_cell: int = 100
    cells: tuple[CellConfig, ...] = ()


@dataclass
class CellSummary:
    index: int
    label: str
    expect: str
    attempted: int = 0
    held: int = 0
    violated: int = 0
    skipped: int = 0
    errors: int = 0
    worst_residual: float | None = None
    first_violation: int | None = None

    @property
    def ok(self) -> bool:
        if self.expect == "violation":
            return self.violated > 0
        return self.violated == 0 and self.errors == 0

    def to_row(self) -> dict:
        row = asdict(self)
        row["ok"] = self.ok
        return row


@dataclass
class SuiteSummary:
    name: str
    cells: list[CellSummary] = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.cells)

    @property
    def exit_code(self) -> int:
        return 0 if self.ok else 1

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "ok": self.ok,
            "wall_time": self.wall_time,
            "cells": [c.to_row() for c in self.cells],
        }


# -- parsing ----------------------------------------------------------------


def _cell_lines(text: str) -> list[int]:
    return [i + 1 for i, line in enumerate(text.splitlines()) if line.strip().startswith("[[cell]]")]


_PROBLEM_KEYS = {f.name for f in fields(Problem)}


def parse_suite(text: str) -> SuiteConfig:
    """Parse suite TOML; every error message carries a line number."""
    try:
        data = tomli.loads(text)
    except tomli.TOMLDecodeError as exc:
        raise SuiteConfigError(f"TOML syntax error: {exc}") from exc
    head = data.get("suite", {})
    unknown = set(data) - {"suite", "cell"}
    if unknown:
        raise SuiteConfigError(f"line 1: unknown top-level tables {sorted(unknown)}")
    lines = _cell_lines(text)
    cells = []
    for k, raw in enumerate(data.get("cell", [])):
        line = lines[k] if k < len(lines) else None
        raw = dict(raw)
        expect = raw.pop("expect", "sound")
        if expect not in EXPECTATIONS:
            raise SuiteConfigError(f"line {line}: expect must be one of {EXPECTATIONS}, got {expect!r}")
        bad = set(raw) - _PROBLEM_KEYS
        if bad:
            raise SuiteConfigError(f"line {line}: unknown cell keys {sorted(bad)}")
        try:
            problem = Problem(**raw)
            problem.model()
        except (TypeError, ValueError, KeyError) as exc:
            raise SuiteConfigError(f"line {line}: {exc}") from exc
        cells.append(CellConfig(problem, expect, line))
    try:
        return SuiteConfig(
            name=str(head.get("name", "suite")),
            seed=int(head.get("seed", 0)),
            instances_per_cell=int(head.get("instances_per_cell", 100)),
            cells=tuple(cells),
        )
    except (TypeError, ValueError) as exc:
        raise SuiteConfigError(f"line 1: bad [suite] table: {exc}") from exc


def load_suite(path: str | Path) -> SuiteConfig:
    return parse_suite(Path(path).read_text())


def bundled_suite(name: str = "standard") -> SuiteConfig:
    text = resources.files("majorder").joinpath("suites", f"{name}.toml").read_text()
    return parse_suite(text)


# -- execution --------------------------------------------------------------


def _run_chunk(cell: CellConfig, index: int, seed: int, start: int, stop: int) -> list[dict]:
    """Records for instances ``start..stop-1`` of one cell (runs in workers)."""
    problem = cell.problem
    f = problem.model()
    fixtures = fixture_instances(problem, f) if cell.expect == "violation" else []
    out = []
    for k in range(start, stop):
        record = {"cell": index, "instance": k, "seed": [seed, index, k], "label": cell.label, "expect": cell.expect}
        try:
            inst = fixtures[k] if k < len(fixtures) else generate_instance(problem, f, instance_rng(seed, index, k))
            report = run_instance(problem, f, inst)
        except PreconditionError as exc:
            record.update(status="skipped", error=str(exc))
        except (MajorderError, ValueError, ArithmeticError) as exc:
            record.update(status="error", error=f"{type(exc).__name__}: {exc}")
        else:
            record.update(status="held" if report.holds else "violated", report=report.to_json())
        out.append(record)
    return out


def _tasks(config: SuiteConfig):
    n = config.instances_per_cell
    for i, cell in enumerate(config.cells):
        for start in range(0, n, CHUNK):
            yield cell, i, config.seed, start, min(n, start + CHUNK)


def _aggregate(config: SuiteConfig, records) -> list[CellSummary]:
    cells = [CellSummary(i, c.label, c.expect) for i, c in enumerate(config.cells)]
    for r in records:
        c = cells[r["cell"]]
        c.attempted += 1
        status = r["status"]
        if status == "held":
            c.held += 1
        elif status == "violated":
            c.violated += 1
            if c.first_violation is None:
                c.first_violation = r["instance"]
        elif status == "skipped":
            c.skipped += 1
        else:
            c.errors += 1
        if "report" in r:
            res = r["report"]["residual"]
            c.worst_residual = res if c.worst_residual is None else min(c.worst_residual, res)
    return cells


def run_suite(config: SuiteConfig, out_dir: str | Path | None = None, jobs: int = 1) -> SuiteSummary:
    """Run every cell; optionally write ``reports.jsonl``, ``summary.csv`` and ``summary.json``."""
    t0 = time.perf_counter()
    tasks = list(_tasks(config))
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_run_chunk, *zip(*tasks)))
    else:
        chunks = [_run_chunk(*t) for t in tasks]
    records = [r for chunk in chunks for r in chunk]
    summary = SuiteSummary(config.name, _aggregate(config, records), time.perf_counter() - t0)
    if out_dir is not None:
        write_outputs(Path(out_dir), records, summary)
    return summary


def write_outputs(out: Path, records: list[dict], summary: SuiteSummary) -> None:
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "reports.jsonl", "w") as fh:
        for r in records:
            fh.write(json.dumps(r, sort_keys=True, separators=(",", ":")) + "\n")
    with open(out / "summary.csv", "w", newline="") as fh:
        cols = list(CellSummary(0, "", "sound").to_row())
        writer = csv.DictWriter(fh, fieldnames=cols)
        writer.writeheader()
        for c in summary.cells:
            writer.writerow(c.to_row())
    # per-instance CSV for spreadsheets
    with open(out / "instances.csv", "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["cell", "instance", "theorem", "seed", "status", "holds", "residual"])
        for r in records:
            rep = r.get("report") or {}
            seed = ":".join(str(v) for v in r["seed"])
            writer.writerow([r["cell"], r["instance"], rep.get("theorem", ""), seed, r["status"], rep.get("holds", ""), rep.get("residual", "")])
    (out / "summary.json").write_text(json.dumps(summary.to_json(), indent=2) + "\n")
