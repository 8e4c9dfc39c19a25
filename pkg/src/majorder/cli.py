"""Command line entry point ``majorder``.

Exit codes: 0 success, 1 verification failure (or violation found), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from .errors import ChainViolationError, MajorderError, PreconditionError
from .harness import THEOREMS, Problem, generate_instance, instance_from_json, run_instance, search_counterexample
from .majorization import DiscreteMeasure, Relation, check_hlp, check_relation
from .order import OrderedSpace, parse_space, point_from_json
from .smoothing import MollifierSpec, smoothing_report
from .suite import SuiteConfigError, bundled_suite, load_suite, run_suite
from .zoo import resolve

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2, sort_keys=True))


def _read_json(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def _space_of(data: dict) -> OrderedSpace:
    sp = data.get("space", "real_line")
    return parse_space(sp) if isinstance(sp, str) else OrderedSpace.from_json(sp)


def cmd_check(args) -> int:
    data = _read_json(args.input)
    relation = Relation(args.relation)
    if relation in (Relation.HLP, Relation.WHLP):
        verdict = check_hlp(data["x"], data["y"], relation.weak, args.tol)
    else:
        sp = _space_of(data)
        n = len(data["x"])
        w = np.asarray(data.get("weights", [1.0 / n] * n), float)
        mu = DiscreteMeasure(sp, w, np.array([point_from_json(sp, p) for p in data["x"]]))
        nu = DiscreteMeasure(sp, w, np.array([point_from_json(sp, p) for p in data["y"]]))
        try:
            verdict = check_relation(mu, nu, relation, args.tol)
        except ChainViolationError as exc:
            out = exc.verdict.to_json()
            out["error"] = str(exc)
            _emit(out)
            return EXIT_FAIL
    _emit(verdict.to_json())
    return EXIT_OK if verdict.holds else EXIT_FAIL


def _problem(args, theorem: str) -> Problem:
    return Problem(
        theorem=theorem,
        function=args.function,
        modulus=args.modulus,
        sigma=args.sigma,
        relation=args.relation,
        n_points=args.n,
        matrix_size=args.matrix_size,
        tol=args.tol,
    )


def cmd_verify(args) -> int:
    problem = _problem(args, args.theorem)
    f = problem.model()
    if args.instance:
        inst = instance_from_json(problem, f, _read_json(args.instance))
    elif args.generate:
        inst = generate_instance(problem, f, np.random.default_rng(args.seed))
    else:
        raise UsageError("give --instance FILE or --generate")
    try:
        report = run_instance(problem, f, inst)
    except PreconditionError as exc:
        _emit({"precondition_failed": str(exc), "detail": exc.detail,
               "verdict": None if exc.verdict is None else exc.verdict.to_json()})
        return EXIT_FAIL
    _emit(report.to_json())
    return EXIT_OK if report.holds else EXIT_FAIL


def cmd_search(args) -> int:
    result = search_counterexample(_problem(args, args.theorem), args.budget, args.seed)
    _emit(result.to_json())
    return EXIT_FAIL if result.found else EXIT_OK


def _parse_box(text: str, dim: int):
    try:
        lo_s, hi_s = text.split("..")
        lo = [float(v) for v in lo_s.split(",")]
        hi = [float(v) for v in hi_s.split(",")]
    except ValueError as exc:
        raise UsageError(f"box must look like LO..HI or a,b..c,d, got {text!r}") from exc
    lo = lo * dim if len(lo) == 1 else lo
    hi = hi * dim if len(hi) == 1 else hi
    return lo, hi


def cmd_smooth(args) -> int:
    f = resolve(args.function)
    eps = args.epsilon if args.epsilon == "auto" else float(args.epsilon)
    spec = MollifierSpec(args.bandwidth, _parse_box(args.box, f.space.ambient_dim), eps, args.nodes)
    report = smoothing_report(f, spec, args.samples, args.seed, args.tol)
    Path(args.report).write_text(json.dumps(report, indent=2, sort_keys=True) + "\n")
    _emit(report)
    failed = [k for k in ("two_box", "omega_convex") if k in report and not report[k]["holds"]]
    return EXIT_FAIL if failed or not report["within_bound"] else EXIT_OK


def cmd_suite(args) -> int:
    try:
        config = bundled_suite(args.config) if not args.config.endswith(".toml") else load_suite(args.config)
    except FileNotFoundError as exc:
        raise UsageError(str(exc)) from exc
    if args.instances is not None:
        config = replace(config, instances_per_cell=args.instances)
    summary = run_suite(config, args.out, args.jobs)
    for c in summary.cells:
        mark = "ok  " if c.ok else "FAIL"
        print(f"{mark} [{c.index:2d}] {c.label:48s} expect={c.expect:9s} held={c.held} "
              f"violated={c.violated} skipped={c.skipped} errors={c.errors} worst={c.worst_residual}")
    print(f"{summary.name}: {'all cells ok' if summary.ok else 'failures'} in {summary.wall_time:.1f}s")
    return summary.exit_code


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="majorder", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="test a majorization relation between two measures")
    c.add_argument("--relation", required=True, choices=[r.value for r in Relation])
    c.add_argument("--input", required=True)
    c.add_argument("--tol", type=float, default=1e-9)
    c.set_defaults(run=cmd_check)

    def problem_args(q, theorem_required=True):
        q.add_argument("--theorem", required=theorem_required, choices=THEOREMS)
        q.add_argument("--function", required=True, help="zoo name, e.g. neg_entropy:2 (scalar name for t9)")
        q.add_argument("--modulus", default="zero", help="zero | quad:ALPHA | negquad:BETA")
        q.add_argument("--sigma", type=float, default=None)
        q.add_argument("--relation", default="ldown", choices=["ldown", "wldown", "rup", "wrup"])
        q.add_argument("--n", type=int, default=3, help="points per family")
        q.add_argument("--matrix-size", type=int, default=2)
        q.add_argument("--seed", type=int, default=0)
        q.add_argument("--tol", type=float, default=1e-9)

    v = sub.add_parser("verify", help="evaluate one theorem on one instance")
    problem_args(v)
    v.add_argument("--instance")
    v.add_argument("--generate", action="store_true")
    v.set_defaults(run=cmd_verify)

    s = sub.add_parser("search", help="look for a violating instance")
    problem_args(s)
    s.add_argument("--budget", type=int, default=10_000)
    s.set_defaults(run=cmd_search)

    m = sub.add_parser("smooth", help="mollify a zoo function and measure preserved properties")
    m.add_argument("--function", required=True)
    m.add_argument("--epsilon", default="0")
    m.add_argument("--bandwidth", type=float, required=True)
    m.add_argument("--box", required=True, help="LO..HI or lo1,lo2..hi1,hi2")
    m.add_argument("--nodes", type=int, default=5)
    m.add_argument("--samples", type=int, default=500)
    m.add_argument("--seed", type=int, default=0)
    m.add_argument("--tol", type=float, default=1e-10)
    m.add_argument("--report", required=True)
    m.set_defaults(run=cmd_smooth)

    u = sub.add_parser("suite", help="run a suite of cells and write reports")
    u.add_argument("--config", required=True, help="suite TOML file, or the name of a bundled suite")
    u.add_argument("--out", required=True)
    u.add_argument("--jobs", type=int, default=1)
    u.add_argument("--instances", type=int, default=None, help="override instances per cell")
    u.set_defaults(run=cmd_suite)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.run(args)
    except (UsageError, SuiteConfigError, KeyError, ValueError) as exc:
        print(f"majorder: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except MajorderError as exc:
        print(f"majorder: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
