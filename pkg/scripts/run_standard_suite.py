"""Run the bundled suite and print the per-cell summary."""

import argparse
import sys

from majorder.suite import bundled_suite, load_suite, run_suite


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--config", default="standard", help="bundled suite name or TOML path")
    ap.add_argument("--out", default="suite_out")
    ap.add_argument("--jobs", type=int, default=4)
    args = ap.parse_args()
    cfg = load_suite(args.config) if args.config.endswith(".toml") else bundled_suite(args.config)
    summary = run_suite(cfg, args.out, jobs=args.jobs)
    for c in summary.cells:
        worst = "-" if c.worst_residual is None else f"{c.worst_residual:+.2e}"
        print(f"{'ok ' if c.ok else 'BAD'} {c.index:2d} {c.label:50s} {c.expect:9s} held {c.held:5d} violated {c.violated:5d} skipped {c.skipped:4d} worst {worst}")
    print(f"{summary.name}: {'ok' if summary.ok else 'FAILED'} in {summary.wall_time:.1f}s -> {args.out}")
    sys.exit(summary.exit_code)


if __name__ == "__main__":
    main()
