"""Trace-family inequality: holds for t^2, fails for exp on an integer instance.

exp is increasing and convex but its derivative is not operator monotone,
so trace(exp(.)) has no isotone differential.  A random probe over small
integer pairs B = (A1 + D, A2 - D) follows.
"""

import argparse

import numpy as np

from majorder.errors import PreconditionError
from majorder.order import pack
from majorder.theorems import verify_T9

A1 = np.array([[4.0, -3.0], [-3.0, 5.0]])
A2 = np.array([[2.0, -3.0], [-3.0, 5.0]])
D = np.ones((2, 2))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=20000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    A = [pack(A1), pack(A2)]
    B = [pack(A1 + D), pack(A2 - D)]
    for name in ("square", "exp"):
        r = verify_T9(name, A, B)
        print(f"{name:7s} lhs {r.lhs:12.4f} rhs {r.rhs:12.4f} residual {r.residual:+.4f} holds={r.holds}")
    rng = np.random.default_rng(args.seed)

    def psd(k):
        g = rng.integers(-k, k + 1, size=(2, 2)).astype(float)
        return g @ g.T

    fails = {"square": 0, "exp": 0}
    valid = 0
    for _ in range(args.trials):
        a2 = psd(2)
        a1 = a2 + psd(2)
        d = psd(1)
        A, B = [pack(a1), pack(a2)], [pack(a1 + d), pack(a2 - d)]
        try:
            reports = {name: verify_T9(name, A, B) for name in fails}
        except PreconditionError:
            continue
        valid += 1
        for name, r in reports.items():
            fails[name] += not r.holds
    print(f"random probe: {valid} valid instances of {args.trials}, failures {fails}")


if __name__ == "__main__":
    main()
