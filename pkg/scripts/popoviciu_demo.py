"""Residual distribution of both Popoviciu cases on a few zoo functions."""

import argparse

import numpy as np

from majorder.generators import gen_popoviciu
from majorder.models import Modulus
from majorder.theorems import verify_T10
from majorder.zoo import resolve

FUNCTIONS = ["neg_entropy:2", "power_sum:3:2", "lse:2", "trace:square:2"]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=500)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()
    w = Modulus.zero()
    for name in FUNCTIONS:
        f = resolve(name)
        for case in "ab":
            rng = np.random.default_rng([args.seed, ord(case)])
            res = []
            for _ in range(args.trials):
                inst = gen_popoviciu(f, rng, case)
                res.append(verify_T10(f, w, inst["x"], inst["y"], inst["z"], case).residual)
            res = np.array(res)
            print(f"{name:16s} case {case}: min {res.min():+.3e}  median {np.median(res):+.3e}  violations {(res < -1e-9).sum()}")
    # a fixed instance on the line with both cases shown term by term
    f = resolve("power_sum:1:3")
    r = verify_T10(f, Modulus.quadratic(1.0), [3.0], [1.0], [0.0])
    print(f"\nx=3, y=1, z=0 with t^3 on R+: case {r.instance['case']}, lhs {r.lhs:.4f}, rhs {r.rhs:.4f}")
    print("omega terms:", [round(t, 4) for t in r.details["omega_terms"]])


if __name__ == "__main__":
    main()
