"""Commuting SPD pairs with log A1 + log A2 = log B1 + log B2.

For nondecreasing f with f(exp(.)) convex, tr f(A1) + tr f(A2) <= tr f(B1) + tr f(B2).
The last scalar (f(exp(s)) concave) is a control that is expected to fail.
"""

import argparse

import numpy as np

from majorder.order import jacobi_eigh, pack, sym_apply, unpack

SCALARS = {
    "sqrt": np.sqrt,
    "identity": lambda t: t,
    "square": np.square,
    "log1p": np.log1p,
    "log": np.log,
    "neg_inverse": lambda t: -1.0 / t,
}
EXPECT_HOLD = {"sqrt", "identity", "square", "log1p", "log"}


def draw(rng, m):
    q, _ = np.linalg.qr(rng.normal(size=(m, m)))
    # per eigendirection: log b2 <= log a2 <= log a1 <= log b1 with equal sums
    a2 = rng.normal(size=m)
    a1 = a2 + rng.exponential(size=m)
    t = rng.exponential(size=m)
    b1, b2 = a1 + t, a2 - t
    mats = [(q * np.exp(v)) @ q.T for v in (a1, a2, b1, b2)]
    return [(m_ + m_.T) / 2 for m_ in mats]


def trace_f(f, a):
    return float(np.sum(jacobi_eigh(unpack(sym_apply(f, pack(a))))[0]))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--size", type=int, default=3)
    ap.add_argument("--trials", type=int, default=2000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    worst = {k: np.inf for k in SCALARS}
    for _ in range(args.trials):
        a1, a2, b1, b2 = draw(rng, args.size)
        assert np.allclose(a1 @ a2, a2 @ a1, atol=1e-8)
        assert min(jacobi_eigh(b1 - a1)[0]) > -1e-9 and min(jacobi_eigh(a2 - b2)[0]) > -1e-9
        for name, f in SCALARS.items():
            res = trace_f(f, b1) + trace_f(f, b2) - trace_f(f, a1) - trace_f(f, a2)
            worst[name] = min(worst[name], res)
    for name, w in worst.items():
        status = "holds" if w >= -1e-9 else "FAILS"
        tag = "" if (name in EXPECT_HOLD) == (w >= -1e-9) else "  (unexpected)"
        print(f"{name:12s} worst residual {w:+.3e}  {status}{tag}")


if __name__ == "__main__":
    main()
