"""Reproduce the two-atom pair on which -2 sqrt(xy) breaks the L-down inequality."""

import math
import time

from majorder.models import Modulus
from majorder.theorems import GEOMEAN_RESIDUAL, geomean_counterexample, verify_T4
from majorder.zoo import neg_geometric_mean


def main():
    f = neg_geometric_mean()
    mu, nu = geomean_counterexample()
    t0 = time.perf_counter()
    r = verify_T4(f, Modulus.zero(), mu, nu, "ldown")
    dt = time.perf_counter() - t0
    print("mu support:", mu.support.tolist())
    print("nu support:", nu.support.tolist())
    print(f"sum f(x) = {sum(r.details['phi_x']):.5f}   sum f(y) = {sum(r.details['phi_y']):.5f}")
    print(f"weighted lhs = {r.lhs:.5f}   rhs = {r.rhs:.5f}   residual = {r.residual:.6f}")
    print(f"holds = {r.holds}   expected residual = {GEOMEAN_RESIDUAL:.6f}   ({dt * 1e3:.3f} ms)")
    for a in r.advisories:
        print("advisory:", a)
    assert not r.holds and math.isclose(r.residual, GEOMEAN_RESIDUAL, abs_tol=1e-12)


if __name__ == "__main__":
    main()
