import math

import numpy as np
import pytest

from majorder.convex import (
    check_2box_monotone,
    check_isotone,
    check_isotone_differential,
    check_omega_convex,
    check_strongly_smooth,
)
from majorder.errors import DomainError
from majorder.models import CONVEX, ISOTONE, ISOTONE_DIFFERENTIAL, STRONGLY_SMOOTH, TWO_BOX_MONOTONE, Modulus
from majorder.order import OrderedSpace, pack, unpack
from majorder.zoo import (
    ZOO_EXAMPLES,
    bilinear_saddle,
    composite_linear,
    frechet_hoeffding,
    log_sum_exp,
    neg_geometric_mean,
    negative_entropy,
    perspective,
    power_p_sum,
    resolve,
    trace_function,
)


def _check(f, claim):
    if claim == CONVEX:
        return check_omega_convex(f, Modulus.zero(), 600, seed=2).holds
    if claim == ISOTONE:
        return check_isotone(f, 600, seed=2).holds
    if claim == ISOTONE_DIFFERENTIAL:
        return check_isotone_differential(f, 600, seed=2).holds
    if claim == TWO_BOX_MONOTONE:
        return check_2box_monotone(f, 600, seed=2).holds
    if claim == STRONGLY_SMOOTH:
        return check_strongly_smooth(f, f.constants["sigma"] or 1.0, 600, seed=2).holds
    return None


def _applicable(f, claim):
    if claim == TWO_BOX_MONOTONE and (f.space.is_matrix or f.space.ambient_dim < 2):
        return False
    if claim in (ISOTONE_DIFFERENTIAL, STRONGLY_SMOOTH) and not f.has_gradient:
        return False
    if claim == STRONGLY_SMOOTH and "sigma" not in f.constants:
        return False
    return True


CASES = [
    (name, claim, expected)
    for name in ZOO_EXAMPLES
    for claim in (CONVEX, ISOTONE, ISOTONE_DIFFERENTIAL, TWO_BOX_MONOTONE, STRONGLY_SMOOTH)
    for expected in (True, False)
    if claim in (resolve(name).claims if expected else resolve(name).disclaims)
]


@pytest.mark.parametrize("name,claim,expected", CASES, ids=[f"{n}-{c}-{e}" for n, c, e in CASES])
def test_claims_agree_with_checkers(name, claim, expected):
    f = resolve(name)
    if not _applicable(f, claim):
        pytest.skip("checker does not apply")
    assert _check(f, claim) is expected


def test_perspective_examples():
    f = perspective("square")
    assert f([-1, 1]) == pytest.approx(1.0)
    np.testing.assert_allclose(f.grad([-1, 1]), [-2, -1])
    assert f.hess([-1, 1])[0, 1] == pytest.approx(2.0)
    lin = perspective("linear", "all")
    assert lin([3.0, 2.0]) == pytest.approx(3.0)
    assert ISOTONE_DIFFERENTIAL in f.claims
    with pytest.raises(DomainError):
        f.require([-1.0, 0.0])


def test_negative_entropy_examples():
    e = negative_entropy(2)
    assert e([1, 1]) == 0.0
    np.testing.assert_allclose(e.grad([1, 1]), [1, 1])
    assert e([2, 1]) == pytest.approx(2 * math.log(2))
    with pytest.raises(DomainError):
        e([0.0, 1.0])


def test_log_sum_exp_examples():
    f = log_sum_exp(2)
    assert f([0, 0]) == pytest.approx(math.log(2))
    np.testing.assert_allclose(f.grad([0, 0]), [0.5, 0.5])
    assert f([800.0, 800.0]) == pytest.approx(800 + math.log(2))
    assert ISOTONE_DIFFERENTIAL in f.disclaims and TWO_BOX_MONOTONE in f.disclaims


def test_trace_function_examples():
    sq = trace_function("square", 2)
    a = pack(np.diag([1.0, 2.0]))
    assert sq(a) == pytest.approx(5.0)
    np.testing.assert_allclose(unpack(sq.grad(a)), np.diag([2.0, 4.0]), atol=1e-12)
    assert trace_function("exp", 2)(pack(np.zeros((2, 2)))) == pytest.approx(2.0)
    s = trace_function("xlogx", 2)
    assert s(pack(np.diag([0.5, 0.5]))) == pytest.approx(math.log(0.5))
    with pytest.raises(DomainError):
        s(pack(np.diag([1.0, -1.0])))


def test_trace_claims_follow_scalar():
    assert ISOTONE in trace_function("exp", 2).claims
    assert ISOTONE not in trace_function("square", 2).claims
    assert ISOTONE_DIFFERENTIAL in trace_function("square", 2).claims
    # exp' = exp is not operator monotone
    assert ISOTONE_DIFFERENTIAL in trace_function("exp", 2).disclaims


def test_trace_diagonal_is_separable(rng):
    for name, fs in (("square", np.square), ("exp", np.exp), ("xlogx", lambda t: t * np.log(t))):
        f = trace_function(name, 3)
        for _ in range(20):
            lam = rng.uniform(0.1, 3, 3)
            assert f(pack(np.diag(lam))) == pytest.approx(float(np.sum(fs(lam))), abs=1e-10)


def test_neg_geomean_examples():
    g = neg_geometric_mean()
    np.testing.assert_allclose(g.grad([1, 1]), [-1, -1])
    np.testing.assert_allclose(g.grad([2, 1]), [-1 / math.sqrt(2), -math.sqrt(2)])
    assert g([1.5, 1]) + g([0.5, 1]) == pytest.approx(-3.8637, abs=1e-4)
    assert g([0, 0]) == 0.0
    assert check_omega_convex(g, Modulus.zero(), 1000).holds
    assert not check_isotone_differential(g, 1000).holds


def test_bilinear_saddle_examples(rng):
    h = bilinear_saddle()
    for y in rng.uniform(-3, 3, 10):
        assert h([0.5, y]) == 0.0
    assert h.hess([0.3, 9.0])[0, 1] == 4.0
    assert h([1, 0]) == -1 and h([0, 1]) == -1 and h([0.5, 0.5]) == 0 > -1


def test_frechet_hoeffding_examples():
    lo, up = frechet_hoeffding("lower"), frechet_hoeffding("upper")
    assert lo([0.5, 0.25]) == 0.25
    assert up([0.9, 0.9]) == pytest.approx(0.8)
    assert CONVEX in up.claims and CONVEX in lo.disclaims
    with pytest.raises(ValueError):
        frechet_hoeffding("middle")


def test_power_sum_examples():
    assert power_p_sum(2, 2, positive=False)([1, -1]) == 2.0
    np.testing.assert_allclose(power_p_sum(2, 3).grad([1, 1]), [3, 3])
    assert power_p_sum(2, 1.5)([4, 0]) == pytest.approx(8.0)
    with pytest.raises(ValueError):
        power_p_sum(2, 1.0)


def test_composite_linear_examples():
    f = composite_linear("square", [1, 1])
    assert f([1, 2]) == 9.0
    zero = composite_linear("square", [0, 0])
    assert zero([5, -3]) == zero([0, 0])
    with pytest.raises(ValueError):
        composite_linear("square", [1, -1])


def test_resolve_names():
    for name in ZOO_EXAMPLES:
        assert isinstance(resolve(name).space, OrderedSpace)
    with pytest.raises(KeyError):
        resolve("nope")
    with pytest.raises(KeyError):
        resolve("trace:nope:2")
    with pytest.raises(ValueError):
        resolve("neg_entropy:x")
