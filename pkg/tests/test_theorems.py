import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from majorder.errors import AmbiguousCaseError, CapabilityError, PreconditionError
from majorder.generators import config_for, gen_majorized_pair, gen_parallelogram, pair_from_deficits
from majorder.majorization import DiscreteMeasure
from majorder.models import CONVEX, ISOTONE_DIFFERENTIAL, Modulus, scalar_function
from majorder.order import OrderedSpace, pack
from majorder.theorems import (
    GEOMEAN_RESIDUAL,
    Theorem,
    gap,
    popoviciu_case,
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
from majorder.zoo import (
    frechet_hoeffding,
    linear,
    minus_entropy,
    neg_geometric_mean,
    negative_entropy,
    power_p_sum,
    resolve,
)

ZERO = Modulus.zero()
LINE = OrderedSpace.real_line()
sq = scalar_function(
    "square", lambda t: t * t, lambda t: 2 * t, lambda t: 2.0, claims={CONVEX, ISOTONE_DIFFERENTIAL}
)


def certified(name, relation="ldown", seed=0, n=3, **kw):
    f = resolve(name)
    cfg = config_for(f, relation=relation, n_points=n, **kw)
    return f, gen_majorized_pair(cfg, np.random.default_rng(seed))


def diag(*v):
    return pack(np.diag(np.asarray(v, float)))


# -- T4 --------------------------------------------------------------------


def test_t4_holds_on_certified_pairs():
    for seed in range(30):
        f, (mu, nu) = certified("neg_entropy:2", seed=seed)
        r = verify_T4(f, ZERO, mu, nu)
        assert r.holds and r.theorem is Theorem.T4_CONS1 and not r.advisories


def test_t4_geomean_violation():
    mu, nu = geomean_counterexample()
    r = verify_T4(neg_geometric_mean(), ZERO, mu, nu, "ldown")
    assert not r.holds
    assert r.lhs == pytest.approx(-2.0)
    assert r.rhs == pytest.approx(-(math.sqrt(1.5) + math.sqrt(0.5)))
    assert r.residual == pytest.approx(GEOMEAN_RESIDUAL, abs=1e-12)
    assert round(r.residual, 6) == round(-2 + math.sqrt(1.5) + math.sqrt(0.5), 6)
    assert any("isotone_differential" in a for a in r.advisories)


def test_t4_strict_claims():
    mu, nu = geomean_counterexample()
    with pytest.raises(CapabilityError):
        verify_T4(neg_geometric_mean(), ZERO, mu, nu, strict_claims=True)


def test_t4_identical_measures():
    f, (mu, _) = certified("neg_entropy:2", seed=4)
    r = verify_T4(f, ZERO, mu, mu)
    assert r.residual == 0.0 and r.holds


def test_t4_precondition_carries_verdict():
    f = negative_entropy(2)
    half = np.array([0.5, 0.5])
    sp = f.space
    mu = DiscreteMeasure(sp, half, [[1, 2], [2, 1]])
    with pytest.raises(PreconditionError) as info:
        verify_T4(f, ZERO, mu, mu)
    assert info.value.verdict is not None
    bad = DiscreteMeasure(sp, half, [[3, 3], [1, 1]])
    worse = DiscreteMeasure(sp, half, [[1, 1], [3, 3]])
    with pytest.raises(PreconditionError):
        verify_T4(f, ZERO, bad, worse)


def test_t4_weak_reports_every_prefix():
    f, (mu, nu) = certified("power_sum:3:2", "wldown", seed=1, n=4)
    r = verify_T4(f, ZERO, mu, nu, "wldown")
    assert r.theorem is Theorem.T4_CONS2
    assert [p.n for p in r.prefix_reports] == [1, 2, 3, 4]
    assert r.holds == all(p.holds for p in r.prefix_reports)


def test_t4_modulus_term():
    f, (mu, nu) = certified("quadratic:2:1", seed=3)
    r = verify_T4(f, Modulus.quadratic(1), mu, nu)
    d = np.linalg.norm(mu.support - nu.support, axis=1)
    assert r.rhs == pytest.approx(mu.weights @ (np.array(r.details["phi_x"]) + 0.5 * d**2))
    assert r.holds


def test_t4_duality_on_the_real_line(rng):
    for _ in range(200):
        n = 3
        w = rng.dirichlet(np.ones(n))
        chain = np.sort(rng.uniform(-2, 2, size=(n, 1)), axis=0)
        d = np.vstack([rng.uniform(0, 0.3, size=(n - 1, 1)), np.zeros((1, 1))])
        mu, nu = pair_from_deficits(LINE, w, chain, d, "rup")
        up = verify_T4(sq, ZERO, mu, nu, "rup")
        left = DiscreteMeasure(LINE, w, -nu.support)
        right = DiscreteMeasure(LINE, w, -mu.support)
        down = verify_T4(sq, ZERO, left, right, "ldown")
        assert up.residual == pytest.approx(down.residual, abs=1e-10)
        assert up.holds and down.holds


# -- T5 --------------------------------------------------------------------


def test_t5_minus_entropy_holds():
    f = minus_entropy(2, 0.5, 3.0)
    for seed in range(30):
        _, (mu, nu) = certified("minus_entropy:2:0.5:3", seed=seed)
        r = verify_T5(f, 1 / 0.5, mu, nu)
        assert r.holds and r.theorem is Theorem.T5_MAJ1SM


def test_t5_identical_measures():
    f = minus_entropy(2, 0.5, 3.0)
    _, (mu, _) = certified("minus_entropy:2:0.5:3")
    r = verify_T5(f, 2.0, mu, mu)
    assert r.residual == 0.0


def test_t5_linear_tightness():
    for relation in ("ldown", "rup"):
        for seed in range(20):
            f, (mu, nu) = certified("linear:1,-2", relation, seed=seed)
            sigma = 0.7
            r = verify_T5(f, sigma, mu, nu, relation)
            d = np.linalg.norm(mu.support - nu.support, axis=1)
            assert r.residual == pytest.approx(0.5 * sigma * mu.weights @ d**2, abs=1e-12)
            assert r.details["smoothing_slack"] == pytest.approx(r.residual, abs=1e-12)


def test_t5_sigma_from_constants():
    f, (mu, nu) = certified("quadratic:2:1", seed=2)
    assert verify_T5(f, None, mu, nu).details["smoothing_slack"] >= 0
    with pytest.raises(CapabilityError):
        verify_T5(negative_entropy(2), None, mu, nu)


def test_t5_weak_rup_needs_isotone():
    # minus entropy is antitone on [0.5, 3]; the weak R-up form fails
    failures = 0
    for seed in range(40):
        f, (mu, nu) = certified("minus_entropy:2:0.5:3", "wrup", seed=seed)
        r = verify_T5(f, 2.0, mu, nu, "wrup")
        assert any("isotone" in a for a in r.advisories)
        failures += not r.holds
    assert failures > 0


# -- T6 --------------------------------------------------------------------


def test_t6_examples():
    for name in ("fh_upper", "composite:square:1,1"):
        for seed in range(20):
            f, (mu, nu) = certified(name, seed=seed)
            assert verify_T6(f, mu, nu).holds
    f, (mu, _) = certified("fh_upper")
    assert verify_T6(f, mu, mu).residual == 0.0
    with pytest.raises(ValueError):
        verify_T6(f, mu, mu, "wldown")


# -- T7 and the parallelogram ---------------------------------------------


def test_t7_examples():
    p = lambda v: np.array([v], float)
    r = verify_T7(sq, p(0.5), p(-0.5), p(1), p(-1), 0.5)
    assert r.details["gap_y"] == pytest.approx(1.0) and r.details["gap_x"] == pytest.approx(0.25)
    assert r.holds
    assert verify_T7(sq, p(1), p(-1), p(1), p(-1), 0.5).residual == 0.0
    with pytest.raises(PreconditionError) as info:
        verify_T7(sq, p(2), p(-1), p(1), p(-1), 0.5)
    assert info.value.detail == "x1<=y1"
    with pytest.raises(ValueError):
        verify_T7(sq, p(1), p(-1), p(1), p(-1), 1.0)


def test_gap_helper():
    assert gap(sq, np.array([2.0]), np.array([0.0]), 0.5) == pytest.approx(1.0)


def test_parallelogram_examples():
    p = lambda v: np.array([v], float)
    r = verify_parallelogram(sq, p(1), p(-1), p(2), p(-2))
    assert r.residual == pytest.approx(6.0) and r.holds
    assert verify_parallelogram(sq, p(1), p(-1), p(1), p(-1)).residual == 0.0
    with pytest.raises(PreconditionError):
        verify_parallelogram(sq, p(1), p(0), p(2), p(-2))


def test_weak_parallelogram():
    f = power_p_sum(2, 2)
    r = verify_parallelogram(f, [1, 1], [0.5, 0.5], [2, 2], [0, 0.5], "weak_sum")
    assert r.theorem is Theorem.R9_WEAK_PARALLELOGRAM and r.holds
    with pytest.raises(PreconditionError):
        verify_parallelogram(f, [1, 1], [0.5, 0.5], [2, 2], [-1, 0.5], "weak_sum")


def test_t7_and_parallelogram_agree(rng):
    f = resolve("neg_entropy:2")
    for _ in range(100):
        inst = gen_parallelogram(f, rng, "equal")
        c1 = verify_parallelogram(f, inst["x1"], inst["x2"], inst["y1"], inst["y2"])
        t7 = verify_T7(f, inst["x1"], inst["x2"], inst["y1"], inst["y2"], 0.5)
        assert 2 * t7.residual == pytest.approx(c1.residual, abs=1e-10)


# -- T8 --------------------------------------------------------------------


def test_t8_examples():
    r = verify_T8(sq, ZERO, [[3.0], [1.0]])
    assert (r.lhs, r.rhs) == (8.0, 4.0)
    r = verify_T8(sq, ZERO, [[2.0]])
    assert r.residual == 0.0
    r = verify_T8(power_p_sum(2, 2), ZERO, [[2, 2], [1, 1]])
    assert (r.lhs, r.rhs) == (6.0, 2.0)
    with pytest.raises(PreconditionError):
        verify_T8(sq, ZERO, [[1.0], [3.0]])
    with pytest.raises(PreconditionError):
        verify_T8(sq, ZERO, [[1.0], [-1.0]])


def test_t8_with_nonzero_modulus_is_false_as_printed():
    # t^2 is exactly t^2-convex, yet the printed inequality fails
    r = verify_T8(sq, Modulus.quadratic(2), [[1.0], [0.0]])
    assert r.lhs == 1.0 and r.rhs == 3.0 and not r.holds
    r = verify_T8(sq, Modulus.quadratic(2), [[1.0], [0.0]], last_gap=True)
    assert r.details["omega_sum"] == 2.0


# -- T9 --------------------------------------------------------------------


def test_t9_examples():
    r = verify_T9("square", [diag(2, 1), diag(1, 0)], [diag(3, 1), diag(1, 1)])
    assert (r.lhs, r.rhs) == pytest.approx((12.0, 6.0))
    A = [diag(2, 1), diag(1, 0.5)]
    assert verify_T9("square", A, A).residual == pytest.approx(0.0, abs=1e-12)
    with pytest.raises(PreconditionError) as info:
        verify_T9("square", [diag(2, 1), diag(1, 0)], [diag(1, 1), diag(3, 1)])
    assert info.value.detail == {"j": 1}
    with pytest.raises(PreconditionError):
        verify_T9("square", [diag(1, 0), diag(2, 1)], [diag(1, 0), diag(2, 1)])


def test_t9_fails_for_exp():
    # exp' is not operator monotone: the trace inequality breaks on a legal instance
    a1 = np.array([[4.0, -3.0], [-3.0, 5.0]])
    a2 = np.array([[2.0, -3.0], [-3.0, 5.0]])
    d = np.ones((2, 2))
    A = [pack(a1), pack(a2)]
    B = [pack(a1 + d), pack(a2 - d)]
    r = verify_T9("exp", A, B)
    assert not r.holds and r.residual < -10
    assert any("operator monotone" in a for a in r.advisories)
    assert verify_T9("square", A, B).holds


def test_t9_single_matrix_weyl(rng):
    for _ in range(100):
        g1, g2 = rng.normal(size=(2, 2, 2))
        a = g1 @ g1.T
        b = a + g2 @ g2.T
        assert verify_T9("exp", [pack(a)], [pack(b)]).holds


# -- T10 -------------------------------------------------------------------


def test_t10_examples():
    p = lambda v: np.array([v], float)
    r = verify_T10(sq, ZERO, p(2), p(1), p(0), "a")
    assert r.lhs == pytest.approx(8 / 3) and r.rhs == pytest.approx(7 / 3)
    assert verify_T10(sq, ZERO, p(1), p(1), p(1)).residual == pytest.approx(0.0, abs=1e-15)
    f = power_p_sum(2, 2)
    for case in ("a", "b"):
        assert verify_T10(f, ZERO, [3, 3], [2, 2], [1, 1], case).holds


def test_t10_case_detection():
    sp = OrderedSpace.orthant(2)
    assert popoviciu_case(LINE, np.array([5.0]), np.array([1.0]), np.array([0.0])) == "a"
    assert popoviciu_case(LINE, np.array([5.0]), np.array([4.0]), np.array([0.0])) == "b"
    with pytest.raises(AmbiguousCaseError):
        popoviciu_case(sp, np.array([3.0, 0.0]), np.array([0.0, 0.0]), np.array([0.0, -3.0]))
    with pytest.raises(PreconditionError):
        verify_T10(sq, ZERO, np.array([5.0]), np.array([4.0]), np.array([0.0]), "a")


def test_t10_modulus_coefficients():
    p = lambda v: np.array([v], float)
    r = verify_T10(sq, Modulus.quadratic(2), p(2), p(1), p(0), "a")
    # differences 1, -3, 0, -1 over divisors 2, 6, 6, 2
    expected = [1 / 6 * 0.25, 1 / 6 * 0.25, 0.0, 1 / 3 * 0.25]
    np.testing.assert_allclose(r.details["omega_terms"], expected)


def test_report_json_and_digest():
    mu, nu = geomean_counterexample()
    r = verify_T4(neg_geometric_mean(), ZERO, mu, nu)
    js = r.to_json()
    assert js["theorem"] == "T4_Cons1" and len(js["instance_digest"]) == 16
    again = verify_T4(neg_geometric_mean(), ZERO, mu, nu)
    assert again.instance_digest == r.instance_digest


@given(st.floats(0.05, 0.95), st.floats(-2, 2), st.floats(0, 2), st.floats(0, 1), st.floats(0, 1))
def test_t7_holds_for_square(lam, y2, spread, a, b):
    y1 = y2 + spread
    m = (1 - lam) * y1 + lam * y2
    x2 = y2 + a * (m - y2)
    x1 = m + b * (y1 - m)
    r = verify_T7(sq, np.array([x1]), np.array([x2]), np.array([y1]), np.array([y2]), lam)
    assert r.holds
