import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from majorder.errors import DimensionError, DomainError, EmptyChainError, NumericError
from majorder.order import (
    OrderedSpace,
    Tolerance,
    cone_contains,
    is_monotone_chain,
    jacobi_eigh,
    leq,
    min_eigenvalue,
    pack,
    parse_space,
    point_from_json,
    point_to_json,
    sym_apply,
    unpack,
)


R2 = OrderedSpace.orthant(2)
L2 = OrderedSpace.loewner(2)


def random_sym(rng, m, scale=1.0):
    g = rng.normal(size=(m, m)) * scale
    return (g + g.T) / 2


def test_cone_contains_examples():
    assert cone_contains(R2, [0, 0])
    assert cone_contains(L2, pack(np.array([[2.0, 1.0], [1.0, 2.0]])))
    assert not cone_contains(OrderedSpace.orthant(3), [1, -1, 1], tol=0)


def test_cone_contains_dimension_mismatch():
    with pytest.raises(DimensionError):
        cone_contains(R2, [1, 2, 3])


def test_leq_examples():
    line = OrderedSpace.real_line()
    assert leq(line, [1.0], [2.0])
    assert leq(R2, [1, 5], [1, 5])
    a = pack(np.diag([1.0, 3.0]))
    b = pack(np.diag([2.0, 2.0]))
    assert not leq(L2, a, b)


def test_monotone_chain_examples():
    assert is_monotone_chain(R2, [np.array([3.0, -1.0])])
    assert is_monotone_chain(R2, [[2, 2], [1, 1], [0, 0]], "decreasing")
    assert not is_monotone_chain(R2, [[2, 0], [0, 2]], "decreasing")
    assert is_monotone_chain(R2, [[0, 0], [1, 1]], "increasing")
    with pytest.raises(EmptyChainError):
        is_monotone_chain(R2, [])


def test_min_eigenvalue_examples():
    assert min_eigenvalue(pack(np.eye(2))) == pytest.approx(1.0)
    assert min_eigenvalue(pack(np.array([[2.0, 1.0], [1.0, 2.0]]))) == pytest.approx(1.0, abs=1e-12)
    assert min_eigenvalue(pack(np.diag([-3.0, 5.0]))) == -3.0
    with pytest.raises(NumericError):
        min_eigenvalue(np.array([1.0, np.nan, 1.0]))


def test_sym_apply_examples():
    m = pack(np.array([[1.0, 0.3], [0.3, -2.0]]))
    np.testing.assert_allclose(sym_apply(lambda t: t, m), m, atol=1e-10)
    np.testing.assert_allclose(unpack(sym_apply(np.exp, pack(np.diag([0.0, 1.0])))), np.diag([1, math.e]), atol=1e-12)
    swap = pack(np.array([[0.0, 1.0], [1.0, 0.0]]))
    np.testing.assert_allclose(unpack(sym_apply(np.square, swap)), np.eye(2), atol=1e-12)
    with pytest.raises(DomainError):
        sym_apply(np.log, pack(np.diag([1.0, -1.0])))


def test_pack_roundtrip_and_frobenius(rng):
    a = random_sym(rng, 4)
    p = pack(a)
    assert p.size == 10
    np.testing.assert_array_equal(unpack(p), a)
    space = OrderedSpace.loewner(4)
    assert space.norm(p) == pytest.approx(np.linalg.norm(a))
    b = random_sym(rng, 4)
    assert space.inner(p, pack(b)) == pytest.approx(np.sum(a * b))


@pytest.mark.parametrize("m", [1, 2, 3, 5, 8])
def test_jacobi_matches_numpy(rng, m):
    for _ in range(20):
        a = random_sym(rng, m, scale=3.0)
        lam, q = jacobi_eigh(a)
        np.testing.assert_allclose(np.sort(lam), np.linalg.eigvalsh(a), atol=1e-9 * max(1, np.linalg.norm(a)))
        recon = (q * lam) @ q.T
        assert np.linalg.norm(recon - a) <= 1e-9 * max(np.linalg.norm(a), 1e-300)
        np.testing.assert_allclose(q.T @ q, np.eye(m), atol=1e-10)


def test_exp_log_roundtrip_spd(rng):
    for m in (2, 3, 4):
        g = rng.normal(size=(m, m))
        a = pack(g @ g.T + 0.1 * np.eye(m))
        np.testing.assert_allclose(sym_apply(np.exp, sym_apply(np.log, a)), a, atol=1e-8)


def test_tolerance_policy():
    with pytest.raises(ValueError):
        Tolerance(0.0, 0.0)
    assert Tolerance.zero().threshold(10.0) == 0.0
    assert Tolerance(1e-3, 1e-2).threshold(10.0) == pytest.approx(0.101)
    assert Tolerance.of(1e-6).rel_tol == 0.0
    # boundary of the cone: tolerance decides
    assert cone_contains(R2, [1.0, -1e-10])
    assert not cone_contains(R2, [1.0, -1e-10], tol=0)


def test_space_validation_and_json():
    with pytest.raises(DimensionError):
        OrderedSpace.loewner(0)
    with pytest.raises(NumericError):
        R2.point([1.0, math.inf])
    assert parse_space("loewner:3").ambient_dim == 6
    assert parse_space("real").describe() == "RealLine"
    p = pack(np.array([[1.0, 2.0], [2.0, 5.0]]))
    enc = point_to_json(L2, p)
    assert enc["M"] == 2 and "packed_sym" in enc
    np.testing.assert_array_equal(point_from_json(L2, enc), p)
    assert OrderedSpace.from_json(L2.to_json()) == L2


finite = st.floats(-50, 50, allow_nan=False)
vec3 = st.lists(finite, min_size=3, max_size=3).map(np.array)


@given(vec3)
def test_leq_reflexive(a):
    assert leq(OrderedSpace.orthant(3), a, a)


@given(vec3, vec3, vec3)
def test_leq_transitive(a, b, c):
    sp = OrderedSpace.orthant(3)
    tol = Tolerance(1e-9, 1e-9)
    if leq(sp, a, b, tol) and leq(sp, b, c, tol):
        assert leq(sp, a, c, tol.scaled(2))


@given(st.lists(st.integers(-5, 5), min_size=3, max_size=3), st.lists(st.integers(-5, 5), min_size=3, max_size=3))
def test_antisymmetry_exact(a, b):
    sp = OrderedSpace.orthant(3)
    if leq(sp, a, b, 0) and leq(sp, b, a, 0):
        assert a == b


@given(vec3, vec3)
def test_loewner_diagonal_agrees_with_orthant(a, b):
    sp = OrderedSpace.loewner(3)
    da, db = pack(np.diag(a)), pack(np.diag(b))
    assert leq(sp, da, db, 0) == leq(OrderedSpace.orthant(3), a, b, 0)


@given(st.integers(0, 2**32 - 1), st.integers(2, 6))
def test_loewner_transitive_on_generated_triples(seed, m):
    rng = np.random.default_rng(seed)
    g1, g2 = rng.normal(size=(2, m, m))
    a = random_sym(rng, m)
    b = a + g1 @ g1.T
    c = b + g2 @ g2.T
    sp = OrderedSpace.loewner(m)
    tol = Tolerance()
    assert leq(sp, pack(a), pack(b), tol) and leq(sp, pack(b), pack(c), tol)
    assert leq(sp, pack(a), pack(c), tol.scaled(2))
