import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from segnum.ilp import IlpError, IlpModel, Infeasible, solve_exhaustive, solve_ilp


def test_empty_model():
    assert solve_ilp(IlpModel()).value == 0


def test_single_bounded_variable():
    m = IlpModel()
    y = m.var("y", 2, obj=1)
    m.le({y: 2}, 4)          # 2y <= lambda with lambda = 4
    sol = solve_ilp(m)
    assert sol.value == 2 and sol.x == (2,)


def test_fractional_relaxation_is_branched():
    m = IlpModel()
    a = m.var("a", 10, obj=5)
    b = m.var("b", 10, obj=4)
    m.le({a: 6, b: 4}, 24)
    m.le({a: 1, b: 2}, 6)
    assert solve_ilp(m).value == solve_exhaustive(m).value == 20


def test_negative_rhs_needs_phase_one():
    m = IlpModel()
    a = m.var("a", 5, obj=-1)
    m.le({a: -1}, -3)        # a >= 3
    assert solve_ilp(m).x == (3,)


def test_infeasible():
    m = IlpModel()
    a = m.var("a", 2, obj=1)
    m.le({a: -1}, -3)
    with pytest.raises(Infeasible):
        solve_ilp(m)
    with pytest.raises(Infeasible):
        solve_exhaustive(m)


def test_negative_bound_rejected():
    with pytest.raises(IlpError):
        IlpModel().var("x", -1)


def test_cross_pairing_model():
    # three boomerangs of one class (mu = 3) paired crosswise at v and w
    m = IlpModel()
    z = [m.var(f"z{i}", 3, obj=-1) for i in range(3)]
    x = {(i, j): m.var(f"x{i}{j}", 3, obj=1) for i in range(3) for j in range(3) if i != j}
    for i in range(3):
        m.le({x[i, j]: 1 for j in range(3) if j != i} | {z[i]: -1}, 0)
    m.le({zi: 1 for zi in z}, 3)
    for (i, j), var in x.items():
        m.le({var: 1, z[i]: -1}, 0)
        m.le({var: 1, z[j]: -1}, 0)
    assert solve_ilp(m).value == solve_exhaustive(m).value


def test_dump_lists_every_row():
    m = IlpModel()
    a = m.var("a", 1, obj=1)
    m.le({a: 1}, 1)
    text = m.dump()
    assert text.startswith("maximize a") and "a <= 1" in text


def random_model(rng, n):
    m = IlpModel()
    for i in range(n):
        m.var(f"x{i}", rng.randint(0, 3 if n > 8 else 4), obj=rng.randint(-3, 5))
    for _ in range(rng.randint(1, 5)):
        coefs = {i: rng.randint(-3, 4) for i in rng.sample(range(n), rng.randint(1, n))}
        m.le(coefs, rng.randint(-2, 12))
    return m


def agree(m):
    try:
        want = solve_exhaustive(m)
    except Infeasible:
        with pytest.raises(Infeasible):
            solve_ilp(m)
        return
    got = solve_ilp(m)
    assert got.value == want.value
    assert m.feasible(got.x) and m.value(got.x) == got.value


@pytest.mark.parametrize("seed", range(20))
def test_random_models_match_exhaustive(seed):
    rng = random.Random(seed)
    agree(random_model(rng, rng.randint(1, 6)))


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5), st.integers(0, 10**9))
def test_random_models_hypothesis(n, seed):
    agree(random_model(random.Random(seed), n))
