import numpy as np
import pytest
from hypothesis import given, settings as hsettings, strategies as st

from common import ArgumentError, ResourceGuardError
from config import settings
from cutnorm.main import (
    EXACT,
    HEURISTIC,
    bilinear_pm1_norm,
    cut_norm,
    cut_norm_exact,
    cut_norm_heuristic,
    cut_norm_upper_bound,
    rectangle_sum,
)
from graphons.main import expand
from models.graphon_models import KernelMatrix

HALVES = KernelMatrix(np.array([[1.0, -1.0], [-1.0, 1.0]]))


def symmetric(rng, m, low=-1.0, high=1.0):
    values = rng.uniform(low, high, size=(m, m))
    return KernelMatrix(np.triu(values) + np.triu(values, 1).T)


@st.composite
def kernels(draw, max_steps=7):
    m = draw(st.integers(min_value=1, max_value=max_steps))
    upper = draw(st.lists(st.floats(min_value=-2, max_value=2, allow_nan=False), min_size=m * m, max_size=m * m))
    values = np.triu(np.asarray(upper).reshape(m, m))
    return KernelMatrix(values + np.triu(values, 1).T)


def test_constant_kernel():
    result = cut_norm_exact(KernelMatrix(np.full((3, 3), -0.4)))
    assert result.value == pytest.approx(0.4, rel=1e-15)
    assert result.S == result.T == (0, 1, 2)
    assert result.certified


def test_halves():
    result = cut_norm_exact(HALVES)
    assert result.value == 0.25
    assert (result.S, result.T) == ((0,), (0,))
    assert rectangle_sum(HALVES, result.S, result.T) == 0.25


def test_zero_kernel():
    zero = KernelMatrix(np.zeros((4, 4)))
    assert cut_norm_exact(zero).value == 0.0
    assert cut_norm_exact(zero).S == ()
    assert cut_norm_heuristic(zero).value == 0.0
    assert bilinear_pm1_norm(zero) == 0.0


def test_exact_guard():
    settings.CUTNORM_MAX_STEPS = 4
    with pytest.raises(ResourceGuardError):
        cut_norm_exact(KernelMatrix(np.eye(5)))
    with pytest.raises(ResourceGuardError):
        bilinear_pm1_norm(KernelMatrix(np.eye(5)))


def test_bilinear_examples():
    assert bilinear_pm1_norm(KernelMatrix(np.full((3, 3), 0.7))) == pytest.approx(0.7, rel=1e-15)
    assert bilinear_pm1_norm(HALVES) == 1.0


def test_bilinear_sandwich(rng):
    for m in range(1, 10):
        X = symmetric(rng, m)
        exact = cut_norm_exact(X).value
        bilinear = bilinear_pm1_norm(X)
        assert exact <= bilinear + 1e-12
        assert bilinear <= 4 * exact + 1e-12


def test_witness_attains_value(rng):
    for m in range(2, 11):
        X = symmetric(rng, m)
        result = cut_norm_exact(X)
        assert abs(rectangle_sum(X, result.S, result.T)) == pytest.approx(result.value, rel=1e-12)


def test_exact_matches_brute_force_over_both_sides(rng):
    for m in range(1, 6):
        X = symmetric(rng, m)
        best = 0.0
        for s_mask in range(1 << m):
            S = [i for i in range(m) if s_mask >> i & 1]
            for t_mask in range(1 << m):
                T = [j for j in range(m) if t_mask >> j & 1]
                best = max(best, abs(X.values[np.ix_(S, T)].sum()) / m ** 2)
        assert cut_norm_exact(X).value == pytest.approx(best, rel=1e-12, abs=1e-15)


def test_exact_does_not_depend_on_threads(rng):
    X = symmetric(rng, 16)
    assert cut_norm_exact(X, threads=1) == cut_norm_exact(X, threads=8)


@hsettings(max_examples=40, deadline=None)
@given(X=kernels(), c=st.floats(min_value=-3, max_value=3, allow_nan=False))
def test_homogeneity(X, c):
    assert cut_norm_exact(X.scale(c)).value == pytest.approx(abs(c) * cut_norm_exact(X).value, abs=1e-12)


@hsettings(max_examples=40, deadline=None)
@given(data=st.data())
def test_triangle_inequality(data):
    X = data.draw(kernels())
    upper = data.draw(st.lists(st.floats(min_value=-2, max_value=2, allow_nan=False),
                               min_size=X.m * X.m, max_size=X.m * X.m))
    values = np.triu(np.asarray(upper).reshape(X.m, X.m))
    Y = KernelMatrix(values + np.triu(values, 1).T)
    assert cut_norm_exact(X + Y).value <= cut_norm_exact(X).value + cut_norm_exact(Y).value + 1e-12


@hsettings(max_examples=40, deadline=None)
@given(X=kernels())
def test_bounded_by_sup_and_mean(X):
    value = cut_norm_exact(X).value
    assert value <= float(np.max(np.abs(X.values))) + 1e-12
    assert value <= cut_norm_upper_bound(X) + 1e-12


@pytest.mark.parametrize("r", [2, 3])
def test_refinement_invariance(rng, r):
    X = symmetric(rng, 6)
    assert cut_norm_exact(expand(X, r)).value == pytest.approx(cut_norm_exact(X).value, abs=1e-12)


def test_heuristic_is_a_lower_bound(rng):
    for _ in range(20):
        X = symmetric(rng, int(rng.integers(2, 11)))
        heuristic = cut_norm_heuristic(X, restarts=10, seed=1)
        assert heuristic.value <= cut_norm_exact(X).value + 1e-12
        assert heuristic.mode == HEURISTIC
        assert not heuristic.certified
        if heuristic.S:
            assert abs(rectangle_sum(X, heuristic.S, heuristic.T)) == pytest.approx(heuristic.value, rel=1e-12)


def test_heuristic_usually_finds_the_optimum(rng):
    hits = 0
    trials = 40
    for trial in range(trials):
        X = symmetric(rng, int(rng.integers(2, 13)))
        exact = cut_norm_exact(X).value
        hits += cut_norm_heuristic(X, restarts=50, seed=trial).value >= exact - 1e-12
    assert hits >= 0.9 * trials


def test_heuristic_rank_one_nonnegative(rng):
    u = rng.uniform(0.1, 1.0, size=7)
    X = KernelMatrix(np.outer(u, u))
    result = cut_norm_heuristic(X, restarts=1)
    assert result.S == result.T == tuple(range(7))
    assert result.value == pytest.approx(cut_norm_exact(X).value, rel=1e-12)


def test_heuristic_needs_a_restart():
    with pytest.raises(ArgumentError):
        cut_norm_heuristic(HALVES, restarts=0)


def test_heuristic_is_seeded(rng):
    X = symmetric(rng, 30)
    assert cut_norm_heuristic(X, restarts=5, seed=3) == cut_norm_heuristic(X, restarts=5, seed=3)


def test_auto_mode_switches_on_size(rng):
    assert cut_norm(symmetric(rng, 8)).mode == EXACT
    settings.CUTNORM_AUTO_STEPS = 4
    assert cut_norm(symmetric(rng, 8)).mode == HEURISTIC
    with pytest.raises(ArgumentError):
        cut_norm(symmetric(rng, 8), mode="sdp")
