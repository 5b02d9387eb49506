import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings as hsettings, strategies as st

from common import DomainError, ResourceGuardError
from config import settings
from decorations.main import default_family, indicator
from graphs.main import (
    complete_graph,
    constant_pattern,
    disjoint_union,
    empty_graph,
    empty_pattern,
    from_multigraph,
    from_simple_graph,
    from_weighted_graph,
    multigraph_pattern,
    multigraph_space,
    single_edge,
    triangle,
)
from homomorphism.main import (
    density,
    density_estimate,
    evaluation_functional,
    hom,
    map_weight,
    replacement_gap_bound,
)
from homomorphism.utils.enumeration import CONTRACT, ENUMERATE
from models.decoration_models import Table
from models.graph_models import PatternGraph
from sampling.main import functional_mean


def naive_multigraph_hom(F, G):
    """Count maps weighted by ∏ m_G(f(i), f(j)) ** m_F(i, j) over i < j."""
    k, n = len(F), len(G)
    total = 0
    for assignment in itertools.product(range(n), repeat=k):
        weight = 1
        for i in range(k):
            for j in range(i + 1, k):
                if F[i][j]:
                    weight *= G[assignment[i]][assignment[j]] ** F[i][j]
        total += weight
    return total


def random_multigraph(rng, n, d, loops=True):
    upper = np.triu(rng.integers(0, d + 1, size=(n, n)), 0 if loops else 1)
    return (upper + np.triu(upper, 1).T).tolist()


def test_map_weight_examples(simple, k3, edge_function):
    assert map_weight(empty_pattern(simple, 3), k3, (0, 0, 0)) == 1.0
    assert map_weight(triangle(edge_function), k3, (0, 1, 2)) == 1.0
    assert map_weight(triangle(edge_function), k3, (0, 0, 1)) == 0.0


def test_map_weight_space_mismatch(colors, k3):
    with pytest.raises(DomainError):
        map_weight(single_edge(indicator(colors, 1)), k3, (0, 1))


def test_hom_examples(simple, k3, edge_function):
    assert hom(triangle(edge_function), k3) == 6.0
    assert hom(single_edge(edge_function), k3) == 6.0
    assert hom(constant_pattern(simple, 3), k3) == 27.0


def test_density_examples(simple, k3, edge_function):
    assert density(triangle(edge_function), k3) == pytest.approx(2 / 9, rel=1e-15)
    assert density(single_edge(edge_function), k3) == pytest.approx(2 / 3, rel=1e-15)
    assert density(constant_pattern(simple, 4), k3) == 1.0


@pytest.mark.parametrize("method", [ENUMERATE, CONTRACT])
def test_methods_agree(rng, simple, method):
    adjacency = np.triu(rng.integers(0, 2, size=(12, 12)), 1)
    G = from_simple_graph(adjacency + adjacency.T)
    F = PatternGraph(simple, 4, ((0, 1, indicator(simple, 1)), (1, 2, indicator(simple, 0)),
                                 (2, 3, indicator(simple, 1)), (0, 3, indicator(simple, 1))))
    expected = hom(F, G, method=ENUMERATE, threads=1)
    assert hom(F, G, method=method) == pytest.approx(expected, rel=1e-12)


def test_enumeration_does_not_depend_on_threads(rng, edge_function):
    adjacency = np.triu(rng.integers(0, 2, size=(15, 15)), 1)
    G = from_simple_graph(adjacency + adjacency.T)
    F = triangle(edge_function)
    assert hom(F, G, method=ENUMERATE, threads=1) == hom(F, G, method=ENUMERATE, threads=8)


def test_enumeration_guard(edge_function):
    settings.HOM_GUARD = 100
    with pytest.raises(ResourceGuardError):
        hom(triangle(edge_function), complete_graph(10), method=ENUMERATE)


def test_large_instances_fall_back_to_contraction(edge_function):
    settings.HOM_GUARD = 100
    G = complete_graph(10)
    assert hom(triangle(edge_function), G) == pytest.approx(10 * 9 * 8)


def test_disjoint_union_is_multiplicative(one_edge, edge_function, simple):
    F1 = single_edge(edge_function)
    F2 = PatternGraph(simple, 2, ((0, 1, indicator(simple, 0)),))
    union = disjoint_union(F1, F2)
    assert hom(union, one_edge) == pytest.approx(hom(F1, one_edge) * hom(F2, one_edge), rel=1e-10)


def test_density_is_invariant_under_pattern_relabeling(rng, simple):
    adjacency = np.triu(rng.integers(0, 2, size=(7, 7)), 1)
    G = from_simple_graph(adjacency + adjacency.T)
    F = PatternGraph(simple, 3, ((0, 1, indicator(simple, 1)), (1, 2, indicator(simple, 0))))
    for perm in itertools.permutations(range(3)):
        assert density(F.relabel(perm), G) == density(F, G)


def test_edge_order_does_not_matter(k3, simple):
    f, g = indicator(simple, 1), Table(simple, (0.5, 2.0))
    F1 = PatternGraph(simple, 3, ((0, 1, f), (1, 2, g)))
    F2 = PatternGraph(simple, 3, ((1, 2, g), (0, 1, f)))
    assert hom(F1, k3) == hom(F2, k3)


@pytest.mark.parametrize("d", [1, 2, 3])
def test_multigraph_patterns_count_multigraph_homs(rng, d):
    space = multigraph_space(d)
    for _ in range(6):
        n, k = int(rng.integers(1, 5)), int(rng.integers(1, 5))
        G = random_multigraph(rng, n, d)
        F = random_multigraph(rng, k, d, loops=False)
        assert hom(multigraph_pattern(F, space), from_multigraph(G, d)) == naive_multigraph_hom(F, G)


def test_simple_triangle_as_multigraph_pattern(k3):
    F = multigraph_pattern([[0, 1, 1], [1, 0, 1], [1, 1, 0]], multigraph_space(1))
    G = from_multigraph(k3.entries, d=1, loopless=True)
    assert hom(F, G) == 6.0


def test_multigraph_pattern_without_edges_has_density_one(unit_interval):
    F = multigraph_pattern(np.zeros((3, 3), dtype=int), unit_interval)
    assert density(F, from_weighted_graph([[0.0, 0.3], [0.3, 1.0]])) == 1.0


@hsettings(max_examples=30, deadline=None)
@given(data=st.data())
def test_density_is_bounded_by_edge_sups(data):
    space = multigraph_space(2)
    values = st.floats(min_value=-3, max_value=3, allow_nan=False)
    f = Table(space, tuple(data.draw(st.lists(values, min_size=3, max_size=3))))
    g = Table(space, tuple(data.draw(st.lists(values, min_size=3, max_size=3))))
    n = data.draw(st.integers(min_value=1, max_value=5))
    upper = data.draw(st.lists(st.integers(min_value=0, max_value=2), min_size=n * n, max_size=n * n))
    matrix = np.triu(np.asarray(upper).reshape(n, n))
    G = from_multigraph(matrix + np.triu(matrix, 1).T, d=2)
    F = PatternGraph(space, 3, ((0, 1, f), (1, 2, g), (0, 2, f)))
    assert abs(density(F, G)) <= F.weight_bound() * (1 + 1e-12)


def test_estimate_constant_pattern(simple, k3):
    result = density_estimate(constant_pattern(simple, 3), k3, reps=1000, seed=4)
    assert result.estimate == 1.0
    assert result.stderr == 0.0


def test_estimate_edgeless_target(edge_function):
    assert density_estimate(single_edge(edge_function), empty_graph(5), reps=100, seed=0).estimate == 0.0


def test_estimate_triangle_density(k3, edge_function):
    result = density_estimate(triangle(edge_function), k3, reps=1_000_000, seed=9)
    assert abs(result.estimate - 2 / 9) <= 4 * result.stderr + 1e-12


def test_estimates_are_within_four_standard_errors(rng, edge_function):
    adjacency = np.triu(rng.integers(0, 2, size=(20, 20)), 1)
    G = from_simple_graph(adjacency + adjacency.T)
    F = triangle(edge_function)
    exact = density(F, G)
    misses = 0
    for seed in range(20):
        result = density_estimate(F, G, reps=20_000, seed=seed)
        misses += abs(result.estimate - exact) > 4 * result.stderr
    assert misses <= 1


def test_evaluation_functional_examples(simple, edge_function):
    assert evaluation_functional(single_edge(edge_function))((1,)) == 1.0
    assert evaluation_functional(triangle(edge_function))((1, 1, 1)) == 1.0
    assert evaluation_functional(empty_pattern(simple, 3))((0, 1, 0)) == 1.0


@pytest.mark.parametrize("n", [3, 5, 10, 20, 50])
def test_replacement_gap_on_complete_graphs(n, edge_function):
    F = triangle(edge_function)
    G = complete_graph(n)
    without = functional_mean(F, G)
    with_replacement = density(F, G)
    assert without == 1.0
    assert with_replacement == pytest.approx((n - 1) * (n - 2) / n ** 2, rel=1e-12)
    assert abs(without - with_replacement) <= replacement_gap_bound(F, n)


def test_default_family_densities_sum_to_one(one_edge, simple):
    total = math.fsum(density(single_edge(f), one_edge) for f in default_family(simple))
    assert total == pytest.approx(1.0, abs=1e-15)
