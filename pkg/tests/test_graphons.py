import numpy as np
import pytest
from hypothesis import given, settings as hsettings, strategies as st
from hypothesis.extra.numpy import arrays

from common import ArgumentError, DomainError, MomentInfeasibilityError, UnsupportedOperationError, ValidationError
from convergence.utils.catalog import pattern_catalog
from cutnorm.main import cut_norm_exact
from decorations.main import default_family, dirac, indicator, multigraph_family, uniform
from graphons.main import (
    bernoulli_graphon,
    collapse,
    density_graphon,
    density_sequence,
    embed_graph,
    expand,
    from_probabilities,
    moment_component,
    moment_sequence,
    reconstruct,
    step_average,
    stepped_sequence,
)
from graphons.schemas import graphon_to_schema, parse_graphon, parse_kernel, parse_target
from graphs.main import (
    complete_graph,
    constant_pattern,
    empty_pattern,
    from_colored_graph,
    from_multigraph,
    from_parallel_graphs,
    from_weighted_graph,
    multigraph_space,
    single_edge,
)
from graphs.schemas import graph_to_schema
from homomorphism.main import density
from models.decoration_models import Constant, DecorationSpace, Monomial
from models.graphon_models import KernelMatrix, MomentFunctionSequence, StepGraphon, StepPartition
from regularity.utils.partitions import equal_partition, singleton_partition, trivial_partition


def random_probabilities(rng, m, size):
    raw = rng.dirichlet(np.ones(size), size=(m, m))
    upper = np.triu(np.ones((m, m), dtype=bool))
    return np.where(upper[:, :, None], raw, raw.transpose(1, 0, 2))


def random_symmetric(rng, m, low=-1.0, high=1.0):
    values = rng.uniform(low, high, size=(m, m))
    return KernelMatrix(np.triu(values) + np.triu(values, 1).T)


def test_embed_complete_pair():
    W = embed_graph(complete_graph(2))
    assert W.m == 2
    assert W.cell(0, 1) == dirac(W.space, 1)
    assert W.cell(0, 0) == dirac(W.space, 0)


def test_embed_constant_graph_is_constant():
    W = embed_graph(from_multigraph(np.full((3, 3), 2), d=2))
    assert all(mu == dirac(W.space, 2) for _, _, mu in W.cells())


def test_moment_component_of_embedded_k3(k3, edge_function):
    X = moment_component(embed_graph(k3), edge_function)
    assert X.values.tolist() == [[0, 1, 1], [1, 0, 1], [1, 1, 0]]
    assert X.sup_bound == 1.0


def test_moment_component_examples(colors):
    W = from_probabilities(colors, np.full((2, 2, 3), 1 / 3))
    assert np.allclose(moment_component(W, Constant(colors, 1.0)).values, 1.0)
    assert np.allclose(moment_component(W, indicator(colors, 2)).values, 1 / 3)


def test_moment_component_space_mismatch(k3, colors):
    with pytest.raises(DomainError):
        moment_component(embed_graph(k3), indicator(colors, 0))


def test_indicator_components_sum_to_one(rng, colors):
    W = from_probabilities(colors, random_probabilities(rng, 4, 3))
    s = moment_sequence(W, default_family(colors))
    total = sum(c.values for c in s.components)
    assert np.allclose(total, 1.0, atol=1e-12)
    assert all(np.all(c.values >= 0) for c in s.components)


def test_constant_pattern_density_is_one(simple):
    assert density_graphon(constant_pattern(simple, 3), bernoulli_graphon(np.full((2, 2), 0.3))) == 1.0


def test_edge_density_on_halves(edge_function):
    W = bernoulli_graphon([[0.0, 1.0], [1.0, 0.0]])
    assert density_graphon(single_edge(edge_function), W) == 0.5


@pytest.mark.parametrize("trial", range(5))
def test_embedding_preserves_densities_on_three_colors(rng, trial):
    colors = rng.integers(0, 3, size=(4, 4))
    G = from_colored_graph(np.triu(colors) + np.triu(colors, 1).T, palette=3)
    W = embed_graph(G)
    for F in pattern_catalog(default_family(G.space), 3, 3):
        assert density_graphon(F, W) == pytest.approx(density(F, G), rel=1e-10, abs=1e-15)


def test_embedding_preserves_densities_on_intervals(rng):
    values = rng.uniform(0, 1, size=(5, 5))
    G = from_weighted_graph(np.triu(values) + np.triu(values, 1).T)
    W = embed_graph(G)
    for F in pattern_catalog(default_family(G.space, max_degree=2), 3, 2):
        assert density_graphon(F, W) == pytest.approx(density(F, G), rel=1e-10, abs=1e-15)


def test_embedding_preserves_densities_on_products(rng):
    layers = []
    for _ in range(2):
        upper = np.triu(rng.integers(0, 2, size=(5, 5)), 1)
        layers.append(upper + upper.T)
    G = from_parallel_graphs(layers)
    W = embed_graph(G)
    for F in pattern_catalog(default_family(G.space), 3, 2):
        assert density_graphon(F, W) == pytest.approx(density(F, G), rel=1e-10, abs=1e-15)


def test_density_sees_only_edge_components():
    # equal f_1 components, different cells
    space = DecorationSpace.finite(["0", "1", "2"], zero=0)
    f = indicator(space, 1)
    probs_a = np.zeros((2, 2, 3))
    probs_a[..., 1] = 0.5
    probs_a[..., 0] = 0.5
    probs_b = np.zeros((2, 2, 3))
    probs_b[..., 1] = 0.5
    probs_b[..., 2] = 0.5
    F = single_edge(f)
    assert density_graphon(F, from_probabilities(space, probs_a)) == \
        density_graphon(F, from_probabilities(space, probs_b))


def test_density_sequence_examples(colors):
    W = from_probabilities(colors, np.full((3, 3, 3), 1 / 3))
    family = default_family(colors)
    s = moment_sequence(W, family)
    F = single_edge(family.functions[1])
    assert density_sequence(F, s) == density_graphon(F, W)
    assert density_sequence(empty_pattern(colors, 2), s) == 1.0

    constant_c = MomentFunctionSequence(family, tuple(KernelMatrix(np.full((2, 2), c)) for c in (0.2, 0.3, 0.5)))
    assert density_sequence(single_edge(family.functions[2]), constant_c) == pytest.approx(0.5)


def test_density_sequence_needs_family_members(colors):
    family = default_family(colors)
    s = moment_sequence(from_probabilities(colors, np.full((2, 2, 3), 1 / 3)), family)
    with pytest.raises(ArgumentError):
        density_sequence(single_edge(Constant(colors, 2.0)), s)


def test_reconstruct_bernoulli_cells(simple):
    family = default_family(simple)
    s = MomentFunctionSequence(family, (KernelMatrix(np.full((2, 2), 0.25)), KernelMatrix(np.full((2, 2), 0.75))))
    W = reconstruct(s)
    for _, _, mu in W.cells():
        assert mu.points == (0, 1)
        assert mu.weights == pytest.approx((0.25, 0.75))


def test_reconstruct_inverts_moments(rng, colors):
    family = default_family(colors)
    s = moment_sequence(from_probabilities(colors, random_probabilities(rng, 5, 3)), family)
    again = moment_sequence(reconstruct(s), family)
    for a, b in zip(s.components, again.components):
        assert np.allclose(a.values, b.values, atol=1e-12)


def test_reconstruct_with_power_basis(rng):
    space = multigraph_space(2)
    family = multigraph_family(space)
    s = moment_sequence(from_probabilities(space, random_probabilities(rng, 3, 3)), family)
    again = moment_sequence(reconstruct(s), family)
    for a, b in zip(s.components, again.components):
        assert np.allclose(a.values, b.values, atol=1e-10)


def test_reconstruct_reports_infeasible_cell(simple):
    family = default_family(simple)
    zero_one = np.array([[0.5, 0.5], [0.5, 0.5]])
    heavy = np.array([[0.5, 0.5], [0.5, 0.7]])
    s = MomentFunctionSequence(family, (KernelMatrix(zero_one), KernelMatrix(heavy)))
    with pytest.raises(MomentInfeasibilityError) as info:
        reconstruct(s)
    assert info.value.cell == (1, 1)
    assert info.value.violation == pytest.approx(0.2)


def test_reconstruct_rejects_interval_spaces(unit_interval):
    family = default_family(unit_interval)
    W = embed_graph(from_weighted_graph([[0.0, 0.5], [0.5, 0.0]]))
    with pytest.raises(UnsupportedOperationError):
        reconstruct(moment_sequence(W, family))


def test_step_average_examples():
    X = KernelMatrix(np.kron([[1.0, -1.0], [-1.0, 1.0]], np.ones((2, 2))))
    assert step_average(X, singleton_partition(4)).values.tolist() == X.values.tolist()
    assert np.all(step_average(X, trivial_partition(4)).values == 0.0)


def test_step_average_is_idempotent(rng):
    X = random_symmetric(rng, 9)
    P = StepPartition.from_labels([0, 1, 0, 2, 2, 1, 0, 1, 2])
    once = step_average(X, P)
    assert np.allclose(step_average(once, P).values, once.values, atol=1e-15)


@st.composite
def stepped_kernels(draw):
    m = draw(st.integers(min_value=1, max_value=8))
    raw = draw(arrays(np.float64, (m, m), elements=st.floats(min_value=-5, max_value=5)))
    labels = draw(st.lists(st.integers(min_value=0, max_value=2), min_size=m, max_size=m))
    return KernelMatrix((raw + raw.T) / 2), StepPartition.from_labels(labels)


@hsettings(max_examples=40, deadline=None)
@given(case=stepped_kernels())
def test_stepping_is_an_idempotent_contraction(case):
    X, P = case
    once = step_average(X, P)
    assert np.allclose(step_average(once, P).values, once.values, atol=1e-12)
    assert cut_norm_exact(once).value <= cut_norm_exact(X).value + 1e-12


def test_nested_averages(rng):
    X = random_symmetric(rng, 8)
    fine = StepPartition(8, ((0, 1), (2, 3), (4, 5), (6, 7)))
    coarse = StepPartition(8, ((0, 1, 2, 3), (4, 5, 6, 7)))
    assert np.allclose(step_average(step_average(X, fine), coarse).values, step_average(X, coarse).values,
                       atol=1e-15)


def test_step_average_contracts_the_cut_norm(rng):
    for _ in range(5):
        X = random_symmetric(rng, 8)
        P = StepPartition.from_labels(rng.integers(0, 3, size=8))
        assert cut_norm_exact(step_average(X, P)).value <= cut_norm_exact(X).value + 1e-12


def test_graphon_average_commutes_with_moments(rng, colors):
    W = from_probabilities(colors, random_probabilities(rng, 6, 3))
    P = equal_partition(6, 3)
    averaged = step_average(W, P)
    for f in default_family(colors):
        assert np.allclose(moment_component(averaged, f).values, step_average(moment_component(W, f), P).values,
                           atol=1e-14)


def test_graphon_average_needs_equal_measure(rng, colors):
    W = from_probabilities(colors, random_probabilities(rng, 3, 3))
    P = StepPartition(3, ((0,), (1, 2)))
    with pytest.raises(ArgumentError):
        step_average(W, P)
    assert step_average(W, P, weighted=True).m == 3


def test_collapse_and_expand(rng):
    X = random_symmetric(rng, 6)
    P = equal_partition(6, 2)
    small = collapse(X, P)
    assert small.m == 2
    assert np.allclose(expand(small, 3).values, step_average(X, P).values, atol=1e-15)
    with pytest.raises(ArgumentError):
        collapse(X, StepPartition(6, ((0,), (1, 2, 3, 4, 5))))


def test_stepped_sequence_keeps_family(rng, colors):
    family = default_family(colors)
    s = moment_sequence(from_probabilities(colors, random_probabilities(rng, 4, 3)), family)
    stepped = stepped_sequence(s, trivial_partition(4))
    assert stepped.family == family
    assert all(np.allclose(c.values, c.values[0, 0]) for c in stepped.components)


def test_kernel_invariants():
    with pytest.raises(ValidationError):
        KernelMatrix(np.array([[0.0, 1.0], [0.5, 0.0]]))
    with pytest.raises(ValidationError):
        KernelMatrix(np.eye(2), sup_bound=0.5)
    assert KernelMatrix(np.eye(2)).sup_bound == 1.0


def test_graphon_invariants(simple):
    points = np.zeros((2, 2, 1), dtype=np.int64)
    weights = np.full((2, 2, 1), 0.5)
    with pytest.raises(ValidationError):
        StepGraphon(simple, points, weights)


def test_graphon_file_format(rng, colors):
    W = from_probabilities(colors, random_probabilities(rng, 3, 3))
    parsed = parse_graphon(graphon_to_schema(W).model_dump(mode="json"))
    assert parsed.m == 3
    for (_, _, a), (_, _, b) in zip(W.cells(), parsed.cells()):
        assert a.points == b.points
        assert a.weights == pytest.approx(b.weights)


def test_kernel_file_accepts_bare_rows():
    X = parse_kernel([[1.0, -1.0], [-1.0, 1.0]])
    assert X.m == 2


def test_target_dispatch(k3):
    assert parse_target(graph_to_schema(k3).model_dump(mode="json")).n == 3
    with pytest.raises(ValidationError):
        parse_target({"values": []})


def test_uniform_interval_endpoints(unit_interval):
    W = StepGraphon.from_cells(unit_interval, [[uniform(unit_interval)]])
    assert moment_component(W, Monomial(unit_interval, 1)).values[0, 0] == 0.5
