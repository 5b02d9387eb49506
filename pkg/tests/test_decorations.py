import itertools
import math

import pytest
from hypothesis import given, settings as hsettings, strategies as st

from common import DomainError, ValidationError
from decorations.main import (
    adjacency_preserving_family,
    bernoulli,
    bits_to_mask,
    default_family,
    dirac,
    eval_function,
    family_matrix,
    indicator,
    integrate,
    mixture,
    uniform,
)
from decorations.schemas import parse_function, parse_space, resolve_family
from models.decoration_models import (
    Constant,
    DecorationSpace,
    KDistribution,
    LinearCombination,
    Monomial,
    ProductIndicator,
    Table,
)


def test_eval_table_on_edge_element(simple):
    assert eval_function(Table(simple, (0, 1)), 1) == 1.0


def test_eval_constant(colors):
    assert eval_function(Constant(colors, 1.0), 2) == 1.0


def test_eval_monomial():
    space = DecorationSpace.interval(0.0, 2.0)
    f = Monomial(space, 3)
    assert eval_function(f, 0.5) == 0.125
    assert f.bound == 8.0


def test_eval_rejects_foreign_element(simple, unit_interval):
    with pytest.raises(DomainError):
        eval_function(Table(simple, (0, 1)), 2)
    with pytest.raises(DomainError):
        eval_function(Monomial(unit_interval, 1), 1.5)


def test_forms_are_tied_to_space_kinds(simple, unit_interval, bits3):
    with pytest.raises(DomainError):
        Table(unit_interval, (0.0, 1.0))
    with pytest.raises(DomainError):
        Monomial(simple, 2)
    with pytest.raises(DomainError):
        ProductIndicator(simple, 1)
    ProductIndicator(bits3, 0b101)


def test_space_invariants():
    with pytest.raises(ValidationError):
        DecorationSpace.finite([])
    with pytest.raises(ValidationError):
        DecorationSpace.finite(["a", "a"])
    with pytest.raises(ValidationError):
        DecorationSpace.interval(1.0, 1.0)
    with pytest.raises(ValidationError):
        DecorationSpace.interval(0.0, math.inf)
    with pytest.raises(ValidationError):
        DecorationSpace.product(25)


def test_integrate_examples(colors, unit_interval, simple):
    assert integrate(indicator(colors, 2), uniform(colors)) == pytest.approx(1 / 3, abs=1e-15)
    assert integrate(Monomial(unit_interval, 1), dirac(unit_interval, 0.7)) == 0.7
    assert integrate(Table(simple, (0, 1)), bernoulli(simple, 0.75)) == 0.75


def test_integrate_space_mismatch(simple, colors):
    with pytest.raises(DomainError):
        integrate(indicator(simple, 1), uniform(colors))


def test_distribution_invariants(simple, unit_interval):
    with pytest.raises(ValidationError):
        KDistribution(simple, (0, 1), (0.5, 0.6))
    with pytest.raises(ValidationError):
        KDistribution(simple, (0, 1), (-0.5, 1.5))
    with pytest.raises(DomainError):
        KDistribution(unit_interval, (1.5,), (1.0,))


def test_default_family_examples(simple, unit_interval):
    indicators = default_family(simple)
    assert list(indicators) == [Table(simple, (1, 0)), Table(simple, (0, 1))]

    monomials = default_family(unit_interval, max_degree=2)
    assert [f.degree for f in monomials] == [0, 1, 2]

    bits2 = DecorationSpace.product(2)
    products = default_family(bits2, max_support=2)
    assert [f.support for f in products] == [0, bits_to_mask((0, 1)), bits_to_mask((1, 0)), 3]


def test_product_family_truncation(bits3):
    family = default_family(bits3, max_support=1)
    assert len(family) == 4
    assert all(bin(f.support).count("1") <= 1 for f in family)


def test_adjacency_preserving_basis(simple):
    g0, g1 = adjacency_preserving_family(simple)
    assert (g0.evaluate(1), g1.evaluate(0)) == (1.0, 1.0)


def test_family_matrix_is_identity_for_indicators(colors):
    matrix = family_matrix(default_family(colors))
    assert matrix.tolist() == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]


def test_mixture_merges_points(simple):
    mu = mixture([(0.5, dirac(simple, 1)), (0.5, bernoulli(simple, 0.5))])
    assert mu.points == (0, 1)
    assert mu.weights == (0.25, 0.75)


def test_linear_combination_bound_is_exact_on_small_spaces(simple):
    f = LinearCombination(simple, ((1.0, Table(simple, (1, 0))), (-1.0, Table(simple, (0, 1)))))
    assert f.bound == 1.0
    assert f.evaluate(1) == -1.0


@pytest.mark.parametrize("bits", range(1, 9))
def test_product_indicator_matches_definition_exhaustively(bits):
    space = DecorationSpace.product(bits)
    for x in range(1 << bits):
        f = ProductIndicator(space, x)
        for c in range(1 << bits):
            expected = all((c >> i) & 1 for i in range(bits) if (x >> i) & 1)
            assert f.evaluate(c) == float(expected)


weights = st.lists(st.floats(min_value=0.0, max_value=1.0, allow_nan=False), min_size=3, max_size=3).filter(
    lambda ws: sum(ws) > 1e-3
)


@given(ws=weights)
def test_indicators_sum_to_one(ws):
    space = DecorationSpace.finite(["a", "b", "c"])
    total = math.fsum(ws)
    normalised = [w / total for w in ws]
    normalised[-1] = 1.0 - math.fsum(normalised[:-1])
    mu = KDistribution(space, (0, 1, 2), tuple(max(w, 0.0) for w in normalised), tol=1e-9)
    assert math.fsum(integrate(f, mu) for f in default_family(space)) == pytest.approx(1.0, abs=1e-12)


@hsettings(max_examples=50)
@given(
    a=st.floats(min_value=-10, max_value=10),
    b=st.floats(min_value=-10, max_value=10),
    p=st.floats(min_value=0, max_value=1),
)
def test_integrate_is_linear(a, b, p):
    space = DecorationSpace.interval(0.0, 1.0)
    mu = KDistribution(space, (0.2, 0.9), (p, 1.0 - p))
    f, g = Monomial(space, 1), Monomial(space, 2)
    combined = LinearCombination(space, ((a, f), (b, g)))
    assert integrate(combined, mu) == pytest.approx(a * integrate(f, mu) + b * integrate(g, mu), abs=1e-12)


def test_parse_space_and_function():
    space = parse_space({"kind": "finite", "elements": ["no", "yes"], "zero": 0})
    f = parse_function({"form": "table", "values": [0, 1]}, space)
    assert f.evaluate(1) == 1.0
    with pytest.raises(ValidationError):
        parse_space({"kind": "sphere"})


def test_resolve_family_rejects_other_space(simple, colors):
    payload = {
        "space": {"kind": "finite", "elements": ["red", "green", "blue"], "zero": 0},
        "functions": [{"form": "constant", "c": 1.0}],
    }
    assert len(resolve_family(payload, colors)) == 1
    with pytest.raises(ValidationError):
        resolve_family(payload, simple)


def test_family_index_and_products(bits3):
    family = default_family(bits3)
    for idx, f in enumerate(family):
        assert family.index(f) == idx
    assert len(family) == len(list(itertools.product((0, 1), repeat=3)))
