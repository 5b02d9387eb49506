# decorations/main.py
import itertools
import logging
import math
from typing import Iterable, Optional, Sequence, Tuple

import numpy as np

from common import ArgumentError, DomainError, UnsupportedOperationError
from config import settings
from models.decoration_models import (
    Constant,
    DecorationSpace,
    Element,
    KDistribution,
    Monomial,
    ProductIndicator,
    SpaceKind,
    Table,
    TestFamily,
    TestFunction,
    merge_support,
)

logger = logging.getLogger(__name__)


def eval_function(f: TestFunction, c: Element) -> float:
    """Evaluate a test function at one element of its space."""
    return f.evaluate(c)


def integrate(f: TestFunction, mu: KDistribution) -> float:
    """
    Integrate a test function against a finite-support distribution

    Args:
        f: The test function
        mu: A distribution on the same space

    Returns:
        The weighted sum of f over the support of mu

    Raises:
        DomainError: If f and mu live on different spaces
    """
    if f.space != mu.space:
        raise DomainError("Cannot integrate a function against a distribution on another space")
    points, weights = mu.arrays()
    return math.fsum((weights * f.evaluate_array(points)).tolist())


def indicator(space: DecorationSpace, element: int) -> Table:
    if space.kind != SpaceKind.FINITE:
        raise DomainError("Indicators as tables are only available on finite spaces")
    if not space.contains(element):
        raise DomainError(f"{element!r} is not an element of the space")
    values = [0.0] * len(space.elements)
    values[element] = 1.0
    return Table(space, tuple(values))


def power_table(space: DecorationSpace, degree: int) -> Table:
    """The function c ↦ c**degree on Finite{0..d}, where element i stands for multiplicity i."""
    if space.kind != SpaceKind.FINITE:
        raise DomainError("Power tables are only available on finite spaces")
    return Table(space, tuple(float(c) ** degree for c in range(len(space.elements))))


def support_bits(mask: int, bits: int) -> Tuple[int, ...]:
    return tuple((mask >> i) & 1 for i in range(bits))


def bits_to_mask(bit_vector: Sequence[int]) -> int:
    mask = 0
    for i, bit in enumerate(bit_vector):
        if bit not in (0, 1):
            raise ArgumentError(f"Bit vectors hold 0/1 entries, got {list(bit_vector)}")
        mask |= int(bit) << i
    return mask


def default_family(space: DecorationSpace, max_degree: Optional[int] = None,
                   max_support: Optional[int] = None) -> TestFamily:
    """
    Return the built-in generating family of a space in canonical order

    Finite spaces get the indicator basis in element order. Interval spaces get
    the monomials 1, x, ..., x^D. Product spaces get the indicators f_x for every
    support vector x with at most B set bits, ordered lexicographically by the
    bit vector (x_0, ..., x_{b-1}).

    Args:
        space: The decoration space
        max_degree: D for interval spaces (defaults to 2)
        max_support: B for product spaces (defaults to all bits)

    Returns:
        The truncated generating family
    """
    if space.kind == SpaceKind.FINITE:
        functions = [indicator(space, c) for c in range(len(space.elements))]
        return TestFamily(space, tuple(functions), name="indicators")
    if space.kind == SpaceKind.INTERVAL:
        degree = 2 if max_degree is None else max_degree
        if degree < 0:
            raise ArgumentError(f"max_degree must be non-negative, got {degree}")
        return TestFamily(space, tuple(Monomial(space, d) for d in range(degree + 1)), name=f"monomials<={degree}")
    budget = space.bits if max_support is None else max_support
    if not 0 <= budget <= space.bits:
        raise ArgumentError(f"max_support must lie in 0..{space.bits}, got {budget}")
    vectors = [v for v in itertools.product((0, 1), repeat=space.bits) if sum(v) <= budget]
    functions = tuple(ProductIndicator(space, bits_to_mask(v)) for v in vectors)
    logger.info(f"Product family on {space.bits} bits with support <= {budget}: {len(functions)} functions")
    return TestFamily(space, functions, name=f"product-indicators<={budget}")


def multigraph_family(space: DecorationSpace) -> TestFamily:
    """The basis {1, x, ..., x^d} on Finite{0..d} under which hom counts multigraph homomorphisms."""
    return TestFamily(space, tuple(power_table(space, i) for i in range(len(space.elements))), name="powers")


def adjacency_preserving_family(space: DecorationSpace) -> TestFamily:
    """
    The basis g_0 = (0, 1), g_1 = (1, 0) on Finite{0, 1}

    With it, hom counts the maps that preserve both adjacency and non-adjacency.
    """
    if space.kind != SpaceKind.FINITE or len(space.elements) != 2:
        raise DomainError("The adjacency-preserving basis needs a two-element finite space")
    return TestFamily(space, (Table(space, (0.0, 1.0)), Table(space, (1.0, 0.0))), name="adjacency-preserving")


def family_matrix(family: TestFamily) -> np.ndarray:
    """|family| × |K| matrix of function values on a finite-type space."""
    if not family.space.is_finite_type:
        raise UnsupportedOperationError("Evaluation matrices exist only for finite-type spaces")
    elements = family.space.all_elements()
    return np.vstack([f.evaluate_array(elements) for f in family]) if len(family) else np.zeros((0, elements.size))


def dirac(space: DecorationSpace, element: Element) -> KDistribution:
    return KDistribution(space, (element,), (1.0,))


def uniform(space: DecorationSpace) -> KDistribution:
    """Uniform distribution on a finite space (or on the two endpoints of an interval)."""
    if space.kind == SpaceKind.INTERVAL:
        return KDistribution(space, (space.lo, space.hi), (0.5, 0.5))
    if space.kind == SpaceKind.PRODUCT and space.bits > 16:
        raise UnsupportedOperationError("Uniform distributions on more than 16 bits are not materialised")
    size = space.size
    return KDistribution(space, tuple(range(size)), tuple([1.0 / size] * size))


def bernoulli(space: DecorationSpace, p: float) -> KDistribution:
    """Weight p on element 1 and 1 - p on element 0 of a finite space."""
    if not 0.0 <= p <= 1.0:
        raise ArgumentError(f"p must lie in [0, 1], got {p}")
    return KDistribution(space, (0, 1), (1.0 - p, p))


def mixture(components: Iterable[Tuple[float, KDistribution]]) -> KDistribution:
    """
    Weighted mixture of distributions on one space, merging equal support points

    Raises:
        DomainError: If the components live on different spaces
        ArgumentError: If the mixture weights are negative or do not sum to 1
    """
    components = list(components)
    if not components:
        raise ArgumentError("A mixture needs at least one component")
    space = components[0][1].space
    points, weights = [], []
    for w, mu in components:
        if mu.space != space:
            raise DomainError("Mixture components must share a space")
        if w < 0:
            raise ArgumentError(f"Mixture weights must be non-negative, got {w}")
        points.extend(mu.points)
        weights.extend(w * x for x in mu.weights)
    total = math.fsum(w for w, _ in components)
    if abs(total - 1.0) > settings.DISTRIBUTION_TOL:
        raise ArgumentError(f"Mixture weights must sum to 1, got {total!r}")
    merged_points, merged_weights = merge_support(space, points, weights, settings.MERGE_TOL)
    return KDistribution(space, merged_points, merged_weights)


def constant(space: DecorationSpace, c: float = 1.0) -> Constant:
    return Constant(space, c)
