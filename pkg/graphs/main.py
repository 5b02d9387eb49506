# graphs/main.py
import logging
from functools import partial
from typing import Sequence

import numpy as np

from common import ArgumentError, DomainError, ValidationError
from decorations.main import power_table
from models.decoration_models import Constant, DecorationSpace, Monomial, SpaceKind
from models.graph_models import DecoratedGraph, PatternGraph

logger = logging.getLogger(__name__)


def _square_int_matrix(matrix, what: str) -> np.ndarray:
    arr = np.asarray(matrix)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValidationError(f"{what} must be a square matrix, got shape {arr.shape}")
    if arr.size and not np.all(np.mod(arr, 1) == 0):
        raise ValidationError(f"{what} must hold integers")
    arr = arr.astype(np.int64)
    if not np.array_equal(arr, arr.T):
        raise ValidationError(f"{what} must be symmetric")
    return arr


def simple_space() -> DecorationSpace:
    return DecorationSpace.finite(["0", "1"], zero=0)


def multigraph_space(d: int) -> DecorationSpace:
    if d < 1:
        raise ArgumentError(f"Maximum multiplicity must be at least 1, got {d}")
    return DecorationSpace.finite([str(i) for i in range(d + 1)], zero=0)


def from_simple_graph(adjacency, loopless: bool = True) -> DecoratedGraph:
    """
    Encode a simple graph over Finite{0, 1}

    Args:
        adjacency: Symmetric 0/1 matrix
        loopless: Require (and record) a zero diagonal

    Raises:
        ValidationError: If the matrix is not symmetric, not 0/1, or has loops while loopless
    """
    arr = _square_int_matrix(adjacency, "Adjacency matrix")
    if arr.size and (arr.min() < 0 or arr.max() > 1):
        raise ValidationError("Adjacency entries must be 0 or 1")
    return DecoratedGraph(simple_space(), arr, loopless=loopless)


def from_multigraph(multiplicities, d: int, loopless: bool = False) -> DecoratedGraph:
    """Encode a multigraph with multiplicities 0..d over Finite{0..d}."""
    arr = _square_int_matrix(multiplicities, "Multiplicity matrix")
    if arr.size and (arr.min() < 0 or arr.max() > d):
        raise ValidationError(f"Multiplicities must lie in 0..{d}")
    return DecoratedGraph(multigraph_space(d), arr, loopless=loopless)


def from_colored_graph(colors, palette: int, loopless: bool = False) -> DecoratedGraph:
    """Encode an edge-colored complete graph; color 0 doubles as the missing edge."""
    arr = _square_int_matrix(colors, "Color matrix")
    space = DecorationSpace.finite([f"c{i}" for i in range(palette)], zero=0)
    return DecoratedGraph(space, arr, loopless=loopless)


def from_parallel_graphs(adjacencies: Sequence, truncated: bool = False) -> DecoratedGraph:
    """
    Stack simple graphs on one node set into a graph over {0,1}^t

    Bit i of an entry is set exactly when the pair is an edge of the i-th graph.
    """
    if not adjacencies:
        raise ArgumentError("At least one layer is needed")
    layers = [_square_int_matrix(a, f"Layer {i}") for i, a in enumerate(adjacencies)]
    if len({layer.shape for layer in layers}) != 1:
        raise ArgumentError("All layers must have the same number of nodes")
    entries = np.zeros(layers[0].shape, dtype=np.int64)
    for i, layer in enumerate(layers):
        if layer.size and (layer.min() < 0 or layer.max() > 1):
            raise ValidationError(f"Layer {i} must be a 0/1 matrix")
        entries |= layer << i
    return DecoratedGraph(DecorationSpace.product(len(layers), zero=0, truncated=truncated), entries)


def from_weighted_graph(weights, lo: float = 0.0, hi: float = 1.0, loopless: bool = False) -> DecoratedGraph:
    """Encode a symmetric real weight matrix over Interval[lo, hi] with zero element 0 when it lies inside."""
    zero = 0.0 if lo <= 0.0 <= hi else None
    space = DecorationSpace.interval(lo, hi, zero=zero)
    return DecoratedGraph(space, np.asarray(weights, dtype=np.float64), loopless=loopless)


def complete_graph(n: int) -> DecoratedGraph:
    return from_simple_graph(np.ones((n, n), dtype=np.int64) - np.eye(n, dtype=np.int64))


def empty_graph(n: int) -> DecoratedGraph:
    return from_simple_graph(np.zeros((n, n), dtype=np.int64))


def relabel(G: DecoratedGraph, permutation: Sequence[int]) -> DecoratedGraph:
    """Return the graph whose node permutation[i] plays the role of node i of G."""
    perm = np.asarray(permutation, dtype=np.int64)
    if sorted(perm.tolist()) != list(range(G.n)):
        raise ArgumentError(f"Not a permutation of 0..{G.n - 1}")
    entries = np.empty_like(G.entries)
    entries[np.ix_(perm, perm)] = G.entries
    return DecoratedGraph(G.space, entries, loopless=G.loopless, metadata=G.metadata)


def multigraph_pattern(multiplicities, space: DecorationSpace) -> PatternGraph:
    """
    Turn a multigraph F into a pattern whose hom numbers count multigraph homomorphisms

    An edge of multiplicity i becomes x^i: a Monomial on interval spaces or the
    power table c ↦ c^i on Finite{0..d}. Multiplicity 0 leaves the pair undecorated.

    Raises:
        ValidationError: If F is not a symmetric loopless multiplicity matrix
        DomainError: If the space is not an interval or Finite{0..d}
    """
    arr = _square_int_matrix(multiplicities, "Pattern multiplicity matrix")
    if np.any(np.diagonal(arr) != 0):
        raise ValidationError("Patterns have no loops")
    if arr.size and arr.min() < 0:
        raise ValidationError("Multiplicities must be non-negative")
    if space.kind == SpaceKind.FINITE:
        if arr.size and arr.max() >= len(space.elements):
            raise ValidationError(f"Multiplicities must be at most {len(space.elements) - 1}")
        make = partial(power_table, space)
    elif space.kind == SpaceKind.INTERVAL:
        make = partial(Monomial, space)
    else:
        raise DomainError("Multigraph patterns need an interval space or Finite{0..d}")
    k = arr.shape[0]
    edges = tuple((i, j, make(int(arr[i, j]))) for i in range(k) for j in range(i + 1, k) if arr[i, j] > 0)
    return PatternGraph(space, k, edges)


def single_edge(f) -> PatternGraph:
    return PatternGraph(f.space, 2, ((0, 1, f),))


def triangle(f) -> PatternGraph:
    return PatternGraph(f.space, 3, ((0, 1, f), (0, 2, f), (1, 2, f)))


def empty_pattern(space: DecorationSpace, k: int) -> PatternGraph:
    return PatternGraph(space, k, ())


def constant_pattern(space: DecorationSpace, k: int) -> PatternGraph:
    """Complete pattern on k nodes with every edge decorated by Constant(1)."""
    one = Constant(space, 1.0)
    return PatternGraph(space, k, tuple((i, j, one) for i in range(k) for j in range(i + 1, k)))


def disjoint_union(F1: PatternGraph, F2: PatternGraph) -> PatternGraph:
    if F1.space != F2.space:
        raise DomainError("Patterns on different spaces cannot be joined")
    shifted = tuple((i + F1.k, j + F1.k, f) for i, j, f in F2.edges)
    return PatternGraph(F1.space, F1.k + F2.k, F1.edges + shifted)
