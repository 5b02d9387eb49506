# graphons/main.py
import logging
import math
from typing import Dict, Optional, Union

import numpy as np
from scipy import linalg

from common import ArgumentError, DomainError, MomentInfeasibilityError, UnsupportedOperationError
from config import settings
from decorations.main import family_matrix
from homomorphism.utils.enumeration import AUTO, product_sum
from models.decoration_models import DecorationSpace, SpaceKind, TestFamily, TestFunction, merge_support
from models.graph_models import DecoratedGraph, PatternGraph
from models.graphon_models import KernelMatrix, MomentFunctionSequence, StepGraphon, StepPartition

logger = logging.getLogger(__name__)

# Largest finite-type space for which reconstruction solves the full linear system
MAX_RECONSTRUCT_SIZE = 4096


def embed_graph(G: DecoratedGraph) -> StepGraphon:
    """W_G: n equal steps, cell (a, b) the point mass at G(a, b)."""
    points = G.entries[:, :, None]
    return StepGraphon(G.space, points, np.ones(points.shape, dtype=np.float64))


def from_probabilities(space: DecorationSpace, probabilities) -> StepGraphon:
    """
    Step graphon on a finite-type space from an (m, m, |K|) array of cell probabilities

    Raises:
        UnsupportedOperationError: For interval spaces
    """
    if not space.is_finite_type:
        raise UnsupportedOperationError("Probability arrays describe graphons on finite-type spaces only")
    probs = np.asarray(probabilities, dtype=np.float64)
    if probs.ndim != 3 or probs.shape[2] != space.size:
        raise ArgumentError(f"Expected shape (m, m, {space.size}), got {probs.shape}")
    points = np.broadcast_to(np.arange(space.size, dtype=np.int64), probs.shape)
    return StepGraphon(space, points, probs)


def bernoulli_graphon(p) -> StepGraphon:
    """Graphon over Finite{0, 1} putting probability p[a, b] on the edge element."""
    p = np.asarray(p, dtype=np.float64)
    space = DecorationSpace.finite(["0", "1"], zero=0)
    return from_probabilities(space, np.stack([1.0 - p, p], axis=2))


def moment_component(W: StepGraphon, f: TestFunction) -> KernelMatrix:
    """
    W_f(a, b) = ∫ f dW(a, b) on every cell

    Raises:
        DomainError: If f lives on another space
    """
    if f.space != W.space:
        raise DomainError("The test function lives on a different space than the graphon")
    values = np.sum(W.weights * f.evaluate_array(W.points), axis=2)
    return KernelMatrix(values, f.bound)


def moment_sequence(W: StepGraphon, family: TestFamily) -> MomentFunctionSequence:
    return MomentFunctionSequence(family, tuple(moment_component(W, f) for f in family))


def _pattern_density(F: PatternGraph, m: int, components: Dict[TestFunction, np.ndarray],
                     method: str, threads: Optional[int]) -> float:
    if F.k == 0:
        return 1.0
    factors = [(i, j, components[f]) for i, j, f in F.edges]
    return product_sum(F.k, m, factors, method=method, threads=threads) / float(m) ** F.k


def density_graphon(F: PatternGraph, W: StepGraphon, method: str = AUTO, threads: Optional[int] = None) -> float:
    """
    t(F, W) for a step graphon, summed exactly over cell assignments

    Only the moment components of F's edge functions enter the computation.
    """
    if F.space != W.space:
        raise DomainError("Pattern and graphon are decorated by different spaces")
    components = {f: moment_component(W, f).values for _, _, f in F.edges}
    return _pattern_density(F, W.m, components, method, threads)


def density_sequence(F: PatternGraph, s: MomentFunctionSequence, method: str = AUTO,
                     threads: Optional[int] = None) -> float:
    """
    t(F, s) for a moment function sequence whose family contains every edge function of F

    Raises:
        ArgumentError: If an edge function is not a member of the family
    """
    components = {}
    for _, _, f in F.edges:
        if f not in s.family.functions:
            raise ArgumentError(f"Edge function {f!r} is not in the family '{s.family.name}'")
        components[f] = s.component(f).values
    return _pattern_density(F, s.m, components, method, threads)


def reconstruct(s: MomentFunctionSequence, tol: Optional[float] = None) -> StepGraphon:
    """
    Recover the step graphon whose moment representation is ``s``

    The family's evaluation matrix must be square and invertible on a finite-type
    space (indicator basis, powers {1, ..., x^d} on {0..d}, full product-indicator
    basis). Each cell is solved for its distribution and checked for
    non-negativity and normalisation.

    Raises:
        UnsupportedOperationError: For interval spaces or a family that is not a basis
        MomentInfeasibilityError: If some cell is not the moment vector of a distribution
    """
    tol = settings.MOMENT_TOL if tol is None else tol
    space = s.family.space
    if space.kind == SpaceKind.INTERVAL:
        raise UnsupportedOperationError("Reconstruction on interval spaces needs a moment problem solver")
    if space.size > MAX_RECONSTRUCT_SIZE:
        raise UnsupportedOperationError(f"Reconstruction is limited to spaces of at most {MAX_RECONSTRUCT_SIZE} elements")
    A = family_matrix(s.family)
    if A.shape[0] != A.shape[1] or np.linalg.matrix_rank(A) < A.shape[1]:
        raise UnsupportedOperationError("The family's evaluation matrix is not an invertible basis of the space")
    m = s.m
    rows, cols = np.triu_indices(m)
    moments = np.stack([c.values[rows, cols] for c in s.components])  # |F| × cells
    weights = linalg.lu_solve(linalg.lu_factor(A), moments)  # |K| × cells
    violation = np.maximum(-weights.min(axis=0), np.abs(weights.sum(axis=0) - 1.0))
    worst = int(np.argmax(violation))
    if violation[worst] > tol:
        cell = (int(rows[worst]), int(cols[worst]))
        raise MomentInfeasibilityError(
            f"Cell {cell} is not realisable: violation {violation[worst]:.3g} exceeds {tol:g}",
            cell=cell, violation=float(violation[worst]),
        )
    weights = np.clip(weights, 0.0, None)
    sums = weights.sum(axis=0)
    drift = np.abs(sums - 1.0) > settings.DISTRIBUTION_TOL / 2
    weights[:, drift] = weights[:, drift] / sums[drift]
    cells = np.zeros((m, m, space.size), dtype=np.float64)
    cells[rows, cols, :] = weights.T
    cells[cols, rows, :] = weights.T
    return from_probabilities(space, cells)


def _check_partition(m: int, P: StepPartition) -> None:
    if P.m != m:
        raise ArgumentError(f"Partition covers {P.m} steps, the object has {m}")


def _block_means(values: np.ndarray, P: StepPartition) -> np.ndarray:
    """|P| × |P| matrix of exactly rounded block averages; symmetric input gives symmetric output."""
    g = len(P)
    means = np.empty((g, g), dtype=np.float64)
    for a, group_a in enumerate(P.groups):
        for b in range(a, g):
            block = values[np.ix_(group_a, P.groups[b])]
            means[a, b] = means[b, a] = math.fsum(block.ravel().tolist()) / block.size
    return means


def step_average(X: Union[KernelMatrix, StepGraphon], P: StepPartition,
                 weighted: bool = False) -> Union[KernelMatrix, StepGraphon]:
    """
    The stepping operator X_P: average X over every block P_a × P_b

    The result keeps X's m steps and is constant on group pairs. Graphon cells are
    averaged as mixtures of distributions. Stepping a graphon over groups of
    different sizes is refused unless ``weighted`` asks for the measure-weighted
    average explicitly.

    Raises:
        ArgumentError: If P does not partition X's steps or measures differ without ``weighted``
    """
    _check_partition(X.m, P)
    labels = P.labels()
    if isinstance(X, KernelMatrix):
        means = _block_means(X.values, P)
        return KernelMatrix(means[np.ix_(labels, labels)], X.sup_bound)
    if not P.equal_measure and not weighted:
        raise ArgumentError("Groups of unequal measure: pass weighted=True to average anyway")
    g = len(P)
    supports = [[None] * g for _ in range(g)]
    for a, group_a in enumerate(P.groups):
        for b in range(a, g):
            idx = np.ix_(group_a, P.groups[b])
            block_points = X.points[idx].ravel()
            block_weights = X.weights[idx].ravel() / (len(group_a) * len(P.groups[b]))
            supports[a][b] = supports[b][a] = merge_support(X.space, block_points, block_weights,
                                                            settings.MERGE_TOL)
    expanded = [[supports[labels[i]][labels[j]] for j in range(X.m)] for i in range(X.m)]
    return StepGraphon._from_supports(X.space, expanded)


def collapse(X: KernelMatrix, P: StepPartition) -> KernelMatrix:
    """Represent X_P on |P| equal steps; needs groups of equal size."""
    _check_partition(X.m, P)
    if not P.equal_measure:
        raise ArgumentError("Only equal-measure partitions can be collapsed to equal steps")
    return KernelMatrix(_block_means(X.values, P), X.sup_bound)


def expand(X: KernelMatrix, r: int) -> KernelMatrix:
    """The same step function on m·r steps, every step split into r."""
    if r < 1:
        raise ArgumentError(f"Refinement factor must be positive, got {r}")
    return KernelMatrix(np.kron(X.values, np.ones((r, r))), X.sup_bound)


def stepped_sequence(s: MomentFunctionSequence, P: StepPartition) -> MomentFunctionSequence:
    return MomentFunctionSequence(s.family, tuple(step_average(c, P) for c in s.components))
