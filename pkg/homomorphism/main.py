# homomorphism/main.py
import itertools
import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from common import ArgumentError, DomainError, make_rng
from homomorphism.utils.enumeration import AUTO, Factor, product_sum
from models.graph_models import DecoratedGraph, PatternGraph

logger = logging.getLogger(__name__)

ESTIMATE_BATCH = 100_000


@dataclass(frozen=True)
class DensityEstimate:
    estimate: float
    stderr: float
    reps: int


def edge_matrices(F: PatternGraph, G: DecoratedGraph) -> List[Factor]:
    """Evaluate every edge function of F on the whole decoration matrix of G."""
    if F.space != G.space:
        raise DomainError("Pattern and graph are decorated by different spaces")
    return [(i, j, f.evaluate_array(G.entries)) for i, j, f in F.edges]


def map_weight(F: PatternGraph, G: DecoratedGraph, assignment: Sequence[int]) -> float:
    """
    Weight w(f) of a map f: [k] → V(G), the product of edge functions along f

    Raises:
        DomainError: If the spaces differ
        ArgumentError: If the assignment is not a map from all k pattern nodes into V(G)
    """
    if F.space != G.space:
        raise DomainError("Pattern and graph are decorated by different spaces")
    if len(assignment) != F.k or any(not 0 <= int(v) < G.n for v in assignment):
        raise ArgumentError(f"Assignment must send all {F.k} pattern nodes into 0..{G.n - 1}")
    weight = 1.0
    for i, j, f in F.edges:
        weight *= f.evaluate(G[int(assignment[i]), int(assignment[j])])
    return weight


def hom(F: PatternGraph, G: DecoratedGraph, method: str = AUTO, threads: Optional[int] = None) -> float:
    """
    hom(F, G): the sum of w(f) over all n^k maps

    Raises:
        ResourceGuardError: If the instance exceeds the enumeration and contraction budgets
    """
    return product_sum(F.k, G.n, edge_matrices(F, G), method=method, threads=threads)


def density(F: PatternGraph, G: DecoratedGraph, method: str = AUTO, threads: Optional[int] = None) -> float:
    """t(F, G) = hom(F, G) / n^k, the expected weight of a uniform random map."""
    if F.k == 0:
        return 1.0
    if G.n == 0:
        raise ArgumentError("Densities into the empty graph are undefined")
    return hom(F, G, method=method, threads=threads) / float(G.n) ** F.k


def density_estimate(F: PatternGraph, G: DecoratedGraph, reps: int, seed: int) -> DensityEstimate:
    """
    Monte Carlo estimate of t(F, G) from uniform random maps drawn with replacement

    Args:
        F: Pattern
        G: Target graph
        reps: Number of random maps, at least 2
        seed: Seed of the PCG64 stream

    Returns:
        The sample mean of the map weights and its standard error
    """
    if reps < 2:
        raise ArgumentError(f"At least 2 repetitions are needed, got {reps}")
    if G.n == 0:
        raise ArgumentError("Densities into the empty graph are undefined")
    factors = edge_matrices(F, G)
    rng = make_rng(seed)
    sums, squares = [], []
    remaining = reps
    while remaining > 0:
        batch = min(remaining, ESTIMATE_BATCH)
        nodes = rng.integers(0, G.n, size=(batch, F.k))
        weights = np.ones(batch, dtype=np.float64)
        for i, j, matrix in factors:
            weights *= matrix[nodes[:, i], nodes[:, j]]
        sums.append(math.fsum(weights.tolist()))
        squares.append(math.fsum((weights * weights).tolist()))
        remaining -= batch
    mean = math.fsum(sums) / reps
    variance = max(0.0, (math.fsum(squares) - reps * mean * mean) / (reps - 1))
    return DensityEstimate(estimate=mean, stderr=math.sqrt(variance / reps), reps=reps)


def sample_pairs(k: int) -> List[Tuple[int, int]]:
    """Canonical order of the off-diagonal positions of a k-node sample."""
    return list(itertools.combinations(range(k), 2))


class EvaluationFunctional:
    """
    L(tuple) = ∏_{(i, j, f) ∈ F} f(tuple_ij) on the off-diagonal tuples of samples

    Its expectation under sampling with replacement is t(F, G). Samples drawn
    without replacement, as the sampling process does, differ from it by at
    most replacement_gap_bound(F, n).
    """

    def __init__(self, F: PatternGraph, sample_k: Optional[int] = None):
        self.pattern = F
        self.sample_k = F.k if sample_k is None else sample_k
        if self.sample_k < F.k:
            raise ArgumentError(f"Samples on {self.sample_k} nodes cannot carry a {F.k}-node pattern")
        position = {pair: idx for idx, pair in enumerate(sample_pairs(self.sample_k))}
        self._terms = [(position[(i, j)], f) for i, j, f in F.edges]

    @property
    def width(self) -> int:
        return self.sample_k * (self.sample_k - 1) // 2

    def __call__(self, sample: Sequence) -> float:
        if len(sample) != self.width:
            raise ArgumentError(f"Expected a tuple of length {self.width}, got {len(sample)}")
        value = 1.0
        for pos, f in self._terms:
            value *= f.evaluate(sample[pos])
        return value

    def evaluate_rows(self, rows: np.ndarray) -> np.ndarray:
        """Vectorised L over an (r, width) array of sample tuples."""
        rows = np.asarray(rows)
        values = np.ones(rows.shape[0], dtype=np.float64)
        for pos, f in self._terms:
            values *= f.evaluate_array(rows[:, pos])
        return values


def evaluation_functional(F: PatternGraph, sample_k: Optional[int] = None) -> EvaluationFunctional:
    return EvaluationFunctional(F, sample_k)


def replacement_gap_bound(F: PatternGraph, n: int) -> float:
    """Bound (k choose 2)·k²/n·∏ sup|f| on |E_without(L) − t(F, G)| for an n-node graph."""
    k = F.k
    return math.comb(k, 2) * k * k / n * F.weight_bound()
