# sampling/main.py
import itertools
import logging
import math
from collections import Counter
from typing import Optional, Sequence, Tuple

import numpy as np

from common import ArgumentError, UnsupportedOperationError, check_guard, falling_factorial, make_rng
from config import settings
from homomorphism.main import EvaluationFunctional, sample_pairs
from models.graph_models import DecoratedGraph, PatternGraph
from models.sample_models import SampleDistribution

logger = logging.getLogger(__name__)

# Above this many nodes, small k draws distinct k-subsets by rejection instead of sorting random keys
SMALL_GRAPH = 64
ENUMERATION_BLOCK = 100_000


def _check_k(G: DecoratedGraph, k: int) -> None:
    if k < 0 or k > G.n:
        raise ArgumentError(f"Cannot sample {k} distinct nodes from a graph with {G.n} nodes")


def _require_finite_type(G: DecoratedGraph) -> None:
    if not G.space.is_finite_type:
        raise UnsupportedOperationError(
            "Sample distributions are only tabulated on finite-type spaces; "
            "use functional_mean for moment summaries on interval spaces"
        )


def _tuples(G: DecoratedGraph, nodes: np.ndarray) -> np.ndarray:
    """Off-diagonal decoration tuples for rows of ordered node lists."""
    k = nodes.shape[1]
    pairs = sample_pairs(k)
    rows = np.empty((nodes.shape[0], len(pairs)), dtype=G.entries.dtype)
    for pos, (i, j) in enumerate(pairs):
        rows[:, pos] = G.entries[nodes[:, i], nodes[:, j]]
    return rows


def _draw_nodes(n: int, k: int, reps: int, rng: np.random.Generator) -> np.ndarray:
    """reps rows of k distinct nodes, each row a uniform ordered k-subset."""
    if n > SMALL_GRAPH and k * k <= n:
        # each row is clash-free with probability at least 1/2
        nodes = rng.integers(0, n, size=(reps, k))
        while True:
            ordered = np.sort(nodes, axis=1)
            clash = np.flatnonzero((np.diff(ordered, axis=1) == 0).any(axis=1))
            if clash.size == 0:
                return nodes
            nodes[clash] = rng.integers(0, n, size=(clash.size, k))
    rows = max(1, settings.BLOCK_SIZE // n)
    return np.concatenate([np.argsort(rng.random((min(rows, reps - start), n)), axis=1)[:, :k]
                           for start in range(0, reps, rows)])


def sample(G: DecoratedGraph, k: int, rng_seed: int) -> Tuple:
    """
    One draw of the sampling process: k distinct nodes in random order, read off pairwise

    Returns:
        The tuple (G(v_0, v_1), G(v_0, v_2), ..., G(v_{k-2}, v_{k-1}))

    Raises:
        ArgumentError: If k exceeds the number of nodes
    """
    _check_k(G, k)
    rng = make_rng(rng_seed)
    nodes = rng.choice(G.n, size=k, replace=False).reshape(1, k)
    return tuple(_tuples(G, nodes)[0].tolist())


def _tabulate(G: DecoratedGraph, k: int, rows: np.ndarray) -> Counter:
    if rows.shape[1] == 0:
        return Counter({(): rows.shape[0]})
    keys, counts = np.unique(rows, axis=0, return_counts=True)
    return Counter({tuple(key.tolist()): int(c) for key, c in zip(keys, counts)})


def empirical_distribution(G: DecoratedGraph, k: int, reps: int, rng_seed: int,
                           stream: Sequence[int] = ()) -> SampleDistribution:
    """Tabulate ``reps`` independent draws of the k-node sampling process; ``stream`` selects a substream."""
    _require_finite_type(G)
    _check_k(G, k)
    if reps < 1:
        raise ArgumentError(f"reps must be at least 1, got {reps}")
    rng = make_rng(rng_seed, *stream)
    counts: Counter = Counter()
    remaining = reps
    while remaining > 0:
        batch = min(remaining, ENUMERATION_BLOCK)
        counts.update(_tabulate(G, k, _tuples(G, _draw_nodes(G.n, k, batch, rng))))
        remaining -= batch
    return SampleDistribution(G.space, k, dict(counts), reps)


def _ordered_subsets(n: int, k: int):
    """Blocks of all ordered k-tuples of distinct nodes."""
    perms = itertools.permutations(range(n), k)
    while True:
        block = list(itertools.islice(perms, ENUMERATION_BLOCK))
        if not block:
            return
        yield np.asarray(block, dtype=np.int64).reshape(len(block), k)


def exact_sample_distribution(G: DecoratedGraph, k: int) -> SampleDistribution:
    """
    Exact law of the k-node sampling process by enumerating every ordered distinct k-tuple

    Raises:
        ResourceGuardError: If n(n-1)...(n-k+1) exceeds the sampling budget
    """
    _require_finite_type(G)
    _check_k(G, k)
    total = falling_factorial(G.n, k)
    check_guard(total, settings.SAMPLE_GUARD, "Exact sample distribution", fallback="empirical_distribution")
    counts: Counter = Counter()
    for nodes in _ordered_subsets(G.n, k):
        counts.update(_tabulate(G, k, _tuples(G, nodes)))
    return SampleDistribution(G.space, k, dict(counts), total)


def merge(a: SampleDistribution, b: SampleDistribution) -> SampleDistribution:
    """Pool two tabulations of the same process; associative and commutative."""
    if a.space != b.space or a.k != b.k:
        raise ArgumentError("Only distributions of the same space and sample size can be merged")
    counts = Counter(a.counts)
    counts.update(b.counts)
    return SampleDistribution(a.space, a.k, dict(counts), a.total + b.total)


def distribution_distance(a: SampleDistribution, b: SampleDistribution) -> float:
    """
    Total variation distance of the normalised counts

    On finite spaces weak convergence of the sampling laws is convergence in this distance.
    """
    if a.space != b.space or a.k != b.k:
        raise ArgumentError("Distances need distributions of the same space and sample size")
    if a.total == 0 or b.total == 0:
        raise ArgumentError("Cannot compare an empty tabulation")
    keys = set(a.counts) | set(b.counts)
    return 0.5 * math.fsum(abs(a.probability(key) - b.probability(key)) for key in keys)


def functional_mean(F: PatternGraph, G: DecoratedGraph, k: Optional[int] = None) -> float:
    """
    Exact E(L(𝔾(G, k))) for the evaluation functional of F under sampling without replacement

    Works on every space kind, which makes it the moment summary for interval spaces.
    """
    k = F.k if k is None else k
    _check_k(G, k)
    if F.space != G.space:
        raise ArgumentError("Pattern and graph are decorated by different spaces")
    total = falling_factorial(G.n, k)
    check_guard(total, settings.SAMPLE_GUARD, "Exact functional mean")
    functional = EvaluationFunctional(F, k)
    partial = [math.fsum(functional.evaluate_rows(_tuples(G, nodes)).tolist())
               for nodes in _ordered_subsets(G.n, k)]
    return math.fsum(partial) / total


def functional_mean_from(F: PatternGraph, distribution: SampleDistribution) -> float:
    """E(L) under a tabulated sample distribution."""
    functional = EvaluationFunctional(F, distribution.k)
    return math.fsum(count * functional(key) for key, count in distribution.counts.items()) / distribution.total
