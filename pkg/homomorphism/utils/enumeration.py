# homomorphism/utils/enumeration.py
"""
Sums of edge-factor products over all maps [k] → [size]

Both hom(F, G) and t(F, W) for step graphons reduce to

    Σ_{x ∈ [size]^k} ∏_{(i, j, M) ∈ factors} M[x_i, x_j]

with one size × size matrix per pattern edge. Small instances are enumerated
exactly: the leading coordinates run through an odometer, the trailing ones are
handled as one broadcast numpy block, and every partial sum is combined with
math.fsum. Instances beyond the enumeration budget are contracted with
numpy.einsum instead, under a separate FLOP budget.
"""
import itertools
import logging
import math
import re
import string
from typing import List, Optional, Sequence, Tuple

import numpy as np
from joblib import Parallel, delayed

from common import ArgumentError, check_guard
from config import settings

logger = logging.getLogger(__name__)

Factor = Tuple[int, int, np.ndarray]

ENUMERATE = "enumerate"
CONTRACT = "contract"
AUTO = "auto"


def enumeration_cost(k: int, size: int, n_factors: int) -> float:
    return float(size) ** k * max(1, n_factors)


def _suffix_length(k: int, size: int, block_size: int) -> int:
    if size <= 1:
        return k
    return max(1, min(k, int(math.log(block_size) / math.log(size))))


def _axis_shape(size: int, axes: Sequence[int], ndim: int) -> Tuple[int, ...]:
    return tuple(size if a in axes else 1 for a in range(ndim))


def _block_sum(prefix: Tuple[int, ...], k: int, size: int, factors: Sequence[Factor]) -> float:
    p = len(prefix)
    s = k - p
    block = np.ones((size,) * s, dtype=np.float64)
    scalar = 1.0
    for i, j, matrix in factors:
        if j < p:
            scalar *= matrix[prefix[i], prefix[j]]
        elif i < p:
            block = block * matrix[prefix[i], :].reshape(_axis_shape(size, (j - p,), s))
        else:
            block = block * matrix.reshape(_axis_shape(size, (i - p, j - p), s))
        if scalar == 0.0:
            return 0.0
    return scalar * math.fsum(block.ravel().tolist())


def _chunk_sum(prefixes: List[Tuple[int, ...]], k: int, size: int, factors: Sequence[Factor]) -> float:
    return math.fsum(_block_sum(prefix, k, size, factors) for prefix in prefixes)


def _enumerate(k: int, size: int, factors: Sequence[Factor], threads: int) -> float:
    s = _suffix_length(k, size, settings.BLOCK_SIZE)
    p = k - s
    prefixes = list(itertools.product(range(size), repeat=p))
    # chunks depend only on the instance, never on the thread count
    n_chunks = min(len(prefixes), max(1, size))
    chunks = [prefixes[c::n_chunks] for c in range(n_chunks)]
    partials = Parallel(n_jobs=threads, prefer="threads")(
        delayed(_chunk_sum)(chunk, k, size, factors) for chunk in chunks
    )
    return math.fsum(partials)


def _contraction_cost(subscripts: str, operands: Sequence[np.ndarray]) -> Tuple[float, float]:
    _, report = np.einsum_path(subscripts, *operands, optimize="greedy")
    flops = re.search(r"Optimized FLOP count:\s*([0-9.eE+-]+)", report)
    largest = re.search(r"Largest intermediate:\s*([0-9.eE+-]+)", report)
    return float(flops.group(1)) if flops else math.inf, float(largest.group(1)) if largest else math.inf


def _contract(k: int, size: int, factors: Sequence[Factor]) -> float:
    letters = string.ascii_letters
    if k > len(letters):
        raise ArgumentError(f"Patterns with more than {len(letters)} nodes are not supported")
    used = sorted({i for i, _, _ in factors} | {j for _, j, _ in factors})
    subscripts = ",".join(letters[i] + letters[j] for i, j, _ in factors) + "->"
    operands = [matrix for _, _, matrix in factors]
    flops, largest = _contraction_cost(subscripts, operands)
    check_guard(flops, settings.CONTRACTION_GUARD, "Tensor contraction", fallback="Monte Carlo estimation")
    check_guard(largest, settings.CONTRACTION_MEMORY, "Largest contraction intermediate",
                fallback="Monte Carlo estimation")
    value = float(np.einsum(subscripts, *operands, optimize="greedy"))
    return value * float(size) ** (k - len(used))


def product_sum(k: int, size: int, factors: Sequence[Factor], method: str = AUTO,
                threads: Optional[int] = None) -> float:
    """
    Sum the product of edge factors over all maps [k] → [size]

    Args:
        k: Number of pattern nodes
        size: Number of target nodes or steps
        factors: (i, j, matrix) triples with 0 <= i < j < k and size × size matrices
        method: ``enumerate`` (exact odometer with fsum), ``contract`` (einsum) or ``auto``
        threads: Worker count for enumeration chunks; results do not depend on it

    Returns:
        The sum as a float

    Raises:
        ResourceGuardError: If the chosen method exceeds its budget
    """
    if k == 0:
        return 1.0
    if size == 0:
        return 0.0
    threads = threads or settings.THREADS
    if not factors:
        return float(size) ** k
    cost = enumeration_cost(k, size, len(factors))
    if method == ENUMERATE or (method == AUTO and cost <= settings.HOM_GUARD):
        check_guard(cost, settings.HOM_GUARD, "Exhaustive enumeration", fallback="Monte Carlo estimation")
        return _enumerate(k, size, factors, threads)
    if method not in (AUTO, CONTRACT):
        raise ArgumentError(f"Unknown summation method {method!r}")
    logger.info(f"Enumeration of {size}^{k} maps exceeds the budget, contracting with einsum")
    return _contract(k, size, factors)
