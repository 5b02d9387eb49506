# cutnorm/main.py
import logging
import math
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np
from joblib import Parallel, delayed

from common import ArgumentError, ResourceGuardError, make_rng
from config import settings
from models.graphon_models import KernelMatrix

logger = logging.getLogger(__name__)

EXACT = "exact"
HEURISTIC = "heuristic"
AUTO = "auto"

# Subsets scored per vectorised block
MASK_BLOCK = 2 ** 14


@dataclass(frozen=True)
class CutNormResult:
    value: float
    S: Tuple[int, ...]
    T: Tuple[int, ...]
    mode: str

    @property
    def certified(self) -> bool:
        return self.mode == EXACT


def _check_steps(m: int, what: str) -> None:
    if m > settings.CUTNORM_MAX_STEPS:
        raise ResourceGuardError(
            f"{what} enumerates 2^{m} subsets, above the limit of {settings.CUTNORM_MAX_STEPS} steps; "
            f"use cut_norm_heuristic instead"
        )


def _mask_rows(start: int, stop: int, bits: int) -> np.ndarray:
    masks = np.arange(start, stop, dtype=np.int64)
    return ((masks[:, None] >> np.arange(bits, dtype=np.int64)) & 1).astype(np.float64)


def _rectangle_scores(rows: np.ndarray, V: np.ndarray) -> np.ndarray:
    """Best |Σ_{S×T}| per 0/1 row S, T chosen greedily for either sign."""
    c = rows @ V
    return np.maximum(np.where(c > 0, c, 0.0).sum(axis=1), -np.where(c < 0, c, 0.0).sum(axis=1))


def _sign_scores(rows: np.ndarray, V: np.ndarray) -> np.ndarray:
    """Σ_j |s·V_j| for s = (+1, 1 - 2·rows)."""
    signs = np.hstack([np.ones((rows.shape[0], 1)), 1.0 - 2.0 * rows])
    return np.abs(signs @ V).sum(axis=1)


def _best_in_block(start: int, stop: int, bits: int, V: np.ndarray,
                   score: Callable[[np.ndarray, np.ndarray], np.ndarray]) -> Tuple[float, int]:
    scores = score(_mask_rows(start, stop, bits), V)
    best = int(np.argmax(scores))
    return float(scores[best]), start + best


def _best_mask(bits: int, V: np.ndarray, score, threads: Optional[int]) -> int:
    """First mask in 0..2^bits-1 attaining the largest score."""
    total = 1 << bits
    blocks = [(start, min(total, start + MASK_BLOCK)) for start in range(0, total, MASK_BLOCK)]
    results = Parallel(n_jobs=threads or settings.THREADS, prefer="threads")(
        delayed(_best_in_block)(start, stop, bits, V, score) for start, stop in blocks
    )
    best_score, best_mask = results[0]
    for block_score, mask in results[1:]:
        if block_score > best_score:
            best_score, best_mask = block_score, mask
    return best_mask


def rectangle_sum(X: KernelMatrix, S, T) -> float:
    """Σ_{i∈S, j∈T} X(i, j) / m², the integral of X over the rectangle."""
    block = X.values[np.ix_(list(S), list(T))]
    return math.fsum(block.ravel().tolist()) / X.m ** 2


def _greedy_columns(X: KernelMatrix, S: Tuple[int, ...], sign: float) -> Tuple[int, ...]:
    c = sign * X.values[list(S), :].sum(axis=0)
    return tuple(int(j) for j in np.flatnonzero(c > 0))


def cut_norm_exact(X: KernelMatrix, threads: Optional[int] = None) -> CutNormResult:
    """
    ‖X‖_□ = max over step sets S, T of |∫_S∫_T X|, with a maximising witness

    For fixed S the best T collects the columns whose S-sum has the winning sign
    (zero sums excluded), so only the 2^m choices of S are enumerated.

    Raises:
        ResourceGuardError: If m exceeds CUTNORM_MAX_STEPS
    """
    m = X.m
    _check_steps(m, "Exact cut norm")
    mask = _best_mask(m, X.values, _rectangle_scores, threads)
    S = tuple(i for i in range(m) if mask >> i & 1)
    if not S:
        return CutNormResult(0.0, (), (), EXACT)
    candidates = [(abs(rectangle_sum(X, S, T)), T) for T in
                  (_greedy_columns(X, S, 1.0), _greedy_columns(X, S, -1.0))]
    value, T = max(candidates, key=lambda item: item[0])
    if value == 0.0:
        return CutNormResult(0.0, (), (), EXACT)
    return CutNormResult(value, S, T, EXACT)


def bilinear_pm1_norm(X: KernelMatrix, threads: Optional[int] = None) -> float:
    """
    max over ±1 step vectors s, g of Σ s_i g_j X(i, j) / m²

    The optimal g is sign(sᵀX), and s and −s give the same value, so s_0 = +1 is fixed.

    Raises:
        ResourceGuardError: If m exceeds CUTNORM_MAX_STEPS
    """
    m = X.m
    _check_steps(m, "The ±1 bilinear norm")
    mask = _best_mask(m - 1, X.values, _sign_scores, threads)
    s = np.array([1.0] + [-1.0 if mask >> i & 1 else 1.0 for i in range(m - 1)])
    return math.fsum(np.abs(s @ X.values).tolist()) / m ** 2


def _alternate(X: KernelMatrix, S: Tuple[int, ...], sign: float) -> Tuple[float, Tuple[int, ...], Tuple[int, ...]]:
    """Greedy T for S, then greedy S for T, until the signed rectangle sum stops growing."""
    best = (-math.inf, S, ())
    while S:
        T = _greedy_columns(X, S, sign)
        if not T:
            break
        S_next = _greedy_columns(X, T, sign)  # X is symmetric, rows of T are columns
        value = sign * rectangle_sum(X, S_next, T) if S_next else 0.0
        if value <= best[0]:
            break
        best = (value, S_next, T)
        S = S_next
    return best


def cut_norm_heuristic(X: KernelMatrix, restarts: int = 50, seed: int = 0) -> CutNormResult:
    """
    Lower bound on ‖X‖_□ by alternating greedy maximisation

    The first start uses every step as S; the others are uniform random subsets.
    The result is always the value of an actual rectangle, hence never above the
    exact norm, but it carries no approximation guarantee.

    Args:
        X: Kernel
        restarts: Number of initial sets, at least 1
        seed: Seed for the random initial sets

    Returns:
        The best rectangle found, in heuristic mode
    """
    if restarts < 1:
        raise ArgumentError(f"restarts must be at least 1, got {restarts}")
    m = X.m
    rng = make_rng(seed)
    best = CutNormResult(0.0, (), (), HEURISTIC)
    for restart in range(restarts):
        if restart == 0:
            S = tuple(range(m))
        else:
            S = tuple(int(i) for i in np.flatnonzero(rng.random(m) < 0.5))
        for sign in (1.0, -1.0):
            value, S_found, T_found = _alternate(X, S, sign)
            if value > best.value:
                best = CutNormResult(value, S_found, T_found, HEURISTIC)
    return best


def cut_norm(X: KernelMatrix, mode: str = AUTO, restarts: int = 50, seed: int = 0,
             threads: Optional[int] = None) -> CutNormResult:
    """Exact below CUTNORM_AUTO_STEPS steps in ``auto`` mode, heuristic above."""
    if mode == EXACT or (mode == AUTO and X.m <= settings.CUTNORM_AUTO_STEPS):
        return cut_norm_exact(X, threads=threads)
    if mode not in (AUTO, HEURISTIC):
        raise ArgumentError(f"Unknown cut norm mode {mode!r}")
    logger.info(f"Cut norm on {X.m} steps computed heuristically")
    return cut_norm_heuristic(X, restarts=restarts, seed=seed)


def cut_norm_upper_bound(X: KernelMatrix) -> float:
    """‖X‖_1 = mean |X|, which dominates the cut norm."""
    return math.fsum(np.abs(X.values).ravel().tolist()) / X.m ** 2
