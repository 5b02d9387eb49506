# regularity/main.py
import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from common import ArgumentError
from cutnorm.main import AUTO, CutNormResult, cut_norm
from graphons.main import moment_sequence, step_average
from models.decoration_models import TestFamily
from models.graphon_models import KernelMatrix, StepGraphon, StepPartition
from regularity.utils.partitions import equalize, refine, trivial_partition

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RegularityResult:
    partition: StepPartition
    approx: KernelMatrix
    achieved: float
    certified: bool
    rounds: int
    energies: Tuple[float, ...] = ()


@dataclass(frozen=True)
class SimultaneousResult:
    partition: StepPartition
    achieved: Tuple[float, ...]
    certified: Tuple[bool, ...]
    rounds: int
    equalization_rounds: int = 0
    energies: Tuple[Tuple[float, ...], ...] = field(default_factory=tuple)


@dataclass(frozen=True)
class GraphonRegularity:
    partition: StepPartition
    graphon: StepGraphon
    achieved: Tuple[float, ...]
    certified: Tuple[bool, ...]
    rounds: int


def round_cap(eps: float, kernels: int = 1) -> int:
    """Refinement rounds allowed by the energy increment: kernels·⌈1/eps²⌉."""
    return kernels * math.ceil(1.0 / eps ** 2)


def _check_eps(eps: float) -> None:
    if not 0.0 < eps < 1.0:
        raise ArgumentError(f"eps must lie in (0, 1), got {eps}")


def _residual(X: KernelMatrix, P: StepPartition, mode: str, restarts: int, seed: int,
              threads: Optional[int]) -> CutNormResult:
    return cut_norm(X - step_average(X, P), mode=mode, restarts=restarts, seed=seed, threads=threads)


def weak_regularity(X: KernelMatrix, eps: float, mode: str = AUTO, restarts: int = 50, seed: int = 0,
                    base: Optional[StepPartition] = None, threads: Optional[int] = None) -> RegularityResult:
    """
    Refine a partition until X is eps·sup_bound-close to its stepping in cut norm

    Every round finds a rectangle (S, T) where X − X_P is large and splits each
    group along S, T and their complements. Each such split raises the energy
    ‖X_P‖₂² by at least the square of the rectangle value, which caps the number
    of rounds at ⌈1/eps²⌉.

    Args:
        X: Kernel to regularise
        eps: Relative accuracy in (0, 1)
        mode: Cut norm mode, ``exact`` certifies the result
        restarts: Restarts of the heuristic cut norm
        seed: Seed of the heuristic cut norm
        base: Partition to start from, trivial by default
        threads: Worker count for the exact cut norm

    Returns:
        The partition, the stepped kernel, the last residual cut norm and the certification flag
    """
    _check_eps(eps)
    P = trivial_partition(X.m) if base is None else base
    if P.m != X.m:
        raise ArgumentError(f"Base partition covers {P.m} steps, the kernel has {X.m}")
    target = eps * X.sup_bound
    cap = round_cap(eps)
    energies = []
    rounds = 0
    while True:
        approx = step_average(X, P)
        energies.append(approx.energy())
        residual = _residual(X, P, mode, restarts, seed, threads)
        if residual.value <= target:
            certified = residual.certified
            break
        if rounds == cap:
            logger.warning(f"Round cap {cap} reached with residual {residual.value:.4g} above {target:.4g}")
            certified = False
            break
        P = refine(P, residual.S, residual.T)
        rounds += 1
        logger.info(f"Round {rounds}: residual {residual.value:.4g}, {len(P)} groups")
    if not certified:
        logger.warning("Regularity partition is not certified: the cut norm was only bounded from below")
    return RegularityResult(P, approx, residual.value, certified, rounds, tuple(energies))


def _worst(Xs: Sequence[KernelMatrix], P: StepPartition, mode: str, restarts: int, seed: int,
           threads: Optional[int]) -> Tuple[int, List[CutNormResult]]:
    residuals = [_residual(X, P, mode, restarts, seed, threads) for X in Xs]
    relative = [r.value / X.sup_bound if X.sup_bound > 0 else 0.0 for r, X in zip(residuals, Xs)]
    worst = max(range(len(Xs)), key=lambda i: (relative[i], -i))
    return worst, residuals


def _within(Xs: Sequence[KernelMatrix], residuals: Sequence[CutNormResult], eps: float) -> bool:
    return all(r.value <= eps * X.sup_bound for r, X in zip(residuals, Xs))


def simultaneous_regularity(Xs: Sequence[KernelMatrix], eps: float, base: Optional[StepPartition] = None,
                            mode: str = AUTO, restarts: int = 50, seed: int = 0,
                            threads: Optional[int] = None) -> SimultaneousResult:
    """
    One equal-measure partition, refining ``base``, that regularises every kernel at once

    Each round refines along the witness of the kernel whose relative residual
    is largest. Once all residuals are within eps·sup_bound the groups are split
    into runs of their common gcd size; if the split partition fails the check
    the rounds resume from it.

    Raises:
        ArgumentError: If the kernels differ in size or ``base`` has groups of unequal size
    """
    _check_eps(eps)
    if not Xs:
        raise ArgumentError("At least one kernel is needed")
    m = Xs[0].m
    if any(X.m != m for X in Xs):
        raise ArgumentError("All kernels must live on the same number of steps")
    P = trivial_partition(m) if base is None else base
    if P.m != m:
        raise ArgumentError(f"Base partition covers {P.m} steps, the kernels have {m}")
    if not P.equal_measure:
        raise ArgumentError("The base partition must consist of groups of equal size")
    cap = round_cap(eps, len(Xs))
    rounds = 0
    equalization_rounds = 0
    energies = []
    while True:
        energies.append(tuple(step_average(X, P).energy() for X in Xs))
        worst, residuals = _worst(Xs, P, mode, restarts, seed, threads)
        if _within(Xs, residuals, eps):
            if P.equal_measure:
                break
            P = equalize(P)
            equalization_rounds += 1
            logger.info(f"Equalised to {len(P)} groups of {P.sizes[0]} steps")
            continue
        if rounds == cap:
            logger.warning(f"Round cap {cap} reached before every kernel was within eps")
            P = equalize(P)
            worst, residuals = _worst(Xs, P, mode, restarts, seed, threads)
            break
        P = refine(P, residuals[worst].S, residuals[worst].T)
        rounds += 1
        logger.info(f"Round {rounds}: kernel {worst} residual {residuals[worst].value:.4g}, {len(P)} groups")
    certified = tuple(r.certified and r.value <= eps * X.sup_bound for r, X in zip(residuals, Xs))
    if not all(certified):
        logger.warning(f"{certified.count(False)} of {len(Xs)} kernels are not certified")
    return SimultaneousResult(P, tuple(r.value for r in residuals), certified, rounds,
                              equalization_rounds, tuple(energies))


def regularize_graphon(W: StepGraphon, family: TestFamily, eps: float, base: Optional[StepPartition] = None,
                       mode: str = AUTO, restarts: int = 50, seed: int = 0,
                       threads: Optional[int] = None) -> GraphonRegularity:
    """Simultaneous regularity of every moment component of W, and W stepped on the result."""
    s = moment_sequence(W, family)
    result = simultaneous_regularity(s.components, eps, base=base, mode=mode, restarts=restarts,
                                     seed=seed, threads=threads)
    return GraphonRegularity(result.partition, step_average(W, result.partition), result.achieved,
                             result.certified, result.rounds)
