# regularity/utils/partitions.py
import math
from functools import reduce
from typing import Iterable

from common import ArgumentError
from models.graphon_models import StepPartition


def trivial_partition(m: int) -> StepPartition:
    if m < 1:
        raise ArgumentError(f"A partition needs at least one step, got {m}")
    return StepPartition(m, (tuple(range(m)),))


def singleton_partition(m: int) -> StepPartition:
    return StepPartition(m, tuple((i,) for i in range(m)))


def equal_partition(m: int, parts: int) -> StepPartition:
    """``parts`` groups of consecutive steps, all of size m / parts."""
    if parts < 1 or m % parts:
        raise ArgumentError(f"Cannot split {m} steps into {parts} equal groups")
    size = m // parts
    return StepPartition(m, tuple(tuple(range(a * size, (a + 1) * size)) for a in range(parts)))


def refine(P: StepPartition, S: Iterable[int], T: Iterable[int]) -> StepPartition:
    """Intersect every group with S, T and their complements."""
    S, T = set(S), set(T)
    labels = P.labels()
    return StepPartition.from_labels([4 * int(labels[i]) + 2 * (i in S) + (i in T) for i in range(P.m)])


def equalize(P: StepPartition) -> StepPartition:
    """Split every group into consecutive runs of size gcd(group sizes)."""
    size = reduce(math.gcd, P.sizes)
    groups = [g[start:start + size] for g in P.groups for start in range(0, len(g), size)]
    return StepPartition(P.m, tuple(groups))


def is_refinement(fine: StepPartition, coarse: StepPartition) -> bool:
    return fine.refines(coarse)
