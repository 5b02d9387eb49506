# models/graphon_models.py
from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

import numpy as np

from common import ArgumentError, ValidationError
from models.decoration_models import DecorationSpace, KDistribution, TestFamily, TestFunction, merge_support

BOUND_SLACK = 1e-9


@dataclass(frozen=True, eq=False)
class KernelMatrix:
    """A symmetric real step function on m equal steps of [0,1]."""

    values: np.ndarray
    sup_bound: float = -1.0

    def __post_init__(self):
        values = np.array(self.values, dtype=np.float64)
        if values.ndim != 2 or values.shape[0] != values.shape[1] or values.shape[0] == 0:
            raise ValidationError(f"A kernel needs a non-empty square matrix, got shape {values.shape}")
        if not np.all(np.isfinite(values)):
            raise ValidationError("Kernel values must be finite")
        if not np.array_equal(values, values.T):
            raise ValidationError("Kernel values must be exactly symmetric")
        peak = float(np.max(np.abs(values)))
        bound = peak if self.sup_bound < 0 else float(self.sup_bound)
        if bound < peak - BOUND_SLACK * max(1.0, peak):
            raise ValidationError(f"sup_bound {bound} is below max |value| {peak}")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "sup_bound", max(bound, 0.0))

    @property
    def m(self) -> int:
        return int(self.values.shape[0])

    def __sub__(self, other: "KernelMatrix") -> "KernelMatrix":
        if other.m != self.m:
            raise ArgumentError(f"Cannot subtract kernels on {self.m} and {other.m} steps")
        return KernelMatrix(self.values - other.values)

    def __add__(self, other: "KernelMatrix") -> "KernelMatrix":
        if other.m != self.m:
            raise ArgumentError(f"Cannot add kernels on {self.m} and {other.m} steps")
        return KernelMatrix(self.values + other.values)

    def scale(self, c: float) -> "KernelMatrix":
        return KernelMatrix(self.values * c, abs(c) * self.sup_bound)

    def energy(self) -> float:
        """Squared L2 norm of the step function."""
        return float(np.mean(self.values ** 2))


@dataclass(frozen=True)
class StepPartition:
    """A partition of the steps 0..m-1 into non-empty groups."""

    m: int
    groups: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        groups = tuple(tuple(sorted(int(i) for i in g)) for g in self.groups)
        if any(not g for g in groups):
            raise ArgumentError("Partition groups must be non-empty")
        flat = [i for g in groups for i in g]
        if sorted(flat) != list(range(self.m)):
            raise ArgumentError(f"Groups must be disjoint and cover 0..{self.m - 1}")
        object.__setattr__(self, "groups", groups)

    @classmethod
    def from_labels(cls, labels: Sequence[int]) -> "StepPartition":
        """Groups ordered by first appearance of each label."""
        order: dict = {}
        for i, label in enumerate(labels):
            order.setdefault(int(label), []).append(i)
        return cls(len(labels), tuple(tuple(g) for g in order.values()))

    def __len__(self) -> int:
        return len(self.groups)

    @property
    def sizes(self) -> List[int]:
        return [len(g) for g in self.groups]

    @property
    def equal_measure(self) -> bool:
        return len(set(self.sizes)) == 1

    def labels(self) -> np.ndarray:
        labels = np.empty(self.m, dtype=np.int64)
        for a, g in enumerate(self.groups):
            labels[list(g)] = a
        return labels

    def refines(self, coarser: "StepPartition") -> bool:
        if coarser.m != self.m:
            return False
        coarse = coarser.labels()
        return all(len({coarse[i] for i in g}) == 1 for g in self.groups)


@dataclass(frozen=True, eq=False)
class StepGraphon:
    """
    An equal-measure step K-graphon: a symmetric m×m array of finite-support distributions

    Cells are stored as padded arrays ``points[a, b, :]`` and ``weights[a, b, :]``;
    padding slots repeat the first support point with weight 0.
    """

    space: DecorationSpace
    points: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        points = self.space.check_array(self.points)
        weights = np.array(self.weights, dtype=np.float64)
        if points.ndim != 3 or points.shape != weights.shape or points.shape[0] != points.shape[1]:
            raise ValidationError(f"Cell arrays must have matching shape (m, m, s), got {points.shape}")
        if points.shape[0] == 0 or points.shape[2] == 0:
            raise ValidationError("A step graphon needs at least one step and one support slot")
        if np.any(weights < 0) or np.any(np.abs(weights.sum(axis=2) - 1.0) > 1e-12 * points.shape[2]):
            raise ValidationError("Every cell must be a probability distribution")
        if not (np.array_equal(points, points.transpose(1, 0, 2)) and
                np.array_equal(weights, weights.transpose(1, 0, 2))):
            raise ValidationError("A step graphon must be symmetric")
        for arr in (points, weights):
            arr.setflags(write=False)
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "weights", weights)

    @classmethod
    def from_cells(cls, space: DecorationSpace, cells: Sequence[Sequence[KDistribution]],
                   merge_tol: float = 1e-14) -> "StepGraphon":
        m = len(cells)
        merged = [[merge_support(space, cells[a][b].points, cells[a][b].weights, merge_tol)
                   for b in range(m)] for a in range(m)]
        return cls._from_supports(space, merged)

    @classmethod
    def _from_supports(cls, space: DecorationSpace, supports) -> "StepGraphon":
        m = len(supports)
        width = max(len(pts) for row in supports for pts, _ in row)
        points = np.zeros((m, m, width), dtype=space.dtype)
        weights = np.zeros((m, m, width), dtype=np.float64)
        for a in range(m):
            for b in range(m):
                pts, wts = supports[a][b]
                points[a, b, :] = pts[0]
                points[a, b, :len(pts)] = pts
                weights[a, b, :len(wts)] = wts
        return cls(space, points, weights)

    @property
    def m(self) -> int:
        return int(self.points.shape[0])

    def cell(self, a: int, b: int) -> KDistribution:
        keep = self.weights[a, b] > 0
        return KDistribution(self.space, tuple(self.points[a, b][keep].tolist()),
                             tuple(self.weights[a, b][keep].tolist()))

    def cells(self) -> Iterable[Tuple[int, int, KDistribution]]:
        for a in range(self.m):
            for b in range(a, self.m):
                yield a, b, self.cell(a, b)


@dataclass(frozen=True, eq=False)
class MomentFunctionSequence:
    """One kernel per family function, all on the same number of steps."""

    family: TestFamily
    components: Tuple[KernelMatrix, ...]

    def __post_init__(self):
        components = tuple(self.components)
        if len(components) != len(self.family):
            raise ValidationError(f"Expected {len(self.family)} components, got {len(components)}")
        if len({c.m for c in components}) > 1:
            raise ValidationError("All moment components must have the same number of steps")
        object.__setattr__(self, "components", components)

    @property
    def m(self) -> int:
        return self.components[0].m if self.components else 0

    def component(self, f: TestFunction) -> KernelMatrix:
        return self.components[self.family.index(f)]
