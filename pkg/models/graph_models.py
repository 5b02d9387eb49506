# models/graph_models.py
from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, Optional, Tuple

import numpy as np

from common import DomainError, ValidationError
from models.decoration_models import Constant, DecorationSpace, TestFunction


@dataclass(frozen=True, eq=False)
class DecoratedGraph:
    """
    A symmetric n×n matrix of decorations, diagonal included

    ``loopless`` records that every diagonal entry is the space's zero element.
    ``metadata`` carries provenance such as the diagonal policy of a sampled graph.
    """

    space: DecorationSpace
    entries: np.ndarray
    loopless: bool = False
    metadata: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        entries = self.space.check_array(self.entries)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise ValidationError(f"Entries must form a square matrix, got shape {entries.shape}")
        if not np.array_equal(entries, entries.T):
            raise ValidationError("A decorated graph must be symmetric")
        if self.loopless:
            if self.space.zero is None:
                raise ValidationError("A loopless graph needs a space with a zero element")
            if np.any(np.diagonal(entries) != self.space.zero):
                raise ValidationError("A loopless graph must carry the zero element on its diagonal")
        entries = entries.copy()
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "metadata", dict(self.metadata))

    @property
    def n(self) -> int:
        return int(self.entries.shape[0])

    def __getitem__(self, pair: Tuple[int, int]):
        return self.entries[pair].item()

    def upper_triangle(self) -> np.ndarray:
        """Row-major upper triangle including the diagonal."""
        return self.entries[np.triu_indices(self.n)]


@dataclass(frozen=True)
class PatternGraph:
    """
    A small graph on nodes 0..k-1 whose edges carry test functions

    Pairs without an edge contribute no factor to a map weight, exactly as if
    they were decorated with the constant 1.
    """

    space: DecorationSpace
    k: int
    edges: Tuple[Tuple[int, int, TestFunction], ...] = ()

    def __post_init__(self):
        if self.k < 0:
            raise ValidationError(f"Pattern node count must be non-negative, got {self.k}")
        edges = tuple(sorted(((int(i), int(j), f) for i, j, f in self.edges), key=lambda e: (e[0], e[1])))
        seen = set()
        for i, j, f in edges:
            if not 0 <= i < j < self.k:
                raise ValidationError(f"Pattern edge ({i}, {j}) needs 0 <= i < j < {self.k}")
            if (i, j) in seen:
                raise ValidationError(f"Pattern pair ({i}, {j}) carries more than one function")
            if f.space != self.space:
                raise DomainError(f"Function on edge ({i}, {j}) lives on a different space")
            seen.add((i, j))
        object.__setattr__(self, "edges", edges)

    def __iter__(self) -> Iterator[Tuple[int, int, TestFunction]]:
        return iter(self.edges)

    def function(self, i: int, j: int) -> TestFunction:
        i, j = min(i, j), max(i, j)
        for a, b, f in self.edges:
            if (a, b) == (i, j):
                return f
        return Constant(self.space, 1.0)

    def weight_bound(self) -> float:
        """Product of sup|f| over the edges; bounds every map weight."""
        bound = 1.0
        for _, _, f in self.edges:
            bound *= f.bound
        return bound

    def relabel(self, permutation) -> "PatternGraph":
        perm = list(permutation)
        if sorted(perm) != list(range(self.k)):
            raise ValidationError(f"{perm} is not a permutation of 0..{self.k - 1}")
        edges = tuple((min(perm[i], perm[j]), max(perm[i], perm[j]), f) for i, j, f in self.edges)
        return PatternGraph(self.space, self.k, edges)

    def describe(self, family: Optional[Any] = None) -> str:
        """Short label such as ``k3:01f1,12f1`` using family indices when available."""
        parts = []
        for i, j, f in self.edges:
            tag = f"f{family.index(f)}" if family is not None and f in family.functions else type(f).__name__
            parts.append(f"{i}{j}{tag}")
        return f"k{self.k}:" + ",".join(parts)
