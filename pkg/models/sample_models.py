# models/sample_models.py
from dataclasses import dataclass, field
from typing import Dict, Tuple

from common import UnsupportedOperationError, ValidationError
from models.decoration_models import DecorationSpace


@dataclass(frozen=True, eq=False)
class SampleDistribution:
    """
    Tabulated samples of the k-node sampling process

    Keys are off-diagonal decoration tuples in the order (0,1), (0,2), ..., (k-2,k-1).
    """

    space: DecorationSpace
    k: int
    counts: Dict[Tuple[int, ...], int] = field(default_factory=dict)
    total: int = 0

    def __post_init__(self):
        if not self.space.is_finite_type:
            raise UnsupportedOperationError("Sample distributions are tabulated only on finite-type spaces")
        width = self.k * (self.k - 1) // 2
        counts = {tuple(int(c) for c in key): int(v) for key, v in self.counts.items() if v}
        if any(len(key) != width for key in counts):
            raise ValidationError(f"Every sample tuple must have length {width}")
        if any(v < 0 for v in counts.values()):
            raise ValidationError("Counts must be non-negative")
        if sum(counts.values()) != self.total:
            raise ValidationError(f"Counts sum to {sum(counts.values())}, expected total {self.total}")
        object.__setattr__(self, "counts", dict(sorted(counts.items())))

    def probability(self, key: Tuple[int, ...]) -> float:
        return self.counts.get(tuple(key), 0) / self.total if self.total else 0.0

    def frequencies(self) -> Dict[Tuple[int, ...], float]:
        return {key: count / self.total for key, count in self.counts.items()}
