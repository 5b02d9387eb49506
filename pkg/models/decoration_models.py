# models/decoration_models.py
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Optional, Sequence, Tuple, Union

import numpy as np

from common import DomainError, ValidationError

Element = Union[int, float]

MAX_PRODUCT_BITS = 24
# Finite-type spaces up to this size get exact sup bounds for linear combinations
EXACT_BOUND_SIZE = 4096


class SpaceKind(str, Enum):
    FINITE = "finite"
    INTERVAL = "interval"
    PRODUCT = "product"


@dataclass(frozen=True)
class DecorationSpace:
    """
    A compact decoration space: a finite set, a closed real interval or {0,1}^bits

    Elements are encoded as the element index (finite), the real value (interval)
    or an integer bit mask (product, bit i set when coordinate i is 1).
    """

    kind: SpaceKind
    elements: Tuple[str, ...] = ()
    lo: float = 0.0
    hi: float = 1.0
    bits: int = 0
    zero: Optional[Element] = None
    truncated: bool = False

    def __post_init__(self):
        if self.kind == SpaceKind.FINITE:
            if not self.elements:
                raise ValidationError("A finite decoration space needs at least one element")
            if len(set(self.elements)) != len(self.elements):
                raise ValidationError(f"Element labels must be distinct: {list(self.elements)}")
        elif self.kind == SpaceKind.INTERVAL:
            if not (math.isfinite(self.lo) and math.isfinite(self.hi)) or not self.lo < self.hi:
                raise ValidationError(f"Interval bounds must be finite with lo < hi, got [{self.lo}, {self.hi}]")
        elif self.kind == SpaceKind.PRODUCT:
            if not 1 <= self.bits <= MAX_PRODUCT_BITS:
                raise ValidationError(f"Product spaces support 1..{MAX_PRODUCT_BITS} bits, got {self.bits}")
        if self.zero is not None and not self.contains(self.zero):
            raise ValidationError(f"Zero element {self.zero!r} is not in the space")

    @classmethod
    def finite(cls, elements: Iterable, zero: Optional[int] = 0) -> "DecorationSpace":
        return cls(kind=SpaceKind.FINITE, elements=tuple(str(e) for e in elements), zero=zero)

    @classmethod
    def interval(cls, lo: float, hi: float, zero: Optional[float] = None) -> "DecorationSpace":
        return cls(kind=SpaceKind.INTERVAL, lo=float(lo), hi=float(hi),
                   zero=None if zero is None else float(zero))

    @classmethod
    def product(cls, bits: int, zero: Optional[int] = 0, truncated: bool = False) -> "DecorationSpace":
        return cls(kind=SpaceKind.PRODUCT, bits=bits, zero=zero, truncated=truncated)

    @property
    def is_finite_type(self) -> bool:
        return self.kind != SpaceKind.INTERVAL

    @property
    def size(self) -> int:
        """Number of elements of a finite-type space."""
        if self.kind == SpaceKind.FINITE:
            return len(self.elements)
        if self.kind == SpaceKind.PRODUCT:
            return 1 << self.bits
        raise DomainError("An interval space has no finite size")

    @property
    def dtype(self):
        return np.float64 if self.kind == SpaceKind.INTERVAL else np.int64

    def all_elements(self) -> np.ndarray:
        return np.arange(self.size, dtype=np.int64)

    def contains(self, c) -> bool:
        if self.kind == SpaceKind.INTERVAL:
            return isinstance(c, (int, float, np.integer, np.floating)) and self.lo <= float(c) <= self.hi
        if isinstance(c, (bool, np.bool_)) or not isinstance(c, (int, np.integer)):
            return False
        return 0 <= int(c) < self.size

    def check_array(self, values: np.ndarray) -> np.ndarray:
        """Return ``values`` as an array of this space's dtype, raising DomainError on foreign entries."""
        arr = np.asarray(values)
        if self.kind == SpaceKind.INTERVAL:
            arr = arr.astype(np.float64)
            if arr.size and (not np.all(np.isfinite(arr)) or arr.min() < self.lo or arr.max() > self.hi):
                raise DomainError(f"Entries must lie in [{self.lo}, {self.hi}]")
            return arr
        if arr.size and not np.issubdtype(arr.dtype, np.integer):
            if not np.all(np.mod(arr, 1) == 0):
                raise DomainError("Entries of a finite-type space must be integers")
        arr = arr.astype(np.int64)
        if arr.size and (arr.min() < 0 or arr.max() >= self.size):
            raise DomainError(f"Entries must lie in 0..{self.size - 1}")
        return arr

    def label(self, c: Element) -> str:
        if self.kind == SpaceKind.FINITE:
            return self.elements[int(c)]
        if self.kind == SpaceKind.PRODUCT:
            return format(int(c), f"0{self.bits}b")[::-1]
        return repr(float(c))


class TestFunction:
    """
    A bounded real function on a decoration space

    Subclasses are frozen dataclasses, so functions compare and hash by value and
    can be used to look up moment components.
    """

    __test__ = False  # not a pytest class
    space: DecorationSpace

    def evaluate_array(self, values: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def evaluate(self, c: Element) -> float:
        if not self.space.contains(c):
            raise DomainError(f"{c!r} is not an element of the {self.space.kind.value} space")
        return float(self.evaluate_array(np.asarray([c], dtype=self.space.dtype))[0])

    @property
    def bound(self) -> float:
        return self._bound

    def _set_bound(self, value: float) -> None:
        object.__setattr__(self, "_bound", float(value))


@dataclass(frozen=True)
class Table(TestFunction):
    space: DecorationSpace
    values: Tuple[float, ...]

    def __post_init__(self):
        if self.space.kind != SpaceKind.FINITE:
            raise DomainError("Table functions are only defined on finite spaces")
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        if len(self.values) != len(self.space.elements):
            raise ValidationError(f"Table needs {len(self.space.elements)} values, got {len(self.values)}")
        if not all(math.isfinite(v) for v in self.values):
            raise ValidationError("Table values must be finite")
        self._set_bound(max(abs(v) for v in self.values))

    def evaluate_array(self, values: np.ndarray) -> np.ndarray:
        return np.asarray(self.values, dtype=np.float64)[np.asarray(values, dtype=np.int64)]


@dataclass(frozen=True)
class Monomial(TestFunction):
    space: DecorationSpace
    degree: int

    def __post_init__(self):
        if self.space.kind != SpaceKind.INTERVAL:
            raise DomainError("Monomials are only defined on interval spaces")
        if self.degree < 0:
            raise ValidationError(f"Monomial degree must be non-negative, got {self.degree}")
        self._set_bound(max(abs(self.space.lo), abs(self.space.hi)) ** self.degree)

    def evaluate_array(self, values: np.ndarray) -> np.ndarray:
        return np.power(np.asarray(values, dtype=np.float64), self.degree)


@dataclass(frozen=True)
class ProductIndicator(TestFunction):
    """f_x(c) = 1 exactly when every coordinate set in ``support`` is also set in c."""

    space: DecorationSpace
    support: int

    def __post_init__(self):
        if self.space.kind != SpaceKind.PRODUCT:
            raise DomainError("Product indicators are only defined on product spaces")
        if not 0 <= self.support < (1 << self.space.bits):
            raise ValidationError(f"Support mask {self.support} does not fit in {self.space.bits} bits")
        self._set_bound(1.0)

    def evaluate_array(self, values: np.ndarray) -> np.ndarray:
        arr = np.asarray(values, dtype=np.int64)
        return (np.bitwise_and(arr, self.support) == self.support).astype(np.float64)


@dataclass(frozen=True)
class Constant(TestFunction):
    space: DecorationSpace
    c: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "c", float(self.c))
        if not math.isfinite(self.c):
            raise ValidationError("Constant must be finite")
        self._set_bound(abs(self.c))

    def evaluate_array(self, values: np.ndarray) -> np.ndarray:
        return np.full(np.shape(values), self.c, dtype=np.float64)


@dataclass(frozen=True)
class LinearCombination(TestFunction):
    space: DecorationSpace
    terms: Tuple[Tuple[float, TestFunction], ...]

    def __post_init__(self):
        terms = tuple((float(a), f) for a, f in self.terms)
        object.__setattr__(self, "terms", terms)
        for _, f in terms:
            if f.space != self.space:
                raise DomainError("All terms of a linear combination must live on the same space")
        if self.space.is_finite_type and self.space.size <= EXACT_BOUND_SIZE:
            values = self.evaluate_array(self.space.all_elements())
            self._set_bound(float(np.max(np.abs(values))) if values.size else 0.0)
        else:
            self._set_bound(sum(abs(a) * f.bound for a, f in terms))

    def evaluate_array(self, values: np.ndarray) -> np.ndarray:
        total = np.zeros(np.shape(values), dtype=np.float64)
        for a, f in self.terms:
            total = total + a * f.evaluate_array(values)
        return total


@dataclass(frozen=True)
class TestFamily:
    """An ordered, finitely truncated generating family of test functions."""

    __test__ = False
    space: DecorationSpace
    functions: Tuple[TestFunction, ...]
    name: str = "custom"

    def __post_init__(self):
        object.__setattr__(self, "functions", tuple(self.functions))
        for f in self.functions:
            if f.space != self.space:
                raise DomainError("Every function of a family must live on the family's space")

    def __len__(self) -> int:
        return len(self.functions)

    def __iter__(self):
        return iter(self.functions)

    def index(self, f: TestFunction) -> int:
        try:
            return self.functions.index(f)
        except ValueError:
            raise DomainError(f"{f!r} is not a member of the family '{self.name}'")


@dataclass(frozen=True)
class KDistribution:
    """
    A finite-support probability distribution on a decoration space

    Test functions are the only way distributions are compared; no metric on the
    space itself is assumed.
    """

    space: DecorationSpace
    points: Tuple[Element, ...]
    weights: Tuple[float, ...]
    tol: float = field(default=1e-12, compare=False, repr=False)

    def __post_init__(self):
        points = self.space.check_array(np.asarray(self.points, dtype=self.space.dtype)).tolist()
        weights = [float(w) for w in self.weights]
        if len(points) != len(weights) or not points:
            raise ValidationError("A distribution needs a non-empty support with one weight per point")
        if any(not math.isfinite(w) or w < 0 for w in weights):
            raise ValidationError(f"Weights must be non-negative, got {weights}")
        if abs(math.fsum(weights) - 1.0) > self.tol:
            raise ValidationError(f"Weights must sum to 1, got {math.fsum(weights)!r}")
        object.__setattr__(self, "points", tuple(points))
        object.__setattr__(self, "weights", tuple(weights))

    def arrays(self) -> Tuple[np.ndarray, np.ndarray]:
        return np.asarray(self.points, dtype=self.space.dtype), np.asarray(self.weights, dtype=np.float64)


def merge_support(space: DecorationSpace, points: Sequence[Element], weights: Sequence[float],
                  merge_tol: float = 1e-14) -> Tuple[Tuple[Element, ...], Tuple[float, ...]]:
    """
    Combine equal support points and drop zero weights, returning points in ascending order

    Interval points closer than ``merge_tol`` are treated as equal.
    """
    pts = np.asarray(points, dtype=space.dtype)
    wts = np.asarray(weights, dtype=np.float64)
    order = np.argsort(pts, kind="stable")
    pts, wts = pts[order], wts[order]
    merged_points, merged_weights = [], []
    for p, w in zip(pts.tolist(), wts.tolist()):
        if merged_points and (p == merged_points[-1] or
                              (space.kind == SpaceKind.INTERVAL and abs(p - merged_points[-1]) <= merge_tol)):
            merged_weights[-1].append(w)
        else:
            merged_points.append(p)
            merged_weights.append([w])
    keep = [(p, math.fsum(ws)) for p, ws in zip(merged_points, merged_weights)]
    keep = [(p, w) for p, w in keep if w > 0] or keep[:1]
    return tuple(p for p, _ in keep), tuple(w for _, w in keep)
