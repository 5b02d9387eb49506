# convergence/main.py
import csv
import io
import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from joblib import Parallel, delayed
from tqdm import tqdm

from common import ArgumentError, DomainError, ValidationError, make_rng
from config import settings
from cutnorm.main import cut_norm_exact, cut_norm_upper_bound
from graphons.main import collapse, density_graphon, density_sequence, expand, moment_sequence, stepped_sequence
from homomorphism.main import density, replacement_gap_bound
from models.decoration_models import TestFamily
from models.graph_models import DecoratedGraph, PatternGraph
from models.graphon_models import KernelMatrix, MomentFunctionSequence, StepGraphon, StepPartition
from regularity.main import simultaneous_regularity
from sampling.main import distribution_distance, empirical_distribution, functional_mean_from

logger = logging.getLogger(__name__)

HEURISTIC_NOTE = ("Finite-sequence heuristic: only the listed patterns and the last window of the "
                  "sequence were inspected; this is not a proof of convergence.")

Target = Union[DecoratedGraph, StepGraphon]


@dataclass(frozen=True)
class CauchyReport:
    window: int
    tol: float
    max_differences: Tuple[float, ...]
    pattern_converged: Tuple[bool, ...]
    converged: bool
    labels: Tuple[str, ...] = ()
    note: str = HEURISTIC_NOTE


@dataclass(frozen=True)
class PatternCheck:
    pattern: str
    index: int
    sample_mean: float
    density: float
    gap_bound: float
    within_bound: bool


@dataclass(frozen=True)
class SamplingReport:
    k: int
    reps: int
    seed: int
    window: int
    tol: float
    tv_distances: Tuple[float, ...]
    converged: bool
    checks: Tuple[PatternCheck, ...] = ()
    note: str = HEURISTIC_NOTE


@dataclass(frozen=True)
class RefinementStage:
    partition: StepPartition
    achieved: Tuple[float, ...]
    certified: Tuple[bool, ...]
    stepped: MomentFunctionSequence
    aligned: MomentFunctionSequence


@dataclass(frozen=True)
class CountingBound:
    lhs: float
    rhs: float
    rhs_stated: float
    exact: bool = True
    cut_norms: Tuple[float, ...] = field(default_factory=tuple)

    @property
    def holds(self) -> bool:
        return self.lhs <= self.rhs


def _space_of(target: Target):
    return target.space


def _density_of(F: PatternGraph, target: Target) -> float:
    if isinstance(target, StepGraphon):
        return density_graphon(F, target, threads=1)
    return density(F, target, threads=1)


def density_trace(sequence: Sequence[Target], catalog: Sequence[PatternGraph],
                  threads: Optional[int] = None) -> np.ndarray:
    """
    Densities of every catalog pattern against every member of the sequence

    Returns:
        A (len(catalog), len(sequence)) array; row F is the trace t(F, ·)
    """
    if not sequence:
        raise ArgumentError("The sequence is empty")
    space = _space_of(sequence[0])
    if any(_space_of(item) != space for item in sequence) or any(F.space != space for F in catalog):
        raise DomainError("Sequence members and catalog patterns must share one space")
    cells = [(p, n) for p in range(len(catalog)) for n in range(len(sequence))]
    jobs = (delayed(_density_of)(catalog[p], sequence[n]) for p, n in cells)
    if settings.SHOW_PROGRESS:
        jobs = tqdm(jobs, total=len(cells), desc="density trace")
    values = Parallel(n_jobs=threads or settings.THREADS, prefer="threads")(jobs)
    trace = np.zeros((len(catalog), len(sequence)), dtype=np.float64)
    for (p, n), value in zip(cells, values):
        trace[p, n] = value
    return trace


def cauchy_report(trace, window: int, tol: float, labels: Sequence[str] = ()) -> CauchyReport:
    """
    Largest step |t(F, G_{n+1}) − t(F, G_n)| of every row over the last ``window`` steps

    A row counts as converged when that largest step is at most ``tol``.
    """
    trace = np.atleast_2d(np.asarray(trace, dtype=np.float64))
    if window < 1 or trace.shape[1] <= window:
        raise ArgumentError(f"A window of {window} needs more than {window} sequence members, "
                            f"got {trace.shape[1]}")
    if tol < 0:
        raise ArgumentError(f"tol must be non-negative, got {tol}")
    steps = np.abs(np.diff(trace, axis=1))[:, -window:]
    largest = tuple(float(v) for v in steps.max(axis=1)) if trace.shape[0] else ()
    verdicts = tuple(v <= tol for v in largest)
    return CauchyReport(window, tol, largest, verdicts, all(verdicts), tuple(labels))


def sampling_consistency(sequence: Sequence[DecoratedGraph], k: int, reps: int, seed: int, tol: float,
                         catalog: Sequence[PatternGraph] = (), window: Optional[int] = None) -> SamplingReport:
    """
    Compare the sampling laws of successive graphs and link them to densities

    The sampling law of each graph is estimated from ``reps`` draws on its own
    substream (seed, index). Successive laws are compared in total variation;
    for each catalog pattern on at most k nodes the sample mean of the
    evaluation functional is set against the exact density, whose difference
    stays within the replacement gap bound plus sampling noise.

    Args:
        sequence: Graphs on one finite-type space
        k: Sample size
        reps: Draws per graph
        seed: Base seed
        tol: Largest accepted total variation distance between neighbours
        catalog: Patterns for the functional comparison
        window: Neighbouring pairs inspected at the tail, all by default

    Returns:
        A SamplingReport labelled as a heuristic
    """
    if len(sequence) < 2:
        raise ArgumentError("Sampling consistency needs at least two graphs")
    distributions = [empirical_distribution(G, k, reps, seed, stream=(index,)) for index, G in enumerate(sequence)]
    distances = tuple(distribution_distance(a, b) for a, b in zip(distributions, distributions[1:]))
    window = len(distances) if window is None else window
    if not 1 <= window <= len(distances):
        raise ArgumentError(f"window must lie in 1..{len(distances)}, got {window}")
    checks = []
    for F in catalog:
        if F.k > k:
            continue
        # sampling noise of a mean of reps draws bounded by weight_bound
        slack = 4.0 * F.weight_bound() / math.sqrt(reps)
        for index, (G, dist) in enumerate(zip(sequence, distributions)):
            mean = functional_mean_from(F, dist)
            exact = density(F, G)
            bound = replacement_gap_bound(F, G.n)
            checks.append(PatternCheck(F.describe(), index, mean, exact, bound, abs(mean - exact) <= bound + slack))
    converged = max(distances[-window:]) <= tol
    return SamplingReport(k, reps, seed, window, tol, distances, converged, tuple(checks))


def wrandom(W: StepGraphon, n: int, seed: int, diagonal=None) -> DecoratedGraph:
    """
    W-random graph on n nodes

    Node i gets a uniform position x_i, hence the step ⌊m·x_i⌋; the pair (i, j)
    is decorated by an independent draw from the cell of their steps. The
    diagonal carries the space's zero element unless ``diagonal`` is given.

    Raises:
        ValidationError: If the space has no zero element and no diagonal value is given
    """
    if n < 1:
        raise ArgumentError(f"n must be at least 1, got {n}")
    space = W.space
    if diagonal is None:
        if space.zero is None:
            raise ValidationError("The space has no zero element; pass an explicit diagonal value")
        diagonal_value, policy = space.zero, "zero"
    else:
        diagonal_value, policy = diagonal, "explicit"
    if not space.contains(diagonal_value):
        raise DomainError(f"Diagonal value {diagonal_value!r} is not an element of the space")
    rng = make_rng(seed)
    steps = np.minimum((rng.random(n) * W.m).astype(np.int64), W.m - 1)
    rows, cols = np.triu_indices(n, 1)
    a, b = steps[rows], steps[cols]
    cumulative = np.cumsum(W.weights, axis=2)[a, b]
    draws = rng.random(rows.size)
    last = np.max(np.where(W.weights > 0, np.arange(W.weights.shape[2]), 0), axis=2)[a, b]
    slot = np.minimum((draws[:, None] >= cumulative).sum(axis=1), last)
    entries = np.full((n, n), diagonal_value, dtype=space.dtype)
    values = W.points[a, b, slot]
    entries[rows, cols] = values
    entries[cols, rows] = values
    metadata = {"source": "wrandom", "n": n, "seed": seed, "steps": W.m,
                "diagonal": policy, "diagonal_value": diagonal_value}
    return DecoratedGraph(space, entries, loopless=diagonal_value == space.zero, metadata=metadata)


def _canonical_order(collapsed: Sequence[KernelMatrix]) -> List[int]:
    """Groups sorted by their cell signature: diagonal values, then sorted rows, per component."""
    g = collapsed[0].m

    def signature(a: int):
        return tuple(v for C in collapsed for v in (C.values[a, a], *sorted(C.values[a, :].tolist())))

    return sorted(range(g), key=lambda a: (signature(a), a))


def _aligned(s: MomentFunctionSequence, P: StepPartition, steps: int) -> MomentFunctionSequence:
    collapsed = [collapse(c, P) for c in s.components]
    order = _canonical_order(collapsed)
    r = steps // len(P)
    return MomentFunctionSequence(s.family, tuple(
        expand(KernelMatrix(C.values[np.ix_(order, order)], C.sup_bound), r) for C in collapsed
    ))


def refinement_stage(sequence: Sequence[StepGraphon], family: TestFamily, eps: float, mode: str = "auto",
                     restarts: int = 50, seed: int = 0, threads: Optional[int] = None) -> List[RefinementStage]:
    """
    Regularise every graphon of the sequence and step its moment components

    Each graphon gets its own simultaneous-regularity partition with equal
    groups. The stepped components are returned on the graphon's own steps and
    also aligned: collapsed to one step per group, groups sorted by signature,
    and expanded onto the least common multiple of the group counts so that all
    stages can be compared entrywise.
    """
    if not sequence:
        raise ArgumentError("The sequence is empty")
    if any(W.space != family.space for W in sequence):
        raise DomainError("Every graphon must live on the family's space")
    stages = []
    for W in sequence:
        s = moment_sequence(W, family)
        result = simultaneous_regularity(s.components, eps, mode=mode, restarts=restarts, seed=seed, threads=threads)
        stages.append((s, result))
    steps = math.lcm(*(len(result.partition) for _, result in stages))
    logger.info(f"Aligning {len(stages)} stages on {steps} steps")
    return [RefinementStage(result.partition, result.achieved, result.certified,
                            stepped_sequence(s, result.partition), _aligned(s, result.partition, steps))
            for s, result in stages]


def counting_lemma_bound(F: PatternGraph, u: MomentFunctionSequence, w: MomentFunctionSequence,
                         threads: Optional[int] = None) -> CountingBound:
    """
    Both sides of the counting lemma for F between two moment sequences

    ``rhs`` telescopes over the edges, 4·Σ_e (∏_{e' ≠ e} d_{e'})·‖u_e − w_e‖_□ with
    d_f = max(sup|u_f|, sup|w_f|); it never exceeds ``rhs_stated`` =
    4·(∏_e d_e)·Σ_e ‖u_e − w_e‖_□ when every d_f ≥ 1. Beyond the exact cut norm
    guard the mean absolute difference stands in for each cut norm and ``exact``
    is False.

    Raises:
        ArgumentError: If the sequences differ in size or miss an edge function
    """
    if u.m != w.m:
        raise ArgumentError(f"Moment sequences on {u.m} and {w.m} steps cannot be compared")
    lhs = abs(density_sequence(F, u, threads=threads) - density_sequence(F, w, threads=threads))
    exact = u.m <= settings.CUTNORM_MAX_STEPS
    bounds, norms = [], []
    for _, _, f in F.edges:
        uf, wf = u.component(f), w.component(f)
        bounds.append(max(uf.sup_bound, wf.sup_bound))
        difference = uf - wf
        norms.append(cut_norm_exact(difference, threads=threads).value if exact else cut_norm_upper_bound(difference))
    rhs = 4.0 * math.fsum(math.prod(bounds[:e] + bounds[e + 1:]) * norms[e] for e in range(len(norms)))
    rhs_stated = 4.0 * math.prod(bounds) * math.fsum(norms)
    return CountingBound(lhs, rhs, rhs_stated, exact, tuple(norms))


def trace_csv(trace, labels: Sequence[str], columns: Sequence[str] = ()) -> str:
    """Plot-ready CSV: one row per pattern, one column per sequence member."""
    trace = np.atleast_2d(np.asarray(trace, dtype=np.float64))
    if len(labels) != trace.shape[0]:
        raise ArgumentError(f"Expected {trace.shape[0]} labels, got {len(labels)}")
    columns = list(columns) or [str(n) for n in range(trace.shape[1])]
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["pattern", *columns])
    for label, row in zip(labels, trace):
        writer.writerow([label, *(repr(float(v)) for v in row)])
    return buffer.getvalue()
