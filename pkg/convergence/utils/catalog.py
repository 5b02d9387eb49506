# convergence/utils/catalog.py
import itertools
import logging
import math
from typing import Dict, List, Tuple

from common import ArgumentError, check_guard
from config import settings
from models.decoration_models import TestFamily
from models.graph_models import PatternGraph

logger = logging.getLogger(__name__)

# (i, j, family index) triples, sorted
EdgeKey = Tuple[Tuple[int, int, int], ...]


def catalog_size_bound(k_max: int, edge_budget: int, functions: int) -> int:
    """Labelled patterns scanned before duplicates are removed, times the relabelings tried."""
    total = 0
    for k in range(1, k_max + 1):
        pairs = math.comb(k, 2)
        labelled = sum(math.comb(pairs, e) * functions ** e for e in range(min(pairs, edge_budget) + 1))
        total += labelled * math.factorial(k)
    return total


def canonical_key(k: int, edges: EdgeKey) -> EdgeKey:
    """Smallest relabelled edge list over all node permutations."""
    best = None
    for perm in itertools.permutations(range(k)):
        key = tuple(sorted((min(perm[i], perm[j]), max(perm[i], perm[j]), f) for i, j, f in edges))
        if best is None or key < best:
            best = key
    return best if best is not None else ()


def pattern_catalog(family: TestFamily, k_max: int, edge_budget: int) -> List[PatternGraph]:
    """
    Every pattern on 1..k_max nodes with at most ``edge_budget`` edges decorated by family members

    Isomorphic copies are dropped; the survivors are listed by node count, edge
    count and canonical edge list, all in canonical labelling.

    Raises:
        ResourceGuardError: If the scan exceeds CATALOG_GUARD
    """
    if k_max < 0 or edge_budget < 0:
        raise ArgumentError("k_max and edge_budget must be non-negative")
    if len(family) == 0:
        raise ArgumentError("The catalog needs a non-empty family")
    check_guard(catalog_size_bound(k_max, edge_budget, len(family)), settings.CATALOG_GUARD, "Pattern catalog")
    seen: Dict[Tuple[int, EdgeKey], None] = {}
    for k in range(1, k_max + 1):
        pairs = list(itertools.combinations(range(k), 2))
        for e in range(min(len(pairs), edge_budget) + 1):
            for chosen in itertools.combinations(pairs, e):
                for labels in itertools.product(range(len(family)), repeat=e):
                    edges = tuple((i, j, f) for (i, j), f in zip(chosen, labels))
                    seen.setdefault((k, canonical_key(k, edges)), None)
    ordered = sorted(seen, key=lambda item: (item[0], len(item[1]), item[1]))
    logger.info(f"Catalog with k <= {k_max} and <= {edge_budget} edges: {len(ordered)} patterns")
    return [PatternGraph(family.space, k, tuple((i, j, family.functions[f]) for i, j, f in edges))
            for k, edges in ordered]
