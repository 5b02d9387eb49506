# regularity/commands.py
from typing import Optional

import click

from common import dump_json, load_json, write_output
from config import settings
from cutnorm.main import AUTO, EXACT, HEURISTIC
from decorations.schemas import family_from_option
from graphons.main import embed_graph
from graphons.schemas import graphon_to_schema, parse_kernel, parse_target
from models.graph_models import DecoratedGraph
from regularity.main import regularize_graphon, weak_regularity
from regularity.schemas import RegularityReport, parse_partition, partition_to_schema


def _resolve_seed(mode: str, m: int, seed: Optional[int]) -> int:
    """The heuristic cut norm runs in heuristic mode and in auto mode above CUTNORM_AUTO_STEPS steps."""
    randomized = mode == HEURISTIC or (mode == AUTO and m > settings.CUTNORM_AUTO_STEPS)
    if randomized and seed is None:
        raise click.UsageError(f"--mode {mode} on {m} steps uses the heuristic cut norm and needs --seed")
    # the exact cut norm never reads it
    return 0 if seed is None else seed


@click.command("regularity")
@click.option("--graphon", "graphon_path", type=click.Path(exists=True, dir_okay=False),
              help="Graphon (or graph) JSON whose moment components are regularised together.")
@click.option("--matrix", "matrix_path", type=click.Path(exists=True, dir_okay=False),
              help="A single kernel to regularise.")
@click.option("--eps", type=click.FloatRange(min=0.0, max=1.0, min_open=True, max_open=True), required=True)
@click.option("--family", default="default", show_default=True, help="'default' or a family JSON file.")
@click.option("--base", "base_path", type=click.Path(exists=True, dir_okay=False),
              help="Equal-size partition JSON to refine.")
@click.option("--mode", type=click.Choice([AUTO, EXACT, HEURISTIC]), default=AUTO, show_default=True)
@click.option("--restarts", type=click.IntRange(min=1), default=50, show_default=True)
@click.option("--seed", type=click.IntRange(min=0), help="Seed of the heuristic cut norm, required whenever it runs.")
@click.option("--stepped", "stepped_path", type=click.Path(dir_okay=False),
              help="Also write the stepped graphon here.")
@click.option("--out", type=click.Path(dir_okay=False))
def regularity_command(graphon_path: Optional[str], matrix_path: Optional[str], eps: float, family: str,
                       base_path: Optional[str], mode: str, restarts: int, seed: Optional[int],
                       stepped_path: Optional[str], out: Optional[str]):
    """Weak regularity partition with per-function certified errors."""
    if (graphon_path is None) == (matrix_path is None):
        raise click.UsageError("Pass exactly one of --graphon and --matrix")
    base = parse_partition(load_json(base_path)) if base_path else None
    if matrix_path:
        X = parse_kernel(load_json(matrix_path))
        seed = _resolve_seed(mode, X.m, seed)
        result = weak_regularity(X, eps, mode=mode, restarts=restarts, seed=seed, base=base)
        report = RegularityReport(eps=eps, mode=mode, partition=partition_to_schema(result.partition),
                                  functions=["kernel"], achieved=[result.achieved],
                                  certified=[result.certified], rounds=result.rounds)
    else:
        target = parse_target(load_json(graphon_path))
        W = embed_graph(target) if isinstance(target, DecoratedGraph) else target
        seed = _resolve_seed(mode, W.m, seed)
        fam = family_from_option(family, W.space)
        result = regularize_graphon(W, fam, eps, base=base, mode=mode, restarts=restarts, seed=seed)
        report = RegularityReport(eps=eps, mode=mode, partition=partition_to_schema(result.partition),
                                  functions=[f"f{i}" for i in range(len(fam))], achieved=list(result.achieved),
                                  certified=list(result.certified), rounds=result.rounds)
        if stepped_path:
            write_output(dump_json(graphon_to_schema(result.graphon)), stepped_path)
    write_output(dump_json(report), out)
