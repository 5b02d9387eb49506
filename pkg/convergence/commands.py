# convergence/commands.py
import logging
from typing import Optional, Tuple

import click

from common import ArgumentError, DomainError, dump_json, load_json, write_output
from convergence.main import cauchy_report, density_trace, sampling_consistency, trace_csv, wrandom
from convergence.schemas import ConvergenceReport, cauchy_to_schema, sampling_to_schema
from convergence.utils.catalog import pattern_catalog
from decorations.schemas import family_from_option, parse_space
from graphons.schemas import parse_graphon, parse_target
from graphs.schemas import graph_to_schema, pattern_to_schema
from models.graph_models import DecoratedGraph

logger = logging.getLogger(__name__)


@click.command("converge")
@click.option("--graphs", is_flag=True, help="Marks the inputs that follow as the sequence (graphs or graphons).")
@click.argument("paths", nargs=-1, required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--kmax", type=click.IntRange(min=0), default=3, show_default=True)
@click.option("--edges", "edge_budget", type=click.IntRange(min=0), default=3, show_default=True)
@click.option("--family", default="default", show_default=True, help="'default' or a family JSON file.")
@click.option("--window", type=click.IntRange(min=1), help="Tail steps inspected (default: all).")
@click.option("--tol", type=click.FloatRange(min=0.0), default=0.05, show_default=True)
@click.option("--sample-k", type=click.IntRange(min=0), help="Also compare sampling laws of this size.")
@click.option("--reps", type=click.IntRange(min=1), default=10_000, show_default=True)
@click.option("--seed", type=click.IntRange(min=0), help="Seed, required with --sample-k.")
@click.option("--report", "report_path", type=click.Path(dir_okay=False), help="Write the report here.")
@click.option("--csv", "csv_path", type=click.Path(dir_okay=False), help="Write the density trace as CSV.")
def converge_command(graphs: bool, paths: Tuple[str, ...], kmax: int, edge_budget: int, family: str,
                     window: Optional[int], tol: float, sample_k: Optional[int], reps: int, seed: Optional[int],
                     report_path: Optional[str], csv_path: Optional[str]):
    """Density traces and convergence heuristics for a sequence of graphs or graphons."""
    if len(paths) < 2:
        raise click.UsageError("A sequence needs at least two inputs")
    if sample_k is not None and seed is None:
        raise click.UsageError("--sample-k needs --seed")
    sequence = [parse_target(load_json(path)) for path in paths]
    space = sequence[0].space
    if any(item.space != space for item in sequence):
        raise DomainError("All members of the sequence must share one space")
    fam = family_from_option(family, space)
    catalog = pattern_catalog(fam, kmax, edge_budget)
    labels = [F.describe(fam) for F in catalog]
    trace = density_trace(sequence, catalog)
    cauchy = cauchy_report(trace, window or len(paths) - 1, tol, labels)
    sampling = None
    if sample_k is not None:
        if not all(isinstance(item, DecoratedGraph) for item in sequence):
            raise ArgumentError("Sampling consistency needs graphs, not graphons")
        sampling = sampling_to_schema(sampling_consistency(sequence, sample_k, reps, seed, tol, catalog=catalog,
                                                           window=window))
    if not cauchy.converged:
        logger.warning(f"{cauchy.pattern_converged.count(False)} patterns moved more than {tol} in the window")
    report = ConvergenceReport(sequence=list(paths), catalog=labels, kmax=kmax, edge_budget=edge_budget,
                               family=fam.name, trace=trace.tolist(), cauchy=cauchy_to_schema(cauchy),
                               sampling=sampling)
    if csv_path:
        write_output(trace_csv(trace, labels, columns=list(paths)), csv_path)
    write_output(dump_json(report), report_path)


@click.command("wrandom")
@click.option("--graphon", "graphon_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--n", "n", required=True, type=click.IntRange(min=1), help="Number of nodes.")
@click.option("--seed", required=True, type=click.IntRange(min=0))
@click.option("--diagonal", type=float, help="Diagonal element when the space has no zero element.")
@click.option("--out", type=click.Path(dir_okay=False))
def wrandom_command(graphon_path: str, n: int, seed: int, diagonal: Optional[float], out: Optional[str]):
    """W-random graph sampled from a step graphon."""
    W = parse_graphon(load_json(graphon_path))
    if diagonal is not None and W.space.is_finite_type:
        if not float(diagonal).is_integer():
            raise ArgumentError(f"Finite-type elements are integers, got {diagonal}")
        diagonal = int(diagonal)
    write_output(dump_json(graph_to_schema(wrandom(W, n, seed, diagonal=diagonal))), out)


@click.command("catalog")
@click.option("--space", "space_path", type=click.Path(exists=True, dir_okay=False),
              help="Space JSON for the default family.")
@click.option("--family", default="default", show_default=True, help="'default' or a family JSON file.")
@click.option("--kmax", type=click.IntRange(min=0), default=3, show_default=True)
@click.option("--edges", "edge_budget", type=click.IntRange(min=0), default=3, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False))
def catalog_command(space_path: Optional[str], family: str, kmax: int, edge_budget: int, out: Optional[str]):
    """Non-isomorphic family-decorated patterns up to kmax nodes."""
    if family == "default":
        if space_path is None:
            raise click.UsageError("The default family needs --space")
        fam = family_from_option(family, parse_space(load_json(space_path)))
    else:
        data = load_json(family)
        fam = family_from_option(family, parse_space(data.get("space") if isinstance(data, dict) else None))
    catalog = pattern_catalog(fam, kmax, edge_budget)
    payload = {
        "family": fam.name,
        "kmax": kmax,
        "edge_budget": edge_budget,
        "patterns": [{"label": F.describe(fam), **pattern_to_schema(F).model_dump(mode="json")} for F in catalog],
    }
    write_output(dump_json(payload), out)
