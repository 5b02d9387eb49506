# sampling/commands.py
from typing import Optional

import click

from common import dump_json, load_json, write_output
from graphs.schemas import parse_graph
from sampling.main import empirical_distribution, exact_sample_distribution
from sampling.schemas import distribution_to_schema


@click.command("sample")
@click.option("--graph", "graph_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--k", "k", required=True, type=click.IntRange(min=0), help="Sample size.")
@click.option("--exact", is_flag=True, help="Enumerate every ordered k-tuple of distinct nodes.")
@click.option("--reps", type=click.IntRange(min=1), default=10_000, show_default=True)
@click.option("--seed", type=click.IntRange(min=0), help="Seed, required unless --exact.")
@click.option("--out", type=click.Path(dir_okay=False))
def sample_command(graph_path: str, k: int, exact: bool, reps: int, seed: Optional[int], out: Optional[str]):
    """Sample distribution of the k-node sampling process."""
    G = parse_graph(load_json(graph_path))
    if exact:
        distribution = exact_sample_distribution(G, k)
    else:
        if seed is None:
            raise click.UsageError("Sampling needs --seed (or --exact)")
        distribution = empirical_distribution(G, k, reps, seed)
    write_output(dump_json(distribution_to_schema(distribution)), out)
