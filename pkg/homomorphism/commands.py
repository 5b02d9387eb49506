# homomorphism/commands.py
from typing import Optional

import click

from common import ArgumentError, dump_json, load_json, write_output
from graphons.main import density_graphon
from graphons.schemas import parse_target
from graphs.schemas import parse_pattern
from homomorphism.main import density, density_estimate
from homomorphism.utils.enumeration import AUTO, CONTRACT, ENUMERATE
from models.graphon_models import StepGraphon


@click.command("density")
@click.option("--pattern", "pattern_path", required=True, type=click.Path(exists=True, dir_okay=False),
              help="Pattern JSON.")
@click.option("--graph", "graph_path", type=click.Path(exists=True, dir_okay=False), help="Target graph JSON.")
@click.option("--graphon", "graphon_path", type=click.Path(exists=True, dir_okay=False), help="Target graphon JSON.")
@click.option("--method", type=click.Choice([AUTO, ENUMERATE, CONTRACT]), default=AUTO, show_default=True)
@click.option("--estimate", is_flag=True, help="Monte Carlo estimate instead of the exact density.")
@click.option("--reps", type=click.IntRange(min=2), default=100_000, show_default=True)
@click.option("--seed", type=click.IntRange(min=0), help="Seed, required with --estimate.")
@click.option("--out", type=click.Path(dir_okay=False), help="Write the result here instead of stdout.")
def density_command(pattern_path: str, graph_path: Optional[str], graphon_path: Optional[str], method: str,
                    estimate: bool, reps: int, seed: Optional[int], out: Optional[str]):
    """Homomorphism density t(F, G) or t(F, W)."""
    if (graph_path is None) == (graphon_path is None):
        raise click.UsageError("Pass exactly one of --graph and --graphon")
    F = parse_pattern(load_json(pattern_path))
    target = parse_target(load_json(graph_path or graphon_path))
    if estimate:
        if seed is None:
            raise click.UsageError("--estimate needs --seed")
        if isinstance(target, StepGraphon):
            raise ArgumentError("Monte Carlo estimates are computed against graphs only")
        result = density_estimate(F, target, reps, seed)
        payload = {"estimate": result.estimate, "stderr": result.stderr, "reps": result.reps, "seed": seed}
    elif isinstance(target, StepGraphon):
        payload = {"value": density_graphon(F, target, method=method)}
    else:
        payload = {"value": density(F, target, method=method)}
    write_output(dump_json(payload), out)
