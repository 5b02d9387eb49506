# graphons/commands.py
from typing import Optional

import click

from common import dump_json, load_json, write_output
from decorations.schemas import family_from_option
from graphons.main import embed_graph, moment_sequence, reconstruct
from graphons.schemas import graphon_to_schema, parse_sequence, parse_target, sequence_to_schema
from models.graph_models import DecoratedGraph


@click.command("moments")
@click.option("--input", "input_path", required=True, type=click.Path(exists=True, dir_okay=False),
              help="Graph or graphon JSON; graphs are embedded first.")
@click.option("--family", default="default", show_default=True, help="'default' or a family JSON file.")
@click.option("--max-degree", type=click.IntRange(min=0), help="Largest monomial of the default interval family.")
@click.option("--max-support", type=click.IntRange(min=0), help="Largest support of the default product family.")
@click.option("--out", type=click.Path(dir_okay=False))
def moments_command(input_path: str, family: str, max_degree: Optional[int], max_support: Optional[int],
                    out: Optional[str]):
    """Moment function sequence of a graphon over a test family."""
    target = parse_target(load_json(input_path))
    W = embed_graph(target) if isinstance(target, DecoratedGraph) else target
    fam = family_from_option(family, W.space, max_degree=max_degree, max_support=max_support)
    write_output(dump_json(sequence_to_schema(moment_sequence(W, fam))), out)


@click.command("reconstruct")
@click.option("--moments", "moments_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--tol", type=float, help="Largest accepted violation per cell (default MOMENT_TOL).")
@click.option("--out", type=click.Path(dir_okay=False))
def reconstruct_command(moments_path: str, tol: Optional[float], out: Optional[str]):
    """Step graphon with the given moment function sequence."""
    W = reconstruct(parse_sequence(load_json(moments_path)), tol=tol)
    write_output(dump_json(graphon_to_schema(W)), out)
