# cutnorm/commands.py
from typing import Optional

import click

from common import dump_json, load_json, write_output
from cutnorm.main import EXACT, HEURISTIC, bilinear_pm1_norm, cut_norm_exact, cut_norm_heuristic
from cutnorm.schemas import result_to_schema
from graphons.schemas import parse_kernel


@click.command("cutnorm")
@click.option("--matrix", "matrix_path", required=True, type=click.Path(exists=True, dir_okay=False),
              help="Kernel JSON, or a bare symmetric list of rows.")
@click.option("--exact", "mode", flag_value=EXACT, default=True, help="Enumerate every step set (default).")
@click.option("--heuristic", "mode", flag_value=HEURISTIC, help="Alternating greedy lower bound.")
@click.option("--restarts", type=click.IntRange(min=1), default=50, show_default=True)
@click.option("--seed", type=click.IntRange(min=0), help="Seed, required with --heuristic.")
@click.option("--bilinear", is_flag=True, help="Also report the ±1 bilinear norm.")
@click.option("--out", type=click.Path(dir_okay=False))
def cutnorm_command(matrix_path: str, mode: str, restarts: int, seed: Optional[int], bilinear: bool,
                    out: Optional[str]):
    """Cut norm of a step kernel with a witness rectangle."""
    X = parse_kernel(load_json(matrix_path))
    if mode == HEURISTIC:
        if seed is None:
            raise click.UsageError("--heuristic needs --seed")
        result = cut_norm_heuristic(X, restarts=restarts, seed=seed)
    else:
        result = cut_norm_exact(X)
    payload = result_to_schema(result, bilinear_pm1_norm(X) if bilinear else None)
    write_output(dump_json(payload.model_dump(mode="json", exclude_none=True)), out)
