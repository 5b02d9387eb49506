import logging
import sys
from typing import Optional

import click

from common import DekoError
from config import apply_settings, load_settings, settings
from convergence.commands import catalog_command, converge_command, wrandom_command
from cutnorm.commands import cutnorm_command
from graphons.commands import moments_command, reconstruct_command
from homomorphism.commands import density_command
from regularity.commands import regularity_command
from sampling.commands import sample_command

logger = logging.getLogger(__name__)


class DekoGroup(click.Group):
    """Turns library errors into an ``error:`` line on stderr and the error's exit code."""

    def invoke(self, ctx: click.Context):
        try:
            return super().invoke(ctx)
        except DekoError as e:
            logger.debug("Command failed", exc_info=True)
            click.echo(f"error: {e}", err=True)
            ctx.exit(e.exit_code)


@click.group(cls=DekoGroup)
@click.option("--threads", type=click.IntRange(min=1),
              help="Worker threads; results do not depend on it.")
@click.option("--config", "config_file", type=click.Path(exists=True, dir_okay=False),
              help="TOML file of settings (key = value).")
@click.option("--log-level", type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False))
def cli(threads: Optional[int], config_file: Optional[str], log_level: Optional[str]):
    """Decorated graph limits: densities, sampling, graphons, cut norm, regularity and convergence."""
    apply_settings(load_settings(config_file, THREADS=threads, LOG_LEVEL=log_level and log_level.upper()))
    logging.basicConfig(
        level=settings.LOG_LEVEL.upper(),
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        force=True,
    )


# Include commands
cli.add_command(density_command)
cli.add_command(sample_command)
cli.add_command(moments_command)
cli.add_command(reconstruct_command)
cli.add_command(cutnorm_command)
cli.add_command(regularity_command)
cli.add_command(converge_command)
cli.add_command(wrandom_command)
cli.add_command(catalog_command)


if __name__ == "__main__":
    cli()
