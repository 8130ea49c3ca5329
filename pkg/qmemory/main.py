# qmemory/main.py
import logging
import sys

import click

from .config import LOG_LEVEL, VERSION
from .errors import QmemError

# Commands
from .routes.bound import bound as bound_command
from .routes.sweep import sweep as sweep_command
from .routes.audit import audit as audit_command
from .routes.werner_threshold import werner_threshold as werner_threshold_command
from .routes.report import report as report_command
from .routes.game import game as game_command

logger = logging.getLogger(__name__)


class QmemGroup(click.Group):
    """Maps QmemError to its exit code with the message on stderr."""

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except QmemError as e:
            logger.debug("command failed", exc_info=True)
            click.echo(f"Error: {e}", err=True)
            ctx.exit(e.exit_code)


# ---------------------------
# Build CLI
# ---------------------------
@click.group(cls=QmemGroup, context_settings={"help_option_names": ["-h", "--help"]})
@click.version_option(VERSION, prog_name="qmemory")
@click.option("--verbose", "-v", is_flag=True, help="debug logging on stderr")
def cli(verbose: bool):
    """Entropic uncertainty and correlation toolkit for states with quantum memory."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else LOG_LEVEL,
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )


# ---------------------------
# Commands
# ---------------------------
cli.add_command(bound_command)
cli.add_command(report_command)
cli.add_command(game_command)
cli.add_command(sweep_command)
cli.add_command(audit_command)
cli.add_command(werner_threshold_command)


def main() -> None:
    cli(prog_name="qmemory")
