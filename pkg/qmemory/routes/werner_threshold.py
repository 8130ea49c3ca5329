# qmemory/routes/werner_threshold.py
import click

from ..controllers import threshold_controller
from .common import load_config, output_options, write_records


@click.command("werner-threshold", short_help="Werner weight where S(A|B) turns negative")
@click.argument("tokens", nargs=-1)
@output_options
def werner_threshold(tokens, fmt, out, no_metadata, workers):
    """TOKENS: tol=1e-6."""
    cfg = load_config("werner-threshold", tokens, fmt, out, no_metadata, workers)
    result = threshold_controller.find_werner_threshold(cfg.tol)
    write_records(cfg, [result], tol=cfg.tol)
