# qmemory/routes/report.py
import click

from ..controllers import uncertainty_controller
from ..services.states import build_state
from .common import load_config, output_options, write_records


@click.command("report", short_help="Every correlation measure between A and B")
@click.argument("tokens", nargs=-1)
@output_options
def report(tokens, fmt, out, no_metadata, workers):
    cfg = load_config("report", tokens, fmt, out, no_metadata, workers)
    rec = uncertainty_controller.compute_correlations(build_state(cfg.state_spec))
    write_records(cfg, [rec], state=cfg.state_spec.to_text())
