# qmemory/routes/bound.py
import click

from ..controllers import uncertainty_controller
from ..services.states import build_state
from .common import load_config, output_options, write_records


@click.command("bound", short_help="Both sides of the memory-assisted uncertainty relation")
@click.argument("tokens", nargs=-1)
@output_options
def bound(tokens, fmt, out, no_metadata, workers):
    """TOKENS: family=... plus state parameters, and obs=Z,X."""
    cfg = load_config("bound", tokens, fmt, out, no_metadata, workers)
    report = uncertainty_controller.compute_bound(build_state(cfg.state_spec), cfg.observables)
    write_records(cfg, [report], state=cfg.state_spec.to_text(), observables=cfg.observables)
