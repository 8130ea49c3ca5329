# qmemory/routes/sweep.py
import click

from ..controllers import sweep_controller
from ..schemas.claim_schema import SWEEP_COLUMNS
from .common import load_config, output_options, write_records


@click.command("sweep", short_help="S(A|B), D(B|A), D(C|A) and their slopes along theta/pi")
@click.argument("tokens", nargs=-1)
@output_options
def sweep(tokens, fmt, out, no_metadata, workers):
    """TOKENS: phi=0.25pi n=512."""
    cfg = load_config("sweep", tokens, fmt, out, no_metadata, workers)
    points = sweep_controller.sweep_w_family(cfg.phi, cfg.n_points, workers=cfg.workers)
    brackets = sweep_controller.locate_crossings(points)
    landmark = sweep_controller.landmark_crossing(points)
    footer = {
        "crossing_lower": landmark.lower if landmark else None,
        "crossing_upper": landmark.upper if landmark else None,
        "crossing_estimate": landmark.estimate if landmark else None,
        "sign_changes": len(brackets),
    }
    write_records(cfg, points, columns=SWEEP_COLUMNS, footer=footer, phi=cfg.phi, n=cfg.n_points)
