# qmemory/routes/game.py
import click

from ..controllers import uncertainty_controller
from ..services.states import build_state
from .common import load_config, output_options, write_records


@click.command("game", short_help="Uncertainty game: one bound per memory-holding player")
@click.argument("tokens", nargs=-1)
@output_options
def game(tokens, fmt, out, no_metadata, workers):
    cfg = load_config("game", tokens, fmt, out, no_metadata, workers)
    result = uncertainty_controller.play_game(build_state(cfg.state_spec), cfg.observables)
    footer = {
        "n_players": result.n_players,
        "sum_conditional_entropy": result.sum_conditional_entropy,
        "helped_players": result.helped_players,
    }
    write_records(cfg, result.players, footer=footer, state=cfg.state_spec.to_text(), observables=cfg.observables)
