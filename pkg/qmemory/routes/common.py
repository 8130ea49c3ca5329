# qmemory/routes/common.py
from typing import Optional, Sequence

import click

from ..config import WORKERS
from ..schemas.run_schema import RunConfig
from ..utils.output import FORMATS, emit, render, run_metadata

_OUTPUT_OPTIONS = [
    click.option(
        "--format", "fmt", type=click.Choice(FORMATS), default="csv", show_default=True,
        help="csv writes # comment lines around a table; json writes one object with metadata, records and footer keys",
    ),
    click.option("--out", "out", type=click.Path(dir_okay=False, writable=True), default=None, help="file path; stdout if omitted"),
    click.option("--no-metadata", is_flag=True, help="omit the run-metadata header (byte-stable output)"),
    click.option("--workers", type=click.IntRange(min=1), default=WORKERS, show_default=True),
]


def output_options(fn):
    """--format / --out / --no-metadata / --workers, shared by every verb."""
    for option in reversed(_OUTPUT_OPTIONS):
        fn = option(fn)
    return fn


def load_config(command: str, tokens: Sequence[str], fmt: str, out: Optional[str], no_metadata: bool, workers: int) -> RunConfig:
    return RunConfig.from_tokens(
        command,
        tokens,
        out_format=fmt,
        out_path=out,
        metadata=not no_metadata,
        workers=workers,
    )


def write_records(cfg: RunConfig, records, columns=None, footer=None, **meta) -> None:
    metadata = run_metadata(cfg.command, **meta) if cfg.metadata else None
    emit(render(records, cfg.out_format, columns=columns, metadata=metadata, footer=footer), cfg.out_path)
