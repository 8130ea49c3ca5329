# qmemory/routes/audit.py
import logging

import click

from ..controllers import theorems_controller
from ..errors import EXIT_AUDIT_FAILURE
from ..schemas.claim_schema import AUDIT_COLUMNS
from .common import load_config, output_options, write_records

logger = logging.getLogger(__name__)


@click.command("audit", short_help="Batch-audit every identity and inequality on seeded random states")
@click.argument("tokens", nargs=-1)
@output_options
@click.pass_context
def audit(ctx, tokens, fmt, out, no_metadata, workers):
    """TOKENS: n=1000 seed=42 claims=EQ9,EQ16 dims=2,2,2,2. Exit code 1 on any failure."""
    cfg = load_config("audit", tokens, fmt, out, no_metadata, workers)
    summaries = theorems_controller.audit_suite(
        claims=cfg.claims,
        n_samples=cfg.n_samples,
        seed=cfg.seed,
        dims=cfg.dims,
        workers=cfg.workers,
    )
    failures = sum(s.failures for s in summaries)
    footer = {"claims": len(summaries), "failures": failures}
    write_records(
        cfg,
        summaries,
        columns=AUDIT_COLUMNS,
        footer=footer,
        seed=cfg.seed,
        n=cfg.n_samples,
        claims=",".join(s.claim_id.value for s in summaries),
    )
    if failures:
        logger.warning("audit found %d failing samples", failures)
        ctx.exit(EXIT_AUDIT_FAILURE)
