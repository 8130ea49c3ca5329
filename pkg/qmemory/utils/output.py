# qmemory/utils/output.py
"""CSV / JSON rendering for result records. Everything is written in index order."""
import csv
import io
import json
from datetime import datetime, timezone
from typing import Any, Dict, List, Optional, Sequence

import click
from pydantic import BaseModel

from ..config import VERSION
from ..schemas._base_float import _round_floats
from .rng import GENERATOR_NAME

FORMATS = ("csv", "json")


def run_metadata(command: str, seed: Optional[int] = None, **extra: Any) -> Dict[str, Any]:
    meta: Dict[str, Any] = {
        "command": command,
        "seed": seed,
        "version": VERSION,
        "generator": GENERATOR_NAME,
        "timestamp": datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ"),
    }
    meta.update(extra)
    return meta


def _as_dict(record) -> Dict[str, Any]:
    if isinstance(record, BaseModel):
        return record.model_dump(mode="json")
    return _round_floats(dict(record))


def _cell(v: Any) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (dict, list)):
        return json.dumps(v, separators=(",", ":"))
    return str(v)


def render_json(records: Sequence, metadata: Optional[dict] = None, footer: Optional[dict] = None) -> str:
    doc: Dict[str, Any] = {}
    if metadata is not None:
        doc["metadata"] = metadata
    doc["records"] = [_as_dict(r) for r in records]
    if footer is not None:
        doc["footer"] = _round_floats(footer)
    return json.dumps(doc, indent=2) + "\n"


def render_csv(
    records: Sequence,
    columns: Optional[List[str]] = None,
    metadata: Optional[dict] = None,
    footer: Optional[dict] = None,
) -> str:
    rows = [_as_dict(r) for r in records]
    if columns is None:
        columns = list(rows[0].keys()) if rows else []
    buf = io.StringIO()
    if metadata is not None:
        for k, v in metadata.items():
            buf.write(f"# {k}={_cell(v)}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_cell(row.get(c)) for c in columns])
    if footer is not None:
        for k, v in _round_floats(footer).items():
            buf.write(f"# {k}={_cell(v)}\n")
    return buf.getvalue()


def render(
    records: Sequence,
    fmt: str = "csv",
    columns: Optional[List[str]] = None,
    metadata: Optional[dict] = None,
    footer: Optional[dict] = None,
) -> str:
    if fmt == "json":
        return render_json(records, metadata=metadata, footer=footer)
    if fmt == "csv":
        return render_csv(records, columns=columns, metadata=metadata, footer=footer)
    raise ValueError(f"unknown output format {fmt!r}; expected one of {FORMATS}")


def emit(text: str, out_path: Optional[str] = None) -> None:
    if out_path in (None, "", "-"):
        click.echo(text, nl=False)
        return
    with open(out_path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
