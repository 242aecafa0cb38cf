"""CSV and JSON writers with a provenance header."""

import csv
import hashlib
import json
import logging
import math
from collections.abc import Iterable, Sequence
from pathlib import Path

logger = logging.getLogger(__name__)


def config_digest(text: str) -> str:
    """SHA-256 hex digest of a configuration document."""
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def header_line(digest: str, seed: int | None) -> str:
    """Provenance line embedded in every output file."""
    return f"config_sha256={digest} seed={'none' if seed is None else seed}"


def format_value(value) -> str:
    """Render floats with 17 significant digits; None becomes an empty field."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    value = float(value)
    if math.isnan(value):
        return "nan"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return format(value, ".17g")


def write_csv(path: Path, header: str, columns: Sequence[str], rows: Iterable[Sequence]) -> Path:
    """Write `# header`, one column-name row and the data rows."""
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as handle:
        handle.write(f"# {header}\n")
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([format_value(v) for v in row])
    logger.info(f"Wrote {path}")
    return path


def _jsonable(value):
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, list | tuple):
        return [_jsonable(v) for v in value]
    if isinstance(value, float) and not math.isfinite(value):
        return format_value(value)
    if hasattr(value, "item"):
        return _jsonable(value.item())
    return value


def write_json(path: Path, header: str, payload: dict) -> Path:
    """Write the payload with sorted keys and a top-level `header` entry."""
    path.parent.mkdir(parents=True, exist_ok=True)
    document = {"header": header, **_jsonable(payload)}
    path.write_text(json.dumps(document, sort_keys=True, indent=2) + "\n", encoding="utf-8")
    logger.info(f"Wrote {path}")
    return path
