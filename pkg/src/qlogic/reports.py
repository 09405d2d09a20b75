"""Machine-readable report documents emitted by the command-line interface."""

from __future__ import annotations

import hashlib
import json

from . import __version__

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["command", "input_digest", "version", "seed", "results"],
    "additionalProperties": False,
    "properties": {
        "command": {"type": "string"},
        "input_digest": {"type": ["string", "null"]},
        "version": {"type": "string"},
        "seed": {"type": ["integer", "null"]},
        "results": {"type": "object"},
    },
}


def digest_file(path: str) -> str:
    with open(path, "rb") as handle:
        return hashlib.sha256(handle.read()).hexdigest()


def make_report(
    command: str,
    input_digest: str | None = None,
    seed: int | None = None,
    results: dict | None = None,
) -> dict:
    return {
        "command": command,
        "input_digest": input_digest,
        "version": __version__,
        "seed": seed,
        "results": results or {},
    }


def render_text(doc, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(doc, dict):
        for key, value in doc.items():
            if isinstance(value, (dict, list)) and value:
                lines.append(f"{pad}{key}:")
                lines.append(render_text(value, indent + 1))
            else:
                lines.append(f"{pad}{key}: {_scalar(value)}")
    elif isinstance(doc, list):
        for value in doc:
            if isinstance(value, (dict, list)) and value:
                lines.append(f"{pad}-")
                lines.append(render_text(value, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(value)}")
    else:
        lines.append(f"{pad}{_scalar(doc)}")
    return "\n".join(lines)


def _scalar(value) -> str:
    if value is None:
        return "none"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (dict, list)):
        return json.dumps(value)
    return str(value)


def emit(doc: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(doc, indent=2)
    return render_text(doc)
