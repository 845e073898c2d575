"""JSON report envelope and the schemas it is checked against."""

from __future__ import annotations

import hashlib
import json

from . import __version__

TOOL = "macx"

ENVELOPE_SCHEMA = {
    "type": "object",
    "required": ["tool", "version", "command", "input_digest", "results", "runtime_ms"],
    "additionalProperties": False,
    "properties": {
        "tool": {"const": TOOL},
        "version": {"type": "string"},
        "command": {"type": "string"},
        "input_digest": {"type": "string", "pattern": "^sha256:[0-9a-f]{64}$"},
        "results": {"type": "object"},
        "runtime_ms": {"type": "integer", "minimum": 0},
    },
}

CERTIFICATE_SCHEMA = {
    "type": "object",
    "required": ["check", "status", "runtime_ms"],
    "additionalProperties": False,
    "properties": {
        "check": {"type": "string"},
        "status": {"enum": ["pass", "fail"]},
        "witness": {},
        "data": {"type": "object"},
        "runtime_ms": {"type": "integer", "minimum": 0},
    },
}

HOMOLOGY_ENTRY_SCHEMA = {
    "type": "object",
    "required": ["degree", "rank", "torsion"],
    "properties": {
        "degree": {"type": "integer"},
        "rank": {"type": "integer", "minimum": 0},
        "torsion": {"type": "array", "items": {"type": "integer", "minimum": 2}},
    },
}


def input_digest(command: str, args: list, blobs: list[bytes]) -> str:
    """Digest of the command, its normalized arguments and the bytes it read."""
    h = hashlib.sha256()
    h.update(command.encode())
    h.update(b"\0")
    h.update(json.dumps(args, separators=(",", ":")).encode())
    for b in blobs:
        h.update(b"\0")
        h.update(hashlib.sha256(b).digest())
    return "sha256:" + h.hexdigest()


def envelope(command: str, digest: str, results: dict, runtime_ms: int) -> dict:
    return {
        "tool": TOOL,
        "version": __version__,
        "command": command,
        "input_digest": digest,
        "results": results,
        "runtime_ms": int(runtime_ms),
    }


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False)
