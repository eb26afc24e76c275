"""Canonical JSON certificates and their digests."""

from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, is_dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any

from . import __version__


def _plain(obj: Any) -> Any:
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, (set, frozenset)):
        return sorted(_plain(v) for v in obj)
    if is_dataclass(obj) and not isinstance(obj, type):
        return _plain(asdict(obj))
    if hasattr(obj, "item"):  # numpy scalars
        return obj.item()
    return obj


def canonical_json(obj: Any) -> str:
    """Sorted keys, no whitespace, Fractions as "p/q" strings."""
    return json.dumps(_plain(obj), sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def digest(obj: Any) -> str:
    return hashlib.sha256(canonical_json(obj).encode("utf-8")).hexdigest()


def make_certificate(subcommand: str, payload: Any, inputs: dict | None = None,
                     profile: Any = None, seed: Any = None) -> dict:
    """A run manifest: what ran, on which inputs, and what it produced."""
    body = {
        "subcommand": subcommand,
        "tool_version": __version__,
        "seed": seed,
        "profile": _plain(profile) if profile is not None else None,
        "inputs": {k: digest(v) for k, v in sorted((inputs or {}).items())},
        "outputs": _plain(payload),
    }
    body["digest"] = digest({k: v for k, v in body.items()})
    return body


def write_certificate(cert: dict, path: str | Path | None) -> str:
    text = json.dumps(cert, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    if path is None or str(path) == "-":
        return text
    Path(path).write_text(text, encoding="utf-8")
    return text


def check_certificate(cert: dict) -> bool:
    """True iff the stored digest matches the certificate body."""
    body = {k: v for k, v in cert.items() if k != "digest"}
    return cert.get("digest") == digest(body)
