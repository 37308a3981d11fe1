"""Checksummed JSON cache for exact sequences.

One file per sequence name; values round-trip bit-exactly.  A corrupt or
tampered file (checksum mismatch, malformed JSON, unknown kinds) is treated as
a miss with a warning, never an error.
"""

from __future__ import annotations

import hashlib
import json
import os
import warnings
from fractions import Fraction
from pathlib import Path

from .scalars import ConstElem, format_rational, parse_rational

SCHEMA = "csfree/sequence-cache/1"
ENV_CACHE_DIR = "CSFREE_CACHE_DIR"


def _encode_value(value):
    if value is None:
        return {"kind": "none"}
    if isinstance(value, ConstElem):
        return {"kind": "symbolic", "value": value.to_json()}
    return {"kind": "rational", "value": format_rational(Fraction(value))}


def _decode_value(item):
    kind = item["kind"]
    if kind == "none":
        return None
    if kind == "symbolic":
        return ConstElem.from_json(item["value"])
    if kind == "rational":
        return parse_rational(item["value"])
    raise ValueError(f"unknown value kind {kind!r}")


def _checksum(values_json: list) -> str:
    blob = json.dumps(values_json, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


class SequenceCache:
    """Directory-backed store of exact value lists keyed by sequence name."""

    def __init__(self, directory):
        self.directory = Path(directory)

    def path_for(self, name: str) -> Path:
        safe = name.replace("/", "_")
        return self.directory / f"{safe}.json"

    def read(self, name: str):
        """The cached list, or None on miss/corruption (with a warning)."""
        path = self.path_for(name)
        if not path.exists():
            return None
        try:
            data = json.loads(path.read_text())
            if data.get("schema") != SCHEMA or data.get("name") != name:
                raise ValueError("schema or name mismatch")
            values_json = data["values"]
            if data["sha256"] != _checksum(values_json):
                raise ValueError("checksum mismatch")
            return [_decode_value(v) for v in values_json]
        except (ValueError, KeyError, TypeError, OSError) as exc:
            warnings.warn(f"cache file {path} unusable ({exc}); recomputing")
            return None

    def write(self, name: str, values) -> bool:
        """Store a list of exact values; returns False (with a warning) when
        the directory is not writable."""
        values_json = [_encode_value(v) for v in values]
        payload = {
            "schema": SCHEMA,
            "name": name,
            "values": values_json,
            "sha256": _checksum(values_json),
        }
        path = self.path_for(name)
        try:
            self.directory.mkdir(parents=True, exist_ok=True)
            tmp = path.with_suffix(".tmp")
            tmp.write_text(json.dumps(payload, indent=1) + "\n")
            os.replace(tmp, path)
            return True
        except OSError as exc:
            warnings.warn(f"cannot write cache file {path} ({exc}); proceeding uncached")
            return False

    def clear(self, name: str | None = None) -> int:
        """Remove one entry (or all); returns the number of files removed."""
        removed = 0
        if name is not None:
            path = self.path_for(name)
            if path.exists():
                path.unlink()
                removed = 1
        elif self.directory.is_dir():
            for path in self.directory.glob("*.json"):
                path.unlink()
                removed += 1
        return removed


def default_cache() -> SequenceCache | None:
    """Cache configured through the environment, if any."""
    directory = os.environ.get(ENV_CACHE_DIR)
    if directory:
        return SequenceCache(directory)
    return None
