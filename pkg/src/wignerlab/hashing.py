"""Canonical JSON bytes and hashing for provenance keys.

Dictionaries are serialized with sorted keys and fixed separators so the
same logical document always hashes identically, across processes and
platforms.
"""

from __future__ import annotations

import hashlib
import json
from typing import Any


def canonical_json_bytes(document: Any) -> bytes:
    return json.dumps(
        document, sort_keys=True, separators=(",", ":"), ensure_ascii=True,
        allow_nan=False,
    ).encode("ascii")


def sha256_hex(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def document_hash(document: Any) -> str:
    return sha256_hex(canonical_json_bytes(document))
