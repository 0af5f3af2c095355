"""Small shared helpers: UTC timestamps and canonical JSON bytes."""

from __future__ import annotations

import json
from datetime import datetime, timezone
from typing import Any

EPOCH = datetime(1970, 1, 1, tzinfo=timezone.utc)


def utc_now() -> datetime:
    return datetime.now(timezone.utc)


def ts_to_str(ts: datetime) -> str:
    return ts.astimezone(timezone.utc).isoformat()


def ts_from_str(raw: str) -> datetime:
    return datetime.fromisoformat(raw)


def canonical_json_bytes(doc: Any) -> bytes:
    """Stable serialization: sorted keys, compact separators, UTF-8, one trailing newline.

    Exchange documents and state snapshots go through this single path so
    that identical content always yields identical bytes.
    """
    return (json.dumps(doc, ensure_ascii=False, sort_keys=True, separators=(",", ":")) + "\n").encode("utf-8")
