"""Single-directory snapshot storage with crash-safe writes.

The whole center state lives in one JSON file. Every mutation rewrites it
via write-temp / fsync / rename, so a reader never observes a half-written
snapshot no matter when the process dies. A lock file keeps two processes
from sharing a data directory; the lock is advisory (flock) and evaporates
with the process, so a crashed server never wedges its directory.
"""

from __future__ import annotations

import json
import os
from typing import Any

from filelock import FileLock, Timeout

from .errors import DataDirLockedError, StartupError
from .util import canonical_json_bytes

SCHEMA = "transcenter-state-v1"
STATE_FILE = "state.json"
LOCK_FILE = "center.lock"


class SnapshotStore:
    """Owns one data directory: its lock, and atomic reads/writes of the state file."""

    def __init__(self, directory: str) -> None:
        self.directory = directory
        try:
            os.makedirs(directory, exist_ok=True)
        except OSError as exc:
            raise StartupError(f"cannot create data directory {directory}: {exc}") from exc
        self._lock = FileLock(os.path.join(directory, LOCK_FILE))
        try:
            self._lock.acquire(timeout=0)
        except Timeout:
            raise DataDirLockedError(
                f"data directory {directory} is in use by another process"
            ) from None
        self._state_path = os.path.join(directory, STATE_FILE)

    def load(self) -> dict[str, Any] | None:
        """The last snapshot, or None for a fresh directory. Corruption is fatal."""
        try:
            with open(self._state_path, "rb") as handle:
                raw = handle.read()
        except FileNotFoundError:
            return None
        except OSError as exc:
            raise StartupError(f"cannot read {self._state_path}: {exc}") from exc
        try:
            data = json.loads(raw.decode("utf-8"))
        except ValueError as exc:
            raise StartupError(f"{self._state_path} is corrupt: {exc}") from exc
        if not isinstance(data, dict) or data.get("schema") != SCHEMA:
            raise StartupError(f"{self._state_path} does not look like a state snapshot")
        return data

    def write(self, state: dict[str, Any]) -> None:
        """Replace the snapshot atomically; the old one stays intact until rename."""
        state = dict(state)
        state["schema"] = SCHEMA
        payload = canonical_json_bytes(state)
        tmp_path = f"{self._state_path}.tmp.{os.getpid()}"
        fd = os.open(tmp_path, os.O_WRONLY | os.O_CREAT | os.O_TRUNC, 0o644)
        try:
            os.write(fd, payload)
            os.fsync(fd)
        finally:
            os.close(fd)
        os.replace(tmp_path, self._state_path)
        dir_fd = os.open(self.directory, os.O_RDONLY)
        try:
            os.fsync(dir_fd)
        finally:
            os.close(dir_fd)

    def release(self) -> None:
        self._lock.release()
