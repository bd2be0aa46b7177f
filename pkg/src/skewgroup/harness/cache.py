"""Content-addressed file cache for expensive report values."""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path
from typing import Any, Callable

__all__ = ["ReportCache", "content_key", "canonical_json"]

FORMAT_VERSION = 1


def canonical_json(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def content_key(*parts: Any) -> str:
    """SHA-256 of the canonical JSON of ``parts``."""
    return hashlib.sha256(canonical_json(list(parts)).encode()).hexdigest()


class ReportCache:
    """Stores JSON payloads under ``<dir>/<key[:2]>/<key>.json``.

    Each entry carries a checksum of its payload.  On load the checksum is
    recomputed and the payload is decoded by the caller's validator; any
    failure counts as corruption and the value is recomputed and rewritten.
    ``directory=None`` disables storage while keeping the same interface.
    """

    def __init__(self, directory: str | Path | None):
        self.directory = Path(directory) if directory is not None else None
        self.hits = 0
        self.misses = 0
        self.corrupt = 0

    @property
    def enabled(self) -> bool:
        return self.directory is not None

    def _path(self, key: str) -> Path:
        return self.directory / key[:2] / f"{key}.json"

    def load(self, key: str, decode: Callable[[Any], Any]) -> tuple[bool, Any]:
        if not self.enabled:
            return False, None
        path = self._path(key)
        if not path.exists():
            return False, None
        try:
            entry = json.loads(path.read_text())
            payload = entry["payload"]
            if entry.get("format") != FORMAT_VERSION or entry.get("key") != key:
                raise ValueError("foreign entry")
            if entry.get("checksum") != hashlib.sha256(canonical_json(payload).encode()).hexdigest():
                raise ValueError("checksum mismatch")
            return True, decode(payload)
        except (OSError, ValueError, KeyError, TypeError):
            self.corrupt += 1
            return False, None

    def store(self, key: str, payload: Any) -> None:
        if not self.enabled:
            return
        path = self._path(key)
        path.parent.mkdir(parents=True, exist_ok=True)
        entry = {
            "format": FORMAT_VERSION,
            "key": key,
            "checksum": hashlib.sha256(canonical_json(payload).encode()).hexdigest(),
            "payload": payload,
        }
        fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-", suffix=".json")
        try:
            with os.fdopen(fd, "w") as fh:
                fh.write(canonical_json(entry))
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise

    def get_or_compute(self, key: str, compute: Callable[[], Any], encode: Callable[[Any], Any], decode: Callable[[Any], Any]) -> Any:
        """Cached value for ``key``, computing and storing it on a miss."""
        ok, value = self.load(key, decode)
        if ok:
            self.hits += 1
            return value
        self.misses += 1
        value = compute()
        self.store(key, encode(value))
        return value

    def stats(self) -> dict:
        return {"enabled": self.enabled, "hits": self.hits, "misses": self.misses, "corrupt": self.corrupt}
