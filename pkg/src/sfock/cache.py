"""On-disk result cache for long exact computations.

The cache is a JSON-lines file.  Each line is one record::

    {"key": <sha256>, "version": ..., "op": ..., "spec": ..., "args": [...], "value": ...}

A record is used only if every field matches the request, so entries from
another package version or a hash collision are ignored.  Writers append
whole lines under an exclusive lock; readers skip lines that fail to parse.
"""

from __future__ import annotations

import fcntl
import hashlib
import json
import os
from pathlib import Path
from typing import Any, Callable

ENV_VAR = "SFOCK_CACHE"


def _version() -> str:
    from . import __version__
    return __version__


def cache_key(op: str, spec: str, args: list, version: str | None = None) -> str:
    payload = json.dumps([version or _version(), spec, op, args], sort_keys=True,
                         separators=(",", ":"))
    return hashlib.sha256(payload.encode()).hexdigest()


class ResultCache:
    """Append-only JSON-lines cache; ``path=None`` disables persistence."""

    def __init__(self, path: str | os.PathLike | None = None, version: str | None = None):
        self.path = Path(path) if path else None
        self.version = version or _version()
        self._mem: dict[str, Any] = {}
        self.hits = 0
        self.misses = 0
        if self.path is not None and self.path.exists():
            self._load()

    @classmethod
    def from_settings(cls, cli_path: str | None) -> "ResultCache":
        """The environment variable wins over the command-line path."""
        return cls(os.environ.get(ENV_VAR) or cli_path)

    def _load(self):
        with open(self.path, encoding="utf-8") as fh:
            for line in fh:
                try:
                    rec = json.loads(line)
                except json.JSONDecodeError:
                    continue
                if not isinstance(rec, dict) or rec.get("version") != self.version:
                    continue
                key = rec.get("key")
                if key != cache_key(rec.get("op"), rec.get("spec"), rec.get("args"), self.version):
                    continue
                self._mem[key] = rec

    def get(self, op: str, spec: str, args: list):
        key = cache_key(op, spec, args, self.version)
        rec = self._mem.get(key)
        if rec is None or rec["op"] != op or rec["spec"] != spec or rec["args"] != args:
            return None
        return rec

    def put(self, op: str, spec: str, args: list, value) -> None:
        key = cache_key(op, spec, args, self.version)
        rec = {"key": key, "version": self.version, "op": op, "spec": spec,
               "args": args, "value": value}
        self._mem[key] = rec
        if self.path is None:
            return
        self.path.parent.mkdir(parents=True, exist_ok=True)
        line = json.dumps(rec, sort_keys=True, separators=(",", ":")) + "\n"
        with open(self.path, "a", encoding="utf-8") as fh:
            fcntl.flock(fh, fcntl.LOCK_EX)
            try:
                fh.write(line)
                fh.flush()
            finally:
                fcntl.flock(fh, fcntl.LOCK_UN)

    def compute(self, op: str, spec: str, args: list, fn: Callable[[], Any]):
        """Return the cached value or compute, store and return it.

        ``args`` must be JSON-serialisable; values must round-trip through JSON.
        """
        args = json.loads(json.dumps(args))
        rec = self.get(op, spec, args)
        if rec is not None:
            self.hits += 1
            return rec["value"]
        self.misses += 1
        value = fn()
        self.put(op, spec, args, value)
        return value
