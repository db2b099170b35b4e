"""Append-only JSONL cache of report records keyed by (q, method, engine_version)."""

from __future__ import annotations

import json
import logging
import os
from pathlib import Path

from filelock import FileLock

log = logging.getLogger(__name__)

ENV_VAR = "CA_FORGE_CACHE"


def cache_path(explicit: str | None) -> Path | None:
    path = explicit or os.environ.get(ENV_VAR)
    return Path(path) if path else None


class RecordCache:
    def __init__(self, path: Path):
        self.path = Path(path)
        self.lock = FileLock(str(self.path) + ".lock")
        self._entries: dict[tuple, dict] | None = None

    @staticmethod
    def key(q: int, method: str, version: str) -> tuple:
        return (int(q), method, version)

    def _load(self) -> dict[tuple, dict]:
        if self._entries is not None:
            return self._entries
        entries: dict[tuple, dict] = {}
        if self.path.exists():
            with self.lock, self.path.open(encoding="utf-8") as fh:
                for lineno, line in enumerate(fh, 1):
                    line = line.strip()
                    if not line:
                        continue
                    try:
                        obj = json.loads(line)
                        entries[tuple(obj["key"])] = obj["record"]
                    except (ValueError, KeyError, TypeError):
                        log.warning("skipping corrupt cache line %d in %s", lineno, self.path)
        self._entries = entries
        return entries

    def get(self, key: tuple) -> dict | None:
        rec = self._load().get(key)
        return dict(rec) if rec is not None else None

    def put(self, key: tuple, record: dict) -> None:
        self.path.parent.mkdir(parents=True, exist_ok=True)
        line = json.dumps({"key": list(key), "record": record}, ensure_ascii=False)
        with self.lock, self.path.open("a", encoding="utf-8") as fh:
            fh.write(line + "\n")
        self._load()[key] = dict(record)
