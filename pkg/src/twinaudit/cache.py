"""Append-only JSONL cache of per-window twin counts.

One record per (n, tool_version). Re-running a window never appends a
duplicate; a recomputed count that disagrees with the stored one is an error.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from datetime import datetime, timezone
from pathlib import Path

from .errors import CacheError

_FIELDS = ("n", "twin_count", "computed_at", "tool_version")


@dataclass(frozen=True)
class CacheRecord:
    n: int
    twin_count: int
    computed_at: str
    tool_version: str


class WindowCache:
    def __init__(self, path: str | Path, tool_version: str):
        self.path = Path(path)
        self.tool_version = tool_version
        self._counts: dict[int, int] = {}

    def load(self) -> "WindowCache":
        """Read the file if it exists; raise :class:`CacheError` on any bad line."""
        self._counts.clear()
        if not self.path.exists():
            return self
        try:
            text = self.path.read_text(encoding="utf-8")
        except OSError as exc:
            raise CacheError(f"cannot read cache {self.path}: {exc}") from exc
        for lineno, line in enumerate(text.splitlines(), start=1):
            if not line.strip():
                continue
            try:
                raw = json.loads(line)
                rec = CacheRecord(**{k: raw[k] for k in _FIELDS})
                if not isinstance(rec.n, int) or not isinstance(rec.twin_count, int) or rec.n < 0:
                    raise TypeError("n and twin_count must be non-negative integers")
            except (json.JSONDecodeError, KeyError, TypeError) as exc:
                raise CacheError(f"{self.path}:{lineno}: corrupt record ({exc})") from exc
            if rec.tool_version != self.tool_version:
                continue
            prev = self._counts.setdefault(rec.n, rec.twin_count)
            if prev != rec.twin_count:
                raise CacheError(f"{self.path}:{lineno}: conflicting counts for n={rec.n}")
        return self

    def get(self, n: int) -> int | None:
        return self._counts.get(n)

    def __contains__(self, n: int) -> bool:
        return n in self._counts

    def __len__(self) -> int:
        return len(self._counts)

    def record(self, n: int, twin_count: int) -> bool:
        """Store a count; returns True if a new line was appended."""
        known = self._counts.get(n)
        if known is not None:
            if known != twin_count:
                raise CacheError(f"cached count {known} for n={n} disagrees with recomputed {twin_count}")
            return False
        rec = CacheRecord(n, twin_count, datetime.now(timezone.utc).isoformat(), self.tool_version)
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with self.path.open("a", encoding="utf-8") as fh:
            fh.write(json.dumps(asdict(rec)) + "\n")
        self._counts[n] = twin_count
        return True
