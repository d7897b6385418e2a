"""Content-addressed disk cache for expensive results.

Each entry is one JSON file holding a header (object kind, parameters and
a hash of the package source) together with the payload and its sha256.
A file whose header or payload hash does not match is discarded and the
value recomputed.  Eviction is manual (``hookharm cache --clear``).
"""
from __future__ import annotations

import hashlib
import json
import os
from functools import lru_cache
from pathlib import Path

ENV_VAR = "HOOKHARM_CACHE"


@lru_cache(maxsize=None)
def code_version() -> str:
    h = hashlib.sha256()
    root = Path(__file__).parent
    for path in sorted(root.glob("*.py")):
        h.update(path.name.encode())
        h.update(path.read_bytes())
    return h.hexdigest()[:16]


def _digest(obj) -> str:
    return hashlib.sha256(json.dumps(obj, sort_keys=True, separators=(",", ":")).encode()).hexdigest()


class DiskCache:
    def __init__(self, directory):
        self.dir = Path(directory)
        self.dir.mkdir(parents=True, exist_ok=True)
        self.hits = 0
        self.misses = 0
        self.rejected = 0

    def _header(self, kind: str, params) -> dict:
        return {"kind": kind, "params": params, "version": code_version()}

    def path_for(self, kind: str, params) -> Path:
        hd = self._header(kind, params)
        return self.dir / f"{kind}-{_digest(hd)[:20]}.json"

    def get(self, kind: str, params):
        path = self.path_for(kind, params)
        if not path.exists():
            self.misses += 1
            return None
        try:
            data = json.loads(path.read_text())
            ok = (data.get("header") == self._header(kind, params)
                  and data.get("sha256") == _digest(data.get("payload")))
        except (OSError, ValueError):
            ok = False
        if not ok:
            self.rejected += 1
            try:
                path.unlink()
            except OSError:
                pass
            return None
        self.hits += 1
        return data["payload"]

    def put(self, kind: str, params, payload) -> Path:
        path = self.path_for(kind, params)
        data = {"header": self._header(kind, params), "sha256": _digest(payload), "payload": payload}
        tmp = path.with_suffix(".tmp")
        tmp.write_text(json.dumps(data, sort_keys=True))
        os.replace(tmp, path)
        return path

    def entries(self) -> list:
        return sorted(self.dir.glob("*.json"))

    def clear(self) -> int:
        n = 0
        for p in self.entries():
            p.unlink()
            n += 1
        return n


_active: DiskCache | None = None


def set_cache_dir(directory) -> DiskCache | None:
    global _active
    _active = DiskCache(directory) if directory else None
    return _active


def active_cache() -> DiskCache | None:
    global _active
    if _active is None and os.environ.get(ENV_VAR):
        _active = DiskCache(os.environ[ENV_VAR])
    return _active


def cached(kind: str, params, compute, encode, decode):
    """Return decode(payload) from the cache, or compute, store and return."""
    c = active_cache()
    if c is not None:
        payload = c.get(kind, params)
        if payload is not None:
            return decode(payload)
    value = compute()
    if c is not None:
        c.put(kind, params, encode(value))
    return value
