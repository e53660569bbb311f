"""Optional on-disk persistence of memo tables (enabled by GDS_CACHE_DIR)."""
from __future__ import annotations

import hashlib
import os
import pickle
from pathlib import Path
from typing import Any, Callable

FORMAT_VERSION = 1


def _path(key: str) -> Path | None:
    root = os.environ.get("GDS_CACHE_DIR")
    if not root:
        return None
    digest = hashlib.sha256(f"v{FORMAT_VERSION}:{key}".encode()).hexdigest()[:32]
    return Path(root) / f"gds-v{FORMAT_VERSION}-{digest}.pkl"


def cached(key: str, build: Callable[[], Any]) -> Any:
    """Return ``build()``, reusing a pickled copy from the cache directory if present.

    Unreadable or mismatched blobs are ignored and rebuilt, so the cache can
    only save time, never change a result.
    """
    path = _path(key)
    if path is not None and path.exists():
        try:
            with path.open("rb") as fh:
                version, stored_key, value = pickle.load(fh)
            if version == FORMAT_VERSION and stored_key == key:
                return value
        except Exception:
            pass
    value = build()
    if path is not None:
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            tmp = path.with_suffix(f".{os.getpid()}.tmp")
            with tmp.open("wb") as fh:
                pickle.dump((FORMAT_VERSION, key, value), fh)
            tmp.replace(path)
        except OSError:
            pass
    return value
