"""On-disk JSON cache with content-derived keys and atomic writes."""
from __future__ import annotations

import hashlib
import json
import os
import tempfile
import time
from pathlib import Path
from typing import Any, Callable


def canonical(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def cache_key(version: str, subcommand: str, prime: int | None, bounds: dict, payload: Any) -> str:
    blob = canonical({"version": version, "subcommand": subcommand, "prime": prime,
                      "bounds": bounds, "input": payload})
    return hashlib.sha256(blob.encode()).hexdigest()


def entry_path(cache_dir: Path, key: str) -> Path:
    return Path(cache_dir) / key[:2] / key[2:4] / f"{key}.json"


def _read(path: Path, key: str):
    try:
        with open(path, encoding="utf-8") as fh:
            entry = json.load(fh)
    except (OSError, ValueError):
        return None
    if not isinstance(entry, dict) or entry.get("key") != key or "payload" not in entry:
        return None
    if not isinstance(entry["payload"], (dict, list)):
        return None
    return entry["payload"]


def _write(path: Path, key: str, payload: Any) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    entry = {"key": key, "created": time.time(), "payload": payload}
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-", suffix=".json")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(canonical(entry))
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def cache_get_or_compute(key: str, producer: Callable[[], Any], cache_dir: str | Path | None) -> Any:
    """Return the cached payload for key, computing and storing it on a miss.

    Missing or corrupt entries are recomputed and overwritten; an unusable
    cache directory degrades to plain computation.
    """
    if cache_dir is None:
        return producer()
    path = entry_path(Path(cache_dir), key)
    hit = _read(path, key)
    if hit is not None:
        return hit
    payload = producer()
    # round-trip so cached and fresh results are identical JSON values
    payload = json.loads(canonical(payload))
    try:
        _write(path, key, payload)
    except OSError:
        pass
    return payload
