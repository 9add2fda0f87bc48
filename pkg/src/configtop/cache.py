"""Write-once JSON result cache for CLI runs.

Entries are keyed by a hash of (subcommand, canonical parameters, code
version) and stored one file per key. Each file embeds a checksum of its
payload; a file that fails the checksum is ignored, so a corrupted entry
is recomputed rather than served. Writes go through a temp file and an
atomic rename, and an existing valid entry is never overwritten.
"""

from __future__ import annotations

import hashlib
import json
import os
from importlib import metadata
from pathlib import Path

SCHEMA_VERSION = 1


def _code_version() -> str:
    try:
        return metadata.version("configtop")
    except metadata.PackageNotFoundError:
        return "0"


def _canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


class ResultCache:
    def __init__(self, directory: str | os.PathLike):
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)

    def key(self, subcommand: str, params: dict) -> str:
        body = _canonical(
            {
                "subcommand": subcommand,
                "params": params,
                "code_version": _code_version(),
            }
        )
        return hashlib.sha256(body.encode()).hexdigest()

    def _path(self, key: str) -> Path:
        return self.directory / f"{key}.json"

    def load(self, key: str) -> dict | None:
        path = self._path(key)
        try:
            with open(path, encoding="utf-8") as fh:
                wrapper = json.load(fh)
            payload = wrapper["payload"]
            digest = hashlib.sha256(_canonical(payload).encode()).hexdigest()
            if wrapper.get("sha256") != digest:
                return None
            return payload
        except (OSError, ValueError, KeyError, TypeError):
            return None

    def store(self, key: str, payload: dict) -> None:
        path = self._path(key)
        if self.load(key) is not None:
            return  # write-once: a valid entry stays as it is
        wrapper = {
            "schema_version": SCHEMA_VERSION,
            "key": key,
            "sha256": hashlib.sha256(_canonical(payload).encode()).hexdigest(),
            "payload": payload,
        }
        tmp = path.with_name(path.name + ".tmp")
        with open(tmp, "w", encoding="utf-8") as fh:
            json.dump(wrapper, fh, sort_keys=True, indent=1)
        os.replace(tmp, path)
