"""On-disk cache of canonical JSON encodings.

Files are named ``<object>-g<g>[-n<n>][-r<r>]-i<imax>-<method>.json``. A
cache without a directory stores nothing and always misses.
"""
from __future__ import annotations

import json
import os
from pathlib import Path
from typing import Callable, TypeVar

T = TypeVar("T")

ENV_VAR = "REFINED_CACHE_DIR"


def cache_key(
    obj: str,
    g: int,
    imax: int | str,
    method: str,
    n: int | None = None,
    r: int | None = None,
) -> str:
    parts = [obj, f"g{g}"]
    if n is not None:
        parts.append(f"n{n}")
    if r is not None:
        parts.append(f"r{r}")
    parts += [f"i{imax}", method]
    return "-".join(parts) + ".json"


class DiskCache:
    def __init__(self, directory: str | os.PathLike | None = None):
        self.directory = Path(directory) if directory else None
        if self.directory is not None:
            self.directory.mkdir(parents=True, exist_ok=True)

    @classmethod
    def from_env(cls, directory: str | None = None) -> "DiskCache":
        return cls(directory or os.environ.get(ENV_VAR) or None)

    @property
    def enabled(self) -> bool:
        return self.directory is not None

    def get_or_compute(
        self,
        key: str,
        compute: Callable[[], T],
        encode: Callable[[T], object],
        decode: Callable[[object], T],
    ) -> T:
        if self.directory is None:
            return compute()
        path = self.directory / key
        if path.exists():
            return decode(json.loads(path.read_text(encoding="utf-8")))
        value = compute()
        tmp = path.with_suffix(".tmp")
        tmp.write_text(json.dumps(encode(value), sort_keys=True), encoding="utf-8")
        tmp.replace(path)
        return value
