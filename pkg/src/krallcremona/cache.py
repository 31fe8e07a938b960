"""On-disk cache of lifted maps, keyed by a content hash."""
from __future__ import annotations

import hashlib
import json
import os
from pathlib import Path

from . import __version__
from .exactpoly.serialize import dumps, poly_from_obj, poly_to_obj
from .paramlift import NORMALIZATION_VERSION, ParametricMap

ENV_VAR = "KRALLCREMONA_CACHE_DIR"


def default_dir() -> Path:
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "krallcremona"


def resolve_dir(override: str | os.PathLike | None = None) -> Path:
    """Flag override first, then the environment variable, then the user cache."""
    if override:
        return Path(override)
    env = os.environ.get(ENV_VAR)
    return Path(env) if env else default_dir()


def cache_key(family: str, n: int, command: str) -> str:
    payload = dumps({"family": family, "n": n, "command": command,
                     "normalization": NORMALIZATION_VERSION, "code": __version__})
    return hashlib.sha256(payload.encode()).hexdigest()


def map_to_obj(m: ParametricMap) -> dict:
    return {"family": m.family, "n": m.n, "kind": m.kind, "skipped": list(m.skipped),
            "components": [poly_to_obj(c) for c in m.components]}


def map_from_obj(obj: dict) -> ParametricMap:
    return ParametricMap(obj["family"], obj["n"], tuple(poly_from_obj(c) for c in obj["components"]),
                         tuple(obj["skipped"]), obj["kind"])


class MapCache:
    def __init__(self, directory: str | os.PathLike | None = None, enabled: bool = True):
        self.dir = resolve_dir(directory)
        self.enabled = enabled

    def path(self, family: str, n: int, command: str) -> Path:
        return self.dir / f"{command}-{family}-{n}-{cache_key(family, n, command)[:16]}.json"

    def get(self, family: str, n: int, command: str) -> ParametricMap | None:
        if not self.enabled:
            return None
        p = self.path(family, n, command)
        if not p.exists():
            return None
        return map_from_obj(json.loads(p.read_text()))

    def put(self, m: ParametricMap, command: str) -> None:
        if not self.enabled:
            return
        self.dir.mkdir(parents=True, exist_ok=True)
        p = self.path(m.family, m.n, command)
        tmp = p.with_suffix(f".tmp{os.getpid()}")
        tmp.write_text(dumps(map_to_obj(m)))
        os.replace(tmp, p)

    def get_or_compute(self, family: str, n: int, command: str, compute) -> ParametricMap:
        m = self.get(family, n, command)
        if m is None:
            m = compute()
            self.put(m, command)
        return m
