"""On-disk cache of exact P_DP results keyed by (graph edge list, m, reduction flag)."""

from __future__ import annotations

import hashlib
import json
import os
from pathlib import Path

from .graphcore import Graph

ENV_VAR = "DPCHROMA_CACHE"


class ResultCache:
    def __init__(self, directory: str | os.PathLike):
        self.dir = Path(directory)
        self.dir.mkdir(parents=True, exist_ok=True)
        self.hits = 0
        self.misses = 0

    @staticmethod
    def _ident(g: Graph, m: int, reduced: bool) -> str:
        return f"{g.key()}|m={m}|reduced={int(reduced)}"

    def _path(self, ident: str) -> Path:
        return self.dir / (hashlib.sha256(ident.encode()).hexdigest()[:32] + ".json")

    def get(self, g: Graph, m: int, reduced: bool):
        from .dpfunction import DPValue

        ident = self._ident(g, m, reduced)
        path = self._path(ident)
        if not path.is_file():
            self.misses += 1
            return None
        data = json.loads(path.read_text())
        if data.get("key") != ident:
            self.misses += 1
            return None
        self.hits += 1
        return DPValue.from_json(g, data["value"])

    def put(self, g: Graph, value) -> None:
        ident = self._ident(g, value.m, value.reduced)
        path = self._path(ident)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(json.dumps({"key": ident, "value": value.to_json()}, sort_keys=True))
        tmp.replace(path)


def resolve_cache(cli_dir: str | None) -> ResultCache | None:
    """The environment variable wins over the command-line directory."""
    directory = os.environ.get(ENV_VAR) or cli_dir
    return ResultCache(directory) if directory else None
