"""On-disk catalog: a JSON manifest naming relation documents."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Iterator, List, Mapping

from .core import NeutrosophicRelation
from .document import PathLike, load_relation
from .errors import DocumentError, UnknownRelation

CATALOG_ENV = "NEUTRO_CATALOG"
DEFAULT_MANIFEST = "neutro-catalog.json"


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    path: str
    digest: str


class Catalog(Mapping[str, NeutrosophicRelation]):
    """Relations listed in a manifest, loaded on first access."""

    def __init__(self, manifest: PathLike, entries: List[CatalogEntry] = ()):
        self.manifest = Path(manifest)
        self.entries: Dict[str, CatalogEntry] = {}
        for e in entries:
            if e.name in self.entries:
                raise DocumentError("relation {0!r} listed twice".format(e.name))
            self.entries[e.name] = e
        self._cache: Dict[str, NeutrosophicRelation] = {}

    @classmethod
    def default_path(cls) -> Path:
        return Path(os.environ.get(CATALOG_ENV) or DEFAULT_MANIFEST)

    @classmethod
    def open(cls, manifest: PathLike) -> "Catalog":
        path = Path(manifest)
        if not path.exists():
            return cls(path)
        try:
            data = json.loads(path.read_text(encoding="utf-8"))
            entries = [CatalogEntry(d["name"], d["path"], d["digest"]) for d in data["relations"]]
        except (ValueError, KeyError, TypeError) as exc:
            raise DocumentError("bad catalog manifest {0}: {1}".format(path, exc)) from None
        return cls(path, entries)

    def save(self) -> None:
        data = {"relations": [vars(e) for e in self.entries.values()]}
        self.manifest.write_text(json.dumps(data, indent=2) + "\n", encoding="utf-8")

    def add(self, name: str, file: PathLike) -> NeutrosophicRelation:
        path = Path(file).resolve()
        relation = load_relation(path)
        self.entries[name] = CatalogEntry(name, str(path), relation.scheme.digest())
        self._cache[name] = relation
        return relation

    def __getitem__(self, name: str) -> NeutrosophicRelation:
        if name not in self._cache:
            try:
                entry = self.entries[name]
            except KeyError:
                raise UnknownRelation("no relation named {0!r}".format(name)) from None
            relation = load_relation(entry.path)
            if relation.scheme.digest() != entry.digest:
                raise DocumentError(
                    "scheme of {0!r} changed since it was loaded ({1})".format(name, entry.path)
                )
            self._cache[name] = relation
        return self._cache[name]

    def __iter__(self) -> Iterator[str]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, name) -> bool:
        return name in self.entries
