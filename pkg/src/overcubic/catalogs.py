"""Access to the packaged JSON catalogs (families, identities, certificates).

User-supplied paths take precedence; bare relative names such as
``identities/lemma_dissections.json`` fall back to the copies shipped
inside the package, so CLI invocations work from any directory.
"""
from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources
from pathlib import Path


def _packaged(relative: str):
    node = resources.files(__package__) / "catalogs"
    for part in Path(relative).parts:
        node = node / part
    return node


def read_text(ref: str | Path) -> str:
    p = Path(ref)
    if p.exists():
        return p.read_text()
    node = _packaged(str(ref))
    if node.is_file():
        return node.read_text()
    raise FileNotFoundError(f"no catalog file at {ref!r} (checked cwd and packaged catalogs)")


def load(ref: str | Path):
    return json.loads(read_text(ref))


@lru_cache(maxsize=1)
def family_table() -> dict[str, dict]:
    entries = load("families/catalog.json")
    return {e["name"]: e for e in entries}
