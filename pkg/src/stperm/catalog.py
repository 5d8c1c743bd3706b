"""Named groups: presentation builders and the on-disk catalog.

A catalog file is a JSON object with ``name``, ``order`` and either
``generators`` (permutations of ``0..m-1``) or ``table`` (row-major
multiplication table with identity 0).  Optional keys: ``display``,
``generator_names``, ``description``.  The directory searched is
``$STPERM_CATALOG_DIR`` when set, else the copy shipped with the package.
"""

from __future__ import annotations

import json
import os
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .errors import ValidationError
from .groups import FiniteGroup, group_from_permutations

ENV_VAR = "STPERM_CATALOG_DIR"


def metacyclic_group(m: int, s: int, r: int, t: int, *, name=None, display=None) -> FiniteGroup:
    """``<x, y | x^m = 1, y^s = x^t, y x y^-1 = x^r>`` on normal forms ``x^a y^b``.

    Requires ``r^s = 1`` and ``r t = t`` mod ``m`` so that the normal forms
    multiply consistently; the resulting table is checked for associativity.
    """
    if pow(r, s, m) != 1 % m or (r * t - t) % m:
        raise ValidationError("inconsistent metacyclic parameters")
    n = m * s
    table = np.empty((n, n), dtype=np.int64)
    rpow = [pow(r, b, m) for b in range(s)]
    for a in range(m):
        for b in range(s):
            for c in range(m):
                for d in range(s):
                    e = a + rpow[b] * c
                    f = b + d
                    if f >= s:
                        f -= s
                        e += t
                    table[a * s + b, c * s + d] = (e % m) * s + f
    return FiniteGroup(table, name=name, display=display)


def regular_permutations(G: FiniteGroup, elements: Sequence[int]) -> list[list[int]]:
    """Left-multiplication permutations of the given elements on ``G``."""
    return [G.table[g].tolist() for g in elements]


def group_from_table(table, *, name=None, display=None, labels=None) -> FiniteGroup:
    return FiniteGroup(table, name=name, display=display, labels=labels)


def catalog_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path(str(resources.files("stperm") / "data" / "catalog"))


def _normalize(name: str) -> str:
    return name.replace("_", "").replace(" ", "").lower()


def _index(directory: Path) -> dict[str, Path]:
    if not directory.is_dir():
        raise ValidationError(f"catalog directory not found: {directory}")
    out: dict[str, Path] = {}
    for path in sorted(directory.glob("*.json")):
        try:
            doc = json.loads(path.read_text())
        except json.JSONDecodeError as exc:
            raise ValidationError(f"{path.name}: malformed catalog file ({exc})") from None
        name = doc.get("name", path.stem)
        out[_normalize(name)] = path
    return out


def catalog_names(directory: Optional[Path] = None) -> list[str]:
    d = directory or catalog_dir()
    names = [json.loads(p.read_text())["name"] for p in _index(d).values()]
    return sorted(names, key=lambda s: (_order_hint(d, s), s))


def _order_hint(directory: Path, name: str) -> int:
    return int(json.loads(_index(directory)[_normalize(name)].read_text()).get("order", 0))


def load_group_file(path: Path) -> FiniteGroup:
    doc = json.loads(Path(path).read_text())
    return group_from_document(doc)


def group_from_document(doc: dict) -> FiniteGroup:
    name = doc.get("name")
    if not isinstance(name, str) or not name:
        raise ValidationError("group document needs a non-empty 'name'")
    display = doc.get("display")
    if "table" in doc:
        G = FiniteGroup(doc["table"], name=name, display=display, labels=doc.get("labels"))
    elif "generators" in doc:
        gens = doc["generators"]
        if not isinstance(gens, list) or not all(isinstance(g, list) for g in gens):
            raise ValidationError(f"{name}: 'generators' must be a list of permutations")
        G = group_from_permutations(
            gens, name=name, display=display, generator_names=doc.get("generator_names")
        )
    else:
        raise ValidationError(f"{name}: needs 'table' or 'generators'")
    if "order" in doc and int(doc["order"]) != G.order:
        raise ValidationError(f"{name}: declared order {doc['order']} but built {G.order}")
    return G


@lru_cache(maxsize=None)
def _load_cached(path: str, mtime: float) -> FiniteGroup:
    return load_group_file(Path(path))


def catalog(name: str) -> FiniteGroup:
    """Load a catalog group by name (case, underscores and spaces ignored)."""
    directory = catalog_dir()
    path = _index(directory).get(_normalize(name))
    if path is None:
        raise ValidationError(f"unknown group {name!r}")
    return _load_cached(str(path), path.stat().st_mtime)


_STANDARD_KINDS = ("trivial", "cyclic", "elementary_abelian", "generalized_quaternion")


def group_label(G: FiniteGroup) -> str:
    """A readable name: the catalog display name, a standard type, or a catalog match."""
    from .groups import are_isomorphic, iso_type, prime_power

    if G.display:
        return G.display
    t = iso_type(G)
    if t.kind in _STANDARD_KINDS or (t.kind == "dihedral" and prime_power(G.order)):
        return t.name
    cached = G._cache.get("label")
    if cached:
        return cached
    label = f"<order {G.order}>"
    if G.order <= 72:
        try:
            directory = catalog_dir()
            candidates = [
                p for p in _index(directory).values()
                if json.loads(p.read_text()).get("order") == G.order
            ]
        except ValidationError:
            candidates = []
        for path in sorted(candidates):
            H = _load_cached(str(path), path.stat().st_mtime)
            if are_isomorphic(G, H):
                label = H.display or H.name
                break
    G._cache["label"] = label
    return label
