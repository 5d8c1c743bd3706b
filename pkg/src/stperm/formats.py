"""On-disk complex documents (``complex.v1``) and report documents (``report.v1``)."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Union

import numpy as np

from .catalog import catalog, group_from_document, group_label
from .complexes import PermComplex, homology
from .errors import ValidationError
from .gf import PrimeField, is_prime
from .groups import FiniteGroup, Subgroup, all_subgroups, center, iso_type, sylow_subgroup
from .gsets import coset_gset, disjoint_union

COMPLEX_SCHEMA = "complex.v1"
REPORT_SCHEMA = "report.v1"

OrbitSpec = Union[str, list]


@dataclass
class ComplexSpec:
    prime: int
    group: Union[str, dict]
    terms: list[tuple[int, list[OrbitSpec]]]
    differentials: list[tuple[int, list[list[int]]]] = field(default_factory=list)

    @classmethod
    def from_document(cls, doc: dict) -> "ComplexSpec":
        if not isinstance(doc, dict):
            raise ValidationError("complex document must be a JSON object")
        schema = doc.get("schema", COMPLEX_SCHEMA)
        if schema != COMPLEX_SCHEMA:
            raise ValidationError(f"unsupported schema {schema!r}")
        for key in ("prime", "group", "terms"):
            if key not in doc:
                raise ValidationError(f"missing field {key!r}")
        prime = doc["prime"]
        if not isinstance(prime, int) or not is_prime(prime):
            raise ValidationError(f"prime must be a prime integer, got {prime!r}")
        group = doc["group"]
        if not isinstance(group, (str, dict)):
            raise ValidationError("group must be a catalog name or an inline group object")
        terms = []
        for t in doc["terms"]:
            if not isinstance(t, dict) or "degree" not in t or "orbits" not in t:
                raise ValidationError("each term needs 'degree' and 'orbits'")
            if not isinstance(t["degree"], int) or not isinstance(t["orbits"], list):
                raise ValidationError("term degree must be an integer and orbits a list")
            terms.append((t["degree"], list(t["orbits"])))
        degrees = [d for d, _ in terms]
        if len(set(degrees)) != len(degrees):
            raise ValidationError("duplicate term degree")
        diffs = []
        for d in doc.get("differentials", []):
            if not isinstance(d, dict) or "degree" not in d or "matrix" not in d:
                raise ValidationError("each differential needs 'degree' and 'matrix'")
            diffs.append((d["degree"], d["matrix"]))
        if len({d for d, _ in diffs}) != len(diffs):
            raise ValidationError("duplicate differential degree")
        return cls(prime, group, sorted(terms, key=lambda t: t[0]), sorted(diffs, key=lambda t: t[0]))

    def to_document(self) -> dict:
        return {
            "schema": COMPLEX_SCHEMA,
            "prime": self.prime,
            "group": self.group,
            "terms": [{"degree": d, "orbits": o} for d, o in self.terms],
            "differentials": [{"degree": d, "matrix": m} for d, m in self.differentials],
        }

    def dumps(self) -> str:
        return compact_json(self.to_document())


_SCALAR = r'(?:-?\d+|"[^"\\\[\],]*")'
_FLAT_LIST = re.compile(r"\[\s*(" + _SCALAR + r"(?:\s*,\s*" + _SCALAR + r")*)\s*\]")
_TOKEN = re.compile(_SCALAR)


def compact_json(doc) -> str:
    """Indented JSON with flat lists of integers or short strings kept on one line."""
    text = json.dumps(doc, indent=2)
    text = _FLAT_LIST.sub(lambda m: "[" + ", ".join(_TOKEN.findall(m.group(1))) + "]", text)
    return text + "\n"


def load_spec(path: Union[str, Path]) -> ComplexSpec:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ValidationError(f"malformed JSON: {exc}") from None
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc.strerror}") from None
    return ComplexSpec.from_document(doc)


def resolve_group(spec: Union[str, dict]) -> FiniteGroup:
    if isinstance(spec, str):
        return catalog(spec)
    return group_from_document(spec)


_NAMED = re.compile(r"^(?P<name>[A-Za-z][A-Za-z0-9_^ ]*?)(?:#(?P<k>\d+))?$")


def _norm(name: str) -> str:
    return name.replace("_", "").replace(" ", "").lower()


def resolve_subgroup(G: FiniteGroup, spec: OrbitSpec, p: int) -> Subgroup:
    """Element list, ``1``, ``G``, ``Z``, ``P`` (a Sylow p-subgroup) or ``<type>#k``."""
    if isinstance(spec, list):
        if not all(isinstance(x, int) for x in spec):
            raise ValidationError(f"subgroup element list must contain integers: {spec!r}")
        return G.subgroup(spec)
    if not isinstance(spec, str):
        raise ValidationError(f"bad subgroup spec {spec!r}")
    if spec == "1":
        return G.trivial_subgroup
    if spec == "G":
        return G.whole
    if spec == "Z":
        return center(G)
    if spec == "P":
        return sylow_subgroup(G, p)
    m = _NAMED.match(spec)
    if not m:
        raise ValidationError(f"bad subgroup spec {spec!r}")
    want = _norm(m.group("name"))
    matches = [H for H in all_subgroups(G) if _norm(iso_type(H).name) == want]
    if not matches:
        raise ValidationError(f"no subgroup of type {m.group('name')!r}")
    if m.group("k") is None:
        if len(matches) > 1:
            raise ValidationError(
                f"subgroup spec {spec!r} is ambiguous ({len(matches)} matches); use {spec}#k"
            )
        return matches[0]
    k = int(m.group("k"))
    if not 1 <= k <= len(matches):
        raise ValidationError(f"{spec!r}: index out of range 1..{len(matches)}")
    return matches[k - 1]


def build_complex(spec: ComplexSpec) -> PermComplex:
    """Realize a spec; equivariance and ``d^2 = 0`` are checked."""
    G = resolve_group(spec.group)
    F = PrimeField(spec.prime)
    if not spec.terms:
        return PermComplex(G, F, 0, [], [])
    lo, hi = spec.terms[0][0], spec.terms[-1][0]
    by_degree = dict(spec.terms)
    terms = []
    for d in range(lo, hi + 1):
        orbits = [coset_gset(G, resolve_subgroup(G, o, spec.prime)) for o in by_degree.get(d, [])]
        terms.append(disjoint_union(orbits, G))
    given = dict(spec.differentials)
    for d in given:
        if not lo < d <= hi:
            raise ValidationError(f"differential d_{d} lies outside the degree range {lo}..{hi}")
    diffs = []
    for d in range(lo + 1, hi + 1):
        shape = (terms[d - 1 - lo].size, terms[d - lo].size)
        if d in given:
            m = np.array(given[d], dtype=np.int64)
            if m.size == 0:
                m = np.zeros(shape, dtype=np.int64)
            if m.shape != shape:
                raise ValidationError(f"d_{d} must have shape {shape[0]}x{shape[1]}, got {'x'.join(map(str, m.shape))}")
        else:
            m = np.zeros(shape, dtype=np.int64)
        diffs.append(m)
    return PermComplex(G, F, lo, terms, diffs)


def load_complex(path: Union[str, Path]) -> PermComplex:
    return build_complex(load_spec(path))


def shipped_complexes_dir() -> Path:
    from importlib import resources

    return Path(str(resources.files("stperm") / "data" / "complexes"))


# ---------------------------------------------------------------------------
# reports


def subgroup_json(H: Subgroup) -> dict:
    return {"elements": list(H.elements), "order": H.order, "type": str(iso_type(H))}


def profile_document(C: PermComplex, profile) -> dict:
    from .groups import conjugacy_classes_of_p_subgroups

    classes = conjugacy_classes_of_p_subgroups(C.group, C.field.p)
    rows = []
    for (H, status), cls in zip(profile.entries, classes):
        rows.append({"subgroup": list(H.elements), "order": H.order, "class_size": len(cls), "status": status})
    hom = homology(C)
    return {
        "schema": REPORT_SCHEMA,
        "command": "eqperf",
        "group": group_label(C.group),
        "prime": C.field.p,
        "degrees": [C.lo, C.hi] if C.terms else [],
        "term_sizes": {str(d): X.size for d, X in zip(C.degrees, C.terms)},
        "homology": {str(d): v for d, v in sorted(hom.dims.items())},
        "acyclic": hom.is_zero(),
        "perfect": profile.perfect_at_trivial,
        "eq_perf": profile.eq_perf,
        "profile": rows,
    }


def complex_to_spec(C: PermComplex, group: Union[str, dict]) -> ComplexSpec:
    """Rewrite ``C`` in the coset basis of its orbits and describe it as a spec.

    Each orbit with least point ``x`` and stabilizer ``K`` becomes ``G/K``;
    the coset ``tK`` corresponds to the point ``t.x``.
    """
    from .gsets import left_transversal

    perms = []
    terms = []
    for d, X in zip(C.degrees, C.terms):
        orbits, order = [], []
        for x, K in X.orbits:
            reps, _ = left_transversal(K)
            order.extend(int(X.action[t, x]) for t in reps)
            if K.order == 1:
                orbits.append("1")
            elif K.order == X.group.order:
                orbits.append("G")
            else:
                orbits.append(list(K.elements))
        perms.append(np.array(order, dtype=np.int64))
        terms.append((d, orbits))
    diffs = []
    for i, m in enumerate(C.diffs):
        new = m[np.ix_(perms[i], perms[i + 1])]
        diffs.append((C.lo + i + 1, new.tolist()))
    return ComplexSpec(C.field.p, group, terms, diffs)
