from __future__ import annotations

import json

import numpy as np
import pytest

from stperm.catalog import catalog
from stperm.complexes import koszul_object
from stperm.errors import ValidationError
from stperm.formats import (
    ComplexSpec,
    build_complex,
    compact_json,
    complex_to_spec,
    load_complex,
    load_spec,
    resolve_subgroup,
    shipped_complexes_dir,
)
from stperm.gf import PrimeField

SHIPPED = ["cp_acyclic.json", "v4_koszul.json", "kg_free.json"]


def _doc(**over):
    doc = {
        "schema": "complex.v1",
        "prime": 2,
        "group": "C2",
        "terms": [{"degree": 0, "orbits": ["1"]}, {"degree": 1, "orbits": ["1"]}],
        "differentials": [{"degree": 1, "matrix": [[1, 1], [1, 1]]}],
    }
    doc.update(over)
    return doc


@pytest.mark.parametrize("name", SHIPPED)
def test_shipped_complexes_round_trip(name):
    path = shipped_complexes_dir() / name
    spec = load_spec(path)
    C = build_complex(spec)
    again = ComplexSpec.from_document(json.loads(spec.dumps()))
    assert again == spec
    assert build_complex(again) == C
    # rewriting in the coset basis reproduces the same complex
    assert build_complex(complex_to_spec(C, spec.group)) == C


def test_shipped_files_are_compact():
    text = (shipped_complexes_dir() / "cp_acyclic.json").read_text()
    assert '"matrix": [\n' in text and "[1, 1, 1]" in text
    assert text == compact_json(json.loads(text))


def test_inline_group():
    doc = _doc(group={"name": "two", "table": [[0, 1], [1, 0]]})
    C = build_complex(ComplexSpec.from_document(doc))
    assert C.group.order == 2


@pytest.mark.parametrize(
    "change,message",
    [
        ({"schema": "complex.v2"}, "schema"),
        ({"prime": 4}, "prime"),
        ({"group": 3}, "group"),
        ({"terms": [{"degree": 0}]}, "orbits"),
        ({"terms": [{"degree": 0, "orbits": ["1"]}, {"degree": 0, "orbits": ["1"]}]}, "duplicate"),
        ({"differentials": [{"degree": 1, "matrix": [[1, 0], [0, 0]]}]}, "equivariant"),
        ({"differentials": [{"degree": 1, "matrix": [[1, 1]]}]}, "shape"),
        ({"differentials": [{"degree": 5, "matrix": [[1]]}]}, "outside"),
        ({"group": "nope"}, "unknown group"),
    ],
)
def test_validation_errors(change, message):
    with pytest.raises(ValidationError, match=message):
        build_complex(ComplexSpec.from_document(_doc(**change)))


def test_missing_field():
    doc = _doc()
    del doc["terms"]
    with pytest.raises(ValidationError, match="terms"):
        ComplexSpec.from_document(doc)


def test_d_squared_violation_is_a_load_error():
    doc = {
        "prime": 3,
        "group": "C3",
        "terms": [{"degree": d, "orbits": ["G"]} for d in range(3)],
        "differentials": [{"degree": 1, "matrix": [[1]]}, {"degree": 2, "matrix": [[1]]}],
    }
    with pytest.raises(ValidationError, match="!= 0"):
        build_complex(ComplexSpec.from_document(doc))


def test_malformed_json(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{")
    with pytest.raises(ValidationError, match="malformed"):
        load_complex(p)
    with pytest.raises(ValidationError, match="cannot read"):
        load_complex(tmp_path / "missing.json")


def test_subgroup_specs():
    G = catalog("D8")
    assert resolve_subgroup(G, "1", 2).order == 1
    assert resolve_subgroup(G, "G", 2).order == 8
    assert resolve_subgroup(G, "Z", 2).order == 2
    assert resolve_subgroup(G, "P", 2).order == 8
    assert resolve_subgroup(G, "C4", 2).order == 4  # unique cyclic subgroup of order 4
    with pytest.raises(ValidationError, match="ambiguous"):
        resolve_subgroup(G, "V4", 2)
    a, b = resolve_subgroup(G, "V4#1", 2), resolve_subgroup(G, "V_4#2", 2)
    assert a.order == b.order == 4 and a.mask != b.mask
    with pytest.raises(ValidationError, match="out of range"):
        resolve_subgroup(G, "V4#3", 2)
    with pytest.raises(ValidationError):
        resolve_subgroup(G, "Q8", 2)
    with pytest.raises(ValidationError):
        resolve_subgroup(G, [0, 1], 2)
    assert resolve_subgroup(G, list(resolve_subgroup(G, "Z", 2).elements), 2).order == 2


def test_spec_from_generated_complex():
    C = koszul_object(catalog("V4"), PrimeField(2))
    spec = complex_to_spec(C, "V4")
    assert [len(o) for _, o in spec.terms] == [1, 1, 3, 1, 1]
    D = build_complex(spec)
    assert [X.size for X in D.terms] == [X.size for X in C.terms]
    assert np.array_equal(D.diffs[0], np.ones((1, 4), dtype=np.int64))
