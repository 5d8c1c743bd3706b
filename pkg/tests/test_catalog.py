from __future__ import annotations

import json

import pytest

from stperm.catalog import (
    catalog,
    catalog_dir,
    catalog_names,
    group_from_document,
    group_label,
    metacyclic_group,
)
from stperm.errors import ValidationError
from stperm.groups import all_subgroups, iso_type, sylow_subgroup


def test_catalog_names_sorted_by_order():
    names = catalog_names()
    orders = [catalog(n).order for n in names]
    assert orders == sorted(orders)
    for required in ("Q8", "Q16", "Q32", "SL2F3", "Q8_semidirect_F3sq", "V4", "D8", "D16", "SD16",
                     "A4", "S4", "C2xC4", "C3xC3", "C2xC2xC2", "S3", "C9"):
        assert required in names


def test_lookup_ignores_case_and_underscores():
    assert catalog("q8") is catalog("Q8")
    assert catalog("Q8 semidirect F3sq").order == 72


def test_unknown_group():
    with pytest.raises(ValidationError):
        catalog("no_such_group")


def test_declared_orders_match():
    for path in sorted(catalog_dir().glob("*.json")):
        doc = json.loads(path.read_text())
        assert group_from_document(doc).order == doc["order"]


def test_semidirect_product_has_quaternion_sylow():
    G = catalog("Q8_semidirect_F3sq")
    assert iso_type(sylow_subgroup(G, 2)).kind == "generalized_quaternion"
    assert iso_type(sylow_subgroup(G, 3)).kind == "elementary_abelian"


def test_sl2f3_has_quaternion_sylow():
    assert iso_type(sylow_subgroup(catalog("SL2F3"), 2)).name == "Q_8"


def test_metacyclic_builder():
    Q = metacyclic_group(4, 2, 3, 2)
    assert iso_type(Q).kind == "generalized_quaternion"
    D = metacyclic_group(4, 2, 3, 0)
    assert iso_type(D).kind == "dihedral"
    with pytest.raises(ValidationError):
        metacyclic_group(5, 2, 2, 0)


def test_document_validation():
    with pytest.raises(ValidationError):
        group_from_document({"name": "x"})
    with pytest.raises(ValidationError):
        group_from_document({"name": "x", "order": 3, "generators": [[1, 0]]})
    with pytest.raises(ValidationError):
        group_from_document({"generators": [[1, 0]]})
    G = group_from_document({"name": "t", "table": [[0, 1], [1, 0]]})
    assert G.order == 2


def test_env_var_overrides_catalog(tmp_path, monkeypatch):
    (tmp_path / "tiny.json").write_text(json.dumps({"name": "Tiny", "order": 3, "generators": [[1, 2, 0]]}))
    monkeypatch.setenv("STPERM_CATALOG_DIR", str(tmp_path))
    assert catalog_names() == ["Tiny"]
    assert len(all_subgroups(catalog("tiny"))) == 2
    with pytest.raises(ValidationError):
        catalog("Q8")


def test_group_label():
    assert group_label(catalog("Q8")) == "Q_8"
    V = catalog("S4")
    P = sylow_subgroup(V, 2)
    assert group_label(P.as_group()) == "D_8"
    assert group_label(catalog("SL2F3")) == "SL_2(F_3)"
