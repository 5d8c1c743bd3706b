from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles as O
from stperm.catalog import catalog, catalog_names
from stperm.errors import ResourceLimitError, ValidationError
from stperm.groups import (
    FiniteGroup,
    all_subgroups,
    are_isomorphic,
    center,
    centralizer,
    class_representative,
    conjugacy_classes_of_p_subgroups,
    conjugacy_classes_of_subgroups,
    conjugates,
    cyclic_group,
    direct_product,
    frattini_subgroup,
    globalize,
    group_from_permutations,
    has_unique_index_p_subgroup,
    has_unique_order_p_subgroup,
    iso_type,
    localize,
    maximal_subgroups,
    normalizer,
    order_limit,
    p_rank,
    prime_power,
    sylow_subgroup,
    sylow_subgroups,
    transporter,
    weyl_group,
)

# (name, number of subgroups, {p: number of classes of p-subgroups}); brute-force derived
SUBGROUP_CENSUS = [
    ("C2", 2, {2: 2}),
    ("V4", 5, {2: 5}),
    ("S3", 6, {2: 2, 3: 2}),
    ("C2xC2xC2", 16, {2: 16}),
    ("C2xC4", 8, {2: 8}),
    ("C8", 4, {2: 4}),
    ("D8", 10, {2: 8}),
    ("Q8", 6, {2: 6}),
    ("C3xC3", 6, {3: 6}),
    ("D10", 8, {2: 2, 5: 2}),
    ("A4", 10, {2: 3, 3: 2}),
    ("Dic12", 8, {2: 3, 3: 2}),
    ("C2xD8", 35, {2: 27}),
    ("D16", 19, {2: 11}),
    ("M16", 11, {2: 10}),
    ("Q16", 11, {2: 9}),
    ("SD16", 15, {2: 10}),
    ("S4", 30, {2: 7, 3: 2}),
    ("SL2F3", 15, {2: 4, 3: 2}),
    ("C9semiC3", 10, {3: 8}),
    ("He3", 19, {3: 11}),
    ("D32", 36, {2: 14}),
    ("Q32", 20, {2: 12}),
]

SMALL = [n for n, _, _ in SUBGROUP_CENSUS if catalog(n).order <= 16]


@pytest.mark.parametrize("name,count,classes", SUBGROUP_CENSUS)
def test_subgroup_census(name, count, classes):
    G = catalog(name)
    assert len(all_subgroups(G)) == count
    for p, k in classes.items():
        assert len(conjugacy_classes_of_p_subgroups(G, p)) == k


@pytest.mark.parametrize("name", SMALL)
def test_subgroups_match_closure_oracle(name):
    G = catalog(name)
    assert {frozenset(H.elements) for H in all_subgroups(G)} == O.subgroups(G.table.tolist())


def test_table_validation():
    with pytest.raises(ValidationError):
        FiniteGroup([[0, 1], [1, 1]])
    with pytest.raises(ValidationError):
        FiniteGroup([[1, 0], [0, 1]])
    # Latin square with identity 0 that is not associative
    bad = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]
    with pytest.raises(ValidationError):
        FiniteGroup(bad)


def test_subgroup_rejects_non_subgroups():
    G = catalog("S3")
    with pytest.raises(ValidationError):
        G.subgroup([0, 1, 2])


def test_order_limit_guards_enumeration():
    G = cyclic_group(400)
    with pytest.raises(ResourceLimitError):
        all_subgroups(G)
    with order_limit(None):
        assert len(all_subgroups(G)) == 15


def test_prime_power():
    assert prime_power(1) is None
    assert prime_power(8) == (2, 3)
    assert prime_power(12) is None
    assert prime_power(625) == (5, 4)


@pytest.mark.parametrize(
    "name,kind,n",
    [
        ("C1", "trivial", 0),
        ("C8", "cyclic", 3),
        ("V4", "elementary_abelian", 2),
        ("C2xC2xC2", "elementary_abelian", 3),
        ("Q8", "generalized_quaternion", 3),
        ("Q16", "generalized_quaternion", 4),
        ("Q32", "generalized_quaternion", 5),
        ("D8", "dihedral", 3),
        ("D16", "dihedral", 4),
        ("SD16", "other", 4),
        ("M16", "other", 4),
        ("C2xQ8", "other", 4),
        ("He3", "other", 3),
    ],
)
def test_iso_type(name, kind, n):
    t = iso_type(catalog(name))
    assert (t.kind, t.n) == (kind, n)


def test_iso_type_names():
    assert iso_type(catalog("V4")).name == "V_4"
    assert iso_type(catalog("Q8")).name == "Q_8"
    assert iso_type(catalog("C3xC3")).name == "C_3^2"
    assert iso_type(catalog("S3")).name == "D_6"


def test_quaternion_has_a_unique_involution_which_is_central():
    for name in ("Q8", "Q16", "Q32"):
        G = catalog(name)
        inv = [g for g in range(G.order) if G.element_orders[g] == 2]
        assert len(inv) == 1
        assert inv[0] in center(G).elements


@pytest.mark.parametrize("name", ["S3", "D8", "Q8", "A4", "S4", "SL2F3"])
def test_conjugacy_classes_partition_the_subgroups(name):
    G = catalog(name)
    classes = conjugacy_classes_of_subgroups(G)
    flat = [H.mask for c in classes for H in c]
    assert sorted(flat) == sorted(H.mask for H in all_subgroups(G))
    for c in classes:
        assert c[0] is class_representative(c[0]) or c[0].mask == class_representative(c[0]).mask
        assert len(c) * normalizer(G, c[0]).order == G.order
    assert classes[0][0].order == 1


def test_conjugation_conventions():
    G = catalog("S3")
    H = next(K for K in all_subgroups(G) if K.order == 2 and not K.is_normal_in())
    for g in range(G.order):
        gH = H.conjugate(g)
        assert set(gH.elements) == {G.mul(G.mul(g, h), G.inverse(g)) for h in H.elements}
        Hg = H.conjugate_right(g)
        assert set(Hg.elements) == {G.mul(G.mul(G.inverse(g), h), g) for h in H.elements}
    assert len(conjugates(H)) == 3


@pytest.mark.parametrize("name,p", [("S4", 2), ("S4", 3), ("A4", 2), ("SL2F3", 2), ("D10", 5), ("He3", 3)])
def test_sylow(name, p):
    G = catalog(name)
    P = sylow_subgroup(G, p)
    n = G.order
    while n % p == 0:
        n //= p
    assert P.order * n == G.order
    k = len(sylow_subgroups(G, p))
    assert k % p == 1 and G.order % k == 0


def test_sylow_of_p_prime_order_is_trivial():
    assert sylow_subgroup(catalog("S3"), 5).order == 1


@pytest.mark.parametrize("name,z", [("D8", 2), ("Q8", 2), ("S4", 1), ("A4", 1), ("SL2F3", 2), ("He3", 3)])
def test_center_order(name, z):
    assert center(catalog(name)).order == z


@pytest.mark.parametrize("name,p,n", [("A4", 2, 12), ("A4", 3, 3), ("S4", 3, 6), ("S4", 2, 8), ("SL2F3", 3, 6)])
def test_sylow_normalizer_order(name, p, n):
    G = catalog(name)
    assert normalizer(G, sylow_subgroup(G, p)).order == n


def test_centralizer_contains_center():
    G = catalog("D8")
    for H in all_subgroups(G):
        C = centralizer(G, H)
        assert center(G) <= C
        assert C <= normalizer(G, H)


@pytest.mark.parametrize(
    "name,order", [("V4", 1), ("C8", 4), ("D8", 2), ("Q8", 2), ("C2xC4", 2), ("He3", 3), ("C4xC4", 4)]
)
def test_frattini(name, order):
    G = catalog(name)
    Phi = frattini_subgroup(G)
    assert Phi.order == order
    mask = (1 << G.order) - 1
    for M in maximal_subgroups(G):
        mask &= M.mask
    assert Phi.mask == mask


def test_frattini_of_subgroup_lives_in_parent():
    G = catalog("S4")
    P = sylow_subgroup(G, 2)
    Phi = frattini_subgroup(P)
    assert Phi.parent is G and Phi.order == 2 and Phi <= P


def test_weyl_group_orders():
    G = catalog("S4")
    for cls in conjugacy_classes_of_subgroups(G):
        H = cls[0]
        W = weyl_group(G, H)
        assert W.group.order * H.order == normalizer(G, H).order
    V = catalog("V4")
    assert weyl_group(V, V.trivial_subgroup).group.order == 4
    assert weyl_group(V, V.trivial_subgroup) is weyl_group(V, V.trivial_subgroup)


def test_unique_subgroup_predicates():
    assert has_unique_order_p_subgroup(catalog("Q8"), 2)
    assert not has_unique_order_p_subgroup(catalog("D8"), 2)
    assert has_unique_index_p_subgroup(catalog("C8"), 2)
    assert not has_unique_index_p_subgroup(catalog("V4"), 2)


@pytest.mark.parametrize("name,p,r", [("V4", 2, 2), ("Q8", 2, 1), ("D8", 2, 2), ("C2xC2xC2", 2, 3), ("He3", 3, 2), ("S4", 2, 2)])
def test_p_rank(name, p, r):
    assert p_rank(catalog(name), p) == r


def test_are_isomorphic():
    assert are_isomorphic(catalog("S3"), catalog("D10")) is False
    assert are_isomorphic(direct_product(cyclic_group(2), cyclic_group(4)), catalog("C2xC4"))
    assert not are_isomorphic(catalog("D8"), catalog("Q8"))


def test_group_from_permutations_composition():
    # (0 1) and (0 1 2) generate S3
    G = group_from_permutations([[1, 0, 2], [1, 2, 0]])
    assert G.order == 6 and not G.is_abelian
    assert O.order_counter(G.table.tolist()) == {1: 1, 2: 3, 3: 2}


def test_localize_globalize_round_trip():
    G = catalog("S4")
    P = sylow_subgroup(G, 2)
    for L in all_subgroups(G):
        if L <= P:
            loc = localize(L, P)
            assert loc.parent is P.as_group()
            assert globalize(loc).mask == L.mask


def test_transporter():
    G = catalog("S4")
    P = sylow_subgroup(G, 2)
    for H in all_subgroups(G):
        if H <= P:
            T = transporter(H, P)
            assert set(T) == {g for g in range(G.order) if H.conjugate_right(g) <= P}
            assert normalizer(G, P).order <= len(T) or H.order == P.order


@given(st.sampled_from(["S3", "D8", "Q8", "A4", "C2xC4", "SD16"]), st.data())
def test_group_axioms_on_random_triples(name, data):
    G = catalog(name)
    a, b, c = (data.draw(st.integers(0, G.order - 1)) for _ in range(3))
    assert G.mul(G.mul(a, b), c) == G.mul(a, G.mul(b, c))
    assert G.mul(a, G.inverse(a)) == 0
    assert G.power(a, G.element_order(a)) == 0


@given(st.sampled_from(["S3", "D8", "Q8", "A4", "S4"]), st.data())
def test_generated_subgroup_is_closure(name, data):
    G = catalog(name)
    gens = data.draw(st.lists(st.integers(0, G.order - 1), max_size=3))
    H = G.generated(gens)
    assert frozenset(H.elements) == O.closure(G.table.tolist(), gens)


def test_catalog_groups_satisfy_the_axioms():
    for name in catalog_names():
        G = catalog(name)
        if G.order <= 81:
            FiniteGroup(G.table)  # full validation
