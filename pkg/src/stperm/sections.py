"""Elementary abelian sections, bottleneck subgroups and decomposability verdicts.

A section ``(H, K)`` has ``K`` normal in the p-subgroup ``H`` with ``H/K``
elementary abelian.  A morphism ``(H, K) -> (H', K')`` is an element ``g``
with ``K' <= K^g`` and ``H^g <= H'`` where ``X^g = g^-1 X g``.  Witnesses
compose by multiplication: ``g : s -> t`` and ``g' : t -> u`` give
``g g' : s -> u``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Union

from .errors import RouteMismatchError, ValidationError
from .groups import (
    FiniteGroup,
    Subgroup,
    _masks_of_rows,
    all_subgroups,
    center,
    frattini_subgroup,
    iso_type,
    p_subgroups,
    prime_power,
    sylow_subgroup,
    weyl_group,
)


class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))
        self.rank = [0] * n

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.rank[ra] < self.rank[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        if self.rank[ra] == self.rank[rb]:
            self.rank[ra] += 1
        return True

    def groups(self) -> list[list[int]]:
        out: dict[int, list[int]] = {}
        for x in range(len(self.parent)):
            out.setdefault(self.find(x), []).append(x)
        return sorted(out.values(), key=lambda c: c[0])


@dataclass(frozen=True, eq=False)
class SectionObject:
    H: Subgroup
    K: Subgroup
    p: int

    @property
    def rank(self) -> int:
        return round(math.log(self.H.order // self.K.order, self.p)) if self.H.order > self.K.order else 0

    @property
    def is_trivial(self) -> bool:
        return self.H.order == self.K.order

    @property
    def key(self) -> tuple:
        return (self.H.order, self.H.elements, self.K.order, self.K.elements)

    def quotient(self):
        from .groups import quotient_group

        return quotient_group(self.H, self.K)

    def __repr__(self) -> str:
        return f"Section(H={list(self.H.elements)}, K={list(self.K.elements)})"


@dataclass(frozen=True)
class SectionMorphismWitness:
    source: SectionObject
    target: SectionObject
    g: int


def is_elementary_abelian_quotient(H: Subgroup, K: Subgroup, p: int) -> bool:
    """``H/K`` has exponent dividing p and is abelian (checked on generators of H)."""
    G = H.parent
    gens = H.gens
    for a in gens:
        if G.power(a, p) not in K:
            return False
    for i, a in enumerate(gens):
        for b in gens[i + 1 :]:
            comm = G.mul(G.mul(a, b), G.mul(G.inverse(a), G.inverse(b)))
            if comm not in K:
                return False
    return True


def enumerate_sections(G: FiniteGroup, p: int, include_trivial: bool = True) -> list[SectionObject]:
    """All sections of p-subgroups, ordered by (H, K)."""
    key = ("sections", p)
    cached = G._cache.get(key)
    if cached is None:
        subs = p_subgroups(G, p)
        cached = []
        for H in subs:
            for K in subs:
                if K.order > H.order:
                    break
                if K <= H and K.is_normal_in(H) and is_elementary_abelian_quotient(H, K, p):
                    cached.append(SectionObject(H, K, p))
        cached.sort(key=lambda s: s.key)
        G._cache[key] = cached
    if include_trivial:
        return list(cached)
    return [s for s in cached if not s.is_trivial]


def _right_conjugate_masks(S: Subgroup) -> list[int]:
    """``mask(S^g)`` for every ``g``."""
    G = S.parent
    imgs = G.conj_table[G.inv][:, S.elements_array]  # row g: g^-1 s g
    return _masks_of_rows(imgs, G.order)


def _is_morphism(src_H: int, src_K: int, dst_H: int, dst_K: int) -> bool:
    # K' <= K^g and H^g <= H'
    return dst_K & ~src_K == 0 and src_H & ~dst_H == 0


def find_morphism(src: SectionObject, dst: SectionObject) -> Optional[SectionMorphismWitness]:
    """First ``g`` in element order with ``K' <= K^g`` and ``H^g <= H'``."""
    if src.H.parent is not dst.H.parent:
        raise ValidationError("sections of different groups")
    if src.H.order > dst.H.order or dst.K.order > src.K.order:
        return None
    Hg = _right_conjugate_masks(src.H)
    Kg = _right_conjugate_masks(src.K)
    for g in range(src.H.parent.order):
        if _is_morphism(Hg[g], Kg[g], dst.H.mask, dst.K.mask):
            return SectionMorphismWitness(src, dst, g)
    return None


def compose_witnesses(first: SectionMorphismWitness, second: SectionMorphismWitness) -> SectionMorphismWitness:
    """``first : s -> t`` followed by ``second : t -> u`` is witnessed by ``g g'``."""
    if first.target is not second.source and first.target.key != second.source.key:
        raise ValidationError("witnesses are not composable")
    G = first.source.H.parent
    return SectionMorphismWitness(first.source, second.target, G.mul(first.g, second.g))


def is_witness(src: SectionObject, dst: SectionObject, g: int) -> bool:
    Hg = src.H.conjugate_right(g)
    Kg = src.K.conjugate_right(g)
    return dst.K <= Kg and Hg <= dst.H


@dataclass
class SectionGraph:
    group: FiniteGroup
    p: int
    nodes: list[SectionObject]
    edges: list[tuple[int, int, int]]  # (source, target, witness) for i < j, either direction
    components: list[list[int]]

    def component_of(self, node: int) -> int:
        for c, members in enumerate(self.components):
            if node in members:
                return c
        raise KeyError(node)

    def node_index(self, H: Subgroup, K: Subgroup) -> int:
        for i, s in enumerate(self.nodes):
            if s.H.mask == H.mask and s.K.mask == K.mask:
                return i
        raise KeyError((H, K))


def section_graph(G: FiniteGroup, p: int) -> SectionGraph:
    """Nontrivial sections; an edge wherever a morphism exists in some direction."""
    key = ("section_graph", p)
    cached = G._cache.get(key)
    if cached is not None:
        return cached
    nodes = enumerate_sections(G, p, include_trivial=False)
    Hm = [_right_conjugate_masks(s.H) for s in nodes]
    Km = [_right_conjugate_masks(s.K) for s in nodes]
    uf = UnionFind(len(nodes))
    edges = []
    order = range(G.order)
    for i, a in enumerate(nodes):
        for j in range(i + 1, len(nodes)):
            b = nodes[j]
            w = next((g for g in order if _is_morphism(Hm[i][g], Km[i][g], b.H.mask, b.K.mask)), None)
            if w is not None:
                edges.append((i, j, w))
                uf.union(i, j)
                continue
            w = next((g for g in order if _is_morphism(Hm[j][g], Km[j][g], a.H.mask, a.K.mask)), None)
            if w is not None:
                edges.append((j, i, w))
                uf.union(i, j)
    graph = SectionGraph(G, p, nodes, edges, uf.groups())
    G._cache[key] = graph
    return graph


def component_count(G: FiniteGroup, p: int) -> int:
    return len(section_graph(G, p).components)


# ---------------------------------------------------------------------------
# bottleneck analysis


def _ambient(P: Union[FiniteGroup, Subgroup]) -> tuple[FiniteGroup, Subgroup]:
    if isinstance(P, Subgroup):
        return P.parent, P
    return P, P.whole


def _p_of(P: Subgroup) -> int:
    n = P.order
    return next(d for d in range(2, n + 1) if n % d == 0)


def _is_cyclic(S: Subgroup) -> bool:
    return int(S.parent.element_orders[S.elements_array].max()) == S.order


def index_p_overgroups(P: Subgroup, H: Subgroup, p: int) -> list[Subgroup]:
    G = P.parent
    return [K for K in all_subgroups(G) if K.order == H.order * p and H <= K and K <= P]


@dataclass(frozen=True)
class SurroundingSection:
    K: Subgroup
    H: Subgroup
    rank: int


def surrounding_section(
    P: Union[FiniteGroup, Subgroup], H: Subgroup, strategy: str = "frattini"
) -> Optional[SurroundingSection]:
    """A section ``K' < H < H'`` inside ``P`` with ``H'/K'`` elementary abelian.

    The default strategy takes a non-cyclic ``H'`` containing ``H`` with index
    p and its Frattini subgroup; if that fails the search is exhaustive.
    """
    G, Ps = _ambient(P)
    if not (H < Ps) or H.order == 1:
        raise ValidationError("need a proper nontrivial subgroup")
    p = _p_of(Ps)
    if strategy == "frattini":
        for Hp in index_p_overgroups(Ps, H, p):
            if _is_cyclic(Hp):
                continue
            Kp = frattini_subgroup(Hp)
            if Kp < H:
                found = SurroundingSection(Kp, Hp, round(math.log(Hp.order // Kp.order, p)))
                assert found.rank >= 2
                return found
    elif strategy != "exhaustive":
        raise ValueError(f"unknown strategy {strategy!r}")
    subs = [S for S in all_subgroups(G) if S <= Ps]
    for Hp in subs:
        if not H < Hp:
            continue
        for Kp in subs:
            if Kp < H and Kp.is_normal_in(Hp) and is_elementary_abelian_quotient(Hp, Kp, p):
                found = SurroundingSection(Kp, Hp, round(math.log(Hp.order // Kp.order, p)))
                assert found.rank >= 2
                return found
    return None


def bottleneck_subgroups(P: Union[FiniteGroup, Subgroup]) -> list[Subgroup]:
    """Proper nontrivial ``H`` whose index-p overgroups in ``P`` are all cyclic."""
    G, Ps = _ambient(P)
    if Ps.order == 1:
        return []
    p = _p_of(Ps)
    out = []
    for H in all_subgroups(G):
        if H.order == 1 or not H < Ps:
            continue
        if all(_is_cyclic(K) for K in index_p_overgroups(Ps, H, p)):
            out.append(H)
    return out


def bottleneck_holds(P: Union[FiniteGroup, Subgroup]) -> bool:
    return bool(bottleneck_subgroups(P))


# ---------------------------------------------------------------------------
# verdicts

INDECOMPOSABLE = "indecomposable"
CYCLIC_SYLOW = "cyclic_sylow"
QUATERNION_SYLOW = "quaternion_sylow"


@dataclass
class DecompositionVerdict:
    kind: str
    n: Optional[int]
    route_a_count: int
    route_b_count: int
    factors: list[str]
    sylow: Subgroup
    sylow_type: str
    tower: list[Subgroup] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def consistent(self) -> bool:
        return self.route_a_count == self.route_b_count

    @property
    def component_count(self) -> int:
        return self.route_b_count

    @property
    def label(self) -> str:
        return f"{self.kind}({self.n})" if self.n is not None and self.kind != INDECOMPOSABLE else self.kind


def cyclic_tower(P: Subgroup, p: int) -> list[Subgroup]:
    """``H_1 > H_2 > ... > H_n = 1`` with ``|H_i| = |P| / p^i``; unique inside cyclic ``P``."""
    G = P.parent
    n = round(math.log(P.order, p)) if P.order > 1 else 0
    tower = []
    for i in range(1, n + 1):
        order = P.order // p**i
        tower.append(next(S for S in all_subgroups(G) if S.order == order and S <= P))
    return tower


def decomposability_verdict(G: FiniteGroup, p: int, strict: bool = True) -> DecompositionVerdict:
    """Route A from the Sylow type, route B from the section graph; they must agree."""
    from .catalog import group_label

    P = sylow_subgroup(G, p)
    t = iso_type(P)
    notes: list[str] = []
    tower: list[Subgroup] = []
    if P.order == 1:
        kind, n, count, factors = CYCLIC_SYLOW, 0, 0, []
        notes.append(f"p = {p} does not divide |G|: every complex is perfect and the category is zero")
    elif t.kind == "cyclic":
        n = t.n
        kind, count = CYCLIC_SYLOW, n
        tower = cyclic_tower(P, p)
        factors = [f"StMod(k{group_label(weyl_group(G, H).group)})" for H in tower]
        if n >= 2:
            notes.append(
                f"factors listed for i = 1..{n} (H_{n} = 1 contributes StMod(kG)); "
                f"a range ending at i = {n - 1} would give {n - 1} factors against {n} components"
            )
    elif t.kind == "generalized_quaternion":
        kind, n, count = QUATERNION_SYLOW, t.n, 2
        Z = center(P.as_group())
        Zg = G._make_subgroup(P.elements_array[list(Z.elements)])
        tower = [Zg]
        W = weyl_group(G, Zg).group
        factors = [f"StPerm({group_label(W)};k)", f"StMod(k{group_label(G)})"]
    else:
        kind, n, count = INDECOMPOSABLE, None, 1
        factors = [f"StPerm({group_label(G)};k)"]
    route_b = component_count(G, p)
    verdict = DecompositionVerdict(
        kind, n, count, route_b, factors, P, str(t), tower, notes
    )
    if strict and not verdict.consistent:
        raise RouteMismatchError(
            f"{group_label(G)} at p={p}: Sylow type {t} predicts {count} components, "
            f"section graph has {route_b}"
        )
    return verdict


def section_census(G: FiniteGroup, p: int) -> dict[int, int]:
    """Number of nontrivial sections by rank of ``H/K``."""
    out: dict[int, int] = {}
    for s in enumerate_sections(G, p, include_trivial=False):
        out[s.rank] = out.get(s.rank, 0) + 1
    return dict(sorted(out.items()))


def is_p_group(P: Union[FiniteGroup, Subgroup]) -> bool:
    return prime_power(P.order) is not None
