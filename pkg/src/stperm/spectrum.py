"""Finite spectra for cyclic p-groups and stratification skeletons in general.

Every conjugacy class of p-subgroups ``H`` contributes one stratum, the
spectrum of the derived category of ``W_G(H)``, with a single closed point
``M(H)``.  A stratum is

* one point when p does not divide ``|W_G(H)|``;
* a two-point Sierpinski space when a Sylow subgroup of ``W_G(H)`` is
  cyclic or generalized quaternion;
* otherwise an infinite stratum recorded only as an extended projective space
  of dimension ``p-rank - 1``.

Specializations between different strata are only produced for cyclic
p-groups, where the whole order is known.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

from .groups import (
    FiniteGroup,
    conjugacy_classes_of_p_subgroups,
    iso_type,
    p_rank,
    sylow_subgroup,
    weyl_group,
)
from .sections import UnionFind, section_graph

SCHEMA = "spectrum.v1"

CLOSED = "closed"
GENERIC = "generic"
STRATUM = "stratum"  # symbolic stand-in for an infinite stratum

POINT = "point"
SIERPINSKI = "sierpinski"
PROJECTIVE = "projective"


@dataclass
class SpectrumPoint:
    id: int
    label: str
    kind: str
    stratum: int


@dataclass
class SpectrumPoset:
    """Points with specialization pairs ``(a, b)``: ``b`` lies in the closure of ``a``."""

    points: list[SpectrumPoint]
    order: list[tuple[int, int]]
    complete: bool  # whether the order lists every specialization between points

    def closed_points(self) -> list[SpectrumPoint]:
        return [q for q in self.points if q.kind == CLOSED]

    def leq(self, a: int, b: int) -> bool:
        """``a`` specializes to ``b`` (reflexive, transitive)."""
        if a == b:
            return True
        frontier, seen = [a], {a}
        while frontier:
            x = frontier.pop()
            for s, t in self.order:
                if s == x and t not in seen:
                    if t == b:
                        return True
                    seen.add(t)
                    frontier.append(t)
        return False

    def is_partial_order(self) -> bool:
        ids = [q.id for q in self.points]
        return not any(a != b and self.leq(a, b) and self.leq(b, a) for a in ids for b in ids)

    def puncture(self) -> "SpectrumPoset":
        keep = {q.id for q in self.points if q.kind != CLOSED}
        return SpectrumPoset(
            [q for q in self.points if q.id in keep],
            [(a, b) for a, b in self.order if a in keep and b in keep],
            self.complete,
        )

    def components(self) -> list[list[int]]:
        idx = {q.id: i for i, q in enumerate(self.points)}
        uf = UnionFind(len(self.points))
        for a, b in self.order:
            uf.union(idx[a], idx[b])
        return [[self.points[i].id for i in c] for c in uf.groups()]


def cyclic_spectrum(n: int, p: int) -> SpectrumPoset:
    """The ``2n+1``-point space of ``C_{p^n}``.

    ``H_i`` is the subgroup of index ``p^i``; closed points ``M(H_0..H_n)``,
    generic points ``gen(H_1..H_n)``, with ``gen(H_i)`` specializing to
    ``M(H_{i-1})`` and ``M(H_i)``.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    points = [SpectrumPoint(0, "M(H_0)", CLOSED, 0)]
    order = []
    for i in range(1, n + 1):
        g = SpectrumPoint(len(points), f"gen(H_{i})", GENERIC, i)
        m = SpectrumPoint(len(points) + 1, f"M(H_{i})", CLOSED, i)
        order += [(g.id, g.id - 1), (g.id, m.id)]
        points += [g, m]
    return SpectrumPoset(points, order, complete=True)


# ---------------------------------------------------------------------------
# skeletons


@dataclass
class StratumRecord:
    index: int
    representative: tuple[int, ...]
    class_size: int
    weyl_label: str
    weyl_order: int
    sylow_of_weyl: str
    p_rank: int
    kind: str  # point | sierpinski | projective
    closed_label: str

    @property
    def dimension(self) -> Optional[int]:
        return self.p_rank - 1 if self.kind == PROJECTIVE else None

    @property
    def descriptor(self) -> str:
        if self.kind == POINT:
            return "1 point"
        if self.kind == SIERPINSKI:
            return "2 points"
        return f"infinite, extended projective of dimension {self.p_rank - 1}"

    @property
    def generic_label(self) -> Optional[str]:
        if self.kind == SIERPINSKI:
            return f"gen(H{self.index})"
        if self.kind == PROJECTIVE:
            return f"P^{self.p_rank - 1}(H{self.index})"
        return None


@dataclass
class StratumSkeleton:
    group: FiniteGroup
    p: int
    strata: list[StratumRecord]

    @property
    def closed_point_count(self) -> int:
        return len(self.strata)


@dataclass
class PuncturedSkeleton:
    skeleton: StratumSkeleton
    survivors: list[StratumRecord]
    components: list[list[int]] = field(default_factory=list)  # stratum indices per component

    def summary(self, component: int) -> str:
        members = [s for s in self.survivors if s.index in self.components[component]]
        return survivor_summary(members)


def survivor_summary(members: list[StratumRecord]) -> str:
    parts = [f"P^{s.p_rank - 1}" for s in members if s.kind == PROJECTIVE]
    pts = sum(1 for s in members if s.kind == SIERPINSKI)
    if pts:
        parts.append(f"{pts} point" + ("s" if pts > 1 else ""))
    return " plus ".join(parts) if parts else "empty"


def skeleton(G: FiniteGroup, p: int) -> StratumSkeleton:
    from .catalog import group_label

    strata = []
    for k, cls in enumerate(conjugacy_classes_of_p_subgroups(G, p)):
        H = cls[0]
        W = weyl_group(G, H).group
        S = sylow_subgroup(W, p)
        r = p_rank(S, p) if S.order > 1 else 0
        t = iso_type(S)
        if S.order == 1:
            kind = POINT
        elif t.kind in ("cyclic", "generalized_quaternion"):
            kind = SIERPINSKI
        else:
            kind = PROJECTIVE
        strata.append(
            StratumRecord(
                index=k,
                representative=H.elements,
                class_size=len(cls),
                weyl_label=group_label(W),
                weyl_order=W.order,
                sylow_of_weyl=str(t),
                p_rank=r,
                kind=kind,
                closed_label=f"M(H{k})",
            )
        )
    return StratumSkeleton(G, p, strata)


def puncture(sk: StratumSkeleton) -> PuncturedSkeleton:
    """Drop closed points; survivors are grouped by section-graph component.

    A surviving stratum ``H`` is placed in the component containing the
    sections whose bottom subgroup is conjugate to ``H``.
    """
    G, p = sk.group, sk.p
    survivors = [s for s in sk.strata if s.kind != POINT]
    graph = section_graph(G, p)
    classes = conjugacy_classes_of_p_subgroups(G, p)
    class_of: dict[int, int] = {}
    for k, cls in enumerate(classes):
        for H in cls:
            class_of[H.mask] = k
    comp_strata: list[set[int]] = [set() for _ in graph.components]
    for c, members in enumerate(graph.components):
        for i in members:
            comp_strata[c].add(class_of[graph.nodes[i].K.mask])
    surviving = {s.index for s in survivors}
    components = [sorted(cs & surviving) for cs in comp_strata]
    return PuncturedSkeleton(sk, survivors, components)


def skeleton_poset(sk: StratumSkeleton) -> SpectrumPoset:
    """Points of the skeleton with the specializations inside each stratum.

    For a cyclic p-group the cross-stratum specializations are added as well,
    giving the full finite spectrum.
    """
    points: list[SpectrumPoint] = []
    order: list[tuple[int, int]] = []
    closed_id: dict[int, int] = {}
    for s in sk.strata:
        c = SpectrumPoint(len(points), s.closed_label, CLOSED, s.index)
        points.append(c)
        closed_id[s.index] = c.id
        if s.kind != POINT:
            g = SpectrumPoint(len(points), s.generic_label, GENERIC if s.kind == SIERPINSKI else STRATUM, s.index)
            points.append(g)
            order.append((g.id, c.id))
    t = iso_type(sk.group)
    cyclic_p_group = t.kind in ("cyclic", "trivial") and t.p in (None, sk.p)
    if cyclic_p_group:
        # classes are the chain 1 < C_p < ... ordered by size; gen(H) also specializes to M of the next one
        for s in sk.strata:
            if s.kind == SIERPINSKI:
                gid = next(q.id for q in points if q.stratum == s.index and q.kind == GENERIC)
                order.append((gid, closed_id[s.index + 1]))
        order.sort()
    return SpectrumPoset(points, order, complete=cyclic_p_group)


# ---------------------------------------------------------------------------
# emitters


def _dot_escape(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"')


def emit_dot(obj, title: str = "spectrum") -> str:
    """Graphviz text for a poset, or for a skeleton (clustered by punctured component)."""
    if isinstance(obj, SpectrumPoset):
        return _poset_dot(obj, title, clusters=None)
    if isinstance(obj, StratumSkeleton):
        P = puncture(obj)
        return _poset_dot(skeleton_poset(obj), title, clusters=P.components)
    raise TypeError(f"cannot render {type(obj).__name__}")


def _poset_dot(P: SpectrumPoset, title: str, clusters) -> str:
    lines = [f'digraph "{_dot_escape(title)}" {{', "  rankdir=BT;", '  node [fontname="Helvetica"];']

    def node(q: SpectrumPoint) -> str:
        if q.kind == CLOSED:
            style = 'shape=box, style=filled, fillcolor="#d0d0d0"'
        elif q.kind == STRATUM:
            style = "shape=ellipse, style=dashed"
        else:
            style = "shape=ellipse"
        return f'  n{q.id} [label="{_dot_escape(q.label)}", {style}];'

    if clusters is None:
        lines += [node(q) for q in P.points]
    else:
        placed: set[int] = set()
        for c, strata in enumerate(clusters):
            lines.append(f"  subgraph cluster_{c} {{")
            lines.append(f'    label="component {c}";')
            for q in P.points:
                if q.kind != CLOSED and q.stratum in strata:
                    lines.append("  " + node(q))
                    placed.add(q.id)
            lines.append("  }")
        lines += [node(q) for q in P.points if q.id not in placed]
    lines += [f"  n{a} -> n{b};" for a, b in P.order]
    lines.append("}")
    return "\n".join(lines) + "\n"


def poset_document(P: SpectrumPoset, group: str, prime: int, strata=None) -> dict:
    comps = P.puncture().components()
    return {
        "schema": SCHEMA,
        "group": group,
        "prime": prime,
        "strata": strata or [],
        "points": [{"id": q.id, "label": q.label, "kind": q.kind, "stratum": q.stratum} for q in P.points],
        "order": [[a, b] for a, b in P.order],
        "order_complete": P.complete,
        "components": [{"id": i, "points": c} for i, c in enumerate(comps)],
    }


def skeleton_document(sk: StratumSkeleton) -> dict:
    from .catalog import group_label

    P = skeleton_poset(sk)
    punct = puncture(sk)
    strata = []
    for s in sk.strata:
        strata.append(
            {
                "index": s.index,
                "subgroup": list(s.representative),
                "order": len(s.representative),
                "class_size": s.class_size,
                "weyl_group": s.weyl_label,
                "weyl_order": s.weyl_order,
                "sylow_of_weyl": s.sylow_of_weyl,
                "p_rank": s.p_rank,
                "kind": s.kind,
                "dimension": s.dimension,
                "size": s.descriptor,
                "closed_point": s.closed_label,
                "generic_point": s.generic_label,
            }
        )
    doc = poset_document(P, group_label(sk.group), sk.p, strata)
    doc["components"] = [
        {
            "id": c,
            "strata": members,
            "survivors": punct.summary(c),
        }
        for c, members in enumerate(punct.components)
    ]
    return doc


def emit_json(obj, group: str = "", prime: int = 0) -> str:
    if isinstance(obj, StratumSkeleton):
        doc = skeleton_document(obj)
    elif isinstance(obj, SpectrumPoset):
        doc = poset_document(obj, group, prime)
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"
