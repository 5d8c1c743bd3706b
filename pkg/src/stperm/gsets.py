"""Finite G-sets, permutation modules k(X) and equivariant maps between them.

A G-set stores its action as an integer array ``action[g, x] = g.x``.
A map ``k(X) -> k(Y)`` is a ``|Y| x |X|`` matrix over F_p; it is equivariant
when ``M[g.y, g.x] == M[y, x]`` for all ``g``, ``x``, ``y``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence

import numpy as np

from .errors import NotAPSubgroupError, ValidationError
from .gf import PrimeField
from .groups import (
    FiniteGroup,
    Subgroup,
    class_representative,
    is_p_power,
    weyl_group,
)

EXHAUSTIVE_CHECK_LIMIT = 10**6


class GSet:
    """A finite left G-set."""

    def __init__(self, group: FiniteGroup, action, *, validate: bool = True, origin=None):
        a = np.asarray(action, dtype=np.int64)
        if a.ndim == 1 and a.size == 0:
            a = a.reshape(group.order, 0)
        if a.shape[0] != group.order or a.ndim != 2:
            raise ValidationError("action table needs one row per group element")
        n = a.shape[1]
        if validate and n:
            if a.min() < 0 or a.max() >= n:
                raise ValidationError("action sends a point out of range")
            if not np.array_equal(a[0], np.arange(n)):
                raise ValidationError("identity must act trivially")
            if not np.all(np.sort(a, axis=1) == np.arange(n)):
                raise ValidationError("group elements must act by permutations")
            t = group.table
            for h in group.generators:
                # (g h).x == g.(h.x)
                if not np.array_equal(a[t[:, h]], a[:, a[h]]):
                    raise ValidationError("action is not compatible with multiplication")
        a.setflags(write=False)
        self.group = group
        self.action = a
        self.size = n
        # original point indices when this set arose as a fixed-point set
        self.origin = None if origin is None else np.asarray(origin, dtype=np.int64)
        self._fixed: dict[int, GSet] = {}

    def __repr__(self) -> str:
        return f"GSet(|G|={self.group.order}, size={self.size})"

    def __len__(self) -> int:
        return self.size

    def act(self, g: int, x: int) -> int:
        return int(self.action[g, x])

    def permutation_matrix(self, g: int) -> np.ndarray:
        m = np.zeros((self.size, self.size), dtype=np.int64)
        m[self.action[g], np.arange(self.size)] = 1
        return m

    @cached_property
    def orbits(self) -> list[tuple[int, Subgroup]]:
        """``(least point, stabilizer)`` per orbit, ordered by least point."""
        seen = np.zeros(self.size, dtype=bool)
        out = []
        for x in range(self.size):
            if seen[x]:
                continue
            seen[self.action[:, x]] = True
            stab = np.flatnonzero(self.action[:, x] == x)
            out.append((x, self.group._make_subgroup(stab)))
        return out

    def orbit_of(self, x: int) -> list[int]:
        return sorted(set(self.action[:, x].tolist()))

    def formal(self) -> list[tuple[Subgroup, int]]:
        """The set as a disjoint union of coset sets: (class representative, multiplicity)."""
        counts: Counter = Counter()
        reps: dict[int, Subgroup] = {}
        for _, stab in self.orbits:
            r = class_representative(stab)
            counts[r.mask] += 1
            reps[r.mask] = r
        return sorted(((reps[m], c) for m, c in counts.items()), key=lambda t: t[0].sort_key)

    def is_transitive(self) -> bool:
        return len(self.orbits) == 1

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GSet)
            and other.group == self.group
            and np.array_equal(other.action, self.action)
        )

    def __hash__(self) -> int:
        return hash((self.size, self.action.tobytes()))


def _require_same_group(X: GSet, Y: GSet) -> None:
    if X.group is not Y.group and X.group != Y.group:
        raise ValidationError("G-sets over different groups")


def trivial_gset(G: FiniteGroup, n: int = 1) -> GSet:
    return GSet(G, np.tile(np.arange(n), (G.order, 1)), validate=False)


def empty_gset(G: FiniteGroup) -> GSet:
    return GSet(G, np.zeros((G.order, 0), dtype=np.int64), validate=False)


def coset_gset(G: FiniteGroup, H: Subgroup) -> GSet:
    """Left cosets ``gH`` ordered by least element, acted on by left multiplication."""
    if H.parent is not G and H.parent != G:
        raise ValidationError("subgroup belongs to another group")
    reps, proj = left_transversal(H)
    action = proj[G.table[:, reps]]
    return GSet(G, action, validate=False)


def left_transversal(H: Subgroup) -> tuple[np.ndarray, np.ndarray]:
    """Least elements of the left cosets of ``H`` and the element -> coset map."""
    G = H.parent
    proj = np.full(G.order, -1, dtype=np.int64)
    reps: list[int] = []
    e = H.elements_array
    for g in range(G.order):
        if proj[g] < 0:
            proj[G.table[g, e]] = len(reps)
            reps.append(g)
    return np.array(reps, dtype=np.int64), proj


def regular_gset(G: FiniteGroup) -> GSet:
    return coset_gset(G, G.trivial_subgroup)


def disjoint_union(sets: Sequence[GSet], group: Optional[FiniteGroup] = None) -> GSet:
    if not sets:
        if group is None:
            raise ValidationError("empty union needs an explicit group")
        return empty_gset(group)
    G = sets[0].group
    for X in sets[1:]:
        _require_same_group(sets[0], X)
    parts, off = [], 0
    for X in sets:
        parts.append(X.action + off)
        off += X.size
    return GSet(G, np.hstack(parts) if parts else np.zeros((G.order, 0)), validate=False)


def fixed_points(X: GSet, H: Subgroup) -> GSet:
    """``X^H`` as a set over ``W_G(H)``; ``origin`` lists the original points."""
    G = X.group
    if H.parent is not G and H.parent != G:
        raise ValidationError("subgroup belongs to another group")
    cached = X._fixed.get(H.mask)
    if cached is not None:
        return cached
    W = weyl_group(G, H)
    if X.size:
        rows = X.action[H.elements_array]
        pts = np.flatnonzero(np.all(rows == np.arange(X.size), axis=0))
    else:
        pts = np.zeros(0, dtype=np.int64)
    local = np.full(X.size, -1, dtype=np.int64)
    local[pts] = np.arange(len(pts))
    reps = np.array(W.representatives, dtype=np.int64)
    action = local[X.action[np.ix_(reps, pts)]] if len(pts) else np.zeros((len(reps), 0), dtype=np.int64)
    Y = GSet(W.group, action, validate=False, origin=pts)
    X._fixed[H.mask] = Y
    return Y


def restrict(X: GSet, K: Subgroup) -> GSet:
    """``X`` viewed as a set over ``K.as_group()``."""
    if K.parent is not X.group and K.parent != X.group:
        raise ValidationError("restriction to a subgroup of another group")
    return GSet(K.as_group(), X.action[K.elements_array], validate=False)


def induction_data(H: Subgroup) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Transversal, coset map and the ``H``-component of ``g t_i`` for all ``g``, ``i``."""
    G = H.parent
    reps, proj = left_transversal(H)
    gt = G.table[:, reps]  # g t_i
    j = proj[gt]
    h = G.table[G.inv[reps[j]], gt]  # t_j^-1 g t_i in H
    local = np.full(G.order, -1, dtype=np.int64)
    local[H.elements_array] = np.arange(H.order)
    return reps, j, local[h]


def induce(X: GSet, H: Subgroup) -> GSet:
    """``G x_H X`` on points ``(t_i, x)`` indexed ``i*|X| + x``; ``X`` is an ``H.as_group()``-set."""
    A = H.as_group()
    if X.group is not A and X.group != A:
        raise ValidationError("induced set must live over the subgroup's own group")
    G = H.parent
    _, j, hl = induction_data(H)
    n = X.size
    m = j.shape[1]
    # action[g, i*n + x] = j[g,i]*n + X.action[hl[g,i], x]
    act = (j[:, :, None] * n + X.action[hl]).reshape(G.order, m * n)
    return GSet(G, act, validate=False)


def conjugate(X: GSet, g: int) -> GSet:
    """``^g X``: a set over ``g K g^-1`` where ``X`` lives over ``K``.

    The point set is unchanged; ``g k g^-1`` acts as ``k`` did.
    """
    K, G = _subgroup_of(X.group)
    Kg = K.conjugate(g)
    B = Kg.as_group()
    pos = np.searchsorted(Kg.elements_array, G.conj_table[g, K.elements_array])
    act = np.empty_like(X.action)
    act[pos] = X.action
    return GSet(B, act, validate=False)


def _subgroup_of(A: FiniteGroup) -> tuple[Subgroup, FiniteGroup]:
    if A.source_subgroup is not None:
        return A.source_subgroup, A.source_subgroup.parent
    return A.whole, A


def tensor(X: GSet, Y: GSet) -> GSet:
    """Product set with diagonal action; point ``(x, y)`` has index ``x*|Y| + y``."""
    _require_same_group(X, Y)
    act = (X.action[:, :, None] * Y.size + Y.action[:, None, :]).reshape(X.group.order, -1)
    return GSet(X.group, act, validate=False)


def stabilizer_class_multiset(X: GSet) -> Counter:
    return Counter(class_representative(stab).mask for _, stab in X.orbits)


def gset_isomorphic(X: GSet, Y: GSet) -> bool:
    _require_same_group(X, Y)
    return X.size == Y.size and stabilizer_class_multiset(X) == stabilizer_class_multiset(Y)


# ---------------------------------------------------------------------------
# equivariant maps


@dataclass(eq=False)
class EquivariantMap:
    """An equivariant F_p-linear map ``k(source) -> k(target)``."""

    source: GSet
    target: GSet
    matrix: np.ndarray
    field: PrimeField

    def __post_init__(self):
        _require_same_group(self.source, self.target)
        m = np.asarray(self.matrix, dtype=np.int64).reshape(self.target.size, self.source.size)
        m = m % self.field.p
        m.setflags(write=False)
        self.matrix = m

    @property
    def group(self) -> FiniteGroup:
        return self.source.group

    @property
    def shape(self) -> tuple[int, int]:
        return self.matrix.shape

    def is_equivariant(self, exhaustive: Optional[bool] = None) -> bool:
        return is_equivariant(self.matrix, self.source, self.target, exhaustive)

    def check(self) -> "EquivariantMap":
        if not self.is_equivariant():
            raise ValidationError("matrix does not commute with the group action")
        return self

    def __matmul__(self, other: "EquivariantMap") -> "EquivariantMap":
        return compose(self, other)

    def __add__(self, other: "EquivariantMap") -> "EquivariantMap":
        if other.source.size != self.source.size or other.target.size != self.target.size:
            raise ValidationError("cannot add maps of different shapes")
        return EquivariantMap(self.source, self.target, self.matrix + other.matrix, self.field)

    def scaled(self, c: int) -> "EquivariantMap":
        return EquivariantMap(self.source, self.target, self.matrix * c, self.field)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, EquivariantMap)
            and other.field == self.field
            and other.source == self.source
            and other.target == self.target
            and np.array_equal(other.matrix, self.matrix)
        )

    __hash__ = None  # type: ignore[assignment]


def is_equivariant(M: np.ndarray, X: GSet, Y: GSet, exhaustive: Optional[bool] = None) -> bool:
    """Check ``M[g.y, g.x] == M[y, x]``.

    Over generators this already implies equivariance for every element, since
    the elements satisfying it form a subgroup; the exhaustive mode is a
    direct certificate used when the set is small.
    """
    G = X.group
    if exhaustive is None:
        exhaustive = G.order * max(X.size, 1) <= EXHAUSTIVE_CHECK_LIMIT
    elements = range(G.order) if exhaustive else G.generators
    M = np.asarray(M)
    if M.size == 0:
        return True
    for g in elements:
        if not np.array_equal(M[np.ix_(Y.action[g], X.action[g])], M):
            return False
    return True


def identity_map(X: GSet, field: PrimeField) -> EquivariantMap:
    return EquivariantMap(X, X, np.eye(X.size, dtype=np.int64), field)


def zero_map(X: GSet, Y: GSet, field: PrimeField) -> EquivariantMap:
    return EquivariantMap(X, Y, np.zeros((Y.size, X.size), dtype=np.int64), field)


def compose(f: EquivariantMap, g: EquivariantMap) -> EquivariantMap:
    """``f o g``."""
    if g.target.size != f.source.size:
        raise ValidationError("maps are not composable")
    return EquivariantMap(g.source, f.target, f.field.matmul(f.matrix, g.matrix), f.field)


def _require_p_subgroup(H: Subgroup, p: int) -> None:
    if not is_p_power(H.order, p) and H.order != 1:
        raise NotAPSubgroupError(f"subgroup of order {H.order} is not a {p}-subgroup")


def brauer_quotient_map(f: EquivariantMap, H: Subgroup) -> EquivariantMap:
    """``Psi^H(f)``: the block of ``f`` with rows in ``Y^H`` and columns in ``X^H``."""
    _require_p_subgroup(H, f.field.p)
    XH = fixed_points(f.source, H)
    YH = fixed_points(f.target, H)
    m = f.matrix[np.ix_(YH.origin, XH.origin)]
    return EquivariantMap(XH, YH, m, f.field)


def brauer_quotient(X: GSet, H: Subgroup, p: int) -> GSet:
    """``Psi^H`` on objects; only defined for p-subgroups."""
    _require_p_subgroup(H, p)
    return fixed_points(X, H)


def restrict_map(f: EquivariantMap, K: Subgroup) -> EquivariantMap:
    return EquivariantMap(restrict(f.source, K), restrict(f.target, K), f.matrix, f.field)


def induce_map(f: EquivariantMap, H: Subgroup) -> EquivariantMap:
    """Block-diagonal extension over the left transversal of ``H``."""
    m = len(left_transversal(H)[0])
    mat = np.kron(np.eye(m, dtype=np.int64), f.matrix)
    return EquivariantMap(induce(f.source, H), induce(f.target, H), mat, f.field)


def conjugate_map(f: EquivariantMap, g: int) -> EquivariantMap:
    return EquivariantMap(conjugate(f.source, g), conjugate(f.target, g), f.matrix, f.field)


def tensor_map(f: EquivariantMap, g: EquivariantMap) -> EquivariantMap:
    mat = np.kron(f.matrix, g.matrix) % f.field.p
    return EquivariantMap(tensor(f.source, g.source), tensor(f.target, g.target), mat, f.field)


def equivariant_basis(X: GSet, Y: GSet) -> list[np.ndarray]:
    """0/1 matrices of the orbits of ``G`` on ``Y x X``; a basis of Hom_G(kX, kY)."""
    _require_same_group(X, Y)
    nx, ny = X.size, Y.size
    if nx == 0 or ny == 0:
        return []
    gens = X.group.generators
    label = np.full(ny * nx, -1, dtype=np.int64)
    count = 0
    for start in range(ny * nx):
        if label[start] >= 0:
            continue
        label[start] = count
        stack = [start]
        while stack:
            q = stack.pop()
            y, x = divmod(q, nx)
            for s in gens:
                r = int(Y.action[s, y]) * nx + int(X.action[s, x])
                if label[r] < 0:
                    label[r] = count
                    stack.append(r)
        count += 1
    label = label.reshape(ny, nx)
    return [(label == c).astype(np.int64) for c in range(count)]


def random_equivariant_map(X: GSet, Y: GSet, field: PrimeField, rng: np.random.Generator) -> EquivariantMap:
    basis = equivariant_basis(X, Y)
    m = np.zeros((Y.size, X.size), dtype=np.int64)
    for b in basis:
        m += int(rng.integers(field.p)) * b
    return EquivariantMap(X, Y, m, field)
