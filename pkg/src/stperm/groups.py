"""Finite groups as multiplication tables.

Elements are the integers ``0 .. n-1`` with the identity at ``0``.  Subgroups
are canonical per parent group (one object per element set) so they can be
compared by identity and used as dictionary keys.

Conjugation conventions: ``conj(g, x) = g x g^-1`` (left, written ``^g x``)
and ``x^g = g^-1 x g`` (right).
"""

from __future__ import annotations

import contextlib
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Optional, Sequence, Union

import numpy as np

from .errors import ResourceLimitError, ValidationError

DEFAULT_ORDER_LIMIT = 384
_order_limit = DEFAULT_ORDER_LIMIT


@contextlib.contextmanager
def order_limit(n: Optional[int]) -> Iterator[None]:
    """Temporarily change the order bound enforced by subgroup enumeration."""
    global _order_limit
    old = _order_limit
    _order_limit = n
    try:
        yield
    finally:
        _order_limit = old


def prime_power(n: int) -> Optional[tuple[int, int]]:
    """``(p, e)`` with ``n == p**e`` and ``e >= 1``, else ``None``."""
    if n < 2:
        return None
    p = next(d for d in range(2, n + 1) if n % d == 0)
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return (p, e) if n == 1 else None


def is_p_power(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def _mask_of(elements: Iterable[int]) -> int:
    m = 0
    for x in elements:
        m |= 1 << int(x)
    return m


def _masks_of_rows(rows: np.ndarray, n: int) -> list[int]:
    """Bitmask of every row of an int array whose entries lie in ``range(n)``."""
    flags = np.zeros((rows.shape[0], n), dtype=bool)
    flags[np.arange(rows.shape[0])[:, None], rows] = True
    packed = np.packbits(flags, axis=1, bitorder="little")
    return [int.from_bytes(r.tobytes(), "little") for r in packed]


class FiniteGroup:
    """A finite group given by its multiplication table."""

    def __init__(
        self,
        table,
        *,
        name: Optional[str] = None,
        display: Optional[str] = None,
        labels: Optional[Sequence[str]] = None,
        validate: bool = True,
    ):
        t = np.array(table, dtype=np.int64)
        if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
            raise ValidationError("multiplication table must be a non-empty square array")
        n = t.shape[0]
        if t.min() < 0 or t.max() >= n:
            raise ValidationError("table entries out of range")
        ar = np.arange(n)
        if not (np.array_equal(t[0], ar) and np.array_equal(t[:, 0], ar)):
            raise ValidationError("identity must be element 0")
        if validate:
            srt = np.sort(t, axis=1)
            if not (np.all(srt == ar) and np.all(np.sort(t, axis=0) == ar[:, None])):
                raise ValidationError("table is not a Latin square")
            for a in range(n):
                # (a b) c == a (b c) for all b, c
                if not np.array_equal(t[t[a]], t[a][t]):
                    raise ValidationError(f"associativity fails at element {a}")
        rows, cols = np.nonzero(t == 0)
        inv = np.empty(n, dtype=np.int64)
        inv[rows] = cols
        if validate and not np.all(t[inv, ar] == 0):
            raise ValidationError("inverse table inconsistent")
        t.setflags(write=False)
        inv.setflags(write=False)
        self.table = t
        self.inv = inv
        self.order = n
        self.name = name
        self.display = display
        self.labels = tuple(labels) if labels is not None else None
        if self.labels is not None and len(self.labels) != n:
            raise ValidationError("one label per element required")
        # set when this group is realised as a subgroup of a larger one
        self.ambient: Optional[FiniteGroup] = None
        self.embedding: Optional[np.ndarray] = None
        self.source_subgroup: Optional[Subgroup] = None
        self._subgroups: dict[int, Subgroup] = {}
        self._cache: dict = {}

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name or '?'}, order={self.order})"

    def __len__(self) -> int:
        return self.order

    @property
    def title(self) -> str:
        return self.display or self.name or describe_group(self)

    # element arithmetic -------------------------------------------------

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inverse(self, a: int) -> int:
        return int(self.inv[a])

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = int(self.inv[a]), -k
        r, base = 0, int(a)
        while k:
            if k & 1:
                r = int(self.table[r, base])
            base = int(self.table[base, base])
            k >>= 1
        return r

    def conj(self, g: int, x: int) -> int:
        """``g x g^-1``."""
        return int(self.conj_table[g, x])

    def conj_right(self, x: int, g: int) -> int:
        """``x^g = g^-1 x g``."""
        return int(self.conj_table[self.inv[g], x])

    @cached_property
    def conj_table(self) -> np.ndarray:
        """``ct[g, x] = g x g^-1``."""
        t = self.table
        ct = np.empty_like(t)
        for g in range(self.order):
            ct[g] = t[t[g], self.inv[g]]
        ct.setflags(write=False)
        return ct

    @cached_property
    def element_orders(self) -> np.ndarray:
        n = self.order
        ar = np.arange(n)
        orders = np.zeros(n, dtype=np.int64)
        cur = ar.copy()
        k = 1
        while True:
            done = (cur == 0) & (orders == 0)
            orders[done] = k
            if np.all(orders):
                break
            cur = self.table[cur, ar]
            k += 1
        orders.setflags(write=False)
        return orders

    def element_order(self, a: int) -> int:
        return int(self.element_orders[a])

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    @cached_property
    def exponent(self) -> int:
        return math.lcm(*map(int, self.element_orders))

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """A small generating set, chosen greedily by decreasing element order."""
        order_desc = sorted(range(self.order), key=lambda x: (-self.element_orders[x], x))
        gens: list[int] = []
        current = self.trivial_subgroup
        for x in order_desc:
            if current.order == self.order:
                break
            if x not in current:
                gens.append(x)
                current = self.generated(gens)
        return tuple(gens)

    # subgroups ------------------------------------------------------------

    def _closure(self, gens: Sequence[int], start: Iterable[int] = (0,)) -> list[int]:
        t = self.table
        seen = set(int(x) for x in start)
        seen.add(0)
        queue = list(seen)
        while queue:
            x = queue.pop()
            for s in gens:
                y = int(t[x, s])
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return sorted(seen)

    def _make_subgroup(self, elements: Sequence[int], gens: Optional[Sequence[int]] = None) -> Subgroup:
        elems = tuple(sorted(int(x) for x in elements))
        mask = _mask_of(elems)
        sub = self._subgroups.get(mask)
        if sub is None:
            sub = Subgroup(self, elems, mask, tuple(gens) if gens is not None else None)
            self._subgroups[mask] = sub
        return sub

    def subgroup(self, elements: Iterable[int]) -> Subgroup:
        """The subgroup with exactly these elements (validated)."""
        elems = sorted(set(int(x) for x in elements))
        if not elems or elems[0] != 0:
            raise ValidationError("a subgroup must contain the identity")
        if elems[-1] >= self.order:
            raise ValidationError("element index out of range")
        mask = _mask_of(elems)
        if mask not in self._subgroups:
            sub_t = self.table[np.ix_(elems, elems)]
            if not all((mask >> int(y)) & 1 for y in np.unique(sub_t)):
                raise ValidationError("element set is not closed under multiplication")
        return self._make_subgroup(elems)

    def generated(self, gens: Iterable[int]) -> Subgroup:
        gens = [int(g) for g in gens]
        return self._make_subgroup(self._closure(gens), gens)

    def subgroup_from_mask(self, mask: int) -> Subgroup:
        sub = self._subgroups.get(mask)
        if sub is not None:
            return sub
        return self.subgroup(i for i in range(self.order) if (mask >> i) & 1)

    @cached_property
    def trivial_subgroup(self) -> Subgroup:
        return self._make_subgroup((0,), ())

    @cached_property
    def whole(self) -> Subgroup:
        return self._make_subgroup(range(self.order))

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        return (
            isinstance(other, FiniteGroup)
            and other.order == self.order
            and np.array_equal(other.table, self.table)
        )

    def __hash__(self) -> int:
        return hash((self.order, self.table.tobytes()))


class Subgroup:
    """A subgroup of ``parent``; canonical per element set."""

    __slots__ = ("parent", "elements", "mask", "_gens", "__dict__")

    def __init__(self, parent: FiniteGroup, elements: tuple[int, ...], mask: int, gens=None):
        self.parent = parent
        self.elements = elements
        self.mask = mask
        self._gens = gens

    def __repr__(self) -> str:
        if self.order <= 12:
            return f"Subgroup({list(self.elements)})"
        return f"Subgroup(order={self.order}, min={self.elements[:4]}...)"

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, x: int) -> bool:
        return bool((self.mask >> int(x)) & 1)

    def __iter__(self):
        return iter(self.elements)

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        return (
            isinstance(other, Subgroup)
            and other.mask == self.mask
            and other.parent == self.parent
        )

    def __hash__(self) -> int:
        return hash(self.mask)

    def __le__(self, other: Subgroup) -> bool:
        return self.mask & ~other.mask == 0

    def __lt__(self, other: Subgroup) -> bool:
        return self.mask != other.mask and self <= other

    @property
    def sort_key(self) -> tuple:
        return (self.order, self.elements)

    @property
    def gens(self) -> tuple[int, ...]:
        if self._gens is None:
            self._gens = self.as_group().generators_in_parent
        return self._gens

    @cached_property
    def elements_array(self) -> np.ndarray:
        a = np.array(self.elements, dtype=np.int64)
        a.setflags(write=False)
        return a

    def is_trivial(self) -> bool:
        return self.order == 1

    def is_normal_in(self, other: Optional[Subgroup] = None) -> bool:
        """Whether self is normal in ``other`` (default: the parent group)."""
        over = other.elements if other is not None else range(self.parent.order)
        ct = self.parent.conj_table
        e = self.elements_array
        for g in over:
            imgs = ct[g, e]
            if not all((self.mask >> int(y)) & 1 for y in imgs):
                return False
        return True

    def conjugate(self, g: int) -> Subgroup:
        """``^g H = g H g^-1``."""
        imgs = self.parent.conj_table[g, self.elements_array]
        return self.parent._make_subgroup(imgs)

    def conjugate_right(self, g: int) -> Subgroup:
        """``H^g = g^-1 H g``."""
        return self.conjugate(self.parent.inverse(g))

    def as_group(self) -> FiniteGroup:
        """This subgroup as a stand-alone group; local index i <-> elements[i]."""
        cached = self.__dict__.get("_as_group")
        if cached is not None:
            return cached
        G = self.parent
        e = self.elements_array
        local = np.full(G.order, -1, dtype=np.int64)
        local[e] = np.arange(len(e))
        table = local[G.table[np.ix_(e, e)]]
        labels = [G.labels[x] for x in e] if G.labels is not None else None
        H = FiniteGroup(table, labels=labels, validate=False)
        if self.order == G.order:
            H.name, H.display = G.name, G.display
        H.ambient = G
        H.embedding = e
        H.source_subgroup = self
        H.generators_in_parent = tuple(int(e[i]) for i in H.generators)
        self.__dict__["_as_group"] = H
        return H


# ---------------------------------------------------------------------------
# enumeration


def _as_group(P: Union[FiniteGroup, Subgroup]) -> FiniteGroup:
    return P.as_group() if isinstance(P, Subgroup) else P


def all_subgroups(G: FiniteGroup) -> list[Subgroup]:
    """Every subgroup of ``G`` exactly once, sorted by (order, elements).

    Subgroups are built as joins of cyclic subgroups, seeded by the cyclic
    subgroups themselves.
    """
    cached = G._cache.get("all_subgroups")
    if cached is not None:
        return cached
    if _order_limit is not None and G.order > _order_limit:
        raise ResourceLimitError(
            f"subgroup enumeration limited to order {_order_limit}, group has order {G.order}"
        )
    cyclic: dict[int, Subgroup] = {}
    for g in range(G.order):
        c = G.generated([g])
        cyclic.setdefault(c.mask, c)
    cyc = sorted(cyclic.values(), key=lambda s: s.sort_key)
    known = dict(cyclic)
    layer = cyc
    while layer:
        new: list[Subgroup] = []
        for A in layer:
            for C in cyc:
                if C <= A:
                    continue
                gens = tuple(A.gens) + (C.gens[0],)
                J = G._make_subgroup(G._closure(gens, A.elements), gens)
                if J.mask not in known:
                    known[J.mask] = J
                    new.append(J)
        layer = new
    result = sorted(known.values(), key=lambda s: s.sort_key)
    G._cache["all_subgroups"] = result
    return result


def conjugates(H: Subgroup) -> list[Subgroup]:
    """The distinct conjugates of ``H`` in its parent, sorted."""
    G = H.parent
    if G.is_abelian:
        return [H]
    imgs = G.conj_table[:, H.elements_array]
    masks = sorted(set(_masks_of_rows(imgs, G.order)))
    return sorted((G.subgroup_from_mask(m) for m in masks), key=lambda s: s.sort_key)


def class_representative(H: Subgroup) -> Subgroup:
    """Lexicographically smallest element set among the conjugates of ``H``."""
    return min(conjugates(H), key=lambda s: s.elements)


def conjugacy_classes_of_subgroups(G: FiniteGroup) -> list[list[Subgroup]]:
    cached = G._cache.get("subgroup_classes")
    if cached is not None:
        return cached
    seen: set[int] = set()
    classes: list[list[Subgroup]] = []
    for H in all_subgroups(G):
        if H.mask in seen:
            continue
        cls = conjugates(H)
        seen.update(s.mask for s in cls)
        cls.sort(key=lambda s: s.elements)
        classes.append(cls)
    classes.sort(key=lambda c: (c[0].order, c[0].elements))
    G._cache["subgroup_classes"] = classes
    return classes


def p_subgroups(G: FiniteGroup, p: int) -> list[Subgroup]:
    return [H for H in all_subgroups(G) if is_p_power(H.order, p)]


def conjugacy_classes_of_p_subgroups(G: FiniteGroup, p: int) -> list[list[Subgroup]]:
    """G-conjugacy classes of p-subgroups; each class's first entry is its representative."""
    return [c for c in conjugacy_classes_of_subgroups(G) if is_p_power(c[0].order, p)]


def normalizer(G: FiniteGroup, H: Subgroup) -> Subgroup:
    ct = G.conj_table
    e = H.elements_array
    keep = [g for g in range(G.order) if all((H.mask >> int(y)) & 1 for y in ct[g, e])]
    return G._make_subgroup(keep)


def centralizer(G: FiniteGroup, H: Subgroup) -> Subgroup:
    ct = G.conj_table
    e = H.elements_array
    keep = [g for g in range(G.order) if np.array_equal(ct[g, e], e)]
    return G._make_subgroup(keep)


def center(G: FiniteGroup) -> Subgroup:
    return centralizer(G, G.whole)


@dataclass(eq=False)
class QuotientGroup:
    """``ambient / normal`` realised on left cosets sorted by least element."""

    source: FiniteGroup
    ambient: Subgroup
    normal: Subgroup
    group: FiniteGroup
    representatives: tuple[int, ...]
    projection: np.ndarray  # element of source -> coset index, -1 outside ambient

    def project(self, g: int) -> int:
        c = int(self.projection[g])
        if c < 0:
            raise ValueError(f"element {g} is not in the ambient subgroup")
        return c


def quotient_group(ambient: Subgroup, normal: Subgroup, name: Optional[str] = None) -> QuotientGroup:
    G = ambient.parent
    if not normal <= ambient or not normal.is_normal_in(ambient):
        raise ValidationError("quotient requires a normal subgroup")
    proj = np.full(G.order, -1, dtype=np.int64)
    reps: list[int] = []
    for g in ambient.elements:  # ascending, so each coset is first met at its least element
        if proj[g] >= 0:
            continue
        coset = G.table[g, normal.elements_array]
        proj[coset] = len(reps)
        reps.append(g)
    r = np.array(reps, dtype=np.int64)
    table = proj[G.table[np.ix_(r, r)]]
    Q = FiniteGroup(table, name=name, validate=False)
    proj.setflags(write=False)
    return QuotientGroup(G, ambient, normal, Q, tuple(reps), proj)


def weyl_group(G: FiniteGroup, H: Subgroup) -> QuotientGroup:
    """``N_G(H) / H``; cached so repeated calls share one group object."""
    key = ("weyl", H.mask)
    cached = G._cache.get(key)
    if cached is not None:
        return cached
    N = normalizer(G, H)
    W = quotient_group(N, H)
    if H.order == 1 and N.order == G.order:
        W.group.name, W.group.display = G.name, G.display
    G._cache[key] = W
    return W


def sylow_subgroup(G: FiniteGroup, p: int) -> Subgroup:
    """A Sylow p-subgroup (the first one in the sorted subgroup list)."""
    n = G.order
    pk = 1
    while n % p == 0:
        n //= p
        pk *= p
    if pk == 1:
        return G.trivial_subgroup
    for H in all_subgroups(G):
        if H.order == pk:
            return H
    raise AssertionError("Sylow subgroup not found")  # pragma: no cover


def sylow_subgroups(G: FiniteGroup, p: int) -> list[Subgroup]:
    P = sylow_subgroup(G, p)
    return conjugates(P)


def maximal_subgroups(G: FiniteGroup) -> list[Subgroup]:
    subs = [H for H in all_subgroups(G) if H.order < G.order]
    return [H for H in subs if not any(H < K for K in subs)]


def frattini_subgroup(P: Union[FiniteGroup, Subgroup]) -> Subgroup:
    """Intersection of the maximal subgroups (index-p subgroups for a p-group).

    For a ``Subgroup`` argument the result is a subgroup of the same parent.
    """
    Q = _as_group(P)
    mask = (1 << Q.order) - 1
    for M in maximal_subgroups(Q):
        mask &= M.mask
    F = Q.subgroup_from_mask(mask)
    if isinstance(P, Subgroup):
        return P.parent._make_subgroup(Q.embedding[list(F.elements)])
    return F


def has_unique_order_p_subgroup(P: Union[FiniteGroup, Subgroup], p: int) -> bool:
    Q = _as_group(P)
    return sum(1 for H in all_subgroups(Q) if H.order == p) == 1


def has_unique_index_p_subgroup(P: Union[FiniteGroup, Subgroup], p: int) -> bool:
    Q = _as_group(P)
    if Q.order % p:
        return False
    return sum(1 for H in all_subgroups(Q) if H.order * p == Q.order) == 1


def p_rank(P: Union[FiniteGroup, Subgroup], p: int) -> int:
    """Largest r with an elementary abelian subgroup of order p^r."""
    Q = _as_group(P)
    best = 0
    for H in all_subgroups(Q):
        if H.order > 1 and is_p_power(H.order, p):
            A = H.as_group()
            if A.is_abelian and A.exponent == p:
                best = max(best, round(math.log(H.order, p)))
    return best


# ---------------------------------------------------------------------------
# isomorphism types


@dataclass(frozen=True)
class IsoType:
    kind: str  # trivial | cyclic | elementary_abelian | generalized_quaternion | dihedral | other
    n: Optional[int]  # p^n (2^n for quaternion/dihedral); None off prime powers
    order: int
    p: Optional[int] = None

    def __str__(self) -> str:
        if self.kind in ("trivial", "other"):
            return self.kind
        return f"{self.kind}({self.n if self.n is not None else self.order})"

    @property
    def name(self) -> str:
        """Conventional name; dihedral and quaternion groups indexed by order."""
        o = self.order
        if self.kind == "trivial":
            return "1"
        if self.kind == "cyclic":
            return f"C_{o}"
        if self.kind == "elementary_abelian":
            if self.p == 2 and self.n == 2:
                return "V_4"
            return f"C_{self.p}^{self.n}"
        if self.kind == "generalized_quaternion":
            return f"Q_{o}"
        if self.kind == "dihedral":
            return f"D_{o}"
        return f"<order {o}>"


def _find_presentation(G: FiniteGroup, y_square_is: str) -> bool:
    """Search x of order |G|/2 and y outside <x> with y x y^-1 = x^-1 and y^2 prescribed."""
    n = G.order
    m = n // 2
    orders = G.element_orders
    for x in np.flatnonzero(orders == m):
        x = int(x)
        X = G.generated([x])
        x_inv = G.inverse(x)
        target = 0 if y_square_is == "one" else G.power(x, m // 2)
        for y in range(G.order):
            if y in X:
                continue
            if G.mul(y, y) == target and G.conj(y, x) == x_inv:
                return True
        return False  # every cyclic subgroup of order m is equivalent here
    return False


def iso_type(P: Union[FiniteGroup, Subgroup]) -> IsoType:
    """Detect trivial / cyclic / elementary abelian / quaternion / dihedral groups."""
    G = _as_group(P)
    n = G.order
    pp = prime_power(n)
    p, e = pp if pp else (None, None)
    if n == 1:
        return IsoType("trivial", 0, 1, None)
    if int(G.element_orders.max()) == n:
        return IsoType("cyclic", e, n, p)
    if pp and G.is_abelian and G.exponent == p:
        return IsoType("elementary_abelian", e, n, p)
    if p == 2 and e >= 3:
        involutions = int(np.sum(G.element_orders == 2))
        if involutions == 1 and _find_presentation(G, "central"):
            return IsoType("generalized_quaternion", e, n, 2)
    if n % 2 == 0 and n >= 6 and not G.is_abelian and _find_presentation(G, "one"):
        return IsoType("dihedral", e if p == 2 else None, n, p)
    return IsoType("other", e, n, p)


def describe_group(G: FiniteGroup) -> str:
    it = iso_type(G)
    if it.kind == "other":
        return G.display or G.name or it.name
    return it.name


def are_isomorphic(A: FiniteGroup, B: FiniteGroup, max_order: int = 72) -> bool:
    """Brute-force isomorphism test by extending generator images."""
    if A.order != B.order:
        return False
    if A.order > max_order:
        raise ResourceLimitError(f"brute-force isomorphism limited to order {max_order}")
    if sorted(A.element_orders.tolist()) != sorted(B.element_orders.tolist()):
        return False
    if A.is_abelian != B.is_abelian:
        return False
    gens = list(A.generators)
    candidates = [np.flatnonzero(B.element_orders == A.element_orders[g]).tolist() for g in gens]

    def extend(images: list[int]) -> Optional[dict[int, int]]:
        # BFS over words in the first len(images) generators; reject inconsistent maps
        k = len(images)
        phi = {0: 0}
        queue = [0]
        while queue:
            a = queue.pop()
            for s, t in zip(gens[:k], images):
                x = A.mul(a, s)
                y = B.mul(phi[a], t)
                if x in phi:
                    if phi[x] != y:
                        return None
                else:
                    phi[x] = y
                    queue.append(x)
        if len(set(phi.values())) != len(phi):
            return None
        return phi

    def search(images: list[int]) -> bool:
        phi = extend(images)
        if phi is None:
            return False
        if len(images) == len(gens):
            return len(phi) == A.order
        for c in candidates[len(images)]:
            if search(images + [c]):
                return True
        return False

    return search([])


# ---------------------------------------------------------------------------
# construction helpers


def group_from_permutations(
    generators: Sequence[Sequence[int]],
    *,
    name: Optional[str] = None,
    display: Optional[str] = None,
    generator_names: Optional[Sequence[str]] = None,
) -> FiniteGroup:
    """The permutation group generated by ``generators`` as a table.

    Composition is ``(a b)(i) = a(b(i))``.  Elements are listed in BFS order
    from the identity, multiplying words on the right by generators.
    """
    gens = [np.asarray(g, dtype=np.int64) for g in generators]
    if not gens:
        return FiniteGroup([[0]], name=name, display=display, labels=["e"])
    degree = len(gens[0])
    for g in gens:
        if len(g) != degree or sorted(g.tolist()) != list(range(degree)):
            raise ValidationError("generators must be permutations of a common set {0..m-1}")
    names = list(generator_names) if generator_names else [f"g{i}" for i in range(len(gens))]
    ident = np.arange(degree)
    elements = [ident]
    words = ["e"]
    index = {ident.tobytes(): 0}
    i = 0
    while i < len(elements):
        a = elements[i]
        for s, nm in zip(gens, names):
            b = a[s]  # a after s
            key = b.tobytes()
            if key not in index:
                index[key] = len(elements)
                elements.append(b)
                words.append(nm if words[i] == "e" else words[i] + nm)
        i += 1
    perms = np.array(elements)
    n = len(elements)
    # a base: points whose images determine the element
    base: list[int] = []
    keys = np.zeros(n, dtype=np.int64)
    for pt in range(degree):
        if len(np.unique(keys)) == n:
            break
        trial = keys * degree + perms[:, pt]
        if len(np.unique(trial)) > len(np.unique(keys)):
            base.append(pt)
            keys = trial
    order_keys = np.argsort(keys)
    sorted_keys = keys[order_keys]
    table = np.empty((n, n), dtype=np.int64)
    base_imgs = perms[:, base]  # (n, |base|)
    for a in range(n):
        imgs = perms[a][base_imgs]
        k = np.zeros(n, dtype=np.int64)
        for j in range(len(base)):
            k = k * degree + imgs[:, j]
        pos = np.searchsorted(sorted_keys, k)
        table[a] = order_keys[pos]
    return FiniteGroup(table, name=name, display=display, labels=words, validate=False)


def cyclic_group(n: int) -> FiniteGroup:
    ar = np.arange(n)
    return FiniteGroup((ar[:, None] + ar[None, :]) % n, name=f"C{n}", display=f"C_{n}", validate=False)


def direct_product(A: FiniteGroup, B: FiniteGroup) -> FiniteGroup:
    nb = B.order
    ta = A.table[:, None, :, None] * nb
    tb = B.table[None, :, None, :]
    table = (ta + tb).reshape(A.order * nb, A.order * nb)
    return FiniteGroup(table, validate=False)


def localize(L: Subgroup, H: Subgroup) -> Subgroup:
    """``L <= H`` (both in one parent) as a subgroup of ``H.as_group()``."""
    if not L <= H:
        raise ValidationError("subgroup is not contained in the ambient subgroup")
    A = H.as_group()
    return A._make_subgroup(np.searchsorted(H.elements_array, L.elements_array))


def globalize(L: Subgroup) -> Subgroup:
    """A subgroup of ``H.as_group()`` pushed back into ``H``'s parent."""
    A = L.parent
    if A.embedding is None:
        return L
    return A.source_subgroup.parent._make_subgroup(A.embedding[L.elements_array])


def transporter(H: Subgroup, P: Subgroup) -> list[int]:
    """``{g : H^g <= P}`` with ``H^g = g^-1 H g``."""
    G = H.parent
    ct = G.conj_table
    e = H.elements_array
    out = []
    for g in range(G.order):
        imgs = ct[G.inv[g], e]
        if all((P.mask >> int(y)) & 1 for y in imgs):
            out.append(g)
    return out
