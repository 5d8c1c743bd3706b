"""Bounded complexes of permutation modules.

Homological convention: ``d_i : C_i -> C_{i-1}``.  A complex occupying
degrees ``lo .. hi`` stores its terms bottom-up and ``diffs[i]`` is the matrix
of ``d_{lo+i+1}``, of shape ``|C_{lo+i}| x |C_{lo+i+1}|``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import ResourceLimitError, UnsupportedError, ValidationError
from .gf import PrimeField
from .groups import FiniteGroup, Subgroup, weyl_group
from .gsets import (
    EquivariantMap,
    GSet,
    _require_p_subgroup,
    conjugate,
    disjoint_union,
    empty_gset,
    fixed_points,
    induce,
    is_equivariant,
    left_transversal,
    regular_gset,
    restrict,
    tensor,
    trivial_gset,
)

KOSZUL_MAX_ORDER = 16


class PermComplex:
    """A bounded complex of permutation modules ``k(X_i)``."""

    def __init__(
        self,
        group: FiniteGroup,
        field: PrimeField,
        lo: int,
        terms: Sequence[GSet],
        diffs: Sequence[np.ndarray],
        *,
        check: bool = True,
    ):
        terms = list(terms)
        if len(diffs) != max(len(terms) - 1, 0):
            raise ValidationError("need exactly one differential between consecutive terms")
        mats = []
        for i, d in enumerate(diffs):
            shape = (terms[i].size, terms[i + 1].size)
            m = np.asarray(d, dtype=np.int64)
            if m.size == 0:
                m = np.zeros(shape, dtype=np.int64)
            if m.shape != shape:
                raise ValidationError(
                    f"d_{lo + i + 1} has shape {m.shape}, expected {shape}"
                )
            m = m % field.p
            m.setflags(write=False)
            mats.append(m)
        for X in terms:
            if X.group is not group and X.group != group:
                raise ValidationError("term over a different group")
        self.group = group
        self.field = field
        self.lo = lo
        self.terms = terms
        self.diffs = mats
        if check:
            self.validate()

    @property
    def hi(self) -> int:
        return self.lo + len(self.terms) - 1

    @property
    def degrees(self) -> range:
        return range(self.lo, self.lo + len(self.terms))

    def __repr__(self) -> str:
        sizes = ", ".join(f"{d}:{X.size}" for d, X in zip(self.degrees, self.terms))
        return f"PermComplex(p={self.field.p}, |G|={self.group.order}, [{sizes}])"

    def term(self, degree: int) -> GSet:
        i = degree - self.lo
        if 0 <= i < len(self.terms):
            return self.terms[i]
        return empty_gset(self.group)

    def differential(self, degree: int) -> np.ndarray:
        """Matrix of ``d_degree : C_degree -> C_{degree-1}``."""
        i = degree - self.lo - 1
        if 0 <= i < len(self.diffs):
            return self.diffs[i]
        return np.zeros((self.term(degree - 1).size, self.term(degree).size), dtype=np.int64)

    def differential_map(self, degree: int) -> EquivariantMap:
        return EquivariantMap(self.term(degree), self.term(degree - 1), self.differential(degree), self.field)

    def validate(self) -> None:
        p = self.field.p
        for i in range(len(self.diffs) - 1):
            if np.any((self.diffs[i] @ self.diffs[i + 1]) % p):
                raise ValidationError(f"d_{self.lo + i + 1} d_{self.lo + i + 2} != 0")
        for i, d in enumerate(self.diffs):
            if not is_equivariant(d, self.terms[i + 1], self.terms[i]):
                raise ValidationError(f"d_{self.lo + i + 1} is not equivariant")

    def is_zero_object(self) -> bool:
        return all(X.size == 0 for X in self.terms)

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * X.size for d, X in zip(self.degrees, self.terms))

    def __eq__(self, other) -> bool:
        if not isinstance(other, PermComplex) or other.field != self.field:
            return False
        a, b = self.trimmed(), other.trimmed()
        return (
            a.lo == b.lo
            and len(a.terms) == len(b.terms)
            and all(x == y for x, y in zip(a.terms, b.terms))
            and all(np.array_equal(x, y) for x, y in zip(a.diffs, b.diffs))
        )

    __hash__ = None  # type: ignore[assignment]

    def trimmed(self) -> "PermComplex":
        """Drop empty terms at both ends."""
        sizes = [X.size for X in self.terms]
        nz = [i for i, s in enumerate(sizes) if s]
        if not nz:
            return PermComplex(self.group, self.field, 0, [], [], check=False)
        a, b = nz[0], nz[-1]
        return PermComplex(
            self.group, self.field, self.lo + a, self.terms[a : b + 1], self.diffs[a:b], check=False
        )


@dataclass
class HomologyReport:
    dims: dict[int, int] = field(default_factory=dict)

    def __getitem__(self, degree: int) -> int:
        return self.dims.get(degree, 0)

    @property
    def total(self) -> int:
        return sum(self.dims.values())

    def is_zero(self) -> bool:
        return self.total == 0

    def nonzero_degrees(self) -> list[int]:
        return sorted(d for d, v in self.dims.items() if v)


def homology(C: PermComplex) -> HomologyReport:
    F = C.field
    ranks = {d: F.rank(C.differential(d)) for d in range(C.lo, C.hi + 2)}
    dims = {d: C.term(d).size - ranks[d] - ranks[d + 1] for d in C.degrees}
    return HomologyReport(dims)


def is_acyclic(C: PermComplex) -> bool:
    return homology(C).is_zero()


# ---------------------------------------------------------------------------
# constructors


def zero_complex(G: FiniteGroup, field: PrimeField) -> PermComplex:
    return PermComplex(G, field, 0, [], [], check=False)


def single_term(X: GSet, field: PrimeField, degree: int = 0) -> PermComplex:
    return PermComplex(X.group, field, degree, [X], [], check=False)


def unit_complex(G: FiniteGroup, field: PrimeField) -> PermComplex:
    return single_term(trivial_gset(G), field)


def free_complex(G: FiniteGroup, field: PrimeField, degree: int = 0, copies: int = 1) -> PermComplex:
    X = disjoint_union([regular_gset(G)] * copies)
    return single_term(X, field, degree)


def cyclic_acyclic_complex(G: FiniteGroup, field: PrimeField, generator: Optional[int] = None) -> PermComplex:
    """``0 -> k -> kC_p -> kC_p -> k -> 0`` in degrees 3..0 for a cyclic group of order p.

    Maps: norm, multiplication by ``g - 1``, augmentation.
    """
    p = field.p
    if G.order != p:
        raise ValidationError(f"expected a group of order {p}")
    g = generator if generator is not None else G.generators[0]
    R = regular_gset(G)
    pt = trivial_gset(G)
    aug = np.ones((1, p), dtype=np.int64)
    norm = np.ones((p, 1), dtype=np.int64)
    mult = np.zeros((p, p), dtype=np.int64)
    for x in range(p):
        mult[R.act(g, x), x] += 1
        mult[x, x] -= 1
    return PermComplex(G, field, 0, [pt, R, R, pt], [aug, mult, norm])


def koszul_object(G: FiniteGroup, field: PrimeField) -> PermComplex:
    """Tensor induction of ``0 -> k -> k -> 0`` from the trivial group, at p = 2.

    Degree ``i`` is ``k`` on the ``i``-element subsets of ``G`` (left
    translation); the differential sends ``S`` to the sum of its
    codimension-one subsets.
    """
    if field.p != 2:
        raise UnsupportedError("the Koszul object is only implemented in characteristic 2")
    n = G.order
    if n > KOSZUL_MAX_ORDER:
        raise ResourceLimitError(f"Koszul object limited to groups of order <= {KOSZUL_MAX_ORDER}")
    subsets = [list(itertools.combinations(range(n), i)) for i in range(n + 1)]
    index = [{s: j for j, s in enumerate(level)} for level in subsets]
    terms = []
    for i, level in enumerate(subsets):
        if level and i:
            arr = np.array(level, dtype=np.int64)
            imgs = np.sort(G.table[:, arr], axis=2)  # (|G|, #subsets, i)
            act = np.array(
                [[index[i][tuple(row)] for row in imgs[g].tolist()] for g in range(n)],
                dtype=np.int64,
            )
        else:
            act = np.zeros((n, len(level)), dtype=np.int64)
        terms.append(GSet(G, act, validate=False))
    diffs = []
    for i in range(1, n + 1):
        d = np.zeros((len(subsets[i - 1]), len(subsets[i])), dtype=np.int64)
        for j, S in enumerate(subsets[i]):
            for k in range(i):
                d[index[i - 1][S[:k] + S[k + 1 :]], j] = 1
        diffs.append(d)
    return PermComplex(G, field, 0, terms, diffs, check=False)


# ---------------------------------------------------------------------------
# functors


def apply_brauer(C: PermComplex, H: Subgroup) -> PermComplex:
    """``Psi^H`` degreewise: a complex over ``W_G(H)``."""
    _require_p_subgroup(H, C.field.p)
    W = weyl_group(C.group, H).group
    fixed = [fixed_points(X, H) for X in C.terms]
    diffs = [
        d[np.ix_(fixed[i].origin, fixed[i + 1].origin)] for i, d in enumerate(C.diffs)
    ]
    return PermComplex(W, C.field, C.lo, fixed, diffs, check=False)


def restrict_complex(C: PermComplex, K: Subgroup) -> PermComplex:
    terms = [restrict(X, K) for X in C.terms]
    return PermComplex(K.as_group(), C.field, C.lo, terms, C.diffs, check=False)


def induce_complex(C: PermComplex, H: Subgroup) -> PermComplex:
    """Induction from ``H`` to its parent; ``C`` lives over ``H.as_group()``."""
    m = len(left_transversal(H)[0])
    terms = [induce(X, H) for X in C.terms]
    eye = np.eye(m, dtype=np.int64)
    diffs = [np.kron(eye, d) for d in C.diffs]
    return PermComplex(H.parent, C.field, C.lo, terms, diffs, check=False)


def conjugate_complex(C: PermComplex, g: int) -> PermComplex:
    terms = [conjugate(X, g) for X in C.terms]
    group = terms[0].group if terms else _conjugate_group(C.group, g)
    return PermComplex(group, C.field, C.lo, terms, C.diffs, check=False)


def _conjugate_group(A: FiniteGroup, g: int) -> FiniteGroup:
    if A.source_subgroup is None:
        return A.whole.conjugate(g).as_group()
    return A.source_subgroup.conjugate(g).as_group()


def tensor_complex(C: PermComplex, D: PermComplex) -> PermComplex:
    """Total complex of ``C (x) D`` with sign ``(-1)^i`` on ``1 (x) d``."""
    if C.field != D.field:
        raise ValidationError("complexes over different fields")
    if C.group is not D.group and C.group != D.group:
        raise ValidationError("complexes over different groups")
    F = C.field
    if not C.terms or not D.terms:
        return zero_complex(C.group, F)
    lo, hi = C.lo + D.lo, C.hi + D.hi
    blocks: dict[int, list[tuple[int, int]]] = {}
    for n in range(lo, hi + 1):
        blocks[n] = [(i, n - i) for i in C.degrees if D.lo <= n - i <= D.hi]
    offsets: dict[tuple[int, int], int] = {}
    terms = []
    for n in range(lo, hi + 1):
        parts, off = [], 0
        for i, j in blocks[n]:
            offsets[(i, j)] = off
            X = tensor(C.term(i), D.term(j))
            parts.append(X)
            off += X.size
        terms.append(disjoint_union(parts, C.group))
    diffs = []
    for n in range(lo + 1, hi + 1):
        d = np.zeros((terms[n - 1 - lo].size, terms[n - lo].size), dtype=np.int64)
        for i, j in blocks[n]:
            ci, dj = C.term(i).size, D.term(j).size
            col = offsets[(i, j)]
            if (i - 1, j) in offsets:
                row = offsets[(i - 1, j)]
                blk = np.kron(C.differential(i), np.eye(dj, dtype=np.int64))
                d[row : row + blk.shape[0], col : col + blk.shape[1]] += blk
            if (i, j - 1) in offsets:
                row = offsets[(i, j - 1)]
                blk = np.kron(np.eye(ci, dtype=np.int64), D.differential(j)) * (-1) ** (i % 2)
                d[row : row + blk.shape[0], col : col + blk.shape[1]] += blk
        diffs.append(d % F.p)
    return PermComplex(C.group, F, lo, terms, diffs, check=False)


def direct_sum(C: PermComplex, D: PermComplex) -> PermComplex:
    if not C.terms:
        return D
    if not D.terms:
        return C
    lo, hi = min(C.lo, D.lo), max(C.hi, D.hi)
    terms = [disjoint_union([C.term(n), D.term(n)], C.group) for n in range(lo, hi + 1)]
    diffs = []
    for n in range(lo + 1, hi + 1):
        a, b = C.differential(n), D.differential(n)
        d = np.zeros((a.shape[0] + b.shape[0], a.shape[1] + b.shape[1]), dtype=np.int64)
        d[: a.shape[0], : a.shape[1]] = a
        d[a.shape[0] :, a.shape[1] :] = b
        diffs.append(d)
    return PermComplex(C.group, C.field, lo, terms, diffs, check=False)


def shift(C: PermComplex, k: int) -> PermComplex:
    """``C[k]``: degrees raised by ``k``, differentials multiplied by ``(-1)^k``."""
    sign = -1 if k % 2 else 1
    return PermComplex(C.group, C.field, C.lo + k, C.terms, [sign * d for d in C.diffs], check=False)
