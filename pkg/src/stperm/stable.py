"""Projectivity, perfection and eq-perfection tests.

Perfection of a bounded complex ``C`` over ``kG`` is decided by building a
complex of free modules ``Q`` with a chain map ``Q -> C`` that is a
quasi-isomorphism below the top degree, and testing whether the kernel ``Z``
of the last free map is projective.  Because ``kG`` is self-injective, a
module of finite projective dimension is projective, so ``C`` is perfect
exactly when ``Z`` is.

Everything is first restricted to a Sylow p-subgroup ``P``: restriction
detects projectivity, and over a p-group the norm element gives a cheap
freeness test (``M`` is free iff ``rank(N_P) * |P| == dim M``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence, Union

import numpy as np

from .complexes import PermComplex, apply_brauer, homology
from .errors import ResourceLimitError, ValidationError
from .gf import PrimeField
from .groups import (
    FiniteGroup,
    Subgroup,
    conjugacy_classes_of_p_subgroups,
    is_p_power,
    sylow_subgroup,
)
from .gsets import GSet, restrict

HIGMAN_MAX_DIM = 24

ABSENT = "absent"
CLOSED_ONLY = "closed_only"
OPEN = "open"


class GModule:
    """A finite-dimensional ``F_p[G]``-module; ``rho[g]`` acts on column vectors."""

    def __init__(self, group: FiniteGroup, field: PrimeField, matrices, *, validate: bool = True):
        rho = np.asarray(matrices, dtype=np.int64)
        if rho.ndim != 3 or rho.shape[0] != group.order or rho.shape[1] != rho.shape[2]:
            raise ValidationError("need one square matrix per group element")
        rho = rho % field.p
        d = rho.shape[1]
        if validate and d:
            if not np.array_equal(rho[0], np.eye(d, dtype=np.int64)):
                raise ValidationError("identity must act as the identity matrix")
            for s in group.generators:
                prod = np.einsum("gij,jk->gik", rho, rho[s]) % field.p
                if not np.array_equal(prod, rho[group.table[:, s]]):
                    raise ValidationError("matrices do not respect the multiplication table")
        rho.setflags(write=False)
        self.group = group
        self.field = field
        self.rho = rho
        self.dim = d

    def __repr__(self) -> str:
        return f"GModule(|G|={self.group.order}, dim={self.dim}, p={self.field.p})"

    @classmethod
    def from_generators(cls, group: FiniteGroup, field: PrimeField, images: dict[int, np.ndarray]) -> "GModule":
        """Extend generator images to all elements, checking every relation met on the way."""
        p = field.p
        items = [(int(g), np.asarray(m, dtype=np.int64) % p) for g, m in images.items()]
        if not items:
            if group.order != 1:
                raise ValidationError("no generator images given")
            return cls(group, field, np.zeros((1, 0, 0), dtype=np.int64))
        d = items[0][1].shape[0]
        rho: dict[int, np.ndarray] = {0: np.eye(d, dtype=np.int64)}
        queue = [0]
        while queue:
            a = queue.pop()
            for s, m in items:
                b = int(group.table[a, s])
                img = (rho[a] @ m) % p
                if b in rho:
                    if not np.array_equal(rho[b], img):
                        raise ValidationError("generator images violate a group relation")
                else:
                    rho[b] = img
                    queue.append(b)
        if len(rho) != group.order:
            raise ValidationError("generator images do not generate the group")
        return cls(group, field, np.stack([rho[g] for g in range(group.order)]), validate=True)

    @classmethod
    def permutation(cls, X: GSet, field: PrimeField) -> "GModule":
        n, N = X.size, X.group.order
        rho = np.zeros((N, n, n), dtype=np.int64)
        if n:
            g = np.repeat(np.arange(N), n)
            cols = np.tile(np.arange(n), N)
            rho[g, X.action.reshape(-1), cols] = 1
        return cls(X.group, field, rho, validate=False)

    @classmethod
    def regular(cls, group: FiniteGroup, field: PrimeField, copies: int = 1) -> "GModule":
        return cls(group, field, _free_action(group, copies), validate=False)

    @classmethod
    def trivial(cls, group: FiniteGroup, field: PrimeField, dim: int = 1) -> "GModule":
        return cls(group, field, np.tile(np.eye(dim, dtype=np.int64), (group.order, 1, 1)), validate=False)

    def restrict(self, K: Subgroup) -> "GModule":
        return GModule(K.as_group(), self.field, self.rho[K.elements_array], validate=False)

    def submodule(self, basis: np.ndarray) -> "GModule":
        """The action on the span of the (independent, invariant) columns of ``basis``."""
        basis = np.asarray(basis, dtype=np.int64)
        m = basis.shape[1]
        if m == 0:
            return GModule(self.group, self.field, np.zeros((self.group.order, 0, 0), dtype=np.int64), validate=False)
        coords = _coordinate_map(basis, self.field)
        images = np.einsum("gij,jk->gik", self.rho, basis) % self.field.p
        return GModule(self.group, self.field, coords(images), validate=False)

    def norm(self) -> np.ndarray:
        return self.rho.sum(axis=0) % self.field.p


def _free_action(group: FiniteGroup, copies: int) -> np.ndarray:
    """Left-regular action on ``copies`` copies of ``kG``; basis ``(j, g)`` at ``j*|G| + g``."""
    N = group.order
    n = N * copies
    rho = np.zeros((N, n, n), dtype=np.int64)
    if n:
        h = np.repeat(np.arange(N), n)
        cols = np.tile(np.arange(n), N)
        j, g = np.divmod(cols, N)
        rows = j * N + group.table[h, g]
        rho[h, rows, cols] = 1
    return rho


def _coordinate_map(basis: np.ndarray, F: PrimeField) -> Callable[[np.ndarray], np.ndarray]:
    """Coordinates with respect to independent columns, read off from pivot rows."""
    _, rows = F.rref(basis.T)
    if len(rows) != basis.shape[1]:
        raise ValidationError("basis columns are dependent")
    inv = F.inverse(basis[rows, :])

    def coords(v: np.ndarray) -> np.ndarray:
        return (inv @ v[..., rows, :]) % F.p

    return coords


# ---------------------------------------------------------------------------
# projectivity


def higman_projective(M: GModule) -> bool:
    """Solve ``sum_g rho(g) phi rho(g)^-1 = id`` for ``phi``.

    The unknowns are the ``dim^2`` entries of ``phi`` in row-major order, so
    the system has ``dim^2`` equations; dimensions above ``HIGMAN_MAX_DIM``
    are rejected.
    """
    d = M.dim
    if d == 0:
        return True
    if d > HIGMAN_MAX_DIM:
        raise ResourceLimitError(f"Higman system limited to dimension {HIGMAN_MAX_DIM}")
    p = M.field.p
    inv = M.group.inv
    T = np.zeros((d * d, d * d), dtype=np.int64)
    for g in range(M.group.order):
        T += np.kron(M.rho[g], M.rho[inv[g]].T)
    T %= p
    return M.field.solve(T, np.eye(d, dtype=np.int64).reshape(-1)) is not None


def _p_group_free_rank(rho: np.ndarray, basis: Optional[np.ndarray], F: PrimeField) -> int:
    N = rho.sum(axis=0) % F.p
    if basis is not None:
        N = (N @ basis) % F.p
    return F.rank(N)


def is_projective(M: GModule) -> bool:
    """Projectivity via the norm of a Sylow p-subgroup."""
    if M.dim == 0:
        return True
    p = M.field.p
    P = sylow_subgroup(M.group, p)
    if P.order == 1:
        return True
    r = _p_group_free_rank(M.rho[P.elements_array], None, M.field)
    return r * P.order == M.dim


@dataclass
class FreeCover:
    free: GModule
    surjection: np.ndarray  # dim M x dim F
    kernel: GModule
    kernel_basis: np.ndarray  # columns in F


def _greedy_generators(rho: np.ndarray, basis: np.ndarray, F: PrimeField) -> np.ndarray:
    """Columns of ``basis`` kept only when outside the submodule generated so far."""
    d = basis.shape[0]
    span = np.zeros((d, 0), dtype=np.int64)
    chosen = []
    for j in range(basis.shape[1]):
        v = basis[:, j : j + 1]
        if span.shape[1] and F.rank(np.hstack([span, v])) == span.shape[1]:
            continue
        chosen.append(j)
        orbit = (rho @ v[:, 0]).T % F.p  # d x |G|
        span = F.image_basis(np.hstack([span, orbit]))
        if span.shape[1] == basis.shape[1]:
            break
    return basis[:, chosen]


def _cover_generators(rho: np.ndarray, basis: np.ndarray, F: PrimeField, minimal: Union[bool, str]) -> np.ndarray:
    """Columns of ``basis`` that generate its span as a module.

    ``minimal=True`` (p-groups only) keeps the columns independent modulo the
    radical ``span{(g - 1) v}``; ``"greedy"`` drops columns already generated;
    otherwise every column is used.
    """
    if not minimal or basis.shape[1] == 0:
        return basis
    if minimal == "greedy":
        return _greedy_generators(rho, basis, F)
    d = basis.shape[0]
    eye = np.eye(d, dtype=np.int64)
    rad = np.hstack([((r - eye) @ basis) % F.p for r in rho[1:]]) if len(rho) > 1 else np.zeros((d, 0), dtype=np.int64)
    rad = F.image_basis(rad) if rad.size else rad
    k = rad.shape[1]
    _, piv = F.rref(np.hstack([rad, basis]))
    chosen = [c - k for c in piv if c >= k]
    return basis[:, chosen]


def _cover_map(group: FiniteGroup, rho: np.ndarray, gens: np.ndarray, F: PrimeField) -> np.ndarray:
    """Matrix of ``(kG)^r -> V`` sending ``e_(j,g)`` to ``rho(g) gens[:, j]``."""
    imgs = np.einsum("gij,jr->rig", rho, gens) % F.p  # (r, dim V, |G|)
    return np.concatenate(list(imgs), axis=1) if gens.shape[1] else np.zeros((rho.shape[1], 0), dtype=np.int64)


def free_cover(M: GModule, minimal: bool = False) -> FreeCover:
    """Free module mapping onto ``M``; by default one free generator per basis vector."""
    F = M.field
    if minimal and not is_p_power(M.group.order, F.p) and M.group.order > 1:
        raise ValidationError("minimal covers are only computed over p-groups")
    gens = _cover_generators(M.rho, np.eye(M.dim, dtype=np.int64), F, minimal)
    r = gens.shape[1]
    free = GModule.regular(M.group, F, r)
    pi = _cover_map(M.group, M.rho, gens, F)
    K = F.kernel_basis(pi) if r else np.zeros((0, 0), dtype=np.int64)
    return FreeCover(free, pi, free.submodule(K), K)


@dataclass
class GComplex:
    """A bounded complex of modules; ``diffs[i]`` is ``d_{lo+i+1}``."""

    group: FiniteGroup
    field: PrimeField
    lo: int
    modules: list[GModule]
    diffs: list[np.ndarray]

    def __post_init__(self):
        if len(self.diffs) != max(len(self.modules) - 1, 0):
            raise ValidationError("need one differential between consecutive modules")

    @property
    def hi(self) -> int:
        return self.lo + len(self.modules) - 1

    def validate(self) -> None:
        p = self.field.p
        for i in range(len(self.diffs) - 1):
            if np.any((self.diffs[i] @ self.diffs[i + 1]) % p):
                raise ValidationError("d^2 != 0")
        for i, d in enumerate(self.diffs):
            src, dst = self.modules[i + 1], self.modules[i]
            lhs = np.einsum("gij,jk->gik", dst.rho, d) % p
            rhs = np.einsum("ij,gjk->gik", d, src.rho) % p
            if not np.array_equal(lhs, rhs):
                raise ValidationError("differential is not a module map")

    def restrict(self, K: Subgroup) -> "GComplex":
        return GComplex(K.as_group(), self.field, self.lo, [M.restrict(K) for M in self.modules], self.diffs)

    @classmethod
    def single(cls, M: GModule, degree: int = 0) -> "GComplex":
        return cls(M.group, M.field, degree, [M], [])

    @classmethod
    def from_perm(cls, C: PermComplex, K: Optional[Subgroup] = None) -> "GComplex":
        """Linearize a permutation complex, optionally restricting to ``K`` first."""
        terms = C.terms if K is None else [restrict(X, K) for X in C.terms]
        group = C.group if K is None else K.as_group()
        mods = [GModule.permutation(X, C.field) for X in terms]
        return cls(group, C.field, C.lo, mods, list(C.diffs))


@dataclass
class Resolution:
    """Free complex ``Q_lo .. Q_{hi+1}`` over ``group`` with comparison map to ``C``."""

    group: FiniteGroup
    ranks: list[int]  # free rank of each Q_i
    boundaries: list[np.ndarray]  # d^Q_i : Q_i -> Q_{i-1}, i = lo+1 .. hi+1
    comparison: list[np.ndarray]  # f_i : Q_i -> C_i
    syzygy: GModule
    syzygy_basis: np.ndarray  # columns in Q_{hi+1}


def resolve_and_syzygy(C: GComplex, minimal: Union[bool, str, None] = None) -> Resolution:
    """Build ``Q -> C`` bottom-up and return the kernel of the top free map.

    ``Q_i`` covers the pullback ``{(c, z) in C_i + Z_{i-1}(Q) : d c = f(z)}``.
    ``minimal`` defaults to radical covers over p-groups and to greedy
    generator selection otherwise.
    """
    G, F = C.group, C.field
    p = F.p
    if minimal is None:
        minimal = True if G.order == 1 or is_p_power(G.order, p) else "greedy"
    nG = G.order
    if not C.modules:
        empty = GModule(G, F, np.zeros((nG, 0, 0), dtype=np.int64), validate=False)
        return Resolution(G, [], [], [], empty, np.zeros((0, 0), dtype=np.int64))
    mods = list(C.modules) + [GModule(G, F, np.zeros((nG, 0, 0), dtype=np.int64), validate=False)]
    diffs = list(C.diffs) + [np.zeros((C.modules[-1].dim, 0), dtype=np.int64)]
    ranks: list[int] = []
    boundaries: list[np.ndarray] = []
    comparison: list[np.ndarray] = []
    q_prev_rho = np.zeros((nG, 0, 0), dtype=np.int64)  # action on Q_{i-1}
    f_prev = np.zeros((mods[0].dim, 0), dtype=np.int64)  # f_{i-1}, placeholder at the bottom
    dq_prev = np.zeros((0, 0), dtype=np.int64)  # d^Q_{i-1}
    for k, M in enumerate(mods):
        dc = M.dim
        dq = q_prev_rho.shape[1]
        # V = C_i (+) Q_{i-1}; kernel of (c, q) -> (d c - f q, d^Q q)
        if k == 0:
            Phi = np.zeros((0, dc + dq), dtype=np.int64)
        else:
            d_i = diffs[k - 1]  # C_i -> C_{i-1}
            top = np.hstack([d_i, (-f_prev) % p])
            bottom = np.hstack([np.zeros((dq_prev.shape[0], dc), dtype=np.int64), dq_prev])
            Phi = np.vstack([top, bottom]) % p
        basis = F.kernel_basis(Phi) if dc + dq else np.zeros((0, 0), dtype=np.int64)
        rhoV = np.zeros((nG, dc + dq, dc + dq), dtype=np.int64)
        rhoV[:, :dc, :dc] = M.rho
        rhoV[:, dc:, dc:] = q_prev_rho
        gens = _cover_generators(rhoV, basis, F, minimal)
        r = gens.shape[1]
        pi = _cover_map(G, rhoV, gens, F)  # (dc + dq) x r|G|
        f_i, dq_i = pi[:dc], pi[dc:]
        ranks.append(r)
        comparison.append(f_i)
        if k > 0:
            boundaries.append(dq_i)
        q_prev_rho = _free_action(G, r)
        f_prev, dq_prev = f_i, dq_i
    top_boundary = boundaries[-1]
    Zb = F.kernel_basis(top_boundary) if q_prev_rho.shape[1] else np.zeros((0, 0), dtype=np.int64)
    Qtop = GModule(G, F, q_prev_rho, validate=False)
    return Resolution(G, ranks, boundaries, comparison, Qtop.submodule(Zb), Zb)


def is_perfect(C: GComplex) -> bool:
    """Whether ``C`` is quasi-isomorphic to a bounded complex of projectives."""
    if not C.modules or all(M.dim == 0 for M in C.modules):
        return True
    P = sylow_subgroup(C.group, C.field.p)
    if P.order == 1:
        return True
    CP = C.restrict(P) if P.order < C.group.order else C
    res = resolve_and_syzygy(CP, minimal=True)
    Z = res.syzygy
    if Z.dim == 0:
        return True
    r = _p_group_free_rank(Z.rho, None, C.field)
    return r * P.order == Z.dim


def perm_complex_is_perfect(C: PermComplex) -> bool:
    if C.is_zero_object():
        return True
    P = sylow_subgroup(C.group, C.field.p)
    if P.order == 1:
        return True
    return is_perfect(GComplex.from_perm(C, P if P.order < C.group.order else None))


# ---------------------------------------------------------------------------
# support profiles


@dataclass
class SupportProfile:
    prime: int
    entries: list[tuple[Subgroup, str]] = field(default_factory=list)

    def status(self, H: Subgroup) -> str:
        for K, s in self.entries:
            if K.mask == H.mask:
                return s
        raise KeyError(H)

    def as_dict(self) -> dict[tuple[int, ...], str]:
        return {K.elements: s for K, s in self.entries}

    @property
    def eq_perf(self) -> bool:
        return all(s != OPEN for _, s in self.entries)

    @property
    def perfect_at_trivial(self) -> bool:
        return self.entries[0][1] != OPEN if self.entries else True

    def statuses(self) -> list[str]:
        return [s for _, s in self.entries]


def classify(C: PermComplex, H: Subgroup) -> str:
    D = apply_brauer(C, H)
    if homology(D).is_zero():
        return ABSENT
    return CLOSED_ONLY if perm_complex_is_perfect(D) else OPEN


def support_profile(
    C: PermComplex,
    pick: Optional[Callable[[Sequence[Subgroup]], Subgroup]] = None,
) -> SupportProfile:
    """One status per conjugacy class of p-subgroups, in class order.

    ``pick`` chooses the member of each class to evaluate at (default: the
    representative); the profile is keyed by class representatives regardless.
    """
    p = C.field.p
    prof = SupportProfile(p)
    for cls in conjugacy_classes_of_p_subgroups(C.group, p):
        H = pick(cls) if pick else cls[0]
        prof.entries.append((cls[0], classify(C, H)))
    return prof


def is_eq_perf(C: PermComplex) -> bool:
    p = C.field.p
    for cls in conjugacy_classes_of_p_subgroups(C.group, p):
        if classify(C, cls[0]) == OPEN:
            return False
    return True


def vanishes_in_stmod(C: PermComplex) -> bool:
    return perm_complex_is_perfect(C)


def jordan_block_sizes(A: np.ndarray, F: PrimeField) -> list[int]:
    """Jordan block sizes of a unipotent matrix, from ranks of powers of ``A - I``."""
    d = A.shape[0]
    N = (A - np.eye(d, dtype=np.int64)) % F.p
    ranks = [d]
    P = np.eye(d, dtype=np.int64)
    while ranks[-1] > 0:
        P = F.matmul(P, N)
        ranks.append(F.rank(P))
        if len(ranks) > d + 1:
            raise ValidationError("matrix is not unipotent")
    # number of blocks of size >= k is rank(N^{k-1}) - rank(N^k)
    at_least = [ranks[k - 1] - ranks[k] for k in range(1, len(ranks))]
    sizes = []
    for k, c in enumerate(at_least, start=1):
        nxt = at_least[k] if k < len(at_least) else 0
        sizes += [k] * (c - nxt)
    return sorted(sizes, reverse=True)
