"""Shared constructions for the test suite."""

from __future__ import annotations

import numpy as np

from stperm.groups import FiniteGroup, Subgroup, all_subgroups, localize, p_subgroups
from stperm.gsets import (
    GSet,
    conjugate,
    coset_gset,
    disjoint_union,
    induce,
    restrict,
)


def double_coset_representatives(K: Subgroup, H: Subgroup) -> list[int]:
    G = K.parent
    seen: set[int] = set()
    reps = []
    for g in range(G.order):
        if g in seen:
            continue
        reps.append(g)
        seen |= {G.mul(G.mul(k, g), h) for k in K.elements for h in H.elements}
    return reps


def mackey_sides(K: Subgroup, H: Subgroup, X: GSet) -> tuple[GSet, GSet]:
    """``Res_K Ind_H X`` and the double-coset sum, both as ``K.as_group()``-sets."""
    G = K.parent
    lhs = restrict(induce(X, H), K)
    parts = []
    for g in double_coset_representatives(K, H):
        Hg = H.conjugate(g)
        L = G.subgroup(sorted(set(K.elements) & set(Hg.elements)))
        Xg = restrict(conjugate(X, g), localize(L, Hg))
        LK = localize(L, K)
        parts.append(induce(GSet(LK.as_group(), Xg.action), LK))
    return lhs, disjoint_union(parts, K.as_group())


def burnside_marks(X: GSet) -> list[int]:
    """``|X^L|`` for every subgroup ``L`` of the acting group: a complete isomorphism invariant."""
    A = X.group
    out = []
    for L in all_subgroups(A):
        rows = X.action[L.elements_array]
        out.append(int(np.sum(np.all(rows == np.arange(X.size), axis=0))) if X.size else 0)
    return out


def random_gset(G: FiniteGroup, rng: np.random.Generator, max_orbits: int = 2, p: int | None = None) -> GSet:
    pool = p_subgroups(G, p) + [G.whole] if p else all_subgroups(G)
    k = int(rng.integers(1, max_orbits + 1))
    return disjoint_union([coset_gset(G, pool[int(i)]) for i in rng.integers(len(pool), size=k)], G)


def random_invertible(n: int, p: int, rng: np.random.Generator) -> np.ndarray:
    from stperm.gf import PrimeField

    F = PrimeField(p)
    while True:
        S = rng.integers(0, p, size=(n, n))
        if F.rank(S) == n:
            return S


def change_basis(M, S: np.ndarray):
    """The same module written in the basis given by the columns of ``S``."""
    from stperm.stable import GModule

    F = M.field
    Si = F.inverse(S)
    rho = np.einsum("ij,gjk,kl->gil", Si, M.rho, S) % F.p
    return GModule(M.group, F, rho)


def random_module(G: FiniteGroup, p: int, rng: np.random.Generator, max_dim: int = 12):
    """A permutation module, or the kernel or image of a random map between two, in a random basis."""
    from stperm.gf import PrimeField
    from stperm.gsets import random_equivariant_map
    from stperm.stable import GModule

    F = PrimeField(p)
    while True:
        X, Y = random_gset(G, rng, 2), random_gset(G, rng, 2)
        kind = int(rng.integers(3))
        if kind == 0:
            M = GModule.permutation(X, F)
        else:
            f = random_equivariant_map(X, Y, F, rng)
            B = F.kernel_basis(f.matrix) if kind == 1 else F.image_basis(f.matrix)
            big = GModule.permutation(X if kind == 1 else Y, F)
            M = big.submodule(B)
        if 0 < M.dim <= max_dim:
            return change_basis(M, random_invertible(M.dim, p, rng))


def jordan_matrix(blocks: list[int], p: int, rng: np.random.Generator) -> np.ndarray:
    """A random conjugate of the unipotent Jordan matrix with the given block sizes."""
    d = sum(blocks)
    J = np.eye(d, dtype=np.int64)
    pos = 0
    for b in blocks:
        for i in range(b - 1):
            J[pos + i, pos + i + 1] = 1
        pos += b
    from stperm.gf import PrimeField

    F = PrimeField(p)
    S = random_invertible(d, p, rng)
    return F.matmul(F.matmul(S, J), F.inverse(S))


def find_isomorphism(A: FiniteGroup, B: FiniteGroup) -> list[int]:
    """``phi`` with ``phi[a b] = phi[a] phi[b]``, by trying images of ``A``'s generators."""
    import itertools

    gens = list(A.generators)
    for imgs in itertools.product(range(B.order), repeat=len(gens)):
        phi = {0: 0}
        frontier = [0]
        ok = True
        while frontier and ok:
            a = frontier.pop()
            for s, t in zip(gens, imgs):
                x, y = int(A.table[a, s]), int(B.table[phi[a], t])
                if x in phi:
                    if phi[x] != y:
                        ok = False
                        break
                else:
                    phi[x] = y
                    frontier.append(x)
        if ok and len(phi) == A.order and len(set(phi.values())) == B.order:
            return [phi[a] for a in range(A.order)]
    raise ValueError("groups are not isomorphic")


def transport_complex(C, B: FiniteGroup):
    """Move a permutation complex along an isomorphism from its group to ``B``."""
    from stperm.complexes import PermComplex

    phi = np.array(find_isomorphism(C.group, B), dtype=np.int64)
    terms = []
    for X in C.terms:
        act = np.empty_like(X.action)
        act[phi] = X.action
        terms.append(GSet(B, act))
    return PermComplex(B, C.field, C.lo, terms, C.diffs)
