"""Regenerate the JSON group catalog under src/stperm/data/catalog.

Run from the repository root:  python3 tools/build_catalog.py
"""

from __future__ import annotations

import itertools
import json
import sys
from pathlib import Path

import numpy as np

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from stperm.catalog import metacyclic_group, regular_permutations  # noqa: E402
from stperm.groups import FiniteGroup, direct_product  # noqa: E402

OUT = ROOT / "src" / "stperm" / "data" / "catalog"


def cycle(n: int, offset: int = 0, degree: int = 0) -> list[int]:
    degree = max(degree, offset + n)
    perm = list(range(degree))
    for i in range(n):
        perm[offset + i] = offset + (i + 1) % n
    return perm


def product_of_cycles(*orders: int) -> list[list[int]]:
    """Generators of C_a x C_b x ... acting on disjoint cycles."""
    degree = sum(orders)
    gens, off = [], 0
    for n in orders:
        gens.append(cycle(n, off, degree))
        off += n
    return gens


def perm_from_cycles(degree: int, *cycles: tuple[int, ...]) -> list[int]:
    perm = list(range(degree))
    for c in cycles:
        for i, a in enumerate(c):
            perm[a] = c[(i + 1) % len(c)]
    return perm


def dihedral(order: int) -> list[list[int]]:
    n = order // 2
    rot = cycle(n)
    refl = [(-i) % n for i in range(n)]
    return [rot, refl]


def metacyclic_regular(m, s, r, t) -> list[list[int]]:
    G = metacyclic_group(m, s, r, t)
    x, y = s, 1  # normal-form indices of x and y
    return regular_permutations(G, [x, y])


def regular_of(G: FiniteGroup) -> list[list[int]]:
    return regular_permutations(G, G.generators)


def affine_f3(matrices) -> list[list[int]]:
    """Affine group on F_3^2 generated by the given linear maps and one translation."""
    pts = [(a, b) for a in range(3) for b in range(3)]
    idx = {v: i for i, v in enumerate(pts)}
    gens = []
    for M in matrices:
        gens.append([idx[((M[0][0] * a + M[0][1] * b) % 3, (M[1][0] * a + M[1][1] * b) % 3)] for a, b in pts])
    gens.append([idx[((a + 1) % 3, b)] for a, b in pts])
    return gens


def linear_f3(matrices) -> list[list[int]]:
    pts = [(a, b) for a in range(3) for b in range(3) if (a, b) != (0, 0)]
    idx = {v: i for i, v in enumerate(pts)}
    return [
        [idx[((M[0][0] * a + M[0][1] * b) % 3, (M[1][0] * a + M[1][1] * b) % 3)] for a, b in pts]
        for M in matrices
    ]


def heisenberg3() -> FiniteGroup:
    mats = []
    for a, b, c in itertools.product(range(3), repeat=3):
        mats.append(np.array([[1, a, c], [0, 1, b], [0, 0, 1]]))
    mats.sort(key=lambda m: (m[0, 1], m[1, 2], m[0, 2]) != (0, 0, 0))
    key = {(int(m[0, 1]), int(m[1, 2]), int(m[0, 2])): i for i, m in enumerate(mats)}
    n = len(mats)
    table = np.zeros((n, n), dtype=np.int64)
    for i, a in enumerate(mats):
        for j, b in enumerate(mats):
            c = (a @ b) % 3
            table[i, j] = key[(int(c[0, 1]), int(c[1, 2]), int(c[0, 2]))]
    return FiniteGroup(table)


def entries():
    yield "C1", "C_1", [], "trivial group"
    for p, top in ((2, 4), (3, 4), (5, 4)):
        for e in range(1, top + 1):
            n = p**e
            yield f"C{n}", f"C_{n}", [cycle(n)], f"cyclic group of order {n}"
    yield "C6", "C_6", [cycle(6)], "cyclic group of order 6"
    yield "V4", "V_4", product_of_cycles(2, 2), "Klein four group"
    yield "C2xC4", "C_2 x C_4", product_of_cycles(2, 4), "abelian, order 8"
    yield "C2xC2xC2", "C_2^3", product_of_cycles(2, 2, 2), "elementary abelian, order 8"
    yield "C3xC3", "C_3^2", product_of_cycles(3, 3), "elementary abelian, order 9"
    yield "C5xC5", "C_5^2", product_of_cycles(5, 5), "elementary abelian, order 25"
    yield "C2xC8", "C_2 x C_8", product_of_cycles(2, 8), "abelian, order 16"
    yield "C4xC4", "C_4 x C_4", product_of_cycles(4, 4), "abelian, order 16"
    yield "C2xC2xC4", "C_2^2 x C_4", product_of_cycles(2, 2, 4), "abelian, order 16"
    yield "C3xC9", "C_3 x C_9", product_of_cycles(3, 9), "abelian, order 27"
    yield "D8", "D_8", dihedral(8), "dihedral group of order 8"
    yield "D16", "D_16", dihedral(16), "dihedral group of order 16"
    yield "D32", "D_32", dihedral(32), "dihedral group of order 32"
    yield "SD16", "SD_16", metacyclic_regular(8, 2, 3, 0), "semidihedral group of order 16"
    yield "M16", "M_16", metacyclic_regular(8, 2, 5, 0), "modular group of order 16"
    yield "Q8", "Q_8", metacyclic_regular(4, 2, 3, 2), "quaternion group"
    yield "Q16", "Q_16", metacyclic_regular(8, 2, 7, 4), "generalized quaternion group of order 16"
    yield "Q32", "Q_32", metacyclic_regular(16, 2, 15, 8), "generalized quaternion group of order 32"
    yield "C2xQ8", "C_2 x Q_8", regular_of(direct_product(FiniteGroup([[0, 1], [1, 0]]), metacyclic_group(4, 2, 3, 2))), "order 16"
    yield "C2xD8", "C_2 x D_8", [cycle(2, 0, 6)] + [[0, 1] + [2 + x for x in g] for g in dihedral(8)], "order 16"
    yield "C9semiC3", "C_9 : C_3", metacyclic_regular(9, 3, 4, 0), "nonabelian of order 27, exponent 9"
    yield "He3", "He_3", regular_of(heisenberg3()), "Heisenberg group mod 3, exponent 3"
    yield "S3", "S_3", [perm_from_cycles(3, (0, 1, 2)), perm_from_cycles(3, (0, 1))], "symmetric group on 3 letters"
    yield "D10", "D_10", dihedral(10), "dihedral group of order 10"
    yield "Dic12", "Dic_12", metacyclic_regular(6, 2, 5, 3), "dicyclic group of order 12"
    yield "A4", "A_4", [perm_from_cycles(4, (0, 1, 2)), perm_from_cycles(4, (0, 1), (2, 3))], "alternating group on 4 letters"
    yield "S4", "S_4", [perm_from_cycles(4, (0, 1, 2, 3)), perm_from_cycles(4, (0, 1))], "symmetric group on 4 letters"
    yield "SL2F3", "SL_2(F_3)", linear_f3([[[1, 1], [0, 1]], [[1, 0], [1, 1]]]), "special linear group on F_3^2"
    yield (
        "Q8_semidirect_F3sq",
        "Q_8 : F_3^2",
        affine_f3([[[0, -1], [1, 0]], [[1, 1], [1, -1]]]),
        "affine group F_3^2 : Q_8 for Q_8 in GL_2(F_3) generated by i=[[0,-1],[1,0]], j=[[1,1],[1,-1]]",
    )


ORDERS = {
    "C1": 1, "C6": 6, "V4": 4, "C2xC4": 8, "C2xC2xC2": 8, "C3xC3": 9, "C5xC5": 25,
    "C2xC8": 16, "C4xC4": 16, "C2xC2xC4": 16, "C3xC9": 27, "D8": 8, "D16": 16, "D32": 32,
    "SD16": 16, "M16": 16, "Q8": 8, "Q16": 16, "Q32": 32, "C2xQ8": 16, "C2xD8": 16,
    "C9semiC3": 27, "He3": 27, "S3": 6, "D10": 10, "Dic12": 12, "A4": 12, "S4": 24,
    "SL2F3": 24, "Q8_semidirect_F3sq": 72,
}


def main() -> None:
    from stperm.groups import group_from_permutations

    OUT.mkdir(parents=True, exist_ok=True)
    for old in OUT.glob("*.json"):
        old.unlink()
    for name, display, gens, desc in entries():
        order = ORDERS.get(name) or int(name[1:])
        G = group_from_permutations(gens, name=name)
        assert G.order == order, (name, G.order, order)
        doc = {"name": name, "display": display, "order": order, "description": desc, "generators": gens}
        text = json.dumps(doc, separators=(",", ":"))
        (OUT / f"{name}.json").write_text(text + "\n")
        print(f"{name:20s} order {order}")


if __name__ == "__main__":
    main()
