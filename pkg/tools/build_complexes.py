"""Regenerate the example complex documents under src/stperm/data/complexes.

Run from the repository root:  python3 tools/build_complexes.py
"""

from __future__ import annotations

import sys
from pathlib import Path

import numpy as np

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from stperm.catalog import catalog  # noqa: E402
from stperm.complexes import PermComplex, cyclic_acyclic_complex, koszul_object  # noqa: E402
from stperm.formats import build_complex, complex_to_spec  # noqa: E402
from stperm.gf import PrimeField  # noqa: E402
from stperm.gsets import regular_gset  # noqa: E402

OUT = ROOT / "src" / "stperm" / "data" / "complexes"


def free_example() -> PermComplex:
    """``kV_4 -> kV_4`` given by ``x -> x + x s`` for a generator ``s``."""
    G = catalog("V4")
    F = PrimeField(2)
    R = regular_gset(G)
    s = G.generators[0]
    d = np.eye(G.order, dtype=np.int64)
    for x in range(G.order):
        d[G.mul(x, s), x] += 1
    return PermComplex(G, F, 0, [R, R], [d])


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    examples = {
        "cp_acyclic": ("C3", cyclic_acyclic_complex(catalog("C3"), PrimeField(3))),
        "v4_koszul": ("V4", koszul_object(catalog("V4"), PrimeField(2))),
        "kg_free": ("V4", free_example()),
    }
    for name, (group, C) in examples.items():
        spec = complex_to_spec(C, group)
        build_complex(spec)  # validates equivariance and d^2 = 0
        (OUT / f"{name}.json").write_text(spec.dumps())
        print(name, [len(o) for _, o in spec.terms])


if __name__ == "__main__":
    main()
