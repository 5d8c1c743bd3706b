"""Dense exact linear algebra over prime fields F_p.

Matrices are plain ``numpy`` int64 arrays whose entries are residues in
``[0, p)``.  Products of two residues below 251 summed over a few million
terms stay far below 2**63, so ``(a @ b) % p`` is exact.
"""

from __future__ import annotations

from typing import Optional

import numpy as np

MAX_PRIME = 251


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


class PrimeField:
    """The prime field F_p together with its elimination routines."""

    __slots__ = ("p", "_inv")

    def __init__(self, p: int):
        p = int(p)
        if not 2 <= p <= MAX_PRIME or not is_prime(p):
            raise ValueError(f"p must be a prime in [2, {MAX_PRIME}], got {p}")
        self.p = p
        inv = np.zeros(p, dtype=np.int64)
        for a in range(1, p):
            inv[a] = pow(a, p - 2, p)
        self._inv = inv

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("F", self.p))

    # construction -------------------------------------------------------

    def array(self, data, shape: Optional[tuple] = None) -> np.ndarray:
        """Coerce ``data`` to a 2-d residue matrix."""
        a = np.array(data, dtype=np.int64)
        if shape is not None:
            a = a.reshape(shape)
        if a.ndim == 1:
            a = a.reshape(1, -1) if a.size else a.reshape(0, 0)
        if a.ndim != 2:
            raise ValueError(f"expected a 2-d matrix, got shape {a.shape}")
        return a % self.p

    def zeros(self, rows: int, cols: int) -> np.ndarray:
        return np.zeros((rows, cols), dtype=np.int64)

    def identity(self, n: int) -> np.ndarray:
        return np.eye(n, dtype=np.int64)

    def inverse_scalar(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return int(self._inv[a])

    # arithmetic ---------------------------------------------------------

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return (a @ b) % self.p

    def rref(self, m: np.ndarray) -> tuple[np.ndarray, list[int]]:
        """Reduced row echelon form and the list of pivot columns."""
        p = self.p
        a = np.array(m, dtype=np.int64) % p
        rows, cols = a.shape
        pivots: list[int] = []
        r = 0
        for c in range(cols):
            if r == rows:
                break
            nz = np.flatnonzero(a[r:, c])
            if nz.size == 0:
                continue
            piv = r + int(nz[0])
            if piv != r:
                a[[r, piv]] = a[[piv, r]]
            a[r, c:] = (a[r, c:] * self._inv[a[r, c]]) % p
            col = a[:, c].copy()
            col[r] = 0
            hit = np.flatnonzero(col)
            if hit.size:
                a[hit, c:] = (a[hit, c:] - np.outer(col[hit], a[r, c:])) % p
            pivots.append(c)
            r += 1
        return a, pivots

    def rank(self, m: np.ndarray) -> int:
        m = np.asarray(m)
        if m.size == 0:
            return 0
        # eliminate along the shorter side
        if m.shape[0] > m.shape[1]:
            m = m.T
        return len(self.rref(m)[1])

    def kernel_basis(self, m: np.ndarray) -> np.ndarray:
        """Columns spanning the null space of ``m`` (shape cols x nullity)."""
        m = np.asarray(m, dtype=np.int64)
        rows, cols = m.shape
        if rows == 0 or cols == 0:
            return np.eye(cols, dtype=np.int64)
        r, pivots = self.rref(m)
        pivot_set = set(pivots)
        free = [c for c in range(cols) if c not in pivot_set]
        basis = np.zeros((cols, len(free)), dtype=np.int64)
        basis[free, np.arange(len(free))] = 1
        if pivots and free:
            basis[pivots, :] = (-r[: len(pivots)][:, free]) % self.p
        return basis

    def image_basis(self, m: np.ndarray) -> np.ndarray:
        """Independent columns of ``m`` spanning its column space."""
        m = np.asarray(m, dtype=np.int64)
        if m.size == 0:
            return np.zeros((m.shape[0], 0), dtype=np.int64)
        _, pivots = self.rref(m)
        return m[:, pivots] % self.p

    def solve(self, m: np.ndarray, b: np.ndarray) -> Optional[np.ndarray]:
        """Some ``x`` with ``m @ x == b`` mod p, or ``None`` if unsolvable."""
        m = np.asarray(m, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        vector = b.ndim == 1
        if vector:
            b = b.reshape(-1, 1)
        if m.ndim != 2 or m.shape[0] != b.shape[0]:
            raise ValueError(f"dimension mismatch: {m.shape} vs {b.shape}")
        cols = m.shape[1]
        x = np.zeros((cols, b.shape[1]), dtype=np.int64)
        if m.shape[0] == 0:
            return x[:, 0] if vector else x
        r, pivots = self.rref(np.hstack([m, b]))
        if pivots and pivots[-1] >= cols:
            return None
        for j, pc in enumerate(pivots):
            x[pc] = r[j, cols:]
        return x[:, 0] if vector else x

    def inverse(self, m: np.ndarray) -> np.ndarray:
        n = m.shape[0]
        if m.shape != (n, n):
            raise ValueError("inverse of a non-square matrix")
        x = self.solve(m, np.eye(n, dtype=np.int64))
        if x is None or self.rank(m) < n:
            raise ValueError("matrix is singular")
        return x


def rank(m: np.ndarray, p: int) -> int:
    return PrimeField(p).rank(m)


def kernel_basis(m: np.ndarray, p: int) -> np.ndarray:
    return PrimeField(p).kernel_basis(m)


def solve(m: np.ndarray, b: np.ndarray, p: int) -> Optional[np.ndarray]:
    return PrimeField(p).solve(m, b)
