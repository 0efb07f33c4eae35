"""Exact integer linear algebra for finite abelian group homomorphisms.

Two tools live here.  ``smith_normal_form`` works over Z with Python
integers and is used wherever invariant factors are needed.
``ModLattice`` maintains a Hermite basis of a lattice that contains
``E * Z^g``; all arithmetic stays bounded by ``E`` so numpy int64 is
safe for the small exponents that occur in practice.
"""
from __future__ import annotations

from math import gcd

import numpy as np

from .errors import InternalInconsistencyError


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(A) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Return ``(U, S, V)`` with ``U @ A @ V == S`` and ``S`` in Smith form.

    ``U`` and ``V`` are unimodular, the diagonal of ``S`` is non-negative
    and each diagonal entry divides the next.
    """
    arr = np.asarray(A, dtype=object)
    if arr.ndim != 2:
        arr = arr.reshape(len(arr), -1) if arr.size else np.zeros((0, 0), dtype=object)
    m, n = arr.shape
    S = [[int(v) for v in row] for row in arr.tolist()]
    U = _identity(m)
    V = _identity(n)

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in S:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row[dst] += q * row[src]
        if q:
            S[dst] = [a + q * b for a, b in zip(S[dst], S[src])]
            U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        if q:
            for row in S:
                row[dst] += q * row[src]
            for row in V:
                row[dst] += q * row[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                row = S[i]
                for j in range(t, n):
                    v = row[j]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), i, j)
                        if best[0] == 1:
                            break
                if best is not None and best[0] == 1:
                    break
            if best is None:
                return U, S, V
            _, i, j = best
            if i != t:
                swap_rows(t, i)
            if j != t:
                swap_cols(t, j)
            p = S[t][t]
            clean = True
            for i in range(t + 1, m):
                if S[i][t]:
                    add_row(i, t, -(S[i][t] // p))
                    if S[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if S[t][j]:
                    add_col(j, t, -(S[t][j] // p))
                    if S[t][j]:
                        clean = False
            if not clean:
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if S[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is not None:
                add_row(t, bad, 1)
                continue
            break
        if S[t][t] < 0:
            S[t] = [-v for v in S[t]]
            U[t] = [-v for v in U[t]]
    return U, S, V


def invariant_factors_of(relations, rank: int) -> list[int]:
    """Invariant factors (>1, or 0 for free parts) of ``Z^rank / colspan(relations)``."""
    if rank == 0:
        return []
    rel = np.asarray(relations, dtype=object).reshape(rank, -1)
    if rel.shape[1] == 0:
        return [0] * rank
    _, S, _ = smith_normal_form(rel)
    diag = [S[i][i] if i < len(S[0]) else 0 for i in range(rank)]
    return sorted((d for d in diag if d != 1), key=lambda d: (d == 0, d))


def mat_inverse_unimodular(U: list[list[int]]) -> list[list[int]]:
    """Exact inverse of a unimodular integer matrix (Gauss-Jordan over Q)."""
    from fractions import Fraction

    n = len(U)
    A = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(U)]
    for c in range(n):
        p = next(r for r in range(c, n) if A[r][c] != 0)
        A[c], A[p] = A[p], A[c]
        piv = A[c][c]
        A[c] = [v / piv for v in A[c]]
        for r in range(n):
            if r != c and A[r][c] != 0:
                f = A[r][c]
                A[r] = [a - f * b for a, b in zip(A[r], A[c])]
    out = [[v for v in row[n:]] for row in A]
    if any(v.denominator != 1 for row in out for v in row):
        raise InternalInconsistencyError("matrix is not unimodular")
    return [[int(v) for v in row] for row in out]


class ModLattice:
    """Hermite basis of a lattice ``L`` with ``E * Z^g <= L <= Z^g``.

    Rows are inserted one at a time.  Because ``E * Z^g`` is always in
    the span, incoming rows may be reduced mod ``E`` freely; basis rows are
    only ever changed by unimodular moves, so the span is exact.
    """

    def __init__(self, g: int, E: int):
        if E < 1:
            raise ValueError("exponent must be positive")
        self.g = g
        self.E = E
        self.B = np.eye(g, dtype=np.int64) * E

    @property
    def pivots(self) -> np.ndarray:
        return np.diag(self.B).copy()

    def _reduce_row(self, j: int) -> None:
        # bring B[j, k] (k > j) into [0, B[k, k]) using the rows below
        B = self.B
        for k in range(j + 1, self.g):
            p = B[k, k]
            q = B[j, k] // p
            if q:
                B[j, k:] -= q * B[k, k:]

    def insert(self, row) -> bool:
        """Add ``row`` to the lattice; return True if the lattice grew."""
        E = self.E
        B = self.B
        r = np.asarray(row, dtype=np.int64) % E
        grew = False
        while True:
            nz = np.flatnonzero(r)
            if nz.size == 0:
                return grew
            j = int(nz[0])
            p = int(B[j, j])
            v = int(r[j])
            if v % p == 0:
                r[j:] -= (v // p) * B[j, j:]
                r %= E
                continue
            d, s, t = _xgcd(p, v)
            old = B[j].copy()
            B[j] = s * old + t * r
            r = (p // d) * r - (v // d) * old
            r %= E
            self._reduce_row(j)
            grew = True

    def insert_many(self, rows) -> None:
        rows = np.asarray(rows, dtype=np.int64)
        if rows.size == 0:
            return
        rows = np.unique(rows % self.E, axis=0)
        for row in rows:
            if row.any():
                self.insert(row)

    def canonical(self) -> np.ndarray:
        for j in range(self.g - 1, -1, -1):
            self._reduce_row(j)
        return self.B.copy()

    def contains(self, v) -> bool:
        r = np.asarray(v, dtype=np.int64) % self.E
        B = self.B
        for j in range(self.g):
            if r[j]:
                p = int(B[j, j])
                if r[j] % p:
                    return False
                r[j:] -= (int(r[j]) // p) * B[j, j:]
                r %= self.E
        return True

    def index(self) -> int:
        """``[Z^g : L]``."""
        out = 1
        for p in self.pivots:
            out *= int(p)
        return out


def lattice_dual_basis(H: np.ndarray, E: int) -> list[list[int]]:
    """Columns of ``C = E * H^{-1}`` for upper-triangular ``H`` with diagonal dividing ``E``.

    ``C`` spans ``{x in Z^g : H x = 0 mod E}``.
    """
    g = H.shape[0]
    Hl = [[int(v) for v in row] for row in H]
    C = [[0] * g for _ in range(g)]
    for c in range(g):
        for i in range(c, -1, -1):
            acc = E if i == c else 0
            for k in range(i + 1, c + 1):
                if Hl[i][k] and C[k][c]:
                    acc -= Hl[i][k] * C[k][c]
            if acc % Hl[i][i]:
                raise InternalInconsistencyError("non-integral dual basis")
            C[i][c] = acc // Hl[i][i]
    return C


def solve_mod_system(A: np.ndarray, t: np.ndarray, moduli: np.ndarray) -> np.ndarray | None:
    """Find integer ``x`` with ``A x = t (mod moduli)`` row-wise, or None.

    Uses a Hermite basis of the augmented system, which is consistent
    exactly when its last pivot equals the common exponent.
    """
    A = np.asarray(A, dtype=np.int64)
    t = np.asarray(t, dtype=np.int64)
    moduli = np.asarray(moduli, dtype=np.int64)
    g = A.shape[1]
    E = 1
    for m in moduli.tolist():
        E = E * m // gcd(E, m)
    scale = (E // moduli)[:, None]
    aug = np.concatenate([A * scale, t[:, None] * scale], axis=1)
    lat = ModLattice(g + 1, E)
    lat.insert_many(aug)
    B = lat.canonical()
    if B[g, g] != E:
        return None
    x = [0] * g
    for j in range(g - 1, -1, -1):
        c = int(B[j, g]) - sum(int(B[j, k]) * x[k] for k in range(j + 1, g))
        p = int(B[j, j])
        if c % p:
            raise InternalInconsistencyError("back-substitution failed")
        x[j] = (c // p) % (E // p)
    return np.array(x, dtype=np.int64)


def rank_mod_p(A, p: int) -> int:
    """Rank of an integer matrix over the prime field ``F_p`` (plain Gaussian elimination)."""
    M = np.asarray(A, dtype=np.int64) % p
    rows, cols = M.shape
    rank = 0
    for c in range(cols):
        if rank == rows:
            break
        nz = np.flatnonzero(M[rank:, c])
        if nz.size == 0:
            continue
        piv = rank + int(nz[0])
        if piv != rank:
            M[[rank, piv]] = M[[piv, rank]]
        inv = pow(int(M[rank, c]), -1, p)
        M[rank] = (M[rank] * inv) % p
        others = np.flatnonzero(M[:, c])
        others = others[others != rank]
        if others.size:
            M[others] = (M[others] - np.outer(M[others, c], M[rank])) % p
        rank += 1
    return rank
