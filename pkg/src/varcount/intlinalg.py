"""Exact integer matrices and Smith normal form with transform tracking.

Matrices are plain ``list[list[int]]`` in row-major order; Python integers
keep every intermediate exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import ParseError, ShapeMismatch

IntMatrix = list[list[int]]

__all__ = [
    "IntMatrix",
    "SmithDecomposition",
    "as_matrix",
    "identity",
    "matmul",
    "matvec",
    "transpose",
    "det",
    "snf",
    "verify_decomposition",
    "format_matrix",
    "parse_matrix",
]


def as_matrix(rows: Sequence[Sequence[int]], cols: int | None = None) -> IntMatrix:
    """Copy ``rows`` into a fresh matrix, checking that it is rectangular."""
    out = [[int(x) for x in row] for row in rows]
    widths = {len(r) for r in out}
    if len(widths) > 1:
        raise ShapeMismatch(f"ragged matrix with row lengths {sorted(widths)}")
    if cols is not None and out and len(out[0]) != cols:
        raise ShapeMismatch(f"expected {cols} columns, got {len(out[0])}")
    return out


def shape(A: Sequence[Sequence[int]]) -> tuple[int, int]:
    return len(A), (len(A[0]) if A else 0)


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(A: Sequence[Sequence[int]]) -> IntMatrix:
    return [list(col) for col in zip(*A)]


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> IntMatrix:
    if shape(A)[1] != len(B):
        raise ShapeMismatch(f"cannot multiply {shape(A)} by {shape(B)}")
    Bt = transpose(B) if B else []
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(A: Sequence[Sequence[int]], x: Sequence[int]) -> list[int]:
    if A and len(A[0]) != len(x):
        raise ShapeMismatch(f"matrix has {len(A[0])} columns, vector has {len(x)} entries")
    return [sum(a * b for a, b in zip(row, x)) for row in A]


def det(A: Sequence[Sequence[int]]) -> int:
    """Determinant by fraction-free (Bareiss) elimination."""
    n = len(A)
    if any(len(r) != n for r in A):
        raise ShapeMismatch("determinant needs a square matrix")
    if n == 0:
        return 1
    M = [list(r) for r in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ E @ V == diag(invariants)`` padded with zeros.

    ``U`` and ``V`` are unimodular; they are not unique, the invariant
    factors are.
    """

    U: tuple[tuple[int, ...], ...]
    V: tuple[tuple[int, ...], ...]
    invariants: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.invariants)

    @property
    def rows(self) -> int:
        return len(self.U)

    @property
    def cols(self) -> int:
        return len(self.V)

    def diagonal(self) -> IntMatrix:
        D = [[0] * self.cols for _ in range(self.rows)]
        for i, d in enumerate(self.invariants):
            D[i][i] = d
        return D


def _pick_pivot(A, t, cells):
    best = None
    for i, j in cells:
        v = A[i][j]
        if v:
            key = (abs(v), i, j)
            if best is None or key < best:
                best = key
    return None if best is None else (best[1], best[2])


def snf(E: Sequence[Sequence[int]]) -> SmithDecomposition:
    """Smith normal form of ``E`` with unimodular transforms.

    Pivots are the smallest nonzero absolute value in the active block, ties
    broken by lowest row then lowest column; that makes ``U`` and ``V``
    deterministic.
    """
    A = as_matrix(E)
    m, n = shape(A)
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        if i != j:
            A[i], A[j] = A[j], A[i]
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        if i != j:
            for row in A:
                row[i], row[j] = row[j], row[i]
            for row in V:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, c):
        # row_dst += c * row_src
        A[dst] = [a + c * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + c * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, c):
        for row in A:
            row[dst] += c * row[src]
        for row in V:
            row[dst] += c * row[src]

    invariants = []
    for t in range(min(m, n)):
        pos = _pick_pivot(A, t, ((i, j) for i in range(t, m) for j in range(t, n)))
        if pos is None:
            break
        swap_rows(t, pos[0])
        swap_cols(t, pos[1])
        while True:
            p = A[t][t]
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
            rest = [(i, t) for i in range(t + 1, m)] + [(t, j) for j in range(t + 1, n)]
            pos = _pick_pivot(A, t, rest)
            if pos is not None:
                # a remainder smaller than the pivot survived; promote it
                swap_rows(t, pos[0])
                swap_cols(t, pos[1])
                continue
            bad = next(
                (
                    i
                    for i in range(t + 1, m)
                    for j in range(t + 1, n)
                    if A[i][j] % p
                ),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-u for u in U[t]]
        invariants.append(A[t][t])

    return SmithDecomposition(
        U=tuple(map(tuple, U)),
        V=tuple(map(tuple, V)),
        invariants=tuple(invariants),
    )


def verify_decomposition(E: Sequence[Sequence[int]], dec: SmithDecomposition) -> bool:
    """True iff ``dec`` is a valid Smith decomposition of ``E``."""
    m, n = shape(as_matrix(E))
    if len(dec.U) != m or any(len(r) != m for r in dec.U):
        raise ShapeMismatch(f"U must be {m}x{m}")
    if len(dec.V) != n or any(len(r) != n for r in dec.V):
        raise ShapeMismatch(f"V must be {n}x{n}")
    d = dec.invariants
    if len(d) > min(m, n) or any(x < 1 for x in d):
        return False
    if any(d[i + 1] % d[i] for i in range(len(d) - 1)):
        return False
    if abs(det(dec.U)) != 1 or abs(det(dec.V)) != 1:
        return False
    return matmul(matmul(dec.U, E), dec.V) == dec.diagonal()


def format_matrix(A: Sequence[Sequence[int]]) -> str:
    if not A:
        return ""
    width = max(len(str(x)) for row in A for x in row)
    return "\n".join(" ".join(str(x).rjust(width) for x in row) for row in A)


def parse_matrix(text: str) -> IntMatrix:
    """Whitespace-separated integer rows; ``#`` comments and an optional
    ``format = 1`` header line are accepted."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.replace(" ", "").startswith("format="):
            version = line.split("=", 1)[1].strip()
            if version != "1":
                raise ParseError(f"unsupported format version {version}", lineno, 1)
            continue
        try:
            rows.append([int(tok) for tok in line.split()])
        except ValueError:
            raise ParseError(f"expected integers, got {line!r}", lineno, 1) from None
    if not rows:
        raise ParseError("empty matrix")
    return as_matrix(rows)
