"""Solvability and solution counts for ``H Y = B (mod m)`` via Smith form."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, prod
from typing import Sequence

from .errors import ShapeMismatch
from .intlinalg import SmithDecomposition, as_matrix, matvec, snf

__all__ = [
    "CongruenceSystem",
    "transformed_rhs",
    "is_solvable",
    "solution_count",
    "count_solutions",
    "parse_congruence_file",
]


@dataclass(frozen=True)
class CongruenceSystem:
    H: tuple[tuple[int, ...], ...]
    B: tuple[int, ...]
    m: int

    def __init__(self, H: Sequence[Sequence[int]], B: Sequence[int], m: int):
        rows = as_matrix(H)
        if len(rows) != len(B):
            raise ShapeMismatch(f"H has {len(rows)} rows but B has {len(B)} entries")
        if m < 2:
            raise ValueError(f"modulus must be >= 2, got {m}")
        object.__setattr__(self, "H", tuple(map(tuple, rows)))
        object.__setattr__(self, "B", tuple(int(b) for b in B))
        object.__setattr__(self, "m", int(m))

    @property
    def unknowns(self) -> int:
        return len(self.H[0]) if self.H else 0

    def decompose(self) -> SmithDecomposition:
        return snf(self.H)


def transformed_rhs(sys: CongruenceSystem, dec: SmithDecomposition) -> list[int]:
    """``U @ B`` over the integers, without reducing mod m."""
    if dec.rows != len(sys.B):
        raise ShapeMismatch(f"U has {dec.rows} columns, B has {len(sys.B)} entries")
    return matvec(dec.U, sys.B)


def is_solvable(sys: CongruenceSystem, dec: SmithDecomposition) -> bool:
    b = transformed_rhs(sys, dec)
    m = sys.m
    for i, bi in enumerate(b):
        g = gcd(m, dec.invariants[i]) if i < dec.rank else m
        if bi % g:
            return False
    return True


def solution_count(sys: CongruenceSystem, dec: SmithDecomposition) -> int:
    """Number of solutions with every coordinate in ``[0, m-1]``."""
    if not is_solvable(sys, dec):
        return 0
    m = sys.m
    return m ** (sys.unknowns - dec.rank) * prod(gcd(m, d) for d in dec.invariants)


def count_solutions(H, B, m) -> int:
    sys = CongruenceSystem(H, B, m)
    return solution_count(sys, sys.decompose())


def parse_congruence_file(text: str) -> CongruenceSystem:
    """Read the ``congruence`` subcommand's input.

    Layout::

        format = 1      # optional
        m = 6
        H:
        1 4 0
        1 5 0
        B: 1 3
    """
    from .errors import ParseError

    m = None
    H: list[list[int]] = []
    B: list[int] = []
    section = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if sep and key.strip() in ("m", "format"):
            try:
                number = int(value)
            except ValueError:
                raise ParseError(f"expected an integer after '{key.strip()} ='", lineno, 1) from None
            if key.strip() == "m":
                m = number
            elif number != 1:
                raise ParseError(f"unsupported format version {number}", lineno, 1)
            continue
        head, colon, rest = line.partition(":")
        if colon and head.strip() in ("H", "B"):
            section = head.strip()
            line = rest.strip()
            if not line:
                continue
        if section is None:
            raise ParseError(f"unexpected line {line!r} before 'H:' or 'B:'", lineno, 1)
        try:
            values = [int(tok) for tok in line.split()]
        except ValueError:
            raise ParseError(f"expected integers, got {line!r}", lineno, 1) from None
        if section == "H":
            H.append(values)
        else:
            B.extend(values)
    if m is None:
        raise ParseError("missing 'm = <modulus>'")
    if not H:
        raise ParseError("missing 'H:' section")
    if not B:
        B = [0] * len(H)
    return CongruenceSystem(H, B, m)
