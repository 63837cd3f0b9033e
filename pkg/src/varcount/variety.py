"""Two-equation staircase systems and their exponent matrices.

Equation k is ``sum_i a_ki * x^(E_ki) - b_k = 0``.  Each equation's
monomials form two blocks: the low block uses exactly ``x1..x_{n_low}`` and
the high block exactly ``x1..x_{n_high}``, every active exponent positive.
Equation 1 has blocks of widths ``n1 < n2`` (rows ``r1`` and ``r2 - r1``),
equation 2 has widths ``n3 < n4`` (rows ``r3`` and ``r4 - r3``), and
``n1 <= n3``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .errors import InvalidSystem
from .ffield import FiniteField
from .intlinalg import IntMatrix

__all__ = [
    "Polynomial",
    "PolySystem",
    "StaircaseSystem",
    "LEVELS",
    "validate",
    "check",
    "block_matrices",
    "deletion_matrix",
    "deletion_rows",
    "surviving_terms",
    "to_poly_system",
    "from_poly_system",
    "make_system",
    "example_41",
]

LEVELS = (1, 2, 3, 4)


@dataclass(frozen=True)
class Polynomial:
    """``sum(coef * x^exps for coef, exps in terms) - constant``."""

    terms: tuple[tuple[int, tuple[int, ...]], ...]
    constant: int = 0


@dataclass(frozen=True)
class PolySystem:
    field: FiniteField
    polys: tuple[Polynomial, ...]
    nvars: int

    def __post_init__(self):
        for f in self.polys:
            for _, exps in f.terms:
                if len(exps) != self.nvars:
                    raise ValueError(
                        f"exponent vector {exps} does not have {self.nvars} entries"
                    )
                if any(e < 0 for e in exps):
                    raise ValueError(f"negative exponent in {exps}")


@dataclass(frozen=True)
class StaircaseSystem:
    field: FiniteField
    coeffs1: tuple[int, ...]
    exps1: tuple[tuple[int, ...], ...]
    b1: int
    coeffs2: tuple[int, ...]
    exps2: tuple[tuple[int, ...], ...]
    b2: int
    r1: int
    r3: int
    n1: int
    n2: int
    n3: int
    n4: int
    swapped: bool = dc_field(default=False, compare=False)

    @property
    def r2(self) -> int:
        return len(self.coeffs1)

    @property
    def r4(self) -> int:
        return len(self.coeffs2)

    @property
    def n(self) -> int:
        return max(self.n2, self.n4)

    def cutoff(self, level: int) -> int:
        return (self.n1, self.n2, self.n3, self.n4)[level - 1]


def _check_rows(name, rows, r_low, n_low, n_high, width):
    out = []
    for i, row in enumerate(rows, 1):
        active = n_low if i <= r_low else n_high
        if len(row) != width:
            out.append(f"{name} row {i}: expected {width} exponents, got {len(row)}")
            continue
        for j, e in enumerate(row, 1):
            if j <= active and e <= 0:
                out.append(
                    f"non-positive exponent in active block: {name} row {i}, column {j}"
                )
            elif j > active and e != 0:
                out.append(
                    f"nonzero exponent beyond column {active}: {name} row {i}, column {j}"
                )
    return out


def validate(sys: StaircaseSystem) -> list[str]:
    """All violated staircase invariants; an empty list means valid."""
    v = []
    if not 1 <= sys.r1 < sys.r2:
        v.append(f"structure: need 1 <= r1 < r2, got r1={sys.r1}, r2={sys.r2}")
    if not 1 <= sys.r3 < sys.r4:
        v.append(f"structure: need 1 <= r3 < r4, got r3={sys.r3}, r4={sys.r4}")
    if not 1 <= sys.n1 < sys.n2:
        v.append(f"structure: need 1 <= n1 < n2, got n1={sys.n1}, n2={sys.n2}")
    if not 1 <= sys.n3 < sys.n4:
        v.append(f"structure: need 1 <= n3 < n4, got n3={sys.n3}, n4={sys.n4}")
    if sys.n1 > sys.n3:
        v.append(f"structure: need n1 <= n3, got n1={sys.n1}, n3={sys.n3}")
    if len(sys.exps1) != sys.r2:
        v.append(f"eq1 has {sys.r2} coefficients but {len(sys.exps1)} exponent rows")
    if len(sys.exps2) != sys.r4:
        v.append(f"eq2 has {sys.r4} coefficients but {len(sys.exps2)} exponent rows")
    q = sys.field.q
    for name, coeffs in (("a1", sys.coeffs1), ("a2", sys.coeffs2)):
        for i, c in enumerate(coeffs, 1):
            if not 0 <= c < q:
                v.append(f"{name}[{i}] is not a field element code")
            elif c == 0:
                v.append(f"zero coefficient {name}[{i}]")
    for name, b in (("b1", sys.b1), ("b2", sys.b2)):
        if not 0 <= b < q:
            v.append(f"{name} is not a field element code")
    width = sys.n
    v += _check_rows("eq1", sys.exps1, sys.r1, sys.n1, sys.n2, width)
    v += _check_rows("eq2", sys.exps2, sys.r3, sys.n3, sys.n4, width)
    return v


def check(sys: StaircaseSystem) -> StaircaseSystem:
    violations = validate(sys)
    if violations:
        raise InvalidSystem(violations)
    return sys


def block_matrices(sys: StaircaseSystem) -> tuple[IntMatrix, IntMatrix, IntMatrix, IntMatrix]:
    """``(E11, E12, E21, E22)`` with full ambient width."""
    rows1 = [list(r) for r in sys.exps1]
    rows2 = [list(r) for r in sys.exps2]
    return rows1[: sys.r1], rows1[sys.r1 :], rows2[: sys.r3], rows2[sys.r3 :]


def _case_table_blocks(sys: StaircaseSystem, level: int) -> tuple[str, ...]:
    # literal transcription of the block stacking rules, one branch per rule
    n1, n2, n3, n4 = sys.n1, sys.n2, sys.n3, sys.n4
    if level == 1:
        return ("E11",) if n1 < n3 else ("E11", "E21")
    if level == 3:
        return ("E11", "E21") if n3 < n2 else ("E11", "E12", "E21")
    if level == 4:
        return ("E11", "E21", "E22") if n4 < n2 else ("E11", "E12", "E21", "E22")
    if level == 2:
        if n3 <= n2:
            return ("E11", "E12", "E21") if n2 < n4 else ("E11", "E12", "E21", "E22")
        return ("E11", "E12")
    raise ValueError(f"level must be 1..4, got {level}")


def _support_blocks(sys: StaircaseSystem, level: int) -> tuple[str, ...]:
    # a block survives iff none of its monomials touches a variable past the cutoff
    c = sys.cutoff(level)
    widths = {"E11": sys.n1, "E12": sys.n2, "E21": sys.n3, "E22": sys.n4}
    return tuple(name for name, w in widths.items() if w <= c)


def surviving_terms(sys: StaircaseSystem, level: int) -> tuple[int, int]:
    """How many leading terms of eq1 and eq2 survive at ``level``."""
    blocks = deletion_blocks(sys, level)
    k1 = (sys.r1 if "E11" in blocks else 0) + (sys.r2 - sys.r1 if "E12" in blocks else 0)
    k2 = (sys.r3 if "E21" in blocks else 0) + (sys.r4 - sys.r3 if "E22" in blocks else 0)
    return k1, k2


def deletion_blocks(sys: StaircaseSystem, level: int) -> tuple[str, ...]:
    literal = _case_table_blocks(sys, level)
    derived = _support_blocks(sys, level)
    if literal != derived:
        raise AssertionError(
            f"deletion rules disagree at level {level} for "
            f"n=({sys.n1},{sys.n2},{sys.n3},{sys.n4}): {literal} vs {derived}"
        )
    return literal


def deletion_rows(sys: StaircaseSystem, level: int) -> IntMatrix:
    """Surviving exponent rows at full width, eq1 rows before eq2 rows."""
    E11, E12, E21, E22 = block_matrices(sys)
    named = {"E11": E11, "E12": E12, "E21": E21, "E22": E22}
    out: IntMatrix = []
    for name in deletion_blocks(sys, level):
        out.extend(named[name])
    return out


def deletion_matrix(sys: StaircaseSystem, level: int) -> IntMatrix:
    """Exponent matrix after deleting every monomial that involves a variable
    past the level's cutoff, truncated to the cutoff columns."""
    c = sys.cutoff(level)
    rows = deletion_rows(sys, level)
    for row in rows:
        if any(row[c:]):
            raise AssertionError(f"row {row} reaches past column {c}")
    return [row[:c] for row in rows]


def to_poly_system(sys: StaircaseSystem) -> PolySystem:
    f1 = Polynomial(tuple(zip(sys.coeffs1, map(tuple, sys.exps1))), sys.b1)
    f2 = Polynomial(tuple(zip(sys.coeffs2, map(tuple, sys.exps2))), sys.b2)
    return PolySystem(sys.field, (f1, f2), sys.n)


def _equation_shape(k: int, poly: Polynomial, nvars: int):
    """Split one polynomial into (low block, high block, n_low, n_high)."""
    problems = []
    widths = []
    for t, (coef, exps) in enumerate(poly.terms, 1):
        support = [j for j, e in enumerate(exps) if e > 0]
        if not support:
            problems.append(f"eq{k} term {t}: constant terms belong on the right-hand side")
            widths.append(0)
            continue
        w = max(support) + 1
        if len(support) != w:
            missing = [j + 1 for j in range(w) if exps[j] == 0]
            problems.append(
                f"non-positive exponent in active block: eq{k} term {t} "
                f"lacks x{missing[0]} but uses x{w}"
            )
        if coef == 0:
            problems.append(f"zero coefficient in eq{k} term {t}")
        widths.append(w)
    distinct = sorted(set(w for w in widths if w))
    if len(distinct) != 2 and not problems:
        problems.append(
            f"eq{k} must use exactly two monomial widths, found "
            f"{', '.join(map(str, distinct)) or 'none'}"
        )
    if problems:
        return None, problems
    lo, hi = distinct
    low = [term for term, w in zip(poly.terms, widths) if w == lo]
    high = [term for term, w in zip(poly.terms, widths) if w == hi]
    return (low, high, lo, hi), []


def from_poly_system(ps: PolySystem) -> StaircaseSystem:
    """Recognise the staircase shape of a two-polynomial system.

    Terms of each equation are regrouped low block first (keeping their
    relative order).  If the equations come in the order that makes
    ``n1 > n3`` they are swapped, which does not change the variety.
    """
    if len(ps.polys) != 2:
        raise InvalidSystem([f"expected exactly 2 equations, got {len(ps.polys)}"])
    shapes, problems = [], []
    for k, poly in enumerate(ps.polys, 1):
        shape, errs = _equation_shape(k, poly, ps.nvars)
        shapes.append(shape)
        problems += errs
    if problems:
        raise InvalidSystem(problems)
    (lo1, hi1, n1, n2), (lo2, hi2, n3, n4) = shapes
    b1, b2 = ps.polys[0].constant, ps.polys[1].constant
    swapped = n1 > n3
    if swapped:
        lo1, hi1, n1, n2, lo2, hi2, n3, n4 = lo2, hi2, n3, n4, lo1, hi1, n1, n2
        b1, b2 = b2, b1
    width = max(n2, n4)
    if width != ps.nvars:
        raise InvalidSystem([f"variables x{width + 1}..x{ps.nvars} do not occur"])
    t1, t2 = lo1 + hi1, lo2 + hi2
    sys = StaircaseSystem(
        field=ps.field,
        coeffs1=tuple(c for c, _ in t1),
        exps1=tuple(tuple(e) for _, e in t1),
        b1=b1,
        coeffs2=tuple(c for c, _ in t2),
        exps2=tuple(tuple(e) for _, e in t2),
        b2=b2,
        r1=len(lo1),
        r3=len(lo2),
        n1=n1,
        n2=n2,
        n3=n3,
        n4=n4,
        swapped=swapped,
    )
    return check(sys)


def make_system(field, eq1, b1, eq2, b2) -> StaircaseSystem:
    """Build a system from ``[(coef, exponent_row), ...]`` lists.

    Integers are element codes (see :mod:`varcount.ffield`); strings such as
    ``"1+2*t"`` are parsed.  Rows may be shorter than the ambient width; they
    are zero padded.  The block structure is inferred as in
    :func:`from_poly_system`.
    """
    width = max(len(e) for _, e in list(eq1) + list(eq2))

    def pad(e):
        return tuple(e) + (0,) * (width - len(e))

    def code(c):
        if isinstance(c, str):
            return field.element(c)
        if not 0 <= c < field.q:
            raise InvalidSystem([f"{c} is not an element code of F_{field.q}"])
        return int(c)

    polys = (
        Polynomial(tuple((code(c), pad(e)) for c, e in eq1), code(b1)),
        Polynomial(tuple((code(c), pad(e)) for c, e in eq2), code(b2)),
    )
    while width > 0 and all(e[width - 1] == 0 for p in polys for _, e in p.terms):
        width -= 1
    polys = tuple(
        Polynomial(tuple((c, e[:width]) for c, e in p.terms), p.constant) for p in polys
    )
    return from_poly_system(PolySystem(field, polys, width))


def example_41(field: FiniteField | None = None) -> StaircaseSystem:
    """The worked F_7 system with N = 1438."""
    if field is None:
        field = FiniteField(7)
    return make_system(
        field,
        [(1, (1, 4)), (1, (1, 5)), (1, (2, 3, 1, 4))],
        2,
        [(1, (1, 5, 3)), (1, (1, 3, 2)), (1, (2, 4, 3, 5, 1, 1))],
        4,
    )
