"""Per-level counts H_l.

At level l every monomial touching a variable past ``x_{n_l}`` is deleted.
What remains is one affine constraint per surviving equation on the
monomial values ``u`` (all in F_q^*), plus a bare condition ``b = 0`` for an
equation whose monomials all vanished.  ``H_l`` counts the ``u`` on the
constraints for which ``x^E = u`` is solvable over (F_q^*)^{n_l}, tested by
the Smith-form divisibility conditions on ``U @ ind(u)``.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from math import gcd, prod

from .affine_count import HyperplaneSpec, hyperplane_count, iterate_hyperplane_points
from .ffield import FiniteField
from .intlinalg import IntMatrix, SmithDecomposition, snf
from .variety import StaircaseSystem, deletion_matrix, surviving_terms

__all__ = [
    "LevelInstance",
    "build_level_instance",
    "compute_H",
    "enumeration_cost",
    "ENUMERATION_WARN",
]

log = logging.getLogger(__name__)

ENUMERATION_WARN = 10**8


@dataclass(frozen=True)
class LevelInstance:
    level: int
    cutoff: int
    equations: tuple[HyperplaneSpec, ...]
    matrix: IntMatrix
    decomposition: SmithDecomposition
    consistent: bool
    conditions: tuple[str, ...] = ()

    @property
    def rows(self) -> int:
        return len(self.matrix)

    @property
    def rank(self) -> int:
        return self.decomposition.rank

    @property
    def invariants(self) -> tuple[int, ...]:
        return self.decomposition.invariants


def build_level_instance(sys: StaircaseSystem, level: int) -> LevelInstance:
    k1, k2 = surviving_terms(sys, level)
    E = deletion_matrix(sys, level)
    equations = []
    conditions = []
    consistent = True
    for k, coeffs, b in ((k1, sys.coeffs1, sys.b1), (k2, sys.coeffs2, sys.b2)):
        if k:
            equations.append(HyperplaneSpec(tuple(coeffs[:k]), b))
        else:
            name = "b1" if coeffs is sys.coeffs1 else "b2"
            conditions.append(f"{name} = 0")
            consistent = consistent and b == 0
    assert sum(e.k for e in equations) == len(E)
    return LevelInstance(
        level=level,
        cutoff=sys.cutoff(level),
        equations=tuple(equations),
        matrix=E,
        decomposition=snf(E),
        consistent=consistent,
        conditions=tuple(conditions),
    )


def enumeration_cost(instance: LevelInstance, q: int) -> int:
    return prod((q - 1) ** (e.k - 1) for e in instance.equations)


def compute_H(instance: LevelInstance, field: FiniteField) -> int:
    """Count admissible ``u`` tuples; 0 for an inconsistent level."""
    if not instance.consistent:
        return 0
    q = field.q
    if any(e.k == 1 and e.rhs == 0 for e in instance.equations):
        return 0
    cost = enumeration_cost(instance, q)
    if cost > ENUMERATION_WARN:
        log.warning("level %d enumerates %d tuples", instance.level, cost)

    m = q - 1
    dec = instance.decomposition
    # rows whose modulus is 1 always pass; keep only the binding ones
    checks = []
    for i, row in enumerate(dec.U):
        g = gcd(m, dec.invariants[i]) if i < dec.rank else m
        if g > 1:
            checks.append((row, g))
    if not checks:
        return prod(hyperplane_count(e.k, e.rhs == 0, q) for e in instance.equations)

    ind = field.index_of
    blocks = [
        [tuple(ind(x) for x in pt) for pt in iterate_hyperplane_points(e, field)]
        for e in instance.equations
    ]
    count = 0
    for parts in itertools.product(*blocks):
        idx = sum(parts, ())
        for row, g in checks:
            if sum(a * b for a, b in zip(row, idx)) % g:
                break
        else:
            count += 1
    return count
