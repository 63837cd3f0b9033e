"""Points of (F_q^*)^k on affine hyperplanes: closed forms and enumeration."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import prod
from typing import Iterator, Sequence

from .ffield import FiniteField

__all__ = [
    "HyperplaneSpec",
    "hyperplane_count",
    "product_count",
    "iterate_hyperplane_points",
]


@dataclass(frozen=True)
class HyperplaneSpec:
    """``coeffs[0]*x1 + ... + coeffs[k-1]*xk = rhs`` with nonzero coeffs."""

    coeffs: tuple[int, ...]
    rhs: int

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("a hyperplane needs at least one coefficient")
        if any(c == 0 for c in self.coeffs):
            raise ValueError("hyperplane coefficients must be nonzero")

    @property
    def k(self) -> int:
        return len(self.coeffs)


def hyperplane_count(k: int, rhs_is_zero: bool, q: int) -> int:
    """Number of points of (F_q^*)^k on ``c1 x1 + ... + ck xk = c``."""
    if k < 1:
        raise ValueError("k must be >= 1")
    sign = -1 if k % 2 else 1
    if rhs_is_zero:
        num = (q - 1) ** k + sign * (q - 1)
    else:
        num = (q - 1) ** k - sign
    count, rem = divmod(num, q)
    assert rem == 0, "hyperplane count is not an integer"
    return count


def product_count(sizes: Sequence[int], zero_flags: Sequence[bool], q: int) -> int:
    """Points on independent hyperplanes, one per block of variables."""
    if len(sizes) != len(zero_flags) or not sizes:
        raise ValueError("sizes and zero_flags must be nonempty and equally long")
    return prod(hyperplane_count(k, z, q) for k, z in zip(sizes, zero_flags))


def iterate_hyperplane_points(
    spec: HyperplaneSpec, field: FiniteField
) -> Iterator[tuple[int, ...]]:
    """Yield each solution in (F_q^*)^k exactly once.

    The first k-1 coordinates run over F_q^* in lexicographic order and the
    last one is solved for, so the cost is (q-1)^(k-1).
    """
    *head, last = spec.coeffs
    inv_last = field.inv(last)
    terms = [[field.mul(c, x) for x in field.nonzero()] for c in head]
    nonzero = list(field.nonzero())
    add, sub, mul = field.add, field.sub, field.mul
    for idx in itertools.product(range(field.q - 1), repeat=len(head)):
        acc = 0
        for t, i in zip(terms, idx):
            acc = add(acc, t[i])
        x_last = mul(inv_last, sub(spec.rhs, acc))
        if x_last:
            yield tuple(nonzero[i] for i in idx) + (x_last,)
