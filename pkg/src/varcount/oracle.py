"""Brute-force point counting by evaluating every point of F_q^n."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import BudgetExceeded, DimensionMismatch
from .ffield import FiniteField
from .variety import Polynomial, PolySystem

__all__ = [
    "OracleConfig",
    "DEFAULT_BUDGET",
    "brute_force_count",
    "count_range",
    "evaluate",
]

DEFAULT_BUDGET = 10**8
_BLOCK = 1 << 17


@dataclass(frozen=True)
class OracleConfig:
    max_points: int = DEFAULT_BUDGET
    partitions: int = 1
    workers: int = 1

    def __post_init__(self):
        if self.max_points <= 0:
            raise ValueError("budget must be positive")
        if self.partitions < 1 or self.workers < 1:
            raise ValueError("partitions and workers must be >= 1")

    @classmethod
    def from_env(cls, **kwargs) -> "OracleConfig":
        """Honour ``VC_BUDGET`` unless a budget is passed explicitly."""
        if "max_points" not in kwargs and os.environ.get("VC_BUDGET"):
            kwargs["max_points"] = int(float(os.environ["VC_BUDGET"]))
        return cls(**kwargs)


def evaluate(poly: Polynomial, point: Sequence[int], field: FiniteField) -> int:
    """Value of ``poly`` at ``point``; ``x**0 == 1`` even for ``x == 0``."""
    total = 0
    for coef, exps in poly.terms:
        if len(exps) != len(point):
            raise DimensionMismatch(
                f"point has {len(point)} coordinates, polynomial has {len(exps)} variables"
            )
        value = coef
        for x, e in zip(point, exps):
            if e:
                value = field.mul(value, field.pow(x, e))
        total = field.add(total, value)
    return field.sub(total, poly.constant)


def _eval_block(ps: PolySystem, coords: list[np.ndarray]) -> np.ndarray:
    field = ps.field
    m = field.q - 1
    log = field.log_array
    exp = field.exp_array
    size = coords[0].shape[0] if coords else 1
    is_zero = [c == 0 for c in coords]
    logs = [log[c] for c in coords]
    ok = np.ones(size, dtype=bool)
    for poly in ps.polys:
        acc = np.zeros(size, dtype=np.int64)
        for coef, exps in poly.terms:
            if coef == 0:
                continue
            live = np.ones(size, dtype=bool)
            k = np.full(size, field.index_of(coef), dtype=np.int64)
            for j, e in enumerate(exps):
                if e:
                    live &= ~is_zero[j]
                    k += e * logs[j]
            term = np.where(live, exp[k % m], 0)
            acc = field.add_arrays(acc, term)
        ok &= acc == poly.constant
    return ok


def count_range(ps: PolySystem, start: int, stop: int) -> int:
    """Points whose linear index lies in ``[start, stop)``.

    The linear index puts ``x1`` in the least significant base-q digit.
    """
    q = ps.field.q
    total = 0
    for lo in range(start, stop, _BLOCK):
        hi = min(stop, lo + _BLOCK)
        idx = np.arange(lo, hi, dtype=np.int64)
        coords = []
        for _ in range(ps.nvars):
            coords.append(idx % q)
            idx = idx // q
        if ps.nvars == 0:
            block = _eval_block(ps, [np.zeros(hi - lo, dtype=np.int64)])
        else:
            block = _eval_block(ps, coords)
        total += int(np.count_nonzero(block))
    return total


def brute_force_count(ps: PolySystem, cfg: OracleConfig | None = None) -> int:
    """Exact number of points of F_q^n where every polynomial vanishes."""
    cfg = cfg or OracleConfig.from_env()
    total = ps.field.q**ps.nvars
    if total > cfg.max_points:
        raise BudgetExceeded(total, cfg.max_points)
    parts = max(1, min(cfg.partitions, total))
    bounds = [total * i // parts for i in range(parts + 1)]
    ranges = list(zip(bounds[:-1], bounds[1:]))
    if cfg.workers > 1 and parts > 1:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            counts = list(pool.map(lambda r: count_range(ps, *r), ranges))
    else:
        counts = [count_range(ps, a, b) for a, b in ranges]
    return sum(counts)
