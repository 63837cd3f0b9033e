"""Random valid staircase systems for the oracle-equivalence tests."""

import random

from varcount.ffield import FiniteField
from varcount.variety import StaircaseSystem, check

FIELDS = {q: FiniteField(*pn) for q, pn in {3: (3, 1), 5: (5, 1), 7: (7, 1), 9: (3, 2)}.items()}

B_PATTERNS = ("00", "0x", "x0", "xx")


def case_shape(case, rng, top=6):
    """(n1, n2, n3, n4) realising ``case`` with max(n2, n4) <= top."""
    pick = lambda k: sorted(rng.sample(range(1, top + 1), k))  # noqa: E731
    if case == 1:
        n1, n3, n2, n4 = pick(4)
    elif case == 2:
        n1, n2, n4 = pick(3)
        n3 = n2
    elif case == 3:
        n1, n2, n4 = pick(3)
        n3 = n1
    elif case == 4:
        n1, n3, n2 = pick(3)
        n4 = n2
    elif case == 5:
        n1, n2 = pick(2)
        n3, n4 = n1, n2
    elif case == 6:
        n1, n3, n4, n2 = pick(4)
    elif case == 7:
        n1, n4, n2 = pick(3)
        n3 = n1
    elif case == 8:
        n1, n2, n3, n4 = pick(4)
    else:
        raise ValueError(case)
    return n1, n2, n3, n4


def _rows(rng, count, active, width, max_exp):
    return tuple(
        tuple(rng.randint(1, max_exp) for _ in range(active)) + (0,) * (width - active)
        for _ in range(count)
    )


def random_system(rng, case, q, b_pattern, *, top=6, max_exp=6, max_block=2, field=None):
    field = field or FIELDS[q]
    n1, n2, n3, n4 = case_shape(case, rng, top)
    width = max(n2, n4)
    r1 = rng.randint(1, max_block)
    r2 = r1 + rng.randint(1, max_block)
    r3 = rng.randint(1, max_block)
    r4 = r3 + rng.randint(1, max_block)
    nz = lambda: rng.randint(1, field.q - 1)  # noqa: E731
    exps1 = _rows(rng, r1, n1, width, max_exp) + _rows(rng, r2 - r1, n2, width, max_exp)
    exps2 = _rows(rng, r3, n3, width, max_exp) + _rows(rng, r4 - r3, n4, width, max_exp)
    b1 = 0 if b_pattern[0] == "0" else nz()
    b2 = 0 if b_pattern[1] == "0" else nz()
    return check(
        StaircaseSystem(
            field=field,
            coeffs1=tuple(nz() for _ in range(r2)),
            exps1=exps1,
            b1=b1,
            coeffs2=tuple(nz() for _ in range(r4)),
            exps2=exps2,
            b2=b2,
            r1=r1,
            r3=r3,
            n1=n1,
            n2=n2,
            n3=n3,
            n4=n4,
        )
    )


def sweep(seed=0, per_case=25):
    """Deterministic list of (case, q, b_pattern, system)."""
    rng = random.Random(seed)
    qs = sorted(FIELDS)
    out = []
    for case in range(1, 9):
        for j in range(per_case):
            q = qs[j % len(qs)]
            bp = B_PATTERNS[(j // len(qs)) % len(B_PATTERNS)]
            out.append((case, q, bp, random_system(rng, case, q, bp)))
    return out
