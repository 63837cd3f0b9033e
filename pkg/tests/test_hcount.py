import itertools
import random
from math import gcd, prod

import pytest
from hypothesis import given, settings, strategies as st

from gen import FIELDS, random_system
from varcount.affine_count import hyperplane_count
from varcount.ffield import FiniteField
from varcount.hcount import build_level_instance, compute_H, enumeration_cost
from varcount.variety import LEVELS, example_41, make_system

F7 = FiniteField(7)


def test_example_instances():
    s = example_41()
    one = build_level_instance(s, 1)
    assert [e.k for e in one.equations] == [2]
    assert one.conditions == ("b2 = 0",) and not one.consistent
    assert compute_H(one, F7) == 0
    three = build_level_instance(s, 3)
    assert [(e.k, e.rhs) for e in three.equations] == [(2, 2), (2, 4)]
    assert [e.k for e in build_level_instance(s, 4).equations] == [3, 3]


@pytest.mark.parametrize("level, H", [(2, 9), (3, 4), (4, 84)])
def test_example_values(level, H):
    assert compute_H(build_level_instance(example_41(), level), F7) == H


def test_single_variable_zero_rhs():
    # level 1 keeps only the single x1 term of eq1, which has b1 = 0
    s = make_system(F7, [(1, (1,)), (1, (1, 1))], 0, [(1, (1,)), (1, (1, 1))], 0)
    inst = build_level_instance(s, 1)
    assert [e.k for e in inst.equations] == [1, 1]
    assert compute_H(inst, F7) == 0


def test_enumeration_cost():
    assert enumeration_cost(build_level_instance(example_41(), 4), 7) == 6**2 * 6**2


def monomial_oracle(s, level, field):
    """Affine u-tuples for which x^E = u has a solution in (F_q^*)^cut."""
    cut = s.cutoff(level)
    rows, eqs = [], []
    for coeffs, exps, b in ((s.coeffs1, s.exps1, s.b1), (s.coeffs2, s.exps2, s.b2)):
        keep = [(c, e[:cut]) for c, e in zip(coeffs, exps) if not any(e[cut:])]
        if not keep and b != 0:
            return 0
        if keep:
            eqs.append((len(rows), len(rows) + len(keep), [c for c, _ in keep], b))
            rows += [e for _, e in keep]
    reachable = set()
    for x in itertools.product(field.nonzero(), repeat=cut):
        reachable.add(
            tuple(prod_field(field, [field.pow(xi, ei) for xi, ei in zip(x, e)]) for e in rows)
        )
    count = 0
    for u in reachable:
        ok = True
        for lo, hi, cs, b in eqs:
            acc = 0
            for c, ui in zip(cs, u[lo:hi]):
                acc = field.add(acc, field.mul(c, ui))
            ok &= acc == b
        count += ok
    return count


def prod_field(field, xs):
    out = 1
    for x in xs:
        out = field.mul(out, x)
    return out


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 8), st.sampled_from([3, 5, 7]), st.sampled_from(["00", "0x", "x0", "xx"]), st.integers(0, 10**6))
def test_monomial_solvability_oracle(case, q, bp, seed):
    s = random_system(random.Random(seed), case, q, bp, top=4, max_exp=6)
    F = FIELDS[q]
    for level in LEVELS:
        if s.cutoff(level) > 3:
            continue
        inst = build_level_instance(s, level)
        assert compute_H(inst, F) == monomial_oracle(s, level, F)


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 8), st.sampled_from([3, 5, 7, 9]), st.integers(0, 10**6))
def test_bounds(case, q, seed):
    s = random_system(random.Random(seed), case, q, "xx", top=5)
    F = FIELDS[q]
    for level in LEVELS:
        inst = build_level_instance(s, level)
        H = compute_H(inst, F)
        cap = prod(hyperplane_count(e.k, e.rhs == 0, q) for e in inst.equations)
        assert 0 <= H <= cap
        if inst.consistent and inst.rank == inst.rows and all(
            gcd(q - 1, d) == 1 for d in inst.invariants
        ):
            assert H == cap


@pytest.mark.parametrize("q", [5, 7, 9, 11])
def test_primitive_element_independence(q):
    base = {5: FiniteField(5), 7: F7, 9: FiniteField(3, 2), 11: FiniteField(11)}[q]
    gens = [base.with_primitive(g) for g in base.generators()]
    rng = random.Random(q)
    for j in range(6):
        s = random_system(rng, 1 + j % 8, q, "xx", top=4, field=base)
        for level in LEVELS:
            inst = build_level_instance(s, level)
            assert len({compute_H(inst, G) for G in gens}) == 1
