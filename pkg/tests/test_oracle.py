import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from gen import FIELDS, random_system
from varcount.errors import BudgetExceeded, DimensionMismatch
from varcount.ffield import FiniteField
from varcount.oracle import OracleConfig, brute_force_count, count_range, evaluate
from varcount.variety import Polynomial, PolySystem, example_41, to_poly_system

F7 = FiniteField(7)


def test_evaluate_two_routes():
    mono = Polynomial(((1, (1, 4)),), 0)
    direct = evaluate(mono, (3, 6), F7)
    via_index = F7.alpha_pow((F7.index_of(3) + 4 * F7.index_of(6)) % 6)
    assert direct == via_index == 3


def test_evaluate_edge_cases():
    mono = Polynomial(((5, (2, 1)),), 0)
    assert evaluate(mono, (0, 4), F7) == 0
    assert evaluate(Polynomial((), 4), (1, 2), F7) == F7.neg(4)
    # exponent 0 means the variable is absent, even at x = 0
    assert evaluate(Polynomial(((2, (0, 1)),), 0), (0, 3), F7) == 6
    with pytest.raises(DimensionMismatch):
        evaluate(mono, (1, 2, 3), F7)


def test_examples():
    assert brute_force_count(to_poly_system(example_41())) == 1438
    assert brute_force_count(PolySystem(FiniteField(3), (), 2)) == 9
    line = Polynomial(((1, (1, 0)), (1, (0, 1))), 0)
    assert brute_force_count(PolySystem(FiniteField(5), (line,), 2)) == 5


def test_budget():
    ps = to_poly_system(example_41())
    with pytest.raises(BudgetExceeded) as info:
        brute_force_count(ps, OracleConfig(max_points=1000))
    assert info.value.required == 7**6
    with pytest.raises(ValueError):
        OracleConfig(max_points=0)


def test_budget_from_env(monkeypatch):
    monkeypatch.setenv("VC_BUDGET", "1e3")
    assert OracleConfig.from_env().max_points == 1000
    assert OracleConfig.from_env(max_points=5).max_points == 5


def test_extension_field_matches_scalar_evaluation():
    F9 = FIELDS[9]
    s = random_system(random.Random(2), 5, 9, "xx", top=3)
    ps = to_poly_system(s)
    slow = 0
    for pt in itertools.product(F9.elements(), repeat=ps.nvars):
        slow += all(evaluate(p, pt, F9) == 0 for p in ps.polys)
    assert brute_force_count(ps) == slow


systems = st.tuples(
    st.integers(1, 8), st.sampled_from([3, 5, 7, 9]), st.sampled_from(["00", "0x", "x0", "xx"]), st.integers(0, 10**6)
)


def _system(args):
    case, q, bp, seed = args
    return to_poly_system(random_system(random.Random(seed), case, q, bp, top=4))


@settings(max_examples=40, deadline=None)
@given(systems, st.integers(1, 7), st.integers(1, 3))
def test_partition_independence(args, parts, workers):
    ps = _system(args)
    base = brute_force_count(ps)
    assert brute_force_count(ps, OracleConfig(partitions=parts, workers=workers)) == base
    total = ps.field.q**ps.nvars
    cut = total // 3
    assert count_range(ps, 0, cut) + count_range(ps, cut, total) == base


@settings(max_examples=40, deadline=None)
@given(systems)
def test_adding_equation_never_increases(args):
    ps = _system(args)
    one = PolySystem(ps.field, ps.polys[:1], ps.nvars)
    assert brute_force_count(ps) <= brute_force_count(one)


@settings(max_examples=30, deadline=None)
@given(systems)
def test_fiber_identity(args):
    ps = _system(args)
    f1, f2 = ps.polys
    total = 0
    for b in ps.field.elements():
        total += brute_force_count(PolySystem(ps.field, (f1, Polynomial(f2.terms, b)), ps.nvars))
    assert total == brute_force_count(PolySystem(ps.field, (f1,), ps.nvars))
