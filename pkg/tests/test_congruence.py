import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from varcount.congruence import (
    CongruenceSystem,
    count_solutions,
    is_solvable,
    parse_congruence_file,
    solution_count,
    transformed_rhs,
)
from varcount.errors import ParseError, ShapeMismatch

E3 = [[1, 4, 0], [1, 5, 0], [1, 5, 3], [1, 3, 2]]


def brute(H, B, m):
    n = len(H[0])
    return sum(
        all(sum(h * y for h, y in zip(row, Y)) % m == b % m for row, b in zip(H, B))
        for Y in itertools.product(range(m), repeat=n)
    )


def test_example_level3_instance():
    sys_ = CongruenceSystem(E3, [1, 3, 6, 1], 6)
    dec = sys_.decompose()
    assert [b % 6 for b in transformed_rhs(sys_, dec)] == [1, 2, 1, 0]
    assert is_solvable(sys_, dec)
    assert solution_count(sys_, dec) == 1 == brute(E3, [1, 3, 6, 1], 6)


def test_small_cases():
    assert count_solutions([[2]], [1], 4) == 0
    assert count_solutions([[2]], [0], 4) == 2
    assert count_solutions([[1, 0], [0, 1]], [5, 7], 9) == 1
    sys_ = CongruenceSystem([[3, 1]], [0], 5)
    assert transformed_rhs(sys_, sys_.decompose()) == [0]


def test_validation():
    with pytest.raises(ShapeMismatch):
        CongruenceSystem([[1, 2]], [1, 2], 5)
    with pytest.raises(ValueError):
        CongruenceSystem([[1]], [1], 1)


def test_parse_file():
    sys_ = parse_congruence_file("format = 1\nm = 6\nH:\n1 4 0\n1 5 0\n1 5 3\n1 3 2\nB: 1 3 6 1\n")
    assert sys_.m == 6 and [list(r) for r in sys_.H] == E3 and list(sys_.B) == [1, 3, 6, 1]
    assert list(parse_congruence_file("m = 3\nH: 1 1\n").B) == [0]
    with pytest.raises(ParseError):
        parse_congruence_file("m = 3\nH:\n1 x\n")
    with pytest.raises(ParseError):
        parse_congruence_file("1 2\n")


systems = st.integers(2, 8).flatmap(
    lambda m: st.integers(1, 3).flatmap(
        lambda r: st.integers(1, 3).flatmap(
            lambda c: st.tuples(
                st.just(m),
                st.lists(st.lists(st.integers(-4, 4), min_size=c, max_size=c), min_size=r, max_size=r),
                st.lists(st.integers(0, m - 1), min_size=r, max_size=r),
            )
        )
    )
)


@settings(max_examples=300, deadline=None)
@given(systems)
def test_matches_enumeration(args):
    m, H, B = args
    assert count_solutions(H, B, m) == brute(H, B, m)


@settings(max_examples=150, deadline=None)
@given(systems, st.lists(st.integers(-3, 3), min_size=3, max_size=3))
def test_invariant_under_rhs_shift(args, shifts):
    m, H, B = args
    B2 = [b + k * m for b, k in zip(B, shifts)]
    s1, s2 = CongruenceSystem(H, B, m), CongruenceSystem(H, B2, m)
    assert is_solvable(s1, s1.decompose()) == is_solvable(s2, s2.decompose())
    assert count_solutions(H, B, m) == count_solutions(H, B2, m)


@settings(max_examples=150, deadline=None)
@given(systems, st.randoms(use_true_random=False))
def test_independent_of_decomposition(args, rnd):
    # permuting equations changes U (and the pivot path) but not the solution set
    m, H, B = args
    order = list(range(len(H)))
    rnd.shuffle(order)
    assert count_solutions([H[i] for i in order], [B[i] for i in order], m) == count_solutions(H, B, m)


def test_five_hundred_random_cases():
    rng = random.Random(3)
    for _ in range(500):
        m = rng.randint(2, 8)
        r, c = rng.randint(1, 3), rng.randint(1, 3)
        H = [[rng.randint(-4, 4) for _ in range(c)] for _ in range(r)]
        B = [rng.randint(0, m - 1) for _ in range(r)]
        assert count_solutions(H, B, m) == brute(H, B, m)
