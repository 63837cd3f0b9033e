import math
import random
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from varcount.errors import ParseError, ShapeMismatch
from varcount.intlinalg import (
    SmithDecomposition,
    det,
    matmul,
    parse_matrix,
    snf,
    transpose,
    verify_decomposition,
)

E3 = [[1, 4, 0], [1, 5, 0], [1, 5, 3], [1, 3, 2]]
E2 = [[1, 4, 0, 0], [1, 5, 0, 0], [2, 3, 1, 4], [1, 5, 3, 0], [1, 3, 2, 0]]
E4 = [
    [1, 4, 0, 0, 0, 0],
    [1, 5, 0, 0, 0, 0],
    [2, 3, 1, 4, 0, 0],
    [1, 5, 3, 0, 0, 0],
    [1, 3, 2, 0, 0, 0],
    [2, 4, 3, 5, 1, 1],
]


@pytest.mark.parametrize(
    "E, inv",
    [(E3, (1, 1, 1)), (E2, (1, 1, 1, 4)), (E4, (1, 1, 1, 1, 4))],
)
def test_example_invariants(E, inv):
    dec = snf(E)
    assert dec.invariants == inv
    assert verify_decomposition(E, dec)


def test_example_transform_e3():
    U = [list(r) for r in snf(E3).U]
    assert U == [[1, 0, 0, 0], [-1, 1, 0, 0], [2, -2, 1, -1], [-6, 5, -2, 3]]


def test_bad_chain_rejected():
    E = [[1, 0, 0], [0, 1, 0], [0, 0, 2]]
    good = snf(E)
    fake = SmithDecomposition(good.U, good.V, (2, 1, 1))
    assert not verify_decomposition(E, fake)


def test_zero_matrix():
    Z = [[0, 0], [0, 0], [0, 0]]
    dec = snf(Z)
    assert dec.rank == 0 and dec.invariants == ()
    assert verify_decomposition(Z, dec)


def test_shape_errors():
    with pytest.raises(ShapeMismatch):
        snf([[1, 2], [3]])
    dec = snf([[1, 2], [3, 4]])
    with pytest.raises(ShapeMismatch):
        verify_decomposition([[1, 2, 3], [4, 5, 6]], dec)


def test_parse_matrix():
    assert parse_matrix("format = 1\n# c\n1 2\n-3 4  # tail\n") == [[1, 2], [-3, 4]]
    with pytest.raises(ParseError):
        parse_matrix("1 x\n")
    with pytest.raises(ParseError):
        parse_matrix("# nothing\n")


def _minor_gcds(E):
    """d_1...d_k = gcd of all k x k minors; independent of any elimination."""
    r, c = len(E), len(E[0])
    out = []
    for k in range(1, min(r, c) + 1):
        g = 0
        for rows in combinations(range(r), k):
            for cols in combinations(range(c), k):
                g = math.gcd(g, det([[E[i][j] for j in cols] for i in rows]))
        out.append(g)
    return out


def _invariants_from_minors(E):
    dk = _minor_gcds(E)
    inv, prev = [], 1
    for g in dk:
        if g == 0:
            break
        inv.append(g // prev)
        prev = g
    return tuple(inv)


matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(st.integers(-9, 9), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


@settings(max_examples=300, deadline=None)
@given(matrices)
def test_snf_matches_minor_oracle(E):
    dec = snf(E)
    assert verify_decomposition(E, dec)
    assert dec.invariants == _invariants_from_minors(E)


@settings(max_examples=200, deadline=None)
@given(matrices)
def test_transpose_invariance(E):
    assert snf(E).invariants == snf(transpose(E)).invariants


@settings(max_examples=100, deadline=None)
@given(matrices, st.integers(0, 2**31))
def test_unimodular_change_invariance(E, seed):
    rng = random.Random(seed)
    n = len(E)
    P = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(5):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        c = rng.randint(-2, 2)
        if i != j:
            P[i] = [a + c * b for a, b in zip(P[i], P[j])]
    assert abs(det(P)) == 1
    assert snf(matmul(P, E)).invariants == snf(E).invariants


def test_thousand_random_matrices():
    rng = random.Random(1)
    for _ in range(1000):
        r, c = rng.randint(1, 6), rng.randint(1, 6)
        E = [[rng.randint(-9, 9) for _ in range(c)] for _ in range(r)]
        assert verify_decomposition(E, snf(E))
