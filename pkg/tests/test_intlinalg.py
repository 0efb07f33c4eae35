import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from anncat.intlinalg import (ModLattice, invariant_factors_of, mat_inverse_unimodular, rank_mod_p,
                              smith_normal_form, solve_mod_system)


def _mul(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


def _det(M):
    from fractions import Fraction
    A = [[Fraction(v) for v in row] for row in M]
    n, d = len(A), Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if A[r][c]), None)
        if p is None:
            return 0
        if p != c:
            A[c], A[p] = A[p], A[c]
            d = -d
        d *= A[c][c]
        for r in range(c + 1, n):
            f = A[r][c] / A[c][c]
            A[r] = [a - f * b for a, b in zip(A[r], A[c])]
    return d


def test_snf_diag_2_3():
    U, S, V = smith_normal_form([[2, 0], [0, 3]])
    assert S == [[1, 0], [0, 6]]
    assert _mul(_mul(U, [[2, 0], [0, 3]]), V) == S


def test_snf_zero_and_identity():
    U, S, V = smith_normal_form([[0, 0], [0, 0]])
    assert S == [[0, 0], [0, 0]] and U == [[1, 0], [0, 1]] and V == [[1, 0], [0, 1]]
    _, S, _ = smith_normal_form([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert S == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]


def test_snf_no_overflow_on_large_entries():
    A = [[2 ** 70 + 1, 3 ** 45], [5 ** 30, 7 ** 25]]
    U, S, V = smith_normal_form(A)
    assert _mul(_mul(U, A), V) == S


matrices = st.integers(1, 5).flatmap(
    lambda m: st.integers(1, 5).flatmap(
        lambda n: st.lists(st.lists(st.integers(-20, 20), min_size=n, max_size=n), min_size=m, max_size=m)))


@given(matrices)
def test_snf_properties(A):
    U, S, V = smith_normal_form(A)
    assert _mul(_mul(U, A), V) == S
    assert abs(_det(U)) == 1 and abs(_det(V)) == 1
    m, n = len(A), len(A[0])
    diag = [S[i][i] for i in range(min(m, n))]
    assert all(S[i][j] == 0 for i in range(m) for j in range(n) if i != j)
    assert all(d >= 0 for d in diag)
    for a, b in zip(diag, diag[1:]):
        assert (b == 0) if a == 0 else b % a == 0


@given(matrices)
def test_unimodular_inverse(A):
    U, _, _ = smith_normal_form(A)
    Ui = mat_inverse_unimodular(U)
    assert _mul(U, Ui) == [[int(i == j) for j in range(len(U))] for i in range(len(U))]


def test_invariant_factors():
    assert invariant_factors_of([[2, 0], [0, 3]], 2) == [6]
    assert invariant_factors_of([[4, 0], [0, 2]], 2) == [2, 4]
    assert invariant_factors_of(np.zeros((2, 0)), 2) == [0, 0]


def test_modlattice_index_and_contains():
    lat = ModLattice(2, 4)
    lat.insert([2, 0])
    assert lat.index() == 8
    assert lat.contains([2, 0]) and lat.contains([0, 0]) and not lat.contains([1, 0])
    lat.insert([1, 1])
    assert lat.contains([3, 3]) and lat.index() == 2


def _brute_solve(A, t, moduli):
    E = int(np.lcm.reduce(moduli))
    for x in itertools.product(range(E), repeat=A.shape[1]):
        if not ((A @ np.array(x) - t) % moduli).any():
            return np.array(x)
    return None


@given(st.integers(0, 2 ** 31), st.sampled_from([[2, 2, 2], [4, 2, 4], [3, 3], [6, 2, 3]]), st.integers(1, 3))
def test_solve_mod_system_matches_brute(seed, moduli, g):
    rng = np.random.default_rng(seed)
    moduli = np.array(moduli)
    A = rng.integers(0, 6, size=(len(moduli), g))
    t = rng.integers(0, 6, size=len(moduli)) % moduli
    x = solve_mod_system(A, t, moduli)
    b = _brute_solve(A, t, moduli)
    assert (x is None) == (b is None)
    if x is not None:
        assert not ((A @ x - t) % moduli).any()


@given(st.integers(0, 2 ** 31), st.sampled_from([2, 3, 5]))
def test_rank_mod_p_against_brute_kernel(seed, p):
    rng = np.random.default_rng(seed)
    A = rng.integers(0, p, size=(3, 4))
    kernel = sum(not ((A @ np.array(x)) % p).any() for x in itertools.product(range(p), repeat=4))
    assert kernel == p ** (4 - rank_mod_p(A, p))


def test_modlattice_rejects_bad_exponent():
    with pytest.raises(ValueError):
        ModLattice(2, 0)
