from math import comb

import pytest
from hypothesis import given, strategies as st

from cobarkit.fp import (EchelonBasis, FpMatrix, NotPrimeError, binom_mod_p, check_odd_prime,
                         check_prime, monomial_counts, multinom_mod_p, partitions_min2,
                         rank_and_kernel, solve, sparse_rank, trim)

PRIMES = (2, 3, 5, 7)


@pytest.mark.parametrize("p", PRIMES)
def test_lucas_matches_factorials(p):
    for n in range(0, 201):
        for k in range(0, n + 1):
            assert binom_mod_p(n, k, p) == comb(n, k) % p


def test_binom_edge_conventions():
    assert binom_mod_p(5, -1, 3) == 0
    assert binom_mod_p(3, 5, 3) == 0
    assert binom_mod_p(-1, 0, 3) == 0
    assert binom_mod_p(-4, 2, 5) == 0
    assert binom_mod_p(0, 0, 7) == 1


@given(st.integers(0, 80), st.integers(0, 80), st.integers(0, 80), st.sampled_from(PRIMES))
def test_vandermonde(m, n, k, p):
    lhs = binom_mod_p(m + n, k, p)
    rhs = sum(binom_mod_p(m, j, p) * binom_mod_p(n, k - j, p) for j in range(k + 1)) % p
    assert lhs == rhs


@given(st.lists(st.integers(0, 30), min_size=1, max_size=4), st.sampled_from(PRIMES))
def test_multinomial(parts, p):
    from math import factorial
    exact = factorial(sum(parts))
    for r in parts:
        exact //= factorial(r)
    assert multinom_mod_p(parts, p) == exact % p


def test_prime_checks():
    assert check_prime(7) == 7
    for bad in (0, 1, 4, 9, -3):
        with pytest.raises(NotPrimeError):
            check_prime(bad)
    with pytest.raises(ValueError):
        check_odd_prime(2)


def test_trim():
    assert trim([1, 0, 2, 0, 0]) == (1, 0, 2)
    assert trim([0, 0]) == ()


def _dense_rank(rows, p):
    rows = [list(r) for r in rows]
    rank, col = 0, 0
    ncols = len(rows[0]) if rows else 0
    while rank < len(rows) and col < ncols:
        piv = next((i for i in range(rank, len(rows)) if rows[i][col] % p), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], -1, p)
        rows[rank] = [x * inv % p for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col] % p:
                f = rows[i][col]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[rank])]
        rank += 1
        col += 1
    return rank


matrices = st.sampled_from(PRIMES).flatmap(
    lambda p: st.tuples(st.just(p), st.integers(1, 7).flatmap(
        lambda r: st.integers(1, 7).flatmap(
            lambda c: st.lists(st.lists(st.integers(0, p - 1), min_size=c, max_size=c),
                               min_size=r, max_size=r)))))


@given(matrices)
def test_rank_and_kernel_against_dense(data):
    p, rows = data
    m = FpMatrix.from_dense(rows, p)
    rank, kernel = rank_and_kernel(m)
    assert rank == _dense_rank(rows, p)
    assert len(kernel) == m.cols - rank
    for v in kernel:
        assert any(v)
        assert m.apply(v) == [0] * m.rows
    assert _dense_rank(kernel, p) == len(kernel) if kernel else True
    assert m.to_dense() == [[x % p for x in r] for r in rows]


@given(matrices)
def test_sparse_rank_and_solve(data):
    p, rows = data
    m = FpMatrix.from_dense(rows, p)
    cols = m.columns()
    assert sparse_rank(cols, p) == _dense_rank(rows, p)
    # a target in the column span is solvable, and the solution reproduces it
    target: dict = {}
    for j, col in enumerate(cols):
        for i, v in col.items():
            target[i] = (target.get(i, 0) + (j + 1) * v) % p
    target = {i: v for i, v in target.items() if v}
    sol = solve(cols, target, p)
    assert sol is not None
    recon: dict = {}
    for j, c in sol.items():
        for i, v in cols[j].items():
            recon[i] = (recon.get(i, 0) + c * v) % p
    assert {i: v for i, v in recon.items() if v} == target


def test_solve_reports_inconsistency():
    assert solve([{0: 1}], {1: 1}, 3) is None


def test_echelon_tracks_dependencies():
    eb = EchelonBasis(5, track=True)
    assert eb.add({"a": 1, "b": 2})
    assert eb.add({"b": 1})
    assert not eb.add({"a": 2})
    assert eb.rank == 2
    assert len(eb.kernel) == 1


def test_partitions_and_monomial_counts():
    assert [partitions_min2(n) for n in range(9)] == [1, 0, 1, 1, 2, 2, 4, 4, 7]
    counts = monomial_counts(range(2, 20), 18)
    assert counts == [partitions_min2(n) for n in range(19)]
    with pytest.raises(ValueError):
        monomial_counts([0], 3)
