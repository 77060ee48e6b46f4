"""Prime-field arithmetic and exact rank over large and small moduli."""

from __future__ import annotations

import random

import numpy as np
import pytest

from fatpoints.gfprime import (
    DEFAULT_PRIME,
    MERSENNE61,
    PrimeField,
    PrimeFieldMatrix,
    _elim_rows_object,
    _rank_with_pivots,
    is_prime,
    mulmod_vec,
)

SMALL_PRIMES = [3, 5, 7, 13, 17, 101, 103, 7681]
BACKEND_PRIMES = [101, 2147483629, 4294967311, MERSENNE61]


def test_primality_known_values():
    for p in [2, 3, 5, 61, 101, 7681, 1048573, 2147483629, 4294967311, MERSENNE61]:
        assert is_prime(p), p
    for n in [0, 1, 4, 9, 561, 1048575, 4294967297, MERSENNE61 - 2, MERSENNE61 + 2]:
        assert not is_prime(n), n


def test_field_constructor_validation():
    PrimeField(3)
    with pytest.raises(ValueError):
        PrimeField(2)
    with pytest.raises(ValueError):
        PrimeField(91)
    with pytest.raises(ValueError):
        PrimeField(2**62 + 57)  # prime, but beyond the supported width


def test_arithmetic_exhaustive_mod_7():
    f = PrimeField(7)
    for a in range(7):
        for b in range(7):
            assert f.add(a, b) == (a + b) % 7
            assert f.sub(a, b) == (a - b) % 7
            assert f.mul(a, b) == (a * b) % 7
        assert f.neg(a) == (-a) % 7
        if a:
            assert f.mul(a, f.inv(a)) == 1
    assert f.inv(3) == 5
    assert f.pow(3, 6) == 1
    with pytest.raises(ZeroDivisionError):
        f.inv(0)


def test_inverse_property_random_large():
    rng = random.Random(7)
    for p in [101, 7681, MERSENNE61]:
        f = PrimeField(p)
        for _ in range(50):
            a = rng.randrange(1, p)
            assert f.mul(a, f.inv(a)) == 1


@pytest.mark.parametrize("p", SMALL_PRIMES)
def test_square_roots_exhaustive(p):
    f = PrimeField(p)
    squares = {a * a % p for a in range(p)}
    residue_count = 0
    for a in range(p):
        s = f.sqrt(a)
        if a in squares:
            assert s is not None and s * s % p == a
            if a != 0:
                residue_count += 1
                assert f.legendre(a) == 1
        else:
            assert s is None
            assert f.legendre(a) == -1
    assert residue_count == (p - 1) // 2


def test_square_roots_large_prime():
    rng = random.Random(11)
    f = PrimeField(MERSENNE61)
    for _ in range(25):
        a = rng.randrange(1, MERSENNE61)
        sq = a * a % MERSENNE61
        s = f.sqrt(sq)
        assert s is not None and s * s % MERSENNE61 == sq
        assert s in (a, MERSENNE61 - a)


@pytest.mark.parametrize("p", BACKEND_PRIMES)
def test_vector_multiply_matches_integers(p):
    rng = random.Random(p % 1009)
    edge = [0, 1, 2, p - 2, p - 1, p // 2]
    a = edge + [rng.randrange(p) for _ in range(200)]
    b = list(reversed(edge)) + [rng.randrange(p) for _ in range(200)]
    av = np.array(a, dtype=np.uint64)
    bv = np.array(b, dtype=np.uint64)
    got = mulmod_vec(av, bv, p)
    want = [(x * y) % p for x, y in zip(a, b)]
    assert [int(v) for v in got] == want


def test_rank_identity_zero_and_dependent():
    f = PrimeField(DEFAULT_PRIME)
    eye = PrimeFieldMatrix(f, [[1 if i == j else 0 for j in range(6)] for i in range(6)])
    assert eye.rank() == 6
    zero = PrimeFieldMatrix(f, [[0] * 5 for _ in range(4)])
    assert zero.rank() == 0
    dep = PrimeFieldMatrix(f, [[1, 2, 3], [2, 4, 6], [0, 1, 1]])
    assert dep.rank() == 2


def test_rank_depends_on_modulus():
    rows = [[1, 1], [1, 8]]
    assert PrimeFieldMatrix(PrimeField(7), rows).rank() == 1
    assert PrimeFieldMatrix(PrimeField(11), rows).rank() == 2


@pytest.mark.parametrize("p", [1048573, MERSENNE61])
def test_rank_of_planted_products(p):
    rng = np.random.default_rng(42)
    f = PrimeField(p)
    for r in [1, 7, 40]:
        b = rng.integers(0, p, size=(90, r), dtype=np.uint64)
        c = rng.integers(0, p, size=(r, 110), dtype=np.uint64)
        prod = np.zeros((90, 110), dtype=object)
        bi = b.astype(object)
        ci = c.astype(object)
        prod = (bi @ ci) % p
        m = PrimeFieldMatrix(f, prod.tolist())
        assert m.rank() == r, (p, r)


def test_rank_monotone_under_row_append():
    rng = np.random.default_rng(5)
    f = PrimeField(101)
    base = rng.integers(0, 101, size=(8, 12)).tolist()
    prev = 0
    for k in range(1, 9):
        r = PrimeFieldMatrix(f, base[:k]).rank()
        assert r >= prev
        prev = r


def test_blocked_and_reference_eliminations_agree():
    rng = np.random.default_rng(17)
    for p in BACKEND_PRIMES:
        raw = rng.integers(0, min(p, 2**61), size=(70, 95), dtype=np.uint64) % np.uint64(p)
        # plant some dependent rows and zero columns to force pivot skips
        raw[10] = raw[3]
        raw[25] = (raw[7] + raw[9]) % np.uint64(p)
        raw[:, 40] = 0
        rank_fast, pivots_fast = _rank_with_pivots(raw.copy(), p)
        pivots_ref = _elim_rows_object(raw.astype(object), p)
        assert rank_fast == len(pivots_ref), p
        assert pivots_fast == pivots_ref, p


def test_matrix_accepts_signed_and_big_integers():
    f = PrimeField(101)
    m = PrimeFieldMatrix(f, [[-1, 102], [10**30, -(10**30)]])
    assert m.entry(0, 0) == 100
    assert m.entry(0, 1) == 1
    assert (m.entry(1, 0) + m.entry(1, 1)) % 101 == 0


def test_nullspace_is_exact_kernel():
    f = PrimeField(7)
    m = PrimeFieldMatrix(f, [[1, 2, 3], [2, 4, 6]])
    basis = m.nullspace()
    assert len(basis) == 2
    for vec in basis:
        assert all(x == 0 for x in ((1 * vec[0] + 2 * vec[1] + 3 * vec[2]) % 7,))
        lead = next(x for x in vec if x != 0)
        assert lead == 1
    rng = np.random.default_rng(9)
    p = 101
    fp = PrimeField(p)
    rows = rng.integers(0, p, size=(6, 10)).tolist()
    mat = PrimeFieldMatrix(fp, rows)
    basis = mat.nullspace()
    assert len(basis) == 10 - mat.rank()
    for vec in basis:
        for row in rows:
            assert sum(a * b for a, b in zip(row, vec)) % p == 0


def test_from_residues_trusts_reduced_input():
    f = PrimeField(13)
    arr = np.array([[1, 12], [5, 0]], dtype=np.uint64)
    m = PrimeFieldMatrix.from_residues(f, arr)
    assert m.rank() == 2
    assert m.shape == (2, 2)


def test_default_prime_is_the_mersenne_prime():
    assert DEFAULT_PRIME == MERSENNE61 == 2**61 - 1
    assert is_prime(DEFAULT_PRIME)
