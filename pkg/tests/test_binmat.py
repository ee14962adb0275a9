from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from fgldpc import binmat
from fgldpc.binmat import (
    BitMatrix,
    BitPoly,
    RowSpace,
    circulant_rank,
    poly_quotient_exact,
    poly_reciprocal,
    row_space_contains,
    weights_and_overlap,
)
from fgldpc.errors import LengthMismatch, NonzeroRemainder, ZeroPolynomial
from fgldpc.transforms import split_rows
from reference_data import EG4_H, GALLAGER_H


def dense_rank(a: np.ndarray) -> int:
    """Plain elimination on a uint8 array, used as an independent reference."""
    a = a.copy() % 2
    r = 0
    for c in range(a.shape[1]):
        piv = np.flatnonzero(a[r:, c])
        if piv.size == 0:
            continue
        p = r + piv[0]
        a[[r, p]] = a[[p, r]]
        for i in np.flatnonzero(a[:, c]):
            if i != r:
                a[i] ^= a[r]
        r += 1
        if r == a.shape[0]:
            break
    return r


def dense_lambda(a: np.ndarray) -> int:
    g = a.astype(np.int64).T @ a.astype(np.int64)
    np.fill_diagonal(g, 0)
    return int(g.max()) if g.size else 0


matrices = st.integers(1, 12).flatmap(
    lambda r: st.integers(1, 140).flatmap(lambda c: arrays(np.uint8, (r, c), elements=st.integers(0, 1)))
)


@pytest.fixture(scope="module")
def eg4():
    return BitMatrix.from_strings(EG4_H)


def test_round_trips():
    a = np.random.default_rng(1).integers(0, 2, size=(7, 130), dtype=np.uint8)
    M = BitMatrix.from_dense(a)
    assert np.array_equal(M.to_dense(), a)
    assert BitMatrix.from_strings(M.to_strings()) == M
    assert np.array_equal(M.T.to_dense(), a.T)
    r, c = M.nonzero()
    assert BitMatrix.from_coordinates(7, 130, r, c) == M
    assert BitMatrix.from_supports(M.supports(), 130) == M


def test_pad_bits_must_be_zero():
    data = np.zeros((1, 1), dtype=np.uint64)
    data[0, 0] = np.uint64(1 << 10)
    with pytest.raises(ValueError):
        BitMatrix(data, 5)


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_rank_matches_dense_reference(a):
    M = BitMatrix.from_dense(a)
    rk, R, pivots = binmat.rank_and_rref(M)
    assert rk == dense_rank(a)
    assert binmat.rank(R) == rk and len(pivots) == rk
    # reduced: each pivot column is a unit column of R
    dense = R.to_dense()
    for i, p in enumerate(pivots):
        assert dense[:, p].sum() == 1 and dense[i, p] == 1


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_null_space_is_kernel_of_full_dimension(a):
    M = BitMatrix.from_dense(a)
    N = binmat.null_space(M)
    assert N.rows == a.shape[1] - dense_rank(a)
    assert N.rows == 0 or not ((a.astype(np.int64) @ N.to_dense().T.astype(np.int64)) % 2).any()
    assert N.rows == 0 or binmat.rank(N) == N.rows


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_overlap_matches_gram(a):
    p = weights_and_overlap(BitMatrix.from_dense(a))
    assert p.lam == dense_lambda(a)
    assert p.ones == int(a.sum())
    assert p.density == Fraction(int(a.sum()), a.size)
    assert sorted(p.rho) == sorted(set(a.sum(axis=1).tolist()))
    assert sorted(p.gamma) == sorted(set(a.sum(axis=0).tolist()))


def test_overlap_in_chunks_matches_single_pass():
    a = np.random.default_rng(5).integers(0, 2, size=(40, 300), dtype=np.uint8)
    M = BitMatrix.from_dense(a)
    assert binmat.max_column_overlap(M, budget=1000) == dense_lambda(a)


def test_worked_example_ranks(eg4):
    assert binmat.rank(eg4) == 8
    assert binmat.null_space(eg4).rows == 7
    assert binmat.rank(BitMatrix.identity(5)) == 5
    assert binmat.null_space(BitMatrix.identity(5)).rows == 0
    ext = split_rows(eg4, 2)
    assert ext.shape == (30, 15)
    assert binmat.rank(ext) == 12
    assert binmat.null_space(ext).rows == 3


def test_row_space_membership(eg4):
    ext = split_rows(eg4, 2)
    space = RowSpace(ext)
    for i in range(15):
        assert space.contains(eg4.row(i))
    assert row_space_contains(eg4, np.zeros(15, dtype=np.uint8))
    assert row_space_contains(eg4, eg4.row(0))
    e0 = np.zeros(15, dtype=np.uint8)
    e0[0] = 1
    assert not row_space_contains(eg4, e0)
    with pytest.raises(LengthMismatch):
        row_space_contains(eg4, np.zeros(14, dtype=np.uint8))


def test_profiles_of_printed_matrices(eg4):
    g = weights_and_overlap(BitMatrix.from_strings(GALLAGER_H))
    assert g.rho == {4} and g.gamma == {3} and g.lam <= 1
    p = weights_and_overlap(eg4)
    assert p.rho == {4} and p.gamma == {4} and p.lam == 1
    assert p.density == Fraction(4, 15)
    z = weights_and_overlap(BitMatrix.zeros(2, 2))
    assert z.rho == {0} and z.gamma == {0} and z.lam == 0 and z.density == 0


def test_mul_vec_and_matmul(eg4):
    v = np.zeros(15, dtype=np.uint8)
    v[7] = 1
    assert np.array_equal(eg4.mul_vec(v), eg4.to_dense()[:, 7])
    with pytest.raises(LengthMismatch):
        eg4.mul_vec(np.zeros(3, dtype=np.uint8))
    prod = (eg4 @ eg4.T).to_dense()
    ref = (eg4.to_dense().astype(int) @ eg4.to_dense().T.astype(int)) % 2
    assert np.array_equal(prod, ref)


def test_circulant_rank_matches_elimination(eg4):
    assert circulant_rank(eg4.row(0)) == 8
    rng = np.random.default_rng(3)
    for n in (7, 15, 21, 31):
        v = rng.integers(0, 2, size=n, dtype=np.uint8)
        M = BitMatrix.from_dense(np.array([np.roll(v, -i) for i in range(n)]))
        assert circulant_rank(v) == binmat.rank(M)


# ---------------------------------------------------------------------------
# polynomials


def test_quotient_examples():
    x15 = BitPoly.x_n_plus_1(15)
    h_perp = poly_quotient_exact(x15, BitPoly.from_exponents([0, 3]))
    assert h_perp == BitPoly.from_exponents([0, 3, 6, 9, 12])
    p = BitPoly(0b1011)
    assert poly_quotient_exact(p, BitPoly(1)) == p
    with pytest.raises(NonzeroRemainder):
        poly_quotient_exact(x15, BitPoly.from_exponents([0, 2]))
    with pytest.raises(ZeroPolynomial):
        divmod(p, BitPoly(0))


def test_reciprocal_examples():
    assert poly_reciprocal(BitPoly.from_exponents([0, 3])) == BitPoly.from_exponents([0, 3])
    assert poly_reciprocal(BitPoly(1)) == BitPoly(1)
    assert poly_reciprocal(BitPoly.from_exponents([1, 2])) == BitPoly.from_exponents([0, 1])
    with pytest.raises(ZeroPolynomial):
        poly_reciprocal(BitPoly(0))


def test_degree_and_text():
    assert BitPoly(0).degree == -1
    assert str(BitPoly.from_exponents([0, 1, 4])) == "1 + x + x^4"
    assert BitPoly.from_vector([1, 0, 1]).bits == 0b101
    assert BitPoly(0b101).to_vector(5).tolist() == [1, 0, 1, 0, 0]
    assert BitPoly(0b1001).cyclic_shift(4) == BitPoly(0b0011)


polys = st.integers(1, (1 << 40) - 1).map(BitPoly)


@settings(max_examples=200, deadline=None)
@given(polys, polys)
def test_exact_quotient_round_trip(a, b):
    assert poly_quotient_exact(a * b, b) == a
    q, r = divmod(a, b)
    assert q * b + r == a and r.degree < b.degree


@settings(max_examples=200, deadline=None)
@given(polys)
def test_reciprocal_involution(p):
    p = BitPoly(p.bits | 1)
    assert poly_reciprocal(poly_reciprocal(p)) == p
    assert poly_reciprocal(p).degree == p.degree


@settings(max_examples=100, deadline=None)
@given(polys, polys)
def test_gcd_divides_both(a, b):
    g = a.gcd(b)
    assert (a % g).is_zero() and (b % g).is_zero()
