"""Dense GF(2) matrices with bit-packed rows, and binary polynomials.

Rows are packed little-endian into 64-bit words: column ``j`` lives in word
``j // 64`` at bit ``j % 64``.  Pad bits past the last column are always zero.
Bit vectors at the API boundary are plain ``uint8`` arrays of zeros and ones.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import LengthMismatch, NonzeroRemainder, ZeroPolynomial

WORD = 64
_WORD_DTYPE = np.dtype("<u8")


def n_words(cols: int) -> int:
    return max(1, -(-cols // WORD))


def pack_bits(dense: np.ndarray, cols: int | None = None) -> np.ndarray:
    """Pack a 2-D 0/1 array into rows of 64-bit words."""
    dense = np.atleast_2d(np.asarray(dense, dtype=np.uint8) & 1)
    cols = dense.shape[1] if cols is None else cols
    words = n_words(cols)
    padded = np.zeros((dense.shape[0], words * WORD), dtype=np.uint8)
    padded[:, :cols] = dense[:, :cols]
    packed = np.packbits(padded, axis=1, bitorder="little")
    return packed.view(_WORD_DTYPE).reshape(dense.shape[0], words).astype(np.uint64)


def unpack_bits(data: np.ndarray, cols: int) -> np.ndarray:
    data = np.ascontiguousarray(data, dtype=_WORD_DTYPE)
    raw = np.unpackbits(data.view(np.uint8), axis=-1, bitorder="little")
    return raw[..., :cols]


def pack_vector(v: Sequence[int] | np.ndarray, cols: int | None = None) -> np.ndarray:
    v = np.asarray(v, dtype=np.uint8).ravel()
    return pack_bits(v[None, :], cols)[0]


class BitMatrix:
    """A GF(2) matrix stored as bit-packed rows.

    Treated as immutable: operations return new matrices.
    """

    __slots__ = ("data", "rows", "cols")

    def __init__(self, data: np.ndarray, cols: int) -> None:
        data = np.asarray(data, dtype=np.uint64)
        if data.ndim != 2 or data.shape[1] != n_words(cols):
            raise ValueError(f"packed data of shape {data.shape} does not fit {cols} columns")
        tail = cols % WORD
        if tail and data.size and np.any(data[:, -1] >> np.uint64(tail)):
            raise ValueError("nonzero pad bits beyond the last column")
        self.data = data
        self.rows = data.shape[0]
        self.cols = cols

    # construction

    @classmethod
    def zeros(cls, rows: int, cols: int) -> BitMatrix:
        return cls(np.zeros((rows, n_words(cols)), dtype=np.uint64), cols)

    @classmethod
    def identity(cls, n: int) -> BitMatrix:
        return cls.from_coordinates(n, n, np.arange(n), np.arange(n))

    @classmethod
    def from_dense(cls, dense: Sequence[Sequence[int]] | np.ndarray) -> BitMatrix:
        dense = np.asarray(dense, dtype=np.uint8)
        if dense.ndim != 2:
            raise ValueError("expected a 2-D array")
        return cls(pack_bits(dense), dense.shape[1])

    @classmethod
    def from_strings(cls, rows: Iterable[str]) -> BitMatrix:
        """Build from strings such as ``"0101"`` (whitespace ignored)."""
        parsed = [[int(ch) for ch in r if ch in "01"] for r in rows]
        return cls.from_dense(np.array(parsed, dtype=np.uint8))

    @classmethod
    def from_coordinates(cls, rows: int, cols: int, r: np.ndarray, c: np.ndarray) -> BitMatrix:
        """Matrix with ones at ``(r[t], c[t])``; repeated coordinates still give a single one."""
        data = np.zeros((rows, n_words(cols)), dtype=np.uint64)
        r = np.asarray(r, dtype=np.int64)
        c = np.asarray(c, dtype=np.int64)
        if r.size:
            bits = np.left_shift(np.uint64(1), (c % WORD).astype(np.uint64))
            np.bitwise_or.at(data, (r, c // WORD), bits)
        return cls(data, cols)

    @classmethod
    def from_supports(cls, supports: Sequence[Sequence[int]], cols: int) -> BitMatrix:
        r = np.concatenate([np.full(len(s), i, dtype=np.int64) for i, s in enumerate(supports)] or [np.zeros(0, np.int64)])
        c = np.concatenate([np.asarray(s, dtype=np.int64) for s in supports] or [np.zeros(0, np.int64)])
        return cls.from_coordinates(len(supports), cols, r, c)

    # views

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def to_dense(self) -> np.ndarray:
        return unpack_bits(self.data, self.cols)

    def row(self, i: int) -> np.ndarray:
        return unpack_bits(self.data[i], self.cols)

    def row_support(self, i: int) -> list[int]:
        return np.flatnonzero(self.row(i)).tolist()

    def supports(self) -> list[list[int]]:
        r, c = self.nonzero()
        splits = np.searchsorted(r, np.arange(1, self.rows))
        return [part.tolist() for part in np.split(c, splits)]

    def nonzero(self, chunk_rows: int = 1024) -> tuple[np.ndarray, np.ndarray]:
        """Coordinates of all ones, sorted by row then column."""
        rs, cs = [], []
        for start in range(0, self.rows, chunk_rows):
            block = unpack_bits(self.data[start : start + chunk_rows], self.cols)
            r, c = np.nonzero(block)
            rs.append(r.astype(np.int64) + start)
            cs.append(c.astype(np.int64))
        if not rs:
            return np.zeros(0, np.int64), np.zeros(0, np.int64)
        return np.concatenate(rs), np.concatenate(cs)

    def row_weights(self) -> np.ndarray:
        return np.bitwise_count(self.data).sum(axis=1, dtype=np.int64)

    def col_weights(self) -> np.ndarray:
        _, c = self.nonzero()
        return np.bincount(c, minlength=self.cols).astype(np.int64)

    def ones(self) -> int:
        return int(np.bitwise_count(self.data).sum(dtype=np.int64))

    # arithmetic

    def transpose(self) -> BitMatrix:
        r, c = self.nonzero()
        return BitMatrix.from_coordinates(self.cols, self.rows, c, r)

    @property
    def T(self) -> BitMatrix:
        return self.transpose()

    def take_rows(self, idx: Sequence[int] | np.ndarray) -> BitMatrix:
        return BitMatrix(self.data[np.asarray(idx, dtype=np.int64)], self.cols)

    def take_columns(self, idx: Sequence[int] | np.ndarray) -> BitMatrix:
        idx = np.asarray(idx, dtype=np.int64)
        remap = np.full(self.cols, -1, dtype=np.int64)
        remap[idx] = np.arange(idx.size)
        r, c = self.nonzero()
        keep = remap[c] >= 0
        return BitMatrix.from_coordinates(self.rows, idx.size, r[keep], remap[c[keep]])

    def vstack(self, other: BitMatrix) -> BitMatrix:
        if other.cols != self.cols:
            raise LengthMismatch("column counts differ")
        return BitMatrix(np.vstack([self.data, other.data]), self.cols)

    def mul_vec(self, v: Sequence[int] | np.ndarray) -> np.ndarray:
        """``M @ v`` over GF(2) as a 0/1 vector of length ``rows``."""
        v = np.asarray(v, dtype=np.uint8).ravel()
        if v.size != self.cols:
            raise LengthMismatch(f"vector of length {v.size} against {self.cols} columns")
        packed = pack_vector(v, self.cols)
        return (np.bitwise_count(self.data & packed).sum(axis=1) & 1).astype(np.uint8)

    def __matmul__(self, other: BitMatrix) -> BitMatrix:
        """Matrix product over GF(2)."""
        if self.cols != other.rows:
            raise LengthMismatch(f"shapes {self.shape} and {other.shape} do not align")
        prod = (self.to_dense().astype(np.int64) @ other.to_dense().astype(np.int64)) & 1
        return BitMatrix.from_dense(prod)

    def is_zero(self) -> bool:
        return not np.any(self.data)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self.shape == other.shape and np.array_equal(self.data, other.data)

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.data.tobytes()))

    def __repr__(self) -> str:
        return f"BitMatrix({self.rows}x{self.cols}, ones={self.ones()})"

    def to_strings(self) -> list[str]:
        return ["".join("1" if b else "0" for b in row) for row in self.to_dense()]


# ---------------------------------------------------------------------------
# elimination


def rank_and_rref(M: BitMatrix) -> tuple[int, BitMatrix, list[int]]:
    """Gauss-Jordan elimination over GF(2).

    Returns ``(rank, R, pivots)`` where ``R`` holds the ``rank`` nonzero rows of
    the reduced row echelon form and ``pivots[i]`` is the pivot column of row i.
    """
    data = M.data.copy()
    rows = M.rows
    pivots: list[int] = []
    r = 0
    for c in range(M.cols):
        if r == rows:
            break
        w = c // WORD
        mask = np.uint64(1 << (c % WORD))
        below = np.flatnonzero(data[r:, w] & mask)
        if below.size == 0:
            continue
        p = r + int(below[0])
        if p != r:
            data[[r, p]] = data[[p, r]]
        hits = np.flatnonzero(data[:, w] & mask)
        hits = hits[hits != r]
        if hits.size:
            # the pivot row is zero left of column c, so earlier words are untouched
            data[hits, w:] ^= data[r, w:]
        pivots.append(c)
        r += 1
    return r, BitMatrix(data[:r], M.cols), pivots


def rank(M: BitMatrix) -> int:
    return rank_and_rref(M)[0]


def null_space(M: BitMatrix) -> BitMatrix:
    """Basis of ``{v : M v = 0}`` as rows; one row per free column."""
    rk, R, pivots = rank_and_rref(M)
    free = np.setdiff1d(np.arange(M.cols), np.asarray(pivots, dtype=np.int64))
    basis = np.zeros((free.size, M.cols), dtype=np.uint8)
    basis[np.arange(free.size), free] = 1
    if rk:
        basis[:, pivots] = R.to_dense()[:, free].T
    return BitMatrix.from_dense(basis) if free.size else BitMatrix.zeros(0, M.cols)


class RowSpace:
    """Precomputed echelon basis for repeated row-space membership tests."""

    def __init__(self, M: BitMatrix) -> None:
        self.rank, self.rref, self.pivots = rank_and_rref(M)
        self.cols = M.cols

    def reduce(self, v: Sequence[int] | np.ndarray) -> np.ndarray:
        v = np.asarray(v, dtype=np.uint8).ravel()
        if v.size != self.cols:
            raise LengthMismatch(f"vector of length {v.size} against {self.cols} columns")
        packed = pack_vector(v, self.cols)
        for i, p in enumerate(self.pivots):
            if (int(packed[p // WORD]) >> (p % WORD)) & 1:
                packed ^= self.rref.data[i]
        return unpack_bits(packed, self.cols)

    def contains(self, v: Sequence[int] | np.ndarray) -> bool:
        return not self.reduce(v).any()


def row_space_contains(M: BitMatrix, v: Sequence[int] | np.ndarray) -> bool:
    return RowSpace(M).contains(v)


def circulant_rank(first_row: Sequence[int] | np.ndarray) -> int:
    """Rank of the circulant matrix whose rows are the cyclic shifts of ``first_row``.

    The row space is the ideal generated by ``gcd(v(x), x^n + 1)``, so the rank
    is ``n - deg gcd``.
    """
    v = np.asarray(first_row, dtype=np.uint8)
    n = v.size
    g = BitPoly.from_vector(v).gcd(BitPoly.x_n_plus_1(n))
    return n - g.degree


# ---------------------------------------------------------------------------
# weight profile


@dataclass(frozen=True)
class WeightProfile:
    rows: int
    cols: int
    row_weights: np.ndarray
    col_weights: np.ndarray
    lam: int
    ones: int

    @property
    def rho(self) -> frozenset[int]:
        return frozenset(int(w) for w in np.unique(self.row_weights))

    @property
    def gamma(self) -> frozenset[int]:
        return frozenset(int(w) for w in np.unique(self.col_weights))

    @property
    def density(self) -> Fraction:
        total = self.rows * self.cols
        return Fraction(self.ones, total) if total else Fraction(0)


def max_column_overlap(M: BitMatrix, budget: int = 8_000_000) -> int:
    """Largest number of rows shared by two distinct columns.

    Columns are processed in blocks; for each block the overlaps with every
    other column are tallied with a single ``bincount`` over the supports of
    the rows that touch the block.
    """
    rows_idx, cols_idx = M.nonzero()
    if rows_idx.size == 0 or M.cols < 2:
        return 0
    n = M.cols
    row_ptr = np.zeros(M.rows + 1, dtype=np.int64)
    np.cumsum(np.bincount(rows_idx, minlength=M.rows), out=row_ptr[1:])
    row_len = np.diff(row_ptr)
    order = np.argsort(cols_idx, kind="stable")
    csc_rows = rows_idx[order]
    col_ptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(cols_idx, minlength=n), out=col_ptr[1:])

    best = 0
    block = max(1, min(n, budget // n))
    for a0 in range(0, n, block):
        a1 = min(n, a0 + block)
        lo, hi = col_ptr[a0], col_ptr[a1]
        if lo == hi:
            continue
        touch_rows = csc_rows[lo:hi]
        owner = np.repeat(np.arange(a1 - a0), np.diff(col_ptr[a0 : a1 + 1]))
        lengths = row_len[touch_rows]
        total = int(lengths.sum())
        starts = np.repeat(row_ptr[touch_rows], lengths)
        offsets = np.arange(total) - np.repeat(np.cumsum(lengths) - lengths, lengths)
        partner = cols_idx[starts + offsets]
        codes = np.repeat(owner, lengths) * n + partner
        counts = np.bincount(codes, minlength=(a1 - a0) * n).reshape(a1 - a0, n)
        counts[np.arange(a1 - a0), np.arange(a0, a1)] = 0
        best = max(best, int(counts.max()))
    return best


def weights_and_overlap(M: BitMatrix) -> WeightProfile:
    return WeightProfile(
        rows=M.rows,
        cols=M.cols,
        row_weights=M.row_weights(),
        col_weights=M.col_weights(),
        lam=max_column_overlap(M),
        ones=M.ones(),
    )


# ---------------------------------------------------------------------------
# binary polynomials


@dataclass(frozen=True)
class BitPoly:
    """Polynomial over GF(2); bit i of ``bits`` is the coefficient of x^i."""

    bits: int = 0

    @classmethod
    def from_exponents(cls, exponents: Iterable[int]) -> BitPoly:
        bits = 0
        for e in exponents:
            bits ^= 1 << e
        return cls(bits)

    @classmethod
    def from_vector(cls, v: Sequence[int] | np.ndarray) -> BitPoly:
        v = np.asarray(v, dtype=np.uint8).ravel()
        packed = np.packbits(v, bitorder="little").tobytes()
        return cls(int.from_bytes(packed, "little"))

    @classmethod
    def x_n_plus_1(cls, n: int) -> BitPoly:
        return cls((1 << n) | 1)

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return self.bits.bit_length() - 1

    def is_zero(self) -> bool:
        return self.bits == 0

    def exponents(self) -> list[int]:
        out, b, i = [], self.bits, 0
        while b:
            if b & 1:
                out.append(i)
            b >>= 1
            i += 1
        return out

    def weight(self) -> int:
        return self.bits.bit_count()

    def to_vector(self, n: int) -> np.ndarray:
        if self.degree >= n:
            raise LengthMismatch(f"degree {self.degree} does not fit length {n}")
        raw = self.bits.to_bytes(max(1, -(-n // 8)), "little")
        return np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")[:n].copy()

    def __add__(self, other: BitPoly) -> BitPoly:
        return BitPoly(self.bits ^ other.bits)

    __sub__ = __add__

    def __mul__(self, other: BitPoly) -> BitPoly:
        a, b = self.bits, other.bits
        if a.bit_count() < b.bit_count():
            a, b = b, a
        out, shift = 0, 0
        while b:
            if b & 1:
                out ^= a << shift
            b >>= 1
            shift += 1
        return BitPoly(out)

    def __divmod__(self, other: BitPoly) -> tuple[BitPoly, BitPoly]:
        if other.bits == 0:
            raise ZeroPolynomial("division by the zero polynomial")
        r, d = self.bits, other.degree
        q = 0
        while r and r.bit_length() - 1 >= d:
            shift = r.bit_length() - 1 - d
            q |= 1 << shift
            r ^= other.bits << shift
        return BitPoly(q), BitPoly(r)

    def __floordiv__(self, other: BitPoly) -> BitPoly:
        return divmod(self, other)[0]

    def __mod__(self, other: BitPoly) -> BitPoly:
        return divmod(self, other)[1]

    def gcd(self, other: BitPoly) -> BitPoly:
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a

    def cyclic_shift(self, n: int, k: int = 1) -> BitPoly:
        """``x^k p(x) mod (x^n + 1)``."""
        k %= n
        mask = (1 << n) - 1
        return BitPoly(((self.bits << k) | (self.bits >> (n - k))) & mask)

    def __str__(self) -> str:
        if not self.bits:
            return "0"
        terms = []
        for e in self.exponents():
            terms.append("1" if e == 0 else "x" if e == 1 else f"x^{e}")
        return " + ".join(terms)


def poly_quotient_exact(num: BitPoly, den: BitPoly) -> BitPoly:
    q, r = divmod(num, den)
    if not r.is_zero():
        raise NonzeroRemainder(f"({num}) is not divisible by ({den}); remainder {r}")
    return q


def poly_reciprocal(p: BitPoly) -> BitPoly:
    """``x^deg(p) * p(1/x)``: the coefficient list reversed over degrees 0..deg(p)."""
    if p.is_zero():
        raise ZeroPolynomial("the zero polynomial has no reciprocal")
    d = p.degree
    return BitPoly(int(format(p.bits, f"0{d + 1}b")[::-1], 2))
