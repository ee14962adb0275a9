"""Finite-geometry LDPC codes, their cyclic structure, duals and distances."""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from functools import cached_property
from typing import Iterator, Sequence

import numpy as np

from . import binmat
from .binmat import BitMatrix, BitPoly, WeightProfile, poly_quotient_exact, poly_reciprocal
from .errors import (
    BaseLineThroughOrigin,
    DimensionTooLarge,
    LengthMismatch,
    NotCyclicInput,
    ShiftOrbitMismatch,
)
from .geometry import (
    EgPlane,
    PgPlane,
    eg_line,
    eg_nonorigin_line_array,
    incidence_vector,
    pg_line,
    pg_line_array,
)
from .gf2m import FieldSpec

EG_MAX_S = 7
PG_MAX_S = 5
DEFAULT_DISTANCE_CAP = 22


@dataclass(frozen=True)
class CodeOrigin:
    """Where a parity-check matrix came from: geometry, field, base line and transforms applied."""

    kind: str = "explicit"  # "eg" | "pg" | "explicit"
    s: int | None = None
    primitive_poly: int | None = None
    base: tuple[int, int] | None = None
    transforms: tuple[str, ...] = ()

    def then(self, step: str) -> CodeOrigin:
        return replace(self, transforms=self.transforms + (step,))

    def describe(self) -> str:
        if self.kind == "eg":
            head = f"EG(2,2^{self.s})"
        elif self.kind == "pg":
            head = f"PG(2,2^{self.s})"
        else:
            head = "explicit"
        return " -> ".join((head,) + self.transforms)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "s": self.s,
            "primitive_poly": None if self.primitive_poly is None else hex(self.primitive_poly),
            "base": None if self.base is None else list(self.base),
            "transforms": list(self.transforms),
        }

    @classmethod
    def from_dict(cls, d: dict) -> CodeOrigin:
        poly = d.get("primitive_poly")
        base = d.get("base")
        return cls(
            kind=d.get("kind", "explicit"),
            s=d.get("s"),
            primitive_poly=None if poly is None else int(poly, 16),
            base=None if base is None else (int(base[0]), int(base[1])),
            transforms=tuple(d.get("transforms", ())),
        )


@dataclass(frozen=True)
class KnownDistance:
    value: int
    provenance: str  # "formula" | "brute-force"


@dataclass(frozen=True)
class CodeParams:
    rho: frozenset[int]
    gamma: frozenset[int]
    lam: int
    density: Fraction
    d_known: KnownDistance | None = None

    @property
    def regular(self) -> bool:
        return len(self.rho) == 1 and len(self.gamma) == 1


@dataclass(frozen=True)
class CyclicStructure:
    """Generator ``g`` and check polynomial ``h`` with ``g * h = x^n + 1``."""

    g: BitPoly
    h: BitPoly
    n: int

    @property
    def k(self) -> int:
        return self.h.degree


class LdpcCode:
    """The null space of a parity-check matrix ``H``, with lazily derived parameters.

    ``k`` always comes from the rank of ``H``.  Geometry constructions pass the
    rank in directly, computed from the circulant structure of ``H``.
    """

    def __init__(
        self,
        H: BitMatrix,
        origin: CodeOrigin | None = None,
        *,
        rank: int | None = None,
        circulant_row: np.ndarray | None = None,
        d_known: KnownDistance | None = None,
        columns: np.ndarray | None = None,
        cyclic: CyclicStructure | None = None,
    ) -> None:
        self.H = H
        self.origin = origin or CodeOrigin()
        self.d_known = d_known
        self.circulant_row = circulant_row
        # labels of H's columns in the parent geometry (point indices); used by puncturing
        self.columns = np.arange(H.cols) if columns is None else np.asarray(columns, dtype=np.int64)
        if rank is not None:
            self.__dict__["rank"] = rank
        if cyclic is not None:
            self.__dict__["cyclic"] = cyclic

    @property
    def n(self) -> int:
        return self.H.cols

    @cached_property
    def rank(self) -> int:
        return binmat.rank(self.H)

    @property
    def k(self) -> int:
        return self.n - self.rank

    @cached_property
    def profile(self) -> WeightProfile:
        return binmat.weights_and_overlap(self.H)

    @property
    def params(self) -> CodeParams:
        p = self.profile
        return CodeParams(p.rho, p.gamma, p.lam, p.density, self.d_known)

    @cached_property
    def generator_matrix(self) -> BitMatrix:
        """Basis of the code (null space of ``H``) as rows."""
        return binmat.null_space(self.H)

    @cached_property
    def cyclic(self) -> CyclicStructure | None:
        method = "circulant" if self.circulant_row is not None else "rref"
        return cyclic_structure(self, method)

    def contains(self, word: Sequence[int] | np.ndarray) -> bool:
        return not self.H.mul_vec(word).any()

    def __repr__(self) -> str:
        return f"LdpcCode({self.origin.describe()}, n={self.n}, H={self.H.rows}x{self.H.cols})"


# ---------------------------------------------------------------------------
# construction


def _circulant(base_positions: np.ndarray, n: int) -> tuple[np.ndarray, BitMatrix]:
    """Row i has ones at ``(j - i) mod n`` for each base position j."""
    positions = (base_positions[None, :] - np.arange(n)[:, None]) % n
    rows = np.repeat(np.arange(n), base_positions.size)
    return positions, BitMatrix.from_coordinates(n, n, rows, positions.ravel())


def _check_orbit(positions: np.ndarray, enumerated: np.ndarray) -> None:
    shifted = np.unique(np.sort(positions, axis=1), axis=0)
    expected = np.unique(enumerated, axis=0)
    if shifted.shape != expected.shape or not np.array_equal(shifted, expected):
        raise ShiftOrbitMismatch(
            f"{shifted.shape[0]} distinct shifted rows do not reproduce the {expected.shape[0]} enumerated lines"
        )


def is_circulant(H: BitMatrix) -> bool:
    """Square, with row i equal to row 0 cyclically shifted by -i."""
    if H.rows != H.cols or H.rows == 0:
        return False
    base = np.asarray(H.row_support(0), dtype=np.int64)
    return _circulant(base, H.cols)[1] == H


def from_matrix(
    H: BitMatrix,
    origin: CodeOrigin | None = None,
    *,
    d_known: KnownDistance | None = None,
    columns: Sequence[int] | None = None,
) -> LdpcCode:
    """Wrap an arbitrary parity-check matrix, using the fast circulant rank when it applies."""
    if is_circulant(H):
        v = H.row(0)
        return LdpcCode(
            H, origin, rank=binmat.circulant_rank(v), circulant_row=v, d_known=d_known,
            columns=None if columns is None else np.asarray(columns),
        )
    return LdpcCode(H, origin, d_known=d_known, columns=None if columns is None else np.asarray(columns))


def construct_eg_code(
    s: int, field: FieldSpec | None = None, base: tuple[int, int] | None = None
) -> LdpcCode:
    """EG(2, 2^s) code: cyclic shifts of the incidence vector of one line missing the origin.

    ``base = (e0, e1)`` gives the base line ``{alpha^e0 + eta alpha^e1}``; the
    default ``(n - 1, 1)`` yields the matrix of the standard s = 2 worked example.
    """
    if not 2 <= s <= EG_MAX_S:
        raise ValueError(f"EG construction supports 2 <= s <= {EG_MAX_S}, got s={s}")
    plane = EgPlane.build(s, field)
    n = plane.n
    e0, e1 = base if base is not None else (n - 1, 1)
    line = eg_line(plane, plane.field.alpha(e0), plane.field.alpha(e1))
    if line.contains_origin:
        raise BaseLineThroughOrigin(f"base line alpha^{e0} + eta alpha^{e1} passes through the origin")
    v = incidence_vector(line, n)
    positions, H = _circulant(np.asarray(line.points), n)
    _check_orbit(positions, eg_nonorigin_line_array(plane))
    origin = CodeOrigin("eg", s, plane.field.spec.poly, (e0, e1))
    return LdpcCode(
        H,
        origin,
        rank=binmat.circulant_rank(v),
        circulant_row=v,
        d_known=KnownDistance((1 << s) + 1, "formula"),
    )


def construct_pg_code(
    s: int, field: FieldSpec | None = None, base: tuple[int, int] | None = None
) -> LdpcCode:
    """PG(2, 2^s) code from cyclic shifts of the line through points ``base`` (default (0, 1))."""
    if not 2 <= s <= PG_MAX_S:
        raise ValueError(f"PG construction supports 2 <= s <= {PG_MAX_S}, got s={s}")
    plane = PgPlane.build(s, field)
    n = plane.n_points
    i, j = base if base is not None else (0, 1)
    line = pg_line(plane, i, j)
    v = incidence_vector(line, n)
    positions, H = _circulant(np.asarray(line.points), n)
    _check_orbit(positions, pg_line_array(plane))
    origin = CodeOrigin("pg", s, plane.field.spec.poly, (i, j))
    return LdpcCode(
        H,
        origin,
        rank=binmat.circulant_rank(v),
        circulant_row=v,
        d_known=KnownDistance((1 << s) + 2, "formula"),
    )


def eg_parameters(s: int) -> dict[str, int]:
    """Closed-form parameters of the EG(2, 2^s) code."""
    q = 1 << s
    return {"n": q * q - 1, "n_minus_k": 3**s - 1, "k": q * q - 3**s, "d": q + 1, "rho": q, "gamma": q}


def pg_parameters(s: int) -> dict[str, int]:
    """Closed-form parameters of the PG(2, 2^s) code."""
    q = 1 << s
    return {
        "n": q * q + q + 1,
        "n_minus_k": 3**s + 1,
        "k": q * q + q - 3**s,
        "d": q + 2,
        "rho": q + 1,
        "gamma": q + 1,
    }


# ---------------------------------------------------------------------------
# cyclic structure


def _cyclic_from_circulant(v: np.ndarray) -> CyclicStructure:
    n = v.size
    xn1 = BitPoly.x_n_plus_1(n)
    # H's row space is the cyclic code generated by gr; the code is its dual
    gr = BitPoly.from_vector(v).gcd(xn1)
    hr = poly_quotient_exact(xn1, gr)
    g = poly_reciprocal(hr)
    return CyclicStructure(g, poly_quotient_exact(xn1, g), n)


def cyclic_structure(code: LdpcCode, method: str = "rref") -> CyclicStructure | None:
    """Generator and check polynomials of the code, or ``None`` if it is not cyclic.

    ``method="rref"`` works from the null-space basis obtained by elimination:
    ``g`` is the gcd of ``x^n + 1`` with every basis polynomial, accepted only if
    ``deg g = n - k`` and every basis word stays in the code when shifted.
    ``method="circulant"`` reads the polynomials off a circulant ``H`` directly.
    """
    n = code.n
    xn1 = BitPoly.x_n_plus_1(n)
    if method == "circulant":
        if code.circulant_row is None:
            raise ValueError("code was not built from a circulant")
        return _cyclic_from_circulant(code.circulant_row)
    if method != "rref":
        raise ValueError(f"unknown method {method!r}")

    G = code.generator_matrix
    g = xn1
    basis = [BitPoly.from_vector(G.row(i)) for i in range(G.rows)]
    for b in basis:
        g = g.gcd(b)
    if g.degree != n - G.rows:
        return None
    for b in basis:
        if not code.contains(b.cyclic_shift(n).to_vector(n)):
            return None
    return CyclicStructure(g, poly_quotient_exact(xn1, g), n)


def _shift_rows(p: BitPoly, n: int, count: int) -> BitMatrix:
    """Rows ``x^(count-1) p, ..., x p, p``."""
    if count == 0:
        return BitMatrix.zeros(0, n)
    rows = [p.cyclic_shift(n, t).to_vector(n) for t in range(count - 1, -1, -1)]
    return BitMatrix.from_dense(np.array(rows))


def dual_code(code: LdpcCode) -> LdpcCode:
    """The dual of a cyclic code.

    The dual is generated by the reciprocal of ``h``.  Its parity-check matrix
    is built from shifts of the reciprocal of its own check polynomial, which
    is ``g`` again; the ``k`` shifts ``x^t g`` with ``t < k`` are independent.
    """
    cs = code.cyclic
    if cs is None:
        raise NotCyclicInput("dual_code needs a cyclic code")
    n, k = cs.n, cs.h.degree
    xn1 = BitPoly.x_n_plus_1(n)
    g_dual = poly_reciprocal(cs.h)
    h_dual = poly_quotient_exact(xn1, g_dual)
    H = _shift_rows(poly_reciprocal(h_dual), n, k)
    return LdpcCode(
        H,
        code.origin.then("dual"),
        rank=k,
        cyclic=CyclicStructure(g_dual, h_dual, n),
    )


def encode(code: LdpcCode, msg: Sequence[int] | np.ndarray) -> np.ndarray:
    """Non-systematic cyclic encoding ``c(x) = m(x) g(x) mod (x^n + 1)``."""
    cs = code.cyclic
    if cs is None:
        raise NotCyclicInput("encode needs a cyclic code")
    msg = np.asarray(msg, dtype=np.uint8).ravel()
    if msg.size != cs.k:
        raise LengthMismatch(f"message length {msg.size} != k = {cs.k}")
    c = (BitPoly.from_vector(msg) * cs.g) % BitPoly.x_n_plus_1(cs.n)
    return c.to_vector(cs.n)


# ---------------------------------------------------------------------------
# exhaustive enumeration


def iter_codewords(G: BitMatrix, low_bits: int = 12) -> Iterator[np.ndarray]:
    """All ``2^k`` codewords spanned by the rows of ``G``, as packed blocks.

    The first block starts with the zero word.  A table of every combination of
    the first ``b`` rows is XORed against a Gray-code walk over the rest.
    """
    k = G.rows
    b = min(k, low_bits)
    table = np.zeros((1 << b, G.data.shape[1]), dtype=np.uint64)
    for i in range(b):
        table[1 << i : 2 << i] = table[: 1 << i] ^ G.data[i]
    offset = np.zeros(G.data.shape[1], dtype=np.uint64)
    yield table
    for step in range(1, 1 << (k - b)):
        flip = (step & -step).bit_length() - 1
        offset = offset ^ G.data[b + flip]
        yield table ^ offset


def min_distance_bruteforce(code: LdpcCode, cap: int = DEFAULT_DISTANCE_CAP) -> int:
    """Minimum weight over all nonzero codewords, by exhaustive enumeration."""
    G = code.generator_matrix
    if G.rows > cap:
        raise DimensionTooLarge(f"k = {G.rows} exceeds the enumeration cap {cap}")
    if G.rows == 0:
        raise ValueError("the zero code has no nonzero codewords")
    best = code.n + 1
    for idx, block in enumerate(iter_codewords(G)):
        w = np.bitwise_count(block).sum(axis=1, dtype=np.int64)
        if idx == 0:
            w = w[1:]
        best = min(best, int(w.min()))
    return best


def with_bruteforce_distance(code: LdpcCode, cap: int = DEFAULT_DISTANCE_CAP) -> LdpcCode:
    """Attach a brute-force distance, cross-checked against a formula value if one is known."""
    d = min_distance_bruteforce(code, cap)
    if code.d_known is not None and code.d_known.value != d:
        raise AssertionError(f"formula distance {code.d_known.value} disagrees with brute force {d}")
    code.d_known = KnownDistance(d, "brute-force")
    return code


def weight_distribution(code: LdpcCode, cap: int = DEFAULT_DISTANCE_CAP) -> np.ndarray:
    G = code.generator_matrix
    if G.rows > cap:
        raise DimensionTooLarge(f"k = {G.rows} exceeds the enumeration cap {cap}")
    hist = np.zeros(code.n + 1, dtype=np.int64)
    for block in iter_codewords(G):
        hist += np.bincount(np.bitwise_count(block).sum(axis=1, dtype=np.int64), minlength=code.n + 1)
    return hist
