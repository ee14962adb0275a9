"""Table-driven arithmetic in GF(2^m).

Elements are integer bitmasks of their coefficient tuple over the polynomial
basis: bit i holds the coefficient of alpha^i.  With x^4 + x + 1 the element
alpha^4 = 1 + alpha is therefore ``0b0011`` (the tuple ``1100`` read left to
right as bits 0..3).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DegreeMismatch, NotASubfield, NotPrimitive

MAX_DEGREE = 24


def _poly(*exponents: int) -> int:
    mask = 0
    for e in exponents:
        mask |= 1 << e
    return mask


# Default primitive polynomials.  Code matrices depend on this choice, so it is
# part of the public contract; override through FieldSpec.primitive_poly.
DEFAULT_PRIMITIVE_POLYS: dict[int, int] = {
    1: _poly(1, 0),
    2: _poly(2, 1, 0),
    3: _poly(3, 1, 0),
    4: _poly(4, 1, 0),
    5: _poly(5, 2, 0),
    6: _poly(6, 1, 0),
    7: _poly(7, 3, 0),
    8: _poly(8, 4, 3, 2, 0),
    9: _poly(9, 4, 0),
    10: _poly(10, 3, 0),
    11: _poly(11, 2, 0),
    12: _poly(12, 6, 4, 1, 0),
    13: _poly(13, 4, 3, 1, 0),
    14: _poly(14, 10, 6, 1, 0),
    15: _poly(15, 1, 0),
    16: _poly(16, 12, 3, 1, 0),
    17: _poly(17, 3, 0),
    18: _poly(18, 7, 0),
    19: _poly(19, 5, 2, 1, 0),
    20: _poly(20, 3, 0),
    21: _poly(21, 2, 0),
    22: _poly(22, 1, 0),
    23: _poly(23, 5, 0),
    24: _poly(24, 7, 2, 1, 0),
}


@dataclass(frozen=True)
class FieldSpec:
    """Extension degree ``m`` and a primitive polynomial as a bitmask (bit 0 = constant term)."""

    m: int
    primitive_poly: int | None = None

    def __post_init__(self) -> None:
        if self.primitive_poly is None:
            if self.m not in DEFAULT_PRIMITIVE_POLYS:
                raise DegreeMismatch(f"no default primitive polynomial for m={self.m}")
            object.__setattr__(self, "primitive_poly", DEFAULT_PRIMITIVE_POLYS[self.m])

    @property
    def poly(self) -> int:
        assert self.primitive_poly is not None
        return self.primitive_poly


@dataclass(frozen=True, eq=False)
class FieldTable:
    """Exponential and logarithm tables of GF(2^m); immutable once built.

    ``exp[i]`` is alpha^i for ``0 <= i < 2^m - 1``; ``log[a]`` is the exponent of
    the nonzero element ``a`` (``log[0]`` is ``-1``).
    """

    spec: FieldSpec
    exp: np.ndarray = field(repr=False)
    log: np.ndarray = field(repr=False)

    @property
    def m(self) -> int:
        return self.spec.m

    @property
    def size(self) -> int:
        return 1 << self.spec.m

    @property
    def order(self) -> int:
        """Order of the multiplicative group, 2^m - 1."""
        return (1 << self.spec.m) - 1

    def alpha(self, i: int) -> int:
        return int(self.exp[i % self.order])

    def log_of(self, a: int) -> int:
        if a == 0:
            raise ValueError("zero has no logarithm")
        return int(self.log[a])

    def add(self, a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self.exp[(int(self.log[a]) + int(self.log[b])) % self.order])

    def mul_array(self, a: np.ndarray, b: np.ndarray | int) -> np.ndarray:
        """Elementwise product of element arrays (broadcasting)."""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = self.exp[(self.log[a] + self.log[b]) % self.order]
        return np.where((a == 0) | (b == 0), 0, out)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no inverse in GF(2^m)")
        return int(self.exp[(-int(self.log[a])) % self.order])

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            return 1 if e == 0 else 0
        return int(self.exp[(int(self.log[a]) * e) % self.order])

    def subfield(self, s: int) -> list[int]:
        """Elements of GF(2^s) inside this field: ``[0, 1, beta, ..., beta^(2^s - 2)]``.

        ``beta = alpha^((2^m - 1) / (2^s - 1))`` generates the subfield's
        multiplicative group.
        """
        if s < 1 or self.m % s:
            raise NotASubfield(f"GF(2^{s}) is not a subfield of GF(2^{self.m})")
        sub_order = (1 << s) - 1
        step = self.order // sub_order
        return [0] + [int(self.exp[k * step]) for k in range(sub_order)]

    def tuple_string(self, a: int) -> str:
        """Coefficient tuple as printed in the usual tables, e.g. ``1100`` for 1 + alpha."""
        return "".join(str((a >> i) & 1) for i in range(self.m))


def build_field(spec: FieldSpec | int) -> FieldTable:
    """Build the exp/log tables of GF(2^m), failing if the polynomial is not primitive."""
    if isinstance(spec, int):
        spec = FieldSpec(spec)
    m, poly = spec.m, spec.poly
    if not 1 <= m <= MAX_DEGREE:
        raise DegreeMismatch(f"extension degree m={m} outside 1..{MAX_DEGREE}")
    if poly.bit_length() - 1 != m:
        raise DegreeMismatch(f"polynomial {poly:#x} does not have degree {m}")
    order = (1 << m) - 1
    top = 1 << m
    exp_list = [0] * order
    log_list = [-1] * top
    x = 1
    for i in range(order):
        if x == 0 or log_list[x] >= 0:
            raise NotPrimitive(poly, i)
        exp_list[i] = x
        log_list[x] = i
        x <<= 1
        if x & top:
            x ^= poly
    exp = np.array(exp_list, dtype=np.int64)
    log = np.array(log_list, dtype=np.int64)
    exp.setflags(write=False)
    log.setflags(write=False)
    return FieldTable(spec, exp, log)
