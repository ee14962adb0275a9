"""Points and lines of the planes EG(2, 2^s) and PG(2, 2^s).

EG(2, 2^s) is realised as GF(2^(2s)) viewed as a 2-dimensional vector space
over its subfield GF(2^s).  A nonzero point is indexed by its exponent ``i``
(the element alpha^i); the origin is the zero element and has no index.

PG(2, 2^s) is realised inside GF(2^(3s)).  With ``n = 2^(2s) + 2^s + 1`` the
element alpha^j belongs to the point class ``j mod n``, so points are indexed
by ``0 <= i < n``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import EmptyLine, NotASubfield, OriginOnLine, SamePoint, ZeroDirection
from .gf2m import FieldSpec, FieldTable, build_field


@dataclass(frozen=True)
class Line:
    """A line as a strictly increasing tuple of point indices.

    For EG lines through the origin, the origin is not in ``points`` and is
    flagged by ``contains_origin`` instead.
    """

    points: tuple[int, ...]
    contains_origin: bool = False

    def __post_init__(self) -> None:
        pts = tuple(sorted(set(int(p) for p in self.points)))
        object.__setattr__(self, "points", pts)

    def __len__(self) -> int:
        return len(self.points) + int(self.contains_origin)

    def __contains__(self, p: object) -> bool:
        return p in self.points


def _subfield_array(field_: FieldTable, s: int) -> np.ndarray:
    return np.asarray(field_.subfield(s), dtype=np.int64)


@dataclass(frozen=True, eq=False)
class EgPlane:
    s: int
    field: FieldTable = field(repr=False)

    def __post_init__(self) -> None:
        if self.field.m != 2 * self.s:
            raise NotASubfield(f"EG(2,2^{self.s}) needs GF(2^{2 * self.s}), got GF(2^{self.field.m})")

    @classmethod
    def build(cls, s: int, spec: FieldSpec | None = None) -> EgPlane:
        return cls(s, build_field(spec or FieldSpec(2 * s)))

    @property
    def q(self) -> int:
        return 1 << self.s

    @property
    def n(self) -> int:
        """Number of nonzero points, 2^(2s) - 1."""
        return self.field.order

    @cached_property
    def subfield_elems(self) -> np.ndarray:
        return _subfield_array(self.field, self.s)


@dataclass(frozen=True, eq=False)
class PgPlane:
    s: int
    field: FieldTable = field(repr=False)

    def __post_init__(self) -> None:
        if self.field.m != 3 * self.s:
            raise NotASubfield(f"PG(2,2^{self.s}) needs GF(2^{3 * self.s}), got GF(2^{self.field.m})")

    @classmethod
    def build(cls, s: int, spec: FieldSpec | None = None) -> PgPlane:
        return cls(s, build_field(spec or FieldSpec(3 * s)))

    @property
    def q(self) -> int:
        return 1 << self.s

    @property
    def n_points(self) -> int:
        return self.field.order // (self.q - 1)

    @property
    def n(self) -> int:
        return self.n_points

    @cached_property
    def subfield_elems(self) -> np.ndarray:
        return _subfield_array(self.field, self.s)

    def point_class(self, element: int) -> int:
        return self.field.log_of(element) % self.n_points


# ---------------------------------------------------------------------------
# EG


def eg_line(plane: EgPlane, p0: int, p1: int) -> Line:
    """The line ``{p0 + eta * p1 : eta in GF(2^s)}``; ``p0`` and ``p1`` are field elements."""
    if p1 == 0:
        raise ZeroDirection("direction p1 must be nonzero")
    pts = np.asarray(p0, dtype=np.int64) ^ plane.field.mul_array(plane.subfield_elems, p1)
    has_origin = bool(np.any(pts == 0))
    exps = plane.field.log[pts[pts != 0]]
    return Line(tuple(exps.tolist()), contains_origin=has_origin)


def eg_origin_lines(plane: EgPlane) -> list[Line]:
    """The 2^s + 1 lines through the origin, ``{eta * alpha^j}`` for ``0 <= j <= 2^s``."""
    return [eg_line(plane, 0, plane.field.alpha(j)) for j in range(plane.q + 1)]


def eg_nonorigin_line_array(plane: EgPlane) -> np.ndarray:
    """All lines missing the origin as a ``(2^(2s) - 1, 2^s)`` array of sorted exponents.

    Row order is the first-occurrence order of iterating base point exponent
    and then direction exponent ``0..2^s``: by smallest point, then direction.
    """
    q, f = plane.q, plane.field
    points = np.arange(plane.field.size, dtype=np.int64)
    found, keys = [], []
    for d in range(q + 1):
        span = f.mul_array(plane.subfield_elems, f.alpha(d))
        # cosets of the 1-dimensional subspace in direction alpha^d are the parallel lines
        label = np.min(points[:, None] ^ span[None, :], axis=1)
        order = np.argsort(label, kind="stable")
        groups = points[order].reshape(q, q)
        groups = groups[label[order].reshape(q, q)[:, 0] != 0]
        exps = np.sort(f.log[groups], axis=1)
        found.append(exps)
        keys.append(exps[:, 0] * (q + 1) + d)
    lines = np.concatenate(found)
    return lines[np.argsort(np.concatenate(keys), kind="stable")]


def eg_nonorigin_lines(plane: EgPlane) -> list[Line]:
    return [Line(tuple(row)) for row in eg_nonorigin_line_array(plane).tolist()]


# ---------------------------------------------------------------------------
# PG


def pg_line(plane: PgPlane, i: int, j: int) -> Line:
    """Point classes of ``z1 alpha^i + z2 alpha^j`` over all ``(z1, z2) != (0, 0)``."""
    n = plane.n_points
    if not (0 <= i < n and 0 <= j < n):
        raise ValueError(f"point indices must lie in [0, {n})")
    if i == j:
        raise SamePoint(f"a line needs two distinct points, got {i} twice")
    f, z = plane.field, plane.subfield_elems
    a = f.mul_array(z, f.alpha(i))
    b = f.mul_array(z, f.alpha(j))
    combos = (a[:, None] ^ b[None, :]).ravel()
    combos = combos[combos != 0]
    line = Line(tuple(np.unique(f.log[combos] % n).tolist()))
    assert len(line) == plane.q + 1
    return line


def pg_line_array(plane: PgPlane) -> np.ndarray:
    """All ``n`` lines as an ``(n, 2^s + 1)`` array of sorted point indices, lexicographic."""
    n, f, z = plane.n_points, plane.field, plane.subfield_elems
    reps = f.exp[:n]
    found = []
    for i in range(n):
        # every line through (alpha^i) is {(alpha^i)} plus the classes of z*alpha^i + alpha^j
        others = reps[i + 1 :]
        if others.size == 0:
            break
        a = f.mul_array(z, reps[i])
        cls = f.log[a[None, :] ^ others[:, None]] % n
        line = np.sort(np.concatenate([np.full((others.size, 1), i), cls], axis=1), axis=1)
        line = line[np.all(line[:, 1:] > i, axis=1)]
        if line.size:
            found.append(np.unique(line, axis=0))
    lines = np.concatenate(found)
    return lines[np.lexsort(lines.T[::-1])]


def pg_all_lines(plane: PgPlane) -> list[Line]:
    return [Line(tuple(row)) for row in pg_line_array(plane).tolist()]


def lines_through(lines: list[Line], point: int) -> list[Line]:
    return [ln for ln in lines if point in ln]


# ---------------------------------------------------------------------------


def incidence_vector(line: Line, n: int) -> np.ndarray:
    """Length-``n`` 0/1 vector with ones at the line's point indices."""
    if line.contains_origin:
        raise OriginOnLine("the origin has no coordinate in an incidence vector")
    if not line.points:
        raise EmptyLine("cannot form the incidence vector of an empty line")
    if max(line.points) >= n:
        raise ValueError(f"point index {max(line.points)} out of range for length {n}")
    v = np.zeros(n, dtype=np.uint8)
    v[list(line.points)] = 1
    return v
