from __future__ import annotations

import itertools

import numpy as np
import pytest

from fgldpc.errors import EmptyLine, NotASubfield, OriginOnLine, SamePoint, ZeroDirection
from fgldpc.geometry import (
    EgPlane,
    Line,
    PgPlane,
    eg_line,
    eg_nonorigin_line_array,
    eg_nonorigin_lines,
    eg_origin_lines,
    incidence_vector,
    lines_through,
    pg_all_lines,
    pg_line,
    pg_line_array,
)
from fgldpc.gf2m import build_field


@pytest.fixture(scope="module")
def eg4():
    return EgPlane.build(2)


@pytest.fixture(scope="module")
def pg4():
    return PgPlane.build(2)


def eg_lines_by_pairs(plane: EgPlane) -> set[tuple[bool, tuple[int, ...]]]:
    """Every coset p0 + GF(2^s) p1 over all point pairs, deduplicated."""
    out = set()
    for p0 in range(plane.field.size):
        for p1 in range(1, plane.field.size):
            line = eg_line(plane, p0, p1)
            out.add((line.contains_origin, line.points))
    return out


def test_worked_example_line(eg4):
    a = eg4.field.alpha
    line = eg_line(eg4, a(14), a(1))
    assert line.points == (7, 8, 10, 14)
    assert not line.contains_origin


def test_subfield_line_through_origin(eg4):
    line = eg_line(eg4, 0, 1)
    assert line.contains_origin and line.points == (0, 5, 10)
    assert len(line) == 4


def test_collapsed_coset_passes_through_origin(eg4):
    a = eg4.field.alpha(14)
    line = eg_line(eg4, a, a)
    expected = {eg4.field.log_of(eg4.field.mul(1 ^ eta, a)) for eta in eg4.field.subfield(2) if eta != 1}
    assert line.contains_origin and set(line.points) == expected


def test_zero_direction_rejected(eg4):
    with pytest.raises(ZeroDirection):
        eg_line(eg4, 1, 0)


def test_plane_field_degree_checked():
    with pytest.raises(NotASubfield):
        EgPlane(2, build_field(6))
    with pytest.raises(NotASubfield):
        PgPlane(2, build_field(4))


@pytest.mark.parametrize("s, count", [(2, 15), (3, 63)])
def test_nonorigin_line_count_and_oracle(s, count):
    plane = EgPlane.build(s)
    arr = eg_nonorigin_line_array(plane)
    assert arr.shape == (count, 1 << s)
    oracle = eg_lines_by_pairs(plane)
    assert {(False, tuple(r)) for r in arr.tolist()} == {x for x in oracle if not x[0]}
    # all lines: 2^s (2^s + 1) in total
    assert len(oracle) == (1 << s) * ((1 << s) + 1)


def test_line_array_order_is_deterministic(eg4):
    arr = eg_nonorigin_line_array(eg4)
    assert np.array_equal(arr, eg_nonorigin_line_array(EgPlane.build(2)))
    assert list(arr[:, 0]) == sorted(arr[:, 0])


@pytest.mark.parametrize("s", [2, 3])
def test_eg_incidence_structure(s):
    plane = EgPlane.build(s)
    q = 1 << s
    lines = eg_nonorigin_lines(plane)
    origin = eg_origin_lines(plane)
    assert len(origin) == q + 1
    everything = lines + origin
    for a, b in itertools.combinations(everything, 2):
        common = len(set(a.points) & set(b.points)) + (a.contains_origin and b.contains_origin)
        assert common <= 1
    for p in range(plane.n):
        assert len(lines_through(lines, p)) == q
        assert len(lines_through(everything, p)) == q + 1
    # any two distinct nonzero points lie on exactly one line
    cover = np.zeros((plane.n, plane.n), dtype=np.int64)
    for ln in everything:
        for x, y in itertools.permutations(ln.points, 2):
            cover[x, y] += 1
    off = ~np.eye(plane.n, dtype=bool)
    assert np.all(cover[off] == 1)


def test_pg_line_size_and_symmetry(pg4):
    for i, j in itertools.permutations(range(pg4.n_points), 2):
        line = pg_line(pg4, i, j)
        assert len(line) == 5
        assert i in line and j in line
    assert pg_line(pg4, 3, 11) == pg_line(pg4, 11, 3)


def test_pg_same_point(pg4):
    with pytest.raises(SamePoint):
        pg_line(pg4, 2, 2)


def test_pg_point_class(pg4):
    f = pg4.field
    assert pg4.n_points == 21
    for j in range(f.order):
        assert pg4.point_class(f.alpha(j)) == j % 21


@pytest.mark.parametrize("s, count", [(2, 21), (3, 73)])
def test_pg_line_count_matches_pairwise_oracle(s, count):
    plane = PgPlane.build(s)
    arr = pg_line_array(plane)
    assert arr.shape == (count, (1 << s) + 1)
    oracle = {pg_line(plane, i, j).points for i, j in itertools.combinations(range(plane.n_points), 2)}
    assert {tuple(r) for r in arr.tolist()} == oracle


def test_projective_plane_axioms(pg4):
    lines = pg_all_lines(pg4)
    for a, b in itertools.combinations(lines, 2):
        assert len(set(a.points) & set(b.points)) == 1
    for p in range(pg4.n_points):
        assert len(lines_through(lines, p)) == 5


def test_incidence_vectors(eg4, pg4):
    v = incidence_vector(Line((7, 8, 10, 14)), 15)
    assert "".join(map(str, v)) == "000000011010001"
    with pytest.raises(OriginOnLine):
        incidence_vector(eg_line(eg4, 0, 1), 15)
    with pytest.raises(EmptyLine):
        incidence_vector(Line(()), 15)
    w = incidence_vector(pg_line(pg4, 0, 1), 21)
    assert w.sum() == 5


def test_line_canonicalises_points():
    assert Line((5, 1, 5, 3)).points == (1, 3, 5)
