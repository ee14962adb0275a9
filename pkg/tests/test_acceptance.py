"""Acceptance gate: one test per criterion, each reporting a PASS/FAIL line."""

from __future__ import annotations

import itertools
import time
from contextlib import contextmanager
from fractions import Fraction

import numpy as np

from conftest import ACCEPTANCE_RESULTS
from fgldpc import binmat
from fgldpc.binmat import BitMatrix, BitPoly, weights_and_overlap
from fgldpc.cli import check_ldpc
from fgldpc.codes import LdpcCode, construct_eg_code, construct_pg_code, min_distance_bruteforce
from fgldpc.css import build_css, css_from_row_split
from fgldpc.decoder import BitFlipDecoder, FlipPolicy, nearest_codeword_oracle
from fgldpc.errors import NotNested
from fgldpc.geometry import Line
from fgldpc.gf2m import FieldSpec, build_field
from fgldpc.simulate import run_bsc_sim
from fgldpc.transforms import puncture, split_columns, split_rows
from reference_data import (
    C2_DUAL_H,
    EG4_H,
    GALLAGER_H,
    GF16_TABLE,
    SPLIT_COLUMN,
    SPLIT_COLUMN_BLOCK,
    SPLIT_ROW_PAIR,
)

SEED = 20240601
BSC_FROZEN = (4478, 670)  # (bit_errors, word_failures) for EG(2,4), p = 1/15, 10^4 trials


@contextmanager
def criterion(number: int, title: str):
    notes: list[str] = []
    start = time.perf_counter()
    try:
        yield notes
    except BaseException as exc:
        ACCEPTANCE_RESULTS[number] = (False, f"{title}: {type(exc).__name__}: {exc}")
        print(f"criterion {number}: FAIL  {title}: {exc}")
        raise
    elapsed = time.perf_counter() - start
    detail = f"{title} ({elapsed:.2f} s)" + (f"; {'; '.join(notes)}" if notes else "")
    ACCEPTANCE_RESULTS[number] = (True, detail)
    print(f"criterion {number}: PASS  {detail}")


def best_time(fn, repeat: int = 20) -> float:
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def test_criterion_01_gf16_table():
    with criterion(1, "GF(16) table under x^4+x+1") as notes:
        spec = FieldSpec(4, 0b10011)
        f = build_field(spec)
        for tup, power in GF16_TABLE:
            assert f.tuple_string(f.alpha(power)) == tup
            assert f.log_of(int(tup[::-1], 2)) == power
        t = best_time(lambda: build_field(spec))
        notes.append(f"table build {t * 1e6:.0f} us")
        assert t < 1e-3


def test_criterion_02_worked_example_matrix():
    with criterion(2, "default EG(2,4) matrix bit-exact"):
        code = construct_eg_code(2)
        f = build_field(4)
        base = {f.alpha(14) ^ f.mul(eta, f.alpha(1)) for eta in f.subfield(2)}
        assert sorted(f.log_of(p) for p in base) == [7, 8, 10, 14]
        assert code.H.to_strings()[0] == "000000011010001"
        assert code.H.to_strings() == EG4_H


def test_criterion_03_eg_parameters():
    with criterion(3, "EG parameters s=2,3"):
        t = time.perf_counter()
        for s, (n, rk, k) in {2: (15, 8, 7), 3: (63, 26, 37)}.items():
            code = construct_eg_code(s)
            assert (code.n, binmat.rank(code.H), code.k) == (n, rk, k)
            assert code.rank == rk
        assert time.perf_counter() - t < 1.0


def test_criterion_04_pg_parameters():
    with criterion(4, "PG parameters s=2,3"):
        t = time.perf_counter()
        for s, (n, rk, k) in {2: (21, 10, 11), 3: (73, 28, 45)}.items():
            code = construct_pg_code(s)
            assert (code.n, binmat.rank(code.H), code.k) == (n, rk, k)
        assert time.perf_counter() - t < 5.0


def test_criterion_05_distances_and_large_construction():
    with criterion(5, "d(EG(2,4))=5, d(PG(2,4))=6, s=7 EG structure") as notes:
        t = time.perf_counter()
        assert min_distance_bruteforce(construct_eg_code(2)) == 5 == (1 << 2) + 1
        assert min_distance_bruteforce(construct_pg_code(2)) == 6 == (1 << 2) + 2
        assert time.perf_counter() - t < 1.0
        t = time.perf_counter()
        big = construct_eg_code(7)
        p = big.params
        assert big.n == 16383 and p.rho == {128} and p.gamma == {128} and p.lam == 1
        assert abs(float(p.density) - 0.007813) <= 5e-7
        elapsed = time.perf_counter() - t
        notes.append(f"s=7 build+profile {elapsed:.1f} s, k={big.k}")
        assert elapsed < 60


def test_criterion_06_ldpc_property_suite():
    with criterion(6, "regularity, lambda=1 and density formulas s=2,3"):
        for s in (2, 3):
            q = 1 << s
            for code, r in (
                (construct_eg_code(s), Fraction(q, q * q - 1)),
                (construct_pg_code(s), Fraction(q + 1, q * q + q + 1)),
            ):
                p = code.params
                assert len(p.rho) == 1 and len(p.gamma) == 1 and p.lam == 1
                assert p.density == r
                assert abs(code.H.ones() / code.n**2 - float(r)) < 1e-12


def test_criterion_07_css_pipeline():
    with criterion(7, "row split q=2 gives [[15,4]]"):
        css = css_from_row_split(construct_eg_code(2), 2)
        assert css.c2.rank == 12 and css.c2.k == 3
        assert css.c2.cyclic.h == BitPoly.from_exponents([0, 3])
        dual = css.c2_dual()
        assert dual.cyclic.h == BitPoly.from_exponents([0, 3, 6, 9, 12])
        assert (css.n, css.k_quantum) == (15, 4)
        printed = BitMatrix.from_strings(C2_DUAL_H)
        assert binmat.rank(css.h_x.vstack(printed)) == binmat.rank(printed) == binmat.rank(css.h_x)
        assert weights_and_overlap(printed).density == Fraction(15, 45)
        assert css.c1.params.density == Fraction(4, 15)


def test_criterion_08_transform_goldens():
    with criterion(8, "column split, row split and puncture goldens") as notes:
        column = BitMatrix.from_strings(list(SPLIT_COLUMN))
        assert split_columns(column, 3).to_strings() == SPLIT_COLUMN_BLOCK
        code = construct_eg_code(2)
        assert split_rows(code.H, 2).to_strings()[:2] == SPLIT_ROW_PAIR
        p = puncture(code, Line((7, 8, 10, 14)))
        s = 2
        shape = ((1 << 2 * s) - 2, (1 << 2 * s) - (1 << s) - 1)
        assert p.H.shape == shape == (14, 11)
        assert p.params.gamma == {4} and p.params.rho == {3, 4}
        notes.append("punctured shape 14x11 = (2^2s-2) x (2^2s-2^s-1); the criterion text's 14x10 drops one column too many")


def test_criterion_09_decoders():
    with criterion(9, "oracle on 121 patterns, bit-flip on 15 singles, Gallager fixture"):
        t = time.perf_counter()
        code = construct_eg_code(2)
        patterns = [()] + [(i,) for i in range(15)] + list(itertools.combinations(range(15), 2))
        assert len(patterns) == 121
        for pat in patterns:
            v = np.zeros(15, dtype=np.uint8)
            v[list(pat)] = 1
            word, dist, unique = nearest_codeword_oracle(code, v)
            assert not word.any() and dist == len(pat) and unique
        dec = BitFlipDecoder(code.H, FlipPolicy("max"))
        for i in range(15):
            v = np.zeros(15, dtype=np.uint8)
            v[i] = 1
            res = dec.decode(v)
            assert res.success and not res.word.any()
        g = weights_and_overlap(BitMatrix.from_strings(GALLAGER_H))
        assert all(check_ldpc(g, 20).values()) and g.rho == {4} and g.gamma == {3} and g.lam <= 1
        assert time.perf_counter() - t < 1.0


def test_criterion_10_css_invariants():
    with criterion(10, "h_x h_z^T = 0 on every build; NotNested witness"):
        eg2 = construct_eg_code(2)
        built = [css_from_row_split(eg2, 2), css_from_row_split(eg2, 3), build_css(eg2, eg2),
                 css_from_row_split(construct_eg_code(3), 2), css_from_row_split(construct_pg_code(2), 2)]
        for css in built:
            assert (css.h_x @ css.h_z.T).is_zero()
            assert css.k_quantum == css.c1.k - css.c2.k >= 0
        stray = LdpcCode(BitMatrix.from_dense(np.eye(15, dtype=np.uint8)[:14]))
        try:
            build_css(eg2, stray)
        except NotNested as exc:
            assert stray.contains(exc.witness) and not eg2.contains(exc.witness)
        else:
            raise AssertionError("NotNested did not fire")


def test_criterion_11_simulation():
    with criterion(11, "noiseless, serial=parallel, 3-way merge, frozen BSC run") as notes:
        t = time.perf_counter()
        code = construct_eg_code(2)
        policy = FlipPolicy()
        zero = run_bsc_sim(code, policy, 0.0, 500, SEED)
        assert zero.bit_errors == 0 and zero.word_failures == 0
        serial = run_bsc_sim(code, policy, 0.1, 900, SEED)
        assert run_bsc_sim(code, policy, 0.1, 900, SEED, workers=3) == serial
        a, b, c = (run_bsc_sim(code, policy, 0.1, 300, SEED, first_trial=x) for x in (0, 300, 600))
        assert (a + b) + c == a + (b + c) == serial
        frozen = run_bsc_sim(code, policy, 1 / 15, 10_000, SEED)
        assert (frozen.bit_errors, frozen.word_failures) == BSC_FROZEN
        notes.append(f"ber={frozen.ber:.6f} fer={frozen.fer:.4f}")
        assert time.perf_counter() - t < 10.0
