"""CSS quantum codes from nested classical codes C2 inside C1.

Everything stays at the level of classical check matrices: ``h_z`` (the
parity-check matrix of C1) detects bit flips, and ``h_x`` (a generator matrix
of C2, hence a parity-check matrix of the dual of C2) detects phase flips.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import binmat
from .binmat import BitMatrix
from .codes import DEFAULT_DISTANCE_CAP, LdpcCode, dual_code, min_distance_bruteforce
from .errors import LengthMismatch, NotNested
from .transforms import row_split_code


@dataclass(frozen=True, eq=False)
class CssCode:
    c1: LdpcCode
    c2: LdpcCode
    n: int
    k_quantum: int
    h_z: BitMatrix
    h_x: BitMatrix

    def c2_dual(self) -> LdpcCode:
        """The dual of C2 as a code with parity-check matrix ``h_x``.

        When C2 is cyclic the matrix is the cyclic-shift form rather than the
        echelon basis; both span the same row space.
        """
        if self.c2.k and self.c2.cyclic is not None:
            return dual_code(self.c2)
        return LdpcCode(self.h_x, self.c2.origin.then("dual"), rank=self.h_x.rows)


def build_css(c1: LdpcCode, c2: LdpcCode) -> CssCode:
    """CSS(C1, C2) after checking that every basis word of C2 lies in C1."""
    if c1.n != c2.n:
        raise LengthMismatch(f"codes have lengths {c1.n} and {c2.n}")
    G2 = c2.generator_matrix
    for i in range(G2.rows):
        word = G2.row(i)
        if not c1.contains(word):
            raise NotNested(f"basis word {i} of C2 is not a codeword of C1", witness=word)
    _, h_x, _ = binmat.rank_and_rref(G2)
    h_z = c1.H
    if h_x.rows and not (h_x @ h_z.T).is_zero():
        raise AssertionError("h_x h_z^T != 0 despite nesting")
    return CssCode(c1, c2, c1.n, c1.k - c2.k, h_z, h_x)


def css_from_row_split(code: LdpcCode, q: int) -> CssCode:
    """CSS code of ``code`` over the subcode obtained by splitting each check row into ``q``."""
    return build_css(code, row_split_code(code, q))


def quantum_check_matrices(css: CssCode) -> tuple[BitMatrix, BitMatrix]:
    """``(h_x, h_z)``."""
    return css.h_x, css.h_z


def distance_bound(css: CssCode, cap: int = DEFAULT_DISTANCE_CAP) -> dict[str, int | None]:
    """Classical distances of C1 and of the dual of C2, and their minimum.

    The minimum lower-bounds the quantum distance (it ignores degeneracy).
    Entries are ``None`` when the dimension is beyond ``cap``.
    """

    def dist(code: LdpcCode) -> int | None:
        if code.k == 0 or code.k > cap:
            return None
        return min_distance_bruteforce(code, cap)

    d1 = dist(css.c1)
    d2d = dist(LdpcCode(css.h_x, rank=css.h_x.rows))
    known = [d for d in (d1, d2d) if d is not None]
    bound = min(known) if len(known) == 2 else None
    return {"d_c1": d1, "d_c2_dual": d2d, "non_degenerate_bound": bound}
