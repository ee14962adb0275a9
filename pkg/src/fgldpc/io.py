"""JSON code bundles and the alist sparse-matrix format."""

from __future__ import annotations

import json
from typing import Any

import numpy as np

from .binmat import BitMatrix, BitPoly, pack_bits
from .codes import CodeOrigin, CyclicStructure, KnownDistance, LdpcCode, from_matrix
from .css import CssCode, build_css
from .errors import BundleFormatError

FORMAT_VERSION = 1


# ---------------------------------------------------------------------------
# matrices


def _row_to_hex(words: np.ndarray, cols: int) -> str:
    value = int.from_bytes(np.ascontiguousarray(words, dtype="<u8").tobytes(), "little")
    return format(value, f"0{max(1, -(-cols // 4))}x")


def matrix_to_json(M: BitMatrix) -> dict[str, Any]:
    """Rows as hex strings of the integer whose bit j is column j."""
    return {"rows": M.rows, "cols": M.cols, "data": [_row_to_hex(M.data[i], M.cols) for i in range(M.rows)]}


def matrix_from_json(d: dict[str, Any]) -> BitMatrix:
    try:
        rows, cols, data = int(d["rows"]), int(d["cols"]), d["data"]
    except (KeyError, TypeError, ValueError) as exc:
        raise BundleFormatError(f"malformed matrix record: {exc}") from None
    if len(data) != rows:
        raise BundleFormatError(f"expected {rows} rows, found {len(data)}")
    nbytes = max(8, -(-cols // 64) * 8)
    packed = np.zeros((rows, nbytes // 8), dtype=np.uint64)
    for i, text in enumerate(data):
        value = int(text, 16)
        if value >> cols:
            raise BundleFormatError(f"row {i} has bits beyond column {cols}")
        packed[i] = np.frombuffer(value.to_bytes(nbytes, "little"), dtype="<u8")
    return BitMatrix(packed, cols)


# ---------------------------------------------------------------------------
# code bundles


def code_to_json(code: LdpcCode, *, with_cyclic: bool | None = None) -> dict[str, Any]:
    """Serialise a code.  Cyclic polynomials are included when already known or cheap."""
    p = code.params
    params: dict[str, Any] = {
        "n": code.n,
        "k": code.k,
        "rank": code.rank,
        "rho": sorted(p.rho),
        "gamma": sorted(p.gamma),
        "lambda": p.lam,
        "density": f"{p.density.numerator}/{p.density.denominator}",
        "density_float": float(p.density),
        "d_known": None if p.d_known is None else {"value": p.d_known.value, "provenance": p.d_known.provenance},
    }
    out: dict[str, Any] = {
        "format": FORMAT_VERSION,
        "type": "code",
        "descriptor": code.origin.to_dict(),
        "H": matrix_to_json(code.H),
        "params": params,
    }
    if not np.array_equal(code.columns, np.arange(code.n)):
        out["descriptor"]["columns"] = code.columns.tolist()
    if with_cyclic is None:
        with_cyclic = "cyclic" in code.__dict__ or code.circulant_row is not None or code.n <= 1100
    if with_cyclic:
        cs = code.cyclic
        out["cyclic"] = None if cs is None else {
            "g": hex(cs.g.bits),
            "h": hex(cs.h.bits),
            "g_text": str(cs.g),
            "h_text": str(cs.h),
        }
    return out


def code_from_json(d: dict[str, Any]) -> LdpcCode:
    if d.get("format") != FORMAT_VERSION:
        raise BundleFormatError(f"unsupported bundle format {d.get('format')!r}")
    if d.get("type", "code") != "code":
        raise BundleFormatError(f"expected a code bundle, got {d.get('type')!r}")
    H = matrix_from_json(d["H"])
    desc = d.get("descriptor", {})
    origin = CodeOrigin.from_dict(desc)
    known = d.get("params", {}).get("d_known")
    d_known = None if not known else KnownDistance(int(known["value"]), known["provenance"])
    code = from_matrix(H, origin, d_known=d_known, columns=desc.get("columns"))
    cyc = d.get("cyclic")
    if cyc:
        g, h = BitPoly(int(cyc["g"], 16)), BitPoly(int(cyc["h"], 16))
        if g * h != BitPoly.x_n_plus_1(code.n):
            raise BundleFormatError("stored g(x) h(x) is not x^n + 1")
        code.__dict__["cyclic"] = CyclicStructure(g, h, code.n)
    return code


def css_to_json(css: CssCode) -> dict[str, Any]:
    out: dict[str, Any] = {
        "format": FORMAT_VERSION,
        "type": "css",
        "n": css.n,
        "k_quantum": css.k_quantum,
        "c1": code_to_json(css.c1),
        "c2": code_to_json(css.c2),
        "h_x": matrix_to_json(css.h_x),
        "h_z": matrix_to_json(css.h_z),
    }
    return out


def css_from_json(d: dict[str, Any]) -> CssCode:
    if d.get("format") != FORMAT_VERSION or d.get("type") != "css":
        raise BundleFormatError("not a CSS bundle")
    return build_css(code_from_json(d["c1"]), code_from_json(d["c2"]))


def load_bundle(text: str) -> LdpcCode | CssCode:
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise BundleFormatError(f"invalid JSON: {exc}") from None
    if not isinstance(d, dict):
        raise BundleFormatError("bundle must be a JSON object")
    return css_from_json(d) if d.get("type") == "css" else code_from_json(d)


def dumps(obj: dict[str, Any]) -> str:
    return json.dumps(obj, indent=2) + "\n"


# ---------------------------------------------------------------------------
# alist


def to_alist(M: BitMatrix) -> str:
    """Write ``M`` in alist format (1-based indices, zero padded)."""
    m, n = M.rows, M.cols
    supports = M.supports()
    col_lists: list[list[int]] = [[] for _ in range(n)]
    for r, row in enumerate(supports):
        for c in row:
            col_lists[c].append(r)
    col_w = [len(c) for c in col_lists]
    row_w = [len(r) for r in supports]
    max_c = max(col_w, default=0)
    max_r = max(row_w, default=0)

    def padded(idx: list[int], width: int) -> str:
        vals = [i + 1 for i in idx] + [0] * (width - len(idx))
        return " ".join(map(str, vals))

    lines = [f"{n} {m}", f"{max_c} {max_r}", " ".join(map(str, col_w)), " ".join(map(str, row_w))]
    lines += [padded(c, max_c) for c in col_lists]
    lines += [padded(r, max_r) for r in supports]
    return "\n".join(lines) + "\n"


def from_alist(text: str) -> BitMatrix:
    lines = text.splitlines()
    try:
        n, m = map(int, lines[0].split())
        max_c, max_r = map(int, lines[1].split())
        col_w = list(map(int, lines[2].split()))
        row_w = list(map(int, lines[3].split()))
        col_block = [list(map(int, ln.split())) for ln in lines[4 : 4 + n]]
        row_block = [list(map(int, ln.split())) for ln in lines[4 + n : 4 + n + m]]
    except (IndexError, ValueError) as exc:
        raise BundleFormatError(f"malformed alist: {exc}") from None
    if len(col_w) != n or len(row_w) != m or len(col_block) != n or len(row_block) != m:
        raise BundleFormatError("alist header does not match its body")
    dense = np.zeros((m, n), dtype=np.uint8)
    for c, entries in enumerate(col_block):
        rows = [e - 1 for e in entries if e]
        if len(rows) != col_w[c]:
            raise BundleFormatError(f"column {c + 1} weight mismatch")
        dense[rows, c] = 1
    check = np.zeros_like(dense)
    for r, entries in enumerate(row_block):
        cols = [e - 1 for e in entries if e]
        if len(cols) != row_w[r]:
            raise BundleFormatError(f"row {r + 1} weight mismatch")
        check[r, cols] = 1
    if not np.array_equal(dense, check):
        raise BundleFormatError("alist column and row lists disagree")
    if max(col_w, default=0) != max_c or max(row_w, default=0) != max_r:
        raise BundleFormatError("alist maximum weights are wrong")
    return BitMatrix(pack_bits(dense, n), n)


def load_matrix_or_code(text: str) -> LdpcCode | CssCode:
    """Accept either a JSON bundle or an alist file."""
    if text.lstrip().startswith("{"):
        return load_bundle(text)
    return from_matrix(from_alist(text))
