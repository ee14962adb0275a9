"""Finite-geometry LDPC codes, bit-flip decoding and CSS constructions over GF(2)."""

from __future__ import annotations

from .binmat import BitMatrix, BitPoly, WeightProfile, null_space, rank
from .codes import (
    CodeOrigin,
    CyclicStructure,
    LdpcCode,
    construct_eg_code,
    construct_pg_code,
    cyclic_structure,
    dual_code,
    encode,
    min_distance_bruteforce,
)
from .css import CssCode, build_css, css_from_row_split
from .decoder import BitFlipDecoder, DecodeResult, FlipPolicy, bitflip_decode, nearest_codeword_oracle
from .errors import FgLdpcError
from .gf2m import FieldSpec, FieldTable, build_field
from .simulate import SimReport, run_bsc_sim, run_css_sim
from .transforms import extend_code, puncture, row_split_code, split_columns, split_rows

__all__ = [
    "BitFlipDecoder",
    "BitMatrix",
    "BitPoly",
    "CodeOrigin",
    "CssCode",
    "CyclicStructure",
    "DecodeResult",
    "FgLdpcError",
    "FieldSpec",
    "FieldTable",
    "FlipPolicy",
    "LdpcCode",
    "SimReport",
    "WeightProfile",
    "bitflip_decode",
    "build_css",
    "build_field",
    "construct_eg_code",
    "construct_pg_code",
    "css_from_row_split",
    "cyclic_structure",
    "dual_code",
    "encode",
    "extend_code",
    "min_distance_bruteforce",
    "nearest_codeword_oracle",
    "null_space",
    "puncture",
    "rank",
    "row_split_code",
    "run_bsc_sim",
    "run_css_sim",
    "split_columns",
    "split_rows",
]
