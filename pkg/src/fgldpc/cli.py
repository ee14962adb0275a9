"""Command-line front end.

Subcommands read a JSON bundle (or an alist file) from ``--in`` or stdin and
write to ``--out`` or stdout, so they compose with pipes::

    fgldpc construct --geometry eg --s 2 | fgldpc css --split-rows 2

Failures print ``{"error": <category>, "message": ...}`` on stderr and exit
with status 1 (2 for bad arguments).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Sequence

import numpy as np

from . import io
from .binmat import BitMatrix, WeightProfile, weights_and_overlap
from .codes import LdpcCode, construct_eg_code, construct_pg_code, min_distance_bruteforce
from .css import CssCode, build_css, css_from_row_split, distance_bound
from .decoder import FlipPolicy, bitflip_decode, nearest_codeword_oracle, syndrome
from .errors import FgLdpcError
from .geometry import Line
from .gf2m import FieldSpec
from .simulate import run_bsc_sim, run_css_sim
from .transforms import extend_code, puncture, row_split_code

PRETTY_MATRIX_LIMIT = 256


class CliFailure(Exception):
    def __init__(self, category: str, message: str, extra: dict[str, Any] | None = None) -> None:
        super().__init__(message)
        self.category = category
        self.extra = extra or {}


# ---------------------------------------------------------------------------
# formatting


def _fraction(profile: WeightProfile) -> str:
    return f"{profile.ones}/{profile.rows * profile.cols}"


def check_ldpc(profile: WeightProfile, n: int, max_fraction: float = 0.5) -> dict[str, bool]:
    """The four defining LDPC conditions, with "small" read as at most ``max_fraction`` of ``n``."""
    return {
        "row_regular": len(profile.rho) == 1,
        "column_regular": len(profile.gamma) == 1,
        "lambda_at_most_1": profile.lam <= 1,
        "sparse": max(profile.rho, default=0) <= max_fraction * n and max(profile.gamma, default=0) <= max_fraction * n,
    }


def _matrix_lines(M: BitMatrix) -> list[str]:
    if M.rows * M.cols > PRETTY_MATRIX_LIMIT * PRETTY_MATRIX_LIMIT:
        return [f"({M.rows} x {M.cols} matrix omitted; use --format json or alist)"]
    return M.to_strings()


def pretty_code(code: LdpcCode) -> str:
    p = code.params
    lines = [
        f"code: {code.origin.describe()}",
        f"[n, k] = [{code.n}, {code.k}]   rank(H) = {code.rank}",
        f"rho = {sorted(p.rho)}  gamma = {sorted(p.gamma)}  lambda = {p.lam}  "
        f"density = {_fraction(code.profile)} ({float(p.density):.6f})",
    ]
    if p.d_known is not None:
        lines.append(f"d = {p.d_known.value} ({p.d_known.provenance})")
    cs = code.__dict__.get("cyclic")
    if cs is None and (code.circulant_row is not None or code.n <= 1100):
        cs = code.cyclic
    if cs is not None:
        lines += [f"g(x) = {cs.g}", f"h(x) = {cs.h}"]
    lines.append(f"H ({code.H.rows} x {code.H.cols}):")
    lines += _matrix_lines(code.H)
    return "\n".join(lines) + "\n"


def _polys(code: LdpcCode) -> dict[str, str] | None:
    cs = code.cyclic
    return None if cs is None else {"g": str(cs.g), "h": str(cs.h)}


def css_report(css: CssCode) -> dict[str, Any]:
    dual = css.c2_dual()
    hx_profile = weights_and_overlap(css.h_x)
    dual_profile = weights_and_overlap(dual.H)
    report: dict[str, Any] = {
        "parameters": f"[[{css.n},{css.k_quantum}]]",
        "n": css.n,
        "k1": css.c1.k,
        "k2": css.c2.k,
        "k_quantum": css.k_quantum,
        "rank_split_matrix": css.c2.rank,
        "polynomials": {"c1": _polys(css.c1), "c2": _polys(css.c2), "c2_dual": _polys(dual)},
        "h_z": {"density": _fraction(css.c1.profile), "rho": sorted(css.c1.profile.rho),
                "gamma": sorted(css.c1.profile.gamma), "lambda": css.c1.profile.lam},
        "h_x": {"density": _fraction(hx_profile), "rho": sorted(hx_profile.rho),
                "gamma": sorted(hx_profile.gamma), "lambda": hx_profile.lam},
        "c2_dual_check_matrix": {
            "rows": _matrix_lines(dual.H),
            "density": _fraction(dual_profile),
            "rho": sorted(dual_profile.rho),
            "gamma": sorted(dual_profile.gamma),
            "lambda": dual_profile.lam,
        },
    }
    if css.c1.k <= 22 and css.n - css.c2.k <= 22:
        report["distances"] = distance_bound(css)
    return report


def pretty_css(css: CssCode) -> str:
    r = css_report(css)
    lines = [
        f"CSS code {r['parameters']}  (k1 = {r['k1']}, k2 = {r['k2']})",
        f"C1 = {css.c1.origin.describe()}",
        f"C2 = {css.c2.origin.describe()}  rank(split H) = {r['rank_split_matrix']}",
    ]
    for name, polys in r["polynomials"].items():
        if polys:
            lines.append(f"{name}: g(x) = {polys['g']}   h(x) = {polys['h']}")
    lines.append(f"h_z density {r['h_z']['density']}   h_x density {r['h_x']['density']}")
    lines.append("check matrix of the dual of C2:")
    lines += r["c2_dual_check_matrix"]["rows"]
    if "distances" in r:
        lines.append(f"distances: {r['distances']}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# I/O helpers


def _read_input(args: argparse.Namespace) -> LdpcCode | CssCode:
    if args.input and args.input != "-":
        with open(args.input, encoding="utf-8") as fh:
            text = fh.read()
    else:
        text = sys.stdin.read()
    if not text.strip():
        raise CliFailure("empty_input", "no input bundle on stdin or --in")
    return io.load_matrix_or_code(text)


def _read_code(args: argparse.Namespace) -> LdpcCode:
    obj = _read_input(args)
    if isinstance(obj, CssCode):
        raise CliFailure("wrong_bundle", "expected a code bundle, got a CSS bundle")
    return obj


def _write(args: argparse.Namespace, text: str) -> None:
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_code(args: argparse.Namespace, code: LdpcCode) -> None:
    fmt = getattr(args, "format", "json")
    if fmt == "alist":
        _write(args, io.to_alist(code.H))
    elif fmt == "pretty":
        _write(args, pretty_code(code))
    else:
        _write(args, io.dumps(io.code_to_json(code)))


def _emit_css(args: argparse.Namespace, css: CssCode) -> None:
    fmt = getattr(args, "format", "json")
    if fmt == "pretty":
        _write(args, pretty_css(css))
    elif fmt == "alist":
        _write(args, io.to_alist(css.h_x if getattr(args, "matrix", "hz") == "hx" else css.h_z))
    else:
        bundle = io.css_to_json(css)
        bundle["report"] = css_report(css)
        _write(args, io.dumps(bundle))


def _policy(args: argparse.Namespace) -> FlipPolicy:
    return FlipPolicy.parse(args.policy, args.max_iter)


# ---------------------------------------------------------------------------
# commands


def cmd_construct(args: argparse.Namespace) -> int:
    m = 2 * args.s if args.geometry == "eg" else 3 * args.s
    spec = FieldSpec(m, int(args.primpoly, 16)) if args.primpoly else None
    base = None
    if args.base_p0 is not None or args.base_p1 is not None:
        if args.base_p0 is None or args.base_p1 is None:
            raise CliFailure("invalid_argument", "--base-p0 and --base-p1 go together")
        base = (args.base_p0, args.base_p1)
    build = construct_eg_code if args.geometry == "eg" else construct_pg_code
    _emit_code(args, build(args.s, spec, base))
    return 0


def cmd_transform(args: argparse.Namespace) -> int:
    code = _read_code(args)
    chosen = [x for x in (args.puncture_row, args.split_columns, args.split_rows) if x]
    if len(chosen) != 1:
        raise CliFailure("invalid_argument", "give exactly one of --puncture-row, --split-columns, --split-rows")
    if args.puncture_row:
        lines = []
        for r in args.puncture_row:
            if not 0 <= r < code.H.rows:
                raise CliFailure("invalid_argument", f"row {r} out of range")
            lines.append(Line(tuple(int(code.columns[c]) for c in code.H.row_support(r))))
        out = puncture(code, lines)
    elif args.split_columns:
        out = extend_code(code, args.split_columns)
    else:
        out = row_split_code(code, args.split_rows)
    _emit_code(args, out)
    return 0


def cmd_css(args: argparse.Namespace) -> int:
    obj = _read_input(args)
    if isinstance(obj, CssCode):
        css = obj
    elif args.c2:
        with open(args.c2, encoding="utf-8") as fh:
            c2 = io.load_matrix_or_code(fh.read())
        if isinstance(c2, CssCode):
            raise CliFailure("wrong_bundle", "--c2 must be a code bundle")
        css = build_css(obj, c2)
    elif args.split_rows:
        css = css_from_row_split(obj, args.split_rows)
    else:
        raise CliFailure("invalid_argument", "give --split-rows Q or --c2 FILE")
    _emit_css(args, css)
    return 0


def cmd_inspect(args: argparse.Namespace) -> int:
    obj = _read_input(args)
    if isinstance(obj, CssCode):
        _write(args, io.dumps(css_report(obj)))
        return 0
    code = obj
    p = code.params
    report: dict[str, Any] = {
        "code": code.origin.describe(),
        "n": code.n,
        "k": code.k,
        "rank": code.rank,
        "rows": code.H.rows,
        "rho": sorted(p.rho),
        "gamma": sorted(p.gamma),
        "lambda": p.lam,
        "density": _fraction(code.profile),
        "density_float": float(p.density),
    }
    if args.cyclic:
        report["cyclic"] = _polys(code)
    if args.distance:
        report["d_bruteforce"] = min_distance_bruteforce(code) if code.k else None
    status = 0
    if args.check_ldpc:
        checks = check_ldpc(code.profile, code.n, args.sparsity)
        report["ldpc_checks"] = checks
        failed = [name for name, ok in checks.items() if not ok]
        if failed:
            status = 1
            sys.stderr.write(json.dumps({"error": "ldpc_violation", "violations": failed, "lambda": p.lam}) + "\n")
    _write(args, io.dumps(report))
    return status


def _parse_word(args: argparse.Namespace, n: int) -> np.ndarray:
    if args.word:
        bits = [int(ch) for ch in args.word if ch in "01"]
        if len(bits) != n:
            raise CliFailure("length_mismatch", f"word has {len(bits)} bits, code length is {n}")
        return np.array(bits, dtype=np.uint8)
    v = np.zeros(n, dtype=np.uint8)
    for tok in (args.error or "").split(","):
        if tok.strip():
            pos = int(tok)
            if not 0 <= pos < n:
                raise CliFailure("invalid_argument", f"error position {pos} out of range")
            v[pos] ^= 1
    return v


def cmd_decode(args: argparse.Namespace) -> int:
    code = _read_code(args)
    v = _parse_word(args, code.n)
    if args.decoder == "oracle":
        word, dist, unique = nearest_codeword_oracle(code, v)
        out = {"decoder": "oracle", "word": "".join(map(str, word)), "distance": dist, "unique": unique}
    else:
        res = bitflip_decode(code.H, v, _policy(args))
        out = {
            "decoder": "bitflip",
            "policy": _policy(args).label(),
            "success": res.success,
            "reason": res.reason,
            "iterations": res.iterations,
            "word": "".join(map(str, res.word)),
            "syndrome_weight": int(syndrome(code.H, res.word).sum()),
            "flip_counts_last": res.flip_counts_last.tolist(),
        }
    _write(args, io.dumps(out))
    return 0


def cmd_simulate(args: argparse.Namespace) -> int:
    obj = _read_input(args)
    policy = _policy(args)
    if isinstance(obj, CssCode):
        rep = run_css_sim(obj, policy, args.px, args.pz, args.trials, args.seed, workers=args.workers, decoder=args.decoder)
    else:
        if args.p is None:
            raise CliFailure("invalid_argument", "--p is required for a classical code")
        rep = run_bsc_sim(obj, policy, args.p, args.trials, args.seed, workers=args.workers, decoder=args.decoder)
    out = rep.to_dict()
    out["policy"] = policy.label()
    out["decoder"] = args.decoder
    _write(args, io.dumps(out))
    return 0


def cmd_export(args: argparse.Namespace) -> int:
    obj = _read_input(args)
    if isinstance(obj, CssCode):
        _emit_css(args, obj)
    else:
        _emit_code(args, obj)
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fgldpc", description="Finite-geometry LDPC and CSS code toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    def io_flags(p: argparse.ArgumentParser, formats: Sequence[str] = ("json", "alist", "pretty")) -> None:
        p.add_argument("--in", dest="input", help="input bundle or alist file (default: stdin)")
        p.add_argument("--out", help="output file (default: stdout)")
        p.add_argument("--format", choices=formats, default="json")

    def decoder_flags(p: argparse.ArgumentParser) -> None:
        p.add_argument("--policy", default="max", help="'max' or 'threshold:t'")
        p.add_argument("--max-iter", type=int, default=50)
        p.add_argument("--decoder", choices=("bitflip", "oracle"), default="bitflip")

    p = sub.add_parser("construct", help="build an EG or PG LDPC code")
    p.add_argument("--geometry", choices=("eg", "pg"), required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--primpoly", help="primitive polynomial as hex bitmask, e.g. 0x13")
    p.add_argument("--base-p0", type=int, help="exponent of the base point (EG) or first point (PG)")
    p.add_argument("--base-p1", type=int, help="exponent of the direction (EG) or second point (PG)")
    p.add_argument("--out")
    p.add_argument("--format", choices=("json", "alist", "pretty"), default="json")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("transform", help="puncture or split a code")
    io_flags(p)
    p.add_argument("--puncture-row", type=int, action="append", help="remove the line of this row of H (repeatable)")
    p.add_argument("--split-columns", "--q", type=int, dest="split_columns")
    p.add_argument("--split-rows", type=int)
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("css", help="build a CSS code from a code and its row split (or a given subcode)")
    io_flags(p)
    p.add_argument("--split-rows", type=int)
    p.add_argument("--c2", help="bundle of the subcode C2")
    p.add_argument("--matrix", choices=("hx", "hz"), default="hz", help="matrix written for --format alist")
    p.set_defaults(func=cmd_css)

    p = sub.add_parser("inspect", help="report parameters and LDPC properties")
    io_flags(p, ("json",))
    p.add_argument("--check-ldpc", action="store_true")
    p.add_argument("--sparsity", type=float, default=0.5, help="largest weight/length ratio counted as sparse")
    p.add_argument("--distance", action="store_true", help="brute-force the minimum distance")
    p.add_argument("--cyclic", action="store_true", help="report generator and check polynomials")
    p.set_defaults(func=cmd_inspect)

    p = sub.add_parser("decode", help="decode one word")
    io_flags(p, ("json",))
    p.add_argument("--word", help="received word as a 0/1 string")
    p.add_argument("--error", help="comma-separated error positions applied to the zero word")
    decoder_flags(p)
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("simulate", help="Monte Carlo decoding run")
    io_flags(p, ("json",))
    p.add_argument("--p", type=float)
    p.add_argument("--px", type=float, default=0.0)
    p.add_argument("--pz", type=float, default=0.0)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    decoder_flags(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("export", help="convert a bundle to alist, json or pretty text")
    io_flags(p)
    p.add_argument("--matrix", choices=("hx", "hz"), default="hz")
    p.set_defaults(func=cmd_export)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliFailure as exc:
        sys.stderr.write(json.dumps({"error": exc.category, "message": str(exc), **exc.extra}) + "\n")
        return 1
    except FgLdpcError as exc:
        sys.stderr.write(json.dumps({"error": exc.category, "message": str(exc)}) + "\n")
        return 1
    except (ValueError, OSError) as exc:
        sys.stderr.write(json.dumps({"error": "invalid_argument", "message": str(exc)}) + "\n")
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
