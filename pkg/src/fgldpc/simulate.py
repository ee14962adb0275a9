"""Seeded Monte Carlo runs: classical decoding over a BSC, CSS decoding over independent X/Z flips.

Randomness: trial ``i`` of a run with seed ``seed`` draws from its own Philox
4x64 stream keyed by ``seed XOR i``.  Any partition of the trials, serial or
across processes, therefore yields the same per-trial draws, and reports over
disjoint trial ranges merge by adding counts.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, replace

import numpy as np

from .binmat import BitMatrix
from .codes import LdpcCode
from .css import CssCode
from .decoder import BitFlipDecoder, FlipPolicy, nearest_codeword_oracle

MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class ChannelSpec:
    kind: str  # "bsc" | "pauli_xz"
    p: float = 0.0
    px: float = 0.0
    pz: float = 0.0

    def __post_init__(self) -> None:
        if self.kind not in ("bsc", "pauli_xz"):
            raise ValueError(f"unknown channel {self.kind!r}")
        for name in ("p", "px", "pz"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name}={value} is not a probability")


@dataclass(frozen=True)
class SimReport:
    kind: str
    n: int
    seed: int
    trials: int
    bit_errors: int
    word_failures: int
    iterations_total: int
    x_failures: int = 0
    z_failures: int = 0

    @property
    def ber(self) -> float:
        return self.bit_errors / (self.trials * self.n) if self.trials else 0.0

    @property
    def fer(self) -> float:
        return self.word_failures / self.trials if self.trials else 0.0

    @property
    def mean_iterations(self) -> float:
        return self.iterations_total / self.trials if self.trials else 0.0

    def merge(self, other: SimReport) -> SimReport:
        """Combine reports over disjoint trial ranges of the same run."""
        if (self.kind, self.n, self.seed) != (other.kind, other.n, other.seed):
            raise ValueError("can only merge reports of the same kind, length and seed")
        return replace(
            self,
            trials=self.trials + other.trials,
            bit_errors=self.bit_errors + other.bit_errors,
            word_failures=self.word_failures + other.word_failures,
            iterations_total=self.iterations_total + other.iterations_total,
            x_failures=self.x_failures + other.x_failures,
            z_failures=self.z_failures + other.z_failures,
        )

    __add__ = merge

    def to_dict(self) -> dict:
        d = asdict(self)
        d.update(ber=self.ber, fer=self.fer, mean_iterations=self.mean_iterations)
        return d


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=(seed ^ trial) & MASK64))


def _chunks(first: int, trials: int, workers: int) -> list[tuple[int, int]]:
    bounds = np.linspace(first, first + trials, workers + 1).astype(np.int64)
    return [(int(a), int(b - a)) for a, b in zip(bounds[:-1], bounds[1:]) if b > a]


def _fan_out(fn, args_for, first: int, trials: int, workers: int) -> SimReport:
    if workers <= 1:
        return fn(*args_for(first, trials))
    pieces = _chunks(first, trials, workers)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        reports = list(pool.map(fn, *zip(*(args_for(a, t) for a, t in pieces))))
    out = reports[0]
    for r in reports[1:]:
        out = out.merge(r)
    return out


# ---------------------------------------------------------------------------
# classical


def _bsc_chunk(code: LdpcCode, policy: FlipPolicy, p: float, first: int, trials: int, seed: int, decoder: str) -> SimReport:
    n, k = code.n, code.k
    G = code.generator_matrix.to_dense().astype(np.int64)
    flipper = BitFlipDecoder(code.H, policy)
    bit_errors = word_failures = iters = 0
    for i in range(first, first + trials):
        rng = trial_rng(seed, i)
        msg = rng.integers(0, 2, size=k, dtype=np.int64)
        sent = ((msg @ G) & 1).astype(np.uint8) if k else np.zeros(n, dtype=np.uint8)
        received = sent ^ (rng.random(n) < p).astype(np.uint8)
        if decoder == "oracle":
            word = nearest_codeword_oracle(code, received)[0]
        else:
            res = flipper.decode(received)
            word, iters = res.word, iters + res.iterations
        wrong = int(np.count_nonzero(word != sent))
        bit_errors += wrong
        word_failures += wrong > 0
    return SimReport("bsc", n, seed, trials, bit_errors, word_failures, iters)


def run_bsc_sim(
    code: LdpcCode,
    policy: FlipPolicy | None,
    p: float,
    trials: int,
    seed: int,
    *,
    first_trial: int = 0,
    workers: int = 1,
    decoder: str = "bitflip",
) -> SimReport:
    """Encode a random message, flip each bit with probability ``p``, decode, compare."""
    ChannelSpec("bsc", p=p)
    if trials < 1:
        raise ValueError("trials must be at least 1")
    policy = policy or FlipPolicy()
    code.generator_matrix  # computed once here rather than in every worker
    return _fan_out(
        _bsc_chunk,
        lambda a, t: (code, policy, p, a, t, seed, decoder),
        first_trial,
        trials,
        workers,
    )


# ---------------------------------------------------------------------------
# CSS


def _membership(check: BitMatrix):
    """``v`` is a codeword of the null space of ``check``."""
    dense = check.to_dense().astype(np.int64)
    return lambda v: not dense.size or not np.any((dense @ v.astype(np.int64)) & 1)


def _css_chunk(css: CssCode, policy: FlipPolicy, px: float, pz: float, first: int, trials: int, seed: int, decoder: str) -> SimReport:
    n = css.n
    x_dec = BitFlipDecoder(css.h_z, policy)
    z_dec = BitFlipDecoder(css.h_x, policy)
    c2_dual = LdpcCode(css.h_x, rank=css.h_x.rows)
    # residual X must lie in C2; residual Z must lie in the dual of C1 (row space of h_z)
    in_c2 = _membership(css.c2.H)
    in_c1_dual = _membership(css.c1.generator_matrix)
    bit_errors = failures = iters = x_fail = z_fail = 0
    for i in range(first, first + trials):
        rng = trial_rng(seed, i)
        ex = (rng.random(n) < px).astype(np.uint8)
        ez = (rng.random(n) < pz).astype(np.uint8)
        if decoder == "oracle":
            rx, ok_x = nearest_codeword_oracle(css.c1, ex)[0], True
            rz, ok_z = nearest_codeword_oracle(c2_dual, ez)[0], True
        else:
            res_x, res_z = x_dec.decode(ex), z_dec.decode(ez)
            rx, ok_x = res_x.word, res_x.success
            rz, ok_z = res_z.word, res_z.success
            iters += res_x.iterations + res_z.iterations
        bad_x = not (ok_x and in_c2(rx))
        bad_z = not (ok_z and in_c1_dual(rz))
        x_fail += bad_x
        z_fail += bad_z
        failures += bad_x or bad_z
        bit_errors += int(np.count_nonzero(rx | rz))
    return SimReport("css", n, seed, trials, bit_errors, failures, iters, x_fail, z_fail)


def run_css_sim(
    css: CssCode,
    policy: FlipPolicy | None,
    px: float,
    pz: float,
    trials: int,
    seed: int,
    *,
    first_trial: int = 0,
    workers: int = 1,
    decoder: str = "bitflip",
) -> SimReport:
    """Independent X (prob ``px``) and Z (prob ``pz``) flips, each decoded classically.

    A side fails when its decoder does not clear the syndrome or when the
    residual error is not a stabilizer (X residual outside C2, Z residual
    outside the dual of C1).
    """
    ChannelSpec("pauli_xz", px=px, pz=pz)
    if trials < 1:
        raise ValueError("trials must be at least 1")
    policy = policy or FlipPolicy()
    css.c1.generator_matrix
    return _fan_out(
        _css_chunk,
        lambda a, t: (css, policy, px, pz, a, t, seed, decoder),
        first_trial,
        trials,
        workers,
    )
