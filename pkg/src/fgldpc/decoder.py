"""Hard-decision bit-flipping decoding and an exhaustive nearest-codeword reference."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
import scipy.sparse as sp

from .binmat import BitMatrix, pack_vector, unpack_bits
from .codes import DEFAULT_DISTANCE_CAP, LdpcCode, iter_codewords
from .errors import DimensionTooLarge, LengthMismatch


@dataclass(frozen=True)
class FlipPolicy:
    """Which bits to flip each round.

    ``"max"`` flips every bit attaining the largest unsatisfied-check count;
    ``"threshold"`` flips every bit whose count exceeds ``threshold``.
    """

    variant: str = "max"
    threshold: int = 1
    max_iter: int = 50

    def __post_init__(self) -> None:
        if self.variant not in ("max", "threshold"):
            raise ValueError(f"unknown flip policy {self.variant!r}")
        if self.max_iter < 1:
            raise ValueError("max_iter must be at least 1")
        if self.threshold < 1:
            raise ValueError("threshold must be at least 1")

    @classmethod
    def parse(cls, text: str, max_iter: int = 50) -> FlipPolicy:
        """``"max"`` or ``"threshold:t"``."""
        if text == "max":
            return cls("max", max_iter=max_iter)
        name, _, t = text.partition(":")
        if name != "threshold" or not t:
            raise ValueError(f"policy must be 'max' or 'threshold:t', got {text!r}")
        return cls("threshold", int(t), max_iter)

    def label(self) -> str:
        return "max" if self.variant == "max" else f"threshold:{self.threshold}"


@dataclass(frozen=True)
class DecodeResult:
    word: np.ndarray
    iterations: int
    success: bool
    flip_counts_last: np.ndarray
    reason: str  # "converged" | "max_iter" | "empty_flip_set"


def syndrome(H: BitMatrix, v: Sequence[int] | np.ndarray) -> np.ndarray:
    """``H v^T`` over GF(2)."""
    return H.mul_vec(v)


class BitFlipDecoder:
    """Gallager's hard-decision bit flipping for a fixed ``H``.

    Each round: stop if every check is satisfied; otherwise count, for each bit,
    the unsatisfied checks it takes part in, and flip the selected bits.
    ``iterations`` in the result is the number of flipping rounds performed.
    """

    def __init__(self, H: BitMatrix, policy: FlipPolicy | None = None) -> None:
        self.H = H
        self.policy = policy or FlipPolicy()
        r, c = H.nonzero()
        ones = np.ones(r.size, dtype=np.int32)
        self._A = sp.csr_matrix((ones, (r, c)), shape=H.shape)
        self._At = self._A.T.tocsr()

    def decode(self, v: Sequence[int] | np.ndarray) -> DecodeResult:
        policy, n = self.policy, self.H.cols
        word = np.asarray(v, dtype=np.uint8).ravel().copy()
        if word.size != n:
            raise LengthMismatch(f"word of length {word.size} against {n} columns")
        f = np.zeros(n, dtype=np.int64)
        for it in range(policy.max_iter + 1):
            s = (self._A @ word) & 1
            if not s.any():
                return DecodeResult(word, it, True, np.zeros(n, dtype=np.int64), "converged")
            f = np.asarray(self._At @ s, dtype=np.int64)
            if it == policy.max_iter:
                break
            if policy.variant == "max":
                flip = f == f.max()
            else:
                flip = f > policy.threshold
            if not flip.any():
                return DecodeResult(word, it, False, f, "empty_flip_set")
            word[flip] ^= 1
        return DecodeResult(word, policy.max_iter, False, f, "max_iter")


def bitflip_decode(
    H: BitMatrix, v: Sequence[int] | np.ndarray, policy: FlipPolicy | None = None
) -> DecodeResult:
    return BitFlipDecoder(H, policy).decode(v)


def nearest_codeword_oracle(
    code: LdpcCode, v: Sequence[int] | np.ndarray, cap: int = DEFAULT_DISTANCE_CAP
) -> tuple[np.ndarray, int, bool]:
    """Exhaustive maximum-likelihood decoding: ``(codeword, distance, unique)``.

    ``unique`` is false when another codeword lies at the same distance.
    """
    G = code.generator_matrix
    if G.rows > cap:
        raise DimensionTooLarge(f"k = {G.rows} exceeds the enumeration cap {cap}")
    v = np.asarray(v, dtype=np.uint8).ravel()
    if v.size != code.n:
        raise LengthMismatch(f"word of length {v.size} against n = {code.n}")
    target = pack_vector(v, code.n)
    best_d, best_word, ties = code.n + 1, None, 0
    for block in iter_codewords(G):
        d = np.bitwise_count(block ^ target).sum(axis=1, dtype=np.int64)
        m = int(d.min())
        if m < best_d:
            best_d, ties = m, int(np.count_nonzero(d == m))
            best_word = block[int(np.argmin(d))].copy()
        elif m == best_d:
            ties += int(np.count_nonzero(d == m))
    assert best_word is not None
    return unpack_bits(best_word, code.n), best_d, ties == 1
