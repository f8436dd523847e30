"""Enumerative coding of length-n sequences with at most w ones.

Sequences are ordered lexicographically with ``0 < 1``; a payload of
``k_row`` bits is read MSB-first as an integer and mapped to the sequence of
that rank. ``k_row = floor(log2 N(n, w))`` where ``N(n, w)`` counts all
sequences of weight at most ``w``, so the code wastes less than one bit.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb
from typing import Protocol

import numpy as np

from .bitcore import BitSeq, as_bits
from .errors import CorruptCodewordError, EncodeError, ParameterError

__all__ = [
    "RowCodec",
    "OneDCode",
    "count_at_most",
    "payload_bits",
    "one_d_code",
]


def _check_nw(n: int, w: int) -> None:
    if n < 0:
        raise ParameterError(f"length must be nonnegative, got {n}")
    if not 0 <= w <= n:
        raise ParameterError(f"weight cap {w} outside 0..{n}")


def count_at_most(n: int, w: int) -> int:
    """Number of length-``n`` binary sequences of weight at most ``w``."""
    _check_nw(n, w)
    return sum(comb(n, i) for i in range(w + 1))


def payload_bits(n: int, w: int) -> int:
    """Largest k with 2**k <= count_at_most(n, w)."""
    return count_at_most(n, w).bit_length() - 1


class RowCodec(Protocol):
    """What the 2D construction needs from a 1D bounded-weight encoder."""

    n: int
    w_max: int
    k_row: int

    def phi_encode(self, payload) -> BitSeq: ...

    def phi_decode(self, row) -> BitSeq: ...


class OneDCode:
    """Lexicographic rank/unrank over ``{x in {0,1}^n : wt(x) <= w_max}``.

    ``counts[l][v]`` holds N(l, v), the number of length-``l`` tails whose
    weight is at most ``v``. Instances are immutable and safe to share.
    """

    def __init__(self, n: int, w_max: int):
        _check_nw(n, w_max)
        self.n = n
        self.w_max = w_max
        counts = [[1] * (w_max + 1)]
        for _ in range(n):
            prev = counts[-1]
            counts.append([prev[0]] + [prev[v] + prev[v - 1] for v in range(1, w_max + 1)])
        self.counts = tuple(tuple(r) for r in counts)
        self.size = self.counts[n][w_max]
        self.k_row = self.size.bit_length() - 1

    @property
    def redundancy(self) -> int:
        return self.n - self.k_row

    def unrank(self, index: int) -> BitSeq:
        if not 0 <= index < self.size:
            raise EncodeError(f"index {index} outside 0..{self.size - 1}")
        out = np.zeros(self.n, dtype=np.uint8)
        v = self.w_max
        for pos in range(self.n):
            zeros_first = self.counts[self.n - pos - 1][v]
            if index >= zeros_first:
                out[pos] = 1
                index -= zeros_first
                v -= 1
        return BitSeq(out)

    def rank(self, x) -> int:
        bits = as_bits(x)
        if bits.shape[0] != self.n:
            raise CorruptCodewordError(f"row length {bits.shape[0]} != {self.n}", stage="rank")
        if int(bits.sum()) > self.w_max:
            raise CorruptCodewordError(
                f"row weight {int(bits.sum())} exceeds {self.w_max}", stage="rank"
            )
        index = 0
        v = self.w_max
        for pos in np.flatnonzero(bits):
            index += self.counts[self.n - int(pos) - 1][v]
            v -= 1
        return index

    def phi_encode(self, payload) -> BitSeq:
        bits = BitSeq(payload)
        if len(bits) != self.k_row:
            raise EncodeError(f"row payload must be {self.k_row} bits, got {len(bits)}")
        return self.unrank(bits.to_int())

    def phi_decode(self, row) -> BitSeq:
        index = self.rank(row)
        if index >> self.k_row:
            raise CorruptCodewordError(
                f"row rank {index} not below 2^{self.k_row}", stage="rank"
            )
        return BitSeq.from_int(index, self.k_row)

    def __repr__(self) -> str:
        return f"OneDCode(n={self.n}, w_max={self.w_max}, k_row={self.k_row})"


@lru_cache(maxsize=32)
def one_d_code(n: int, w_max: int) -> OneDCode:
    """Shared, cached code instance; building the count table is the costly part."""
    return OneDCode(n, w_max)
