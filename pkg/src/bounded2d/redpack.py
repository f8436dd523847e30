"""Serializing balancing records and spreading them over the ``c x n`` array.

Wire format of the record stream, per split-tree node in pre-order, all
fields MSB-first:

    tau        2 bits   (00 none, 01 flip left, 10 flip right; 11 invalid)
    t - 1      w_t bits      only if tau != 0, w_t = ceil(log2(m * floor(k/2)))
    gamma - 1  w_gamma bits  only if tau != 0 and k odd, w_gamma = ceil(log2((k+1)/2))

The stream is zero-padded to the slot capacity of ``C``. In ``C``, column
``i`` (1-based, ``j = (i-1) mod beta + 1``) holds its ``b``-th data bit at row
``b*beta + j``, so any two data cells in a row or column are at least
``beta`` apart. Columns past ``beta * floor(n / beta)`` hold no data.

:func:`seal` reserves the last data slot for an even-parity bit over all
other slots, so any single flipped data cell is detected on decode.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .bitcore import BitGrid, BitSeq, as_bits, ceil_log2
from .dnc import SplitRecord, split_tree
from .errors import CorruptCodewordError, InternalInvariantError, ParameterError

__all__ = [
    "RedundancyStream",
    "SlotLayout",
    "node_widths",
    "max_stream_length",
    "serialize",
    "deserialize",
    "pack",
    "unpack",
    "seal",
    "unseal",
]

TAU_BITS = 2


def node_widths(k: int, m: int) -> tuple[int, int]:
    """Field widths ``(w_t, w_gamma)`` for a node of ``k`` columns and ``m`` rows."""
    if k < 2 or m < 1:
        raise ParameterError(f"no record for k={k}, m={m}")
    w_t = ceil_log2(m * (k // 2))
    w_gamma = ceil_log2((k + 1) // 2) if k % 2 else 0
    return w_t, w_gamma


def max_stream_length(n: int, m: int) -> int:
    """Stream length when every node swaps; the worst case the layout must hold."""
    return sum(TAU_BITS + sum(node_widths(k, m)) for _, k in split_tree(n))


@dataclass(frozen=True)
class RedundancyStream:
    bits: BitSeq
    n: int
    m: int

    def __len__(self) -> int:
        return len(self.bits)

    @property
    def widths(self) -> list[tuple[int, int]]:
        return [node_widths(k, self.m) for _, k in split_tree(self.n)]


def stream_bound(n: int) -> int:
    return n * (ceil_log2(n) + 6)


def serialize(records, n: int, m: int) -> RedundancyStream:
    tree = split_tree(n)
    records = list(records)
    if len(records) != len(tree):
        raise ParameterError(f"expected {len(tree)} records, got {len(records)}")
    fields = []
    for rec, (_, k) in zip(records, tree):
        if rec.k != k:
            raise ParameterError(f"record for k={rec.k} at a k={k} node")
        rec.validate(m)
        fields.append(format(rec.tau, "02b"))
        if rec.tau:
            w_t, w_gamma = node_widths(k, m)
            if w_t:
                fields.append(format(rec.t - 1, f"0{w_t}b"))
            if w_gamma:
                fields.append(format(rec.gamma - 1, f"0{w_gamma}b"))
    bits = "".join(fields)
    if len(bits) > stream_bound(n):
        raise ParameterError(f"record stream of {len(bits)} bits exceeds {stream_bound(n)}")
    return RedundancyStream(BitSeq(bits), n, m)


def deserialize(bits, n: int, m: int) -> list[SplitRecord]:
    text = str(BitSeq(bits))
    pos = 0

    def take(width):
        nonlocal pos
        if pos + width > len(text):
            raise CorruptCodewordError("record stream ended early", stage="deserialize")
        value = int(text[pos:pos + width], 2) if width else 0
        pos += width
        return value

    records = []
    for _, k in split_tree(n):
        tau = take(TAU_BITS)
        if tau == 3:
            raise CorruptCodewordError(f"invalid flip code 11 at bit {pos - 1}", stage="deserialize")
        if tau == 0:
            records.append(SplitRecord(k))
            continue
        w_t, w_gamma = node_widths(k, m)
        t = take(w_t) + 1
        gamma = take(w_gamma) + 1 if k % 2 else 0
        rec = SplitRecord(k, tau, t, gamma)
        try:
            rec.validate(m)
        except CorruptCodewordError as exc:
            raise CorruptCodewordError(str(exc), stage="deserialize") from None
        records.append(rec)
    if "1" in text[pos:]:
        raise CorruptCodewordError("nonzero padding after the record stream", stage="deserialize")
    return records


@dataclass(frozen=True)
class SlotLayout:
    """Spread placement of ``r_blocks`` data bits per usable column of ``C``."""

    n: int
    beta: int
    r_blocks: int

    @property
    def c(self) -> int:
        return self.beta * self.r_blocks

    @property
    def usable_cols(self) -> int:
        return self.beta * (self.n // self.beta)

    @property
    def capacity(self) -> int:
        return self.usable_cols * self.r_blocks

    @cached_property
    def slots(self) -> tuple[np.ndarray, np.ndarray]:
        """0-based ``(rows, cols)`` of every data cell, in stream order."""
        col = np.repeat(np.arange(self.usable_cols), self.r_blocks)
        block = np.tile(np.arange(self.r_blocks), self.usable_cols)
        row = block * self.beta + col % self.beta
        return row, col


def pack(stream, layout: SlotLayout) -> BitGrid:
    bits = as_bits(stream.bits if isinstance(stream, RedundancyStream) else stream)
    if bits.shape[0] > layout.capacity:
        raise ParameterError(f"{bits.shape[0]} bits exceed the {layout.capacity} data slots")
    data = np.zeros(layout.capacity, dtype=np.uint8)
    data[:bits.shape[0]] = bits
    cells = np.zeros((layout.c, layout.n), dtype=np.uint8)
    rows, cols = layout.slots
    cells[rows, cols] = data
    return BitGrid(cells)


def unpack(grid: BitGrid, layout: SlotLayout) -> BitSeq:
    """All ``capacity`` slot bits in stream order (padding included)."""
    if grid.shape != (layout.c, layout.n):
        raise InternalInvariantError(f"expected a {layout.c}x{layout.n} array, got {grid.shape}")
    rows, cols = layout.slots
    data = grid.cells[rows, cols].copy()
    stray = grid.weight() - int(data.sum())
    if stray:
        raise CorruptCodewordError(f"{stray} nonzero cell(s) outside data slots", stage="unpack")
    return BitSeq(data)


def seal(stream, layout: SlotLayout) -> BitSeq:
    """Zero-pad ``stream`` to ``capacity - 1`` bits and append its parity bit."""
    bits = as_bits(stream.bits if isinstance(stream, RedundancyStream) else stream)
    if bits.shape[0] > layout.capacity - 1:
        raise ParameterError(
            f"{bits.shape[0]} bits leave no room for parity in {layout.capacity} slots"
        )
    out = np.zeros(layout.capacity, dtype=np.uint8)
    out[:bits.shape[0]] = bits
    out[-1] = int(bits.sum()) & 1
    return BitSeq(out)


def unseal(bits, layout: SlotLayout) -> BitSeq:
    """Check the parity slot and return the remaining ``capacity - 1`` bits."""
    arr = as_bits(bits)
    if arr.shape[0] != layout.capacity:
        raise InternalInvariantError(f"expected {layout.capacity} slot bits, got {arr.shape[0]}")
    if int(arr.sum()) & 1:
        raise CorruptCodewordError("parity check over the record slots failed", stage="parity")
    return BitSeq(arr[:-1])
