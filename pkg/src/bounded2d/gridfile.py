"""On-disk forms of codewords and payloads.

Grid text form: ``n`` lines of ``n`` characters ``0``/``1``, each ending in LF.
Grid binary form: the row-major bit sequence, MSB-first within each byte,
``ceil(n*n/8)`` bytes, tail bits zero.
Payload: ``ceil(bits/8)`` bytes, message MSB-first, tail bits zero.
"""

from __future__ import annotations

import numpy as np

from .bitcore import BitGrid, BitSeq, from_row_major, row_major
from .errors import UsageError

__all__ = [
    "FormatError",
    "grid_to_text",
    "grid_from_text",
    "grid_to_bytes",
    "grid_from_bytes",
    "dump_grid",
    "load_grid",
    "payload_to_bytes",
    "payload_from_bytes",
]


class FormatError(UsageError):
    """Malformed grid or payload file."""


def grid_to_text(g: BitGrid) -> bytes:
    return (str(g) + "\n").encode("ascii")


def grid_from_text(data: bytes, n: int) -> BitGrid:
    try:
        text = data.decode("ascii")
    except UnicodeDecodeError:
        raise FormatError("text grid must be ASCII") from None
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if len(lines) != n:
        raise FormatError(f"expected {n} lines, found {len(lines)}")
    for i, line in enumerate(lines, start=1):
        if len(line) != n or line.strip("01"):
            raise FormatError(f"line {i} must be {n} characters of 0/1")
    return BitGrid.from_rows(lines)


def _pack(bits: np.ndarray) -> bytes:
    return np.packbits(bits, bitorder="big").tobytes()


def _unpack(data: bytes, nbits: int, what: str) -> np.ndarray:
    want = (nbits + 7) // 8
    if len(data) != want:
        raise FormatError(f"{what} must be {want} bytes, got {len(data)}")
    bits = np.unpackbits(np.frombuffer(data, dtype=np.uint8), bitorder="big")
    if bits[nbits:].any():
        raise FormatError(f"{what} has nonzero padding bits")
    return bits[:nbits]


def grid_to_bytes(g: BitGrid) -> bytes:
    return _pack(row_major(g).bits)


def grid_from_bytes(data: bytes, n: int) -> BitGrid:
    return from_row_major(_unpack(data, n * n, "binary grid"), n, n)


def dump_grid(g: BitGrid, fmt: str = "text") -> bytes:
    if fmt == "text":
        return grid_to_text(g)
    if fmt == "bin":
        return grid_to_bytes(g)
    raise FormatError(f"unknown grid format {fmt!r}")


def load_grid(data: bytes, n: int, fmt: str = "text") -> BitGrid:
    if fmt == "text":
        return grid_from_text(data, n)
    if fmt == "bin":
        return grid_from_bytes(data, n)
    raise FormatError(f"unknown grid format {fmt!r}")


def payload_to_bytes(message) -> bytes:
    return _pack(BitSeq(message).bits)


def payload_from_bytes(data: bytes, nbits: int) -> BitSeq:
    return BitSeq(_unpack(data, nbits, "payload"))
