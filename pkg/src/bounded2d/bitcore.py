"""Bit sequences, bit grids and column-major views over grids.

All public positions are 1-based: ``t`` runs over ``1..len`` and grid cells
are addressed as ``(row, col)`` with both starting at 1. The underlying
storage is a dense ``uint8`` numpy array, exposed as ``.bits`` / ``.cells``
for bulk 0-based work.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .errors import ParameterError

__all__ = [
    "BitSeq",
    "BitGrid",
    "ColView",
    "as_bits",
    "weight",
    "complement",
    "concat",
    "floor_scaled",
    "ceil_log2",
    "row_major",
    "from_row_major",
]


def _is_binary(arr: np.ndarray) -> bool:
    if arr.dtype == np.bool_:
        return True
    if arr.dtype == np.uint8:
        return bool(arr.max(initial=0) <= 1)
    return bool(((arr == 0) | (arr == 1)).all())


def _coerce(data) -> np.ndarray:
    if isinstance(data, (BitSeq, ColView)):
        return data.to_array()
    if isinstance(data, str):
        if any(ch not in "01" for ch in data):
            raise ParameterError(f"bit string may only contain '0'/'1': {data!r}")
        return np.frombuffer(data.encode("ascii"), dtype=np.uint8) - ord("0")
    arr = np.asarray(data)
    if arr.size == 0:
        return np.zeros(0, dtype=np.uint8)
    if arr.ndim != 1:
        raise ParameterError("bit sequence must be one-dimensional")
    if not _is_binary(arr):
        raise ParameterError("bit sequence may only contain 0 and 1")
    return arr.astype(np.uint8)


def as_bits(data) -> np.ndarray:
    """Return a fresh 0-based ``uint8`` array for any bit-like input."""
    return np.array(_coerce(data), dtype=np.uint8, copy=True)


class BitSeq:
    """Finite binary sequence with 1-based element access."""

    __slots__ = ("bits",)

    def __init__(self, data: Iterable[int] | str | np.ndarray = ()):
        self.bits = as_bits(data)

    @classmethod
    def zeros(cls, length: int) -> "BitSeq":
        return cls(np.zeros(length, dtype=np.uint8))

    @classmethod
    def from_int(cls, value: int, length: int) -> "BitSeq":
        """MSB-first binary representation of ``value`` in exactly ``length`` bits."""
        if value < 0 or value >> length:
            raise ParameterError(f"{value} does not fit in {length} bits")
        return cls(format(value, f"0{length}b") if length else "")

    def to_int(self) -> int:
        """Interpret the sequence as an MSB-first unsigned integer."""
        return int(str(self), 2) if len(self) else 0

    def to_array(self) -> np.ndarray:
        return self.bits

    def __len__(self) -> int:
        return int(self.bits.shape[0])

    def _check(self, t: int) -> int:
        if not 1 <= t <= len(self):
            raise IndexError(f"position {t} outside 1..{len(self)}")
        return t - 1

    def get(self, t: int) -> int:
        return int(self.bits[self._check(t)])

    def set(self, t: int, bit: int) -> None:
        if bit not in (0, 1):
            raise ParameterError("bit must be 0 or 1")
        self.bits[self._check(t)] = bit

    def weight(self) -> int:
        return int(self.bits.sum())

    def copy(self) -> "BitSeq":
        return BitSeq(self.bits)

    def __iter__(self):
        return (int(b) for b in self.bits)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitSeq):
            return NotImplemented
        return np.array_equal(self.bits, other.bits)

    def __hash__(self):
        return hash(self.bits.tobytes())

    def __str__(self) -> str:
        return (self.bits + ord("0")).astype(np.uint8).tobytes().decode("ascii")

    def __repr__(self) -> str:
        return f"BitSeq({str(self)!r})"


class BitGrid:
    """``n_rows`` x ``n_cols`` binary array with 1-based ``(row, col)`` access."""

    __slots__ = ("cells",)

    def __init__(self, cells):
        arr = np.asarray(cells)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ParameterError("grid must be a non-empty 2D array")
        if not _is_binary(arr):
            raise ParameterError("grid may only contain 0 and 1")
        self.cells = np.array(arr, dtype=np.uint8, copy=True)

    @classmethod
    def zeros(cls, n_rows: int, n_cols: int) -> "BitGrid":
        return cls(np.zeros((n_rows, n_cols), dtype=np.uint8))

    @classmethod
    def from_rows(cls, rows: Sequence) -> "BitGrid":
        return cls(np.stack([as_bits(r) for r in rows]))

    @property
    def n_rows(self) -> int:
        return int(self.cells.shape[0])

    @property
    def n_cols(self) -> int:
        return int(self.cells.shape[1])

    @property
    def shape(self) -> tuple[int, int]:
        return self.n_rows, self.n_cols

    def _check(self, i: int, j: int) -> tuple[int, int]:
        if not (1 <= i <= self.n_rows and 1 <= j <= self.n_cols):
            raise IndexError(f"cell ({i}, {j}) outside {self.n_rows}x{self.n_cols}")
        return i - 1, j - 1

    def get(self, i: int, j: int) -> int:
        return int(self.cells[self._check(i, j)])

    def set(self, i: int, j: int, bit: int) -> None:
        if bit not in (0, 1):
            raise ParameterError("bit must be 0 or 1")
        self.cells[self._check(i, j)] = bit

    def row(self, i: int) -> BitSeq:
        self._check(i, 1)
        return BitSeq(self.cells[i - 1])

    def col(self, j: int) -> BitSeq:
        self._check(1, j)
        return BitSeq(self.cells[:, j - 1])

    def row_weights(self) -> np.ndarray:
        return self.cells.sum(axis=1, dtype=np.int64)

    def col_weights(self) -> np.ndarray:
        return self.cells.sum(axis=0, dtype=np.int64)

    def weight(self) -> int:
        return int(self.cells.sum(dtype=np.int64))

    def subgrid(self, first_row: int, last_row: int) -> "BitGrid":
        """Copy of rows ``first_row..last_row`` inclusive."""
        return BitGrid(self.cells[first_row - 1:last_row])

    def copy(self) -> "BitGrid":
        return BitGrid(self.cells)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitGrid):
            return NotImplemented
        return np.array_equal(self.cells, other.cells)

    def __hash__(self):
        return hash((self.shape, self.cells.tobytes()))

    def __str__(self) -> str:
        return "\n".join(str(BitSeq(r)) for r in self.cells)

    def __repr__(self) -> str:
        return f"BitGrid({self.n_rows}x{self.n_cols}, weight={self.weight()})"


class ColView:
    """Column-by-column linearization of a subset of a grid's columns.

    Position ``t`` maps to row ``((t-1) mod n_rows) + 1`` of column
    ``cols[ceil(t / n_rows)]``. Two views over grids with the same row count
    therefore place equal positions in equal rows, so exchanging prefixes
    between them never changes a row weight.
    """

    __slots__ = ("grid", "cols", "_idx")

    def __init__(self, grid: BitGrid, cols: Sequence[int]):
        cols = [int(c) for c in cols]
        if any(b <= a for a, b in zip(cols, cols[1:])):
            raise ParameterError("view columns must be strictly increasing")
        if cols and not (1 <= cols[0] and cols[-1] <= grid.n_cols):
            raise ParameterError("view columns outside the grid")
        self.grid = grid
        self.cols = cols
        self._idx = np.asarray(cols, dtype=np.intp) - 1

    def __len__(self) -> int:
        return self.grid.n_rows * len(self.cols)

    def cell_of(self, t: int) -> tuple[int, int]:
        if not 1 <= t <= len(self):
            raise IndexError(f"position {t} outside 1..{len(self)}")
        m = self.grid.n_rows
        return (t - 1) % m + 1, self.cols[(t - 1) // m]

    def get(self, t: int) -> int:
        return self.grid.get(*self.cell_of(t))

    def set(self, t: int, bit: int) -> None:
        self.grid.set(*self.cell_of(t), bit)

    def to_array(self) -> np.ndarray:
        """Copy of the linearized bits (0-based)."""
        return self.grid.cells[:, self._idx].T.ravel()

    def assign(self, bits) -> None:
        """Write a full linearized sequence back through the view."""
        arr = _coerce(bits)
        if arr.shape[0] != len(self):
            raise ParameterError("length mismatch writing through view")
        self.grid.cells[:, self._idx] = arr.reshape(len(self.cols), self.grid.n_rows).T

    def weight(self) -> int:
        return int(self.grid.cells[:, self._idx].sum(dtype=np.int64))


def weight(x) -> int:
    """Number of ones in ``x``."""
    return int(_coerce(x).sum(dtype=np.int64))


def complement(x) -> BitSeq:
    return BitSeq(1 - _coerce(x))


def concat(x, y) -> BitSeq:
    return BitSeq(np.concatenate([_coerce(x), _coerce(y)]))


def floor_scaled(k: int, num: int, den: int) -> int:
    """Exact ``floor(k * num / den)`` on Python integers."""
    if den == 0:
        raise ParameterError("denominator must be nonzero")
    if den < 0 or k < 0 or num < 0:
        raise ParameterError("floor_scaled expects nonnegative k, num and positive den")
    return (k * num) // den


def ceil_log2(x: int) -> int:
    """Smallest e with 2**e >= x, for x >= 1."""
    if x < 1:
        raise ParameterError("ceil_log2 needs a positive argument")
    return (x - 1).bit_length()


def row_major(g: BitGrid) -> BitSeq:
    """Read the grid row by row into one sequence."""
    return BitSeq(g.cells.ravel())


def from_row_major(x, n_rows: int, n_cols: int) -> BitGrid:
    arr = _coerce(x)
    if arr.shape[0] != n_rows * n_cols:
        raise ParameterError(f"need {n_rows * n_cols} bits, got {arr.shape[0]}")
    return BitGrid(arr.reshape(n_rows, n_cols))
