"""Divide-and-conquer column balancing for the first ``m`` rows.

A subarray of ``k`` columns and weight at most ``W(k) = floor(k * alpha)`` is
split into a left part of ``ceil(k/2)`` columns and a right part of
``floor(k/2)`` columns. If one part is over its budget, a prefix of its
column-major linearization is exchanged with the other part and one 1 is
cleared, which brings both parts within budget. Recursing down to single
columns leaves every column at weight ``<= W(1)``. Swaps exchange bits that
sit in the same row, and flips only clear bits, so no row gains weight.

Each internal node of the split tree yields one :class:`SplitRecord`; the
records in pre-order are everything the decoder needs to undo the process.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .bitcore import BitGrid, ColView, floor_scaled
from .errors import CorruptCodewordError, InternalInvariantError, ParameterError
from .swapkit import (
    find_target_exact,
    find_target_up,
    flip_one_at,
    restore_one_at,
    swap_views,
)

__all__ = [
    "SplitRecord",
    "split_tree",
    "split_sizes",
    "threshold",
    "balance_node",
    "dnc_encode",
    "dnc_undo",
]

NO_ACTION = 0
FLIP_LEFT = 1
FLIP_RIGHT = 2


@dataclass(frozen=True)
class SplitRecord:
    """Bookkeeping for one node: ``k`` columns, flip side ``tau``, swap
    length ``t`` and excluded left column ``gamma`` (1-based, odd ``k`` only)."""

    k: int
    tau: int = 0
    t: int = 0
    gamma: int = 0

    def validate(self, m: int) -> None:
        """Raise ``CorruptCodewordError`` unless the fields are consistent."""
        k_left, k_right = split_sizes(self.k)
        if self.tau not in (0, 1, 2):
            raise CorruptCodewordError(f"tau={self.tau} is not a flip code", stage="records")
        if self.tau == NO_ACTION:
            if self.t or self.gamma:
                raise CorruptCodewordError("tau=0 node carries swap data", stage="records")
            return
        if not 1 <= self.t <= m * k_right:
            raise CorruptCodewordError(
                f"swap length {self.t} outside 1..{m * k_right} (k={self.k})", stage="records"
            )
        if self.k % 2:
            if not 1 <= self.gamma <= k_left:
                raise CorruptCodewordError(
                    f"excluded column {self.gamma} outside 1..{k_left}", stage="records"
                )
        elif self.gamma:
            raise CorruptCodewordError("even node carries an excluded column", stage="records")


def split_sizes(k: int) -> tuple[int, int]:
    if k < 2:
        raise ParameterError(f"cannot split {k} column(s)")
    return (k + 1) // 2, k // 2


@lru_cache(maxsize=None)
def split_tree(n: int) -> tuple[tuple[int, int], ...]:
    """Internal nodes ``(first_col, k)`` in pre-order; a pure function of ``n``."""
    out = []

    def walk(start, k):
        if k < 2:
            return
        out.append((start, k))
        k_left = (k + 1) // 2
        walk(start, k_left)
        walk(start + k_left, k - k_left)

    walk(1, n)
    return tuple(out)


def threshold(k: int, alpha: Fraction) -> int:
    """Weight budget ``floor(k * alpha)`` of a ``k``-column subarray."""
    alpha = Fraction(alpha)
    return floor_scaled(k, alpha.numerator, alpha.denominator)


def _views(grid, cols, gamma):
    k_left = (len(cols) + 1) // 2
    left = [c for i, c in enumerate(cols[:k_left], start=1) if i != gamma]
    return ColView(grid, left), ColView(grid, cols[k_left:])


def balance_node(grid: BitGrid, cols, alpha: Fraction, check: bool = True) -> SplitRecord:
    """Balance one node in place and return the record describing it."""
    cols = list(cols)
    k = len(cols)
    k_left, k_right = split_sizes(k)
    w_all, w_left, w_right = (threshold(j, alpha) for j in (k, k_left, k_right))

    col_w = grid.cells[:, np.asarray(cols) - 1].sum(axis=0, dtype=np.int64)
    wt_left, wt_right = int(col_w[:k_left].sum()), int(col_w[k_left:].sum())
    if wt_left + wt_right > w_all:
        raise InternalInvariantError(f"node weight {wt_left + wt_right} exceeds budget {w_all}")
    left_over, right_over = wt_left > w_left, wt_right > w_right
    if left_over and right_over:
        raise InternalInvariantError("both halves over budget")
    if not (left_over or right_over):
        return SplitRecord(k)

    if k % 2 == 0:
        gamma = 0
        lview, rview = _views(grid, cols, 0)
        if left_over:
            tau, t = FLIP_RIGHT, find_target_up(lview, rview, w_right).t
        else:
            tau, t = FLIP_LEFT, find_target_up(rview, lview, w_left).t
    elif left_over:
        # exclude a lightest left column so the rest still exceeds w_right
        gamma = int(np.argmin(col_w[:k_left])) + 1
        lview, rview = _views(grid, cols, gamma)
        if check and lview.weight() <= w_right:
            raise InternalInvariantError("left part lost its excess after exclusion")
        tau, t = FLIP_RIGHT, find_target_up(lview, rview, w_right).t
    else:
        # exclude a heaviest left column; the right part lands on w_right exactly
        gamma = int(np.argmax(col_w[:k_left])) + 1
        lview, rview = _views(grid, cols, gamma)
        if check and lview.weight() > w_right:
            raise InternalInvariantError("left part too heavy after exclusion")
        tau, t = FLIP_LEFT, find_target_exact(rview, lview, w_right).t

    swap_views(lview, rview, t)
    flip_one_at(rview if tau == FLIP_RIGHT else lview, t)

    if check:
        new_w = grid.cells[:, np.asarray(cols) - 1].sum(axis=0, dtype=np.int64)
        if new_w[:k_left].sum() > w_left or new_w[k_left:].sum() > w_right:
            raise InternalInvariantError("node left a child over budget")
    return SplitRecord(k, tau, t, gamma)


def dnc_encode(grid: BitGrid, alpha: Fraction, check: bool = True) -> list[SplitRecord]:
    """Balance all columns of ``grid`` to ``<= floor(alpha)``; returns pre-order records."""
    n = grid.n_cols
    if grid.weight() > threshold(n, alpha):
        raise InternalInvariantError(
            f"grid weight {grid.weight()} exceeds budget {threshold(n, alpha)}"
        )
    rows_before = grid.row_weights() if check else None
    records = [
        balance_node(grid, range(start, start + k), alpha, check=check)
        for start, k in split_tree(n)
    ]
    if check:
        if (grid.row_weights() > rows_before).any():
            raise InternalInvariantError("a row gained weight during balancing")
        if (grid.col_weights() > threshold(1, alpha)).any():
            raise InternalInvariantError("a column exceeds its final budget")
    return records


def dnc_undo(grid: BitGrid, records) -> None:
    """Invert :func:`dnc_encode` in place, children before parents."""
    tree = split_tree(grid.n_cols)
    records = list(records)
    if len(records) != len(tree):
        raise CorruptCodewordError(
            f"{len(records)} records for a tree of {len(tree)} nodes", stage="undo"
        )
    m = grid.n_rows
    for rec, (_, k) in zip(records, tree):
        if rec.k != k:
            raise CorruptCodewordError(f"record for k={rec.k} at a k={k} node", stage="undo")
        rec.validate(m)
    for rec, (start, k) in zip(reversed(records), reversed(tree)):
        if rec.tau == NO_ACTION:
            continue
        lview, rview = _views(grid, list(range(start, start + k)), rec.gamma)
        restore_one_at(rview if rec.tau == FLIP_RIGHT else lview, rec.t)
        swap_views(lview, rview, rec.t)
