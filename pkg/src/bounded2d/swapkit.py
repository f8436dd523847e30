"""Prefix swaps between equal-length sequences and the target-weight searches.

For sequences ``y`` and ``z`` of length ``n``, ``Swap_t(y, z)`` is ``z``'s
first ``t`` bits followed by the rest of ``y``. Moving ``t`` by one changes
a hybrid's weight by at most one, which is what makes every intermediate
weight reachable and what the searches below exploit.

Arguments may be ``BitSeq``, ``ColView``, strings, lists or numpy arrays.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bitcore import BitSeq, ColView, as_bits
from .errors import CorruptCodewordError, CorruptStateError, InternalInvariantError, ParameterError

__all__ = [
    "SwapOutcome",
    "swap_prefix",
    "swap_views",
    "hybrid_weights",
    "find_target_up",
    "find_target_exact",
    "flip_one_at",
    "restore_one_at",
]


@dataclass(frozen=True)
class SwapOutcome:
    """Result of a target search.

    ``flipped_side`` refers to the pair returned by
    ``swap_prefix(heavy, light, t)``: ``"right"`` is the second element,
    ``heavy[:t] + light[t:]``, whose bit ``t`` is guaranteed to be 1.
    """

    t: int
    flip_needed: bool = True
    flipped_side: str = "right"


def swap_prefix(y, z, t: int) -> tuple[BitSeq, BitSeq]:
    """Return ``(Swap_t(y, z), Swap_t(z, y))``."""
    a, b = as_bits(y), as_bits(z)
    if a.shape != b.shape:
        raise ParameterError(f"length mismatch: {a.shape[0]} vs {b.shape[0]}")
    if not 0 <= t <= a.shape[0]:
        raise ParameterError(f"swap length {t} outside 0..{a.shape[0]}")
    a[:t], b[:t] = b[:t].copy(), a[:t].copy()
    return BitSeq(a), BitSeq(b)


def swap_views(u: ColView, v: ColView, t: int) -> None:
    """Exchange the first ``t`` positions of two views in place."""
    if len(u) != len(v) or u.grid.n_rows != v.grid.n_rows:
        raise ParameterError("views must have equal length and row count")
    if not 0 <= t <= len(u):
        raise ParameterError(f"swap length {t} outside 0..{len(u)}")
    a, b = u.to_array(), v.to_array()
    a[:t], b[:t] = b[:t].copy(), a[:t].copy()
    u.assign(a)
    v.assign(b)


def hybrid_weights(prefix_src, suffix_src) -> np.ndarray:
    """Weights of ``prefix_src[:t] + suffix_src[t:]`` for ``t = 0..n``."""
    p, s = as_bits(prefix_src).astype(np.int64), as_bits(suffix_src).astype(np.int64)
    if p.shape != s.shape:
        raise ParameterError("length mismatch")
    out = np.empty(p.shape[0] + 1, dtype=np.int64)
    out[0] = s.sum()
    np.cumsum(p - s, out=out[1:])
    out[1:] += out[0]
    return out


def _check_pre(heavy, light, W: int) -> tuple[np.ndarray, np.ndarray]:
    h, l = as_bits(heavy), as_bits(light)
    if h.shape != l.shape:
        raise InternalInvariantError("heavy and light must have equal length")
    if int(h.sum()) < W + 1 or int(l.sum()) > W:
        raise InternalInvariantError(
            f"need wt(heavy) >= {W + 1} and wt(light) <= {W}; "
            f"got {int(h.sum())} and {int(l.sum())}"
        )
    return h, l


def find_target_up(heavy, light, W: int) -> SwapOutcome:
    """Smallest ``t >= 1`` with ``wt(heavy[:t] + light[t:]) == W + 1``.

    Bit ``t`` of that hybrid (which is ``heavy_t``) is always 1.
    """
    h, l = _check_pre(heavy, light, W)
    weights = hybrid_weights(h, l)
    t = int(np.argmax(weights == W + 1))
    if t == 0 or h[t - 1] != 1:
        raise InternalInvariantError("target search broke its own guarantee")
    return SwapOutcome(t)


def find_target_exact(heavy, light, W: int) -> SwapOutcome:
    """Smallest ``t >= 1`` with ``wt(light[:t] + heavy[t:]) == W``.

    ``heavy_t`` is always 1, so the complementary hybrid
    ``heavy[:t] + light[t:]`` carries a removable 1 at position ``t``.
    """
    h, l = _check_pre(heavy, light, W)
    weights = hybrid_weights(l, h)
    t = int(np.argmax(weights == W))
    if t == 0 or h[t - 1] != 1:
        raise InternalInvariantError("target search broke its own guarantee")
    return SwapOutcome(t)


def flip_one_at(v, t: int) -> None:
    """Clear the 1 at position ``t`` of a mutable ``BitSeq`` or ``ColView``."""
    if v.get(t) != 1:
        raise CorruptStateError(f"expected a 1 at position {t}")
    v.set(t, 0)


def restore_one_at(v, t: int) -> None:
    """Decoder-side inverse of :func:`flip_one_at`."""
    if v.get(t) != 0:
        raise CorruptCodewordError(f"expected a cleared bit at position {t}", stage="undo")
    v.set(t, 1)
