"""Encoder and decoder for n x n arrays with row and column weight <= f(n).

Layout of a codeword ``D``:

* rows ``1..m`` hold one enumeratively coded row per ``k_row`` payload bits,
  after divide-and-conquer balancing has brought each column to weight
  ``<= floor(m * f / n)``;
* rows ``m+1..n`` hold the array ``C`` carrying the balancing records,
  with the final data slot holding their parity.

``f`` is a rational ``p/q`` already evaluated at ``n``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .bitcore import BitGrid, BitSeq, ceil_log2, floor_scaled
from .dnc import dnc_encode, dnc_undo, threshold
from .enumcodec import OneDCode, one_d_code
from .errors import CorruptCodewordError, InfeasibleParametersError, ParameterError, UsageError
from .redpack import (
    SlotLayout,
    deserialize,
    max_stream_length,
    pack,
    seal,
    serialize,
    unpack,
    unseal,
)

__all__ = [
    "CodeParams",
    "Violation",
    "MembershipReport",
    "derive_params",
    "encode",
    "decode",
    "verify_membership",
]


@dataclass(frozen=True)
class CodeParams:
    n: int
    p: int
    q: int
    beta: int
    r_blocks: int
    c: int
    m: int
    w_max: int
    k_row: int
    row_code: OneDCode = field(repr=False, compare=False)

    @property
    def f(self) -> Fraction:
        return Fraction(self.p, self.q)

    @property
    def alpha(self) -> Fraction:
        """Per-column weight budget ``m * f / n`` for the balanced rows."""
        return Fraction(self.m * self.p, self.n * self.q)

    @property
    def alpha_num(self) -> int:
        return self.alpha.numerator

    @property
    def alpha_den(self) -> int:
        return self.alpha.denominator

    @property
    def payload_bits_total(self) -> int:
        return self.m * self.k_row

    @property
    def redundancy(self) -> int:
        return self.n * self.n - self.payload_bits_total

    @property
    def rate(self) -> Fraction:
        return Fraction(self.payload_bits_total, self.n * self.n)

    @property
    def layout(self) -> SlotLayout:
        return SlotLayout(self.n, self.beta, self.r_blocks)

    def budget(self, k: int) -> int:
        return threshold(k, self.alpha)

    def as_dict(self) -> dict:
        return {
            "n": self.n, "p": self.p, "q": self.q, "beta": self.beta,
            "r_blocks": self.r_blocks, "c": self.c, "m": self.m, "w_max": self.w_max,
            "alpha": str(self.alpha), "k_row": self.k_row,
            "payload": self.payload_bits_total, "redundancy": self.redundancy,
            "rate": str(self.rate),
        }


def derive_params(n: int, p: int, q: int = 1) -> CodeParams:
    """Build all scheme constants for side ``n`` and bound ``f = p/q``.

    Raises ``ParameterError`` when ``(n, p/q)`` is outside ``n >= 2``,
    ``1 <= p/q <= n``, and ``InfeasibleParametersError`` when the redundancy
    array does not fit (``c >= n``) or cannot hold the worst-case record stream.
    """
    if n < 2:
        raise ParameterError(f"n must be at least 2, got {n}")
    if q < 1 or p < 1:
        raise ParameterError("f must be a positive rational p/q")
    f = Fraction(p, q)
    if not 1 <= f <= n:
        raise ParameterError(f"f = {f} outside [1, {n}]")
    p, q = f.numerator, f.denominator

    beta = -(-(n * q) // p)
    r_blocks = ceil_log2(n) + 6
    c = beta * r_blocks
    if c >= n:
        raise InfeasibleParametersError(f"infeasible: c={c} >= n={n}")
    m = n - c
    layout = SlotLayout(n, beta, r_blocks)
    need = max_stream_length(n, m) + 1  # +1 parity slot
    if need > layout.capacity:
        raise InfeasibleParametersError(
            f"infeasible: record stream needs {need} bits, C holds {layout.capacity}"
        )
    w_max = p // q
    row_code = one_d_code(n, w_max)
    params = CodeParams(n, p, q, beta, r_blocks, c, m, w_max, row_code.k_row, row_code)

    # the per-column budgets of the two row bands must fit under f
    if floor_scaled(m, p, n * q) + floor_scaled(c, p, n * q) > w_max:
        raise InfeasibleParametersError("column budgets exceed f")  # pragma: no cover
    assert params.redundancy == (n - c) * (n - params.k_row) + c * n
    return params


def _as_message(params: CodeParams, message) -> np.ndarray:
    bits = BitSeq(message).bits
    if bits.shape[0] != params.payload_bits_total:
        raise UsageError(
            f"message must be {params.payload_bits_total} bits, got {bits.shape[0]}"
        )
    return bits


def encode(params: CodeParams, message) -> BitGrid:
    """Map ``m * k_row`` message bits to an n x n array in B(n; f)."""
    bits = _as_message(params, message)
    n, m, k = params.n, params.m, params.k_row
    code = params.row_code
    top = np.empty((m, n), dtype=np.uint8)
    for i in range(m):
        top[i] = code.phi_encode(bits[i * k:(i + 1) * k]).bits
    a = BitGrid(top)
    records = dnc_encode(a, params.alpha)
    stream = serialize(records, n, m)
    c_grid = pack(seal(stream, params.layout), params.layout)
    return BitGrid(np.vstack([a.cells, c_grid.cells]))


def _decode_unchecked(params: CodeParams, grid: BitGrid) -> BitSeq:
    n, m = params.n, params.m
    c_grid = BitGrid(grid.cells[m:])
    slot_bits = unpack(c_grid, params.layout)
    records = deserialize(slot_bits.bits[:-1], n, m)
    unseal(slot_bits, params.layout)
    a = BitGrid(grid.cells[:m])
    dnc_undo(a, records)
    code = params.row_code
    out = np.empty(m * params.k_row, dtype=np.uint8)
    for i in range(m):
        out[i * params.k_row:(i + 1) * params.k_row] = code.phi_decode(a.cells[i]).bits
    return BitSeq(out)


def decode(params: CodeParams, grid: BitGrid, strict: bool = True) -> BitSeq:
    """Recover the message from a codeword.

    With ``strict`` (the default) the recovered message is re-encoded and
    compared with ``grid``; any array that is not exactly the codeword of
    some message raises ``CorruptCodewordError`` instead of decoding
    silently to a wrong message.
    """
    if grid.shape != (params.n, params.n):
        raise UsageError(f"expected a {params.n}x{params.n} array, got {grid.shape}")
    message = _decode_unchecked(params, grid)
    if strict and encode(params, message) != grid:
        raise CorruptCodewordError("array is not the codeword of its decoded message", stage="verify")
    return message


@dataclass(frozen=True)
class Violation:
    axis: str
    index: int
    weight: int
    bound: Fraction

    def __str__(self) -> str:
        return f"{self.axis} {self.index} weight {self.weight} > {self.bound}"


@dataclass(frozen=True)
class MembershipReport:
    ok: bool
    violations: tuple[Violation, ...] = ()


def verify_membership(grid: BitGrid, p: int, q: int = 1) -> MembershipReport:
    """Check every row and column weight against ``p/q`` via ``weight * q <= p``."""
    if grid.n_rows != grid.n_cols:
        raise UsageError(f"membership is defined for square arrays, got {grid.shape}")
    bound = Fraction(p, q)
    violations = []
    for axis, weights in (("row", grid.row_weights()), ("column", grid.col_weights())):
        for idx, w in enumerate(weights.tolist(), start=1):
            if w * q > p:
                violations.append(Violation(axis, idx, w, bound))
    return MembershipReport(not violations, tuple(violations))
