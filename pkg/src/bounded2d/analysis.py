"""Brute-force oracles and reports used to check the codec empirically.

Everything here is deliberately naive: the lemma checkers and the reference
balancer re-derive their answers with plain Python lists and full
recounts instead of calling the production search code, so they can act
as independent witnesses for it.
"""

from __future__ import annotations

import itertools
import json
import math
import random
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from functools import lru_cache

from .bitcore import BitGrid, ceil_log2
from .codec2d import derive_params
from .dnc import SplitRecord
from .errors import CodecError, UsageError
from .swapkit import find_target_exact, find_target_up

__all__ = [
    "count_arrays",
    "count_arrays_naive",
    "subperm_count",
    "is_member_naive",
    "LemmaReport",
    "check_lemma1",
    "check_lemma2",
    "spot_check_lemma1",
    "reference_balance",
    "legacy_c_bound",
    "new_c_value",
    "RateRow",
    "RateReport",
    "rate_report",
]

MAX_EXACT_N = 5
MAX_LEMMA_N = 8


# ---------------------------------------------------------------------------
# exact counts of bounded arrays
# ---------------------------------------------------------------------------

def count_arrays(n: int, w: int, allow_large: bool = False) -> int:
    """Exact number of n x n 0/1 arrays whose rows and columns all have weight <= w.

    Arrays are built row by row; the running column weights are the only
    state, and since permuting columns preserves the set of admissible rows
    the state is kept sorted.
    """
    if n < 1:
        raise UsageError("n must be positive")
    if n > MAX_EXACT_N and not allow_large:
        raise UsageError(f"n={n} is above the exhaustive limit {MAX_EXACT_N}; pass allow_large")
    w = max(0, min(w, n))
    rows = [r for r in itertools.product((0, 1), repeat=n) if sum(r) <= w]

    @lru_cache(maxsize=None)
    def extend(rows_left, col_weights):
        if rows_left == 0:
            return 1
        total = 0
        for r in rows:
            nxt = tuple(c + b for c, b in zip(col_weights, r))
            if max(nxt) <= w:
                total += extend(rows_left - 1, tuple(sorted(nxt)))
        return total

    return extend(n, (0,) * n)


def count_arrays_naive(n: int, w: int) -> int:
    """Same count by enumerating all 2**(n*n) arrays; only for n <= 4."""
    if n > 4:
        raise UsageError("naive enumeration limited to n <= 4")
    count = 0
    for bits in itertools.product((0, 1), repeat=n * n):
        if is_member_naive([bits[i * n:(i + 1) * n] for i in range(n)], w):
            count += 1
    return count


def subperm_count(n: int) -> int:
    """Number of n x n sub-permutation matrices: sum_k k! * C(n, k)**2."""
    if n < 1:
        raise UsageError("n must be positive")
    return sum(math.factorial(k) * math.comb(n, k) ** 2 for k in range(n + 1))


def is_member_naive(rows, w) -> bool:
    """Row/column bound check by plain summation (``w`` may be a Fraction)."""
    rows = [list(map(int, r)) for r in (rows.cells.tolist() if isinstance(rows, BitGrid) else rows)]
    return all(sum(r) <= w for r in rows) and all(sum(col) <= w for col in zip(*rows))


# ---------------------------------------------------------------------------
# lemma checkers
# ---------------------------------------------------------------------------

@dataclass
class LemmaReport:
    name: str
    n_max: int
    cases: int = 0
    counterexamples: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def __str__(self) -> str:
        return (
            f"{self.name}: n<={self.n_max}, {self.cases} cases, "
            f"{len(self.counterexamples)} counterexamples"
        )


def _swap(y, z, t):
    """Swap_t(y, z): first t bits of z, remainder of y."""
    return z[:t] + y[t:]


def _lemma1_pair(y, z):
    weights = [sum(_swap(y, z, t)) for t in range(len(y) + 1)]
    bad = []
    for t1, t2 in itertools.combinations(range(len(y) + 1), 2):
        lo, hi = sorted((weights[t1], weights[t2]))
        seen = set(weights[t1:t2 + 1])
        missing = [g for g in range(lo, hi + 1) if g not in seen]
        if missing:
            bad.append((y, z, t1, t2, missing))
    return bad


def check_lemma1(n_max: int = 6) -> LemmaReport:
    """Every weight between two hybrid weights is attained in between, exhaustively."""
    if n_max > MAX_LEMMA_N:
        raise UsageError(f"exhaustive mode limited to n <= {MAX_LEMMA_N}")
    report = LemmaReport("lemma1", n_max)
    for n in range(1, n_max + 1):
        for y in itertools.product((0, 1), repeat=n):
            for z in itertools.product((0, 1), repeat=n):
                report.cases += 1
                report.counterexamples.extend(_lemma1_pair(y, z))
    return report


def spot_check_lemma1(n: int, trials: int, seed: int = 0) -> LemmaReport:
    rng = random.Random(seed)
    report = LemmaReport("lemma1-sampled", n)
    for _ in range(trials):
        y = tuple(rng.randint(0, 1) for _ in range(n))
        z = tuple(rng.randint(0, 1) for _ in range(n))
        report.cases += 1
        report.counterexamples.extend(_lemma1_pair(y, z))
    return report


def _first(ts, pred):
    return next((t for t in ts if pred(t)), None)


def check_lemma2(n_max: int = 6) -> LemmaReport:
    """Exhaustive check of both target searches: existence, minimality, bit guarantee.

    For heavy ``y`` and light ``z`` with ``wt(y) >= W + 1 > wt(z)``:
    (i) the first t with ``wt(Swap_t(z, y)) == W + 1`` has ``Swap_t(z, y)_t == 1``;
    (ii) the first t with ``wt(Swap_t(y, z)) == W`` has ``Swap_t(z, y)_t == 1``.
    The production searches must return exactly these t.
    """
    if n_max > MAX_LEMMA_N:
        raise UsageError(f"exhaustive mode limited to n <= {MAX_LEMMA_N}")
    report = LemmaReport("lemma2", n_max)
    bad = report.counterexamples
    for n in range(1, n_max + 1):
        ts = range(n + 1)
        for y in itertools.product((0, 1), repeat=n):
            for z in itertools.product((0, 1), repeat=n):
                for W in range(sum(z), sum(y)):
                    report.cases += 1
                    t_up = _first(ts, lambda t: sum(_swap(z, y, t)) == W + 1)
                    if t_up is None or t_up == 0 or _swap(z, y, t_up)[t_up - 1] != 1:
                        bad.append(("up-guarantee", y, z, W, t_up))
                    elif find_target_up(y, z, W).t != t_up:
                        bad.append(("up-minimal", y, z, W, t_up))
                    t_ex = _first(ts, lambda t: sum(_swap(y, z, t)) == W)
                    if t_ex is None or t_ex == 0 or _swap(z, y, t_ex)[t_ex - 1] != 1:
                        bad.append(("exact-guarantee", y, z, W, t_ex))
                    elif find_target_exact(y, z, W).t != t_ex:
                        bad.append(("exact-minimal", y, z, W, t_ex))
    return report


# ---------------------------------------------------------------------------
# reference balancer
# ---------------------------------------------------------------------------

def reference_balance(grid: BitGrid, cols, alpha) -> SplitRecord:
    """Exhaustive-search oracle for one balancing node (grid is not modified).

    The case (which half is over budget) fixes the flip side. Among
    excluded-column candidates of extreme weight (lightest if the left half
    is over, heaviest otherwise; lowest index first) and every swap length,
    the first record is returned whose naive application clears a 1, leaves
    both halves within budget and meets the tightness target: the flipped
    half held exactly budget + 1 before the flip, except when the right half
    was over on an odd node, where the right half must end exactly on budget.
    """
    alpha = Fraction(alpha)
    cells = [list(map(int, r)) for r in grid.cells.tolist()]
    cols = [c - 1 for c in cols]
    k = len(cols)
    k_left, k_right = (k + 1) // 2, k // 2

    def budget(j):
        return math.floor(j * alpha)

    col_w = [sum(r[c] for r in cells) for c in cols]
    wl, wr = sum(col_w[:k_left]), sum(col_w[k_left:])
    left_over, right_over = wl > budget(k_left), wr > budget(k_right)
    if not (left_over or right_over):
        return SplitRecord(k)

    tau = 2 if left_over else 1
    if k % 2 == 0:
        gammas = [0]
    else:
        target = min(col_w[:k_left]) if left_over else max(col_w[:k_left])
        gammas = [g for g in range(1, k_left + 1) if col_w[g - 1] == target]

    for gamma in gammas:
        left_cols = [c for i, c in enumerate(cols[:k_left], start=1) if i != gamma]
        right_cols = cols[k_left:]
        for t in range(1, len(cells) * k_right + 1):
            trial = [row[:] for row in cells]
            lin_l = [(r, c) for c in left_cols for r in range(len(cells))]
            lin_r = [(r, c) for c in right_cols for r in range(len(cells))]
            for (rl, cl), (rr, cr) in zip(lin_l[:t], lin_r[:t]):
                trial[rl][cl], trial[rr][cr] = trial[rr][cr], trial[rl][cl]
            fr, fc = (lin_r if tau == 2 else lin_l)[t - 1]
            if trial[fr][fc] != 1:
                continue
            pre_l = sum(trial[r][c] for r in range(len(cells)) for c in cols[:k_left])
            pre_r = sum(trial[r][c] for r in range(len(cells)) for c in right_cols)
            trial[fr][fc] = 0
            post_l = pre_l - (tau == 1)
            post_r = pre_r - (tau == 2)
            if post_l > budget(k_left) or post_r > budget(k_right):
                continue
            if tau == 2:
                tight = pre_r == budget(k_right) + 1
            elif k % 2 == 0:
                tight = pre_l == budget(k_left) + 1
            else:
                tight = post_r == budget(k_right)
            if tight:
                return SplitRecord(k, tau, t, gamma)
    raise AssertionError("no valid record found")  # would refute the balancing lemma


# ---------------------------------------------------------------------------
# c comparison and rate reports
# ---------------------------------------------------------------------------

def legacy_c_bound(n: int, p: int, q: int = 1):
    """Smallest c <= n with c >= ceil(n/f) * (ceil(log2 n) + 1) and c*f/n integral.

    This is the older parameter rule that insists on an integral column
    budget; returns None if no such c fits in the array.
    """
    f = Fraction(p, q)
    lower = math.ceil(n / f) * (ceil_log2(n) + 1)
    for c in range(lower, n + 1):
        if (c * f / n).denominator == 1:
            return c
    return None


def new_c_value(n: int, p: int, q: int = 1) -> int:
    """c = ceil(n/f) * (ceil(log2 n) + 6), regardless of feasibility."""
    return math.ceil(n / Fraction(p, q)) * (ceil_log2(n) + 6)


@dataclass
class RateRow:
    n: int
    p: int
    q: int
    c: int | None = None
    m: int | None = None
    k_row: int | None = None
    payload: int | None = None
    redundancy: int | None = None
    rate: Fraction | None = None
    error: str | None = None

    @property
    def feasible(self) -> bool:
        return self.error is None

    def to_record(self) -> dict:
        rec = asdict(self)
        rec["rate"] = None if self.rate is None else str(self.rate)
        if self.error is None:
            del rec["error"]
        return rec

    def to_line(self) -> str:
        if self.error:
            return f"n={self.n} f={Fraction(self.p, self.q)} infeasible: {self.error}"
        return (
            f"n={self.n} f={Fraction(self.p, self.q)} c={self.c} m={self.m} "
            f"k_row={self.k_row} payload={self.payload} redundancy={self.redundancy} "
            f"rate={float(self.rate):.4f} ({self.rate})"
        )


@dataclass
class RateReport:
    rows: list

    def rates(self) -> list:
        return [r.rate for r in self.rows if r.feasible]

    def strictly_increasing(self) -> bool:
        rates = self.rates()
        return all(a < b for a, b in zip(rates, rates[1:]))

    def to_text(self) -> str:
        return "\n".join(r.to_line() for r in self.rows)

    def to_json(self) -> str:
        return "\n".join(json.dumps(r.to_record()) for r in self.rows)


def rate_report(entries) -> RateReport:
    """One row per ``(n, p, q)``; infeasible entries are marked, not raised."""
    rows = []
    for n, p, q in entries:
        try:
            prm = derive_params(n, p, q)
        except CodecError as exc:
            rows.append(RateRow(n, p, q, error=str(exc)))
            continue
        rows.append(
            RateRow(
                n, prm.p, prm.q, prm.c, prm.m, prm.k_row, prm.payload_bits_total,
                prm.redundancy, prm.rate,
            )
        )
    return RateReport(rows)
