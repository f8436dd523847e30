"""Acceptance checks, one test per criterion.

Each test prints a single ``PASS``/``FAIL`` line to the terminal (outside
pytest's capture) before asserting, so ``pytest -v`` shows the summary even
when everything passes.
"""

import math
import time
from fractions import Fraction

import numpy as np
import pytest

from bounded2d.analysis import (
    check_lemma1,
    check_lemma2,
    count_arrays,
    legacy_c_bound,
    new_c_value,
    rate_report,
    reference_balance,
    subperm_count,
)
from bounded2d.bitcore import BitGrid, BitSeq, ceil_log2
from bounded2d.cli import main
from bounded2d.codec2d import decode, derive_params, encode, verify_membership
from bounded2d.dnc import balance_node, dnc_encode
from bounded2d.errors import CorruptCodewordError, InfeasibleParametersError
from bounded2d.gridfile import grid_to_text
from bounded2d.redpack import deserialize, max_stream_length, node_widths, serialize, unpack


SWEEP = [(32, 16, 1), (64, 16, 1), (64, 32, 1), (64, 48, 1), (100, 50, 1), (128, 64, 1)]
TRIALS = 100


@pytest.fixture
def report(capsys):
    def emit(num, ok, detail):
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {num}: {detail}")
        return ok
    return emit


@pytest.fixture(scope="module")
def sweep_runs():
    """Encode and decode TRIALS random payloads per configuration, once."""
    rng = np.random.default_rng(7)
    runs = []
    start = time.perf_counter()
    for n, p, q in SWEEP:
        prm = derive_params(n, p, q)
        for _ in range(TRIALS):
            x = BitSeq(rng.integers(0, 2, prm.payload_bits_total))
            d = encode(prm, x)
            runs.append((prm, x, d, decode(prm, d)))
    return runs, time.perf_counter() - start


def test_criterion_1_round_trip(report, sweep_runs):
    runs, elapsed = sweep_runs
    bad = sum(x != y for _, x, _, y in runs)
    ok = bad == 0 and len(runs) == len(SWEEP) * TRIALS and elapsed <= 30
    assert report(1, ok, f"{len(runs)} round trips, {bad} mismatches, {elapsed:.1f} s (limit 30 s)")


def test_criterion_2_membership(report, sweep_runs):
    runs, _ = sweep_runs
    bad = sum(not verify_membership(d, prm.p, prm.q).ok for prm, _, d, _ in runs)
    # independent check straight from the weight sums
    bad += sum(not ((d.cells.sum(axis=0) * prm.q <= prm.p).all() and (d.cells.sum(axis=1) * prm.q <= prm.p).all())
               for prm, _, d, _ in runs)
    assert report(2, bad == 0, f"{len(runs)} codewords, {bad} violations")


def test_criterion_3_redundancy_identity(report):
    mismatches = []
    for n, p, q in SWEEP + [(256, 128, 1), (100, 101, 2)]:
        prm = derive_params(n, p, q)
        measured = n * n - prm.payload_bits_total
        if measured != (n - prm.c) * (n - prm.k_row) + prm.c * n:
            mismatches.append((n, p, q))
    prm = derive_params(64, 32)
    anchor = (prm.payload_bits_total, 64 * 64 - prm.payload_bits_total)
    ok = not mismatches and anchor == (2520, 1576)
    assert report(3, ok, f"identity mismatches {mismatches}; (64,32) payload/redundancy = {anchor}")


def test_criterion_4_rate_trend(report):
    rep = rate_report([(n, n // 2, 1) for n in (32, 64, 128, 256)])
    rates = rep.rates()
    expected = [Fraction(155, 512), Fraction(315, 512), Fraction(6477, 8192), Fraction(14535, 16384)]
    ok = rep.strictly_increasing() and rates == expected
    shown = " -> ".join(f"{float(r):.3f}" for r in rates)
    assert report(4, ok, f"rates {shown}, strictly increasing={rep.strictly_increasing()}")


def test_criterion_5_lemma_oracles(report):
    start = time.perf_counter()
    l1, l2 = check_lemma1(6), check_lemma2(6)
    elapsed = time.perf_counter() - start
    ok = l1.ok and l2.ok and l1.cases > 0 and l2.cases > 0 and elapsed <= 60
    assert report(5, ok, f"{l1}; {l2}; {elapsed:.1f} s (limit 60 s)")


def test_criterion_6_balancer_equivalence(report):
    rng = np.random.default_rng(11)
    instances = mismatches = active = 0
    while instances < 10_000:
        k = int(rng.integers(2, 13))
        m = int(rng.integers(1, 24 // k + 1))
        g = BitGrid(rng.integers(0, 2, (m, k)))
        wt = g.weight()
        # any alpha with floor(k * alpha) >= wt meets the node precondition
        den = int(rng.integers(1, 2 * k + 1))
        num = -(-wt * den // k) + int(rng.integers(0, den + 1))
        alpha = Fraction(num, den)
        if math.floor(k * alpha) < wt:
            continue
        expected = reference_balance(g, list(range(1, k + 1)), alpha)
        got = balance_node(g, list(range(1, k + 1)), alpha)
        instances += 1
        active += got.tau != 0
        if (got.tau, got.t, got.gamma) != (expected.tau, expected.t, expected.gamma):
            mismatches += 1
    ok = mismatches == 0 and active > 0
    assert report(6, ok, f"{instances} instances ({active} with a swap), {mismatches} mismatches")


def test_criterion_7_stream_bound(report, sweep_runs):
    runs, _ = sweep_runs
    violations = 0
    for prm, x, _, _ in runs:
        a = encode_top(prm, x)
        stream = serialize(dnc_encode(a, prm.alpha), prm.n, prm.m)
        violations += len(stream) > prm.n * (ceil_log2(prm.n) + 6)
    ns = sorted({n for n, _, _ in SWEEP} | {256})
    for n in ns:
        violations += sum(max_stream_length(n, m) > n * (ceil_log2(n) + 6) for m in range(1, n))
    assert report(7, violations == 0, f"{len(runs)} encoded streams and worst cases for n in {ns}, "
                                      f"{violations} violations")


def encode_top(prm, x):
    code = prm.row_code
    rows = [code.phi_encode(x.bits[i * prm.k_row:(i + 1) * prm.k_row]).bits for i in range(prm.m)]
    return BitGrid(np.array(rows))


def test_criterion_8_count_oracles(report):
    counts = (count_arrays(2, 1), count_arrays(3, 1))
    ok = counts == (7, 34) == (subperm_count(2), subperm_count(3))
    # no parameters are feasible below n = 6, so encode outputs never reach the counted
    # sizes; confirm that rather than skip silently
    tiny_feasible = []
    for n in range(2, 6):
        for p in range(1, n + 1):
            try:
                derive_params(n, p)
                tiny_feasible.append((n, p))
            except InfeasibleParametersError:
                pass
    ok = ok and not tiny_feasible
    assert report(8, ok, f"count(2,1), count(3,1) = {counts}; feasible tiny (n, f): {tiny_feasible or 'none'}")


def test_criterion_9_legacy_c(report):
    n = 65536
    f = n // 2 - 16
    legacy, new = legacy_c_bound(n, f), new_c_value(n, f)
    assert report(9, (legacy, new) == (4096, 66), f"legacy c = {legacy}, new c = {new}")


def _stream_offsets(records, m):
    offsets, pos = [], 0
    for rec in records:
        offsets.append(pos)
        w_t, w_g = node_widths(rec.k, m)
        pos += 2 + ((w_t + w_g) if rec.tau else 0)
    return offsets


def test_criterion_10_fault_detection(report, tmp_path, capsys):
    rng = np.random.default_rng(13)
    configs = [derive_params(n, p, q) for n, p, q in SWEEP]
    flips = taus = cli_hits = 0
    silent = []
    for trial in range(TRIALS):
        prm = configs[trial % len(configs)]
        x = BitSeq(rng.integers(0, 2, prm.payload_bits_total))
        d = encode(prm, x)

        # single bit anywhere in the C region
        bad = d.copy()
        r = prm.m + int(rng.integers(0, prm.c))
        col = int(rng.integers(0, prm.n))
        bad.cells[r, col] ^= 1
        try:
            decode(prm, bad)
            silent.append(("flip", prm.n, r, col))
        except CorruptCodewordError:
            flips += 1

        # tau=11 in a random record, parity kept consistent so the record check must fire
        rows, cols = prm.layout.slots
        data = unpack(BitGrid(d.cells[prm.m:]), prm.layout).bits.copy()
        records = deserialize(data[:-1], prm.n, prm.m)
        at = _stream_offsets(records, prm.m)[int(rng.integers(0, len(records)))]
        data[at:at + 2] = 1
        data[-1] = data[:-1].sum() % 2
        bad = d.copy()
        bad.cells[prm.m + rows, cols] = data
        try:
            decode(prm, bad)
            silent.append(("tau", prm.n, at))
        except CorruptCodewordError as exc:
            taus += exc.stage == "deserialize"

        if trial % 10 == 0:
            path = tmp_path / f"bad{trial}"
            path.write_bytes(grid_to_text(bad))
            f = str(Fraction(prm.p, prm.q))
            code = main(["decode", "--n", str(prm.n), "--f", f, "--in", str(path), "--out", str(tmp_path / "y")])
            capsys.readouterr()
            cli_hits += code == 3
    ok = not silent and flips == TRIALS and taus == TRIALS and cli_hits == TRIALS // 10
    assert report(10, ok, f"{flips}/{TRIALS} bit flips and {taus}/{TRIALS} tau=11 injections rejected, "
                          f"CLI exit 3 in {cli_hits}/{TRIALS // 10}, silent decodes {len(silent)}")
