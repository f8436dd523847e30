from fractions import Fraction
from math import comb

import pytest

from bounded2d.bitcore import BitGrid, BitSeq
from bounded2d.codec2d import decode, derive_params, encode, verify_membership
from bounded2d.errors import CorruptCodewordError, InfeasibleParametersError, ParameterError, UsageError


def payload_oracle(n, w):
    return sum(comb(n, i) for i in range(w + 1)).bit_length() - 1


def test_derive_params_64_32():
    prm = derive_params(64, 32)
    assert (prm.beta, prm.r_blocks, prm.c, prm.m) == (2, 12, 24, 40)
    assert prm.alpha == 20
    assert prm.k_row == payload_oracle(64, 32) == 63
    assert prm.payload_bits_total == 2520


def test_derive_params_32_16():
    prm = derive_params(32, 16)
    assert (prm.c, prm.m, prm.k_row, prm.payload_bits_total) == (22, 10, 31, 310)
    assert prm.k_row == payload_oracle(32, 16)


def test_derive_params_infeasible():
    with pytest.raises(InfeasibleParametersError, match="c=20"):
        derive_params(16, 8)


@pytest.mark.parametrize("args", [(1, 1, 1), (64, 0, 1), (64, 65, 1), (64, 1, 2)])
def test_derive_params_out_of_domain(args):
    with pytest.raises(ParameterError):
        derive_params(*args)


def test_derive_params_rational_f():
    prm = derive_params(100, 101, 2)  # f = 50.5
    assert prm.beta == 2 and prm.w_max == 50
    assert prm.alpha == Fraction(prm.m * 101, 200)
    assert prm.k_row == payload_oracle(100, 50)


@pytest.mark.parametrize("n, p, q", [(32, 16, 1), (64, 16, 1), (64, 32, 1), (64, 48, 1),
                                     (100, 50, 1), (100, 101, 2), (128, 64, 1), (128, 30, 1)])
def test_params_invariants(n, p, q):
    prm = derive_params(n, p, q)
    assert 1 <= prm.m and prm.c < n and prm.w_max >= 1 and prm.k_row >= 1
    assert (prm.m * p) // (n * q) + (prm.c * p) // (n * q) <= p // q
    assert n * n - prm.payload_bits_total == (n - prm.c) * (n - prm.k_row) + prm.c * n


def test_encode_all_zero():
    prm = derive_params(32, 16)
    assert encode(prm, BitSeq.zeros(prm.payload_bits_total)) == BitGrid.zeros(32, 32)
    assert decode(prm, BitGrid.zeros(32, 32)) == BitSeq.zeros(prm.payload_bits_total)


def test_encode_wrong_length():
    prm = derive_params(32, 16)
    with pytest.raises(UsageError):
        encode(prm, BitSeq.zeros(prm.payload_bits_total - 1))


def test_encode_membership_and_round_trip(rng):
    prm = derive_params(32, 16)
    for _ in range(100):
        x = BitSeq(rng.integers(0, 2, prm.payload_bits_total))
        d = encode(prm, x)
        assert verify_membership(d, 16).ok
        assert (d.row_weights()[:prm.m] <= prm.w_max).all()
        assert (d.col_weights() <= prm.budget(1) + (prm.c * 16) // 32).all()
        assert decode(prm, d) == x


def test_rows_top_part_are_balanced_phi_rows(rng):
    prm = derive_params(64, 32)
    x = BitSeq(rng.integers(0, 2, prm.payload_bits_total))
    d = encode(prm, x)
    top = d.cells[:prm.m]
    assert (top.sum(axis=0) <= prm.budget(1)).all()
    assert (top.sum(axis=1) <= prm.w_max).all()


def test_round_trip_rational_f(rng):
    prm = derive_params(100, 101, 2)
    for _ in range(20):
        x = BitSeq(rng.integers(0, 2, prm.payload_bits_total))
        d = encode(prm, x)
        assert verify_membership(d, 101, 2).ok
        assert decode(prm, d) == x


def test_decode_stray_one_in_c():
    prm = derive_params(64, 32)
    d = BitGrid.zeros(64, 64)
    d.set(prm.m + 1, 2, 1)  # column 2 carries its first data bit on row 2 of C
    with pytest.raises(CorruptCodewordError) as exc:
        decode(prm, d)
    assert exc.value.stage == "unpack"


def test_decode_wrong_shape():
    prm = derive_params(32, 16)
    with pytest.raises(UsageError):
        decode(prm, BitGrid.zeros(31, 31))


def test_lone_one_with_empty_records_is_a_codeword():
    prm = derive_params(32, 16)
    d = BitGrid.zeros(32, 32)
    d.set(1, 1, 1)
    got = decode(prm, d)
    assert encode(prm, got) == d


def test_strict_decode_catches_non_codeword():
    prm = derive_params(32, 16)
    d = BitGrid.zeros(32, 32)
    d.cells[0, :17] = 1  # row weight 17 > 16
    with pytest.raises(CorruptCodewordError) as exc:
        decode(prm, d)
    assert exc.value.stage == "rank"


def test_verify_membership_examples():
    assert verify_membership(BitGrid.zeros(3, 3), 1).ok
    rep = verify_membership(BitGrid([[1, 1], [0, 0]]), 1)
    assert not rep.ok
    assert str(rep.violations[0]) == "row 1 weight 2 > 1"
    assert len(rep.violations) == 1


def test_verify_membership_rational_bound():
    g = BitGrid([[1, 1, 1], [0, 0, 0], [0, 0, 0]])
    assert not verify_membership(g, 5, 2).ok  # 3 > 2.5
    assert verify_membership(g, 7, 2).ok  # 3 <= 3.5


def test_verify_membership_needs_square():
    with pytest.raises(UsageError):
        verify_membership(BitGrid.zeros(2, 3), 1)
