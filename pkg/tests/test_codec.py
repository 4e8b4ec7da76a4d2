import numpy as np
import pytest

from oskr import codec
from oskr.codec import compress, compress_bound, decompress, pack_poly, unpack_poly
from oskr.modring import centered
from oskr.params import PRESET_NAMES, encoded_sizes, preset


@pytest.mark.parametrize("d", range(1, 14))
def test_pack_round_trip(d):
    rng = np.random.default_rng(d)
    f = rng.integers(0, 1 << d, 256)
    buf = pack_poly(f, d)
    assert len(buf) == 256 * d // 8
    assert np.array_equal(unpack_poly(buf, d, 256), f)


def test_pack_bit_order():
    # coefficient 0 takes the low bits of byte 0
    f = np.zeros(8, dtype=np.int64)
    f[0], f[1] = 0b101, 0b011
    assert pack_poly(f, 3)[0] == 0b011_101
    assert pack_poly(np.array([1] + [0] * 7), 1) == b"\x01"


def test_pack_errors():
    with pytest.raises(ValueError):
        pack_poly(np.array([8] * 8), 3)
    with pytest.raises(ValueError):
        pack_poly(np.array([1] * 3), 3)
    with pytest.raises(ValueError):
        unpack_poly(b"\0" * 5, 3, 8)


@pytest.mark.parametrize("q,d", [(3329, 12), (7681, 13)])
def test_full_width_is_identity(q, d):
    x = np.arange(q)
    assert np.array_equal(compress(x, d, q), x)
    assert np.array_equal(decompress(x, d, q), x)


@pytest.mark.parametrize("q", [3329, 7681])
def test_compress_matches_rational_rounding(q):
    from fractions import Fraction
    for d in (1, 4, 7, 10):
        x = np.arange(q)
        got = compress(x, d, q)
        want = [int(Fraction(int(v) << d, q) + Fraction(1, 2)) % (1 << d) for v in x]
        assert got.tolist() == want
        y = np.arange(1 << d)
        want = [int(Fraction(q * int(v), 1 << d) + Fraction(1, 2)) for v in y]
        assert decompress(y, d, q).tolist() == want


def test_compress_bound_is_tight():
    for q, d in [(3329, 10), (3329, 4), (7681, 3), (7681, 9)]:
        x = np.arange(q)
        err = centered(decompress(compress(x, d, q), d, q) - x, q)
        assert np.abs(err).max() == compress_bound(q, d)


def test_compress_domain_errors():
    with pytest.raises(ValueError):
        compress(np.array([3329]), 10, 3329)
    with pytest.raises(ValueError):
        compress(np.array([1]), 0, 3329)
    with pytest.raises(ValueError):
        compress(np.array([1]), 13, 3329)
    with pytest.raises(ValueError):
        decompress(np.array([16]), 4, 3329)


@pytest.mark.parametrize("name", PRESET_NAMES)
def test_key_and_ciphertext_codecs(name):
    p = preset(name)
    rng = np.random.default_rng(len(name))
    t = rng.integers(0, 1 << p.d_k if p.compress_pk else p.q, (p.l, p.n))
    rho = bytes(p.seed_bytes)
    pk = codec.encode_pk(t, rho, p)
    assert len(pk) == encoded_sizes(p)[0]
    t2, rho2 = codec.decode_pk(pk, p)
    assert np.array_equal(t, t2) and rho2 == rho

    c1 = rng.integers(0, 1 << p.d_u, (p.l, p.n))
    c2 = rng.integers(0, 1 << p.d_v, p.n)
    ct = codec.encode_ct(c1, c2, p)
    assert len(ct) * p.runs == encoded_sizes(p)[1]
    dec = codec.decode_ct(ct, p)
    assert np.array_equal(dec.c1, c1) and np.array_equal(dec.c2, c2)

    s = rng.integers(0, p.q, (p.l, p.n))
    assert np.array_equal(codec.decode_sk(codec.encode_sk(s, p), p), s)

    msg = bytes(rng.integers(0, 256, p.msg_bytes, dtype=np.uint8))
    assert codec.decode_msg(codec.encode_msg(msg, p), p) == msg


def test_codec_length_errors():
    p = preset("oskr512")
    with pytest.raises(ValueError):
        codec.decode_pk(b"\0" * 799, p)
    with pytest.raises(ValueError):
        codec.decode_ct(b"\0" * 767, p)
    with pytest.raises(ValueError):
        codec.decode_sk(b"\0" * 10, p)
    with pytest.raises(ValueError):
        codec.encode_msg(b"\0" * 31, p)
    with pytest.raises(ValueError):
        codec.encode_pk(np.zeros((2, 256), dtype=np.int64), b"\0" * 31, p)


def test_uncompressed_key_range_checked():
    p = preset("oskr512")
    t = np.full((2, 256), 4095)
    pk = codec.pack_poly(t.reshape(-1), 12) + bytes(32)
    with pytest.raises(ValueError, match="out of range"):
        codec.decode_pk(pk, p)
    with pytest.raises(ValueError, match="out of range"):
        codec.decode_sk(codec.pack_poly(t.reshape(-1), 12), p)
