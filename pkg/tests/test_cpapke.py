import math
from fractions import Fraction

import numpy as np
import pytest

from oskr import cpapke
from oskr.codec import decompress
from oskr.params import PRESET_NAMES, preset


def floor_half(x: Fraction, m: int) -> int:
    # round half up of a rational, reduced mod m
    return math.floor(x + Fraction(1, 2)) % m


@pytest.mark.parametrize("q,m,g", [(17, 2, 4), (17, 4, 8), (97, 2, 16), (97, 4, 8)])
def test_akcn_decode_exhaustive_small(q, m, g):
    v = np.repeat(np.arange(g), q)
    s = np.tile(np.arange(q), g)
    got = cpapke.akcn_decode(v, s, q, m, g)
    want = [floor_half(Fraction(m) * (Fraction(int(a), g) - Fraction(int(b), q)), m)
            for a, b in zip(v, s)]
    assert got.tolist() == want


@pytest.mark.parametrize("q,m,d_v", [(3329, 2, 4), (3329, 2, 5), (7681, 2, 3), (7681, 4, 7)])
def test_akcn_decode_matches_rationals(q, m, d_v):
    g = 1 << d_v
    rng = np.random.default_rng(q + m)
    v = rng.integers(0, g, 20000)
    s = rng.integers(0, q, 20000)
    got = cpapke.akcn_decode(v, s, q, m, g)
    want = [floor_half(Fraction(m) * (Fraction(int(a), g) - Fraction(int(b), q)), m)
            for a, b in zip(v, s)]
    assert got.tolist() == want


def test_rules_disagree_near_the_boundary():
    # with a coarse d_v the two roundings and the single rounding differ on
    # some (v, sigma1) pairs; both agree away from decision boundaries
    q, m, d_v = 3329, 2, 3
    g = 1 << d_v
    v = np.repeat(np.arange(g), q)
    s = np.tile(np.arange(q), g)
    a = cpapke.akcn_decode(v, s, q, m, g)
    o = cpapke.original_decode(v, s, q, m, d_v)
    diff = a != o
    assert 0 < diff.sum() < 0.05 * diff.size
    # the exact symbol sent is recovered by both when sigma1 equals it
    for k in range(m):
        target = int(decompress(np.array([k]), 1, q)[0])
        vk = int(np.round(target * g / q)) % g
        s0 = (int(decompress(np.array([vk]), d_v, q)[0]) - target) % q
        assert cpapke.original_decode(vk, s0, q, m, d_v) == k


@pytest.mark.parametrize("name", PRESET_NAMES)
@pytest.mark.parametrize("variant", cpapke.VARIANTS)
def test_encrypt_decrypt_round_trip(name, variant):
    p = preset(name)
    rng = np.random.default_rng(3)
    for _ in range(3):
        kp = cpapke.keygen(bytes(rng.integers(0, 256, p.seed_bytes, dtype=np.uint8)), p)
        msg = bytes(rng.integers(0, 256, p.msg_bytes, dtype=np.uint8))
        coins = bytes(rng.integers(0, 256, p.seed_bytes, dtype=np.uint8))
        ct = cpapke.encrypt(kp.pk, msg, coins, p)
        assert cpapke.decrypt(kp.sk, ct, p, variant) == msg


def test_encrypt_is_deterministic_in_coins():
    p = preset("okai768")
    kp = cpapke.keygen(bytes(32), p)
    a = cpapke.encrypt(kp.pk, bytes(32), bytes(32), p)
    assert a == cpapke.encrypt(kp.pk, bytes(32), bytes(32), p)
    assert a != cpapke.encrypt(kp.pk, bytes(32), b"\1" + bytes(31), p)


def test_bad_arguments():
    p = preset("oskr512")
    kp = cpapke.keygen(bytes(32), p)
    ct = cpapke.encrypt(kp.pk, bytes(32), bytes(32), p)
    with pytest.raises(ValueError, match="variant"):
        cpapke.decrypt(kp.sk, ct, p, "both")
    with pytest.raises(ValueError):
        cpapke.keygen(bytes(31), p)
    with pytest.raises(ValueError):
        cpapke.encrypt(kp.pk, bytes(32), bytes(33), p)
    with pytest.raises(ValueError):
        cpapke.encrypt(kp.pk, bytes(31), bytes(32), p)
