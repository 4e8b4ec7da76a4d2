from pathlib import Path

import pytest
from test_acceptance import read_rsp

from oskr import kem
from oskr.params import PRESET_NAMES, encoded_sizes, preset, single_run
from oskr.symmetric import NistDrbg, ShakeStream


@pytest.mark.parametrize("name", PRESET_NAMES)
def test_lengths_and_round_trip(name):
    p = preset(name)
    rng = ShakeStream(b"lengths" + name.encode())
    kp = kem.kem_keygen(p, rng)
    pk_len, ct_len, sk_len = encoded_sizes(p)
    assert (len(kp.pk), len(kp.sk)) == (pk_len, sk_len)
    ct, k = kem.encaps(kp.pk, p, rng)
    assert len(ct) == ct_len and len(k) == p.key_bytes
    assert kem.decaps(kp.sk, ct, p) == k
    assert kem.decaps(kp.sk, ct, p, "original") == k


def test_deterministic_under_a_seeded_stream():
    p = preset("okai512")
    a = kem.kem_keygen(p, ShakeStream(b"x"))
    b = kem.kem_keygen(p, ShakeStream(b"x"))
    assert a == b
    assert kem.kem_keygen(p, ShakeStream(b"y")).pk != a.pk
    assert kem.encaps(a.pk, p, ShakeStream(b"c")) == kem.encaps(a.pk, p, ShakeStream(b"c"))


def test_os_randomness_by_default():
    p = preset("oskr512")
    kp = kem.kem_keygen(p)
    assert kem.kem_keygen(p).pk != kp.pk
    ct, k = kem.encaps(kp.pk, p)
    assert kem.decaps(kp.sk, ct, p) == k


def test_split_sk_layout():
    p = preset("oskr768")
    kp = kem.kem_keygen(p, ShakeStream(b"sk"))
    s, pk, hpk, z = kem.split_sk(kp.sk, p)
    assert pk == kp.pk and len(hpk) == len(z) == 32
    assert len(s) == 3 * 256 * 12 // 8


def test_wrong_lengths_raise():
    p = preset("oskr512")
    kp = kem.kem_keygen(p, ShakeStream(b"len"))
    ct, _ = kem.encaps(kp.pk, p, ShakeStream(b"e"))
    with pytest.raises(ValueError, match="public key"):
        kem.encaps(kp.pk[:-1], p)
    with pytest.raises(ValueError, match="ciphertext"):
        kem.decaps(kp.sk, ct + b"\0", p)
    with pytest.raises(ValueError, match="secret key"):
        kem.decaps(kp.sk[:-1], ct, p)
    # a key of one preset is rejected by another
    with pytest.raises(ValueError):
        kem.encaps(kp.pk, preset("okai512"))


def test_implicit_rejection_is_deterministic():
    p = preset("oskr512")
    kp = kem.kem_keygen(p, ShakeStream(b"rej"))
    ct, k = kem.encaps(kp.pk, p, ShakeStream(b"e"))
    bad = bytes([ct[0] ^ 1]) + ct[1:]
    r1 = kem.decaps(kp.sk, bad, p)
    assert r1 != k and r1 == kem.decaps(kp.sk, bad, p)
    # a different z gives a different rejection key
    other = kp.sk[:-32] + bytes(32)
    assert kem.decaps(other, bad, p) != r1
    assert kem.decaps(other, ct, p) == k


def test_approach_wrappers():
    for name, fn in [("approach1", kem.encaps_approach1), ("approach2", kem.encaps_approach2),
                     ("approach3", kem.encaps_approach3)]:
        p = preset(name)
        kp = kem.kem_keygen(p, ShakeStream(name.encode()))
        ct, k = fn(kp.pk, p, ShakeStream(b"w"))
        assert len(k) == 64
        assert kem.decaps(kp.sk, ct, p) == k
    with pytest.raises(ValueError):
        kem.encaps_approach1(b"", preset("approach2"))
    with pytest.raises(ValueError):
        kem.encaps_approach3(b"", preset("oskr1024"))


def test_approach1_halves_are_independent():
    p = preset("approach1")
    kp = kem.kem_keygen(p, ShakeStream(b"a1"))
    ct, k = kem.encaps(kp.pk, p, ShakeStream(b"a1e"))
    half = len(ct) // 2
    assert ct[:half] != ct[half:] and k[:32] != k[32:]
    # tampering with the second block leaves the first key intact
    bad = ct[:half] + bytes([ct[half] ^ 1]) + ct[half + 1:]
    got = kem.decaps(kp.sk, bad, p)
    assert got[:32] == k[:32] and got[32:] != k[32:]


def test_drbg_first_output():
    # AES-256 CTR_DRBG on entropy 00..2f, the seed of the first NIST vector
    seed = NistDrbg(bytes(range(48)))(48)
    assert seed.hex().upper().startswith("061550234D158C5EC95595FE04EF7A25")


def test_approach1_single_run_matches_kyber1024_vectors():
    p = single_run(preset("approach1"))
    vectors = read_rsp(Path(__file__).parent / "data" / "PQCkemKAT_3168.rsp")
    master = NistDrbg(bytes(range(48)))
    for want in vectors:
        seed = master(48)
        assert seed == want["seed"]
        rng = NistDrbg(seed)
        kp = kem.kem_keygen(p, rng)
        ct, ss = kem.encaps(kp.pk, p, rng)
        assert (kp.pk, kp.sk, ct, ss) == (want["pk"], want["sk"], want["ct"], want["ss"])
