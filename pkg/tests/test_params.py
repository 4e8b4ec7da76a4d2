from dataclasses import replace

import pytest

from oskr.params import (
    PRESET_NAMES, SCHEMES, ParamSet, bandwidth, bandwidth_bits, encoded_sizes, preset, single_run,
)

BANDWIDTH = {"oskr512": 1568, "oskr768": 2272, "oskr1024": 3328,
             "okai512": 1248, "okai768": 1888, "okai1024": 2816,
             "approach1": 4704, "approach2": 3328, "approach3": 3328}

KEY_BYTES = {"oskr512": 32, "oskr768": 32, "oskr1024": 64,
             "okai512": 32, "okai768": 32, "okai1024": 64,
             "approach1": 64, "approach2": 64, "approach3": 64}

APPROACH_SIZES = {"approach1": (1568, 3136), "approach2": (1696, 1632), "approach3": (1600, 1728)}

# sk = packed secret || pk || H(pk) || z; the 512/768 OSKR values equal
# Kyber's, the rest follow from the same layout
SK_BYTES = {"oskr512": 1632, "oskr768": 2400, "oskr1024": 3264,
            "okai512": 1504, "okai768": 2208, "okai1024": 3136}


def test_all_presets_construct():
    assert set(SCHEMES) <= set(PRESET_NAMES)
    for name in PRESET_NAMES:
        p = preset(name)
        assert p.name == name
        assert p.violations() == []


def test_unknown_preset():
    with pytest.raises(ValueError, match="unknown preset"):
        preset("kyber512")


@pytest.mark.parametrize("name", PRESET_NAMES)
def test_bandwidth_and_key_bytes(name):
    p = preset(name)
    assert bandwidth(p) == BANDWIDTH[name]
    assert p.key_bytes == KEY_BYTES[name]
    pk, ct, _ = encoded_sizes(p)
    assert bandwidth(p) == pk + ct


def test_approach_sizes():
    for name, sizes in APPROACH_SIZES.items():
        assert encoded_sizes(preset(name))[:2] == sizes


def test_secret_key_sizes():
    for name, sk in SK_BYTES.items():
        assert encoded_sizes(preset(name))[2] == sk


def test_bandwidth_bits_formulas():
    # approach 1 pays the ciphertext twice
    assert bandwidth_bits(256, 4, 12, 11, 5, "twice") == 256 + 256 * 4 * 12 + 2 * (256 * 4 * 11 + 256 * 5)
    assert bandwidth_bits(512, 2, 12, 11, 5, "double_dim") == 512 + 512 * 2 * 12 + 512 * 2 * 11 + 512 * 5
    with pytest.raises(ValueError):
        bandwidth_bits(256, 2, 12, 10, 4, "thrice")


def test_bandwidth_approach_mismatch():
    with pytest.raises(ValueError):
        bandwidth(preset("oskr512"), "twice")
    with pytest.raises(ValueError):
        bandwidth(preset("approach1"), "double_dim")


def test_derived_fields():
    p = preset("oskr1024")
    assert (p.seed_bytes, p.msg_bytes, p.g, p.logq, p.d_m) == (64, 64, 32, 12, 1)
    assert not p.compress_pk
    assert preset("okai512").compress_pk
    a2 = preset("approach2")
    assert (a2.d_m, a2.msg_bytes, a2.logq) == (2, 64, 13)


def test_single_run():
    p = preset("approach1")
    s = single_run(p)
    assert s.runs == 1 and s.approach is None and s.l == 4
    assert encoded_sizes(s) == (1568, 1568, 3168)
    assert single_run(preset("oskr512")) is preset("oskr512")


@pytest.mark.parametrize("change,msg", [
    (dict(q=3328), "prime"),
    (dict(n=300), "power of two"),
    (dict(m=3), "power of two"),
    (dict(d_v=12), "d_v"),
    (dict(d_u=13), "d_u"),
    (dict(alpha=0, beta=0), "divide q-1"),
    (dict(runs=3), "runs"),
    (dict(approach="other"), "approach"),
])
def test_invalid_parameters(change, msg):
    with pytest.raises(ValueError, match=msg):
        replace(preset("oskr512"), **change)


def test_paramset_is_frozen():
    p = preset("okai768")
    with pytest.raises(Exception):
        p.n = 512
    assert isinstance(p, ParamSet)
