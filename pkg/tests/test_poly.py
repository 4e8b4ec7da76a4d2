import math

import numpy as np
import pytest

from oskr import ntt, poly
from oskr.failure import pmf_cbd
from oskr.params import preset
from oskr.poly import DomainError, Poly, PolyVec


@pytest.mark.parametrize("eta", [1, 2, 3, 4])
def test_cbd_distribution(eta):
    n = 256
    samples = np.concatenate([poly.noise(b"seed", i, eta, n) for i in range(200)])
    assert samples.min() >= -eta and samples.max() <= eta
    want = pmf_cbd(eta)
    counts = np.bincount(samples + eta, minlength=2 * eta + 1)
    expected = np.array([want[k] for k in range(-eta, eta + 1)]) * samples.size
    chi2 = float(((counts - expected) ** 2 / expected).sum())
    # 99.9% quantile of chi-square with 2 eta degrees of freedom is below 27
    assert chi2 < 27


def test_cbd_bit_layout():
    # eta = 2: coefficient 0 reads bits 0,1 minus bits 2,3
    buf = bytes([0b0000_0011] + [0] * 127)
    c = poly.cbd(buf, 2, 256)
    assert c[0] == 2 and not c[1:].any()
    buf = bytes([0b1100_0000] + [0] * 127)
    assert poly.cbd(buf, 2, 256)[1] == -2


def test_cbd_errors():
    with pytest.raises(ValueError):
        poly.cbd(b"\0" * 64, 5, 256)
    with pytest.raises(ValueError):
        poly.cbd(b"\0" * 10, 2, 256)


@pytest.mark.parametrize("q", [3329, 7681])
def test_rejection_sampling(q):
    stream = bytes(np.random.default_rng(q).integers(0, 256, 30000, dtype=np.uint8))
    vals, accepted = poly.rejection_sample(stream, q, 10 ** 6)
    assert vals.min() >= 0 and vals.max() < q
    width = q.bit_length()
    candidates = len(stream) * 8 // (12 if width == 12 else 16)
    rate = accepted / candidates
    expected = q / (1 << width)
    se = math.sqrt(expected * (1 - expected) / candidates)
    assert abs(rate - expected) < 4 * se


def test_rejection_sampling_layout():
    # 12-bit: bytes 0x01 0x23 0x45 give 0x301 and 0x452
    vals, _ = poly.rejection_sample(bytes([0x01, 0x23, 0x45]), 3329, 2)
    assert vals.tolist() == [0x301, 0x452]
    vals, _ = poly.rejection_sample(bytes([0xFF, 0xFF, 0x01, 0x00]), 7681, 2)
    assert vals.tolist() == [1]  # 0x1FFF >= 7681 is dropped
    with pytest.raises(ValueError):
        poly.rejection_sample(b"\0" * 6, 12289, 2)


@pytest.mark.parametrize("name", ["oskr768", "okai512", "approach2"])
def test_matrix_transpose_relation(name):
    p = preset(name)
    rho = bytes(range(p.seed_bytes))
    a = poly.gen_matrix(rho, p)
    at = poly.gen_matrix(rho, p, transposed=True)
    for i in range(p.l):
        for j in range(p.l):
            assert at[i, j] == a[j, i]
    assert a.rows.min() >= 0 and a.rows.max() < p.q
    with pytest.raises(ValueError):
        poly.gen_matrix(rho[:-1], p)


def test_domain_checks():
    pl = ntt.plan(256, 3329, 0, 1)
    a = Poly(np.arange(256), 3329)
    b = poly.to_ntt(a, pl)
    assert b.domain == ("ntt", 0, 1)
    with pytest.raises(DomainError):
        poly.add(a, b)
    with pytest.raises(DomainError):
        poly.to_ntt(b, pl)
    with pytest.raises(DomainError):
        poly.from_ntt(a, pl)
    with pytest.raises(DomainError):
        poly.from_ntt(b, ntt.plan(256, 3329, 1, 1))
    with pytest.raises(TypeError):
        poly.add(a, PolyVec(np.zeros((2, 256)), 3329))
    with pytest.raises(ValueError):
        poly.add(a, Poly(np.zeros(256), 7681))
    assert poly.from_ntt(b, pl) == a


def test_add_sub_reduce():
    q = 17
    a = Poly(np.full(8, 16), q)
    b = Poly(np.full(8, 5), q)
    assert poly.add(a, b).coeffs.tolist() == [4] * 8
    assert poly.sub(b, a).coeffs.tolist() == [6] * 8
    assert Poly(np.array([-1] * 8), q).coeffs.tolist() == [16] * 8


def test_containers_are_read_only():
    a = Poly(np.arange(8), 17)
    with pytest.raises(ValueError):
        a.coeffs[0] = 3
    with pytest.raises(ValueError):
        PolyVec(np.arange(8), 17)


def test_pointwise_acc():
    q, n, l = 3329, 256, 3
    pl = ntt.plan(n, q, 0, 1)
    rng = np.random.default_rng(7)
    a = rng.integers(0, q, (l, n))
    b = rng.integers(0, q, (l, n))
    va = poly.to_ntt(PolyVec(a, q), pl)
    vb = poly.to_ntt(PolyVec(b, q), pl)
    got = poly.from_ntt(poly.pointwise_acc(va, vb, pl), pl)
    want = sum(ntt.schoolbook(a[i], b[i], q) for i in range(l)) % q
    assert np.array_equal(got.coeffs, want)
    with pytest.raises(DomainError):
        poly.pointwise_acc(PolyVec(a, q), PolyVec(b, q), pl)
