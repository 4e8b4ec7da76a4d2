"""The IND-CPA encryption core with both decryption rules.

Key generation and encryption follow the Kyber round-3 procedure (same
seed expansion, nonce order and domain conventions), so OSKR-512/768 produce
byte-identical keys and ciphertexts to Kyber-512/768.  Decryption comes in
two flavours:

    original   k' = round((m/q) (round((q/g) v) - sigma1)) mod m     two roundings
    akcn       k' = round(m (v/g - sigma1/q)) mod m                  one rounding

The single-rounding rule is evaluated exactly in integers as
floor((2 m (v q - sigma1 g) + g q) / (2 g q)) mod m.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import codec
from .codec import compress, decompress
from .modring import div_floor_by_q
from .ntt import plan_for
from .params import ParamSet
from .poly import gen_matrix_array, noise
from .symmetric import G

VARIANTS = ("akcn", "original")


@dataclass(frozen=True)
class CpaKeyPair:
    pk: bytes
    sk: bytes


def _mul_acc(pl, a_hat, b_hat):
    """sum_j a_hat[..., j, :] o b_hat[j, :] in the NTT domain (times 2^-16)."""
    return pl.basemul(a_hat, b_hat).sum(axis=-2) % pl.q


def _to_normal(pl, acc):
    # basemul left a factor 2^-16; the inverse with tomont removes it
    return pl.inverse(acc, tomont=True)


def _from_mont(acc, q):
    return acc * (1 << 16) % q


def keygen(coins: bytes, p: ParamSet) -> CpaKeyPair:
    """(pk, sk) from seed_bytes of coins."""
    if len(coins) != p.seed_bytes:
        raise ValueError(f"keygen needs {p.seed_bytes} bytes of coins")
    buf = G(coins, 2 * p.seed_bytes)
    rho, sigma = buf[: p.seed_bytes], buf[p.seed_bytes:]
    pl = plan_for(p)
    a = gen_matrix_array(rho, p)
    nonce = 0
    s = np.empty((p.l, p.n), dtype=np.int64)
    e = np.empty((p.l, p.n), dtype=np.int64)
    for i in range(p.l):
        s[i] = noise(sigma, nonce, p.eta_s, p.n)
        nonce += 1
    for i in range(p.l):
        e[i] = noise(sigma, nonce, p.eta_k, p.n)
        nonce += 1
    s_hat = pl.forward(s % p.q)
    acc = _mul_acc(pl, a, s_hat)
    if p.compress_pk:
        t = (_to_normal(pl, acc) + e) % p.q
        t = compress(t, p.d_k, p.q)
    else:
        t = (_from_mont(acc, p.q) + pl.forward(e % p.q)) % p.q
    return CpaKeyPair(codec.encode_pk(t, rho, p), codec.encode_sk(s_hat, p))


def _t_hat(pk: bytes, p: ParamSet, pl):
    t, rho = codec.decode_pk(pk, p)
    if p.compress_pk:
        t = pl.forward(decompress(t, p.d_k, p.q))
    return t, rho


def encrypt(pk: bytes, msg: bytes, coins: bytes, p: ParamSet) -> bytes:
    """Encrypt msg_bytes of message under pk with seed_bytes of coins."""
    if len(coins) != p.seed_bytes:
        raise ValueError(f"encrypt needs {p.seed_bytes} bytes of coins")
    pl = plan_for(p)
    t_hat, rho = _t_hat(pk, p, pl)
    k = codec.encode_msg(msg, p)
    at = gen_matrix_array(rho, p, transposed=True)
    nonce = 0
    r = np.empty((p.l, p.n), dtype=np.int64)
    e1 = np.empty((p.l, p.n), dtype=np.int64)
    for i in range(p.l):
        r[i] = noise(coins, nonce, p.eta_s, p.n)
        nonce += 1
    for i in range(p.l):
        e1[i] = noise(coins, nonce, p.eta_e, p.n)
        nonce += 1
    e2 = noise(coins, nonce, p.eta_e, p.n)
    r_hat = pl.forward(r % p.q)
    u = (_to_normal(pl, _mul_acc(pl, at, r_hat)) + e1) % p.q
    sigma2 = _to_normal(pl, _mul_acc(pl, t_hat, r_hat))
    v = (sigma2 + e2 + decompress(k, p.d_m, p.q)) % p.q
    return codec.encode_ct(compress(u, p.d_u, p.q), compress(v, p.d_v, p.q), p)


def _sigma1(sk: bytes, c: codec.CpaCiphertext, p: ParamSet, pl):
    s_hat = codec.decode_sk(sk, p)
    u_hat = pl.forward(decompress(c.c1, p.d_u, p.q))
    return _to_normal(pl, _mul_acc(pl, s_hat, u_hat))


def akcn_decode(v, sigma1, q: int, m: int, g: int):
    """round(m (v/g - sigma1/q)) mod m in integers, round half up."""
    v = np.asarray(v, dtype=np.int64)
    sigma1 = np.asarray(sigma1, dtype=np.int64)
    num = 2 * m * (v * q - sigma1 * g) + g * q
    num = num + 2 * g * q * m  # shift positive; the result is taken mod m
    shift = (2 * g).bit_length() - 1
    return div_floor_by_q(num >> shift, q) % m


def original_decode(v, sigma1, q: int, m: int, d_v: int):
    """round((m/q) (decompress(v) - sigma1)) mod m."""
    d_m = m.bit_length() - 1
    x = (decompress(v, d_v, q) - np.asarray(sigma1, dtype=np.int64)) % q
    return compress(x, d_m, q)


def decrypt_akcn(sk: bytes, ct: bytes, p: ParamSet) -> bytes:
    pl = plan_for(p)
    c = codec.decode_ct(ct, p)
    k = akcn_decode(c.c2, _sigma1(sk, c, p, pl), p.q, p.m, p.g)
    return codec.decode_msg(k, p)


def decrypt_original(sk: bytes, ct: bytes, p: ParamSet) -> bytes:
    pl = plan_for(p)
    c = codec.decode_ct(ct, p)
    k = original_decode(c.c2, _sigma1(sk, c, p, pl), p.q, p.m, p.d_v)
    return codec.decode_msg(k, p)


def decrypt(sk: bytes, ct: bytes, p: ParamSet, variant: str = "akcn") -> bytes:
    if variant == "akcn":
        return decrypt_akcn(sk, ct, p)
    if variant == "original":
        return decrypt_original(sk, ct, p)
    raise ValueError(f"unknown decryption variant {variant!r}")
