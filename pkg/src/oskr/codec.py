"""Compression and byte encodings.

Wire format: coefficients are packed d bits each, least significant bit
first, in natural coefficient order (coefficient 0 occupies the lowest bits
of byte 0).  Vectors are their polynomials concatenated.

    pk = pack(t, d_k) || rho
    ct = pack(u, d_u) || pack(v, d_v)          (approach 1: two such blocks)
    cpa sk = pack(s_hat, ceil(log2 q))         (secret in the NTT domain)

When d_k = ceil(log2 q) the public key is not compressed and t is sent in
the NTT domain, exactly as Kyber does; otherwise t is compressed in the
normal domain.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .modring import div_floor_by_q
from .params import ParamSet, encoded_sizes, log2_ceil


def _check_d(d: int, q: int) -> None:
    if not 0 < d <= log2_ceil(q):
        raise ValueError(f"d={d} out of range for q={q}")


def compress(x, d: int, q: int):
    """round(2^d x / q) mod 2^d, round half up, without a division."""
    _check_d(d, q)
    x = np.asarray(x, dtype=np.int64)
    if x.size and (x.min() < 0 or x.max() >= q):
        raise ValueError("compress expects canonical inputs in [0, q)")
    if d == log2_ceil(q):
        return x.copy()
    a = (x << (d + 1)) + q
    return (div_floor_by_q(a, q) >> 1) & ((1 << d) - 1)


def decompress(y, d: int, q: int):
    """round(q y / 2^d), round half up."""
    _check_d(d, q)
    y = np.asarray(y, dtype=np.int64)
    if y.size and (y.min() < 0 or y.max() >= (1 << d)):
        raise ValueError("decompress expects inputs in [0, 2^d)")
    if d == log2_ceil(q):
        return y.copy()
    return (2 * q * y + (1 << d)) >> (d + 1)


def compress_bound(q: int, d: int) -> int:
    """round(q / 2^(d+1)), the worst round-trip error."""
    return (q + (1 << d)) >> (d + 1)


def pack_poly(f, d: int) -> bytes:
    f = np.asarray(f, dtype=np.int64)
    if f.size and (f.min() < 0 or f.max() >= (1 << d)):
        raise ValueError(f"coefficients do not fit in {d} bits")
    if f.size * d % 8:
        raise ValueError("packed length is not a whole number of bytes")
    bits = (f.reshape(-1, 1) >> np.arange(d)) & 1
    return np.packbits(bits.astype(np.uint8).reshape(-1), bitorder="little").tobytes()


def unpack_poly(buf: bytes, d: int, n: int) -> np.ndarray:
    """Inverse of pack_poly for n coefficients (or a multiple of n)."""
    if len(buf) * 8 != n * d:
        raise ValueError(f"expected {n * d // 8} bytes, got {len(buf)}")
    bits = np.unpackbits(np.frombuffer(buf, dtype=np.uint8), bitorder="little")
    bits = bits.reshape(n, d).astype(np.int64)
    return (bits << np.arange(d)).sum(axis=1)


# -- keys and ciphertexts ---------------------------------------------------

@dataclass(frozen=True)
class CpaCiphertext:
    c1: np.ndarray  # (l, n) compressed u
    c2: np.ndarray  # (n,) compressed v


def encode_pk(t, rho: bytes, p: ParamSet) -> bytes:
    if len(rho) != p.seed_bytes:
        raise ValueError("bad seed length")
    return pack_poly(np.asarray(t).reshape(-1), p.d_k) + bytes(rho)


def decode_pk(pk: bytes, p: ParamSet) -> tuple[np.ndarray, bytes]:
    want = encoded_sizes(p)[0]
    if len(pk) != want:
        raise ValueError(f"public key must be {want} bytes, got {len(pk)}")
    cut = want - p.seed_bytes
    t = unpack_poly(pk[:cut], p.d_k, p.l * p.n).reshape(p.l, p.n)
    if not p.compress_pk and t.max() >= p.q:
        raise ValueError("public key coefficient out of range")
    return t, pk[cut:]


def ct_bytes(p: ParamSet) -> int:
    """Length of one CPA ciphertext (a single run)."""
    return (p.n * p.l * p.d_u + p.n * p.d_v) // 8


def encode_ct(c1, c2, p: ParamSet) -> bytes:
    return pack_poly(np.asarray(c1).reshape(-1), p.d_u) + pack_poly(c2, p.d_v)


def decode_ct(ct: bytes, p: ParamSet) -> CpaCiphertext:
    if len(ct) != ct_bytes(p):
        raise ValueError(f"ciphertext must be {ct_bytes(p)} bytes, got {len(ct)}")
    cut = p.n * p.l * p.d_u // 8
    c1 = unpack_poly(ct[:cut], p.d_u, p.l * p.n).reshape(p.l, p.n)
    c2 = unpack_poly(ct[cut:], p.d_v, p.n)
    return CpaCiphertext(c1, c2)


def sk_cpa_bytes(p: ParamSet) -> int:
    return p.n * p.l * p.logq // 8


def encode_sk(s_hat, p: ParamSet) -> bytes:
    return pack_poly(np.asarray(s_hat).reshape(-1), p.logq)


def decode_sk(sk: bytes, p: ParamSet) -> np.ndarray:
    if len(sk) != sk_cpa_bytes(p):
        raise ValueError(f"secret key must be {sk_cpa_bytes(p)} bytes, got {len(sk)}")
    s = unpack_poly(sk, p.logq, p.l * p.n).reshape(p.l, p.n)
    if s.max() >= p.q:
        raise ValueError("secret key coefficient out of range")
    return s


def encode_msg(msg: bytes, p: ParamSet) -> np.ndarray:
    """Message bytes -> d_m-bit symbols per coefficient."""
    if len(msg) != p.msg_bytes:
        raise ValueError(f"message must be {p.msg_bytes} bytes")
    return unpack_poly(msg, p.d_m, p.n)


def decode_msg(k, p: ParamSet) -> bytes:
    return pack_poly(k, p.d_m)
