"""IND-CCA KEM: Fujisaki-Okamoto transform with implicit rejection.

    keygen:  d <- rng(seed_bytes); (pk, s) <- cpa.keygen(d); z <- rng(hash_bytes)
             sk = s || pk || H(pk) || z
    encaps:  m <- H(rng(msg_bytes)); (Kbar, r) <- G(m || H(pk))
             ct <- cpa.encrypt(pk, m, r); K <- KDF(Kbar || H(ct))
    decaps:  m' <- decrypt(s, ct); (Kbar', r') <- G(m' || H(pk))
             K <- KDF(Kbar' || H(ct)) if encrypt(pk, m', r') == ct
                  else KDF(z || H(ct))

For the approach-1 preset the base KEM runs twice under one public key:
ct = ct_1 || ct_2 and K = K_1 || K_2, each half an independent
encapsulation.
"""
from __future__ import annotations

import hmac
from dataclasses import dataclass
from typing import Callable

from . import cpapke
from .codec import ct_bytes
from .params import ParamSet, encoded_sizes
from .symmetric import G, H, KDF, os_random

Rng = Callable[[int], bytes]


@dataclass(frozen=True)
class KemKeyPair:
    pk: bytes
    sk: bytes


def kem_keygen(p: ParamSet, rng: Rng | None = None) -> KemKeyPair:
    rng = rng or os_random
    kp = cpapke.keygen(rng(p.seed_bytes), p)
    z = rng(p.hash_bytes)
    sk = kp.sk + kp.pk + H(kp.pk, p.hash_bytes) + z
    return KemKeyPair(kp.pk, sk)


def _check_pk(pk: bytes, p: ParamSet) -> None:
    want = encoded_sizes(p)[0]
    if len(pk) != want:
        raise ValueError(f"public key must be {want} bytes, got {len(pk)}")


def _encaps_once(pk: bytes, hpk: bytes, p: ParamSet, rng: Rng) -> tuple[bytes, bytes]:
    m = H(rng(p.msg_bytes), p.msg_bytes)
    kr = G(m + hpk, p.hash_bytes + p.seed_bytes)
    kbar, coins = kr[: p.hash_bytes], kr[p.hash_bytes:]
    ct = cpapke.encrypt(pk, m, coins, p)
    return ct, KDF(kbar + H(ct, p.hash_bytes), p.msg_bytes)


def encaps(pk: bytes, p: ParamSet, rng: Rng | None = None) -> tuple[bytes, bytes]:
    """(ct, K) with len(K) == p.key_bytes."""
    rng = rng or os_random
    _check_pk(pk, p)
    hpk = H(pk, p.hash_bytes)
    cts, keys = [], []
    for _ in range(p.runs):
        ct, k = _encaps_once(pk, hpk, p, rng)
        cts.append(ct)
        keys.append(k)
    return b"".join(cts), b"".join(keys)


def split_sk(sk: bytes, p: ParamSet) -> tuple[bytes, bytes, bytes, bytes]:
    pk_len, _, sk_len = encoded_sizes(p)
    if len(sk) != sk_len:
        raise ValueError(f"secret key must be {sk_len} bytes, got {len(sk)}")
    a = sk_len - pk_len - 2 * p.hash_bytes
    s, rest = sk[:a], sk[a:]
    return s, rest[:pk_len], rest[pk_len:pk_len + p.hash_bytes], rest[pk_len + p.hash_bytes:]


def _decaps_once(s, pk, hpk, z, ct, p, variant) -> bytes:
    m = cpapke.decrypt(s, ct, p, variant)
    kr = G(m + hpk, p.hash_bytes + p.seed_bytes)
    kbar, coins = kr[: p.hash_bytes], kr[p.hash_bytes:]
    ok = hmac.compare_digest(cpapke.encrypt(pk, m, coins, p), ct)
    return KDF((kbar if ok else z) + H(ct, p.hash_bytes), p.msg_bytes)


def decaps(sk: bytes, ct: bytes, p: ParamSet, variant: str = "akcn") -> bytes:
    """Shared key; a tampered ciphertext yields a pseudorandom key.

    A ciphertext of the wrong length is malformed input and raises
    ValueError instead.
    """
    one = ct_bytes(p)
    if len(ct) != one * p.runs:
        raise ValueError(f"ciphertext must be {one * p.runs} bytes, got {len(ct)}")
    s, pk, hpk, z = split_sk(sk, p)
    return b"".join(
        _decaps_once(s, pk, hpk, z, ct[i * one:(i + 1) * one], p, variant)
        for i in range(p.runs)
    )


def _require(p: ParamSet, approach: str) -> None:
    if p.approach != approach:
        raise ValueError(f"{p.name} is not an {approach!r} parameter set")


def encaps_approach1(pk: bytes, p: ParamSet, rng: Rng | None = None):
    """Two independent 256-bit encapsulations under one key."""
    _require(p, "twice")
    return encaps(pk, p, rng)


def encaps_approach2(pk: bytes, p: ParamSet, rng: Rng | None = None):
    """One encapsulation with two message bits per coefficient."""
    _require(p, "wide_message")
    return encaps(pk, p, rng)


def encaps_approach3(pk: bytes, p: ParamSet, rng: Rng | None = None):
    """One encapsulation in dimension n = 512."""
    _require(p, "double_dim")
    return encaps(pk, p, rng)
