"""Hash roles and randomness sources.

    H(x)        SHA3-256 for 32-byte outputs, SHA3-512 for 64-byte outputs
    G(x, len)   SHA3-512 when len = 64, otherwise SHAKE-256 with len bytes
                (128 bytes for the n = 512 sets)
    KDF(x, len) SHAKE-256
    PRF(s, b)   SHAKE-256(s || b)        see poly.prf
    XOF         SHAKE-128                see poly.sample_uniform
"""
from __future__ import annotations

import hashlib
import os

from cryptography.hazmat.primitives.ciphers import Cipher, algorithms, modes


def H(data: bytes, outlen: int = 32) -> bytes:
    if outlen == 32:
        return hashlib.sha3_256(data).digest()
    if outlen == 64:
        return hashlib.sha3_512(data).digest()
    raise ValueError("H produces 32 or 64 bytes")


def G(data: bytes, outlen: int = 64) -> bytes:
    if outlen == 64:
        return hashlib.sha3_512(data).digest()
    return hashlib.shake_256(data).digest(outlen)


def KDF(data: bytes, outlen: int = 32) -> bytes:
    return hashlib.shake_256(data).digest(outlen)


def os_random(nbytes: int) -> bytes:
    return os.urandom(nbytes)


class ShakeStream:
    """Deterministic byte stream: SHAKE-256(seed || counter) blocks."""

    def __init__(self, seed: bytes):
        self.seed = bytes(seed)
        self.counter = 0
        self.buf = b""

    def __call__(self, nbytes: int) -> bytes:
        while len(self.buf) < nbytes:
            block = hashlib.shake_256(self.seed + self.counter.to_bytes(8, "little")).digest(136)
            self.counter += 1
            self.buf += block
        out, self.buf = self.buf[:nbytes], self.buf[nbytes:]
        return out


class NistDrbg:
    """AES-256 CTR_DRBG without derivation function, as used by the NIST
    known-answer-test generators (randombytes_init / randombytes)."""

    def __init__(self, entropy: bytes, personalization: bytes = b""):
        if len(entropy) != 48:
            raise ValueError("the DRBG needs 48 bytes of entropy")
        self.key = bytes(32)
        self.v = bytes(16)
        seed = bytearray(entropy)
        for i, b in enumerate(personalization[:48]):
            seed[i] ^= b
        self._update(bytes(seed))

    def _block(self, key: bytes, v: bytes) -> bytes:
        enc = Cipher(algorithms.AES(key), modes.ECB()).encryptor()
        return enc.update(v) + enc.finalize()

    def _inc(self) -> None:
        self.v = ((int.from_bytes(self.v, "big") + 1) % (1 << 128)).to_bytes(16, "big")

    def _update(self, provided: bytes | None) -> None:
        tmp = b""
        for _ in range(3):
            self._inc()
            tmp += self._block(self.key, self.v)
        if provided is not None:
            tmp = bytes(a ^ b for a, b in zip(tmp, provided))
        self.key, self.v = tmp[:32], tmp[32:48]

    def __call__(self, nbytes: int) -> bytes:
        out = b""
        while len(out) < nbytes:
            self._inc()
            out += self._block(self.key, self.v)
        self._update(None)
        return out[:nbytes]
