"""Polynomial containers, noise sampling and matrix expansion.

Containers wrap int64 numpy arrays (canonical coefficients in [0, q)) and a
domain tag: ``"normal"`` or ``("ntt", alpha, beta)``.  The KEM code works on
the raw arrays for speed; the wrappers exist so that mixing domains is an
error rather than silently wrong arithmetic.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .ntt import NttPlan
from .params import ParamSet

NORMAL = "normal"


def ntt_domain(pl: NttPlan) -> tuple:
    return ("ntt", pl.alpha, pl.beta)


class DomainError(ValueError):
    pass


@dataclass(frozen=True)
class Poly:
    coeffs: np.ndarray
    q: int
    domain: object = NORMAL

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=np.int64) % self.q
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def n(self) -> int:
        return self.coeffs.shape[-1]

    def __eq__(self, other):
        return (isinstance(other, Poly) and self.q == other.q and self.domain == other.domain
                and np.array_equal(self.coeffs, other.coeffs))

    __hash__ = None


@dataclass(frozen=True)
class PolyVec:
    elems: np.ndarray  # (l, n)
    q: int
    domain: object = NORMAL

    def __post_init__(self):
        c = np.asarray(self.elems, dtype=np.int64) % self.q
        if c.ndim != 2:
            raise ValueError("PolyVec needs a (l, n) array")
        c.setflags(write=False)
        object.__setattr__(self, "elems", c)

    def __len__(self):
        return self.elems.shape[0]

    def __getitem__(self, i) -> Poly:
        return Poly(self.elems[i], self.q, self.domain)

    def __eq__(self, other):
        return (isinstance(other, PolyVec) and self.q == other.q and self.domain == other.domain
                and np.array_equal(self.elems, other.elems))

    __hash__ = None


@dataclass(frozen=True)
class Matrix:
    rows: np.ndarray  # (l, l, n), always NTT domain
    q: int
    domain: object

    def __getitem__(self, ij) -> Poly:
        i, j = ij
        return Poly(self.rows[i, j], self.q, self.domain)


def _same(a, b):
    if type(a) is not type(b):
        raise TypeError("operands must have the same container type")
    if a.domain != b.domain:
        raise DomainError(f"domain mismatch: {a.domain} vs {b.domain}")
    if a.q != b.q:
        raise ValueError("modulus mismatch")


def _data(x):
    return x.coeffs if isinstance(x, Poly) else x.elems


def _wrap(x, data):
    if isinstance(x, Poly):
        return Poly(data, x.q, x.domain)
    return PolyVec(data, x.q, x.domain)


def add(a, b):
    _same(a, b)
    return _wrap(a, (_data(a) + _data(b)) % a.q)


def sub(a, b):
    _same(a, b)
    return _wrap(a, (_data(a) - _data(b)) % a.q)


def pointwise_acc(a: PolyVec, b: PolyVec, pl: NttPlan) -> Poly:
    """Inner product of two NTT-domain vectors (one basecase product per entry).

    The result stays in the NTT domain with the Montgomery factor removed.
    """
    _same(a, b)
    if a.domain != ntt_domain(pl):
        raise DomainError("pointwise_acc needs operands in the plan's NTT domain")
    acc = pl.basemul(a.elems, b.elems).sum(axis=0)
    return Poly(acc * (1 << 16) % a.q, a.q, a.domain)


def to_ntt(x, pl: NttPlan):
    if x.domain != NORMAL:
        raise DomainError("already in the NTT domain")
    return type(x)(pl.forward(_data(x)), x.q, ntt_domain(pl))


def from_ntt(x, pl: NttPlan):
    if x.domain != ntt_domain(pl):
        raise DomainError("not in this plan's NTT domain")
    return type(x)(pl.inverse(_data(x)), x.q, NORMAL)


# -- sampling ---------------------------------------------------------------

def cbd(buf: bytes, eta: int, n: int) -> np.ndarray:
    """Centered binomial samples in [-eta, eta] from little-endian bits.

    Coefficient i is popcount(bits[2 i eta, 2 i eta + eta)) minus
    popcount(bits[2 i eta + eta, 2 i eta + 2 eta)).
    """
    if eta not in (1, 2, 3, 4):
        raise ValueError("eta must be 1..4")
    need = 2 * eta * n // 8
    if len(buf) < need:
        raise ValueError(f"cbd needs {need} bytes, got {len(buf)}")
    bits = np.unpackbits(np.frombuffer(buf[:need], dtype=np.uint8), bitorder="little")
    bits = bits.reshape(n, 2, eta).sum(axis=2, dtype=np.int64)
    return bits[:, 0] - bits[:, 1]


def cbd_sample(buf: bytes, eta: int, n: int, q: int) -> Poly:
    return Poly(cbd(buf, eta, n), q)


def prf(seed: bytes, nonce: int, length: int) -> bytes:
    return hashlib.shake_256(seed + bytes([nonce])).digest(length)


def noise(seed: bytes, nonce: int, eta: int, n: int) -> np.ndarray:
    return cbd(prf(seed, nonce, eta * n // 4), eta, n)


def rejection_sample(stream: bytes, q: int, n: int) -> tuple[np.ndarray, int]:
    """Uniform coefficients from a byte stream; returns (values, accepted).

    q = 3329 reads 12-bit candidates (three bytes -> two); q = 7681 reads
    two little-endian bytes masked to 13 bits.  Candidates >= q are dropped.
    """
    b = np.frombuffer(stream, dtype=np.uint8).astype(np.int64)
    if q.bit_length() == 12:
        b = b[: len(b) // 3 * 3].reshape(-1, 3)
        d1 = b[:, 0] | ((b[:, 1] & 0x0F) << 8)
        d2 = (b[:, 1] >> 4) | (b[:, 2] << 4)
        cand = np.stack((d1, d2), axis=1).reshape(-1)
    elif q.bit_length() == 13:
        b = b[: len(b) // 2 * 2].reshape(-1, 2)
        cand = (b[:, 0] | (b[:, 1] << 8)) & 0x1FFF
    else:
        raise ValueError(f"no candidate scheme for q={q}")
    ok = cand[cand < q]
    return ok[:n], len(ok)


def sample_uniform(rho: bytes, i: int, j: int, q: int, n: int) -> np.ndarray:
    """One matrix entry: SHAKE-128(rho || i || j) rejection-sampled."""
    xof = hashlib.shake_128(rho + bytes([i, j]))
    length = 3 * n if q.bit_length() == 12 else 2 * n
    length = -(-length * 5 // 4 // 168) * 168
    while True:
        vals, got = rejection_sample(xof.digest(length), q, n)
        if got >= n:
            return vals
        length += 168 * 2


@lru_cache(maxsize=64)
def _matrix(rho: bytes, q: int, n: int, l: int, transposed: bool) -> np.ndarray:
    a = np.empty((l, l, n), dtype=np.int64)
    for i in range(l):
        for j in range(l):
            a[i, j] = sample_uniform(rho, i, j, q, n) if transposed else sample_uniform(rho, j, i, q, n)
    a.setflags(write=False)
    return a


def gen_matrix_array(rho: bytes, p: ParamSet, transposed: bool = False) -> np.ndarray:
    if len(rho) != p.seed_bytes:
        raise ValueError(f"rho must be {p.seed_bytes} bytes")
    return _matrix(bytes(rho), p.q, p.n, p.l, bool(transposed))


def gen_matrix(rho: bytes, p: ParamSet, transposed: bool = False) -> Matrix:
    """The public matrix A (or its transpose), generated in the NTT domain.

    Entry (i, j) absorbs rho || j || i; the transposed matrix absorbs
    rho || i || j, so gen_matrix(rho, p, True)[i, j] == gen_matrix(rho, p)[j, i].
    """
    return Matrix(gen_matrix_array(rho, p, transposed), p.q,
                  ("ntt", p.alpha, p.beta))
