"""Decryption-failure probability of the CPA core.

Per message coefficient the decryption error is

    Err = (e - eps1)^T r - s^T (e1 - eps2) + e2 - eps_v

where eps1, eps2, eps_v are the rounding errors of compressing t, u and v
(x - decompress(compress(x)) for x uniform on Z_q).  eps_v enters with a
minus sign because the decryptor sees v - eps_v; the akcn law of eps_v is
symmetric, and for the original rule the sign moves log2(delta) by less
than 0.005.  Every coefficient of
(e - eps1)^T r is a sum of n*l independent products, likewise for the s term,
so the law of the integer part C of Err is an exact convolution of small
product laws.  A coefficient decrypts correctly iff Err falls in the decoding
window [lo, hi) of the decryption rule; delta is the union bound over the n
coefficients (and over both runs for approach 1).

eps_v depends on the rule:

* original: v is decompressed first, so eps_v is the integer rounding error
  of decompress(compress(x, d_v), d_v).
* akcn: v/g is used directly, so eps_v = x - q c / g is a multiple of 1/g.

Two models are offered for akcn.  ``exact`` sums over every value of eps_v.
``table`` keeps only the integer values of eps_v; this is the model that
reproduces the published AKCN values (they sit about log2(g) bits below the
exact ones, because the integer values carry 1/g of the mass).  For
``original`` both models coincide.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .codec import compress, decompress
from .params import ParamSet

SUPPORT_CAP = 1 << 22
MODELS = ("table", "exact")


@dataclass(frozen=True)
class Pmf:
    """Probability mass on the integers lo, lo+1, ..., lo+len(p)-1."""

    lo: int
    p: np.ndarray = field(repr=False)

    def __post_init__(self):
        p = np.asarray(self.p)
        if p.ndim != 1 or p.size == 0:
            raise ValueError("Pmf needs a non-empty 1-d array")
        if p.size > SUPPORT_CAP:
            raise OverflowError(f"support of {p.size} exceeds the cap {SUPPORT_CAP}")
        object.__setattr__(self, "p", p)

    @classmethod
    def from_dict(cls, d: dict, dtype=np.float64) -> "Pmf":
        lo, hi = min(d), max(d)
        arr = np.zeros(hi - lo + 1, dtype=dtype)
        for k, v in d.items():
            arr[k - lo] += v
        return cls(lo, arr)

    @classmethod
    def point(cls, k: int = 0, dtype=np.float64) -> "Pmf":
        return cls(k, np.ones(1, dtype=dtype))

    @property
    def hi(self) -> int:
        return self.lo + len(self.p) - 1

    @property
    def support_size(self) -> int:
        return len(self.p)

    def as_dict(self) -> dict:
        return {self.lo + i: float(v) for i, v in enumerate(self.p) if v}

    def total(self) -> float:
        return math.fsum(self.p.tolist())

    def mean(self) -> float:
        return math.fsum((np.arange(self.lo, self.hi + 1) * self.p).tolist())

    def __getitem__(self, k: int) -> float:
        return float(self.p[k - self.lo]) if self.lo <= k <= self.hi else 0.0

    def tail_outside(self, lo: Fraction, hi: Fraction) -> float:
        """P(X < lo or X >= hi) for rational bounds."""
        below = math.ceil(lo) - self.lo       # indices with value < lo
        above = math.ceil(hi) - self.lo       # first index with value >= hi
        below = min(max(below, 0), len(self.p))
        above = min(max(above, 0), len(self.p))
        return math.fsum(self.p[:below].tolist()) + math.fsum(self.p[above:].tolist())


def pmf_cbd(eta: int, dtype=np.float64) -> Pmf:
    """Centered binomial: P(k) = C(2 eta, k + eta) / 4^eta."""
    if eta < 0:
        raise ValueError("eta must be non-negative")
    arr = np.array([math.comb(2 * eta, k) for k in range(2 * eta + 1)], dtype=dtype)
    return Pmf(-eta, arr / arr.sum())


def pmf_round_error(q: int, d: int, dtype=np.float64) -> Pmf:
    """x - decompress(compress(x, d), d), centered mod q, x uniform on Z_q."""
    x = np.arange(q, dtype=np.int64)
    err = (x - decompress(compress(x, d, q), d, q)) % q
    err = err - q * (err > q // 2)
    lo = int(err.min())
    counts = np.bincount(err - lo)
    return Pmf(lo, counts.astype(dtype) / q)


def epsv_rational(q: int, d_v: int) -> dict[Fraction, float]:
    """Law of x - q c / g with c = compress(x, d_v), x uniform on Z_q."""
    g = 1 << d_v
    x = np.arange(q, dtype=np.int64)
    c = compress(x, d_v, q)
    num = (g * x - q * c) % (g * q)
    num = num - g * q * (num > g * q // 2)
    vals, counts = np.unique(num, return_counts=True)
    return {Fraction(int(v), g): int(k) / q for v, k in zip(vals, counts)}


def pmf_convolve(a: Pmf, b: Pmf) -> Pmf:
    """Law of X + Y for independent X ~ a, Y ~ b."""
    if a.support_size + b.support_size - 1 > SUPPORT_CAP:
        raise OverflowError("convolution support exceeds the cap")
    return Pmf(a.lo + b.lo, np.convolve(a.p, b.p))


def pmf_product(a: Pmf, b: Pmf) -> Pmf:
    """Law of X * Y for independent X ~ a, Y ~ b."""
    xa = np.arange(a.lo, a.hi + 1)
    xb = np.arange(b.lo, b.hi + 1)
    vals = np.multiply.outer(xa, xb).ravel()
    probs = np.multiply.outer(a.p, b.p).ravel()
    lo = int(vals.min())
    size = int(vals.max()) - lo + 1
    if size > SUPPORT_CAP:
        raise OverflowError("product support exceeds the cap")
    out = np.zeros(size, dtype=a.p.dtype)
    np.add.at(out, vals - lo, probs)
    return Pmf(lo, out)


def pmf_iterated_sum(a: Pmf, count: int) -> Pmf:
    """Law of the sum of ``count`` independent copies, by repeated squaring."""
    if count < 0:
        raise ValueError("count must be non-negative")
    result = Pmf.point(0, a.p.dtype)
    base = a
    while count:
        if count & 1:
            result = pmf_convolve(result, base)
        count >>= 1
        if count:
            base = pmf_convolve(base, base)
    return result


def pmf_neg(a: Pmf) -> Pmf:
    return Pmf(-a.hi, a.p[::-1].copy())


def encoding_offsets(q: int, m: int) -> list[Fraction]:
    """eps_k = k q/m - decompress(k, d_m) for each message symbol k."""
    d_m = m.bit_length() - 1
    return [Fraction(k * q, m) - int(decompress(k, d_m, q)) for k in range(m)]


def decoding_window(q: int, m: int) -> tuple[Fraction, Fraction]:
    """[lo, hi): every symbol decodes correctly iff Err lies in this range.

    Symbol k is recovered iff -q/2m + eps_k <= Err < q/2m + eps_k, so the
    guaranteed range is the intersection over k.  For m = 2 this equals
    -q/2m + eps'(m-1) <= Err < q/2m (eps' >= 0) or
    -q/2m <= Err < q/2m + eps'(m-1) (eps' < 0), eps' = q/m - round(q/m).
    """
    eps = encoding_offsets(q, m)
    return Fraction(-q, 2 * m) + max(eps), Fraction(q, 2 * m) + min(eps)


def case_split_window(q: int, m: int) -> tuple[Fraction, Fraction]:
    """The window from the eps' case split, for encodings k * round(q/m)."""
    eps1 = Fraction(q, m) - math.floor(Fraction(q, m) + Fraction(1, 2))
    if eps1 >= 0:
        return Fraction(-q, 2 * m) + eps1 * (m - 1), Fraction(q, 2 * m)
    return Fraction(-q, 2 * m), Fraction(q, 2 * m) + eps1 * (m - 1)


@dataclass
class DeltaReport:
    name: str
    variant: str
    model: str
    log2_delta: float
    per_coefficient: float
    window: tuple
    sizes: dict


def noise_pmf(p: ParamSet, dtype=np.float64) -> tuple[Pmf, dict]:
    """Law of the integer part C of Err (everything except eps_v)."""
    full = p.logq
    eps1 = pmf_round_error(p.q, p.d_k, dtype) if p.d_k < full else Pmf.point(0, dtype)
    eps2 = pmf_round_error(p.q, p.d_u, dtype) if p.d_u < full else Pmf.point(0, dtype)
    term1 = pmf_product(pmf_convolve(pmf_cbd(p.eta_k, dtype), pmf_neg(eps1)), pmf_cbd(p.eta_s, dtype))
    term2 = pmf_product(pmf_cbd(p.eta_s, dtype), pmf_convolve(pmf_cbd(p.eta_e, dtype), pmf_neg(eps2)))
    k = p.n * p.l
    s1 = pmf_iterated_sum(term1, k)
    s2 = pmf_iterated_sum(term2, k)
    c = pmf_convolve(pmf_convolve(s1, pmf_neg(s2)), pmf_cbd(p.eta_e, dtype))
    sizes = {"eps1": eps1.support_size, "eps2": eps2.support_size,
             "term1": term1.support_size, "term2": term2.support_size,
             "sum1": s1.support_size, "sum2": s2.support_size, "err": c.support_size}
    return c, sizes


def coefficient_failure(c: Pmf, p: ParamSet, variant: str, model: str = "table") -> tuple[float, tuple]:
    lo, hi = decoding_window(p.q, p.m)
    if variant == "original":
        ev = pmf_round_error(p.q, p.d_v, c.p.dtype)
        return pmf_convolve(c, pmf_neg(ev)).tail_outside(lo, hi), (lo, hi)
    if variant != "akcn":
        raise ValueError(f"unknown variant {variant!r}")
    if model not in MODELS:
        raise ValueError(f"unknown model {model!r}; expected one of {MODELS}")
    # prefix sums from each end keep the tiny tails accurate
    left = np.concatenate(([0.0], np.cumsum(c.p)))
    right = np.concatenate((np.cumsum(c.p[::-1])[::-1], [0.0]))
    size = len(c.p)
    terms = []
    for e, pe in epsv_rational(p.q, p.d_v).items():
        if model == "table" and e.denominator != 1:
            continue
        # C - e outside [lo, hi)  <=>  C < lo + e or C >= hi + e
        below = min(max(math.ceil(lo + e) - c.lo, 0), size)
        above = min(max(math.ceil(hi + e) - c.lo, 0), size)
        terms.append(pe * (float(left[below]) + float(right[above])))
    return math.fsum(terms), (lo, hi)


def aggregate(p_coef: float, p: ParamSet) -> float:
    """Union bound over coefficients; independent runs for approach 1."""
    single = p.n * p_coef
    if p.runs == 1:
        return single
    return -math.expm1(p.runs * math.log1p(-single))


def delta_report(p: ParamSet, variant: str = "akcn", model: str = "table",
                 dtype=np.float64) -> DeltaReport:
    c, sizes = noise_pmf(p, dtype)
    pc, window = coefficient_failure(c, p, variant, model)
    d = aggregate(pc, p)
    lg = math.log2(d) if d > 0 else -math.inf
    return DeltaReport(p.name, variant, model, lg, pc, tuple(float(x) for x in window), sizes)


def delta(p: ParamSet, variant: str = "akcn", model: str = "table", dtype=np.float64) -> float:
    """log2 of the failure probability (-inf when failure is impossible)."""
    return delta_report(p, variant, model, dtype).log2_delta
