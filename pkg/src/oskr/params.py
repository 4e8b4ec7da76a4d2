"""Parameter sets for OSKR, OKAI and the three 512-bit-key approaches.

Every preset is an immutable :class:`ParamSet`.  Sizes that the tables list
(|pk|, |ct|, |B|) are derived here from the parameters rather than stored, so
the numbers can never drift apart from the arithmetic that produces them.
"""
from __future__ import annotations

from dataclasses import dataclass, replace

APPROACHES = ("twice", "wide_message", "double_dim")


def log2_ceil(x: int) -> int:
    return (x - 1).bit_length()


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    i = 2
    while i * i <= q:
        if q % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class ParamSet:
    """One row of the parameter tables.

    ``eta_k`` is the bound used for the key-generation error ``e``.  Kyber
    draws it from the secret distribution (eta_1), Aigis/OKAI from the error
    distribution; keeping it explicit lets OSKR-512 stay byte-compatible with
    Kyber-512 where eta_s != eta_e.

    ``runs`` is 2 for approach 1 (the base KEM executed twice under one
    public key) and 1 otherwise.
    """

    name: str
    n: int
    q: int
    m: int
    l: int
    eta_s: int
    eta_e: int
    d_k: int
    d_u: int
    d_v: int
    alpha: int
    beta: int
    eta_k: int
    runs: int = 1
    approach: str | None = None

    def __post_init__(self):
        problems = self.violations()
        if problems:
            raise ValueError(f"invalid parameter set {self.name}: " + "; ".join(problems))

    def violations(self) -> list[str]:
        out = []
        if not is_prime(self.q):
            out.append("q is not prime")
        if self.n < 1 or self.n & (self.n - 1):
            out.append("n is not a power of two")
        if self.m < 2 or self.m & (self.m - 1):
            out.append("m is not a power of two")
        elif (1 << self.d_v) % self.m:
            out.append("m does not divide 2^d_v")
        logq = log2_ceil(self.q)
        if not self.d_v < logq:
            out.append("d_v must be below ceil(log2 q)")
        if self.d_u > logq or self.d_k > logq:
            out.append("d_u and d_k must not exceed ceil(log2 q)")
        if self.alpha < 0 or self.beta < 0 or (1 << (self.alpha + self.beta)) > self.n:
            out.append("alpha/beta out of range")
        elif (self.q - 1) % self.ntt_order:
            out.append(f"{self.ntt_order} does not divide q-1 (no NTT roots)")
        if self.runs not in (1, 2):
            out.append("runs must be 1 or 2")
        if self.approach is not None and self.approach not in APPROACHES:
            out.append(f"unknown approach {self.approach!r}")
        return out

    @property
    def ntt_order(self) -> int:
        # order of the root of unity the layout needs: n / 2^(alpha+beta-1)
        return (2 * self.n) >> (self.alpha + self.beta)

    @property
    def d_m(self) -> int:
        return self.m.bit_length() - 1

    @property
    def g(self) -> int:
        return 1 << self.d_v

    @property
    def logq(self) -> int:
        return log2_ceil(self.q)

    @property
    def seed_bytes(self) -> int:
        return 32 if self.n == 256 else 64

    @property
    def msg_bytes(self) -> int:
        """Bytes carried by one encryption (n * d_m bits)."""
        return self.n * self.d_m // 8

    @property
    def hash_bytes(self) -> int:
        # H(pk), z and the pre-key all match the message width
        return self.msg_bytes

    @property
    def key_bytes(self) -> int:
        """Length of the shared key handed to the caller."""
        return self.runs * self.msg_bytes

    @property
    def compress_pk(self) -> bool:
        """True when t is compressed (and therefore sent in the normal domain)."""
        return self.d_k < self.logq


def _check_bytes(bits: int, what: str) -> int:
    if bits % 8:
        raise ValueError(f"{what} is not byte aligned ({bits} bits)")
    return bits // 8


def encoded_sizes(p: ParamSet) -> tuple[int, int, int]:
    """(pk, ct, sk) byte lengths of the KEM encodings.

    sk = packed secret (ceil(log2 q) bits per coefficient) || pk || H(pk) || z.
    For approach 1 the ciphertext is two base ciphertexts back to back.
    """
    n, l = p.n, p.l
    pk = _check_bytes(n * l * p.d_k, "pk") + p.seed_bytes
    ct = _check_bytes(n * l * p.d_u + n * p.d_v, "ct") * p.runs
    sk = _check_bytes(n * l * p.logq, "sk") + pk + 2 * p.hash_bytes
    return pk, ct, sk


def bandwidth_bits(n: int, l: int, d_k: int, d_u: int, d_v: int, approach: str) -> int:
    """|pk| + |ct| in bits; the leading n is the public seed (n bits)."""
    if approach == "twice":
        return n + n * l * d_k + 2 * (n * l * d_u + n * d_v)
    if approach in ("wide_message", "double_dim"):
        return n + n * l * d_k + n * l * d_u + n * d_v
    raise ValueError(f"unknown approach {approach!r}; expected one of {APPROACHES}")


def bandwidth(p: ParamSet, approach: str | None = None) -> int:
    """|pk| + |ct| in bytes for the given approach."""
    approach = approach or p.approach or "double_dim"
    if approach == "twice" and p.runs != 2:
        raise ValueError("the 'twice' approach needs a parameter set with runs=2")
    if approach != "twice" and p.runs != 1:
        raise ValueError(f"{p.name} runs twice; use approach='twice'")
    bits = bandwidth_bits(p.n, p.l, p.d_k, p.d_u, p.d_v, approach)
    seed_bits = p.seed_bytes * 8
    return _check_bytes(bits - p.n + seed_bits, "bandwidth")


_PRESETS: dict[str, ParamSet] = {}


def _add(ps: ParamSet) -> None:
    _PRESETS[ps.name] = ps


_add(ParamSet("oskr512", 256, 3329, 2, 2, 3, 2, 12, 10, 4, alpha=0, beta=1, eta_k=3))
_add(ParamSet("oskr768", 256, 3329, 2, 3, 2, 2, 12, 10, 4, alpha=0, beta=1, eta_k=2))
_add(ParamSet("oskr1024", 512, 3329, 2, 2, 2, 2, 12, 11, 5, alpha=1, beta=1, eta_k=2))
_add(ParamSet("okai512", 256, 7681, 2, 2, 1, 4, 9, 8, 4, alpha=0, beta=1, eta_k=4))
_add(ParamSet("okai768", 256, 7681, 2, 3, 1, 4, 9, 9, 4, alpha=0, beta=1, eta_k=4))
_add(ParamSet("okai1024", 512, 7681, 2, 2, 1, 4, 10, 10, 3, alpha=1, beta=1, eta_k=4))
# approach 1: Kyber-1024 run twice under the same public key
_add(ParamSet("approach1", 256, 3329, 2, 4, 2, 2, 12, 11, 5, alpha=0, beta=1, eta_k=2,
              runs=2, approach="twice"))
# approach 2: two message bits per coefficient with q = 7681
_add(ParamSet("approach2", 256, 7681, 4, 4, 2, 2, 13, 11, 7, alpha=0, beta=1, eta_k=2,
              approach="wide_message"))
# approach 3 is OSKR-1024
_add(replace(_PRESETS["oskr1024"], name="approach3", approach="double_dim"))

SCHEMES = ("oskr512", "oskr768", "oskr1024", "okai512", "okai768", "okai1024")
PRESET_NAMES = tuple(_PRESETS)


def preset(name: str) -> ParamSet:
    try:
        return _PRESETS[name]
    except KeyError:
        raise ValueError(
            f"unknown preset {name!r}; choose from {', '.join(PRESET_NAMES)}"
        ) from None


def single_run(p: ParamSet) -> ParamSet:
    """The base scheme of a twice-run preset (identity for the others)."""
    if p.runs == 1:
        return p
    return replace(p, name=p.name + "-single", runs=1, approach=None)
