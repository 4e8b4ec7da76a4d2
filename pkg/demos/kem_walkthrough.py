#!/usr/bin/env python3
"""Key exchange with every preset: sizes, a round trip, and a tampered ciphertext.

    python3 demos/kem_walkthrough.py
"""
from oskr import kem
from oskr.params import PRESET_NAMES, bandwidth, encoded_sizes, preset
from oskr.symmetric import ShakeStream

print(f"{'preset':<10} {'pk':>5} {'ct':>5} {'sk':>5} {'bw':>5} {'key':>4}  round trip  tamper")
for name in PRESET_NAMES:
    p = preset(name)
    rng = ShakeStream(b"demo " + name.encode())
    kp = kem.kem_keygen(p, rng)
    ct, k = kem.encaps(kp.pk, p, rng)
    ok = kem.decaps(kp.sk, ct, p) == k

    # flip one bit: decapsulation still returns a key, just not the sender's
    bad = bytes([ct[0] ^ 1]) + ct[1:]
    rejected = kem.decaps(kp.sk, bad, p) != k

    pk, ctl, sk = encoded_sizes(p)
    print(f"{name:<10} {pk:>5} {ctl:>5} {sk:>5} {bandwidth(p):>5} {8 * len(k):>4}"
          f"  {'ok' if ok else 'MISMATCH':<10}  {'rejected' if rejected else 'ACCEPTED'}")

# the three ways to reach a 512-bit key
print()
for name, fn in [("approach1", kem.encaps_approach1), ("approach2", kem.encaps_approach2),
                 ("approach3", kem.encaps_approach3)]:
    p = preset(name)
    kp = kem.kem_keygen(p, ShakeStream(name.encode()))
    ct, k = fn(kp.pk, p, ShakeStream(b"e"))
    print(f"{name}: {len(ct)}-byte ciphertext carries a {8 * len(k)}-bit key"
          f" (n={p.n}, q={p.q}, m={p.m}, runs={p.runs})")
