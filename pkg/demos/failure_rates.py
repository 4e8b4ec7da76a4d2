#!/usr/bin/env python3
"""Decryption failure probabilities, single- vs two-rounding decryption.

The 'table' model keeps the integer values of the v rounding error and
reproduces the published single-rounding figures; 'exact' sums over every
value.  The two-rounding rule has integer rounding error only.

    python3 demos/failure_rates.py          (about a minute)
"""
from oskr import failure
from oskr.params import PRESET_NAMES, preset, single_run

print(f"{'preset':<10} {'akcn table':>11} {'akcn exact':>11} {'original':>9}  gain")
for name in PRESET_NAMES:
    p = preset(name)
    t = failure.delta(p, "akcn", "table")
    e = failure.delta(p, "akcn", "exact")
    o = failure.delta(p, "original")
    print(f"{name:<10} {t:>11.2f} {e:>11.2f} {o:>9.2f}  {o - e:+.2f} bits")

p = single_run(preset("approach1"))
print(f"\none run of approach1 (Kyber-1024 parameters), original rule: {failure.delta(p, 'original'):.2f}")

rep = failure.delta_report(preset("oskr512"))
print(f"oskr512 noise law: window {rep.window}, support sizes {rep.sizes}")
