#!/usr/bin/env python3
"""The four NTT pipelines at n=256, q=7681: counts, the T/Pt relation, tables, time.

    python3 demos/ntt_variants.py
"""
import numpy as np

from oskr import cli, ntt
from oskr.params import SCHEMES, preset

n, q = 256, 7681
print("multiplications and additions for one ring product")
print(f"  classic        {ntt.measure('classic', n, q)}")
for a in (1, 2):
    print(f"  pt  alpha={a}    {ntt.measure('pt', n, q, a)}")
for b in (1, 2):
    print(f"  t   beta={b}     {ntt.measure('t', n, q, 0, b)}")
for a, b in [(1, 1), (1, 2), (2, 1), (2, 2)]:
    print(f"  h   ({a},{b})      {ntt.measure('h', n, q, a, b)}  formula {ntt.complexity_formula('h', n, a, b)}")

# truncating one level equals splitting into two interleaved halves
f = np.random.default_rng(0).integers(0, q, n)
t1 = ntt.t_ntt(f, ntt.plan(n, q, 0, 1))
pt1 = ntt.pt_ntt(f, ntt.plan(n, q, 1, 0))
same = np.array_equal(t1[0::2], pt1[0]) and np.array_equal(t1[1::2], pt1[1])
print(f"\nT-NTT(beta=1) de-interleaved == Pt-NTT(alpha=1) halves: {same}")

dual = ntt.table_footprint([ntt.plan(256, 7681), ntt.plan(512, 12289)])
unified = ntt.table_footprint([ntt.plan_for(preset(s)) for s in SCHEMES if s.startswith("okai")])
print(f"root tables: two moduli {dual} bytes, one modulus {unified} bytes "
      f"({100 * (1 - unified / dual):.1f}% smaller)")

res = cli.bench_ntt(n, q, 300)
print("\nmedian ns over 300 interleaved runs (numpy, per-call overhead dominates)")
for k, row in res.items():
    print(f"  {k:<13} " + "  ".join(f"{op}={v:.0f}" for op, v in row.items()))
