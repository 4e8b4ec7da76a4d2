"""Command-line interface: ``python -m oskr <command> ...``.

Exit codes: 0 success, 1 malformed input, 2 internal invariant violation.
"""
from __future__ import annotations

import argparse
import json
import statistics
import sys
import time
from pathlib import Path

import numpy as np

from . import failure, kem, ntt
from .params import PRESET_NAMES, bandwidth, encoded_sizes, preset
from .symmetric import NistDrbg, ShakeStream, os_random

NIST_ENTROPY = bytes(range(48))


class InputError(Exception):
    pass


class InvariantError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _hex(s: str) -> bytes:
    try:
        return bytes.fromhex(s)
    except ValueError:
        raise InputError(f"not a hex string: {s!r}") from None


def _rng(args):
    return ShakeStream(_hex(args.seed)) if args.seed else os_random


def _read(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None


def _write(path: str, data: bytes) -> None:
    try:
        Path(path).write_bytes(data)
    except OSError as e:
        raise InputError(f"cannot write {path}: {e.strerror}") from None


def _emit(args, rows: dict) -> None:
    if getattr(args, "json", False):
        print(json.dumps(rows, indent=2))
    else:
        width = max(len(k) for k in rows)
        for k, v in rows.items():
            print(f"{k:<{width}}  {v}")


# -- commands ---------------------------------------------------------------

def cmd_params(args) -> int:
    p = preset(args.name)
    pk, ct, sk = encoded_sizes(p)
    rows = {
        "name": p.name, "n": p.n, "q": p.q, "m": p.m, "l": p.l,
        "eta_s": p.eta_s, "eta_e": p.eta_e, "eta_k": p.eta_k,
        "d_k": p.d_k, "d_u": p.d_u, "d_v": p.d_v, "g": p.g,
        "t_k": p.logq - p.d_k, "t_u": p.logq - p.d_u,
        "alpha": p.alpha, "beta": p.beta, "runs": p.runs,
        "seed_bytes": p.seed_bytes, "key_bytes": p.key_bytes,
        "pk": pk, "ct": ct, "sk": sk, "bandwidth": bandwidth(p),
    }
    if args.json:
        print(json.dumps(rows, indent=2))
        return 0
    _emit(args, rows)
    print(" ".join(f"{k}={v}" for k, v in rows.items()))
    return 0


def cmd_keygen(args) -> int:
    p = preset(args.preset)
    kp = kem.kem_keygen(p, _rng(args))
    _write(args.out + ".pk", kp.pk)
    _write(args.out + ".sk", kp.sk)
    print(f"wrote {args.out}.pk ({len(kp.pk)} bytes) and {args.out}.sk ({len(kp.sk)} bytes)")
    return 0


def cmd_encaps(args) -> int:
    p = preset(args.preset)
    pk = _read(args.inp)
    try:
        ct, ss = kem.encaps(pk, p, _rng(args))
    except ValueError as e:
        raise InputError(str(e)) from None
    _write(args.out + ".ct", ct)
    _write(args.out + ".ss", ss)
    print(f"wrote {args.out}.ct ({len(ct)} bytes) and {args.out}.ss ({len(ss)} bytes)")
    return 0


def cmd_decaps(args) -> int:
    p = preset(args.preset)
    sk, ct = _read(args.inp), _read(args.ct)
    try:
        ss = kem.decaps(sk, ct, p, args.variant or "akcn")
    except ValueError as e:
        raise InputError(str(e)) from None
    if args.out:
        _write(args.out, ss)
    print(ss.hex())
    return 0


def kat_records(name: str, count: int, entropy: bytes = NIST_ENTROPY):
    p = preset(name)
    master = NistDrbg(entropy)
    seeds = [master(48) for _ in range(count)]
    for i, seed in enumerate(seeds):
        rng = NistDrbg(seed)
        kp = kem.kem_keygen(p, rng)
        ct, ss = kem.encaps(kp.pk, p, rng)
        if kem.decaps(kp.sk, ct, p) != ss:
            raise InvariantError(f"decapsulation mismatch in vector {i}")
        yield {"count": i, "seed": seed, "pk": kp.pk, "sk": kp.sk, "ct": ct, "ss": ss}


def format_kat(name: str, records) -> str:
    out = [f"# {name}", ""]
    for r in records:
        out.append(f"count = {r['count']}")
        for k in ("seed", "pk", "sk", "ct", "ss"):
            out.append(f"{k} = {r[k].hex().upper()}")
        out.append("")
    return "\n".join(out)


def cmd_kat(args) -> int:
    if args.count < 0:
        raise InputError("--count must be non-negative")
    entropy = _hex(args.seed) if args.seed else NIST_ENTROPY
    if len(entropy) != 48:
        raise InputError("--seed for kat must be 48 bytes (96 hex digits)")
    text = format_kat(args.preset, kat_records(args.preset, args.count, entropy))
    if args.out:
        _write(args.out, text.encode())
    else:
        print(text)
    return 0


def cmd_delta(args) -> int:
    p = preset(args.preset)
    rep = failure.delta_report(p, args.variant, args.model)
    if args.json:
        print(json.dumps({"preset": p.name, "variant": rep.variant, "model": rep.model,
                          "log2_delta": rep.log2_delta, "window": rep.window,
                          "sizes": rep.sizes}, indent=2))
        return 0
    print(f"{rep.log2_delta:.2f}")
    print("window " + " ".join(f"{w:g}" for w in rep.window))
    print("sizes " + " ".join(f"{k}={v}" for k, v in rep.sizes.items()))
    return 0


def cmd_ntt_report(args) -> int:
    try:
        measured = ntt.measure(args.variant, args.n, args.q, args.alpha, args.beta)
        formula = ntt.complexity_formula(args.variant, args.n, args.alpha, args.beta)
    except ValueError as e:
        raise InputError(str(e)) from None
    ok = measured == formula
    rows = {"variant": args.variant, "n": args.n, "q": args.q, "alpha": args.alpha,
            "beta": args.beta, "measured_muls": measured[0], "measured_adds": measured[1],
            "formula_muls": formula[0], "formula_adds": formula[1],
            "result": "pass" if ok else "FAIL"}
    _emit(args, rows)
    if not ok:
        raise InvariantError("measured operation counts differ from the closed form")
    return 0


def _median_ns(fn, count: int) -> float:
    times = []
    for _ in range(count):
        t = time.perf_counter_ns()
        fn()
        times.append(time.perf_counter_ns() - t)
    return statistics.median(times)


def _interleaved_medians(fns: dict, count: int) -> dict:
    """Median ns per function, alternating the call order every iteration so
    that clock drift and cache state hit every function alike."""
    names = list(fns)
    times = {k: [] for k in names}
    for i in range(count):
        for k in (names if i % 2 == 0 else names[::-1]):
            t = time.perf_counter_ns()
            fns[k]()
            times[k].append(time.perf_counter_ns() - t)
    return {k: statistics.median(v) for k, v in times.items()}


def bench_ntt(n: int, q: int, count: int, layouts=((0, 0), (1, 1))) -> dict:
    """Median timings of forward, inverse, basemul and full multiplication
    for each layout; layouts are measured interleaved."""
    rng = np.random.default_rng(0)
    f = rng.integers(0, q, n)
    g = rng.integers(0, q, n)
    plans = {}
    for a, b in layouts:
        pl = ntt.plan(n, q, a, b)
        fh, gh = pl.forward(f), pl.forward(g)
        plans[f"{pl.variant}({a},{b})"] = (pl, fh, gh, pl.basemul(fh, gh))
    out = {k: {} for k in plans}
    ops = {
        "ntt": lambda pl, fh, gh, hh: pl.forward(f),
        "invntt": lambda pl, fh, gh, hh: pl.inverse(hh, tomont=True),
        "basemul": lambda pl, fh, gh, hh: pl.basemul(fh, gh),
        "total": lambda pl, fh, gh, hh: pl.multiply(f, g),
    }
    for op, fn in ops.items():
        med = _interleaved_medians({k: (lambda v=v: fn(*v)) for k, v in plans.items()}, count)
        for k, t in med.items():
            out[k][op] = t
    return out


def cmd_bench(args) -> int:
    count = args.count
    if count < 1:
        raise InputError("--count must be positive")
    res = bench_ntt(args.n, args.q, count)
    if args.preset:
        p = preset(args.preset)
        kp = kem.kem_keygen(p)
        ct, _ = kem.encaps(kp.pk, p)
        res[p.name] = {
            "keygen": _median_ns(lambda: kem.kem_keygen(p), count),
            "encaps": _median_ns(lambda: kem.encaps(kp.pk, p), count),
            "decaps": _median_ns(lambda: kem.decaps(kp.sk, ct, p), count),
        }
    if args.json:
        print(json.dumps(res, indent=2))
        return 0
    print(f"median over {count} runs, nanoseconds")
    for name, row in res.items():
        print(f"{name:<12} " + "  ".join(f"{k}={v:.0f}" for k, v in row.items()))
    keys = list(res)
    c, h = res[keys[0]]["total"], res[keys[1]]["total"]
    print(f"H-NTT vs classic multiplication: {100 * (c - h) / c:+.2f}% time saved")
    cm = ntt.complexity_formula("classic", args.n)
    hm = ntt.complexity_formula("h", args.n, 1, 1)
    print(f"ring operations (muls, adds): classic {cm}  h(1,1) {hm}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="oskr", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    s = sub.add_parser("params", help="print a parameter set and its sizes")
    s.add_argument("name", choices=PRESET_NAMES)
    s.add_argument("--json", action="store_true")
    s.set_defaults(fn=cmd_params)

    s = sub.add_parser("keygen", help="generate a key pair")
    s.add_argument("--preset", required=True, choices=PRESET_NAMES)
    s.add_argument("--out", required=True, help="output prefix; writes PREFIX.pk and PREFIX.sk")
    s.add_argument("--seed", help="hex seed for a deterministic random stream")
    s.set_defaults(fn=cmd_keygen)

    s = sub.add_parser("encaps", help="encapsulate against a public key")
    s.add_argument("--preset", required=True, choices=PRESET_NAMES)
    s.add_argument("--in", dest="inp", required=True, help="public key file")
    s.add_argument("--out", required=True, help="output prefix; writes PREFIX.ct and PREFIX.ss")
    s.add_argument("--seed")
    s.set_defaults(fn=cmd_encaps)

    s = sub.add_parser("decaps", help="decapsulate a ciphertext")
    s.add_argument("--preset", required=True, choices=PRESET_NAMES)
    s.add_argument("--in", dest="inp", required=True, help="secret key file")
    s.add_argument("--ct", required=True, help="ciphertext file")
    s.add_argument("--out", help="write the shared key here as raw bytes")
    s.add_argument("--variant", choices=("akcn", "original"))
    s.set_defaults(fn=cmd_decaps)

    s = sub.add_parser("kat", help="known-answer vectors in the NIST text layout")
    s.add_argument("--preset", required=True, choices=PRESET_NAMES)
    s.add_argument("--count", type=int, default=100)
    s.add_argument("--seed", help="48-byte DRBG entropy in hex (default 00 01 .. 2f)")
    s.add_argument("--out")
    s.set_defaults(fn=cmd_kat)

    s = sub.add_parser("delta", help="log2 decryption failure probability")
    s.add_argument("--preset", required=True, choices=PRESET_NAMES)
    s.add_argument("--variant", choices=("akcn", "original"), default="akcn")
    s.add_argument("--model", choices=failure.MODELS, default="table")
    s.add_argument("--json", action="store_true")
    s.set_defaults(fn=cmd_delta)

    s = sub.add_parser("ntt-report", help="measured vs closed-form operation counts")
    s.add_argument("--variant", choices=("classic", "t", "pt", "h"), default="h")
    s.add_argument("--n", type=int, default=256)
    s.add_argument("--q", type=int, default=7681)
    s.add_argument("--alpha", type=int, default=1)
    s.add_argument("--beta", type=int, default=1)
    s.add_argument("--json", action="store_true")
    s.set_defaults(fn=cmd_ntt_report)

    s = sub.add_parser("bench", help="median timings of NTT multiplication (and a KEM)")
    s.add_argument("--n", type=int, default=256)
    s.add_argument("--q", type=int, default=7681)
    s.add_argument("--preset", choices=PRESET_NAMES)
    s.add_argument("--count", type=int, default=1000)
    s.add_argument("--json", action="store_true")
    s.set_defaults(fn=cmd_bench)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except InvariantError as e:
        print(f"internal error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
