"""Classic NTT, T-NTT, Pt-NTT and H-NTT with operation counting.

One engine covers all four transforms.  A plan (n, q, alpha, beta) splits a
polynomial into A = 2^alpha interleaved sub-polynomials f_i = f[i::A] of
length N = n/A (Pt-NTT split), and transforms each with a Cooley-Tukey NTT
whose bottom beta levels are cropped (T-NTT), leaving S = N/B residues
modulo y^B - r_s with B = 2^beta.

    classic = (0, 0)    T-NTT = (0, beta)    Pt-NTT = (alpha, 0)    H-NTT = (alpha, beta)

Products in the transformed domain use the Karatsuba pair convolution twice:
across the A sub-transforms (wrapping with the factor y = x^A) and inside each
degree-B slot (wrapping with r_s).  The counters record exactly the Z_q
multiplications and additions of that schedule; Montgomery and Barrett
fix-ups are not ring operations and are not counted.

Arrays are int64 and may carry leading batch axes; the last axis is the
polynomial.  Counters add array sizes, so counting a batch counts every
member.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import modring
from .modring import LANE_MAX, barrett_reduce, fqmul


@dataclass
class OpCounter:
    muls: int = 0
    adds: int = 0

    def mul(self, k: int) -> None:
        self.muls += int(k)

    def add(self, k: int) -> None:
        self.adds += int(k)

    def as_tuple(self) -> tuple[int, int]:
        return self.muls, self.adds


class _Null:
    def mul(self, k):
        pass

    def add(self, k):
        pass


_NULL = _Null()


def bitrev(x: int, bits: int) -> int:
    return int(format(x, f"0{bits}b")[::-1], 2) if bits else 0


@lru_cache(maxsize=None)
def primitive_root(q: int, order: int) -> int:
    """Smallest element of multiplicative order exactly ``order`` mod q."""
    if (q - 1) % order:
        raise ValueError(f"no element of order {order} modulo {q}")
    for z in range(2, q):
        if pow(z, order, q) == 1 and (order == 1 or pow(z, order // 2, q) != 1):
            return z
    raise ValueError(f"no element of order {order} modulo {q}")


def karatsuba_pair(a: int, b: int, c: int, d: int, q: int = 3329) -> int:
    """a*d + b*c reusing the products a*c and b*d: (a+b)(c+d) - ac - bd."""
    ac = a * c % q
    bd = b * d % q
    return ((a + b) * (c + d) - ac - bd) % q


class _Tables:
    """Root tables for S slots of a negacyclic transform mod q (order 2S)."""

    def __init__(self, q: int, slots: int):
        self.q = q
        self.slots = slots
        self.levels = slots.bit_length() - 1
        self.zeta = primitive_root(q, 2 * slots)
        zinv = pow(self.zeta, -1, q)
        L = self.levels
        br = [bitrev(k, L) for k in range(slots)]
        self.zetas = np.array([pow(self.zeta, e, q) for e in br], dtype=np.int64)
        self.zetas_inv = np.array([pow(zinv, e, q) for e in br], dtype=np.int64)
        mont = modring.constants(q)["mont"]
        self.zetas_mont = modring.centered(self.zetas * mont, q)
        self.zetas_inv_mont = modring.centered(self.zetas_inv * mont, q)
        # slot s holds a residue mod (y^B - r_s), r_s = zeta^(2 br(s) + 1)
        self.roots = np.array([pow(self.zeta, 2 * e + 1, q) for e in br], dtype=np.int64)
        self.roots_mont = modring.centered(self.roots * mont, q)

    @property
    def nbytes(self) -> int:
        # zetas and zetas_inv, 16-bit entries
        return 2 * 2 * self.slots


@lru_cache(maxsize=None)
def _tables(q: int, slots: int) -> _Tables:
    return _Tables(q, slots)


# forward butterflies grow by q per level; q = 7681 gets a Barrett pass every
# two levels, other moduli only when the next level could leave the lane
_FWD_REDUCE_EVERY = {3329: 0, 7681: 2}


class NttPlan:
    def __init__(self, n: int, q: int, alpha: int = 0, beta: int = 0):
        if n & (n - 1) or alpha < 0 or beta < 0 or (1 << (alpha + beta)) > n:
            raise ValueError("n must be a power of two with 2^(alpha+beta) <= n")
        self.n, self.q, self.alpha, self.beta = n, q, alpha, beta
        self.A = 1 << alpha
        self.B = 1 << beta
        self.N = n >> alpha
        self.S = self.N >> beta
        if (q - 1) % (2 * self.S):
            raise ValueError(
                f"layout (n={n}, alpha={alpha}, beta={beta}) needs {2 * self.S} | q-1, q={q}"
            )
        self.tables = _tables(q, self.S)
        self.levels = self.tables.levels
        c = modring.constants(q)
        scale = pow(1 << self.levels, -1, q)
        self.n_inv = scale
        self._scale_mont = scale * c["mont"] % q
        self._scale_tomont = scale * c["mont2"] % q
        self._r2 = c["mont2"]
        self._fwd_schedule = self._forward_schedule()
        self._inv_schedule = self._inverse_schedule()
        self._outer = None
        # (reduce first?, groups, half-length, twiddles) per butterfly level
        fz, iz = self.tables.zetas_mont, self.tables.zetas_inv_mont
        half = [self.N >> (k + 1) for k in range(self.levels)]
        self._fwd_levels = [(red, self.N // (2 * h), h, fz[self.N // (2 * h):self.N // h, None])
                            for red, h in zip(self._fwd_schedule, half)]
        self._inv_levels = [(red, self.N // (2 * h), h, iz[self.N // (2 * h):self.N // h, None])
                            for red, h in zip(self._inv_schedule, half[::-1])]

    def __repr__(self):
        return f"NttPlan(n={self.n}, q={self.q}, alpha={self.alpha}, beta={self.beta})"

    @property
    def variant(self) -> str:
        return {(False, False): "classic", (False, True): "t", (True, False): "pt",
                (True, True): "h"}[(self.alpha > 0, self.beta > 0)]

    @property
    def zetas(self) -> np.ndarray:
        return self.tables.zetas

    @property
    def zetas_inv(self) -> np.ndarray:
        return self.tables.zetas_inv

    # -- lazy-reduction schedules and their interval bounds -----------------

    def _forward_schedule(self) -> list[bool]:
        q, every = self.q, _FWD_REDUCE_EVERY.get(self.q)
        out, bound = [], q - 1
        for lvl in range(self.levels):
            if every is not None:
                red = every > 0 and lvl > 0 and lvl % every == 0
            else:
                red = bound + q > LANE_MAX
            if red:
                bound = q - 1
            out.append(red)
            bound += q - 1
        return out

    def _inverse_schedule(self) -> list[bool]:
        q = self.q
        out, bound = [], q - 1
        for _ in range(self.levels):
            red = 2 * bound > LANE_MAX
            if red:
                bound = q - 1
            out.append(red)
            bound *= 2
        return out

    def lane_bounds(self) -> dict:
        """Worst-case |value| after each level under the reduction schedules.

        Forward butterflies add a Montgomery product (|t| < q) to a value, so
        the bound grows by q - 1 per level; inverse butterflies add two
        values, doubling it.  Every bound must fit a signed 16-bit lane and
        every Montgomery input must stay below 2^15 q in magnitude.
        """
        q = self.q
        fwd, inv = [], []
        bound = q - 1
        for red in self._fwd_schedule:
            if red:
                bound = q - 1
            mont_in = bound * (q // 2)
            bound += q - 1
            fwd.append((bound, mont_in))
        bound = q - 1
        for red in self._inv_schedule:
            if red:
                bound = q - 1
            mont_in = 2 * bound * (q // 2)
            bound *= 2
            inv.append((bound, mont_in))
        return {"forward": fwd, "inverse": inv}

    # -- the per-sub-polynomial transforms ----------------------------------

    def _fwd(self, a: np.ndarray, ctr) -> np.ndarray:
        q = self.q
        shp = a.shape[:-1]
        a = np.array(a, dtype=np.int64)
        for red, groups, length, z in self._fwd_levels:
            if red:
                a = barrett_reduce(a, q)
            v = a.reshape(shp + (groups, 2, length))
            lo, hi = v[..., 0, :], v[..., 1, :]
            t = fqmul(z, hi, q)
            np.subtract(lo, t, out=hi)
            np.add(lo, t, out=lo)
            ctr.mul(t.size)
            ctr.add(2 * t.size)
        return barrett_reduce(a, q)

    def _inv(self, a: np.ndarray, ctr, tomont: bool) -> np.ndarray:
        q = self.q
        shp = a.shape[:-1]
        for red, groups, length, z in self._inv_levels:
            if red:
                a = barrett_reduce(a, q)
            v = a.reshape(shp + (groups, 2, length))
            x, y = v[..., 0, :], v[..., 1, :]
            d = x - y
            np.add(x, y, out=x)
            y[...] = fqmul(z, d, q)
            ctr.mul(d.size)
            ctr.add(2 * d.size)
        c = self._scale_tomont if tomont else self._scale_mont
        a = fqmul(a, c, q)
        ctr.mul(a.size)
        return barrett_reduce(a, q)

    # -- public transforms --------------------------------------------------

    def split(self, f: np.ndarray) -> np.ndarray:
        """(..., n) -> (..., A, N) with row i = f[i::A]."""
        f = np.asarray(f, dtype=np.int64)
        shp = f.shape[:-1]
        return f.reshape(shp + (self.N, self.A)).swapaxes(-1, -2)

    def combine(self, h: np.ndarray) -> np.ndarray:
        """(..., A, N) -> (..., n), inverse of :meth:`split`."""
        shp = h.shape[:-2]
        return np.ascontiguousarray(h.swapaxes(-1, -2)).reshape(shp + (self.n,))

    def forward(self, f, counter: OpCounter | None = None, presplit: bool = False) -> np.ndarray:
        """Transform (..., n) canonical coefficients into the NTT domain.

        The result is laid out as A consecutive blocks of N values (one per
        sub-polynomial), each block S slots of B coefficients.  With
        ``presplit`` the input is already (..., A, N).
        """
        ctr = counter or _NULL
        parts = np.asarray(f, dtype=np.int64) if presplit else self.split(f)
        out = self._fwd(parts, ctr)
        return out.reshape(out.shape[:-2] + (self.n,))

    def inverse(self, fhat, counter: OpCounter | None = None, tomont: bool = False,
                presplit: bool = False) -> np.ndarray:
        """Inverse of :meth:`forward`.

        ``tomont`` additionally multiplies by 2^16, cancelling the 2^-16 that
        :meth:`basemul` leaves on its output.
        """
        ctr = counter or _NULL
        a = np.asarray(fhat, dtype=np.int64)
        a = a.reshape(a.shape[:-1] + (self.A, self.N))
        parts = self._inv(a % self.q, ctr, tomont)
        return parts if presplit else self.combine(parts)

    def _slotmul(self, a, b, ctr) -> np.ndarray:
        """Products modulo y^B - r_s; a, b shaped (..., S, B); output * 2^-16."""
        B, q = self.B, self.q
        if B == 1:
            out = fqmul(a, b, q)
            ctr.mul(out.size)
            return out
        if B == 2:
            # same schedule as the general loop, written out
            a0, a1, b0, b1 = a[..., 0], a[..., 1], b[..., 0], b[..., 1]
            d0 = fqmul(a0, b0, q)
            d1 = fqmul(a1, b1, q)
            c1 = fqmul(a0 + a1, b0 + b1, q) - d0 - d1
            c0 = d0 + fqmul(d1, self.tables.roots_mont, q)
            one = d0.size
            ctr.mul(4 * one)
            ctr.add(5 * one)
            return barrett_reduce(np.stack((c0, c1), axis=-1), q)
        r = self.tables.roots_mont
        cols = [a[..., i] for i in range(B)], [b[..., i] for i in range(B)]
        acc = [None] * B
        one = np.broadcast(cols[0][0], cols[1][0]).size

        def put(k, val):
            if k >= B:
                val = fqmul(val, r, q)
                ctr.mul(one)
                k -= B
            if acc[k] is None:
                acc[k] = val
            else:
                acc[k] = acc[k] + val
                ctr.add(one)

        diag = [fqmul(cols[0][i], cols[1][i], q) for i in range(B)]
        ctr.mul(B * one)
        for i in range(B):
            put(2 * i, diag[i])
        for i in range(B):
            for j in range(i + 1, B):
                sa = cols[0][i] + cols[0][j]
                sb = cols[1][i] + cols[1][j]
                p = fqmul(sa, sb, q) - diag[i] - diag[j]
                ctr.mul(one)
                ctr.add(4 * one)
                put(i + j, p)
        return np.stack([barrett_reduce(x, q) for x in acc], axis=-1)

    def _mul_y(self, x, ctr) -> np.ndarray:
        """Multiply every slot by y modulo y^B - r_s; x shaped (..., S, B)."""
        q = self.q
        top = fqmul(x[..., -1], self.tables.roots_mont, q)
        ctr.mul(top.size)
        if self.B == 1:
            return top[..., None]
        return np.concatenate((top[..., None], x[..., :-1]), axis=-1)

    def _outer_layout(self):
        """Operand pairs of the outer Karatsuba schedule and their targets.

        Products 0..A-1 are the diagonal f_i g_i; the rest are the pair
        products (f_i + f_j)(g_i + g_j) for i < j.  Contributions land on
        x-power i + j, wrapping with the factor y when it reaches A.
        """
        A = self.A
        pi = [i for i in range(A) for j in range(i + 1, A)]
        pj = [j for i in range(A) for j in range(i + 1, A)]
        target = [2 * i for i in range(A)] + [i + j for i, j in zip(pi, pj)]
        order = sorted(range(len(target)), key=lambda k: target[k] % A)
        wrap = [t for t, k in enumerate(order) if target[k] >= A]
        starts = [0] + [t for t in range(1, len(order))
                        if target[order[t]] % A != target[order[t - 1]] % A]
        return np.array(pi), np.array(pj), np.array(order), wrap, np.array(starts)

    def _basemul_22(self, F, G, ctr) -> np.ndarray:
        """A = B = 2 schedule of :meth:`basemul` in few array operations.

        F, G: (..., 2, S, 2).  Work arrays are (..., outer, inner, S), so each
        step runs on contiguous rows of S values.  Both operands are built in
        one stacked array; the nine slot products of both Karatsuba levels
        share one Montgomery call, and the three r_s twists plus the y wrap
        share another.  Needs 4q <= 2^15: operands stay below 2q, so products
        stay within the Montgomery input range.
        """
        q, S, r = self.q, self.S, self.tables.roots_mont
        shp = np.broadcast_shapes(F.shape, G.shape)[:-3]
        X = np.empty((2,) + shp + (3, 3, S), dtype=np.int64)
        X[0, ..., :2, :2, :] = F.swapaxes(-1, -2)
        X[1, ..., :2, :2, :] = G.swapaxes(-1, -2)
        np.remainder(X[..., 0, :2, :] + X[..., 1, :2, :], q, out=X[..., 2, :2, :])
        np.add(X[..., 0, :], X[..., 1, :], out=X[..., 2, :])
        Q = fqmul(X[0], X[1], q)                # (..., 3, 3, S): d0, d1, pair
        d0, d1 = Q[..., :, 0, :], Q[..., :, 1, :]
        C = np.empty(shp + (3, 2, S), dtype=np.int64)
        c0, c1 = C[..., :, 0, :], C[..., :, 1, :]
        np.subtract(Q[..., :, 2, :], d0, out=c1)
        np.subtract(c1, d1, out=c1)
        # twists: d1 * r_s for each outer row, and y * c(1) needs c1(1) * r_s
        M = np.empty(shp + (4, S), dtype=np.int64)
        M[..., :3, :] = d1
        M[..., 3, :] = c1[..., 1, :]
        T = fqmul(M, r, q)
        np.add(d0, T[..., :3, :], out=c0)
        np.remainder(C, q, out=C)
        out = np.empty(shp + (2, S, 2), dtype=np.int64)
        pair = out[..., 1, :, :].swapaxes(-1, -2)
        np.subtract(C[..., 2, :, :], C[..., 0, :, :], out=pair)
        np.subtract(pair, C[..., 1, :, :], out=pair)
        np.add(C[..., 0, 0, :], T[..., 3, :], out=out[..., 0, :, 0])
        np.add(C[..., 0, 1, :], C[..., 1, 0, :], out=out[..., 0, :, 1])
        one = 2 * S * (Q.size // (9 * S))
        ctr.mul(one // 2 * 13)
        ctr.add(one // 2 * 25)
        return np.remainder(out, q, out=out)

    def basemul(self, fhat, ghat, counter: OpCounter | None = None) -> np.ndarray:
        """Product in the NTT domain, scaled by 2^-16 (Montgomery)."""
        ctr = counter or _NULL
        A, S, B, q = self.A, self.S, self.B, self.q
        f = np.asarray(fhat, dtype=np.int64)
        g = np.asarray(ghat, dtype=np.int64)
        shp = np.broadcast_shapes(f.shape, g.shape)[:-1]
        F = f.reshape(f.shape[:-1] + (A, S, B))
        G = g.reshape(g.shape[:-1] + (A, S, B))
        if A == 1:
            out = self._slotmul(F[..., 0, :, :], G[..., 0, :, :], ctr)
            return out.reshape(shp + (self.n,))
        if A == 2 and B == 2 and 4 * q <= 1 << 15:
            return self._basemul_22(F, G, ctr).reshape(shp + (self.n,))
        return self._basemul_generic(F, G, ctr).reshape(shp + (self.n,))

    def _basemul_generic(self, F, G, ctr) -> np.ndarray:
        """Outer Karatsuba over the A sub-transforms; F, G: (..., A, S, B)."""
        A, q = self.A, self.q
        shp = np.broadcast_shapes(F.shape, G.shape)[:-3]
        if self._outer is None:
            self._outer = self._outer_layout()
        pi, pj, order, wrap, starts = self._outer
        one = self.N * int(np.prod(shp, dtype=np.int64))
        npairs = len(pi)
        # every product goes through one stacked slot multiplication
        sf = barrett_reduce(F[..., pi, :, :] + F[..., pj, :, :], q)
        sg = barrett_reduce(G[..., pi, :, :] + G[..., pj, :, :], q)
        ctr.add(2 * npairs * one)
        R = self._slotmul(np.concatenate((F, sf), axis=-3),
                          np.concatenate((G, sg), axis=-3), ctr)
        R[..., A:, :, :] -= R[..., pi, :, :] + R[..., pj, :, :]
        ctr.add(2 * npairs * one)
        R = barrett_reduce(R[..., order, :, :], q)
        R[..., wrap, :, :] = self._mul_y(R[..., wrap, :, :], ctr)
        out = np.add.reduceat(R, starts, axis=-3)
        ctr.add((len(order) - A) * one)
        return barrett_reduce(out, q)

    def multiply(self, f, g, counter: OpCounter | None = None) -> np.ndarray:
        """f * g mod (x^n + 1, q) through the transform."""
        fh = self.forward(f, counter)
        gh = self.forward(g, counter)
        return self.inverse(self.basemul(fh, gh, counter), counter, tomont=True)

    @property
    def table_bytes(self) -> int:
        return self.tables.nbytes


@lru_cache(maxsize=None)
def plan(n: int, q: int, alpha: int = 0, beta: int = 0) -> NttPlan:
    return NttPlan(n, q, alpha, beta)


def plan_for(p) -> NttPlan:
    """The plan a parameter set uses."""
    return plan(p.n, p.q, p.alpha, p.beta)


def table_footprint(plans) -> int:
    """Bytes of root tables needed by a set of plans; shared tables count once."""
    seen = {}
    for pl in plans:
        seen[(pl.q, pl.S)] = pl.table_bytes
    return sum(seen.values())


# -- the named variants -----------------------------------------------------

def classic_ntt(f, n_plan: NttPlan, counter=None):
    if n_plan.alpha or n_plan.beta:
        raise ValueError("classic NTT needs a plan with alpha = beta = 0")
    return n_plan.forward(f, counter)


def classic_intt(fhat, n_plan: NttPlan, counter=None):
    if n_plan.alpha or n_plan.beta:
        raise ValueError("classic NTT needs a plan with alpha = beta = 0")
    return n_plan.inverse(fhat, counter)


def t_ntt(f, n_plan: NttPlan, counter=None):
    if n_plan.alpha:
        raise ValueError("T-NTT needs a plan with alpha = 0")
    return n_plan.forward(f, counter)


def t_intt(fhat, n_plan: NttPlan, counter=None, tomont: bool = False):
    if n_plan.alpha:
        raise ValueError("T-NTT needs a plan with alpha = 0")
    return n_plan.inverse(fhat, counter, tomont=tomont)


def t_basemul(fhat, ghat, n_plan: NttPlan, counter=None):
    return n_plan.basemul(fhat, ghat, counter)


def pt_ntt(f, n_plan: NttPlan, counter=None) -> np.ndarray:
    """The 2^alpha full-depth sub-transforms, shaped (..., A, N)."""
    if n_plan.beta:
        raise ValueError("Pt-NTT needs a plan with beta = 0")
    out = n_plan.forward(f, counter)
    return out.reshape(out.shape[:-1] + (n_plan.A, n_plan.N))


def pt_mul(f, g, n_plan: NttPlan, counter=None):
    if n_plan.beta:
        raise ValueError("Pt-NTT needs a plan with beta = 0")
    return n_plan.multiply(f, g, counter)


def h_ntt(f, n_plan: NttPlan, counter=None) -> np.ndarray:
    """The 2^alpha T-NTT vectors, shaped (..., A, N)."""
    out = n_plan.forward(f, counter)
    return out.reshape(out.shape[:-1] + (n_plan.A, n_plan.N))


def h_mul(f, g, n_plan: NttPlan, counter=None):
    return n_plan.multiply(f, g, counter)


def schoolbook(f, g, q: int) -> np.ndarray:
    """O(n^2) negacyclic product, the reference oracle.

    Exact int64 sums when n (q-1)^2 < 2^62, Python integers otherwise.
    Leading batch axes broadcast.
    """
    f = np.asarray(f, dtype=np.int64) % q
    g = np.asarray(g, dtype=np.int64) % q
    n = f.shape[-1]
    shp = np.broadcast_shapes(f.shape, g.shape)[:-1]
    dtype = np.int64 if n * (q - 1) ** 2 < (1 << 62) else object
    full = np.zeros(shp + (2 * n - 1,), dtype=dtype)
    ff, gg = f.astype(dtype), g.astype(dtype)
    for i in range(n):
        full[..., i:i + n] += ff[..., i:i + 1] * gg
    out = full[..., :n].copy()
    out[..., : n - 1] -= full[..., n:]
    return (out % q).astype(np.int64)


# -- closed-form complexity -------------------------------------------------

def _log2(n: int) -> int:
    if n < 1 or n & (n - 1):
        raise ValueError("n must be a power of two")
    return n.bit_length() - 1


def pt_formula(n: int, alpha: int) -> tuple[Fraction, Fraction]:
    """Closed form for Pt-NTT multiplication (alpha = 0 is the classic case)."""
    lg, a = _log2(n), alpha
    if a == 0:
        tm = Fraction(3, 2) * n * lg + 2 * n
    else:
        tm = Fraction(3, 2) * n * lg + (3 * Fraction(2) ** (a - 2) + Fraction(3, 2) - Fraction(3 * a, 2)) * n
    ta = 3 * n * lg + (5 * Fraction(2) ** (a - 1) - Fraction(5, 2) - 3 * a) * n
    return tm, ta


def h_formula_printed(n: int, alpha: int, beta: int) -> tuple[Fraction, Fraction]:
    """The H-NTT closed form as stated, for any alpha, beta >= 0.

    At alpha = 0 or beta = 0 this charges fractional wrap-around products
    (2^(2 alpha - 2) and 2^(2 beta - 2) of them) that do not exist, so it
    overcounts multiplications there; additions are exact everywhere.
    """
    lg, a, b = _log2(n), alpha, beta
    two = Fraction(2)
    tm = Fraction(3, 2) * n * lg + (
        3 * two ** (a + b - 3) + two ** (a - 2) + 3 * two ** (b - 3) + two ** (a - b - 2)
        - Fraction(3, 2) * (a + b) + Fraction(5, 4)) * n
    ta = 3 * n * lg + (
        5 * two ** (a + b - 2) + 5 * two ** (b - 2) + 5 * two ** (a - 2)
        - 3 * (a + b) - Fraction(15, 4)) * n
    return tm, ta


def line_item_counts(n: int, alpha: int, beta: int) -> tuple[int, int]:
    """Sum of the per-step costs of one H-NTT multiplication.

    2A forward transforms, A inverses (each with N scaling products),
    A(A+1)/2 slot products and A^2/4 multiplications by y (none when A = 1),
    plus the polynomial additions of the outer Karatsuba step.
    """
    A, B = 1 << alpha, 1 << beta
    N = n // A
    lv = _log2(N) - beta
    fwd_m, fwd_a = N // 2 * lv, N * lv
    inv_m, inv_a = N // 2 * lv + N, N * lv
    wraps_in = B * B // 4 if B > 1 else 0
    slot_m = (B * (B + 1) // 2 + wraps_in) * (N // B)
    slot_a = 5 * B * (B - 1) // 2 * (N // B)
    prods = A * (A + 1) // 2
    wraps_out = A * A // 4 if A > 1 else 0
    poly_adds = 5 * A * (A - 1) // 2
    tm = 2 * A * fwd_m + A * inv_m + prods * slot_m + wraps_out * (N // B)
    ta = 2 * A * fwd_a + A * inv_a + prods * slot_a + poly_adds * N
    return tm, ta


def complexity_formula(variant: str, n: int, alpha: int = 0, beta: int = 0) -> tuple[int, int]:
    """(T_m, T_a) for one full multiplication.

    classic and Pt-NTT use the Pt-NTT closed form; T-NTT with depth beta
    costs the same as Pt-NTT with alpha = beta.  H-NTT uses its own closed
    form when both depths are positive; with one depth zero H-NTT is a plain
    Pt-NTT or T-NTT, so the Pt-NTT form of the other depth applies.
    """
    if variant == "classic":
        tm, ta = pt_formula(n, 0)
    elif variant == "pt":
        tm, ta = pt_formula(n, alpha)
    elif variant == "t":
        tm, ta = pt_formula(n, beta)
    elif variant == "h":
        if alpha >= 1 and beta >= 1:
            tm, ta = h_formula_printed(n, alpha, beta)
        else:
            tm, ta = pt_formula(n, max(alpha, beta))
    else:
        raise ValueError(f"unknown variant {variant!r}")
    if tm.denominator != 1 or ta.denominator != 1:
        raise ValueError("formula is not integral for these parameters")
    return int(tm), int(ta)


VARIANT_LAYOUT = {"classic": lambda a, b: (0, 0), "t": lambda a, b: (0, b),
                  "pt": lambda a, b: (a, 0), "h": lambda a, b: (a, b)}


def measure(variant: str, n: int, q: int, alpha: int = 0, beta: int = 0, seed: int = 0) -> tuple[int, int]:
    """Counters after one multiplication of random operands."""
    a, b = VARIANT_LAYOUT[variant](alpha, beta)
    pl = plan(n, q, a, b)
    rng = np.random.default_rng(seed)
    f = rng.integers(0, q, n)
    g = rng.integers(0, q, n)
    ctr = OpCounter()
    pl.multiply(f, g, ctr)
    return ctr.as_tuple()
