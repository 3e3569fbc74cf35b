"""Bulk L-value evaluation for the empirical sweeps.

Evaluates L(s, chi) (and dL/ds) at a handful of fixed s for up to millions of
moduli.  Small moduli go through the exact Hurwitz tier; larger ones through
the smoothed AFE with the incomplete-gamma weights read from per-s cubic
interpolation tables in log(x), x = pi m^2 / n.  The m-loop is vectorized
over blocks of moduli, with the character values chi(m) composed
multiplicatively from per-prime residue tables.

Everything is deterministic: blocks are fixed spans of the modulus range, the
m-loop order is fixed, and block results are reduced in block order, so the
output is bit-identical for any worker count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .arith import FactorSieve, shared_sieve
from .special import digamma_complex, gamma_complex, upper_gamma, upper_gamma_da

X_ZERO = 42.0  # weights with x beyond this are identically zero in the tables
TAU_LO_MARGIN = 4.2e6  # table covers x down to pi/TAU_LO_MARGIN
GRID_H = 0.004
BLOCK_SIZE = 1 << 15
SMALL_PRIME_CACHE = 512


_qr_tables: dict[int, np.ndarray] = {}


def qr_table(p: int) -> np.ndarray:
    """(m/p) for m = 0..p-1 as int8 (Legendre residue table)."""
    if p not in _qr_tables:
        t = np.full(p, -1, dtype=np.int8)
        t[0] = 0
        j = np.arange(1, (p + 1) // 2, dtype=np.int64)
        t[(j * j) % p] = 1
        _qr_tables[p] = t
    return _qr_tables[p]


_KRON2 = np.array([0, 1, 0, -1, 0, -1, 0, 1], dtype=np.int8)  # (2/n) by n mod 8


def jacobi_row(n: int, factors) -> np.ndarray:
    """(m/n) for m = 0..n-1 via per-prime residue tables (odd n)."""
    if n == 1:
        return np.ones(1, dtype=np.int8)
    m = np.arange(n, dtype=np.int64)
    out = np.ones(n, dtype=np.int8)
    for p, e in factors:
        t = qr_table(p)[m % p]
        out *= t if e % 2 else np.abs(t)
    return out


def kronecker_top_row(d: int, sieve: FactorSieve) -> np.ndarray:
    """(d/m) for m = 0..d-1, for a fundamental discriminant d.

    d = 1 mod 4:  (d/.) == (./d); d = 4m' or 8m'': the odd-part Jacobi row
    times an 8-periodic factor from quadratic reciprocity.
    """
    m = np.arange(d, dtype=np.int64)
    if d % 4 == 1:
        return jacobi_row(d, sieve.factor(d).pairs)
    dv = d // 4
    if dv % 2 == 1:  # d = 4m', m' = 3 mod 4
        odd = dv
        eight = np.array([0, 1, 0, -1, 0, 1, 0, -1], dtype=np.int8)[m % 8]  # psi_-1 on odd m
    else:  # d = 8m''
        odd = dv // 2
        psi2 = _KRON2[m % 8]
        if odd % 4 == 3:
            eight = psi2 * np.array([0, 1, 0, -1, 0, 1, 0, -1], dtype=np.int8)[m % 8]
        else:
            eight = psi2
    row = jacobi_row(odd, sieve.factor(odd).pairs)[m % odd] if odd > 1 else np.ones(d, dtype=np.int8)
    return (row * eight).astype(np.int8)


# ---------------------------------------------------------------------------
# weight tables


@dataclass
class WeightTables:
    """Cubic interpolation tables for the AFE weights of one parity at the
    engine's s-values: per grid interval, power-basis coefficients for
    [G_a, G_b] (+ [dG_a, dG_b] when derivatives are needed) for every s."""

    tau0: float
    inv_h: float
    n_funcs: int
    coef: np.ndarray  # (K, n_funcs * 4) float64


_table_cache: dict = {}


def _build_tables(s_values, even: bool, need_deriv: bool, n_max: int) -> WeightTables:
    key = (tuple(s_values), even, need_deriv, max(TAU_LO_MARGIN, 2.0 * n_max))
    if key in _table_cache:
        return _table_cache[key]
    out = _build_tables_uncached(s_values, even, need_deriv, n_max)
    _table_cache[key] = out
    return out


def _build_tables_uncached(s_values, even: bool, need_deriv: bool, n_max: int) -> WeightTables:
    tau0 = math.log(math.pi) - math.log(max(TAU_LO_MARGIN, 2.0 * n_max)) - 8 * GRID_H
    tau1 = math.log(X_ZERO) + 8 * GRID_H
    K = int(math.ceil((tau1 - tau0) / GRID_H)) + 1
    nodes = tau0 + GRID_H * np.arange(-1, K + 3)
    x = np.exp(nodes)
    funcs = []
    for s in s_values:
        s = complex(s)
        if even:
            ab = (s / 2, (1 - s) / 2)
        else:
            ab = ((s + 1) / 2, (2 - s) / 2)
        for aa in ab:
            funcs.append(("g", aa))
        if need_deriv:
            for aa in ab:
                funcs.append(("dg", aa))
    vals = np.zeros((len(funcs), len(x)))
    for fi, (kind, aa) in enumerate(funcs):
        if aa.imag != 0:
            raise ValueError("bulk tables support real s only")
        for xi, xx in enumerate(x):
            if xx > X_ZERO:
                continue
            vals[fi, xi] = upper_gamma(aa.real, xx).real if kind == "g" else upper_gamma_da(aa.real, xx)
    # 4-point Lagrange -> power basis on each interval [node_i, node_i+1)
    y0 = vals[:, 0:K]
    y1 = vals[:, 1 : K + 1]
    y2 = vals[:, 2 : K + 2]
    y3 = vals[:, 3 : K + 3]
    c0 = y1
    c1 = -y0 / 3 - y1 / 2 + y2 - y3 / 6
    c2 = y0 / 2 - y1 + y2 / 2
    c3 = -y0 / 6 + y1 / 2 - y2 / 2 + y3 / 6
    coef = np.stack([c0, c1, c2, c3], axis=-1)  # (F, K, 4)
    # zero out intervals fully past the cutoff so clamped gathers add nothing
    node_x = np.exp(nodes[1 : K + 1])
    coef[:, node_x > X_ZERO, :] = 0.0
    coef = np.ascontiguousarray(coef.transpose(1, 0, 2).reshape(K, len(funcs) * 4))
    return WeightTables(tau0=tau0 + 0.0, inv_h=1.0 / GRID_H, n_funcs=len(funcs), coef=coef)


# ---------------------------------------------------------------------------
# the engine


@dataclass
class SweepEngine:
    """Configured bulk evaluator for one family at fixed real s-values."""

    family: str  # 'jacobi-bottom-n' | 'kronecker-top-d'
    s_values: tuple
    need_deriv: bool = False
    tier: int = 10_000
    block_size: int = BLOCK_SIZE
    sieve: FactorSieve | None = None
    tables: dict = field(default_factory=dict)
    n_max: int = 4_000_000

    def __post_init__(self):
        self.s_values = tuple(float(s) for s in self.s_values)
        self.sieve = self.sieve or shared_sieve()
        parities = ("even",) if self.family == "kronecker-top-d" else ("even", "odd")
        for par in parities:
            self.tables[par] = _build_tables(self.s_values, par == "even", self.need_deriv, self.n_max)

    # -- AFE bulk path ------------------------------------------------------

    def _chi_p_vector(self, p: int, nvec: np.ndarray, parity: str, cache: dict) -> np.ndarray:
        """chi(p) over the block's moduli."""
        if p in cache:
            return cache[p]
        if p == 2:
            out = _KRON2[nvec % 8]
        elif self.family == "kronecker-top-d":
            out = qr_table(p)[nvec % p]  # (d/p) = (d mod p / p)
        else:
            out = qr_table(p)[nvec % p]  # (n/p), then flip by reciprocity
            if p % 4 == 3 and parity == "odd":
                out = -out
        if p <= SMALL_PRIME_CACHE:
            cache[p] = out
        return out

    def _block_afe(self, nvec: np.ndarray, parity: str):
        """AFE evaluation over one block of moduli (all of one parity class)."""
        spf = self.sieve.spf
        tab = self.tables[parity]
        B = len(nvec)
        logn = np.log(nvec.astype(np.float64))
        idx_base = (-(logn + tab.tau0)) * tab.inv_h  # add log(pi m^2)/h per m
        K = len(tab.coef)
        nf = tab.n_funcs
        acc = [np.zeros(B) for _ in range(2 * len(self.s_values) * (3 if self.need_deriv else 1))]
        # acc layout per s: [S1, S2] or [S1, S2, A_log1, B_log2, A_da, B_db]
        per_s = 6 if self.need_deriv else 2
        m_hi = int(math.sqrt(X_ZERO * float(nvec[-1]) / math.pi)) + 1
        cache: dict = {}
        chi_cache_m: dict = {}
        for m in range(1, m_hi + 1):
            # chi(m) over the block
            if m == 1:
                chif = None
            else:
                mm = m
                chi = None
                zero_only = False
                while mm > 1:
                    p = int(spf[mm])
                    e = 0
                    while mm % p == 0:
                        mm //= p
                        e += 1
                    v = self._chi_p_vector(p, nvec, parity, cache)
                    if e % 2 == 1:
                        chi = v.astype(np.int8).copy() if chi is None else chi * v
                    else:
                        av = np.abs(v)
                        chi = av.astype(np.int8).copy() if chi is None else chi * av
                if chi is not None and not chi.any():
                    continue
                chif = chi.astype(np.float64)
            lpm2 = math.log(math.pi) + 2.0 * math.log(m)
            pos = idx_base + lpm2 * tab.inv_h
            iw = pos.astype(np.int64)
            np.clip(iw, 0, K - 1, out=iw)
            t = pos - iw
            W = tab.coef[iw]  # (B, nf*4)
            Wv = W.reshape(B, nf, 4)
            tt = t[:, None]
            g = ((Wv[:, :, 3] * tt + Wv[:, :, 2]) * tt + Wv[:, :, 1]) * tt + Wv[:, :, 0]  # (B, nf)
            if chif is not None:
                g = g * chif[:, None]
            for si, s in enumerate(self.s_values):
                if parity == "even":
                    u_m = (math.pi * m * m) ** (-s / 2)
                    v_m = (math.pi * m * m) ** ((s - 1) / 2)
                else:
                    u_m = m * (math.pi * m * m) ** (-(s + 1) / 2)
                    v_m = m * (math.pi * m * m) ** ((s - 2) / 2)
                fbase = si * (4 if self.need_deriv else 2)
                a0 = si * per_s
                ga = g[:, fbase]
                gb = g[:, fbase + 1]
                acc[a0] += u_m * ga
                acc[a0 + 1] += v_m * gb
                if self.need_deriv:
                    acc[a0 + 2] += (u_m * lpm2) * ga
                    acc[a0 + 3] += (v_m * lpm2) * gb
                    acc[a0 + 4] += u_m * g[:, fbase + 2]
                    acc[a0 + 5] += v_m * g[:, fbase + 3]
        out = {}
        for si, s in enumerate(self.s_values):
            a0 = si * per_s
            S1, S2 = acc[a0], acc[a0 + 1]
            if parity == "even":
                A = math.pi ** (s / 2) / gamma_complex(s / 2).real
                dA_over_A = 0.5 * math.log(math.pi) - 0.5 * digamma_complex(s / 2).real
            else:
                A = math.pi ** ((s + 1) / 2) / gamma_complex((s + 1) / 2).real
                dA_over_A = 0.5 * math.log(math.pi) - 0.5 * digamma_complex((s + 1) / 2).real
            pref = np.exp((0.5 - s) * logn)
            L = A * (S1 + pref * S2)
            if self.need_deriv:
                dS1 = -0.5 * acc[a0 + 2] + 0.5 * acc[a0 + 4]
                dS2 = 0.5 * acc[a0 + 3] - 0.5 * acc[a0 + 5]
                Lp = dA_over_A * L + A * (dS1 + pref * (dS2 - logn * S2))
                out[s] = (L, Lp)
            else:
                out[s] = (L, None)
        return out

    # -- Hurwitz tier -------------------------------------------------------

    def _tier_one(self, n: int):
        """Exact Hurwitz-tier values for one modulus: {s: (L, L')}."""
        from .special import hurwitz_zeta_vec, zeta

        if n == 1:
            return {s: (complex(zeta(s)).real, complex(zeta(s, 1)).real if self.need_deriv else None) for s in self.s_values}
        if self.family == "kronecker-top-d":
            row = kronecker_top_row(n, self.sieve)
        else:
            row = jacobi_row(n, self.sieve.factor(n).pairs)
        idx = np.nonzero(row)[0]
        a = np.where(idx == 0, n, idx) / n
        c = row[idx].astype(np.float64)
        out = {}
        for s in self.s_values:
            vals = hurwitz_zeta_vec(s, a)
            base = float(np.sum(c * vals))
            L = n ** (-s) * base
            if self.need_deriv:
                dvals = hurwitz_zeta_vec(s, a, derivative=1)
                Lp = -math.log(n) * L + n ** (-s) * float(np.sum(c * dvals))
                out[s] = (L, Lp)
            else:
                out[s] = (L, None)
        return out

    # -- public -------------------------------------------------------------

    def block_plan(self, moduli: np.ndarray) -> list[tuple[int, int, str]]:
        """Fixed partition of the moduli array into (lo, hi, kind) spans.

        kind is 'tier' or one of the AFE parity classes.  The plan depends
        only on the moduli and block size, never on worker count.
        """
        plan = []
        n_tier = int(np.searchsorted(moduli, self.tier, side="right"))
        step = max(256, self.block_size // 8)
        for lo in range(0, n_tier, step):
            plan.append((lo, min(lo + step, n_tier), "tier"))
        rest = moduli[n_tier:]
        if self.family == "kronecker-top-d":
            for lo in range(0, len(rest), self.block_size):
                plan.append((n_tier + lo, n_tier + min(lo + self.block_size, len(rest)), "even"))
        else:
            # parity classes interleave; split each block span by n mod 4
            for lo in range(0, len(rest), self.block_size):
                plan.append((n_tier + lo, n_tier + min(lo + self.block_size, len(rest)), "split"))
        return plan

    def run_span(self, moduli: np.ndarray, span: tuple[int, int, str]):
        """Evaluate one span; returns {s: (L_array, Lp_array|None)} for it."""
        lo, hi, kind = span
        sub = moduli[lo:hi]
        nsub = len(sub)
        out = {s: (np.zeros(nsub), np.zeros(nsub) if self.need_deriv else None) for s in self.s_values}
        if kind == "tier":
            for i, n in enumerate(sub):
                vals = self._tier_one(int(n))
                for s, (L, Lp) in vals.items():
                    out[s][0][i] = L
                    if self.need_deriv:
                        out[s][1][i] = Lp
            return out
        if kind == "even":
            res = self._block_afe(sub, "even")
            for s, (L, Lp) in res.items():
                out[s][0][:] = L
                if self.need_deriv:
                    out[s][1][:] = Lp
            return out
        # split by parity class (jacobi family)
        for parity, residue in (("even", 1), ("odd", 3)):
            mask = (sub % 4) == residue
            if not mask.any():
                continue
            res = self._block_afe(sub[mask], parity)
            for s, (L, Lp) in res.items():
                out[s][0][mask] = L
                if self.need_deriv:
                    out[s][1][mask] = Lp
        return out


# ---------------------------------------------------------------------------
# worker-pool orchestration (fork-based; engine shared copy-on-write)

_WORK_ENGINE: SweepEngine | None = None
_WORK_MODULI: np.ndarray | None = None


def _worker(args):
    i, span = args
    return i, _WORK_ENGINE.run_span(_WORK_MODULI, span)


def evaluate_moduli(
    engine: SweepEngine, moduli: np.ndarray, workers: int = 1
) -> dict[float, tuple[np.ndarray, np.ndarray | None]]:
    """Full evaluation over a sorted moduli array, any worker count;
    bit-identical output regardless of workers (fixed plan + ordered fill)."""
    global _WORK_ENGINE, _WORK_MODULI
    moduli = np.asarray(moduli, dtype=np.int64)
    if len(moduli) and int(moduli[-1]) > engine.n_max:
        raise ValueError(f"modulus {moduli[-1]} beyond engine n_max {engine.n_max} (table range)")
    plan = engine.block_plan(moduli)
    out = {
        s: (np.zeros(len(moduli)), np.zeros(len(moduli)) if engine.need_deriv else None)
        for s in engine.s_values
    }

    def fill(span, res):
        lo, hi, _ = span
        for s in engine.s_values:
            out[s][0][lo:hi] = res[s][0]
            if engine.need_deriv:
                out[s][1][lo:hi] = res[s][1]

    if workers <= 1:
        for span in plan:
            fill(span, engine.run_span(moduli, span))
        return out
    import multiprocessing as mp

    _WORK_ENGINE = engine
    _WORK_MODULI = moduli
    ctx = mp.get_context("fork")
    with ctx.Pool(processes=workers) as pool:
        for i, res in pool.imap_unordered(_worker, list(enumerate(plan)), chunksize=1):
            fill(plan[i], res)
    _WORK_ENGINE = None
    _WORK_MODULI = None
    return out
