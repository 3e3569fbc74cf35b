"""The empirical (left-hand) sides: smoothed sums of L-ratios and
log-derivatives over fundamental discriminants or odd moduli.

Bulk path: kernel L-values from the sweep engine, non-squarefree moduli
assembled through the kernel identities
    L(s, chi_{n0 n1^2}) = L(s, chi_{n0}) prod_{p|n1}(1 - chi_{n0}(p) p^{-s})
    L'/L(s, chi_{n0 n1^2}) = L'/L(s, chi_{n0}) + sum_{p|n1} chi_{n0}(p) log p/(p^s - chi_{n0}(p)).

Direct path: per-modulus scalar evaluators (Hurwitz / contour), used as the
independent oracle at small X and for complex shifts.

Sums are reduced in a fixed order on the fully assembled arrays, so results
are bit-identical for any worker count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .arith import fundamental_discriminants_array, kronecker, shared_sieve
from .errors import InvalidShiftsError, ZeroDetectedError
from .predict import Prediction, predict_thm1, predict_thm2, predict_thm3, predict_thm4
from .special import WeightSpec
from .sweep import _KRON2, SweepEngine, evaluate_moduli, qr_table

N_CAP_FACTOR = 30  # e^{-30} ~ 9e-14 keeps the weight tail below 1e-12 relative
SHIFT_FLOOR = 0.05
ZERO_THRESHOLD = 1e-12


@dataclass(frozen=True)
class SweepConfig:
    X: float
    theorem: int
    alpha: complex = 0.0
    beta: complex = 0.0
    r: complex = 0.0
    weight: WeightSpec = WeightSpec()
    n_cap: int = 0  # 0 -> N_CAP_FACTOR * X
    tier: int = 10_000
    workers: int = 1
    cache_path: str | None = None

    def resolved_cap(self) -> int:
        cap = self.n_cap if self.n_cap else int(N_CAP_FACTOR * self.X)
        if cap < self.X:
            raise InvalidShiftsError("n_cap must be at least X")
        return cap

    def validate(self) -> None:
        if self.theorem in (1, 2):
            if complex(self.beta).real < SHIFT_FLOOR:
                raise InvalidShiftsError(f"sweeps need Re(beta) >= {SHIFT_FLOOR}")
        else:
            if complex(self.r).real < SHIFT_FLOOR:
                raise InvalidShiftsError(f"sweeps need Re(r) >= {SHIFT_FLOOR}")


def _weight_vals(cfg: SweepConfig, n: np.ndarray) -> np.ndarray:
    return cfg.weight.value(n / cfg.X)


def _real_shift_pair(cfg: SweepConfig) -> tuple[float, float]:
    w = 0.5 + complex(cfg.alpha).real
    z = 0.5 + complex(cfg.beta).real
    return w, z


def _is_real_shifts(cfg: SweepConfig) -> bool:
    if cfg.theorem in (1, 2):
        return complex(cfg.alpha).imag == 0 and complex(cfg.beta).imag == 0
    return complex(cfg.r).imag == 0


# ---------------------------------------------------------------------------
# bulk assemblies


def _evaluate_cached(engine: SweepEngine, moduli: np.ndarray, workers: int, cache_path: str | None):
    """evaluate_moduli through the L-value cache (a pure memo: values read
    back are the bits a fresh computation would produce, so results are
    independent of cache state)."""
    if cache_path is None:
        return evaluate_moduli(engine, moduli, workers)
    from .cache import LValueCache
    from .lfunc import LValueRecord

    cache = LValueCache(cache_path)
    fams = [engine.family] + ([engine.family + ":dL"] if engine.need_deriv else [])
    have = np.ones(len(moduli), dtype=bool)
    hit_vals: dict = {}
    for i, n in enumerate(moduli):
        for s in engine.s_values:
            for fam in fams:
                rec = cache.get(fam, int(n), s)
                if rec is None:
                    have[i] = False
                    break
                hit_vals[(fam, int(n), s)] = rec.value
            if not have[i]:
                break
    missing = moduli[~have]
    out = {
        s: (np.zeros(len(moduli)), np.zeros(len(moduli)) if engine.need_deriv else None)
        for s in engine.s_values
    }
    if len(missing):
        res = evaluate_moduli(engine, missing, workers)
        miss_idx = np.nonzero(~have)[0]
        for s in engine.s_values:
            out[s][0][miss_idx] = res[s][0]
            if engine.need_deriv:
                out[s][1][miss_idx] = res[s][1]
        for j, n in enumerate(missing):
            n = int(n)
            method = "hurwitz" if n <= engine.tier else "afe"
            err = 1e-11 if method == "hurwitz" else 1e-9
            for s in engine.s_values:
                cache.put(LValueRecord(engine.family, n, complex(s), complex(res[s][0][j]), method, err))
                if engine.need_deriv:
                    cache.put(
                        LValueRecord(engine.family + ":dL", n, complex(s), complex(res[s][1][j]), method, err)
                    )
        cache.flush()
    hit_idx = np.nonzero(have)[0]
    for i in hit_idx:
        n = int(moduli[i])
        for s in engine.s_values:
            out[s][0][i] = hit_vals[(engine.family, n, s)].real
            if engine.need_deriv:
                out[s][1][i] = hit_vals[(engine.family + ":dL", n, s)].real
    return out


def empirical_thm1(cfg: SweepConfig) -> complex:
    """sum over fundamental d of L(1/2+a, chi_d)/L(1/2+b, chi_d) f(d/X)."""
    cfg.validate()
    if not _is_real_shifts(cfg) or cfg.X <= 60:
        return empirical_thm1_direct(cfg)
    cap = cfg.resolved_cap()
    w, z = _real_shift_pair(cfg)
    d = fundamental_discriminants_array(cap)
    engine = SweepEngine("kronecker-top-d", tuple(sorted({w, z})), tier=cfg.tier, n_max=cap)
    vals = _evaluate_cached(engine, d, cfg.workers, cfg.cache_path)
    Lw = vals[w][0]
    Lz = vals[z][0]
    bad = np.nonzero(np.abs(Lz) < ZERO_THRESHOLD)[0]
    if len(bad):
        raise ZeroDetectedError("denominator L-value below threshold", modulus=int(d[bad[0]]))
    return complex(np.sum(_weight_vals(cfg, d) * (Lw / Lz)))


def _odd_structure(cap: int):
    """(odd n array, kernel array, kernel index, n0, n1) for odd n <= cap."""
    sv = shared_sieve(max(cap, 4))
    n = np.arange(1, cap + 1, 2, dtype=np.int64)
    n1 = sv.square_part_table()[n].astype(np.int64)
    n0 = n // (n1 * n1)
    kernels = np.unique(n0)
    kidx = np.searchsorted(kernels, n0)
    return n, kernels, kidx, n0, n1


def _odd_prime_square_hits(cap: int):
    """Yield (p, positions, n0_at_positions) for odd primes p with p^2 <= cap,
    positions indexing the odd-n array at the n divisible by p^2."""
    sv = shared_sieve(max(cap, 4))
    primes = sv.primes()
    primes = primes[(primes > 2) & (primes * primes <= cap)]
    for p in primes:
        p = int(p)
        j = np.arange(1, cap // (p * p) + 1, 2, dtype=np.int64)
        nn = p * p * j
        yield p, (nn - 1) // 2, nn


def _chi_p_of_n0(p: int, n0: np.ndarray) -> np.ndarray:
    """(p/n0) for odd squarefree n0 (vector), via reciprocity."""
    out = qr_table(p)[n0 % p].astype(np.int8)
    if p % 4 == 3:
        out = np.where(n0 % 4 == 3, -out, out).astype(np.int8)
    return out


def _kernel_values(cfg: SweepConfig, s_values, need_deriv: bool):
    cap = cfg.resolved_cap()
    n, kernels, kidx, n0, n1 = _odd_structure(cap)
    engine = SweepEngine(
        "jacobi-bottom-n", tuple(sorted(set(s_values))), need_deriv=need_deriv, tier=cfg.tier, n_max=cap
    )
    vals = _evaluate_cached(engine, kernels, cfg.workers, cfg.cache_path)
    return n, kernels, kidx, n0, n1, vals


def empirical_thm2(cfg: SweepConfig) -> complex:
    """sum over odd n of L_(2)(1/2+a, chi_n)/L_(2)(1/2+b, chi_n) f(n/X)."""
    cfg.validate()
    if not _is_real_shifts(cfg) or cfg.X <= 60:
        return empirical_thm2_direct(cfg)
    cap = cfg.resolved_cap()
    w, z = _real_shift_pair(cfg)
    n, kernels, kidx, n0, n1, vals = _kernel_values(cfg, (w, z), False)
    num = vals[w][0][kidx]
    den = num if z == w else vals[z][0][kidx]
    # Euler factor at 2 and the corrections for p | n1
    k2 = _KRON2[n0 % 8]
    cw = (1.0 - k2 * 2.0 ** (-w)).astype(np.float64)
    cz = cw if z == w else (1.0 - k2 * 2.0 ** (-z)).astype(np.float64)
    for p, pos, _ in _odd_prime_square_hits(cap):
        chi = _chi_p_of_n0(p, n0[pos])
        cw[pos] *= 1.0 - chi * p ** (-w)
        if z != w:
            cz[pos] *= 1.0 - chi * p ** (-z)
    numf = num * cw
    denf = den * cz
    bad = np.nonzero(np.abs(denf) < ZERO_THRESHOLD)[0]
    if len(bad):
        raise ZeroDetectedError("denominator L-value below threshold", modulus=int(n[bad[0]]))
    return complex(np.sum(_weight_vals(cfg, n) * (numf / denf)))


def _logderiv_kernel_arrays(cfg: SweepConfig, s: float):
    n, kernels, kidx, n0, n1, vals = _kernel_values(cfg, (s,), True)
    L, Lp = vals[s]
    bad = np.nonzero(np.abs(L) < ZERO_THRESHOLD)[0]
    if len(bad):
        raise ZeroDetectedError("kernel L-value below threshold", modulus=int(kernels[bad[0]]))
    return n, kernels, kidx, n0, n1, Lp / L


def empirical_thm3(cfg: SweepConfig) -> complex:
    """sum over odd n of L'(1/2+r, chi_n)/L(1/2+r, chi_n) f(n/X)."""
    cfg.validate()
    if not _is_real_shifts(cfg) or cfg.X <= 60:
        return empirical_thm3_direct(cfg)
    cap = cfg.resolved_cap()
    s = 0.5 + complex(cfg.r).real
    n, kernels, kidx, n0, n1, base = _logderiv_kernel_arrays(cfg, s)
    val = base[kidx].copy()
    for p, pos, nn in _odd_prime_square_hits(cap):
        chi = _chi_p_of_n0(p, n0[pos]).astype(np.float64)
        val[pos] += chi * math.log(p) / (p**s - chi)
    return complex(np.sum(_weight_vals(cfg, n) * val))


def empirical_thm4(cfg: SweepConfig) -> complex:
    """sum over odd squarefree n of L'/L(1/2+r, chi_n) f(n/X)."""
    cfg.validate()
    if not _is_real_shifts(cfg) or cfg.X <= 60:
        return empirical_thm4_direct(cfg)
    cap = cfg.resolved_cap()
    s = 0.5 + complex(cfg.r).real
    n, kernels, kidx, n0, n1, base = _logderiv_kernel_arrays(cfg, s)
    sf = n1 == 1
    return complex(np.sum(_weight_vals(cfg, n[sf]) * base[kidx[sf]]))


# ---------------------------------------------------------------------------
# direct (oracle) assemblies: scalar evaluators, any shifts, small X


def empirical_thm1_direct(cfg: SweepConfig) -> complex:
    from .lfunc import l_value

    cap = cfg.resolved_cap()
    w = 0.5 + complex(cfg.alpha)
    z = 0.5 + complex(cfg.beta)
    out = 0.0 + 0.0j
    for d in fundamental_discriminants_array(cap):
        d = int(d)
        num = l_value(w, d, family="kronecker-top-d")
        den = l_value(z, d, family="kronecker-top-d") if z != w else num
        if abs(den) < ZERO_THRESHOLD:
            raise ZeroDetectedError("denominator below threshold", modulus=d)
        out += num / den * float(cfg.weight.value(d / cfg.X))
    return complex(out)


def empirical_thm2_direct(cfg: SweepConfig) -> complex:
    from .lfunc import l2removed

    cap = cfg.resolved_cap()
    w = 0.5 + complex(cfg.alpha)
    z = 0.5 + complex(cfg.beta)
    sv = shared_sieve(max(cap, 4))
    out = 0.0 + 0.0j
    for n in range(1, cap + 1, 2):
        num = l2removed(w, n, sv)
        den = l2removed(z, n, sv) if z != w else num
        if abs(den) < ZERO_THRESHOLD:
            raise ZeroDetectedError("denominator below threshold", modulus=n)
        out += num / den * float(cfg.weight.value(n / cfg.X))
    return complex(out)


def _logderiv_direct(s: complex, n: int, sieve) -> complex:
    """L'/L(s, chi_n) for any odd n: contour differentiation on the kernel
    plus the finite correction for p | n1."""
    from .lfunc import log_derivative
    from .special import zeta

    n0, n1 = sieve.squarefree_kernel(n)
    if n0 == 1:
        base = zeta(s, 1) / zeta(s)
    else:
        base = log_derivative(s, n0, sieve)
    for p, _ in sieve.factor(n1).pairs:
        chi = kronecker(p, n0)
        if chi:
            base += chi * math.log(p) / (complex(p) ** s - chi)
    return base


def empirical_thm3_direct(cfg: SweepConfig) -> complex:
    cap = cfg.resolved_cap()
    s = 0.5 + complex(cfg.r)
    sv = shared_sieve(max(cap, 4))
    out = 0.0 + 0.0j
    for n in range(1, cap + 1, 2):
        out += _logderiv_direct(s, n, sv) * float(cfg.weight.value(n / cfg.X))
    return complex(out)


def empirical_thm4_direct(cfg: SweepConfig) -> complex:
    cap = cfg.resolved_cap()
    s = 0.5 + complex(cfg.r)
    sv = shared_sieve(max(cap, 4))
    out = 0.0 + 0.0j
    for n in range(1, cap + 1, 2):
        if sv.is_squarefree(n):
            out += _logderiv_direct(s, n, sv) * float(cfg.weight.value(n / cfg.X))
    return complex(out)


EMPIRICAL = {1: empirical_thm1, 2: empirical_thm2, 3: empirical_thm3, 4: empirical_thm4}


# ---------------------------------------------------------------------------
# comparison reports


@dataclass(frozen=True)
class ComparisonRow:
    X: float
    empirical: complex
    term1: complex
    term2: complex

    @property
    def abs_err(self) -> float:
        return abs(self.empirical - self.term1 - self.term2)

    @property
    def rel_err(self) -> float:
        tot = abs(self.term1 + self.term2)
        return self.abs_err / tot if tot else math.inf


@dataclass(frozen=True)
class ComparisonReport:
    theorem: int
    alpha: complex
    beta: complex
    r: complex
    rows: tuple
    fitted_slope: float
    theorem_exponent: float


def _predict(cfg: SweepConfig) -> Prediction:
    if cfg.theorem == 1:
        return predict_thm1(cfg.X, cfg.alpha, cfg.beta, cfg.weight)
    if cfg.theorem == 2:
        return predict_thm2(cfg.X, cfg.alpha, cfg.beta, cfg.weight)
    if cfg.theorem == 3:
        return predict_thm3(cfg.X, cfg.r, cfg.weight)
    if cfg.theorem == 4:
        return predict_thm4(cfg.X, cfg.r, cfg.weight)
    raise ValueError(f"unknown theorem {cfg.theorem}")


def fit_error_slope(rows) -> float:
    """Least-squares slope of log|err| vs log X, using only X >= 1e3 rows
    (below that the subleading terms pollute the fit)."""
    xs = [r.X for r in rows if r.X >= 1e3 and r.abs_err > 0]
    es = [r.abs_err for r in rows if r.X >= 1e3 and r.abs_err > 0]
    if len(xs) < 2:
        return math.nan
    lx = np.log(xs)
    le = np.log(es)
    A = np.vstack([lx, np.ones_like(lx)]).T
    slope, _ = np.linalg.lstsq(A, le, rcond=None)[0]
    return float(slope)


def compare(x_grid, cfg: SweepConfig) -> ComparisonReport:
    """Per-X empirical vs predicted main terms with a fitted error slope."""
    xs = [float(x) for x in x_grid]
    if xs != sorted(xs):
        raise ValueError("x_grid must be ascending")
    rows = []
    expo = math.nan
    for x in xs:
        c = replace(cfg, X=x, n_cap=0 if cfg.n_cap == 0 else cfg.n_cap)
        emp = EMPIRICAL[cfg.theorem](c)
        pred = _predict(c)
        expo = pred.error_exponent
        rows.append(ComparisonRow(X=x, empirical=emp, term1=pred.term1, term2=pred.term2))
    return ComparisonReport(
        theorem=cfg.theorem,
        alpha=complex(cfg.alpha),
        beta=complex(cfg.beta),
        r=complex(cfg.r),
        rows=tuple(rows),
        fitted_slope=fit_error_slope(rows),
        theorem_exponent=expo,
    )
