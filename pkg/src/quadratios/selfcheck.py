"""Fast self-check suites for the CLI: scaled-down versions of the formula
identities (the full-scale versions live in the acceptance tests).

Each suite returns (name, ok, detail); inject_fault perturbs the computed
side by 1e-6 to prove the comparisons have teeth.
"""

from __future__ import annotations

from .arith import shared_sieve
from .eulerprod import DEFAULT_SPEC, P_D2, P_big, residue_s1_AD
from .gauss import QuadChar, chi_values_jacobi, g_normalization, tau_bruteforce, G_quadratic
from .lfunc import funceq_gauss_check, l_D_closed, l_D_partial, theta_funceq_check
from .special import zeta, zeta_removed

FAULT = 0.0  # set to a perturbation size by run_suites(inject_fault=True)


def _suite_gauss(sieve) -> tuple[bool, str]:
    worst = 0.0
    for n in range(1, 300, 2):
        vals = chi_values_jacobi(n)
        gn = g_normalization(n)
        for q in range(0, 41, 5):
            bf = gn * tau_bruteforce(vals, q)
            ex = G_quadratic(n, q, sieve) * (1.0 + FAULT)
            worst = max(worst, abs(bf - ex))
    return worst <= 1e-9, f"max |G - normalized tau| = {worst:.3e} (tol 1e-9)"


def _suite_funceq(sieve) -> tuple[bool, str]:
    worst = 0.0
    for n in range(1, 50, 2):
        for s in (-0.5, -1.5 + 0.3j):
            worst = max(worst, funceq_gauss_check(s, n, sieve) + abs(FAULT))
    return worst <= 1e-8, f"max functional-equation residual = {worst:.3e} (tol 1e-8)"


def _suite_theta(sieve) -> tuple[bool, str]:
    worst = 0.0
    for n in range(1, 26, 2):
        for y in (0.3, 1.0, 3.0):
            worst = max(worst, theta_funceq_check(n, y) + abs(FAULT))
    return worst <= 1e-10, f"max theta residual = {worst:.3e} (tol 1e-10)"


def _suite_lemma24(sieve) -> tuple[bool, str]:
    worst = 0.0
    for chi in (QuadChar.from_modulus(3), QuadChar.from_modulus(5), None):
        p = l_D_partial(2.0, chi, 10**6)
        c = l_D_closed(2.0, chi) * (1.0 + FAULT)
        worst = max(worst, abs(p - c))
    return worst <= 3e-6, f"max |partial - closed| at s=2, D=1e6: {worst:.3e} (tol 3e-6)"


def _suite_euler(sieve) -> tuple[bool, str]:
    msgs = []
    ok = True
    v = abs(P_big(1.5, DEFAULT_SPEC) * (1.0 + FAULT) - zeta(2.0))
    ok &= v <= 1e-10
    msgs.append(f"P(3/2)-zeta(2): {v:.2e}")
    wr = 0.0
    for r in (0.05, 0.1, 0.2):
        lhs = P_D2(-r, r, DEFAULT_SPEC) / (3 * zeta(2.0)) * (1.0 + FAULT)
        rhs = 1.0 / (4 * zeta_removed(2 - 2 * r, 2))
        wr = max(wr, abs(lhs - rhs))
    ok &= wr <= 1e-8
    msgs.append(f"P_D2 identity: {wr:.2e}")
    # residue at s=1 vs brute-force square-indexed double sum (quick cutoff)
    bf = _brute_residue_AD(2.0, 2.0, 3000, sieve)
    v = abs(residue_s1_AD(2.0, 2.0, DEFAULT_SPEC) * (1.0 + FAULT) - bf)
    ok &= v <= 1e-6
    msgs.append(f"residue_AD(2,2) vs brute: {v:.2e}")
    return bool(ok), "; ".join(msgs)


def _brute_residue_AD(w: float, z: float, kt_max: int, sieve) -> float:
    tot = 0.0
    for k in range(1, kt_max + 1):
        mu = sieve.mobius(k)
        if mu == 0:
            continue
        for t in range(1, kt_max // k + 1):
            m = k * t * t
            val = mu * m ** (-w) * k ** (-z)
            for p, _ in sieve.factor(k * t).pairs:
                val *= p / (p + 1.0)
            tot += val
    return tot / (2 * zeta(2.0).real)


SUITES = {
    "gauss": _suite_gauss,
    "funceq": _suite_funceq,
    "theta": _suite_theta,
    "lemma24": _suite_lemma24,
    "euler": _suite_euler,
}


def run_suites(names=None, inject_fault: bool = False, out=print) -> bool:
    global FAULT
    FAULT = 1e-4 if inject_fault else 0.0
    sieve = shared_sieve()
    all_ok = True
    try:
        for name in names or SUITES:
            ok, detail = SUITES[name](sieve)
            all_ok &= ok
            out(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
    finally:
        FAULT = 0.0
    return bool(all_ok)
