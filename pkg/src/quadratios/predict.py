"""Closed-form main terms and error exponents for the four asymptotic
statements and the sharp-cutoff recipe predictions.

Shift conventions: w = 1/2 + alpha (numerator), z = 1/2 + beta (denominator);
the log-derivative statements take a single shift r.  All exponent arithmetic
happens on real parts.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidShiftsError, PoleError
from .eulerprod import (
    DEFAULT_SPEC,
    EulerProductSpec,
    P_D,
    P_D2,
    log_prime_sum_p,
    log_prime_sum_p_plus_1,
    residue_s1_A,
    residue_s1_AD,
    residue_s_1malpha_A,
)
from .special import (
    POLE_GUARD,
    WeightSpec,
    gamma_complex,
    gamma_e,
    go_plus_ge,
    mellin_weight,
    zeta,
    zeta2_logderiv,
    zeta_logderiv,
    zeta_removed,
)

PREDICT_POLE_GUARD = 1e-3


@dataclass(frozen=True)
class Shifts:
    """Shift pair (alpha, beta); w = 1/2+alpha, z = 1/2+beta."""

    alpha: complex
    beta: complex

    @property
    def w(self) -> complex:
        return 0.5 + complex(self.alpha)

    @property
    def z(self) -> complex:
        return 0.5 + complex(self.beta)

    def valid_thm1(self) -> bool:
        a, b = complex(self.alpha).real, complex(self.beta).real
        return -0.5 < a < 0.5 and 0 < b < 0.5 and b > abs(a)

    def valid_thm2(self) -> bool:
        a, b = complex(self.alpha).real, complex(self.beta).real
        return a > 0 and b > 0 and 1 + b > a


def valid_thm3(r: complex) -> bool:
    return complex(r).real > 0


def valid_thm4(r: complex) -> bool:
    return 0 < complex(r).real < 0.25


@dataclass(frozen=True)
class Prediction:
    term1: complex
    term2: complex
    error_exponent: float
    X: float

    @property
    def total(self) -> complex:
        return self.term1 + self.term2


def M_exponent(alpha: complex, beta: complex) -> float:
    """max(5/8 - Re(a)/2, 1 - Re(b), 1 - Re(a)/2 - Re(b)/2)."""
    a, b = complex(alpha).real, complex(beta).real
    if not Shifts(alpha, beta).valid_thm1():
        raise InvalidShiftsError(f"shifts ({alpha}, {beta}) outside the fundamental-discriminant range")
    return max(0.625 - a / 2, 1 - b, 1 - a / 2 - b / 2)


def N_exponent(alpha: complex, beta: complex) -> float:
    """max(1-2Re(a), 1-2Re(b), 1/2-Re(a), 1/2-Re(b), -5/2)."""
    a, b = complex(alpha).real, complex(beta).real
    return max(1 - 2 * a, 1 - 2 * b, 0.5 - a, 0.5 - b, -2.5)


def N_r(r: complex) -> float:
    rr = complex(r).real
    return max(1 - 2 * rr, 0.5 - rr, -2.5)


def _guard(u: complex, what: str) -> None:
    if abs(complex(u) - 1.0) < PREDICT_POLE_GUARD:
        raise PoleError(f"{what}: zeta argument {u} within {PREDICT_POLE_GUARD} of the pole")


def _mellin_continued(weight: WeightSpec, s: complex) -> complex:
    """Mf(s) continued past the convergence strip: Gamma(s) for the
    exponential weight.  The X^{1-shift} terms need this for shifts > 1/2."""
    s = complex(s)
    if s.imag == 0 and s.real <= 0 and s.real == int(s.real):
        raise PoleError(f"Mellin factor Gamma({s}) is at a pole")
    return gamma_complex(s)


def predict_thm1(
    X: float,
    alpha: complex,
    beta: complex,
    weight: WeightSpec | None = None,
    spec: EulerProductSpec = DEFAULT_SPEC,
) -> Prediction:
    """Main terms of the fundamental-discriminant ratio sum:

    term1 = X Mf(1) zeta(1+2a) / (2 zeta(2) zeta(1+a+b)) * P_D(1/2+b, 1/2+a)
    term2 = X^{1-a} Mf(1-a) zeta(1-2a) pi^a Gamma_e(1/2+a)
            / (2 zeta(2) zeta(1-a+b)) * P_D(1/2+b, 1/2-a)

    P_D carries the denominator shift in its first slot, matching the s=1
    residue (the arithmetic factor equals the recipe's A_D(alpha, beta)).
    """
    w = weight or WeightSpec()
    a, b = complex(alpha), complex(beta)
    _guard(1 + 2 * a, "predict_thm1 term1")
    _guard(1 + a + b, "predict_thm1 term1")
    term1 = X * mellin_weight(w, 1.0) * residue_s1_AD(0.5 + a, 0.5 + b, spec)
    if a == b:
        term2 = 0.0 + 0.0j
    else:
        _guard(1 - 2 * a, "predict_thm1 term2")
        u = 1 - a + b
        if abs(u - 1.0) < POLE_GUARD:
            term2 = 0.0 + 0.0j
        else:
            term2 = (
                X ** (1 - a)
                * _mellin_continued(w, 1 - a)
                * zeta(1 - 2 * a)
                * np.pi**a
                * gamma_e(0.5 + a)
                / (2 * zeta(2.0) * zeta(u))
                * P_D(0.5 + b, 0.5 - a, spec)
            )
    # the terms extend continuously outside the theorem's shift box (e.g. the
    # a=b diagonal); only the error exponent is tied to the stated range
    expo = M_exponent(a, b) if Shifts(a, b).valid_thm1() else float("nan")
    return Prediction(complex(term1), complex(term2), expo, float(X))


def predict_thm2(
    X: float,
    alpha: complex,
    beta: complex,
    weight: WeightSpec | None = None,
    spec: EulerProductSpec = DEFAULT_SPEC,
) -> Prediction:
    """Main terms of the all-odd-moduli ratio sum (both residues of A)."""
    w = weight or WeightSpec()
    a, b = complex(alpha), complex(beta)
    _guard(1 + 2 * a, "predict_thm2 term1")
    _guard(1 + a + b, "predict_thm2 term1")
    term1 = X * mellin_weight(w, 1.0) * residue_s1_A(a, b, spec)
    if a == b:
        term2 = 0.0 + 0.0j
    else:
        _guard(1 - 2 * a, "predict_thm2 term2")
        term2 = X ** (1 - a) * _mellin_continued(w, 1 - a) * residue_s_1malpha_A(a, b, spec)
    return Prediction(complex(term1), complex(term2), N_exponent(a, b), float(X))


def predict_thm3(
    X: float,
    r: complex,
    weight: WeightSpec | None = None,
    spec: EulerProductSpec = DEFAULT_SPEC,
    removed2: bool = False,
) -> Prediction:
    """Main terms of the log-derivative sum over all odd moduli:

    term1 = (X Mf(1)/2)(zeta'/zeta(1+2r) + sum_{p>2} log p / (p(p^{1+2r}-1)))
    term2 = -X^{1-r} Mf(1-r) pi^r (Go+Ge)(1/2+r) zeta(1-2r) / 4

    removed2=True gives the L_(2) variant (zeta'_(2)/zeta_(2) in term1), the
    exact alpha-derivative of the ratio asymptotics before the Euler factor
    at 2 is restored.
    """
    w = weight or WeightSpec()
    r = complex(r)
    if not valid_thm3(r):
        raise InvalidShiftsError(f"r={r} needs Re(r) > 0")
    _guard(1 + 2 * r, "predict_thm3")
    _guard(1 - 2 * r, "predict_thm3")
    zl = zeta2_logderiv(1 + 2 * r) if removed2 else zeta_logderiv(1 + 2 * r)
    term1 = X * mellin_weight(w, 1.0) / 2 * (zl + log_prime_sum_p(r, spec))
    term2 = (
        -(X ** (1 - r))
        * _mellin_continued(w, 1 - r)
        * np.pi**r
        * go_plus_ge(0.5 + r)
        * zeta(1 - 2 * r)
        / 4
    )
    return Prediction(complex(term1), complex(term2), N_r(r), float(X))


def predict_thm4(
    X: float,
    r: complex,
    weight: WeightSpec | None = None,
    spec: EulerProductSpec = DEFAULT_SPEC,
) -> Prediction:
    """Main terms of the squarefree log-derivative sum:

    term1 = (2X Mf(1)/(3 zeta(2)))(zeta'/zeta(1+2r) + sum_{p>2} log p/((p+1)(p^{1+2r}-1)))
    term2 = -X^{1-r} Mf(1-r) pi^r (Go+Ge)(1/2+r) zeta(1-2r) / (4 zeta_(2)(2-2r))

    Error exponent 1 - 2 Re(r); requires 0 < Re(r) < 1/4 (strict).
    """
    w = weight or WeightSpec()
    r = complex(r)
    if not valid_thm4(r):
        raise InvalidShiftsError(f"r={r} needs 0 < Re(r) < 1/4")
    _guard(1 + 2 * r, "predict_thm4")
    _guard(1 - 2 * r, "predict_thm4")
    term1 = X * mellin_weight(w, 1.0) * 2 / (3 * zeta(2.0)) * (
        zeta_logderiv(1 + 2 * r) + log_prime_sum_p_plus_1(r, spec)
    )
    term2 = (
        -(X ** (1 - r))
        * _mellin_continued(w, 1 - r)
        * np.pi**r
        * go_plus_ge(0.5 + r)
        * zeta(1 - 2 * r)
        / (4 * zeta_removed(2 - 2 * r, 2))
    )
    return Prediction(complex(term1), complex(term2), 1 - 2 * r.real, float(X))


def predict_appB_ratios(
    X: float,
    alpha: complex,
    beta: complex,
    spec: EulerProductSpec = DEFAULT_SPEC,
) -> Prediction:
    """Sharp-cutoff recipe prediction for the squarefree ratio sum
    (Mf(s) ~ 1/s convention, hence the 1/(1-alpha) in the second term):

    term1 = (2X/(3 zeta(2))) zeta(1+2a)/zeta(1+a+b) P_D2(a, b)
    term2 = X^{1-a} pi^a (Ge+Go)(1/2+a) zeta(1-2a)
            / ((1-a) 3 zeta(2) zeta(1-a+b)) * P_D2(-a, b)

    Not directly comparable to the smooth-weight empirical sums.
    """
    a, b = complex(alpha), complex(beta)
    _guard(1 + 2 * a, "predict_appB_ratios")
    _guard(1 + a + b, "predict_appB_ratios")
    term1 = 2 * X / (3 * zeta(2.0)) * zeta(1 + 2 * a) / zeta(1 + a + b) * P_D2(a, b, spec)
    if a == b:
        term2 = 0.0 + 0.0j
    else:
        _guard(1 - 2 * a, "predict_appB_ratios")
        u = 1 - a + b
        if abs(u - 1.0) < POLE_GUARD:
            term2 = 0.0 + 0.0j
        else:
            term2 = (
                X ** (1 - a)
                * np.pi**a
                * go_plus_ge(0.5 + a)
                * zeta(1 - 2 * a)
                / ((1 - a) * 3 * zeta(2.0) * zeta(u))
                * P_D2(-a, b, spec)
            )
    return Prediction(complex(term1), complex(term2), 0.5, float(X))


def predict_appB_logderiv(X: float, r: complex, spec: EulerProductSpec = DEFAULT_SPEC) -> Prediction:
    """Sharp-cutoff recipe prediction for the squarefree log-derivative sum:

    term1 = (2X/(3 zeta(2)))(zeta'/zeta(1+2r) + sum_{p>2} log p/((p+1)(p^{1+2r}-1)))
    term2 = -X^{1-r} pi^r (Ge+Go)(1/2+r) zeta(1-2r) P_D2(-r, r) / ((1-r) 3 zeta(2))

    P_D2(r,r) = 1 collapses the first term's product; P_D2(-r,r)/(3 zeta(2))
    = 1/(4 zeta_(2)(2-2r)) bridges term2 to the proven squarefree statement.
    """
    r = complex(r)
    _guard(1 + 2 * r, "predict_appB_logderiv")
    _guard(1 - 2 * r, "predict_appB_logderiv")
    term1 = 2 * X / (3 * zeta(2.0)) * (zeta_logderiv(1 + 2 * r) + log_prime_sum_p_plus_1(r, spec))
    term2 = (
        -(X ** (1 - r))
        * np.pi**r
        * go_plus_ge(0.5 + r)
        * zeta(1 - 2 * r)
        * P_D2(-r, r, spec)
        / ((1 - r) * 3 * zeta(2.0))
    )
    return Prediction(complex(term1), complex(term2), 0.5, float(X))
