"""Gamma, Pochhammer and Gauss hypergeometric evaluation, plus the four
coefficient families of the offset-sphere kernel expansions.

The coefficient families expand

    int_{-1}^{1} (1 - s^2)^w (R^2 + x^2 + 2 R x s)^{-p} ds
        = sum_t c(t) x^{2t} / R^{2t + 2p}

for the four (w, p) pairs used by the boundary-energy comparison:

    ALPHA       w = k - 1,        p = 2k - 1
    BETA        w = k - 1,        p = (2k - 1)/2
    ALPHA_HAT   w = (2k - 3)/2,   p = 2k - 2
    BETA_HAT    w = (2k - 3)/2,   p = k - 1

BETA and BETA_HAT vanish for t >= 1, which is why the corresponding kernel
integrals do not depend on the offset x at all.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ConvergenceError, DomainError
from .quadrature import QuadratureRule, gauss_jacobi

# Lanczos approximation, g = 7, n = 9.
_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)
_SQRT_PI = math.sqrt(math.pi)


def ln_gamma(s: float) -> float:
    """Natural log of the Gamma function for real ``s > 0``."""
    if not s > 0:
        raise DomainError(f"ln_gamma requires s > 0, got {s}")
    if s < 0.5:
        # reflection keeps the Lanczos sum in its accurate range
        return math.log(math.pi / math.sin(math.pi * s)) - ln_gamma(1.0 - s)
    z = s - 1.0
    acc = _LANCZOS_COEF[0]
    for i in range(1, len(_LANCZOS_COEF)):
        acc += _LANCZOS_COEF[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return _HALF_LOG_2PI + (z + 0.5) * math.log(t) - t + math.log(acc)


def gamma_fn(s: float) -> float:
    return math.exp(ln_gamma(s))


def gamma_ratio(num: tuple[float, ...], den: tuple[float, ...]) -> float:
    """``prod Gamma(num) / prod Gamma(den)`` evaluated in log space."""
    return math.exp(sum(ln_gamma(a) for a in num) - sum(ln_gamma(b) for b in den))


def pochhammer(q, m: int):
    """Rising factorial ``(q)_m``; exact when ``q`` is an int or Fraction."""
    if m < 0:
        raise DomainError(f"pochhammer needs m >= 0, got {m}")
    out = 1
    for j in range(m):
        out *= q + j
    return out


def wallis_integral(w: float) -> float:
    """``int_{-1}^{1} (1 - s^2)^w ds = sqrt(pi) Gamma(w + 1) / Gamma(w + 3/2)``."""
    if w <= -1:
        raise DomainError("Wallis integral diverges for w <= -1")
    return _SQRT_PI * gamma_ratio((w + 1.0,), (w + 1.5,))


@dataclass(frozen=True)
class SeriesPolicy:
    rel_tol: float = 1e-16
    max_terms: int = 100_000

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise DomainError("rel_tol must be positive")
        if self.max_terms < 1:
            raise DomainError("max_terms must be >= 1")


DEFAULT_POLICY = SeriesPolicy()


def _is_nonpositive_int(c: float) -> bool:
    return c <= 0 and float(c).is_integer()


def hyp2f1_series(a: float, b: float, c: float, z: float,
                  policy: SeriesPolicy = DEFAULT_POLICY) -> float:
    """Gauss 2F1 by direct summation of the power series.

    Points with ``|z|`` within 1e-6 of 1 are accepted only when
    ``c - a - b > 0``; the series is summed but may then exhaust
    ``policy.max_terms``, which raises :class:`ConvergenceError`.
    """
    if _is_nonpositive_int(c):
        raise DomainError(f"c = {c} is a non-positive integer")
    az = abs(z)
    if az > 1.0 + 1e-15 or (az > 1.0 - 1e-6 and not c - a - b > 0):
        raise DomainError(f"power series does not converge at z = {z} (a={a}, b={b}, c={c})")
    total = 1.0
    term = 1.0
    for m in range(policy.max_terms):
        term *= (a + m) * (b + m) / ((c + m) * (m + 1)) * z
        total += term
        if term == 0.0 or abs(term) < policy.rel_tol * abs(total):
            return total
    raise ConvergenceError(f"2F1 series not converged after {policy.max_terms} terms (z={z})")


def hyp2f1_integral(a: float, b: float, c: float, z: float, order: int = 64,
                    rule: QuadratureRule | None = None) -> float:
    """Gauss 2F1 from the Euler integral, for real ``c > b > 0`` and ``z < 1``.

    The endpoint factors ``x^(b-1) (1-x)^(c-b-1)`` are absorbed into a
    Gauss-Jacobi rule, leaving the analytic factor ``(1 - z x)^(-a)``.
    ``rule`` overrides the rule built from ``order``; it must carry the
    matching Jacobi exponents ``(c - b - 1, b - 1)``.
    """
    if not (c > b > 0):
        raise DomainError(f"integral form needs c > b > 0, got b={b}, c={c}")
    if z >= 1.0:
        raise DomainError(f"integral form needs z < 1, got {z}")
    al, be = c - b - 1.0, b - 1.0
    if rule is None:
        rule = gauss_jacobi(order, al, be)
    elif (rule.alpha, rule.beta) != (al, be):
        raise DomainError("rule exponents do not match (c - b - 1, b - 1)")
    x = 0.5 * (1.0 + rule.nodes)
    # x = (1+s)/2 turns x^(b-1)(1-x)^(c-b-1) dx into 2^(1-c) (1+s)^(b-1)(1-s)^(c-b-1) ds
    integral = 2.0 ** (1.0 - c) * float(np.dot(rule.weights, (1.0 - z * x) ** (-a)))
    return gamma_ratio((c,), (b, c - b)) * integral


class CoeffFamily(str, enum.Enum):
    ALPHA = "alpha"
    BETA = "beta"
    ALPHA_HAT = "alpha_hat"
    BETA_HAT = "beta_hat"


def kernel_exponents(family: CoeffFamily | str, k: int) -> tuple[float, float]:
    """``(w, p)`` of the kernel integral that ``family`` expands at index ``k``."""
    family = CoeffFamily(family)
    _check_family_k(family, k)
    if family is CoeffFamily.ALPHA:
        return k - 1.0, 2.0 * k - 1.0
    if family is CoeffFamily.BETA:
        return k - 1.0, (2.0 * k - 1.0) / 2.0
    if family is CoeffFamily.ALPHA_HAT:
        return (2.0 * k - 3.0) / 2.0, 2.0 * k - 2.0
    return (2.0 * k - 3.0) / 2.0, k - 1.0


def _check_family_k(family: CoeffFamily, k: int) -> None:
    if isinstance(k, bool) or int(k) != k:
        raise DomainError(f"k must be an integer, got {k!r}")
    kmin = 1 if family in (CoeffFamily.ALPHA, CoeffFamily.BETA) else 2
    if k < kmin:
        raise DomainError(f"{family.value} is defined for k >= {kmin}, got k={k}")


def _prefactor(family: CoeffFamily, k: int) -> float:
    if family in (CoeffFamily.ALPHA, CoeffFamily.BETA):
        return _SQRT_PI * gamma_ratio((k,), (k + 0.5,))
    return _SQRT_PI * gamma_ratio((k - 0.5,), (k,))


def _exact_inner_sum(family: CoeffFamily, k: int, t: int) -> Fraction:
    """The alternating i = 0..t sum, evaluated in exact rational arithmetic.

    Every Gamma quotient in the sum is a Pochhammer symbol with rational
    argument, so the sum is rational; floating evaluation loses up to eight
    digits to cancellation by t = 12.
    """
    half = Fraction(1, 2)
    total = Fraction(0)
    for i in range(t + 1):
        sign = -1 if (t - i) % 2 else 1
        denom = math.factorial(i) * math.factorial(t - i)
        if family is CoeffFamily.ALPHA:
            kh = k - half
            term = (4 ** i * pochhammer(k, i) * kh / (kh + i)
                    * pochhammer(2 * i + 2 * k - 1, t - i))
        elif family is CoeffFamily.BETA:
            a1, a2 = Fraction(2 * k - 1, 4), Fraction(2 * k + 1, 4)
            term = (4 ** i * pochhammer(a1, i) * pochhammer(a2, i) / pochhammer(k + half, i)
                    * pochhammer(Fraction(4 * i + 2 * k - 1, 2), t - i))
        elif family is CoeffFamily.ALPHA_HAT:
            term = (4 ** i * pochhammer(k - half, i) * Fraction(k - 1, k - 1 + i)
                    * pochhammer(2 * i + 2 * k - 2, t - i))
        else:
            a1, a2 = Fraction(k - 1, 2), Fraction(k, 2)
            term = (4 ** i * pochhammer(a1, i) * pochhammer(a2, i) / pochhammer(Fraction(k), i)
                    * pochhammer(2 * i + k - 1, t - i))
        total += sign * Fraction(term) / denom
    return total


def _closed_form(family: CoeffFamily, k: int, t: int) -> float:
    pref = _prefactor(family, k)
    if family is CoeffFamily.ALPHA:
        return pref * (2 * k - 1) / (2 * k + 2 * t - 1) * gamma_ratio(
            (2 * k + t - 1.0,), (2 * k - 1.0, t + 1.0))
    if family is CoeffFamily.ALPHA_HAT:
        return pref * (k - 1) / (k + t - 1) * gamma_ratio(
            (2 * k - 2.0 + t,), (2 * k - 2.0, t + 1.0))
    return pref if t == 0 else 0.0


def series_coefficient(family: CoeffFamily | str, k: int, t: int,
                       method: str = "closed_form") -> float:
    """Coefficient of ``x^{2t} / R^{2t + 2p}`` in the kernel expansion.

    ``method="finite_sum"`` evaluates the alternating i = 0..t sum,
    ``method="closed_form"`` the simplified Gamma-ratio expression.
    """
    family = CoeffFamily(family)
    _check_family_k(family, k)
    if isinstance(t, bool) or int(t) != t or t < 0:
        raise DomainError(f"t must be a non-negative integer, got {t!r}")
    k, t = int(k), int(t)
    if method == "finite_sum":
        return _prefactor(family, k) * float(_exact_inner_sum(family, k, t))
    if method == "closed_form":
        return _closed_form(family, k, t)
    raise DomainError(f"unknown method {method!r}")
