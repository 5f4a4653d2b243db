"""Quadrature over offset spheres and eccentric annular shells.

Everything is reduced to integrals in ``s = cos(angle to the first axis)``,
where the remaining (n - 2) angles contribute the weight
``(1 - s^2)^((n - 3)/2)`` and the constant ``|S^{n-2}|``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DomainError, IntegrationError
from .quadrature import QuadratureRule, gauss_jacobi, gauss_legendre
from .specfun import ln_gamma

__all__ = [
    "QuadratureRule",
    "gauss_legendre",
    "gauss_jacobi",
    "OffsetAnnulusSpec",
    "sphere_area",
    "offset_kernel_integral",
    "boundary_energy_profile",
    "eccentric_volume_integral",
]

DEFAULT_ORDER = 64


def sphere_area(dim: int) -> float:
    """Surface measure of the unit sphere S^dim (``sphere_area(1) == 2*pi``)."""
    if dim < 0:
        raise DomainError("sphere dimension must be >= 0")
    h = 0.5 * (dim + 1)
    return 2.0 * math.exp(h * math.log(math.pi) - ln_gamma(h))


@dataclass(frozen=True)
class OffsetAnnulusSpec:
    """Ball of radius R1 at the origin removed from a ball of radius R2
    centred at ``(x, 0, ..., 0)``."""

    n: int
    R1: float
    R2: float
    x: float = 0.0

    def __post_init__(self):
        if self.n < 2:
            raise DomainError(f"dimension must be >= 2, got {self.n}")
        if not (0 < self.R1 < self.R2):
            raise DomainError(f"need 0 < R1 < R2, got R1={self.R1}, R2={self.R2}")
        if not (0 <= self.x < self.R2 - self.R1):
            raise DomainError(f"offset must satisfy 0 <= x < R2 - R1, got x={self.x}")

    def outer_distance(self, s):
        """Distance from the origin to the outer sphere point at cos-angle ``s``
        (angle measured from the outer sphere's own centre)."""
        return np.sqrt(self.R2 ** 2 + self.x ** 2 + 2.0 * self.R2 * self.x * np.asarray(s))

    def radial_extent(self, s):
        """Largest ``r`` on the ray from the origin with direction cosine ``s``
        that still lies inside the outer ball."""
        s = np.asarray(s, dtype=float)
        x, R2 = self.x, self.R2
        return x * s + np.sqrt(R2 * R2 - x * x * (1.0 - s * s))


def _angular_rule(w: float, rule: QuadratureRule | None, order: int) -> QuadratureRule:
    if rule is None:
        return gauss_jacobi(order, w, w)
    if rule.is_legendre or (rule.alpha == w and rule.beta == w):
        return rule
    raise DomainError(f"rule exponents ({rule.alpha}, {rule.beta}) do not match weight {w}")


def _apply_weight(rule: QuadratureRule, w: float) -> np.ndarray:
    if rule.is_legendre and w != 0:
        return rule.weights * (1.0 - rule.nodes ** 2) ** w
    return rule.weights


def offset_kernel_integral(w: float, p: float, R2: float, x: float,
                           rule: QuadratureRule | None = None,
                           order: int = DEFAULT_ORDER) -> float:
    """``int_{-1}^{1} (1 - s^2)^w (R2^2 + x^2 + 2 R2 x s)^(-p) ds``.

    By default the ``(1 - s^2)^w`` factor is absorbed into a Gauss-Jacobi
    rule so that half-integer ``w`` costs no accuracy; a Legendre ``rule``
    may be passed instead, in which case the weight is applied pointwise.
    """
    if not R2 > 0:
        raise DomainError("R2 must be positive")
    if not 0 <= x < R2:
        raise DomainError(f"kernel singular on the path unless 0 <= x < R2 (x={x}, R2={R2})")
    if w < 0:
        raise DomainError("weight exponent must be non-negative")
    rule = _angular_rule(w, rule, order)
    s = rule.nodes
    base = np.maximum(R2 * R2 + x * x + 2.0 * R2 * x * s, (R2 - x) ** 2)
    vals = np.exp(-p * np.log(base))
    return float(np.dot(_apply_weight(rule, w), vals))


def boundary_energy_profile(n: int, R1: float, R2: float, x: float,
                            rule: QuadratureRule | None = None,
                            order: int = DEFAULT_ORDER) -> float:
    """Reduced boundary energy of the test function ``R1^(2-n) - r^(2-n)``
    on the outer sphere displaced by ``x``:

        I(x) = int_{-1}^{1} (R1^(2-n) - rho(s)^(2-n))^2 (1 - s^2)^((n-3)/2) ds,
        rho(s)^2 = R2^2 + x^2 + 2 R2 x s.

    The full surface integral is ``R2^(n-1) |S^(n-2)| I(x)``.
    """
    if n < 3:
        raise DomainError("boundary energy profile is defined for n >= 3")
    OffsetAnnulusSpec(n, R1, R2, x)
    w = 0.5 * (n - 3)
    rule = _angular_rule(w, rule, order)
    s = rule.nodes
    base = np.maximum(R2 * R2 + x * x + 2.0 * R2 * x * s, (R2 - x) ** 2)
    u = R1 ** (2.0 - n) - np.exp(-0.5 * (n - 2) * np.log(base))
    return float(np.dot(_apply_weight(rule, w), u * u))


def eccentric_volume_integral(spec: OffsetAnnulusSpec, f: Callable[[np.ndarray], np.ndarray],
                              rule: QuadratureRule | None = None,
                              order: int = DEFAULT_ORDER) -> float:
    """``int_D f(|y|) dV`` over the eccentric shell D of ``spec``.

    Works in polar coordinates about the inner centre: for direction cosine
    ``s`` the ray crosses D on ``[R1, radial_extent(s)]``, so

        int_D f dV = |S^(n-2)| int_{-1}^{1} (1-s^2)^((n-3)/2)
                       int_{R1}^{r_max(s)} f(r) r^(n-1) dr ds.

    ``f`` must accept an ndarray of radii. ``rule`` is the radial
    (Legendre) rule; the angular rule is Gauss-Jacobi of the same order.
    """
    n = spec.n
    radial = rule if rule is not None else gauss_legendre(order)
    if not radial.is_legendre:
        raise DomainError("radial rule must be Gauss-Legendre")
    angular = gauss_jacobi(radial.order, 0.5 * (n - 3), 0.5 * (n - 3))
    rmax = spec.radial_extent(angular.nodes)
    r, wr = radial.mapped(spec.R1, rmax)
    vals = np.asarray(f(r), dtype=float) * r ** (n - 1)
    if not np.all(np.isfinite(vals)):
        raise IntegrationError("integrand is not finite inside the domain")
    inner = np.sum(wr * vals, axis=-1)
    return sphere_area(n - 2) * float(np.dot(angular.weights, inner))
