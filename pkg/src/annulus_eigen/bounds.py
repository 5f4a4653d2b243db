"""Rayleigh-quotient upper bounds built from explicit test functions.

Steklov side: the concentric eigenfunction ``R1^(2-n) - r^(2-n)`` used on
an eccentric shell. Neumann side: the annulus eigenfunction ``g(r) x_i / r``
extended by ``g(r2)`` outside the equal-volume ball, used on a
centrally symmetric star-shaped domain with a concentric hole.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np
from scipy.interpolate import CubicHermiteSpline
from scipy.optimize import brentq

from .errors import DomainError
from .quadgeom import (OffsetAnnulusSpec, boundary_energy_profile, eccentric_volume_integral,
                       sphere_area)
from .quadrature import gauss_legendre
from .radial import (DEFAULT_STEPS, DEFAULT_TOL, AnnulusSpec, Euclidean, b_function,
                     neumann_radial_mu1)
from .reports import Certificate, CheckReport

GRADIENT_SEED = 0x5EED_0F_A11_0C0FFEE


class SteklovQuotient(NamedTuple):
    quotient: float
    numerator: float
    denominator: float


def steklov_testfn_quotient(spec: OffsetAnnulusSpec, rule=None, order: int = 64) -> SteklovQuotient:
    """Rayleigh quotient of ``R1^(2-n) - r^(2-n)`` on the eccentric shell.

    It bounds the first Steklov-Dirichlet eigenvalue of ``spec`` from above
    and equals the concentric eigenvalue when ``spec.x == 0``.
    """
    n = spec.n
    if n < 3:
        raise DomainError("the potential-type test function is used for n >= 3 only")
    c = float(n - 2)
    numerator = eccentric_volume_integral(spec, lambda r: (c / r ** (n - 1)) ** 2,
                                          rule=rule, order=order)
    profile = boundary_energy_profile(n, spec.R1, spec.R2, spec.x, order=order)
    denominator = spec.R2 ** (n - 1) * sphere_area(n - 2) * profile
    return SteklovQuotient(numerator / denominator, numerator, denominator)


# --------------------------------------------------------------------------
# symmetric domains
# --------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class SymmetricDomainSpec:
    """Star-shaped domain with boundary ``r = R(angle)`` minus a concentric
    ball of radius ``r1``.

    In 2D ``boundary`` takes the polar angle in [0, 2pi); in 3D the domain
    is axisymmetric and ``boundary`` takes the polar angle phi in [0, pi].
    Central symmetry is required: ``R(t) = R(t + pi)`` in 2D and
    ``R(phi) = R(pi - phi)`` in 3D.
    """

    dimension: int
    boundary: Callable[[np.ndarray], np.ndarray]
    r1: float

    def __post_init__(self):
        if self.dimension not in (2, 3):
            raise DomainError("dimension must be 2 or 3")
        if not self.r1 > 0:
            raise DomainError("inner radius must be positive")
        if self.dimension == 2:
            t = np.linspace(0.0, math.pi, 1024, endpoint=False)
            Ra, Rb = self.R(t), self.R(t + math.pi)
        else:
            t = np.linspace(0.0, math.pi, 1025)
            Ra, Rb = self.R(t), self.R(math.pi - t)
        if not np.all(np.isfinite(Ra)):
            raise DomainError("boundary profile is not finite")
        if np.max(np.abs(Ra - Rb)) > 1e-12 * np.max(Ra):
            raise DomainError("boundary profile is not centrally symmetric")
        if not np.min(np.concatenate((Ra, Rb))) > self.r1:
            raise DomainError("inner ball is not contained in the domain (need min R > r1)")

    def R(self, t):
        return np.asarray(self.boundary(np.asarray(t, dtype=float)), dtype=float)

    @property
    def period(self) -> float:
        return 2.0 * math.pi if self.dimension == 2 else math.pi

    @classmethod
    def disk(cls, radius: float, r1: float, dimension: int = 2) -> "SymmetricDomainSpec":
        return cls(dimension, lambda t: np.full_like(t, radius, dtype=float), r1)

    @classmethod
    def ellipse(cls, a: float, b: float, r1: float) -> "SymmetricDomainSpec":
        return cls(2, lambda t: a * b / np.sqrt((b * np.cos(t)) ** 2 + (a * np.sin(t)) ** 2), r1)

    @classmethod
    def spheroid(cls, a: float, c: float, r1: float) -> "SymmetricDomainSpec":
        """Spheroid with equatorial semi-axis ``a`` and polar semi-axis ``c``."""
        return cls(3, lambda p: 1.0 / np.sqrt((np.sin(p) / a) ** 2 + (np.cos(p) / c) ** 2), r1)


ANGULAR_PANELS = 8


def _angular_panels(domain: SymmetricDomainSpec, r2: float | None, order: int):
    """Quadrature nodes (angles) and measure weights over the unit sphere,
    split wherever ``R(angle) = r2`` so each panel's integrand is smooth."""
    hi = domain.period
    breaks = np.linspace(0.0, hi, ANGULAR_PANELS + 1).tolist()
    if r2 is not None:
        t = np.linspace(0.0, hi, 4097)
        d = domain.R(t) - r2
        for j in np.nonzero(np.sign(d[:-1]) * np.sign(d[1:]) < 0)[0]:
            breaks.append(brentq(lambda s: float(domain.R(s)) - r2, t[j], t[j + 1], xtol=1e-15))
        breaks.extend(t[np.nonzero(d == 0.0)[0]].tolist())
    breaks = np.unique(breaks)
    rule = gauss_legendre(order)
    nodes, weights = rule.mapped(breaks[:-1], breaks[1:])
    nodes, weights = nodes.ravel(), weights.ravel()
    if domain.dimension == 3:
        weights = 2.0 * math.pi * np.sin(nodes) * weights
    return nodes, weights


def domain_volume(domain: SymmetricDomainSpec, order: int = 128) -> float:
    """Volume of the star-shaped region ``r < R`` (hole included)."""
    nodes, weights = _angular_panels(domain, None, order)
    d = domain.dimension
    return float(np.dot(weights, domain.R(nodes) ** d)) / d


def equal_volume_radius(domain: SymmetricDomainSpec, order: int = 128) -> float:
    """Radius of the Euclidean ball with the same volume as the domain."""
    vol = domain_volume(domain, order)
    d = domain.dimension
    return (vol / (sphere_area(d - 1) / d)) ** (1.0 / d)


class _RadialPrimitive:
    """Antiderivative ``P(rho) = int_{r1}^{rho} F`` from samples of F and F'."""

    def __init__(self, grid: np.ndarray, F: np.ndarray, dF: np.ndarray):
        h = np.diff(grid)
        seg = 0.5 * h * (F[:-1] + F[1:]) + h * h / 12.0 * (dF[:-1] - dF[1:])
        self._spline = CubicHermiteSpline(grid, np.concatenate(([0.0], np.cumsum(seg))), F)

    def __call__(self, rho):
        return self._spline(rho)


@dataclass(frozen=True)
class NeumannBound:
    bound: float
    fun_integral: float
    energy_integral: float
    mu1_annulus: float
    r2: float
    fun_annulus: float
    energy_annulus: float
    first_moments: tuple[float, ...]


def _neumann_pieces(domain, tol, steps):
    n = domain.dimension
    r2 = equal_volume_radius(domain)
    if not r2 > domain.r1:
        raise DomainError("equal-volume radius does not exceed the inner radius")
    space = Euclidean(n)
    mu1, g = neumann_radial_mu1(space, AnnulusSpec(domain.r1, r2), tol, steps)
    return n, r2, space, mu1, g


def neumann_testfn_bound(domain: SymmetricDomainSpec, space=None, tol: float = DEFAULT_TOL,
                         steps: int = DEFAULT_STEPS, angular_order: int = 96) -> NeumannBound:
    """Upper bound for the first non-zero Neumann eigenvalue of ``domain``.

    Uses ``h(x) x_i/|x|`` with ``h = g`` (the annulus eigenfunction on
    ``(r1, r2)``, ``r2`` the equal-volume radius) inside ``r2`` and
    ``h = g(r2)`` beyond, summed over i. Only Euclidean spaces are supported.
    """
    if space is not None and not (isinstance(space, Euclidean) and space.n == domain.dimension):
        raise DomainError("neumann_testfn_bound supports the Euclidean space of the domain's dimension")
    n, r2, space, mu1, g = _neumann_pieces(domain, tol, steps)
    r = g.grid
    J, dJ = r ** (n - 1), (n - 1) * r ** (n - 2)
    gv, dg = g.values, g.dvalues
    _, B, dB = b_function(space, mu1, g)
    fun_prim = _RadialPrimitive(r, gv * gv * J, 2.0 * gv * dg * J + gv * gv * dJ)
    energy_prim = _RadialPrimitive(r, B * J, dB * J + B * dJ)
    mom_prim = _RadialPrimitive(r, gv * J, dg * J + gv * dJ)
    g2 = float(gv[-1])

    nodes, weights = _angular_panels(domain, r2, angular_order)
    R = domain.R(nodes)
    inside = np.minimum(R, r2)
    out = R > r2
    Ro = np.where(out, R, r2)
    fun_out = g2 * g2 * (Ro ** n - r2 ** n) / n
    if n == 2:
        energy_out = g2 * g2 * np.log(Ro / r2)
    else:
        energy_out = g2 * g2 * (n - 1) * (Ro ** (n - 2) - r2 ** (n - 2)) / (n - 2)
    mom_out = g2 * (Ro ** n - r2 ** n) / n

    fun = float(np.dot(weights, fun_prim(inside) + fun_out))
    energy = float(np.dot(weights, energy_prim(inside) + energy_out))
    radial_mom = mom_prim(inside) + mom_out
    if n == 2:
        moments = (float(np.dot(weights, np.cos(nodes) * radial_mom)),
                   float(np.dot(weights, np.sin(nodes) * radial_mom)))
    else:
        moments = (float(np.dot(weights, np.cos(nodes) * radial_mom)),)
    area = sphere_area(n - 1)
    return NeumannBound(
        bound=energy / fun,
        fun_integral=fun,
        energy_integral=energy,
        mu1_annulus=mu1,
        r2=r2,
        fun_annulus=area * float(fun_prim(r2)),
        energy_annulus=area * float(energy_prim(r2)),
        first_moments=moments,
    )


def gradient_identity_check(n: int, r1: float, r2: float, samples: int = 100,
                            seed: int = GRADIENT_SEED, step: float = 1e-5,
                            outer_samples: int = 0, tol: float = 1e-6) -> Certificate:
    """Finite-difference check of
    ``sum_i |grad(h(r) x_i/r)|^2 = h'(r)^2 + (n-1)/r^2 h(r)^2``.

    Points are drawn uniformly in radius on ``(r1, r2)`` with uniformly
    random directions; ``outer_samples`` extra points fall in
    ``(r2, 1.5 r2)`` where h is the constant ``g(r2)``.
    """
    space = Euclidean(n)
    mu1, g = neumann_radial_mu1(space, AnnulusSpec(r1, r2))
    g2 = float(g.values[-1])

    def h(rr):
        rr = np.asarray(rr, dtype=float)
        val, _ = g.interpolate(np.clip(rr, r1, r2))
        return np.where(rr <= r2, val, g2)

    def dh(rr):
        rr = np.asarray(rr, dtype=float)
        _, der = g.interpolate(np.clip(rr, r1, r2))
        return np.where(rr <= r2, der, 0.0)

    rng = np.random.default_rng(seed)
    margin = 4 * step
    radii = rng.uniform(r1 + margin, r2 - margin, samples)
    if outer_samples:
        radii = np.concatenate((radii, rng.uniform(r2 + margin, 1.5 * r2, outer_samples)))
    dirs = rng.normal(size=(len(radii), n))
    dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
    pts = dirs * radii[:, None]

    def field(p):
        rr = np.linalg.norm(p, axis=-1)
        return h(rr)[..., None] * p / rr[..., None]

    total = np.zeros(len(pts))
    for j in range(n):
        e = np.zeros(n)
        e[j] = step
        d = (field(pts + e) - field(pts - e)) / (2.0 * step)
        total += np.sum(d * d, axis=-1)
    exact = dh(radii) ** 2 + (n - 1) / radii ** 2 * h(radii) ** 2
    rel = np.abs(total - exact) / np.abs(exact)
    params = {"n": n, "r1": r1, "r2": r2, "samples": len(pts), "seed": seed, "step": step}
    return Certificate(
        "gradient_identity",
        (CheckReport("max_relative_error", float(np.max(rel)), 0.0, "<=", tol, params),),
        {"radii": radii, "fd": total, "exact": exact, "relative_error": rel},
    )
