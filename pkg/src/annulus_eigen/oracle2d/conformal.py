"""Steklov spectrum of an eccentric planar annulus via a Möbius map.

The map sends the eccentric annulus onto a concentric one ``rho < |w| < 1``
where the Dirichlet-to-Neumann operator on ``|w| = 1`` is diagonal in the
Fourier basis.  The boundary-length density ``|dz/dw|`` turns the problem
into a small generalized eigenproblem ``diag(sigma) c = tau B c``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import DomainError
from .linalg import generalized_eigh


@dataclass(frozen=True)
class MobiusMap:
    """``w = c (z - a) / (z - b)`` with real ``a``, ``b``, ``c``."""

    a: float
    b: float
    c: float
    rho: float

    @property
    def is_identity_scaling(self) -> bool:
        return np.isinf(self.b)

    def forward(self, z):
        z = np.asarray(z, dtype=complex)
        if self.is_identity_scaling:
            return z * self.c
        return self.c * (z - self.a) / (z - self.b)

    def inverse(self, w):
        w = np.asarray(w, dtype=complex)
        if self.is_identity_scaling:
            return w / self.c
        return (w * self.b - self.c * self.a) / (w - self.c)

    def inverse_derivative_modulus(self, w):
        """``|dz/dw|`` at ``w``."""
        w = np.asarray(w, dtype=complex)
        if self.is_identity_scaling:
            return np.full(w.shape, 1.0 / self.c)
        return self.c * abs(self.a - self.b) / np.abs(w - self.c) ** 2


def mobius_concentric_map(R1: float, R2: float, x: float) -> MobiusMap:
    """Map ``{|z| > R1, |z - x| < R2}`` onto ``{rho < |w| < 1}``.

    The outer circle goes to ``|w| = 1`` and the inner one to ``|w| = rho``.
    """
    if not (0 < R1 < R2):
        raise DomainError("need 0 < R1 < R2")
    if not (abs(x) < R2 - R1):
        raise DomainError("inner disk must lie strictly inside the outer disk")
    if abs(x) < 1e-12:
        return MobiusMap(a=0.0, b=np.inf, c=1.0 / R2, rho=R1 / R2)
    # common symmetric points a, b: a*b = R1^2 and (a - x)(b - x) = R2^2
    p = (R1 * R1 + x * x - R2 * R2) / x
    disc = np.sqrt(p * p - 4.0 * R1 * R1)
    r_lo, r_hi = (p - disc) / 2.0, (p + disc) / 2.0
    a, b = (r_lo, r_hi) if abs(r_lo) < abs(r_hi) else (r_hi, r_lo)
    c = R2 / abs(a - x)
    rho = abs(a) / R1 * c
    return MobiusMap(a=a, b=b, c=c, rho=rho)


def dtn_mode_concentric(rho: float, m: int) -> float:
    """DtN eigenvalue of mode ``m`` on ``|w| = 1`` with zero data on ``|w| = rho``."""
    if not (0 < rho < 1):
        raise DomainError("rho must lie in (0, 1)")
    if m < 0:
        raise DomainError("mode index must be non-negative")
    if m == 0:
        return 1.0 / np.log(1.0 / rho)
    r2m = rho ** (2 * m)
    return m * (1.0 + r2m) / (1.0 - r2m)


def _fourier_blocks(theta: np.ndarray, modes: int):
    """Normalized cosine block (including the constant) and sine block."""
    m = np.arange(1, modes + 1)
    cos_block = np.concatenate(
        [np.full((theta.size, 1), 1.0 / np.sqrt(2 * np.pi)),
         np.cos(np.outer(theta, m)) / np.sqrt(np.pi)], axis=1)
    sin_block = np.sin(np.outer(theta, m)) / np.sqrt(np.pi)
    return cos_block, sin_block


def steklov_eccentric_spectrum(R1: float, R2: float, x: float, modes: int = 64) -> np.ndarray:
    """Lowest Steklov–Dirichlet eigenvalues (ascending) of the eccentric annulus."""
    if modes < 1:
        raise DomainError("need at least one Fourier mode")
    fmap = mobius_concentric_map(R1, R2, x)
    npts = 4 * modes + 4
    theta = 2 * np.pi * np.arange(npts) / npts
    weight = fmap.inverse_derivative_modulus(np.exp(1j * theta)) * (2 * np.pi / npts)
    sigma = np.array([dtn_mode_concentric(fmap.rho, m) for m in range(modes + 1)])
    # the density is even in theta, so cosines and sines decouple
    eigvals = []
    for Phi, s in zip(_fourier_blocks(theta, modes), (sigma, sigma[1:])):
        B = Phi.T @ (weight[:, None] * Phi)
        w, _ = generalized_eigh(np.diag(s), 0.5 * (B + B.T))
        eigvals.append(w)
    return np.sort(np.concatenate(eigvals))


def steklov_eccentric_tau1(R1: float, R2: float, x: float, modes: int = 64) -> float:
    """First Steklov–Dirichlet eigenvalue of the eccentric annulus."""
    return float(steklov_eccentric_spectrum(R1, R2, x, modes)[0])


MobiusMapParams = MobiusMap
