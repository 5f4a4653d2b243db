"""Gauss quadrature rules on [-1, 1]."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.special import roots_jacobi

from .errors import DomainError


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    """Nodes and weights on [-1, 1].

    A Legendre rule (``alpha == beta == 0``) integrates ``f(s) ds``; a Jacobi
    rule integrates ``f(s) (1 - s)**alpha (1 + s)**beta ds`` with the weight
    folded into ``weights``.
    """

    nodes: np.ndarray
    weights: np.ndarray
    order: int
    alpha: float = 0.0
    beta: float = 0.0

    def __post_init__(self):
        self.nodes.setflags(write=False)
        self.weights.setflags(write=False)

    @property
    def is_legendre(self) -> bool:
        return self.alpha == 0.0 and self.beta == 0.0

    def integrate(self, f, a: float = -1.0, b: float = 1.0) -> float:
        """Integrate ``f`` over [a, b] (the weight, if any, is in s-coordinates)."""
        half = 0.5 * (b - a)
        x = 0.5 * (b + a) + half * self.nodes
        return half * float(np.dot(self.weights, f(x)))

    def mapped(self, a, b):
        """Nodes and weights transplanted to [a, b]; ``a`` and ``b`` may be arrays.

        Returns arrays of shape ``np.broadcast(a, b).shape + (order,)``.
        """
        a = np.asarray(a, dtype=float)[..., None]
        b = np.asarray(b, dtype=float)[..., None]
        half = 0.5 * (b - a)
        return 0.5 * (b + a) + half * self.nodes, half * self.weights


@lru_cache(maxsize=64)
def gauss_legendre(order: int) -> QuadratureRule:
    if order < 1:
        raise DomainError(f"quadrature order must be >= 1, got {order}")
    nodes, weights = leggauss(order)
    return QuadratureRule(np.ascontiguousarray(nodes), np.ascontiguousarray(weights), order)


@lru_cache(maxsize=256)
def gauss_jacobi(order: int, alpha: float, beta: float) -> QuadratureRule:
    """Gauss rule for the weight ``(1 - s)**alpha (1 + s)**beta``."""
    if order < 1:
        raise DomainError(f"quadrature order must be >= 1, got {order}")
    if alpha <= -1 or beta <= -1:
        raise DomainError("Jacobi exponents must exceed -1")
    if alpha == 0 and beta == 0:
        return gauss_legendre(order)
    nodes, weights = roots_jacobi(order, alpha, beta)
    return QuadratureRule(np.ascontiguousarray(nodes), np.ascontiguousarray(weights),
                          order, float(alpha), float(beta))
