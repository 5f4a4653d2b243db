"""Structured triangle meshes of doubly connected planar domains."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from ..errors import DomainError, MeshError


@dataclass(frozen=True)
class Mesh:
    vertices: np.ndarray
    triangles: np.ndarray
    boundary_inner: np.ndarray
    boundary_outer: np.ndarray

    def __post_init__(self):
        for arr in (self.vertices, self.triangles, self.boundary_inner, self.boundary_outer):
            arr.setflags(write=False)

    @property
    def num_vertices(self) -> int:
        return self.vertices.shape[0]

    def signed_areas(self) -> np.ndarray:
        P = self.vertices[self.triangles]
        e1 = P[:, 1] - P[:, 0]
        e2 = P[:, 2] - P[:, 0]
        return 0.5 * (e1[:, 0] * e2[:, 1] - e1[:, 1] * e2[:, 0])

    def area(self) -> float:
        return float(self.signed_areas().sum())

    def outer_length(self) -> float:
        loop = self.vertices[self.boundary_outer]
        return float(np.linalg.norm(np.roll(loop, -1, axis=0) - loop, axis=1).sum())

    def transformed(self, matrix: np.ndarray, shift=(0.0, 0.0)) -> "Mesh":
        """Image under ``v -> matrix @ v + shift`` (orientation must be kept)."""
        verts = self.vertices @ np.asarray(matrix, dtype=float).T + np.asarray(shift, dtype=float)
        return Mesh(verts, self.triangles.copy(), self.boundary_inner.copy(),
                    self.boundary_outer.copy())


def build_transfinite_mesh(r_inner: float, outer_profile: Callable[[np.ndarray], np.ndarray],
                           n_r: int, n_theta: int) -> Mesh:
    """Blend radially between the circle ``r_inner`` and ``r = outer_profile(theta)``.

    Vertex ``(i, j)`` sits at angle ``2 pi j / n_theta`` and radial fraction
    ``i / n_r``; each cell is cut into two triangles.
    """
    if n_r < 4 or n_theta < 4:
        raise DomainError("need n_r, n_theta >= 4")
    if not r_inner > 0:
        raise DomainError("inner radius must be positive")
    theta = 2 * np.pi * np.arange(n_theta) / n_theta
    outer = np.asarray(outer_profile(theta), dtype=float)
    if outer.shape != theta.shape or not np.all(outer > r_inner):
        raise DomainError("outer profile must stay strictly outside the inner circle")
    frac = np.arange(n_r + 1) / n_r
    radius = r_inner + np.outer(frac, outer - r_inner)
    verts = np.stack([radius * np.cos(theta), radius * np.sin(theta)], axis=-1).reshape(-1, 2)

    idx = np.arange((n_r + 1) * n_theta).reshape(n_r + 1, n_theta)
    v00 = idx[:-1, :]
    v10 = idx[1:, :]
    v01 = np.roll(idx[:-1, :], -1, axis=1)
    v11 = np.roll(idx[1:, :], -1, axis=1)
    # (radial, angular) is a right-handed frame, so these are counter-clockwise
    tris = np.concatenate([
        np.stack([v00, v10, v11], axis=-1).reshape(-1, 3),
        np.stack([v00, v11, v01], axis=-1).reshape(-1, 3),
    ])
    mesh = Mesh(verts, tris, idx[0].copy(), idx[-1].copy())
    areas = mesh.signed_areas()
    if not np.all(areas > 0):
        raise MeshError(f"{int(np.sum(areas <= 0))} inverted or degenerate cells")
    return mesh


def annulus_mesh(r_inner: float, r_outer: float, n_r: int, n_theta: int) -> Mesh:
    return build_transfinite_mesh(r_inner, lambda t: np.full_like(t, r_outer), n_r, n_theta)


def eccentric_annulus_mesh(R1: float, R2: float, x: float, n_r: int, n_theta: int) -> Mesh:
    """Inner circle radius ``R1`` at the origin, outer circle radius ``R2`` at ``(x, 0)``."""
    def outer(t):
        return x * np.cos(t) + np.sqrt(R2 * R2 - (x * np.sin(t)) ** 2)
    return build_transfinite_mesh(R1, outer, n_r, n_theta)


def ellipse_mesh(a: float, b: float, r_inner: float, n_r: int, n_theta: int) -> Mesh:
    """Ellipse with semi-axes ``a`` (x) and ``b`` (y) minus a centred disk."""
    def outer(t):
        return a * b / np.sqrt((b * np.cos(t)) ** 2 + (a * np.sin(t)) ** 2)
    return build_transfinite_mesh(r_inner, outer, n_r, n_theta)
