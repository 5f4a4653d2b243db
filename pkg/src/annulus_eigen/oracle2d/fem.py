"""P1 finite elements for Neumann and Steklov–Dirichlet eigenvalues."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import sparse

from ..errors import AssemblyError, SolverError
from .linalg import conjugate_gradient
from .mesh import Mesh

MAX_INVERSE_ITERATIONS = 500


def assemble_p1(mesh: Mesh):
    """Stiffness ``K``, lumped mass ``M`` and lumped outer-boundary mass ``Mb``."""
    areas = mesh.signed_areas()
    scale = np.abs(areas).max()
    if not np.all(areas > 1e-14 * scale):
        raise AssemblyError("degenerate triangle in mesh")
    tri = mesh.triangles
    P = mesh.vertices[tri]
    # edge opposite vertex i
    E = np.stack([P[:, 2] - P[:, 1], P[:, 0] - P[:, 2], P[:, 1] - P[:, 0]], axis=1)
    local = np.einsum("tid,tjd->tij", E, E) / (4.0 * areas)[:, None, None]
    rows = np.repeat(tri, 3, axis=1).ravel()
    cols = np.tile(tri, (1, 3)).ravel()
    nv = mesh.num_vertices
    K = sparse.csr_matrix((local.ravel(), (rows, cols)), shape=(nv, nv))
    K.sum_duplicates()

    mass = np.bincount(tri.ravel(), weights=np.repeat(areas / 3.0, 3), minlength=nv)
    M = sparse.diags(mass, format="csr")

    loop = mesh.boundary_outer
    nxt = np.roll(loop, -1)
    lengths = np.linalg.norm(mesh.vertices[nxt] - mesh.vertices[loop], axis=1)
    bmass = np.zeros(nv)
    np.add.at(bmass, loop, 0.5 * lengths)
    np.add.at(bmass, nxt, 0.5 * lengths)
    Mb = sparse.diags(bmass, format="csr")
    return K, M, Mb


@dataclass(frozen=True)
class FemEigenResult:
    eigenvalue: float
    vector: np.ndarray
    iterations: int


def _alternating(n: int) -> np.ndarray:
    # a plain +-1 pattern is an exact high-frequency mode on structured rings;
    # the amplitude ramp spreads it over every frequency
    i = np.arange(n)
    return np.where(i % 2 == 0, 1.0, -1.0) * (1.0 + i / n)


def fem_neumann_eigen(mesh: Mesh, tol: float = 1e-10) -> FemEigenResult:
    K, M, _ = assemble_p1(mesh)
    m = M.diagonal()
    shift = 1e-8 * K.diagonal().sum() / m.sum()
    A = (K + shift * M).tocsr()
    total = m.sum()

    def deflate(u):
        return u - (m @ u) / total

    def normalize(u):
        return u / np.sqrt(u @ (m * u))

    u = normalize(deflate(_alternating(mesh.num_vertices)))
    mu = (u @ (K @ u))
    for it in range(1, MAX_INVERSE_ITERATIONS + 1):
        v, _ = conjugate_gradient(A, m * u, x0=u / (mu + shift))
        v = deflate(v)
        mu_new = (v @ (K @ v)) / (v @ (m * v))
        u = normalize(v)
        if abs(mu_new - mu) < tol * abs(mu_new):
            return FemEigenResult(float(mu_new), u, it)
        mu = mu_new
    raise SolverError("inverse iteration did not converge")


def fem_neumann_mu1(mesh: Mesh, tol: float = 1e-10) -> float:
    """Smallest nonzero Neumann eigenvalue of the meshed domain."""
    return fem_neumann_eigen(mesh, tol).eigenvalue


def fem_steklov_eigen(mesh: Mesh, tol: float = 1e-10) -> FemEigenResult:
    K, _, Mb = assemble_p1(mesh)
    free = np.ones(mesh.num_vertices, dtype=bool)
    free[mesh.boundary_inner] = False
    Kf = K[free][:, free].tocsr()
    b = Mb.diagonal()[free]

    u = _alternating(int(free.sum())) * (b > 0)
    u /= np.sqrt(u @ (b * u))
    tau = np.inf
    x0 = None
    for it in range(1, MAX_INVERSE_ITERATIONS + 1):
        v, _ = conjugate_gradient(Kf, b * u, x0=x0)
        tau_new = (v @ (Kf @ v)) / (v @ (b * v))
        scale = np.sqrt(v @ (b * v))
        u = v / scale
        x0 = u / tau_new
        if abs(tau_new - tau) < tol * abs(tau_new):
            full = np.zeros(mesh.num_vertices)
            full[free] = u
            return FemEigenResult(float(tau_new), full, it)
        tau = tau_new
    raise SolverError("inverse iteration did not converge")


def fem_steklov_tau1(mesh: Mesh, tol: float = 1e-10) -> float:
    """First Steklov eigenvalue on the outer boundary with zero data on the inner one."""
    return fem_steklov_eigen(mesh, tol).eigenvalue
