"""Brute-force planar eigenvalue solvers used as independent oracles."""

from .conformal import (
    MobiusMap,
    MobiusMapParams,
    dtn_mode_concentric,
    mobius_concentric_map,
    steklov_eccentric_spectrum,
    steklov_eccentric_tau1,
)
from .fem import (
    FemEigenResult,
    assemble_p1,
    fem_neumann_eigen,
    fem_neumann_mu1,
    fem_steklov_eigen,
    fem_steklov_tau1,
)
from .linalg import cholesky, conjugate_gradient, generalized_eigh, jacobi_eigh
from .mesh import (
    Mesh,
    annulus_mesh,
    build_transfinite_mesh,
    eccentric_annulus_mesh,
    ellipse_mesh,
)

__all__ = [
    "MobiusMap", "MobiusMapParams", "dtn_mode_concentric", "mobius_concentric_map",
    "steklov_eccentric_spectrum", "steklov_eccentric_tau1",
    "FemEigenResult", "assemble_p1", "fem_neumann_eigen", "fem_neumann_mu1",
    "fem_steklov_eigen", "fem_steklov_tau1",
    "cholesky", "conjugate_gradient", "generalized_eigh", "jacobi_eigh",
    "Mesh", "annulus_mesh", "build_transfinite_mesh", "eccentric_annulus_mesh", "ellipse_mesh",
]
