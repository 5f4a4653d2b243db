"""Small dense and sparse linear algebra kernels for the 2D oracles.

Dense matrices are ``numpy`` arrays; sparse matrices are
``scipy.sparse.csr_matrix`` used only as storage and for products.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import AssemblyError, SolverError


def is_symmetric(A, rtol: float = 1e-12) -> bool:
    D = abs(A - A.T).max()
    return D <= rtol * abs(A).max()


def cholesky(A: np.ndarray) -> np.ndarray:
    """Lower-triangular L with ``A = L L^T``; raises if A is not positive definite."""
    A = np.asarray(A, dtype=float)
    n = A.shape[0]
    L = np.zeros_like(A)
    for j in range(n):
        d = A[j, j] - np.dot(L[j, :j], L[j, :j])
        if not d > 0:
            raise AssemblyError(f"matrix not positive definite (pivot {j}: {d:.3e})")
        L[j, j] = np.sqrt(d)
        L[j + 1:, j] = (A[j + 1:, j] - L[j + 1:, :j] @ L[j, :j]) / L[j, j]
    return L


def solve_lower(L: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Forward substitution for ``L X = B`` (B may be a matrix)."""
    X = np.array(B, dtype=float, copy=True)
    for i in range(L.shape[0]):
        X[i] = (X[i] - L[i, :i] @ X[:i]) / L[i, i]
    return X


def jacobi_eigh(A: np.ndarray, tol: float = 1e-14, max_sweeps: int = 60):
    """Cyclic Jacobi diagonalisation of a symmetric matrix.

    Returns ``(eigenvalues ascending, eigenvectors as columns)``.
    """
    A = np.array(A, dtype=float, copy=True)
    n = A.shape[0]
    V = np.eye(n)
    offdiag = ~np.eye(n, dtype=bool)
    norm = np.linalg.norm(A)
    if norm == 0.0:
        return np.zeros(n), V
    for _ in range(max_sweeps):
        off = np.linalg.norm(A[offdiag])
        if off <= tol * norm:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if abs(apq) <= 1e-300 or abs(apq) < 1e-18 * norm:
                    continue
                theta = (A[q, q] - A[p, p]) / (2.0 * apq)
                t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + np.sqrt(1.0 + theta * theta))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                ap, aq = A[:, p].copy(), A[:, q].copy()
                A[:, p] = c * ap - s * aq
                A[:, q] = s * ap + c * aq
                ap, aq = A[p, :].copy(), A[q, :].copy()
                A[p, :] = c * ap - s * aq
                A[q, :] = s * ap + c * aq
                A[p, q] = A[q, p] = 0.0
                vp, vq = V[:, p].copy(), V[:, q].copy()
                V[:, p] = c * vp - s * vq
                V[:, q] = s * vp + c * vq
    else:
        raise SolverError("Jacobi iteration did not converge")
    w = np.diag(A).copy()
    order = np.argsort(w)
    return w[order], V[:, order]


def generalized_eigh(A: np.ndarray, B: np.ndarray):
    """Solve ``A c = lam B c`` for symmetric A and SPD B via Cholesky + Jacobi."""
    L = cholesky(B)
    X = solve_lower(L, A)
    C = solve_lower(L, X.T)
    C = 0.5 * (C + C.T)
    w, Y = jacobi_eigh(C)
    # back-substitute L^T c = y
    Lt = L.T
    n = Lt.shape[0]
    Cv = np.array(Y, copy=True)
    for i in range(n - 1, -1, -1):
        Cv[i] = (Cv[i] - Lt[i, i + 1:] @ Cv[i + 1:]) / Lt[i, i]
    return w, Cv


@dataclass
class CGInfo:
    iterations: int = 0
    residuals: list = field(default_factory=list)

    @property
    def final_relative_residual(self) -> float:
        return self.residuals[-1] if self.residuals else 0.0


def conjugate_gradient(A, b: np.ndarray, x0: np.ndarray | None = None, tol: float = 1e-12,
                       maxiter: int | None = None, precondition: bool = True):
    """Preconditioned conjugate gradients (diagonal preconditioner).

    Stops when ``|b - A x| <= tol |b|``. Returns ``(x, CGInfo)``.
    """
    b = np.asarray(b, dtype=float)
    n = b.shape[0]
    maxiter = maxiter or 10 * n
    bnorm = np.linalg.norm(b)
    info = CGInfo()
    if bnorm == 0.0:
        return np.zeros(n), info
    x = np.zeros(n) if x0 is None else np.array(x0, dtype=float, copy=True)
    r = b - A @ x
    dinv = 1.0 / A.diagonal() if precondition else np.ones(n)
    z = dinv * r
    p = z.copy()
    rz = r @ z
    info.residuals.append(np.linalg.norm(r) / bnorm)
    for it in range(maxiter):
        if info.residuals[-1] <= tol:
            info.iterations = it
            return x, info
        Ap = A @ p
        alpha = rz / (p @ Ap)
        x += alpha * p
        r -= alpha * Ap
        info.residuals.append(np.linalg.norm(r) / bnorm)
        z = dinv * r
        rz_new = r @ z
        p = z + (rz_new / rz) * p
        rz = rz_new
    if info.residuals[-1] <= tol:
        info.iterations = maxiter
        return x, info
    raise SolverError(f"CG not converged: relative residual {info.residuals[-1]:.3e} "
                      f"after {maxiter} iterations")
