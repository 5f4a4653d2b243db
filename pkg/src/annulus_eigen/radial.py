"""Radial eigenproblems on concentric shells.

Two families are handled:

* Steklov-Dirichlet modes on Euclidean shells ``R1 < |x| < R2`` (closed
  form and RK4 shooting), ``f(R1) = 0`` and ``f'(R2) = tau f(R2)``.
* The Neumann radial problems on geodesic shells in Euclidean space or a
  non-compact rank-1 symmetric space, written with the volume density J:

      -(J g')'/J + lambda1_S(r) g = mu g,   g'(r1) = g'(r2) = 0   (mu1)
      -(J f')'/J                = tau f,  f'(r1) = f'(r2) = 0   (tau2)

All equations share the shape ``y'' = -p(r) y' + (c(r) - mu) y`` and are
integrated by classical RK4 on a uniform grid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Union

import numpy as np
from scipy.interpolate import CubicHermiteSpline
from scipy.optimize import brentq

from .errors import DegenerateError, DomainError, SearchError
from .reports import Certificate, CheckReport

DEFAULT_STEPS = 4096
DEFAULT_TOL = 1e-10

_FIELD_DIM = {"R": 1, "C": 2, "H": 4, "Ca": 8}


# --------------------------------------------------------------------------
# spaces and shells
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Euclidean:
    n: int

    def __post_init__(self):
        if self.n < 2:
            raise DomainError(f"Euclidean dimension must be >= 2, got {self.n}")

    @property
    def k(self) -> int:
        return 1

    @property
    def dim(self) -> int:
        return self.n

    @property
    def label(self) -> str:
        return "euclidean"

    def density(self, r):
        return r ** (self.n - 1)

    def log_density_derivative(self, r):
        return (self.n - 1) / r

    def lambda1(self, r):
        return (self.n - 1) / (r * r)

    def lambda1_derivative(self, r):
        return -2.0 * (self.n - 1) / (r * r * r)


@dataclass(frozen=True)
class Rank1:
    """Non-compact rank-1 symmetric space over ``field`` (one of R, C, H, Ca)
    with real dimension ``k * n`` and curvature pinched in [-4, -1]."""

    field: str
    n: int

    def __post_init__(self):
        if self.field not in _FIELD_DIM:
            raise DomainError(f"field must be one of {sorted(_FIELD_DIM)}, got {self.field!r}")
        if self.k * self.n < 2:
            raise DomainError("rank-1 space needs real dimension k*n >= 2")
        if self.field == "Ca" and self.n != 2:
            raise DomainError("the Cayley hyperbolic plane has n = 2")

    @property
    def k(self) -> int:
        return _FIELD_DIM[self.field]

    @property
    def dim(self) -> int:
        return self.k * self.n

    @property
    def label(self) -> str:
        return f"rank1-{self.field}"

    def density(self, r):
        return np.sinh(r) ** (self.dim - 1) * np.cosh(r) ** (self.k - 1)

    def log_density_derivative(self, r):
        return (self.dim - 1) / np.tanh(r) + (self.k - 1) * np.tanh(r)

    def lambda1(self, r):
        return (self.dim - 1) / np.sinh(r) ** 2 - (self.k - 1) / np.cosh(r) ** 2

    def lambda1_derivative(self, r):
        sh, ch = np.sinh(r), np.cosh(r)
        return -2.0 * (self.dim - 1) * ch / sh ** 3 + 2.0 * (self.k - 1) * sh / ch ** 3


SpaceKind = Union[Euclidean, Rank1]


def space_from_name(name: str, n: int, k: int | None = None) -> SpaceKind:
    """Build a space from a CLI-style name: ``euclidean`` or ``rank1`` with k."""
    if name == "euclidean":
        return Euclidean(n)
    if name == "rank1":
        fields = {v: f for f, v in _FIELD_DIM.items()}
        if k not in fields:
            raise DomainError(f"rank1 needs k in {sorted(fields)}, got {k}")
        return Rank1(fields[k], n)
    raise DomainError(f"unknown space {name!r}")


@dataclass(frozen=True)
class AnnulusSpec:
    r1: float
    r2: float

    def __post_init__(self):
        if not (0 < self.r1 < self.r2):
            raise DomainError(f"need 0 < r1 < r2, got ({self.r1}, {self.r2})")
        if self.r2 - self.r1 < 1e-6 * self.r1:
            raise DomainError("shell too thin (r2 - r1 < 1e-6 r1)")


def _positive(r):
    if np.any(np.asarray(r) <= 0):
        raise DomainError("radius must be positive")


def volume_density(space: SpaceKind, r):
    """Riemannian volume density J(r) along a unit-speed geodesic."""
    _positive(r)
    return space.density(r)


def lambda1_sphere(space: SpaceKind, r):
    """First non-zero eigenvalue of the geodesic sphere of radius r."""
    _positive(r)
    return space.lambda1(r)


def sphere_mode_euclidean(n: int, i: int, r):
    """i-th distinct eigenvalue ``i (i + n - 2) / r^2`` of the round sphere."""
    return i * (i + n - 2) / (np.asarray(r, dtype=float) ** 2) if np.ndim(r) else i * (i + n - 2) / r ** 2


# --------------------------------------------------------------------------
# solutions
# --------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class RadialEigenSolution:
    eigenvalue: float
    grid: np.ndarray
    values: np.ndarray
    dvalues: np.ndarray
    ddvalues: np.ndarray
    residual: float
    node_locations: tuple[float, ...] = ()
    _splines: list = field(default_factory=list, repr=False, compare=False)

    def __post_init__(self):
        for arr in (self.grid, self.values, self.dvalues, self.ddvalues):
            arr.setflags(write=False)

    def _spline_pair(self):
        if not self._splines:
            self._splines.append(CubicHermiteSpline(self.grid, self.values, self.dvalues))
            self._splines.append(CubicHermiteSpline(self.grid, self.dvalues, self.ddvalues))
        return self._splines

    def interpolate(self, r):
        """Value and derivative at arbitrary radii inside the grid."""
        sv, sd = self._spline_pair()
        return sv(r), sd(r)


def _sign_changes(values: np.ndarray) -> np.ndarray:
    s = np.sign(values)
    return np.nonzero(s[:-1] * s[1:] < 0)[0]


def _locate_nodes(grid, values, dvalues) -> tuple[float, ...]:
    idx = _sign_changes(values)
    if not len(idx):
        return ()
    spline = CubicHermiteSpline(grid, values, dvalues)
    return tuple(float(brentq(spline, grid[j], grid[j + 1], xtol=1e-15)) for j in idx)


# --------------------------------------------------------------------------
# RK4 shooting for y'' = -p(r) y' + (c(r) - mu) y
# --------------------------------------------------------------------------

class _Shooter:
    """Fixed-step RK4 integrator with coefficients tabulated once.

    ``mu`` may be a float (scalar path, pure Python) or an ndarray (one
    trajectory per entry, vectorised by numpy).
    """

    def __init__(self, p: Callable, c: Callable, r_start: float, r_end: float, steps: int):
        if steps < 2:
            raise DomainError("need at least 2 steps")
        self.steps = steps
        self.grid = np.linspace(r_start, r_end, steps + 1)
        self.h = (r_end - r_start) / steps
        mid = self.grid[:-1] + 0.5 * self.h
        self._p = np.asarray(p(self.grid), dtype=float)
        self._c = np.asarray(c(self.grid), dtype=float)
        self._P, self._Pm = self._p.tolist(), np.asarray(p(mid), dtype=float).tolist()
        self._C, self._Cm = self._c.tolist(), np.asarray(c(mid), dtype=float).tolist()

    def run(self, mu, y0, v0, record: bool = False):
        P, Pm, C, Cm = self._P, self._Pm, self._C, self._Cm
        h = self.h
        hh, h6 = 0.5 * h, h / 6.0
        y, v = y0, v0
        if record:
            ys, vs = [y], [v]
        for j in range(self.steps):
            pm, qm = Pm[j], Cm[j] - mu
            k1y = v
            k1v = -P[j] * v + (C[j] - mu) * y
            y2 = y + hh * k1y
            v2 = v + hh * k1v
            k2v = -pm * v2 + qm * y2
            y3 = y + hh * v2
            v3 = v + hh * k2v
            k3v = -pm * v3 + qm * y3
            y4 = y + h * v3
            v4 = v + h * k3v
            k4v = -P[j + 1] * v4 + (C[j + 1] - mu) * y4
            y = y + h6 * (k1y + 2.0 * v2 + 2.0 * v3 + v4)
            v = v + h6 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)
            if record:
                ys.append(y)
                vs.append(v)
        if record:
            return np.array(ys), np.array(vs)
        return y, v

    def solution(self, mu: float, y0: float, v0: float) -> RadialEigenSolution:
        y, v = self.run(mu, y0, v0, record=True)
        a = -self._p * v + (self._c - mu) * y
        return RadialEigenSolution(
            eigenvalue=float(mu),
            grid=self.grid.copy(),
            values=y,
            dvalues=v,
            ddvalues=a,
            residual=simpson_defect(self.h, y, v, a),
            node_locations=_locate_nodes(self.grid, y, v),
        )


def simpson_defect(h: float, y: np.ndarray, v: np.ndarray, a: np.ndarray) -> float:
    """Largest mismatch between ``v(r+2h) - v(r)`` and Simpson's rule applied
    to the ODE right-hand side, per unit length and per unit ``max|y|``.

    Both the RK4 global error and Simpson's error are O(h^4) here, so the
    defect shrinks 16x when the step is halved.
    """
    d = v[2:] - v[:-2] - (h / 3.0) * (a[:-2] + 4.0 * a[1:-1] + a[2:])
    return float(np.max(np.abs(d)) / (2.0 * h) / max(np.max(np.abs(y)), 1e-300))


# --------------------------------------------------------------------------
# Steklov-Dirichlet on concentric Euclidean shells
# --------------------------------------------------------------------------

def _steklov_closed(n: int, R1: float, i: int, r):
    """Closed-form mode normalised to ``f(R1) = 0, f'(R1) = 1``."""
    r = np.asarray(r, dtype=float)
    if i == 0 and n == 2:
        return R1 * np.log(r / R1), R1 / r, -R1 / r ** 2
    m = i + n - 2
    c = R1 ** (2 * i + n - 2)
    f = r ** i - c * r ** (-m)
    df = i * r ** (i - 1) + m * c * r ** (-m - 1) if i else m * c * r ** (-m - 1)
    ddf = (i * (i - 1) * r ** (i - 2) if i > 1 else 0.0) - m * (m + 1) * c * r ** (-m - 2)
    scale = (2 * i + n - 2) * R1 ** (i - 1)
    return f / scale, df / scale, ddf / scale


def _check_steklov_args(n, R1, R2, i):
    if n < 2:
        raise DomainError("dimension must be >= 2")
    if not (0 < R1 < R2):
        raise DomainError("need 0 < R1 < R2")
    if i < 0:
        raise DomainError("mode index must be >= 0")


def steklov_concentric_mode(n: int, R1: float, R2: float, i: int,
                            grid_points: int = 513) -> tuple[float, RadialEigenSolution]:
    """Closed-form ``tau_i`` and its radial profile on ``R1 < r < R2``."""
    _check_steklov_args(n, R1, R2, i)
    grid = np.linspace(R1, R2, grid_points)
    f, df, ddf = _steklov_closed(n, R1, i, grid)
    f2, df2, _ = _steklov_closed(n, R1, i, R2)
    tau = float(df2 / f2)
    lam = i * (i + n - 2) / grid ** 2
    defect = ddf + (n - 1) / grid * df - lam * f
    sol = RadialEigenSolution(
        eigenvalue=tau, grid=grid, values=f, dvalues=df, ddvalues=ddf,
        residual=float(np.max(np.abs(defect)) / np.max(np.abs(f))),
        node_locations=_locate_nodes(grid[1:], f[1:], df[1:]),
    )
    return tau, sol


def _steklov_shooter(n, R1, R2, i, steps) -> _Shooter:
    lam = float(i * (i + n - 2))
    return _Shooter(lambda r: (n - 1) / r, lambda r: lam / r ** 2, R1, R2, steps)


def steklov_concentric_shoot(n: int, R1: float, R2: float, i: int,
                             steps: int = DEFAULT_STEPS) -> float:
    """``tau_i`` by integrating the radial ODE from ``f(R1)=0, f'(R1)=1``."""
    _check_steklov_args(n, R1, R2, i)
    f, df = _steklov_shooter(n, R1, R2, i, steps).run(0.0, 0.0, 1.0)
    if f == 0.0:
        raise DegenerateError("f(R2) = 0; Steklov quotient undefined")
    return df / f


def steklov_shoot_solution(n: int, R1: float, R2: float, i: int,
                           steps: int = DEFAULT_STEPS) -> RadialEigenSolution:
    """Shooting trajectory with the Steklov quotient as its eigenvalue."""
    _check_steklov_args(n, R1, R2, i)
    sol = _steklov_shooter(n, R1, R2, i, steps).solution(0.0, 0.0, 1.0)
    return RadialEigenSolution(
        eigenvalue=float(sol.dvalues[-1] / sol.values[-1]), grid=sol.grid, values=sol.values,
        dvalues=sol.dvalues, ddvalues=sol.ddvalues, residual=sol.residual,
        node_locations=sol.node_locations[1:] if sol.node_locations[:1] == (R1,) else sol.node_locations,
    )


def wronskian_monotonicity(n: int, R1: float, R2: float, i: int,
                           grid=None) -> Certificate:
    """Sample ``W = r^(n-1) (f_i' f_{i+1} - f_{i+1}' f_i)`` and check that it
    starts at zero, never increases, and forces ``tau_i <= tau_{i+1}``."""
    _check_steklov_args(n, R1, R2, i)
    grid = np.linspace(R1, R2, 1025) if grid is None else np.asarray(grid, dtype=float)
    fa, dfa, _ = _steklov_closed(n, R1, i, grid)
    fb, dfb, _ = _steklov_closed(n, R1, i + 1, grid)
    W = grid ** (n - 1) * (dfa * fb - dfb * fa)
    tau_a, _ = steklov_concentric_mode(n, R1, R2, i, grid_points=3)
    tau_b, _ = steklov_concentric_mode(n, R1, R2, i + 1, grid_points=3)
    params = {"n": n, "R1": R1, "R2": R2, "i": i}
    rise = float(np.max(np.diff(W))) if len(W) > 1 else 0.0
    checks = (
        CheckReport("wronskian_start", float(W[0]) if grid[0] == R1 else 0.0, 0.0, "=", 1e-12, params),
        CheckReport("wronskian_non_increasing", rise, 0.0, "<=", 1e-10, params),
        CheckReport("tau_ordering", tau_a, tau_b, "<=", 0.0, params),
    )
    return Certificate("wronskian_monotonicity", checks, {"W": W, "grid": grid,
                                                          "tau_i": tau_a, "tau_next": tau_b})


# --------------------------------------------------------------------------
# Neumann radial problems
# --------------------------------------------------------------------------

def _mu1_shooter(space: SpaceKind, annulus: AnnulusSpec, steps: int) -> _Shooter:
    return _Shooter(space.log_density_derivative, space.lambda1, annulus.r1, annulus.r2, steps)


def _tau_shooter(space: SpaceKind, annulus: AnnulusSpec, steps: int) -> _Shooter:
    return _Shooter(space.log_density_derivative, lambda r: np.zeros_like(r),
                    annulus.r1, annulus.r2, steps)


def _bisect(F: Callable[[float], float], lo: float, hi: float, f_lo: float,
            tol: float, max_iter: int = 200) -> float:
    for _ in range(max_iter):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        f_mid = F(mid)
        if f_mid == 0.0:
            return mid
        if (f_mid > 0) == (f_lo > 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@lru_cache(maxsize=128)
def neumann_radial_mu1(space: SpaceKind, annulus: AnnulusSpec, tol: float = DEFAULT_TOL,
                       steps: int = DEFAULT_STEPS) -> tuple[float, RadialEigenSolution]:
    """First eigenvalue of the ``lambda1_S``-shifted radial Neumann problem.

    The scan starts just above ``lambda1_S(r2)`` (a strict lower bound for
    the eigenvalue) and walks up in steps of
    ``(lambda1_S(r1) - lambda1_S(r2)) / 200`` until ``g'(r2; mu)`` changes
    sign; the bracket is then bisected to ``tol``. ``g(r1) = 1``.
    """
    if not tol > 0:
        raise DomainError("tol must be positive")
    sh = _mu1_shooter(space, annulus, steps)
    lo_l1, hi_l1 = float(space.lambda1(annulus.r2)), float(space.lambda1(annulus.r1))
    start = lo_l1 * (1.0 + 1e-9) if lo_l1 > 0 else lo_l1 + 1e-9
    delta = (hi_l1 - lo_l1) / 200.0

    def F(mu):
        return sh.run(mu, 1.0, 0.0)[1]

    bracket = None
    f_prev = None
    for window in range(5):
        mus = start + delta * np.arange(window * 200, (window + 1) * 200 + 1)
        vals = F(mus)
        if f_prev is None:
            if not vals[0] > 0:
                raise SearchError(
                    f"g'(r2) <= 0 already at mu = lambda1_S(r2) = {lo_l1:.6g} "
                    f"for {space} on {annulus}; value {vals[0]:.3e}")
        flips = np.nonzero(vals[1:] <= 0)[0]
        if len(flips):
            j = flips[0]
            bracket = (float(mus[j]), float(mus[j + 1]), float(vals[j]))
            break
        f_prev = vals[-1]
    if bracket is None:
        raise SearchError(f"no sign change of g'(r2; mu) in [{start:.6g}, {start + 1000 * delta:.6g}] "
                          f"for {space} on {annulus}")
    mu1 = _bisect(F, bracket[0], bracket[1], bracket[2], tol)
    return mu1, sh.solution(mu1, 1.0, 0.0)


@lru_cache(maxsize=128)
def neumann_radial_tau2(space: SpaceKind, annulus: AnnulusSpec, tol: float = DEFAULT_TOL,
                        steps: int = DEFAULT_STEPS) -> tuple[float, RadialEigenSolution]:
    """Second eigenvalue of the unshifted radial Neumann problem (the first
    positive one), whose eigenfunction changes sign exactly once."""
    if not tol > 0:
        raise DomainError("tol must be positive")
    sh = _tau_shooter(space, annulus, steps)
    delta = (math.pi / (annulus.r2 - annulus.r1)) ** 2 / 64.0

    def F(tau):
        return sh.run(tau, 1.0, 0.0)[1]

    batch = 128
    for b in range(80):
        taus = delta * np.arange(b * batch, (b + 1) * batch + 1)
        taus[0] = max(taus[0], 1e-3 * delta)
        vals = F(taus)
        for j in np.nonzero(np.sign(vals[:-1]) * np.sign(vals[1:]) < 0)[0]:
            tau = _bisect(F, float(taus[j]), float(taus[j + 1]), float(vals[j]), tol)
            sol = sh.solution(tau, 1.0, 0.0)
            if len(sol.node_locations) == 1:
                return tau, sol
    raise SearchError(f"no single-node Neumann mode found below {delta * 80 * batch:.6g} "
                      f"for {space} on {annulus}")


# --------------------------------------------------------------------------
# certificates
# --------------------------------------------------------------------------

def _cumulative_hermite(h: float, y: np.ndarray, dy: np.ndarray) -> np.ndarray:
    """Cumulative integral of y using values and slopes (fourth order)."""
    seg = 0.5 * h * (y[:-1] + y[1:]) + h * h / 12.0 * (dy[:-1] - dy[1:])
    return np.concatenate(([0.0], np.cumsum(seg)))


def _simpson(h: float, y: np.ndarray) -> float:
    if (len(y) - 1) % 2:
        raise ValueError("Simpson needs an even number of intervals")
    return float(h / 3.0 * (y[0] + y[-1] + 4.0 * y[1:-1:2].sum() + 2.0 * y[2:-1:2].sum()))


def auxiliary_h(space: SpaceKind, annulus: AnnulusSpec, mu1: float,
                g: RadialEigenSolution) -> tuple[np.ndarray, float]:
    """Samples of the primitive h of g with ``-(J h')'/J = mu1 h`` on the
    grid of ``g``, and its value at r1."""
    r2 = annulus.r2
    h_r2 = -float(space.log_density_derivative(r2)) * float(g.values[-1]) / mu1
    step = g.grid[1] - g.grid[0]
    cum = _cumulative_hermite(step, g.values, g.dvalues)
    hv = h_r2 - (cum[-1] - cum)
    return hv, float(hv[0])


def neumann_h_certificate(space: SpaceKind, annulus: AnnulusSpec, tol: float = DEFAULT_TOL,
                          steps: int = DEFAULT_STEPS) -> Certificate:
    """Rebuild the comparison function h and check the chain that shows the
    second radial eigenvalue exceeds mu1."""
    mu1, g = neumann_radial_mu1(space, annulus, tol, steps)
    tau2, f = neumann_radial_tau2(space, annulus, tol, steps)
    params = {"space": space.label, "k": space.k, "n": space.n,
              "r1": annulus.r1, "r2": annulus.r2}
    hv, h_r1 = auxiliary_h(space, annulus, mu1, g)
    p = space.log_density_derivative(g.grid)
    h_defect = -g.dvalues - p * g.values - mu1 * hv
    h_defect_rel = float(np.max(np.abs(h_defect)) / np.max(np.abs(mu1 * hv)))

    a = f.node_locations[0]
    steps_a = steps if steps % 2 == 0 else steps + 1
    sf = _tau_shooter(space, AnnulusSpec(annulus.r1, a), steps_a)
    fy, fv = sf.run(tau2, 1.0, 0.0, record=True)
    sg = _mu1_shooter(space, AnnulusSpec(annulus.r1, a), steps_a)
    gy, gv = sg.run(mu1, 1.0, 0.0, record=True)
    ha = h_r1 + _cumulative_hermite(sf.h, gy, gv)
    J = space.density(sf.grid)
    lhs = (tau2 - mu1) * _simpson(sf.h, fy * ha * J)
    J1 = float(space.density(annulus.r1))
    rhs = -float(J[-1]) * ha[-1] * fv[-1] - J1 * fy[0] * gy[0]

    checks = (
        CheckReport("h_at_r2_negative", float(hv[-1]), 0.0, "<=", 0.0, params),
        CheckReport("h_nonpositive", float(np.max(hv)), 0.0, "<=", 0.0, params),
        CheckReport("h_increasing", float(np.min(np.diff(hv))), 0.0, ">=", 0.0, params),
        CheckReport("h_equation_residual", h_defect_rel, 0.0, "<=", 1e-6, params),
        CheckReport("integral_identity", lhs, rhs, "=", 1e-6 * max(abs(lhs), abs(rhs)), params),
        CheckReport("single_node", float(len(f.node_locations)), 1.0, "=", 0.0, params),
        CheckReport("tau2_exceeds_mu1", tau2, mu1, ">=", 0.0, params),
    )
    return Certificate("neumann_h_certificate", checks,
                       {"mu1": mu1, "tau2": tau2, "a": a, "h_r2": float(hv[-1]), "h_r1": h_r1,
                        "identity_lhs": lhs, "identity_rhs": rhs})


def psi_b_certificate(space: SpaceKind, annulus: AnnulusSpec, tol: float = DEFAULT_TOL,
                      steps: int = DEFAULT_STEPS) -> Certificate:
    """Check that ``Psi = J g'`` vanishes at both ends and is positive inside,
    and that ``lambda1_S(r) - mu1`` changes sign once, from + to -."""
    mu1, g = neumann_radial_mu1(space, annulus, tol, steps)
    params = {"space": space.label, "k": space.k, "n": space.n,
              "r1": annulus.r1, "r2": annulus.r2}
    psi = space.density(g.grid) * g.dvalues
    scale = float(np.max(np.abs(psi)))
    gap = space.lambda1(g.grid) - mu1
    flips = _sign_changes(gap)
    one_flip = len(flips) == 1 and gap[0] > 0 and gap[-1] < 0
    b = float(brentq(lambda r: space.lambda1(r) - mu1, annulus.r1, annulus.r2,
                     xtol=1e-15)) if one_flip else float("nan")
    checks = (
        CheckReport("psi_at_r1", float(psi[0]), 0.0, "=", 0.0, params),
        CheckReport("psi_at_r2", float(psi[-1]), 0.0, "=", 1e-8 * scale, params),
        CheckReport("psi_interior_positive", float(np.min(psi[1:-1])), 0.0, ">=", 0.0, params),
        CheckReport("psi_interior_strict", float(np.min(psi[1:-1]) > 0), 1.0, "=", 0.0, params),
        CheckReport("gap_single_crossing", float(one_flip), 1.0, "=", 0.0, params),
        CheckReport("mu1_above_lambda1_r2", mu1, float(space.lambda1(annulus.r2)), ">=", 0.0, params),
        CheckReport("g_positive", float(np.min(g.values)), 0.0, ">=", 0.0, params),
        CheckReport("g_increasing", float(np.min(g.dvalues[1:-1])), 0.0, ">=", 0.0, params),
    )
    return Certificate("psi_b_certificate", checks, {"mu1": mu1, "b": b, "psi": psi})


def b_function(space: SpaceKind, mu1: float, g: RadialEigenSolution, grid=None):
    """``B = g'^2 + lambda1_S g^2`` and its derivative (via the ODE)."""
    if grid is None:
        r, gv, dg, ddg = g.grid, g.values, g.dvalues, g.ddvalues
    else:
        r = np.asarray(grid, dtype=float)
        gv, dg = g.interpolate(r)
        ddg = -space.log_density_derivative(r) * dg + (space.lambda1(r) - mu1) * gv
    lam = space.lambda1(r)
    B = dg * dg + lam * gv * gv
    dB = 2.0 * dg * ddg + space.lambda1_derivative(r) * gv * gv + 2.0 * lam * gv * dg
    return r, B, dB


def b_function_profile(space: SpaceKind, annulus: AnnulusSpec, grid=None,
                       tol: float = DEFAULT_TOL, steps: int = DEFAULT_STEPS) -> Certificate:
    """Check that ``B(r) = g'(r)^2 + lambda1_S(r) g(r)^2`` never increases."""
    mu1, g = neumann_radial_mu1(space, annulus, tol, steps)
    params = {"space": space.label, "k": space.k, "n": space.n,
              "r1": annulus.r1, "r2": annulus.r2}
    r, B, dB = b_function(space, mu1, g, grid)
    slack = 1e-8 * float(B[0])
    checks = (
        CheckReport("B_non_increasing", float(np.max(np.diff(B))), 0.0, "<=", slack, params),
        CheckReport("B_derivative_nonpositive", float(np.max(dB)), 0.0, "<=", slack, params),
    )
    return Certificate("b_function_profile", checks, {"grid": r, "B": B, "dB": dB, "mu1": mu1})
