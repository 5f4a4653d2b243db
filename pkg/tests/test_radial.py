import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import special
from scipy.optimize import brentq

from annulus_eigen.errors import DomainError
from annulus_eigen.radial import (
    AnnulusSpec,
    Euclidean,
    Rank1,
    b_function_profile,
    lambda1_sphere,
    neumann_h_certificate,
    neumann_radial_mu1,
    neumann_radial_tau2,
    psi_b_certificate,
    space_from_name,
    sphere_mode_euclidean,
    steklov_concentric_mode,
    steklov_concentric_shoot,
    steklov_shoot_solution,
    volume_density,
    wronskian_monotonicity,
)

# Cross products of Bessel derivatives, roots by brentq (scipy.special):
#   mu1: J1'(s) Y1'(2s) - J1'(2s) Y1'(s) = 0, mu1 = s^2
#   tau2: same with order 0
BESSEL_MU1_N2 = 0.4587840638543865
BESSEL_TAU2_N2 = 10.21811334466594
# spherical Bessel j1'/y1' cross product on (1, 2)
SPH_BESSEL_MU1_N3 = 0.8466467420248905

# Chebyshev collocation (60 points, scipy.linalg.eig on the pencil with
# Neumann rows) of -(J g')'/J + lambda1(r) g = mu g and of the lambda1 = 0 problem
COLLOCATION = {
    ("R", 3, 1.0, 2.0): (0.3638159041693942, 11.350275470479264),
    ("R", 3, 0.5, 1.5): (1.0997468776238628, 12.522431096089147),
    ("R", 3, 0.5, 1.0): (2.7175137831546734, 43.59432144101566),
    ("C", 2, 1.0, 2.0): (0.2933868310236776, 14.62788078560462),
    ("C", 2, 0.5, 1.5): (0.940230307240781, 16.61825742264749),
    ("C", 2, 0.5, 1.0): (3.0573765590753217, 48.862634963663766),
}


class TestSpaces:
    def test_euclidean_density(self):
        assert volume_density(Euclidean(3), 2.0) == 4.0

    @given(st.integers(2, 8), st.floats(0.05, 4.0))
    def test_real_rank1_has_no_cosh_factor(self, n, r):
        assert volume_density(Rank1("R", n), r) == pytest.approx(math.sinh(r) ** (n - 1), rel=1e-13)

    def test_complex_density(self):
        # sinh and cosh from their Taylor series at r = 1
        sh = sum(1 / math.factorial(2 * j + 1) for j in range(20))
        ch = sum(1 / math.factorial(2 * j) for j in range(20))
        assert volume_density(Rank1("C", 2), 1.0) == pytest.approx(sh ** 3 * ch, rel=1e-14)

    def test_lambda1_examples(self):
        assert lambda1_sphere(Euclidean(3), 2.0) == 0.5
        assert lambda1_sphere(Rank1("R", 3), 1.0) == pytest.approx(2 / math.sinh(1) ** 2, rel=1e-14)
        assert lambda1_sphere(Rank1("R", 3), 1.0) == pytest.approx(1.44812, abs=1e-5)

    @pytest.mark.parametrize("space", [Euclidean(2), Euclidean(5), Rank1("R", 3), Rank1("C", 2),
                                       Rank1("H", 2), Rank1("Ca", 2)])
    def test_lambda1_strictly_decreasing(self, space):
        r = np.linspace(0.05, 6.0, 2000)
        assert np.all(np.diff(lambda1_sphere(space, r)) < 0)

    @pytest.mark.parametrize("space", [Euclidean(3), Rank1("H", 2)])
    def test_log_density_derivative(self, space):
        r, h = 1.3, 1e-6
        fd = (math.log(volume_density(space, r + h)) - math.log(volume_density(space, r - h))) / (2 * h)
        assert space.log_density_derivative(r) == pytest.approx(fd, rel=1e-8)

    @pytest.mark.parametrize("bad", [0.0, -1.0])
    def test_nonpositive_radius(self, bad):
        with pytest.raises(DomainError):
            volume_density(Euclidean(3), bad)
        with pytest.raises(DomainError):
            lambda1_sphere(Rank1("C", 2), bad)

    def test_space_validation(self):
        with pytest.raises(DomainError):
            Euclidean(1)
        with pytest.raises(DomainError):
            Rank1("R", 1)
        with pytest.raises(DomainError):
            Rank1("Ca", 3)
        with pytest.raises(DomainError):
            Rank1("X", 2)
        assert Rank1("Ca", 2).dim == 16
        assert space_from_name("rank1", 2, 4) == Rank1("H", 2)
        with pytest.raises(DomainError):
            space_from_name("rank1", 2, 3)

    def test_sphere_modes(self):
        assert sphere_mode_euclidean(3, 0, 1.0) == 0
        assert sphere_mode_euclidean(3, 1, 2.0) == lambda1_sphere(Euclidean(3), 2.0)
        assert sphere_mode_euclidean(4, 2, 1.0) == 8

    def test_annulus_validation(self):
        with pytest.raises(DomainError):
            AnnulusSpec(2.0, 1.0)
        with pytest.raises(DomainError):
            AnnulusSpec(1.0, 1.0 + 1e-8)


class TestSteklovConcentric:
    def test_examples(self):
        assert steklov_concentric_mode(3, 1.0, 2.0, 0)[0] == pytest.approx(0.5, rel=1e-14)
        assert steklov_concentric_mode(2, 1.0, math.e, 0)[0] == pytest.approx(1 / math.e, rel=1e-14)
        assert steklov_concentric_mode(3, 1.0, 2.0, 1)[0] == pytest.approx(5 / 7, rel=1e-14)

    @pytest.mark.parametrize("n,R2,i,expected", [(3, 2.0, 0, 0.5), (2, math.e, 0, 1 / math.e),
                                                 (3, 2.0, 1, 5 / 7)])
    def test_shooting_examples(self, n, R2, i, expected):
        assert steklov_concentric_shoot(n, 1.0, R2, i) == pytest.approx(expected, rel=1e-8)

    @given(st.integers(2, 7), st.integers(0, 8), st.floats(1.2, 4.0))
    def test_shooting_matches_closed_form(self, n, i, R2):
        tau, _ = steklov_concentric_mode(n, 1.0, R2, i)
        assert steklov_concentric_shoot(n, 1.0, R2, i) == pytest.approx(tau, rel=1e-8)

    @given(st.integers(2, 7), st.floats(1.1, 5.0))
    def test_modes_strictly_increasing(self, n, R2):
        taus = [steklov_concentric_mode(n, 1.0, R2, i)[0] for i in range(9)]
        assert all(b > a for a, b in zip(taus, taus[1:]))

    def test_profile_positive_and_increasing(self):
        _, sol = steklov_concentric_mode(4, 1.0, 2.0, 0)
        assert np.all(sol.values[1:] > 0)
        assert np.all(sol.dvalues > 0)
        assert sol.residual < 1e-12
        assert sol.node_locations == ()

    def test_rk4_order(self):
        tau, _ = steklov_concentric_mode(3, 1.0, 2.0, 3)
        errs = [abs(steklov_concentric_shoot(3, 1.0, 2.0, 3, steps=s) - tau) for s in (64, 128, 256)]
        orders = [math.log2(errs[j] / errs[j + 1]) for j in range(2)]
        assert min(orders) >= 3.9

    def test_defect_shrinks_with_step(self):
        coarse = steklov_shoot_solution(3, 1.0, 2.0, 3, steps=128).residual
        fine = steklov_shoot_solution(3, 1.0, 2.0, 3, steps=256).residual
        assert coarse / fine >= 8

    def test_argument_checks(self):
        with pytest.raises(DomainError):
            steklov_concentric_mode(1, 1.0, 2.0, 0)
        with pytest.raises(DomainError):
            steklov_concentric_shoot(3, 2.0, 1.0, 0)
        with pytest.raises(DomainError):
            steklov_concentric_mode(3, 1.0, 2.0, -1)


class TestWronskian:
    def test_n3_mode0(self):
        cert = wronskian_monotonicity(3, 1.0, 2.0, 0)
        assert cert.passed
        assert abs(cert["wronskian_start"].lhs) < 1e-14

    def test_n5_mode3(self):
        assert wronskian_monotonicity(5, 1.0, 2.0, 3).passed

    @given(st.integers(2, 6), st.integers(0, 6), st.floats(1.2, 3.0))
    def test_always_passes(self, n, i, R2):
        assert wronskian_monotonicity(n, 1.0, R2, i).passed


def _bessel_mu1(r1, r2, order):
    def cross(s):
        return (special.jvp(order, s * r1) * special.yvp(order, s * r2)
                - special.jvp(order, s * r2) * special.yvp(order, s * r1))
    grid = np.linspace(0.2, 5.0, 4000)
    vals = cross(grid)
    j = np.nonzero(np.sign(vals[:-1]) != np.sign(vals[1:]))[0][0]
    return brentq(cross, grid[j], grid[j + 1], xtol=1e-15) ** 2


class TestNeumannRadial:
    def test_bessel_oracle_is_reproducible(self):
        assert _bessel_mu1(1.0, 2.0, 1) == pytest.approx(BESSEL_MU1_N2, rel=1e-13)
        assert _bessel_mu1(1.0, 2.0, 0) == pytest.approx(BESSEL_TAU2_N2, rel=1e-13)

    def test_mu1_euclidean_plane(self):
        mu1, g = neumann_radial_mu1(Euclidean(2), AnnulusSpec(1.0, 2.0))
        assert mu1 == pytest.approx(BESSEL_MU1_N2, rel=1e-9)
        assert mu1 > 0.25
        assert g.values[0] == 1.0
        assert g.residual < 1e-8

    def test_tau2_euclidean_plane(self):
        tau2, f = neumann_radial_tau2(Euclidean(2), AnnulusSpec(1.0, 2.0))
        assert tau2 == pytest.approx(BESSEL_TAU2_N2, rel=1e-9)
        assert len(f.node_locations) == 1
        assert tau2 > neumann_radial_mu1(Euclidean(2), AnnulusSpec(1.0, 2.0))[0]

    def test_mu1_euclidean_space(self):
        mu1, _ = neumann_radial_mu1(Euclidean(3), AnnulusSpec(1.0, 2.0))
        assert mu1 == pytest.approx(SPH_BESSEL_MU1_N3, rel=1e-9)

    @pytest.mark.parametrize("key", sorted(COLLOCATION))
    def test_rank1_against_collocation(self, key):
        field_, n, r1, r2 = key
        space, shell = Rank1(field_, n), AnnulusSpec(r1, r2)
        mu1_ref, tau2_ref = COLLOCATION[key]
        assert neumann_radial_mu1(space, shell)[0] == pytest.approx(mu1_ref, rel=1e-8)
        assert neumann_radial_tau2(space, shell)[0] == pytest.approx(tau2_ref, rel=1e-8)

    def test_complex_hyperbolic_above_sphere_eigenvalue(self):
        mu1, _ = neumann_radial_mu1(Rank1("C", 2), AnnulusSpec(0.5, 1.0))
        assert mu1 > 3 / math.sinh(1) ** 2 - 1 / math.cosh(1) ** 2

    @pytest.mark.parametrize("space", [Euclidean(2), Euclidean(4)])
    @pytest.mark.parametrize("solver", [neumann_radial_mu1, neumann_radial_tau2])
    def test_dilation_scaling(self, space, solver):
        base = solver(space, AnnulusSpec(1.0, 2.0))[0]
        scaled = solver(space, AnnulusSpec(2.0, 4.0))[0]
        assert scaled == pytest.approx(base / 4, rel=1e-8)

    def test_refinement_invariance(self):
        tol = 1e-10
        a = neumann_radial_mu1(Rank1("H", 2), AnnulusSpec(0.5, 1.5), tol, 4096)[0]
        b = neumann_radial_mu1(Rank1("H", 2), AnnulusSpec(0.5, 1.5), tol, 8192)[0]
        assert abs(a - b) < 10 * tol

    @given(st.sampled_from([Euclidean(2), Euclidean(3), Rank1("R", 3), Rank1("C", 2)]),
           st.floats(0.3, 1.5), st.floats(0.3, 2.0))
    def test_g_positive_increasing(self, space, r1, width):
        _, g = neumann_radial_mu1(space, AnnulusSpec(r1, r1 + width))
        assert np.all(g.values > 0)
        assert np.all(g.dvalues[1:-1] > 0)


CERT_CASES = [
    (Euclidean(2), (1.0, 2.0)),
    (Euclidean(3), (1.0, 3.0)),
    (Rank1("R", 3), (0.5, 1.5)),
    (Rank1("C", 2), (0.5, 1.0)),
    (Rank1("H", 2), (1.0, 2.0)),
    (Rank1("Ca", 2), (0.5, 1.5)),
]


class TestCertificates:
    @pytest.mark.parametrize("space,shell", CERT_CASES)
    def test_h_certificate(self, space, shell):
        cert = neumann_h_certificate(space, AnnulusSpec(*shell))
        assert cert.passed, cert.failures()
        assert cert["h_at_r2_negative"].lhs < 0

    @pytest.mark.parametrize("space,shell", CERT_CASES)
    def test_psi_certificate(self, space, shell):
        cert = psi_b_certificate(space, AnnulusSpec(*shell))
        assert cert.passed, cert.failures()

    def test_crossing_point_euclidean(self):
        cert = psi_b_certificate(Euclidean(3), AnnulusSpec(1.0, 3.0))
        mu1, _ = neumann_radial_mu1(Euclidean(3), AnnulusSpec(1.0, 3.0))
        b = cert.data["b"]
        assert b == pytest.approx(math.sqrt(2 / mu1), rel=1e-10)
        assert 1.0 < b < 3.0

    @pytest.mark.parametrize("space,shell", CERT_CASES)
    def test_b_profile(self, space, shell):
        assert b_function_profile(space, AnnulusSpec(*shell)).passed

    def test_b_at_outer_radius(self):
        from annulus_eigen.radial import b_function
        space, shell = Rank1("C", 2), AnnulusSpec(0.5, 1.0)
        mu1, g = neumann_radial_mu1(space, shell)
        _, B, _ = b_function(space, mu1, g)
        assert B[-1] == pytest.approx(lambda1_sphere(space, 1.0) * g.values[-1] ** 2, rel=1e-8)
