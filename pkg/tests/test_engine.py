import cmath
import math

import numpy as np
import pytest
import scipy.linalg
from hypothesis import assume, given, strategies as st
from scipy.optimize import brentq

from maslov_lagrange.engine import (DegenerateCrossing, NonConvergence, SymplecticPath, clm_index,
                                    crossing_form, crossing_instants, fundamental_solution,
                                    nullity, omega_index)
from maslov_lagrange.linalg import diamond, mat_exp, standard_j
from maslov_lagrange.model import (ModelParams, essential_path, generators, kepler_closed_solution,
                                   kepler_path, lambda3_spectrum_and_angles, n_alpha_path,
                                   r_alpha_path, stability_curve, theta_alpha)

J2 = standard_j(1)


# -- paths ------------------------------------------------------------------------


def test_fundamental_solution_kepler_endpoint():
    B2 = generators(ModelParams(1.0, 0.0)).b2
    P = fundamental_solution(B2, 2 * math.pi)
    assert np.max(np.abs(P.endpoint - kepler_closed_solution(1.0, 2 * math.pi))) < 1e-10


def test_fundamental_solution_zero_and_rotation():
    P = fundamental_solution(np.zeros((2, 2)), 3.0)
    assert np.array_equal(P.evaluate(1.7), np.eye(2))
    R = fundamental_solution(np.eye(2), math.pi)
    assert np.allclose(R.endpoint, -np.eye(2), atol=1e-14)


def test_fundamental_solution_rejects_non_symmetric():
    with pytest.raises(ValueError):
        fundamental_solution(np.array([[1.0, 2.0], [0.0, 1.0]]), 1.0)


def test_path_validation():
    with pytest.raises(ValueError):
        SymplecticPath(np.zeros((3, 3)), 1.0)
    with pytest.raises(ValueError):
        SymplecticPath(J2, 0.0)


def test_perturbed_path_right_multiplies():
    P = kepler_path(0.4)
    e = 1e-3
    t = 2.2
    assert np.allclose(P.perturbed(e).evaluate(t), P.evaluate(t) @ mat_exp(standard_j(2), -e),
                       atol=1e-13)


# -- crossing instants --------------------------------------------------------------


def test_crossing_instants_r_alpha():
    ts = crossing_instants(r_alpha_path(0.5), 1.0)
    assert ts[0] == 0.0
    assert ts[1] == pytest.approx(2 * math.pi / math.sqrt(1.5), abs=1e-9)
    assert len(ts) == 2
    assert crossing_instants(r_alpha_path(1.5), 1.0) == [0.0]


def _n_alpha_f(alpha):
    d = 2.0 - alpha
    return lambda t: (4 * math.sin(math.sqrt(d) * t) / d ** 1.5 - (2 + alpha) * t / d) / (36 * math.pi ** 2)


@pytest.mark.parametrize("alpha", [0.0, 0.5, 1.2])
@pytest.mark.parametrize("eps", [1e-3, 1e-4])
def test_crossing_instants_perturbed_n_alpha(alpha, eps):
    # det([[1, 0], [f, 1]] exp(-eps J) - I) = 2 - 2 cos(eps) - f sin(eps), so the
    # crossings are the roots of f(t) = 2 tan(eps / 2); bracket them on a scan
    f = _n_alpha_f(alpha)
    g = lambda t: f(t) - 2 * math.tan(eps / 2)  # noqa: E731
    grid = np.linspace(1e-9, 2 * math.pi, 20001)
    vals = [g(t) for t in grid]
    want = [brentq(g, grid[i], grid[i + 1], xtol=1e-15)
            for i in range(len(grid) - 1) if vals[i] * vals[i + 1] < 0]
    got = crossing_instants(n_alpha_path(alpha), 1.0, eps=eps)
    assert len(want) == 2
    assert np.allclose(got, want, atol=1e-8)


def test_crossing_instants_argument_checks():
    with pytest.raises(ValueError):
        crossing_instants(r_alpha_path(0.5), 1.0, eps=-1.0)
    with pytest.raises(ValueError):
        crossing_instants(r_alpha_path(0.5), 2.0)


# -- crossing forms -------------------------------------------------------------------


def test_crossing_form_r_alpha_at_start():
    assert crossing_form(r_alpha_path(0.5), 1.0, 0.0) == (2, 0)


@given(st.floats(0.0, 1.99), st.floats(-5, 5), st.floats(-5, 5))
def test_crossing_form_formula_r_alpha(alpha, x, y):
    # the form at t = 0 is <B v, v> = x^2 + (2 - alpha) y^2
    P = r_alpha_path(alpha)
    v = np.array([x, y])
    assert v @ P.hamiltonian(0.0) @ v == pytest.approx(x * x + (2 - alpha) * y * y, abs=1e-12)


@pytest.mark.parametrize("seed", range(20))
def test_crossing_form_finite_difference(seed):
    # -J psi'(t) psi(t)^-1 by central differences of the evaluated path,
    # independent of the stored generator
    rng = np.random.default_rng(seed)
    alpha = float(rng.uniform(0, 1.99))
    P = r_alpha_path(alpha)
    t = float(rng.uniform(0, 2 * math.pi))
    h = 1e-5
    dpsi = (P.evaluate(t + h) - P.evaluate(t - h)) / (2 * h)
    B = -J2 @ dpsi @ np.linalg.inv(P.evaluate(t))
    v = rng.normal(size=2)
    want = v[0] ** 2 + (2 - alpha) * v[1] ** 2
    assert v @ B @ v == pytest.approx(want, rel=1e-7)


def test_crossing_form_perturbed_n_alpha():
    # ascending zero of f - 2 tan(eps/2) gives (1, 0), descending (0, 1)
    eps = 1e-4
    P = n_alpha_path(0.5).perturbed(eps)
    t1, t2 = crossing_instants(n_alpha_path(0.5), 1.0, eps=eps)
    assert crossing_form(P, 1.0, t1) == (1, 0)
    assert crossing_form(P, 1.0, t2) == (0, 1)


def test_crossing_form_not_a_crossing():
    with pytest.raises(ValueError):
        crossing_form(r_alpha_path(0.5), 1.0, 1.0)


def test_crossing_form_degenerate():
    # the unperturbed shear lies in the singular cycle: the form vanishes
    with pytest.raises(DegenerateCrossing):
        crossing_form(n_alpha_path(0.5), 1.0, 2.0)


# -- CLM and omega indices --------------------------------------------------------------


@pytest.mark.parametrize("alpha,want", [(0.0, 4), (0.5, 4), (0.99, 4), (1.0, 2), (1.5, 2), (1.95, 2)])
def test_clm_r_alpha(alpha, want):
    assert clm_index(r_alpha_path(alpha), 1.0).index == want


@pytest.mark.parametrize("alpha", [0.0, 0.5, 1.0, 1.5, 1.9])
def test_clm_n_alpha(alpha):
    rep = clm_index(n_alpha_path(alpha), 1.0)
    assert rep.index == 0
    assert rep.method == "perturbed" and rep.eps > 0


def test_clm_identity_path_at_minus_one():
    P = fundamental_solution(np.zeros((4, 4)), 2.0)
    rep = clm_index(P, -1.0)
    assert rep.index == 0 and not rep.crossings


@pytest.mark.parametrize("alpha,want", [(1.0, 0), (0.5, 2), (0.0, 2), (1.3, 0), (1.9, 0)])
def test_kepler_i1(alpha, want):
    rep = omega_index(kepler_path(alpha), 1.0)
    assert rep.index == want
    assert isinstance(rep.index, int)


@pytest.mark.parametrize("theta", [0.1, 0.7, 1.5, 2.9, math.pi])
def test_kepler_omega_at_alpha_one(theta):
    assert omega_index(kepler_path(1.0), cmath.exp(1j * theta)).index == 2


@pytest.mark.parametrize("alpha", np.linspace(0.0, 1.95, 9).tolist())
def test_homotopy_route(alpha):
    # i_1(phi_2) = i_1(R_alpha) + i_1(N_alpha), i_1 = iota_CLM - n
    direct = omega_index(kepler_path(alpha), 1.0).index
    parts = omega_index(r_alpha_path(alpha), 1.0).index + omega_index(n_alpha_path(alpha), 1.0).index
    assert direct == parts


@pytest.mark.parametrize("alpha", [0.5, 1.0, 1.5])
def test_eps_sign(alpha):
    # the e^{-eps J} perturbation counts iota_CLM(Delta, .) = i_1 + n at
    # omega = 1; the opposite orientation does not
    K = kepler_path(alpha)
    want = omega_index(K, 1.0).index + 2
    assert clm_index(K.perturbed(1e-3), 1.0, eps=0).index == want
    assert clm_index(K.perturbed(-1e-3), 1.0, eps=0).index != want


def test_eps_stability():
    P = essential_path(ModelParams(0.4, 1.5))
    rep = omega_index(P, 1.0, eps=1e-3)
    for e in (5e-4, 2.5e-4):
        assert omega_index(P, 1.0, eps=e).index == rep.index


def test_omega_must_be_unit():
    with pytest.raises(ValueError):
        omega_index(kepler_path(0.5), 0.5)


def test_growth_limit():
    P = essential_path(ModelParams(1.0, 9.0), horizon=20 * math.pi)
    with pytest.raises(NonConvergence):
        omega_index(P, 1.0)


# -- nullity ---------------------------------------------------------------------------


def test_nullity_kepler():
    # eigenvalue 1 of the Kepler monodromy has algebraic multiplicity 2 but a
    # single Jordan block, so the kernel is one dimensional away from alpha = 1
    from maslov_lagrange.linalg import eig
    for alpha in (0.3, 1.5):
        P = kepler_path(alpha)
        assert nullity(P, 1.0) == 1
        assert eig(P.endpoint).find(1.0, 1e-6).multiplicity >= 2
    assert nullity(kepler_path(1.0), 1.0) == 3


def test_nullity_identity_and_unstable():
    assert nullity(fundamental_solution(np.zeros((4, 4)), 1.0), 1.0) == 4
    assert nullity(essential_path(ModelParams(1.0, 9.0)), 1.0) == 0


# -- invariants ------------------------------------------------------------------------


def _ls_params(a, f):
    return ModelParams(a, f * float(stability_curve(a)))


def _far_from_spectrum(P, theta, gap=1e-3):
    vals = np.linalg.eigvals(P.endpoint)
    angles = [cmath.phase(v) for v in vals if abs(abs(v) - 1) < 1e-6]
    return all(abs(cmath.exp(1j * theta) - cmath.exp(1j * x)) > gap for x in angles)


@given(st.floats(0.0, 1.9), st.floats(0.05, 0.95), st.floats(0.05, math.pi))
def test_conjugate_omega(a, f, theta):
    P = essential_path(_ls_params(a, f))
    assume(_far_from_spectrum(P, theta))
    w = cmath.exp(1j * theta)
    assert omega_index(P, w).index == omega_index(P, w.conjugate()).index


@given(st.floats(0.0, 1.9), st.floats(0.05, 0.95), st.floats(0.05, math.pi),
       st.integers(0, 2 ** 32 - 1))
def test_symplectic_conjugation_invariance(a, f, theta, seed):
    P = essential_path(_ls_params(a, f))
    assume(_far_from_spectrum(P, theta))
    rng = np.random.default_rng(seed)
    S = rng.normal(size=(4, 4)) * 0.3
    C = scipy.linalg.expm(standard_j(2) @ (S + S.T))
    Q = SymplecticPath(C @ P.generator @ np.linalg.inv(C), P.horizon)
    w = cmath.exp(1j * theta)
    assert omega_index(Q, w).index == omega_index(P, w).index


@given(st.floats(0.0, 1.9), st.floats(0.05, 0.95), st.floats(0.05, math.pi))
def test_additivity_under_diamond(a, f, theta):
    # direct count on the 8x8 generator, not the blockwise route
    p = _ls_params(a, f)
    K, E = kepler_path(a), essential_path(p)
    assume(_far_from_spectrum(K, theta) and _far_from_spectrum(E, theta))
    g = generators(p)
    full = SymplecticPath(diamond(g.lambda2, g.lambda3), 2 * math.pi)
    w = cmath.exp(1j * theta)
    assert omega_index(full, w).index == omega_index(K, w).index + omega_index(E, w).index


@pytest.mark.parametrize("a,f", [(0.2, 0.3), (0.6, 0.8), (1.2, 0.5), (1.7, 0.2)])
def test_additivity_under_diamond_at_one(a, f):
    p = _ls_params(a, f)
    g = generators(p)
    full = SymplecticPath(diamond(g.lambda2, g.lambda3), 2 * math.pi)
    want = omega_index(kepler_path(a), 1.0).index + omega_index(essential_path(p), 1.0).index
    assert omega_index(full, 1.0).index == want


def test_report_fields():
    rep = omega_index(kepler_path(1.0), cmath.exp(0.7j))
    assert rep.method == "analytic-crossing"
    assert rep.nullity == 0
    assert sum(c.contribution for c in rep.crossings) == rep.index
    for c in rep.crossings:
        assert c.kernel_dim >= 1 and sum(c.signature) == c.kernel_dim
        assert c.position in ("start", "interior", "end")


def test_essential_si_index_zero():
    assert omega_index(essential_path(ModelParams(1.0, 9.0)), 1.0).index == 0
    # monodromy hyperbolic, theta_alpha irrelevant there
    assert theta_alpha(1.0) == 0.0
    _, _, ang = lambda3_spectrum_and_angles(ModelParams(0.5, 1.0))
    assert 0 < ang.theta1 < 2 * math.pi
