import cmath
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from maslov_lagrange.engine import DegenerateCrossing, SymplecticPath, omega_index
from maslov_lagrange.iteration import (NormalForm, SplittingPair, bott_long_sum, closest_odd,
                                       iterate_path, krein_closed_index,
                                       omega_index_via_splitting, splitting_data,
                                       splitting_numbers, splitting_table, unit_spectrum_angles)
from maslov_lagrange.linalg import n1, rotation
from maslov_lagrange.model import (ModelParams, degenerate_curve, essential_path, full_path,
                                   generators, iterate_closed_e2, kepler_normal_forms,
                                   kepler_path, omega_table_e2, r_alpha_path, stability_curve,
                                   theta_alpha)


# -- normal forms and tables ---------------------------------------------------------


def test_normal_form_validation():
    with pytest.raises(ValueError):
        NormalForm("Q")
    with pytest.raises(ValueError):
        NormalForm("R", theta=0.0)
    with pytest.raises(ValueError):
        NormalForm.shear(0.0, 1.0)
    assert np.array_equal(NormalForm.shear(1.0, 1.0).matrix(), n1(1.0, 1.0))
    assert np.allclose(NormalForm.rotation(0.4).matrix(), rotation(0.4))


def test_splitting_pair_validation_and_sum():
    with pytest.raises(ValueError):
        SplittingPair(-1, 0)
    assert (SplittingPair(1, 0) + SplittingPair(0, 1)).as_tuple() == (1, 1)


@pytest.mark.parametrize("nf,omega,want", [
    (NormalForm.shear(1.0, 1.0), 1.0, (1, 1)),
    (NormalForm.shear(1.0, 0.0), 1.0, (1, 1)),
    (NormalForm.shear(1.0, -1.0), 1.0, (0, 0)),
    (NormalForm.shear(-1.0, 0.0), -1.0, (1, 1)),
    (NormalForm.shear(-1.0, -1.0), -1.0, (1, 1)),
    (NormalForm.shear(-1.0, 1.0), -1.0, (0, 0)),
    (NormalForm.rotation(1.0), cmath.exp(1j), (0, 1)),
    (NormalForm.rotation(2 * math.pi - 1.0), cmath.exp(1j), (1, 0)),
    (NormalForm.rotation(1.0), cmath.exp(0.5j), (0, 0)),
    (NormalForm("I"), 1.0, (1, 1)),
    (NormalForm("-I"), -1.0, (1, 1)),
    (NormalForm.shear(2.0, 0.0), 1.0, (0, 0)),
])
def test_splitting_table(nf, omega, want):
    assert splitting_table(nf, omega).as_tuple() == want


def test_splitting_table_additive():
    forms = [NormalForm.rotation(1.0), NormalForm.shear(1.0, 1.0)]
    assert splitting_table(forms, 1.0).as_tuple() == (1, 1)
    assert splitting_table(forms, cmath.exp(1j)).as_tuple() == (0, 1)


# -- limit definition -----------------------------------------------------------------


def test_splitting_numbers_rotation_path():
    # R_alpha with theta_alpha = 2 pi sqrt(2 - alpha) in (0, pi): the
    # endpoint is R(theta_alpha) and omega = exp(i theta_alpha) gives (0, 1)
    a = 0.5
    th = 2 * math.pi * math.sqrt(2 - a) % (2 * math.pi)
    P = r_alpha_path(a)
    assert splitting_numbers(P, cmath.exp(1j * th)).as_tuple() == (0, 1)
    assert splitting_numbers(P, cmath.exp(-1j * th)).as_tuple() == (1, 0)


def test_splitting_numbers_shear():
    # the Kepler block carries N1(1, 1) at 1 besides the rotation
    a = 1.5
    assert splitting_numbers(kepler_path(a), 1.0).as_tuple() == (1, 1)


@pytest.mark.parametrize("omega", [cmath.exp(0.3j), -1.0, cmath.exp(2.0j)])
def test_splitting_off_spectrum(omega):
    P = essential_path(ModelParams(0.2, 0.5))
    M = P.endpoint
    assert np.min(np.abs(np.linalg.eigvals(M) - omega)) > 1e-3
    assert splitting_numbers(P, omega).as_tuple() == (0, 0)


@pytest.mark.parametrize("alpha", [0.0, 0.3, 0.8, 1.2, 1.6, 1.8])
def test_splitting_limit_matches_table(alpha):
    P = kepler_path(alpha)
    nf = kepler_normal_forms(alpha)
    for phi in unit_spectrum_angles(P.endpoint):
        w = cmath.exp(1j * phi)
        assert splitting_numbers(P, w).as_tuple() == splitting_table(nf, w).as_tuple()


@pytest.mark.parametrize("a,f", [(0.2, 0.5), (0.7, 0.3), (1.3, 0.6)])
def test_splitting_bounds(a, f):
    P = essential_path(ModelParams(a, f * float(stability_curve(a))))
    M = P.endpoint
    for phi, pair in splitting_data(P).items():
        w = cmath.exp(1j * phi)
        kernel = 4 - np.linalg.matrix_rank(M - w * np.eye(4), tol=1e-8)
        assert 0 <= pair.plus <= kernel and 0 <= pair.minus <= kernel


# -- reconstruction --------------------------------------------------------------------


def _kepler_data(alpha):
    nf = kepler_normal_forms(alpha)
    return {phi: splitting_table(nf, cmath.exp(1j * phi))
            for phi in unit_spectrum_angles(kepler_path(alpha).endpoint)}


def test_reconstruction_alpha_above_seven_quarters():
    a = 1.9
    th = 0.5 * theta_alpha(a)
    assert omega_index_via_splitting(0, _kepler_data(a), th) == 1


def test_reconstruction_alpha_below_one():
    a = 0.5
    th = 0.5 * (theta_alpha(a) + math.pi)
    assert omega_index_via_splitting(2, _kepler_data(a), th) == 2


@pytest.mark.parametrize("alpha", [0.1, 0.6, 1.0, 1.3, 1.75, 1.9])
def test_reconstruction_matches_engine(alpha):
    P = kepler_path(alpha)
    i1 = omega_index(P, 1.0).index
    data = splitting_data(P)
    ta = theta_alpha(alpha)
    for th in np.linspace(0.1, math.pi, 9):
        if min(abs(th - ta), abs(th - (2 * math.pi - ta))) < 1e-3:
            continue
        w = cmath.exp(1j * th)
        direct = omega_index(P, w).index
        assert omega_index_via_splitting(i1, data, float(th)) == direct
        assert omega_index(P, w.conjugate()).index == direct


def test_reconstruction_missing_data():
    a = 0.5
    with pytest.raises(KeyError):
        omega_index_via_splitting(2, {}, math.pi, spectrum=unit_spectrum_angles(kepler_path(a).endpoint))
    with pytest.raises(ValueError):
        omega_index_via_splitting(2, {}, 0.0)


# -- iteration ----------------------------------------------------------------------


def test_iterate_identity_and_group_property():
    P = kepler_path(0.7)
    assert iterate_path(P, 1) is P
    Q = iterate_path(P, 3)
    assert Q.horizon == pytest.approx(3 * P.horizon)
    M = P.endpoint
    assert np.allclose(Q.endpoint, M @ M @ M, atol=1e-8 * np.max(np.abs(M)) ** 3)
    with pytest.raises(ValueError):
        iterate_path(P, 0)


def test_iterate_diamond_path():
    P = full_path(ModelParams(0.3, 1.0))
    Q = iterate_path(P, 2)
    M = P.endpoint
    assert np.allclose(Q.endpoint, M @ M, atol=1e-8 * np.max(np.abs(M)) ** 2)


def test_iterate_non_autonomous():
    # a path that does not start at the identity is iterated piecewise
    base = r_alpha_path(0.5)
    P = SymplecticPath(base.generator, base.horizon, right=rotation(0.3))
    Q = iterate_path(P, 2)
    M = P.endpoint
    assert np.allclose(Q.endpoint, M @ M, atol=1e-10)
    assert np.allclose(Q.evaluate(1.5 * P.horizon), P.evaluate(0.5 * P.horizon) @ M, atol=1e-10)


def test_kepler_second_iterate_at_one():
    assert omega_index(iterate_path(kepler_path(1.0), 2), 1.0).index == 2


# -- Bott-Long ---------------------------------------------------------------------


@pytest.mark.parametrize("alpha", [0.2, 0.9, 1.4])
def test_bott_two(alpha):
    P = kepler_path(alpha)
    want = omega_index(P, 1.0).index + omega_index(P, -1.0).index
    assert bott_long_sum(P, 2) == want
    assert omega_index(iterate_path(P, 2), 1.0).index == want


def test_bott_examples():
    assert bott_long_sum(kepler_path(1.0), 3) == 4
    assert bott_long_sum(kepler_path(1.8), 2) == 0


def test_bott_general_z():
    P = kepler_path(0.4)
    z = cmath.exp(0.9j)
    k = 3
    direct = omega_index(iterate_path(P, k), z).index
    assert bott_long_sum(P, k, z) == direct


def test_bott_argument_checks():
    with pytest.raises(ValueError):
        bott_long_sum(kepler_path(0.5), 0)
    with pytest.raises(ValueError):
        bott_long_sum(kepler_path(0.5), 2, 2.0)


@pytest.mark.parametrize("alpha", [0.05, 0.45, 1.1, 1.6, 1.85])
def test_kepler_iterates_non_decreasing(alpha):
    engine = [omega_index(iterate_path(kepler_path(alpha), k), 1.0).index for k in range(1, 5)]
    closed = [iterate_closed_e2(alpha, k) for k in range(1, 13)]
    assert engine == closed[:4]
    assert all(x <= y for x, y in zip(closed, closed[1:]))


def test_kepler_iterates_grow():
    # k0(alpha) is the first k with 2 - 1/k^2 > alpha
    for alpha in (0.3, 1.2, 1.7):
        k0 = next(k for k in range(1, 100) if 2 - 1 / k ** 2 > alpha)
        assert all(iterate_closed_e2(alpha, k) >= 2 for k in range(k0 + 1, k0 + 6))


# -- Krein closed form -----------------------------------------------------------------


def test_closest_odd():
    assert closest_odd(2.3) == 3
    assert closest_odd(3.9) == 3
    assert closest_odd(4.0) == 4
    assert closest_odd(-0.5) == -1
    assert closest_odd(0.0) == 0


@pytest.mark.parametrize("a", [0.1, 0.5, 0.9])
def test_krein_above_and_below_degenerate_curve(a):
    c = float(degenerate_curve(a))
    above = ModelParams(a, 0.5 * (c + float(stability_curve(a))))
    below = ModelParams(a, 0.5 * c)
    assert krein_closed_index(generators(above).b3, 2 * math.pi).index == 0
    assert krein_closed_index(generators(below).b3, 2 * math.pi).index == 2


def test_krein_degenerate_kepler():
    with pytest.raises(DegenerateCrossing):
        krein_closed_index(generators(ModelParams(1.0, 0.0)).b2, 2 * math.pi)


def test_krein_argument_checks():
    with pytest.raises(ValueError):
        krein_closed_index(np.array([[1.0, 2.0], [0.0, 1.0]]), 1.0)
    with pytest.raises(ValueError):
        krein_closed_index(np.eye(2), 0.0)


@given(st.floats(0.2, 5.0), st.floats(0.2, 5.0), st.floats(0.5, 12.0))
def test_krein_vs_crossing_on_oscillators(w1, w2, T):
    # decoupled oscillators: B = diag(w1, w2, w1, w2), frequencies w1, w2
    from hypothesis import assume
    assume(all(abs(w * T / (2 * math.pi) - round(w * T / (2 * math.pi))) > 1e-3 for w in (w1, w2)))
    B = np.diag([w1, w2, w1, w2])
    P = SymplecticPath(np.array([[0, 0, -w1, 0], [0, 0, 0, -w2],
                                 [w1, 0, 0, 0], [0, w2, 0, 0]], dtype=float), T)
    assert krein_closed_index(B, T).index == omega_index(P, 1.0).index

