import cmath
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from maslov_lagrange.linalg import n1, rotation
from maslov_lagrange.model import n_alpha_path, r_alpha_path
from maslov_lagrange.sp2 import (CylCoords, Stratum, d_omega, from_cylindrical, stratum,
                                 to_cylindrical, trace_path)


def random_sp2(rng):
    r = math.exp(rng.uniform(-2, 2))
    return from_cylindrical(CylCoords(r, rng.uniform(0, 2 * math.pi), rng.uniform(-3, 3)))


def test_examples():
    assert to_cylindrical(rotation(1.0)).as_tuple() == pytest.approx((1.0, 1.0, 0.0))
    assert to_cylindrical(np.eye(2)).as_tuple() == pytest.approx((1.0, 0.0, 0.0))
    assert to_cylindrical(np.diag([2.0, 0.5])).as_tuple() == pytest.approx((2.0, 0.0, 0.0))


def test_validation():
    with pytest.raises(ValueError):
        to_cylindrical(np.diag([2.0, 3.0]))
    with pytest.raises(ValueError):
        to_cylindrical(np.eye(3))
    with pytest.raises(ValueError):
        CylCoords(0.0, 0.0, 0.0)
    with pytest.raises(ValueError):
        CylCoords(1.0, 2 * math.pi, 0.0)


def test_polar_factor():
    M = np.array([[2.0, 1.0], [3.0, 2.0]])
    c = to_cylindrical(M)
    P = np.array([[c.r, c.z], [c.z, (1 + c.z ** 2) / c.r]])
    assert np.allclose(P @ P, M @ M.T)
    assert np.allclose(P @ rotation(c.theta), M)


@given(st.floats(-2, 2), st.floats(0, 2 * math.pi - 1e-9), st.floats(-3, 3))
def test_round_trip(logr, theta, z):
    c = CylCoords(math.exp(logr), theta, z)
    back = to_cylindrical(from_cylindrical(c))
    assert back.r == pytest.approx(c.r, abs=1e-10 * max(1.0, c.r))
    assert back.z == pytest.approx(c.z, abs=1e-10 * max(1.0, abs(c.z), c.r))
    d = abs(back.theta - c.theta) % (2 * math.pi)
    assert min(d, 2 * math.pi - d) < 1e-10


@given(st.integers(0, 2 ** 32 - 1), st.floats(0, 2 * math.pi))
def test_d_omega_is_normalized_determinant(seed, phi):
    M = random_sp2(np.random.default_rng(seed))
    w = cmath.exp(1j * phi)
    want = (np.linalg.det(M - w * np.eye(2)) / w).real
    assert d_omega(to_cylindrical(M), phi) == pytest.approx(want, abs=1e-9 * max(1.0, np.max(np.abs(M)) ** 2))


def test_d_omega_examples():
    assert d_omega(to_cylindrical(np.eye(2)), 0.0) == pytest.approx(0.0, abs=1e-15)
    assert d_omega(to_cylindrical(rotation(math.pi / 2)), 0.0) == pytest.approx(2.0)


def test_stratum_examples():
    c = to_cylindrical(n1(1.0, 1.0))
    want = Stratum.ZERO_PLUS if math.sin(c.theta) > 0 else Stratum.ZERO_MINUS
    assert stratum(n1(1.0, 1.0), 1.0) is want is Stratum.ZERO_MINUS
    assert stratum(np.eye(2), 1.0) is Stratum.IDENTITY
    assert stratum(rotation(math.pi / 3), cmath.exp(1j * math.pi / 3)) is Stratum.ZERO_PLUS
    assert stratum(rotation(math.pi / 2), 1.0) is Stratum.MINUS
    assert stratum(np.diag([3.0, 1 / 3]), 1.0) is Stratum.PLUS
    with pytest.raises(ValueError):
        stratum(np.eye(2), 2.0)


def test_stratum_sign_consistency():
    rng = np.random.default_rng(7)
    for _ in range(100):
        M = random_sp2(rng)
        phi = rng.uniform(0, 2 * math.pi)
        w = cmath.exp(1j * phi)
        d = (np.linalg.det(M - w * np.eye(2)) / w).real
        s = stratum(M, w)
        if abs(d) < 1e-6:
            continue
        assert s is (Stratum.PLUS if d < 0 else Stratum.MINUS)
        c = to_cylindrical(M)
        lhs = (1 + c.r ** 2 + c.z ** 2) * math.cos(c.theta)
        assert (lhs > 2 * c.r * math.cos(phi)) == (s is Stratum.PLUS)


def test_trace_path():
    rows = trace_path(n_alpha_path(0.5), samples=11)
    assert len(rows) == 11 and rows[0] == pytest.approx((0.0, 1.0, 0.0, 0.0))
    for t, r, theta, z in rows:
        assert r > 0 and 0 <= theta < 2 * math.pi
    rows = trace_path(r_alpha_path(1.0), ts=[0.0, 1.0])
    assert rows[1][0] == 1.0
    with pytest.raises(ValueError):
        trace_path(n_alpha_path(0.5), samples=1)


def test_trace_rejects_higher_dimension():
    from maslov_lagrange.model import kepler_path
    with pytest.raises(ValueError):
        trace_path(kepler_path(0.5))
