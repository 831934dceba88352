"""Lagrangian circular orbit of the planar three-body problem.

The linearized flow in the rotating frame splits into a Kepler block E2 and
an essential block E3.  Both are parametrized by the homogeneity alpha in
[0, 2) (alpha = 0 is the logarithmic potential) and the mass parameter

    beta = 27 (m1 m2 + m1 m3 + m2 m3) / (m1 + m2 + m3)^2  in (0, 9].

Time is rescaled so the orbit has period 2 pi.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .engine import CallablePath, DiamondPath, SymplecticPath
from .iteration import NormalForm
from .linalg import diamond, standard_j

__all__ = [
    "ModelParams",
    "Masses",
    "AngleData",
    "Generators",
    "StabilityClass",
    "beta_of_masses",
    "generators",
    "kepler_closed_solution",
    "lambda3_spectrum_and_angles",
    "classify_stability",
    "spectral_stability",
    "theta_alpha",
    "closed_morse",
    "omega_table_e2",
    "omega_table_e3",
    "e3_case",
    "iterate_closed_e2",
    "jump_curve",
    "central_configuration_check",
    "meyer_schmidt_matrix",
    "meyer_schmidt_check",
    "reduced_hessian",
    "r_alpha_path",
    "n_alpha_path",
    "kepler_path",
    "essential_path",
    "full_path",
    "stability_curve",
    "degenerate_curve",
    "half_turn_curve",
    "coincidence_curve",
    "kepler_normal_forms",
    "essential_normal_forms",
    "PERIOD",
]

PERIOD = 2 * math.pi
TWO_PI = 2 * math.pi
ALPHA_MAX = 2.0


# -- parameter types ------------------------------------------------------------


@dataclass(frozen=True)
class ModelParams:
    """Homogeneity alpha in [0, 2) and mass parameter beta in [0, 9]."""

    alpha: float
    beta: float

    def __post_init__(self):
        if not (0.0 <= self.alpha < ALPHA_MAX) or not math.isfinite(self.alpha):
            raise ValueError(f"alpha must lie in [0, 2), got {self.alpha}")
        if not (0.0 <= self.beta <= 9.0) or not math.isfinite(self.beta):
            raise ValueError(f"beta must lie in [0, 9], got {self.beta}")


@dataclass(frozen=True)
class Masses:
    """Three positive masses, normalized to unit total mass."""

    m1: float
    m2: float
    m3: float

    def __post_init__(self):
        m = np.array([self.m1, self.m2, self.m3], dtype=float)
        if not np.all(np.isfinite(m)) or np.any(m <= 0):
            raise ValueError(f"masses must be positive, got {tuple(m)}")
        m = m / m.sum()
        object.__setattr__(self, "m1", float(m[0]))
        object.__setattr__(self, "m2", float(m[1]))
        object.__setattr__(self, "m3", float(m[2]))

    def as_array(self) -> np.ndarray:
        return np.array([self.m1, self.m2, self.m3])


@dataclass(frozen=True)
class AngleData:
    """Monodromy angles in [0, 2 pi).

    theta1 belongs to the Krein-negative eigenvalue of the first E3 pair,
    theta2 to the second, theta_alpha to the Kepler rotation.
    """

    theta1: float
    theta2: float
    theta_alpha: float


class StabilityClass(str, Enum):
    LS = "LS"  # linearly stable
    SS = "SS"  # spectrally but not linearly stable
    SI = "SI"  # spectrally unstable


@dataclass(frozen=True)
class Generators:
    lambda2: np.ndarray
    lambda3: np.ndarray
    full: np.ndarray
    b2: np.ndarray
    b3: np.ndarray

    def __iter__(self):
        return iter((self.lambda2, self.lambda3, self.full, self.b2, self.b3))


def _params(p, beta=None) -> ModelParams:
    if isinstance(p, ModelParams):
        return p
    return ModelParams(float(p), float(beta))


# -- masses and generators ------------------------------------------------------


def beta_of_masses(m) -> float:
    """27 (m1 m2 + m1 m3 + m2 m3) / (m1 + m2 + m3)^2."""
    if not isinstance(m, Masses):
        m = Masses(*m)
    m1, m2, m3 = m.as_array()
    return 27.0 * (m1 * m2 + m1 * m3 + m2 * m3)


def _kepler_generator(alpha: float) -> np.ndarray:
    return np.array([
        [0.0, 1.0, alpha + 1.0, 0.0],
        [-1.0, 0.0, 0.0, -1.0],
        [1.0, 0.0, 0.0, 1.0],
        [0.0, 1.0, -1.0, 0.0],
    ])


def generators(p: ModelParams) -> Generators:
    """Lambda2, Lambda3, Lambda = Lambda2 <> Lambda3 and B2, B3 with Lambda_i = J B_i."""
    a, b = p.alpha, p.beta
    L2 = _kepler_generator(a)
    r = (a + 2.0) / 3.0 * math.sqrt(9.0 - b)
    L3 = L2.copy()
    L3[0, 2] = 0.5 * (a + r)
    L3[1, 3] = 0.5 * (a - r)
    J = standard_j(2)
    B2 = -J @ L2
    B3 = -J @ L3
    return Generators(L2, L3, diamond(L2, L3), B2, B3)


def kepler_path(alpha: float, horizon: float = PERIOD) -> SymplecticPath:
    """phi_2(t) = exp(t Lambda2) on [0, horizon]."""
    return SymplecticPath(_kepler_generator(alpha), horizon)


def essential_path(p: ModelParams, horizon: float = PERIOD) -> SymplecticPath:
    """phi_3(t) = exp(t Lambda3) on [0, horizon]."""
    return SymplecticPath(generators(p).lambda3, horizon)


def full_path(p: ModelParams, horizon: float = PERIOD) -> DiamondPath:
    """phi_2 diamond phi_3; its indices are computed block by block."""
    return DiamondPath(kepler_path(p.alpha, horizon), essential_path(p, horizon))


def kepler_closed_solution(alpha: float, tau: float) -> np.ndarray:
    """Closed-form exp(tau Lambda2)."""
    if not 0.0 <= alpha < ALPHA_MAX:
        raise ValueError(f"alpha must lie in [0, 2), got {alpha}")
    d = 2.0 - alpha
    s = math.sqrt(d)
    c, S = math.cos(s * tau), math.sin(s * tau)
    k = (2.0 + alpha) * tau / d
    d32 = d ** 1.5
    return np.array([
        [(2 - alpha * c) / d, k - 2 * alpha * S / d32, k - alpha ** 2 * S / d32, alpha * (1 - c) / d],
        [-S / s, (2 * c - alpha) / d, alpha * (c - 1) / d, -S / s],
        [S / s, (2 - 2 * c) / d, (2 - alpha * c) / d, S / s],
        [(2 * c - 2) / d, 4 * S / d32 - k, 2 * alpha * S / d32 - k, (2 * c - alpha) / d],
    ])


# -- curves in the (beta, alpha) plane -------------------------------------------


def stability_curve(alpha):
    """beta = 9 ((alpha - 2) / (alpha + 2))^2, the LS/SI boundary."""
    alpha = np.asarray(alpha, dtype=float)
    return 9.0 * ((alpha - 2.0) / (alpha + 2.0)) ** 2


def degenerate_curve(alpha):
    """beta = 36 (1 - alpha) / (alpha + 2)^2, where 1 enters the E3 monodromy."""
    alpha = np.asarray(alpha, dtype=float)
    return 36.0 * (1.0 - alpha) / (alpha + 2.0) ** 2


def half_turn_curve(alpha):
    """beta = 9 (7 - 4 alpha) / (4 (alpha + 2)^2), where -1 enters the E3 monodromy."""
    alpha = np.asarray(alpha, dtype=float)
    return 9.0 * (7.0 - 4.0 * alpha) / (4.0 * (alpha + 2.0) ** 2)


def coincidence_curve(alpha):
    """beta = 9 (alpha - 1)^2 / (alpha + 2)^2, where the two E3 angles meet."""
    alpha = np.asarray(alpha, dtype=float)
    return 9.0 * (alpha - 1.0) ** 2 / (alpha + 2.0) ** 2


# -- spectrum, stability and angles ---------------------------------------------


def lambda3_spectrum_and_angles(p: ModelParams):
    """Closed-form eigenvalues of Lambda3 and the monodromy angles.

    Returns ``((l1p, l1m), (l2p, l2m), AngleData)``.
    """
    a, b = p.alpha, p.beta
    disc = complex(9.0 * (a - 2.0) ** 2 - b * (a + 2.0) ** 2)
    root = np.sqrt(disc)
    l1 = 1j / 6.0 * np.sqrt(36.0 - 18.0 * a + 6.0 * root)
    l2 = 1j / 6.0 * np.sqrt(36.0 - 18.0 * a - 6.0 * root)
    theta1 = float(np.mod((TWO_PI * l1).imag, TWO_PI))
    theta2 = float(np.mod((TWO_PI * -l2).imag, TWO_PI))
    return (l1, -l1), (l2, -l2), AngleData(theta1, theta2, theta_alpha(a))


def classify_stability(p: ModelParams, tol: float = 0.0) -> StabilityClass:
    """LS below the stability curve, SS on it, SI above.

    ``tol`` widens the SS set to |beta - curve| <= tol.
    """
    c = float(stability_curve(p.alpha))
    if abs(p.beta - c) <= tol:
        return StabilityClass.SS
    return StabilityClass.LS if p.beta < c else StabilityClass.SI


def spectral_stability(p: ModelParams, tol: float = 1e-9, cond_limit: float = 1e8) -> StabilityClass:
    """Stability from the spectrum of Lambda3 alone.

    SI if an eigenvalue leaves the imaginary axis, SS if the eigenvector
    matrix is ill conditioned (not diagonalizable), LS otherwise.
    """
    w, V = np.linalg.eig(generators(p).lambda3)
    if np.max(np.abs(w.real)) > tol:
        return StabilityClass.SI
    if np.linalg.cond(V) > cond_limit:
        return StabilityClass.SS
    return StabilityClass.LS


def theta_alpha(alpha: float) -> float:
    """2 pi sqrt(2 - alpha) reduced to [0, 2 pi).

    The reduction is exact at the resonant values alpha = 1 and 7/4.
    """
    if alpha == 1.0:
        return 0.0
    if alpha == 1.75:
        return math.pi
    return float(np.mod(TWO_PI * math.sqrt(2.0 - alpha), TWO_PI))


def _rotation_form(theta: float, tol: float = 1e-12) -> NormalForm:
    theta = theta % TWO_PI
    if min(theta, TWO_PI - theta) <= tol:
        return NormalForm("I")
    if abs(theta - math.pi) <= tol:
        return NormalForm("-I")
    return NormalForm.rotation(theta)


def kepler_normal_forms(alpha: float) -> list[NormalForm]:
    """Normal forms of the Kepler monodromy, R(theta_alpha) <> N1(1, 1)."""
    return [_rotation_form(theta_alpha(alpha)), NormalForm.shear(1.0, 1.0)]


def essential_normal_forms(p: ModelParams) -> list[NormalForm]:
    """Normal forms R(theta1) <> R(theta2) of the E3 monodromy in the stable region."""
    if classify_stability(p) is StabilityClass.SI:
        raise ValueError("the E3 monodromy is hyperbolic in the unstable region")
    _, _, ang = lambda3_spectrum_and_angles(p)
    return [_rotation_form(ang.theta1), _rotation_form(ang.theta2)]


# -- closed-form index tables ---------------------------------------------------


def _close(x: float, y: float, tol: float) -> bool:
    return abs(x - y) <= tol


def closed_morse(p: ModelParams, subspace: str = "full") -> int:
    """Morse index of the orbit restricted to E2, E3 or both."""
    e2 = 0 if p.alpha >= 1.0 else 2
    e3 = 0 if p.beta >= float(degenerate_curve(p.alpha)) else 2
    if subspace == "E2":
        return e2
    if subspace == "E3":
        return e3
    if subspace == "full":
        return e2 + e3
    raise ValueError(f"unknown subspace {subspace!r}")


def _check_theta(theta: float) -> float:
    theta = float(theta)
    if not 0.0 < theta <= math.pi:
        raise ValueError(f"theta must lie in (0, pi], got {theta}")
    return theta


def omega_table_e2(alpha: float, theta: float) -> int:
    """i_omega(phi_2) at omega = exp(i theta), theta in (0, pi]."""
    theta = _check_theta(theta)
    ta = theta_alpha(alpha)
    if alpha > 1.75:
        return 1 if theta < ta else 0
    if alpha == 1.75:
        return 1 if theta < math.pi else 0
    if alpha > 1.0:
        return 1 if theta <= TWO_PI - ta else 2
    if alpha == 1.0:
        return 2
    return 3 if theta < ta else 2


def e3_case(p: ModelParams, tol: float = 1e-12) -> int:
    """Number (1 to 15) of the first region of the E3 case list containing p."""
    a, b = p.alpha, p.beta
    c2 = float(degenerate_curve(a))
    c3 = float(half_turn_curve(a))
    c4 = float(coincidence_curve(a))
    eq2, eq3, eq4 = _close(b, c2, tol), _close(b, c3, tol), _close(b, c4, tol)
    gt2, gt3, gt4 = b > c2 and not eq2, b > c3 and not eq3, b > c4 and not eq4
    lt2, lt3, lt4 = b < c2 and not eq2, b < c3 and not eq3, b < c4 and not eq4
    rules = [
        gt3 and a > 1.5,
        eq3 and a > 1.5,
        lt3 and lt4 and a > 1.0,
        eq4 and a > 1.0,
        lt3 and gt4 and gt2,
        eq3 and gt2 and a < 1.5,
        gt3 and gt2,
        eq2 and lt3,
        eq2 and eq3,
        eq2 and gt3,
        lt4 and a < 1.0,
        eq4 and a < 1.0,
        gt4 and lt2 and lt3,
        lt2 and eq3,
        lt2 and gt3,
    ]
    for i, hit in enumerate(rules, start=1):
        if hit:
            return i
    raise ValueError(f"no E3 case matches alpha={a}, beta={b}")


def omega_table_e3(p: ModelParams, theta: float, tol: float = 1e-12) -> int:
    """i_omega(phi_3) at omega = exp(i theta) from the fifteen-case list.

    Angles written -x in the case list mean 2 pi - x.  Only defined on the
    closure of the linearly stable region.
    """
    theta = _check_theta(theta)
    if classify_stability(p) is StabilityClass.SI:
        raise ValueError("the E3 table is not defined in the unstable region")
    _, _, ang = lambda3_spectrum_and_angles(p)
    t1, t2 = ang.theta1, ang.theta2
    u1, u2 = TWO_PI - t1, TWO_PI - t2
    pi = math.pi
    case = e3_case(p, tol)

    def band(*pieces):
        # pieces: (upper bound, closed?, value) ... , final value
        *steps, last = pieces
        for bound, closed, value in steps:
            if theta < bound or (closed and theta <= bound):
                return value
        return last

    if case == 1:
        return band((u2, True, 0), (t1, False, 1), 0)
    if case == 2:
        return band((u2, True, 0), (pi, False, 1), 0)
    if case == 3:
        return band((u2, True, 0), (u1, True, 1), 2)
    if case == 4:
        return band((u1, True, 0), 2)
    if case == 5:
        return band((u1, True, 0), (u2, True, 1), 2)
    if case == 6:
        return band((u1, True, 0), (pi, False, 1), 0)
    if case == 7:
        return band((u1, True, 0), (t2, False, 1), 0)
    if case == 8:
        return band((u2, True, 1), 2)
    if case == 9:
        return band((pi, False, 1), 0)
    if case == 10:
        return band((t2, False, 1), 0)
    if case == 11:
        return band((u2, True, 2), (t1, False, 3), 2)
    if case == 12:
        return 1 if abs(theta - t1) <= 1e-12 else 2
    if case == 13:
        return band((t1, False, 2), (u2, True, 1), 2)
    if case == 14:
        return band((t1, False, 2), (pi, False, 1), 0)
    return band((t1, False, 2), (t2, False, 1), 0)


def _count_roots(k: int, lo: float, hi: float, lo_closed: bool, hi_closed: bool,
                 tol: float = 1e-12) -> int:
    """Number of j in [0, k) with the angle 2 pi j / k in the given interval."""
    n = 0
    for j in range(k):
        t = TWO_PI * j / k
        above = t > lo + tol or (lo_closed and abs(t - lo) <= tol)
        below = t < hi - tol or (hi_closed and abs(t - hi) <= tol)
        n += above and below
    return n


def iterate_closed_e2(alpha: float, k: int) -> int:
    """i_1 of the k-th iterate of phi_2 by counting k-th roots of unity.

    n_minus counts roots on the upper arc from 1 (included) to the Kepler
    angle, n_plus the roots from there to -1 (included).
    """
    if k < 1:
        raise ValueError("k must be positive")
    ta = theta_alpha(alpha)
    pi = math.pi
    if alpha == 1.0:
        return 2 * (k - 1)
    if alpha == 1.75:
        return (k - 1) - (1 if k % 2 == 0 else 0)
    if alpha > 1.75:
        n_minus = _count_roots(k, 0.0, ta, True, False)
        return 2 * (n_minus - 1)
    if alpha > 1.0:
        phi = TWO_PI - ta
        n_minus = _count_roots(k, 0.0, phi, True, True)
        n_plus = _count_roots(k, phi, pi, False, True)
        if k % 2 == 0:
            return 2 * (n_minus - 1) + 4 * (n_plus - 1) + 2
        return 2 * (n_minus - 1) + 4 * n_plus
    n_minus = _count_roots(k, 0.0, ta, True, False)
    n_plus = _count_roots(k, ta, pi, True, True)
    if k % 2 == 0:
        return 6 * (n_minus - 1) + 4 * (n_plus - 1) + 4
    return 6 * (n_minus - 1) + 4 * n_plus + 2


def jump_curve(k: int, l: int, alpha):
    """Jump curve f_{k,l} at alpha and its tangency point with the stability curve.

    Returns ``(beta, tangency)`` with tangency = (beta*, alpha*) when l <= k,
    otherwise None.
    """
    if k < 1 or l < 1 or l > math.isqrt(2 * k * k):
        raise ValueError(f"need 1 <= l <= floor(sqrt(2) k), got k={k}, l={l}")
    q = (l / k) ** 2
    alpha_arr = np.asarray(alpha, dtype=float)
    beta = -36.0 / (alpha_arr + 2.0) ** 2 * q * (q + alpha_arr - 2.0)
    if np.ndim(beta) == 0:
        beta = float(beta)
    tangency = None
    if l <= k:
        tangency = (9.0 * l ** 4 / (2 * k * k - l * l) ** 2, 2.0 * (1.0 - q))
    return beta, tangency


# -- central configuration and coordinates -------------------------------------------


def _masses(m) -> Masses:
    return m if isinstance(m, Masses) else Masses(*m)


def _potential_derivatives(q: np.ndarray, m: np.ndarray, alpha: float):
    """U, grad U and Hessian of U at the planar configuration q (length 6)."""
    P = q.reshape(3, 2)
    U = 0.0
    G = np.zeros(6)
    H = np.zeros((6, 6))
    eye = np.eye(2)
    for i in range(3):
        for j in range(i + 1, 3):
            d = P[i] - P[j]
            r = math.hypot(*d)
            mm = m[i] * m[j]
            if alpha > 0:
                U += mm / r ** alpha
                g = -alpha * mm * d / r ** (alpha + 2)
                h = -alpha * mm * (eye / r ** (alpha + 2) - (alpha + 2) * np.outer(d, d) / r ** (alpha + 4))
            else:
                U -= mm * math.log(r)
                g = -mm * d / r ** 2
                h = -mm * (eye / r ** 2 - 2 * np.outer(d, d) / r ** 4)
            si, sj = slice(2 * i, 2 * i + 2), slice(2 * j, 2 * j + 2)
            G[si] += g
            G[sj] -= g
            H[si, si] += h
            H[sj, sj] += h
            H[si, sj] -= h
            H[sj, si] -= h
    return U, G, H


def _multiplier(q: np.ndarray, m: np.ndarray, alpha: float) -> float:
    """lambda_alpha = alpha U / I, or sum m_i m_j / I for the logarithm."""
    U, _, _ = _potential_derivatives(q, m, alpha)
    inertia = float(np.sum(np.repeat(m, 2) * q * q))
    if alpha > 0:
        return alpha * U / inertia
    return (m[0] * m[1] + m[0] * m[2] + m[1] * m[2]) / inertia


def equilateral(m, side: float = 1.0) -> np.ndarray:
    """Equilateral triangle of the given side with barycenter at the origin."""
    m = _masses(m).as_array()
    ang = np.array([math.pi / 2, math.pi / 2 + TWO_PI / 3, math.pi / 2 + 2 * TWO_PI / 3])
    P = side / math.sqrt(3.0) * np.column_stack([np.cos(ang), np.sin(ang)])
    P -= m @ P
    return P.ravel()


def central_configuration_check(m, alpha: float, side: float = 1.0):
    """Multiplier and residual max |M^-1 grad U(x) + lambda x| at the triangle.

    alpha = 0 selects the logarithmic potential.
    """
    if not 0.0 <= alpha < ALPHA_MAX:
        raise ValueError(f"alpha must lie in [0, 2), got {alpha}")
    m = _masses(m).as_array()
    x = equilateral(m, side)
    _, G, _ = _potential_derivatives(x, m, alpha)
    lam = _multiplier(x, m, alpha)
    res = G / np.repeat(m, 2) + lam * x
    return lam, float(np.max(np.abs(res)))


def meyer_schmidt_matrix(m) -> np.ndarray:
    """6x6 change of coordinates q = C (g, z, w) in body-pair ordering."""
    m1, m2, m3 = _masses(m).as_array()
    if min(m1, m2, m3) < 1e-12:
        raise ValueError("masses too small for the coordinate change")
    sb = math.sqrt(beta_of_masses((m1, m2, m3)))
    r3 = math.sqrt(3.0)
    e = 3 * r3 * math.sqrt(m2 * m3) / (sb * math.sqrt(m1))
    f = math.sqrt(m1 * m3) / (2 * sb * math.sqrt(m2))
    g = math.sqrt(m1 * m2) / (2 * sb * math.sqrt(m3))
    h = 2 * sb
    return np.array([
        [1, 0, 9 * (m2 + m3) / h, 3 * r3 * (m2 - m3) / h, 0, -e],
        [0, 1, -3 * r3 * (m2 - m3) / h, 9 * (m2 + m3) / h, e, 0],
        [1, 0, -9 * m1 / h, -3 * r3 * (m1 + 2 * m3) / h, 9 * f, 3 * r3 * f],
        [0, 1, 3 * r3 * (m1 + 2 * m3) / h, -9 * m1 / h, -3 * r3 * f, 9 * f],
        [1, 0, -9 * m1 / h, 3 * r3 * (m1 + 2 * m2) / h, -9 * g, 3 * r3 * g],
        [0, 1, -3 * r3 * (m1 + 2 * m2) / h, -9 * m1 / h, -3 * r3 * g, -9 * g],
    ], dtype=float)


def _planar_rotation_generator() -> np.ndarray:
    """Block diagonal of three copies of [[0, -1], [1, 0]]."""
    return np.kron(np.eye(3), np.array([[0.0, -1.0], [1.0, 0.0]]))


def meyer_schmidt_check(m):
    """Residuals max|C^T M C - I| and max|C^-1 K C - K|.

    K rotates every body's plane by a quarter turn; M = diag(m1, m1, m2, m2, m3, m3).
    """
    m = _masses(m)
    C = meyer_schmidt_matrix(m)
    M = np.diag(np.repeat(m.as_array(), 2))
    K = _planar_rotation_generator()
    err_mass = float(np.max(np.abs(C.T @ M @ C - np.eye(6))))
    err_rot = float(np.max(np.abs(np.linalg.solve(C, K @ C) - K)))
    return err_mass, err_rot


def reduced_hessian(m, alpha: float) -> np.ndarray:
    """Hessian of U in (z, w) coordinates at the triangle, divided by lambda."""
    m = _masses(m)
    C = meyer_schmidt_matrix(m)
    x = C @ np.array([0.0, 0.0, 1.0, 0.0, 0.0, 0.0])
    mv = m.as_array()
    _, _, H = _potential_derivatives(x, mv, alpha)
    lam = _multiplier(x, mv, alpha)
    return (C.T @ H @ C)[2:, 2:] / lam


# -- factor paths of the Kepler block -------------------------------------------


def r_alpha_path(alpha: float, horizon: float = PERIOD) -> SymplecticPath:
    """R_alpha(t) = exp(t [[0, -(2 - alpha)], [1, 0]])."""
    return SymplecticPath(np.array([[0.0, -(2.0 - alpha)], [1.0, 0.0]]), horizon)


def _n_alpha_f(alpha: float):
    d = 2.0 - alpha
    s = math.sqrt(d)
    c = 1.0 / (36.0 * math.pi ** 2)

    def f(t):
        return c * (4.0 * np.sin(s * t) / d ** 1.5 - (2.0 + alpha) * t / d)

    def df(t):
        return c * (4.0 * np.cos(s * t) / d - (2.0 + alpha) / d)

    return f, df


def n_alpha_path(alpha: float, horizon: float = PERIOD) -> CallablePath:
    """N_alpha(t) = [[1, 0], [f_alpha(t), 1]], the shear factor of the Kepler block."""
    f, df = _n_alpha_f(alpha)

    def fn(ts):
        out = np.zeros((len(ts), 2, 2))
        out[:, 0, 0] = out[:, 1, 1] = 1.0
        out[:, 1, 0] = f(ts)
        return out

    def dfn(ts):
        out = np.zeros((len(ts), 2, 2))
        out[:, 1, 0] = df(ts)
        return out

    return CallablePath(fn, dfn, horizon, 2)
