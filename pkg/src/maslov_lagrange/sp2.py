"""Cylindrical coordinates on Sp(2) and the omega-strata.

Every 2x2 real symplectic matrix factors uniquely as M = P O with

    P = [[r, z], [z, (1 + z^2) / r]],   O = R(theta),

so (r, theta, z) in (0, inf) x [0, 2 pi) x R are global coordinates.  The
trace of M is (r + (1 + z^2) / r) cos(theta), which makes the determinant
function

    D_omega(M) = exp(-i phi) det(M - exp(i phi) I) = 2 cos(phi) - tr M

a one-liner in these coordinates.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable

import numpy as np

from .engine import PathBase
from .linalg import is_symplectic, rotation

__all__ = [
    "CylCoords",
    "Stratum",
    "to_cylindrical",
    "from_cylindrical",
    "d_omega",
    "stratum",
    "trace_path",
]

TWO_PI = 2 * math.pi


@dataclass(frozen=True)
class CylCoords:
    r: float
    theta: float
    z: float

    def __post_init__(self):
        if not self.r > 0:
            raise ValueError(f"r must be positive, got {self.r}")
        if not 0.0 <= self.theta < TWO_PI:
            raise ValueError(f"theta must lie in [0, 2 pi), got {self.theta}")

    def as_tuple(self) -> tuple[float, float, float]:
        return self.r, self.theta, self.z


class Stratum(str, Enum):
    PLUS = "plus"
    MINUS = "minus"
    ZERO_PLUS = "zero_plus"    # omega-singular, sin(theta) > 0
    ZERO_MINUS = "zero_minus"  # omega-singular, sin(theta) < 0
    IDENTITY = "identity"      # M = omega I, kernel of dimension 2


def _check_sp2(M) -> np.ndarray:
    M = np.asarray(M, dtype=float)
    if M.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got shape {M.shape}")
    if not is_symplectic(M, tol=1e-9 * max(1.0, np.max(np.abs(M)) ** 2)):
        raise ValueError("matrix is not symplectic (det != 1)")
    return M


def _polar(M: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # square root of a 2x2 SPD matrix S with det S = 1: (S + I) / sqrt(tr S + 2)
    S = M @ M.T
    P = (S + np.eye(2)) / math.sqrt(np.trace(S) + 2.0)
    P = (P + P.T) / 2
    # P^{-1} for det P = 1 is the adjugate
    Pinv = np.array([[P[1, 1], -P[0, 1]], [-P[1, 0], P[0, 0]]])
    return P, Pinv @ M


def to_cylindrical(M) -> CylCoords:
    """(r, theta, z) of a 2x2 real symplectic matrix."""
    M = _check_sp2(M)
    P, O = _polar(M)
    theta = math.atan2(O[1, 0], O[0, 0]) % TWO_PI
    if theta >= TWO_PI:  # -0.0 % 2 pi rounds up
        theta = 0.0
    return CylCoords(float(P[0, 0]), float(theta), float(P[0, 1]))


def from_cylindrical(c: CylCoords) -> np.ndarray:
    P = np.array([[c.r, c.z], [c.z, (1.0 + c.z ** 2) / c.r]])
    return P @ rotation(c.theta)


def d_omega(c: CylCoords, phi: float) -> float:
    """D_omega at omega = exp(i phi); zero iff omega is an eigenvalue."""
    return 2.0 * math.cos(phi) - (c.r + (1.0 + c.z ** 2) / c.r) * math.cos(c.theta)


def stratum(M, omega=1.0, tol: float = 1e-10) -> Stratum:
    """Which part of Sp(2) relative to omega the matrix lies in.

    The regular parts are plus where (1 + r^2 + z^2) cos(theta) > 2 r cos(phi),
    that is D_omega < 0, and minus where the reverse holds.  The singular part
    splits by the sign of sin(theta), apart from the point omega I.
    """
    M = _check_sp2(M)
    omega = complex(omega)
    if abs(abs(omega) - 1.0) > 1e-9:
        raise ValueError("omega must have unit modulus")
    phi = math.atan2(omega.imag, omega.real)
    c = to_cylindrical(M)
    scale = max(1.0, c.r + (1.0 + c.z ** 2) / c.r)
    d = d_omega(c, phi)
    if d < -tol * scale:
        return Stratum.PLUS
    if d > tol * scale:
        return Stratum.MINUS
    if np.max(np.abs(M - omega.real * np.eye(2))) <= math.sqrt(tol) and abs(omega.imag) <= tol:
        return Stratum.IDENTITY
    return Stratum.ZERO_PLUS if math.sin(c.theta) > 0 else Stratum.ZERO_MINUS


def trace_path(path: PathBase, ts: Iterable[float] | None = None,
               samples: int = 201) -> list[tuple[float, float, float, float]]:
    """Rows (t, r, theta, z) along a 2x2 symplectic path."""
    if path.dim != 2:
        raise ValueError("trace_path needs a path in Sp(2)")
    if ts is None:
        if samples < 2:
            raise ValueError("need at least two samples")
        ts = np.linspace(0.0, path.horizon, samples)
    ts = np.asarray(list(ts), dtype=float)
    rows = []
    for t, M in zip(ts, path.evaluate_many(ts)):
        c = to_cylindrical(M)
        rows.append((float(t), c.r, c.theta, c.z))
    return rows
