"""Splitting numbers, Bott-Long iteration and the Krein formula.

Splitting numbers measure how i_omega jumps when omega moves off an
eigenvalue of the endpoint along the unit circle:

    S+-(omega) = lim_{eps -> 0+} i_{omega exp(+-i eps)} - i_omega.

Summing the jumps from 1 to omega along the upper half circle recovers every
i_omega from i_1.  The Bott-Long formula expresses the index of an iterate as
a sum over roots of unity.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from .engine import (DegenerateCrossing, IndexReport, NonConvergence, PathBase,
                     SymplecticPath, IteratedPath, DiamondPath, omega_index)
from .linalg import eig, krein_form, n1, rotation, standard_j

__all__ = [
    "SplittingPair",
    "NormalForm",
    "splitting_numbers",
    "splitting_table",
    "unit_spectrum_angles",
    "splitting_data",
    "omega_index_via_splitting",
    "iterate_path",
    "bott_long_sum",
    "closest_odd",
    "krein_closed_index",
]

TWO_PI = 2 * math.pi
ANGLE_TOL = 1e-9


@dataclass(frozen=True)
class SplittingPair:
    plus: int
    minus: int
    omega: complex = 1.0

    def __post_init__(self):
        if self.plus < 0 or self.minus < 0:
            raise ValueError("splitting numbers are non-negative")

    def __add__(self, other: "SplittingPair") -> "SplittingPair":
        return SplittingPair(self.plus + other.plus, self.minus + other.minus, self.omega)

    def as_tuple(self) -> tuple[int, int]:
        return self.plus, self.minus


@dataclass(frozen=True)
class NormalForm:
    """2x2 normal form: rotation R(theta), shear N1(lam, a), I2 or -I2."""

    kind: str
    theta: float = 0.0
    lam: float = 1.0
    a: float = 0.0

    def __post_init__(self):
        if self.kind not in ("R", "N1", "I", "-I"):
            raise ValueError(f"unknown normal form {self.kind!r}")
        if self.kind == "R" and not 0.0 < self.theta < TWO_PI:
            raise ValueError("rotation angle must lie in (0, 2 pi)")
        if self.kind == "N1" and self.lam == 0:
            raise ValueError("N1 needs a nonzero eigenvalue")

    @classmethod
    def rotation(cls, theta: float) -> "NormalForm":
        return cls("R", theta=float(theta) % TWO_PI)

    @classmethod
    def shear(cls, lam: float, a: float) -> "NormalForm":
        return cls("N1", lam=float(lam), a=float(a))

    def matrix(self) -> np.ndarray:
        if self.kind == "R":
            return rotation(self.theta)
        if self.kind == "N1":
            return n1(self.lam, self.a)
        return np.eye(2) if self.kind == "I" else -np.eye(2)


def _angle(omega: complex) -> float:
    """Argument of a unit complex number in [0, 2 pi)."""
    return cmath.phase(omega) % TWO_PI


def _same_angle(x: float, y: float, tol: float = ANGLE_TOL) -> bool:
    d = abs(x - y) % TWO_PI
    return min(d, TWO_PI - d) <= tol


def splitting_table(nf, omega) -> SplittingPair:
    """Splitting numbers of a normal form, or of a list of them (diamond product)."""
    omega = complex(omega)
    if not isinstance(nf, NormalForm):
        total = SplittingPair(0, 0, omega)
        for f in nf:
            total = total + splitting_table(f, omega)
        return total
    phi = _angle(omega)
    if nf.kind == "R":
        if _same_angle(nf.theta, math.pi) and _same_angle(phi, math.pi):
            return SplittingPair(1, 1, omega)
        if _same_angle(phi, nf.theta):
            return SplittingPair(0, 1, omega)
        if _same_angle(phi, -nf.theta):
            return SplittingPair(1, 0, omega)
        return SplittingPair(0, 0, omega)
    if nf.kind == "I":
        return SplittingPair(1, 1, omega) if _same_angle(phi, 0.0) else SplittingPair(0, 0, omega)
    if nf.kind == "-I":
        return SplittingPair(1, 1, omega) if _same_angle(phi, math.pi) else SplittingPair(0, 0, omega)
    if nf.lam == 1.0:
        if not _same_angle(phi, 0.0):
            return SplittingPair(0, 0, omega)
        return SplittingPair(1, 1, omega) if nf.a >= 0 else SplittingPair(0, 0, omega)
    if nf.lam == -1.0:
        if not _same_angle(phi, math.pi):
            return SplittingPair(0, 0, omega)
        return SplittingPair(1, 1, omega) if nf.a <= 0 else SplittingPair(0, 0, omega)
    # real hyperbolic eigenvalue lam != +-1: nothing on the unit circle
    return SplittingPair(0, 0, omega)


def splitting_numbers(path: PathBase, omega, eps_angle: float = 1e-2,
                      max_halvings: int = 12) -> SplittingPair:
    """S+- at omega from the limit definition.

    i_w is constant while w moves along an arc free of endpoint eigenvalues,
    so the first offset is capped at a quarter of the angular gap to the
    nearest other unit eigenvalue.  Smaller offsets only lose accuracy near
    defective eigenvalues, where the smallest singular value of
    psi(t) - w shrinks like the square of the offset.  The offset is halved
    until three consecutive offsets give the same pair.
    """
    omega = complex(omega) / abs(complex(omega))
    gaps = [abs(cmath.phase(c.value / omega)) for c in eig(path.endpoint).clusters
            if abs(abs(c.value) - 1.0) <= 1e-7 and abs(c.value - omega) > 1e-6]
    if gaps:
        eps_angle = min(eps_angle, min(gaps) / 4)
    base = omega_index(path, omega).index
    history: list[tuple[int, int]] = []
    e = eps_angle
    for _ in range(max_halvings):
        plus = omega_index(path, omega * cmath.exp(1j * e)).index - base
        minus = omega_index(path, omega * cmath.exp(-1j * e)).index - base
        history.append((plus, minus))
        if len(history) >= 3 and history[-1] == history[-2] == history[-3]:
            if plus < 0 or minus < 0:
                raise NonConvergence(f"negative splitting numbers {plus}, {minus}")
            return SplittingPair(plus, minus, omega)
        e /= 2
    raise NonConvergence("splitting numbers did not stabilize")


def unit_spectrum_angles(M, tol: float = 1e-7) -> list[float]:
    """Angles in [0, pi] of the unit-circle eigenvalues of M on the upper half circle."""
    out: list[float] = []
    for c in eig(np.asarray(M)).clusters:
        if abs(abs(c.value) - 1.0) > tol:
            continue
        phi = _angle(c.value)
        if phi > math.pi + tol:
            continue
        phi = min(phi, math.pi)
        if phi < tol:
            phi = 0.0
        if not any(abs(phi - x) <= tol for x in out):
            out.append(phi)
    return sorted(out)


def splitting_data(path: PathBase, angles: Iterable[float] | None = None,
                   eps_angle: float = 1e-2) -> dict[float, SplittingPair]:
    """Limit-definition splitting pairs at each upper unit eigenvalue of the endpoint."""
    if angles is None:
        angles = unit_spectrum_angles(path.endpoint)
    return {phi: splitting_numbers(path, cmath.exp(1j * phi), eps_angle) for phi in angles}


def omega_index_via_splitting(i1: int, data: Mapping[float, SplittingPair], theta: float,
                              spectrum: Iterable[float] | None = None) -> int:
    """i_omega at omega = exp(i theta), theta in (0, pi], from i_1 and splitting pairs.

    ``data`` maps angles in [0, pi] of upper unit eigenvalues of the endpoint
    to their splitting pairs; missing angles count as regular points.  When
    ``spectrum`` (upper unit eigenvalue angles) is given, every one of them
    inside (0, theta] must have data.
    """
    if not 0.0 < theta <= math.pi + ANGLE_TOL:
        raise ValueError("theta must lie in (0, pi]")
    if spectrum is not None:
        for phi in spectrum:
            if ANGLE_TOL < phi <= theta + ANGLE_TOL and not any(
                    abs(phi - k) <= ANGLE_TOL for k in data):
                raise KeyError(f"missing splitting data at angle {phi:.12g}")
    zero = SplittingPair(0, 0)

    def at(phi):
        for k, v in data.items():
            if abs(k - phi) <= ANGLE_TOL:
                return v
        return zero

    total = i1 + at(0.0).plus
    for phi, pair in data.items():
        if ANGLE_TOL < phi < theta - ANGLE_TOL:
            total += pair.plus - pair.minus
    return total - at(theta).minus


def iterate_path(path: PathBase, k: int) -> PathBase:
    """k-th iteration of the path on [0, k T].

    Autonomous paths starting at the identity stay of the form exp(t L).
    """
    if k < 1:
        raise ValueError("k must be positive")
    if k == 1:
        return path
    if isinstance(path, DiamondPath):
        return DiamondPath(*(iterate_path(b, k) for b in path.blocks))
    if isinstance(path, SymplecticPath) and path.starts_at_identity:
        return path.with_horizon(path.horizon * k)
    return IteratedPath(path, k)


def bott_long_sum(path: PathBase, k: int, z: complex = 1.0, eps: float | None = None) -> int:
    """Sum of i_omega(path) over the k-th roots omega of z.

    For z = 1 conjugate roots are paired through i_conj(omega) = i_omega.
    """
    if k < 1:
        raise ValueError("k must be positive")
    z = complex(z)
    if abs(abs(z) - 1.0) > 1e-9:
        raise ValueError("z must have unit modulus")
    phi = _angle(z)
    if _same_angle(phi, 0.0):
        total = 0
        for j in range(k // 2 + 1):
            w = cmath.exp(2j * math.pi * j / k) if j else 1.0
            idx = omega_index(path, w, eps).index
            paired = 0 < j and 2 * j != k
            total += 2 * idx if paired else idx
        return total
    return sum(omega_index(path, cmath.exp(1j * (phi + TWO_PI * j) / k), eps).index
               for j in range(k))


def closest_odd(x: float, tol: float = 1e-12) -> int:
    """x when x is an integer, otherwise the odd integer closest to x."""
    r = round(x)
    if abs(x - r) <= tol:
        return int(r)
    f = math.floor(x)
    return int(f if f % 2 else f + 1)


def krein_closed_index(B, T: float, tol: float = 1e-9) -> IndexReport:
    """i_1 of t -> exp(t J B) on [0, T] from the Krein-positive imaginary eigenvalues.

    Raises DegenerateCrossing when the system is degenerate at T or a Krein
    form on the imaginary axis is indefinite.
    """
    B = np.asarray(B, dtype=float)
    if B.ndim != 2 or B.shape[0] != B.shape[1] or B.shape[0] % 2:
        raise ValueError("B must be square of even size")
    if np.max(np.abs(B - B.T), initial=0.0) > 1e-12 * max(1.0, np.max(np.abs(B))):
        raise ValueError("B must be symmetric")
    if not T > 0:
        raise ValueError("T must be positive")
    L = standard_j(B.shape[0] // 2) @ B
    total = 0
    for c in eig(L).clusters:
        if abs(c.value.real) > tol:
            continue
        theta = c.value.imag
        if abs(theta) <= tol:
            raise DegenerateCrossing("zero eigenvalue: degenerate at every T")
        g = np.linalg.eigvalsh(krein_form(c.basis))
        if np.all(g < -tol):
            continue
        if not np.all(g > tol):
            raise DegenerateCrossing(f"indefinite Krein form at {c.value:.6g}")
        x = T * theta / math.pi
        if abs(x / 2 - round(x / 2)) * 2 <= 1e-9 * max(1.0, abs(x)):
            raise DegenerateCrossing(f"degenerate at T: theta T = {T * theta:.12g}")
        total -= c.multiplicity * closest_odd(x)
    return IndexReport(total, 0, (), 0.0, "krein")
