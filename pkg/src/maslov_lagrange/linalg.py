"""Small dense linear algebra for symplectic matrices.

Everything here works on matrices of size at most 8, so accuracy is
preferred over speed.  The standard complex structure is

    J_{2n} = [[0, -I_n], [I_n, 0]]

and a real matrix M is symplectic when M^T J M = J.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
import scipy.linalg

__all__ = [
    "LinAlgFailure",
    "EigenCluster",
    "Spectrum",
    "standard_j",
    "rotation",
    "n1",
    "ExponentialMap",
    "mat_exp",
    "exp_many",
    "eig",
    "is_symplectic",
    "diamond",
    "krein_signature",
    "krein_form",
]

# generalized eigenvectors of a defective matrix are ill conditioned, so the
# eigen route is only trusted when cond(V) stays below this
EXP_COND_LIMIT = 1e4
# relative tolerance for grouping eigenvalues into one cluster
CLUSTER_TOL = 1e-6


class LinAlgFailure(RuntimeError):
    """Raised when an eigenvalue iteration fails or an input is rejected."""


def _check_square(A: np.ndarray) -> np.ndarray:
    A = np.asarray(A)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise ValueError("matrix has non-finite entries")
    return A


def _check_even(A: np.ndarray) -> int:
    A = _check_square(A)
    if A.shape[0] % 2:
        raise ValueError(f"expected even size, got {A.shape[0]}")
    return A.shape[0] // 2


def standard_j(n: int) -> np.ndarray:
    """Return J_{2n} = [[0, -I], [I, 0]]."""
    if n < 1:
        raise ValueError("n must be positive")
    eye = np.eye(n)
    zero = np.zeros((n, n))
    return np.block([[zero, -eye], [eye, zero]])


def rotation(theta: float) -> np.ndarray:
    """Normal form R(theta), counter-clockwise rotation by theta."""
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, -s], [s, c]])


def n1(lam: float, a: float) -> np.ndarray:
    """Normal form N_1(lam, a) = [[lam, a], [0, lam]]."""
    if lam == 0:
        raise ValueError("lam must be nonzero")
    return np.array([[lam, a], [0.0, lam]], dtype=float)


def _eig_factors(A: np.ndarray):
    """Eigenvalues, eigenvectors and inverse, or None when ill conditioned."""
    try:
        w, V = np.linalg.eig(A)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise LinAlgFailure(f"eigenvalue iteration did not converge: {exc}")
    if np.linalg.cond(V) > EXP_COND_LIMIT:
        return None
    return w, V, np.linalg.inv(V)


class ExponentialMap:
    """t -> exp(tA) with the factorization of A computed once.

    Uses the eigen-decomposition when the eigenvector matrix is well
    conditioned, otherwise scaling-and-squaring Pade (scipy).  Real input
    gives real output.
    """

    def __init__(self, A):
        A = _check_square(A)
        self.A = A
        self.real = np.isrealobj(A)
        self._fac = _eig_factors(A)

    @property
    def diagonalizable(self) -> bool:
        return self._fac is not None

    def __call__(self, t: float) -> np.ndarray:
        if self._fac is None:
            out = scipy.linalg.expm(t * self.A)
        else:
            w, V, Vi = self._fac
            out = (V * np.exp(t * w)) @ Vi
        return out.real if self.real else out

    def lattice(self, h: float, N: int) -> np.ndarray:
        """exp(k h A) for k = 0..N, by repeated doubling of exact powers."""
        if self._fac is not None:
            return self.many(h * np.arange(N + 1))
        E = scipy.linalg.expm(h * self.A)
        P = np.eye(self.A.shape[0], dtype=E.dtype)[None]
        step = E
        while P.shape[0] < N + 1:
            P = np.concatenate([P, P @ step])
            step = step @ step
        P = P[:N + 1]
        return P.real if self.real else P

    def many(self, ts) -> np.ndarray:
        ts = np.asarray(ts, dtype=float).ravel()
        if self._fac is None:
            out = scipy.linalg.expm(ts[:, None, None] * self.A)
        else:
            w, V, Vi = self._fac
            out = np.einsum("ij,kj,jl->kil", V, np.exp(np.outer(ts, w)), Vi)
        return out.real if self.real else out


def mat_exp(A, t: float = 1.0) -> np.ndarray:
    """Matrix exponential exp(tA)."""
    return ExponentialMap(A)(t)


def exp_many(A, ts) -> np.ndarray:
    """exp(t A) for every t in ``ts``, stacked along the first axis."""
    return ExponentialMap(A).many(ts)


@dataclass(frozen=True)
class EigenCluster:
    """One eigenvalue with its algebraic multiplicity.

    ``basis`` holds an orthonormal basis of the generalized eigenspace as
    columns.
    """

    value: complex
    multiplicity: int
    basis: np.ndarray


@dataclass(frozen=True)
class Spectrum:
    clusters: tuple

    def __iter__(self):
        return iter(self.clusters)

    def __len__(self):
        return len(self.clusters)

    @property
    def values(self) -> np.ndarray:
        """All eigenvalues repeated according to multiplicity."""
        return np.concatenate(
            [np.full(c.multiplicity, c.value, dtype=complex) for c in self.clusters]
        )

    def find(self, lam: complex, tol: float = 1e-7):
        """Return the cluster closest to ``lam`` or None if none is within tol."""
        best = min(self.clusters, key=lambda c: abs(c.value - lam))
        if abs(best.value - lam) > tol * max(1.0, abs(lam)):
            return None
        return best

    def on_unit_circle(self, tol: float = 1e-9):
        return [c for c in self.clusters if abs(abs(c.value) - 1.0) <= tol]


def _cluster(values: np.ndarray, tol: float) -> list[list[int]]:
    # single linkage: an eigenvalue joins a group if it is close to any member
    groups: list[list[int]] = []
    for i in np.argsort(values.real, kind="stable"):
        hit = [g for g in groups if np.min(np.abs(values[g] - values[i])) <= tol]
        if not hit:
            groups.append([i])
            continue
        merged = [i]
        for g in hit:
            merged.extend(g)
            groups.remove(g)
        groups.append(merged)
    return groups


def _null_space(A: np.ndarray, dim: int) -> np.ndarray:
    _, _, vh = np.linalg.svd(A)
    return vh[A.shape[0] - dim:].conj().T


def eig(A, cluster_tol: float = CLUSTER_TOL) -> Spectrum:
    """Spectrum of A with multiplicities and generalized eigenspaces."""
    A = _check_square(A)
    try:
        w = np.linalg.eigvals(A)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise LinAlgFailure(f"eigenvalue iteration did not converge: {exc}")
    scale = max(1.0, np.linalg.norm(A, 2))
    groups = _cluster(w, cluster_tol * scale)
    size = A.shape[0]
    clusters = []
    for g in groups:
        lam = complex(np.mean(w[g]))
        if np.isrealobj(A) and abs(lam.imag) <= cluster_tol * scale:
            lam = complex(lam.real, 0.0)
        m = len(g)
        P = np.linalg.matrix_power(A - lam * np.eye(size), m)
        clusters.append(EigenCluster(lam, m, _null_space(P, m)))
    clusters.sort(key=lambda c: (round(c.value.real, 9), round(c.value.imag, 9)))
    return Spectrum(tuple(clusters))


def is_symplectic(M, tol: float = 1e-9) -> bool:
    """True iff max |M^T J M - J| <= tol."""
    M = np.asarray(M)
    n = _check_even(M)
    J = standard_j(n)
    return bool(np.max(np.abs(M.T @ J @ M - J)) <= tol)


def diamond(M1, M2) -> np.ndarray:
    """Diamond product of a 2m1 and a 2m2 square matrix.

    With M_k = [[A_k, B_k], [C_k, D_k]] in m_k blocks, the result is
    [[A1, 0, B1, 0], [0, A2, 0, B2], [C1, 0, D1, 0], [0, C2, 0, D2]].
    """
    M1 = np.asarray(M1)
    M2 = np.asarray(M2)
    m1 = _check_even(M1)
    m2 = _check_even(M2)
    m = m1 + m2
    out = np.zeros((2 * m, 2 * m), dtype=np.result_type(M1, M2))
    i1 = np.r_[0:m1, m:m + m1]
    i2 = np.r_[m1:m, m + m1:2 * m]
    out[np.ix_(i1, i1)] = M1
    out[np.ix_(i2, i2)] = M2
    return out


def krein_form(V: np.ndarray) -> np.ndarray:
    """Gram matrix of g(v, w) = (iJv, w) on the columns of V."""
    n = V.shape[0] // 2
    return V.conj().T @ (1j * standard_j(n)) @ V


def _signature(H: np.ndarray, tol: float) -> tuple[int, int]:
    ev = np.linalg.eigvalsh((H + H.conj().T) / 2)
    return int(np.sum(ev > tol)), int(np.sum(ev < -tol))


def krein_signature(M, lam: complex, tol: float = 1e-9) -> tuple[int, int]:
    """Signature (p, q) of the Krein form on the generalized eigenspace of lam.

    Works for symplectic matrices and, through the same eigenvectors, for
    Hamiltonian matrices JB and their purely imaginary eigenvalues.
    """
    M = np.asarray(M)
    _check_even(M)
    cl = eig(M).find(lam)
    if cl is None:
        raise LinAlgFailure(f"{lam} is not an eigenvalue")
    return _signature(krein_form(cl.basis), tol)


def block_sizes(sizes: Sequence[int]) -> list[np.ndarray]:
    """Index sets of the factors of an iterated diamond product."""
    n = sum(sizes)
    out, start = [], 0
    for s in sizes:
        out.append(np.r_[start:start + s, n + start:n + start + s])
        start += s
    return out
