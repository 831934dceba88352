"""Maslov-type indices of symplectic paths by counting crossings.

A path psi: [0, T] -> Sp(2n) with psi' = J B(t) psi crosses the eigenvalue
omega at t when ker(psi(t) - omega I) is nontrivial.  On that kernel the
crossing form is v -> <B v, v> (Hermitian for complex omega), and the CLM
count adds

    m+ at t = 0,  sign at interior crossings,  -m- at t = T.

For omega = 1 the index i_1 is the CLM count minus n, for omega != 1 it is
the CLM count itself.

Paths that live in the singular cycle (the Kepler block always has 1 in its
spectrum), or whose crossings are not regular, are pushed off by the right
factor exp(-eps J).  The two short segments s -> psi(0) exp(-sJ) and
s -> psi(T) exp(-sJ) only have negative definite crossing forms.  So the
homotopy over the rectangle [0, T] x [0, eps] gives exactly

    iota(psi) = iota(psi exp(-eps J)) + iota(seg_0) - iota(seg_T)

for every eps at which the three counts are regular, not just in the limit.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field

import numpy as np
from scipy import optimize

from .linalg import ExponentialMap, block_sizes, diamond, mat_exp, standard_j

__all__ = [
    "DegenerateCrossing",
    "NonConvergence",
    "Crossing",
    "IndexReport",
    "PathBase",
    "SymplecticPath",
    "CallablePath",
    "IteratedPath",
    "DiamondPath",
    "fundamental_solution",
    "crossing_instants",
    "crossing_form",
    "clm_index",
    "omega_index",
    "nullity",
    "EPS_SCHEDULE",
]

SAMPLES_PER_PERIOD = 4096
KERNEL_TOL = 1e-11      # singular values below this (relative) span the kernel
DIP_RATIO = 1e-3        # a root's smallest singular value must dip this far below its neighbours
FORM_TOL = 1e-8         # crossing-form eigenvalues below this (relative) are zero
ENDPOINT_TOL = 1e-9     # roots this close to 0 or T are endpoint crossings
# beyond this endpoint size det(psi - omega) is dominated by rounding
GROWTH_LIMIT = 1e12
DIP_SAMPLES = 33         # samples per subdivision of a dip
DIP_DEPTH = 4
EPS_SCHEDULE = tuple(1e-2 * 0.5 ** k for k in range(14))  # 1e-2 down to ~1.2e-6


class DegenerateCrossing(ArithmeticError):
    """A crossing is not regular, or the path lies in the singular cycle."""


class NonConvergence(RuntimeError):
    """The eps schedule never produced three agreeing counts."""


@dataclass(frozen=True)
class Crossing:
    instant: float
    omega: complex
    kernel_dim: int
    signature: tuple[int, int]
    position: str  # start, interior or end

    @property
    def contribution(self) -> int:
        p, q = self.signature
        if self.position == "start":
            return p
        if self.position == "end":
            return -q
        return p - q


@dataclass(frozen=True)
class IndexReport:
    index: int
    nullity: int
    crossings: tuple = field(default_factory=tuple)
    eps: float = 0.0
    method: str = "analytic-crossing"

    def __int__(self):
        return self.index


# -- paths ------------------------------------------------------------------


class PathBase:
    """Continuously evaluable symplectic path on [0, horizon]."""

    horizon: float
    dim: int

    @property
    def n(self) -> int:
        return self.dim // 2

    def evaluate_many(self, ts) -> np.ndarray:
        raise NotImplementedError

    def evaluate(self, t: float) -> np.ndarray:
        return self.evaluate_many(np.array([t]))[0]

    def evaluate_lattice(self, N: int) -> np.ndarray:
        """psi(k T / N) for k = 0..N."""
        return self.evaluate_many(np.linspace(0.0, self.horizon, N + 1))

    def hamiltonian(self, t: float) -> np.ndarray:
        """Symmetric B(t) with psi'(t) = J B(t) psi(t)."""
        raise NotImplementedError

    @property
    def endpoint(self) -> np.ndarray:
        return self.evaluate(self.horizon)

    def perturbed(self, eps: float) -> "PathBase":
        """The path t -> psi(t) exp(-eps J)."""
        if eps == 0:
            return self
        return _RightMultiplied(self, mat_exp(standard_j(self.n), -eps))


def _sym(B: np.ndarray) -> np.ndarray:
    return (B + B.T.conj()) / 2


class SymplecticPath(PathBase):
    """t -> exp(t L) R on [0, T] for a Hamiltonian generator L = J B.

    ``right`` defaults to the identity, which gives the fundamental solution.
    """

    def __init__(self, generator, horizon: float, right=None):
        L = np.asarray(generator, dtype=float)
        if L.ndim != 2 or L.shape[0] != L.shape[1] or L.shape[0] % 2:
            raise ValueError("generator must be square of even size")
        if not horizon > 0:
            raise ValueError("horizon must be positive")
        self.generator = L
        self.horizon = float(horizon)
        self.dim = L.shape[0]
        self.right = np.eye(self.dim) if right is None else np.asarray(right, dtype=float)
        self._exp = ExponentialMap(L)
        self._B = _sym(-standard_j(self.n) @ L)

    def evaluate_many(self, ts) -> np.ndarray:
        return self._exp.many(ts) @ self.right

    def evaluate(self, t: float) -> np.ndarray:
        return self._exp(t) @ self.right

    def evaluate_lattice(self, N: int) -> np.ndarray:
        return self._exp.lattice(self.horizon / N, N) @ self.right

    def hamiltonian(self, t: float = 0.0) -> np.ndarray:
        return self._B

    @property
    def starts_at_identity(self) -> bool:
        return bool(np.array_equal(self.right, np.eye(self.dim)))

    def perturbed(self, eps: float) -> "SymplecticPath":
        if eps == 0:
            return self
        R = self.right @ mat_exp(standard_j(self.n), -eps)
        return SymplecticPath(self.generator, self.horizon, R)

    def with_horizon(self, horizon: float) -> "SymplecticPath":
        return SymplecticPath(self.generator, horizon, self.right)

    def __repr__(self):
        return f"SymplecticPath(dim={self.dim}, horizon={self.horizon:g})"


class CallablePath(PathBase):
    """Path given by vectorized callables for psi(t) and psi'(t).

    ``fn(ts)`` and ``dfn(ts)`` take a 1-d array and return stacked matrices.
    """

    def __init__(self, fn, dfn, horizon: float, dim: int):
        self.fn = fn
        self.dfn = dfn
        self.horizon = float(horizon)
        self.dim = int(dim)

    def evaluate_many(self, ts) -> np.ndarray:
        return np.asarray(self.fn(np.atleast_1d(np.asarray(ts, dtype=float))))

    def hamiltonian(self, t: float) -> np.ndarray:
        P = self.evaluate(t)
        dP = np.asarray(self.dfn(np.array([float(t)])))[0]
        return _sym(-standard_j(self.n) @ dP @ np.linalg.inv(P))


class _RightMultiplied(PathBase):
    def __init__(self, base: PathBase, R: np.ndarray):
        self.base = base
        self.R = R
        self.horizon = base.horizon
        self.dim = base.dim

    def evaluate_many(self, ts) -> np.ndarray:
        return self.base.evaluate_many(ts) @ self.R

    def evaluate_lattice(self, N: int) -> np.ndarray:
        return self.base.evaluate_lattice(N) @ self.R

    def hamiltonian(self, t: float) -> np.ndarray:
        return self.base.hamiltonian(t)


class IteratedPath(PathBase):
    """k-th iteration gamma^k(t) = gamma(t - jT) gamma(T)^j, jT <= t <= (j+1)T."""

    def __init__(self, base: PathBase, k: int):
        if k < 1:
            raise ValueError("k must be positive")
        self.base = base
        self.k = int(k)
        self.horizon = base.horizon * k
        self.dim = base.dim
        M = base.endpoint
        self._powers = [np.linalg.matrix_power(M, j) for j in range(k)]

    def _split(self, ts):
        T = self.base.horizon
        j = np.clip(np.floor(np.asarray(ts) / T).astype(int), 0, self.k - 1)
        return j, np.asarray(ts) - j * T

    def evaluate_many(self, ts) -> np.ndarray:
        ts = np.atleast_1d(np.asarray(ts, dtype=float))
        j, s = self._split(ts)
        out = self.base.evaluate_many(s)
        for jj in np.unique(j):
            sel = j == jj
            out[sel] = out[sel] @ self._powers[jj]
        return out

    def hamiltonian(self, t: float) -> np.ndarray:
        j, s = self._split(np.array([t]))
        return self.base.hamiltonian(float(s[0]))


class DiamondPath(PathBase):
    """Diamond product of paths on a common interval.

    Indices of a diamond product are the sums of the block indices, so
    clm_index works block by block.  This keeps crossings of different
    blocks that fall close together from cancelling in one determinant.
    """

    def __init__(self, *blocks: PathBase):
        if not blocks:
            raise ValueError("need at least one block")
        T = blocks[0].horizon
        if any(abs(b.horizon - T) > 1e-12 * max(1.0, T) for b in blocks):
            raise ValueError("blocks must share the same horizon")
        self.blocks = tuple(blocks)
        self.horizon = T
        self.dim = sum(b.dim for b in blocks)
        self._index = block_sizes([b.n for b in blocks])

    def _assemble(self, parts) -> np.ndarray:
        out = np.zeros((parts[0].shape[0], self.dim, self.dim), dtype=np.result_type(*parts))
        for idx, P in zip(self._index, parts):
            out[:, idx[:, None], idx[None, :]] = P
        return out

    def evaluate_many(self, ts) -> np.ndarray:
        ts = np.atleast_1d(np.asarray(ts, dtype=float))
        return self._assemble([b.evaluate_many(ts) for b in self.blocks])

    def evaluate_lattice(self, N: int) -> np.ndarray:
        return self._assemble([b.evaluate_lattice(N) for b in self.blocks])

    def hamiltonian(self, t: float) -> np.ndarray:
        out = self.blocks[0].hamiltonian(t)
        for b in self.blocks[1:]:
            out = diamond(out, b.hamiltonian(t))
        return out

    def perturbed(self, eps: float) -> "DiamondPath":
        if eps == 0:
            return self
        return DiamondPath(*(b.perturbed(eps) for b in self.blocks))

    def __repr__(self):
        return f"DiamondPath({', '.join(map(repr, self.blocks))})"


def fundamental_solution(B, T: float) -> SymplecticPath:
    """Path t -> exp(t J B) on [0, T] for symmetric B."""
    B = np.asarray(B, dtype=float)
    if B.ndim != 2 or B.shape[0] != B.shape[1] or B.shape[0] % 2:
        raise ValueError("B must be square of even size")
    if np.max(np.abs(B - B.T), initial=0.0) > 1e-12 * max(1.0, np.max(np.abs(B))):
        raise ValueError("B must be symmetric")
    return SymplecticPath(standard_j(B.shape[0] // 2) @ B, T)


def _rotation_segment(M: np.ndarray, eps: float) -> SymplecticPath:
    """s -> M exp(-sJ) on [0, eps], written as exp(s L) M."""
    J = standard_j(M.shape[0] // 2)
    return SymplecticPath(-M @ J @ np.linalg.inv(M), eps, M)


# -- crossing detection -------------------------------------------------------


def _is_one(omega: complex) -> bool:
    return abs(omega - 1.0) < 1e-12


def _normalize(omega) -> complex:
    omega = complex(omega)
    r = abs(omega)
    if not abs(r - 1.0) < 1e-9:
        raise ValueError("omega must have unit modulus")
    return omega / r


def _dvals(mats: np.ndarray, omega: complex, n: int) -> np.ndarray:
    """(-1)^(n-1) omega^(-n) det(M - omega I), real for real symplectic M."""
    d = np.linalg.det(mats - omega * np.eye(mats.shape[-1]))
    return ((-1) ** (n - 1) * omega ** (-n) * d).real


def _samples(path: PathBase, per_period: int):
    """Uniform lattice plus geometric clusters at both endpoints."""
    T = path.horizon
    N = max(512, int(math.ceil(per_period * T / (2 * math.pi))))
    h = T / N
    geo = h * np.logspace(-9, 0, 40)[1:-1]
    extra = np.concatenate([geo, T - geo])
    ts = np.concatenate([np.linspace(0.0, T, N + 1), extra])
    mats = np.concatenate([path.evaluate_lattice(N), path.evaluate_many(extra)])
    order = np.argsort(ts, kind="stable")
    return ts[order], mats[order]


def _kernel(M: np.ndarray, omega: complex, min_dim: int = 0) -> np.ndarray:
    A = M - omega * np.eye(M.shape[0])
    _, s, vh = np.linalg.svd(A)
    scale = max(1.0, s[0])
    k = max(int(np.sum(s <= KERNEL_TOL * scale)), min_dim)
    return vh[len(s) - k:].conj().T


def _form_signature(B: np.ndarray, K: np.ndarray) -> tuple[int, int, bool]:
    """Signature of v -> <Bv, v> on span(K) and whether it is degenerate."""
    H = _sym(K.conj().T @ B @ K)
    ev = np.linalg.eigvalsh(H)
    scale = np.linalg.norm(B, 2)
    if scale == 0:
        return 0, 0, True
    # relative to B on the kernel: B itself can be huge when psi is
    # ill conditioned, while the form stays of order one
    tol = max(FORM_TOL * np.linalg.norm(B @ K, 2), 1e3 * np.finfo(float).eps * scale)
    p, q = int(np.sum(ev > tol)), int(np.sum(ev < -tol))
    return p, q, p + q < K.shape[1]


def _find_roots(path: PathBase, omega: complex, per_period: int):
    """Interior zeros of the real determinant function.

    Returns a list of (t, tangential) pairs.  Sign changes are refined with
    brentq.  Even-order zeros are searched at local minima of |D|.
    """
    T = path.horizon
    n = path.n
    ts, mats = _samples(path, per_period)
    D = _dvals(mats, omega, n)

    def f(t):
        return _dvals(path.evaluate(t)[None], omega, n)[0]

    def bracket(a, b):
        # a fresh evaluation near a zero can disagree in sign with the sample;
        # keep the smaller end and let the kernel test decide
        fa, fb = f(a), f(b)
        if fa * fb >= 0:
            return a if abs(fa) <= abs(fb) else b
        return optimize.brentq(f, a, b, xtol=1e-15, maxiter=200)

    roots: list[tuple[float, bool]] = []
    sgn = np.sign(D)
    for i in np.nonzero(sgn == 0)[0]:
        roots.append((ts[i], False))
    for i in np.nonzero(sgn[:-1] * sgn[1:] < 0)[0]:
        t = bracket(ts[i], ts[i + 1])
        if t is not None:
            roots.append((t, False))

    def dips(tv, Dv):
        # interior local minima of |D| between samples of equal sign
        sv, mv = np.sign(Dv), np.abs(Dv)
        return np.nonzero((mv[1:-1] < mv[:-2]) & (mv[1:-1] <= mv[2:])
                          & (sv[:-2] == sv[1:-1]) & (sv[1:-1] == sv[2:]))[0] + 1

    def leaf(t0, t2, s):
        res = optimize.minimize_scalar(lambda t: s * f(t), bounds=(t0, t2),
                                       method="bounded", options={"xatol": 1e-14 * max(1.0, T)})
        tm = float(res.x)
        if s * f(tm) < 0:
            out = []
            for lo, hi in ((t0, tm), (tm, t2)):
                t = bracket(lo, hi)
                if t is not None:
                    out.append((t, False))
            return out
        # touching zero: locate the smallest singular value precisely
        w = 1e-4 * max(1.0, T)
        lo, hi = max(t0, tm - w), min(t2, tm + w)
        tt = _golden_min(lambda t: _smallest_sv(path, omega, t)[0], lo, hi,
                         1e-15 * max(1.0, T))
        return [(tt, True)] if _kernel(path.evaluate(tt), omega).shape[1] else []

    def dip_roots(tv, Dv, depth):
        # Several zeros can share one sample cell (for instance one from each
        # factor of a diamond product), so a dip is subdivided until it is
        # either a smooth positive minimum or resolved into sign changes.
        if depth >= DIP_DEPTH or (depth and _smooth_min(tv, Dv)):
            return leaf(tv[0], tv[2], np.sign(Dv[1]))
        sub = np.linspace(tv[0], tv[2], DIP_SAMPLES)
        Ds = _dvals(path.evaluate_many(sub), omega, n)
        ss = np.sign(Ds)
        out = [(sub[i], False) for i in np.nonzero(ss == 0)[0]]
        for i in np.nonzero(ss[:-1] * ss[1:] < 0)[0]:
            t = bracket(sub[i], sub[i + 1])
            if t is not None:
                out.append((t, False))
        for j in dips(sub, Ds):
            out.extend(dip_roots(sub[j - 1:j + 2], Ds[j - 1:j + 2], depth + 1))
        return out

    for i in dips(ts, D):
        roots.extend(dip_roots(ts[i - 1:i + 2], D[i - 1:i + 2], 0))
    roots = [(t, tg) for t, tg in roots if _is_root(path, omega, t)]
    roots.sort()
    return roots


def _smooth_min(tv: np.ndarray, Dv: np.ndarray) -> bool:
    """A parabola through three samples has a clearly nonzero minimum."""
    y0, y1, y2 = np.abs(Dv)
    c = y0 - 2 * y1 + y2
    if c <= 0:
        return False
    vertex = y1 - (y2 - y0) ** 2 / (8 * c)
    return vertex > 0.5 * y1


def _golden_min(f, a: float, b: float, xtol: float) -> float:
    """Golden-section minimum of a unimodal f on [a, b].

    The smallest singular value has a corner at a crossing, where the
    parabolic steps of Brent's method stall at sqrt(eps) relative accuracy.
    """
    g = (math.sqrt(5.0) - 1.0) / 2.0
    c, d = b - g * (b - a), a + g * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(200):
        if b - a <= xtol:
            break
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - g * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + g * (b - a)
            fd = f(d)
    return c if fc <= fd else d


def _smallest_sv(path: PathBase, omega: complex, t: float) -> tuple[float, float]:
    s = np.linalg.svd(path.evaluate(t) - omega * np.eye(path.dim), compute_uv=False)
    return s[-1], s[0]


def _is_root(path: PathBase, omega: complex, t: float) -> bool:
    """psi(t) - omega is singular at t and not merely ill conditioned nearby.

    A near-defective endpoint spectrum (the Kepler block carries a Jordan
    block at 1) keeps the smallest singular value small along the whole
    path when omega is close to 1; a true crossing is a sharp dip.
    """
    smin, smax = _smallest_sv(path, omega, t)
    if smin > KERNEL_TOL * max(1.0, smax):
        return False
    T = path.horizon
    d = 1e-5 * max(1.0, T)
    near = [_smallest_sv(path, omega, u)[0] for u in (t - d, t + d) if 0.0 <= u <= T]
    return not near or smin <= DIP_RATIO * min(near)


def _in_singular_cycle(path: PathBase, omega: complex) -> bool:
    T = path.horizon
    for frac in (0.2718281828, 0.5772156649, 0.8414709848):
        if _kernel(path.evaluate(frac * T), omega).shape[1]:
            return True
    return False


def _regular_count(path: PathBase, omega: complex, allow_tangential: bool,
                   per_period: int = SAMPLES_PER_PERIOD):
    """CLM count of a path whose crossings are all regular."""
    T = path.horizon
    crossings: list[Crossing] = []
    if _in_singular_cycle(path, omega):
        raise DegenerateCrossing("path stays in the singular cycle")

    def make(t, position, min_dim=0):
        K = _kernel(path.evaluate(t), omega, min_dim)
        if K.shape[1] == 0:
            return None
        p, q, degenerate = _form_signature(path.hamiltonian(t), K)
        if degenerate:
            raise DegenerateCrossing(f"degenerate crossing form at t={t:.12g}")
        return Crossing(float(t), omega, K.shape[1], (p, q), position)

    start = make(0.0, "start")
    end = make(T, "end")
    tol = ENDPOINT_TOL * max(1.0, T)
    roots = _find_roots(path, omega, per_period)
    near_end = [t for t, _ in roots if t > T - tol]
    if end is None and near_end:
        end = make(near_end[-1], "end", 1)
        end = Crossing(T, omega, end.kernel_dim, end.signature, "end")
    interior = []
    last = -np.inf
    for t, tangential in roots:
        if t < tol or t > T - tol or t - last < tol:
            continue
        if tangential and not allow_tangential:
            # a conjugate pair passing omega together is regular: the kernel
            # is at least 2-dimensional and the form is definite on it
            c = make(t, "interior")
            if c is None or c.kernel_dim < 2:
                raise DegenerateCrossing(f"tangential crossing at t={t:.12g}")
        else:
            c = make(t, "interior", 1)
        interior.append(c)
        last = t
    crossings = [c for c in [start, *interior, end] if c is not None]
    return sum(c.contribution for c in crossings), crossings


def _perturbed_count(path: PathBase, omega: complex, eps: float):
    main, crossings = _regular_count(path.perturbed(eps), omega, True)
    seg0, _ = _regular_count(_rotation_segment(path.evaluate(0.0), eps), omega, True)
    segT, _ = _regular_count(_rotation_segment(path.endpoint, eps), omega, True)
    return main + seg0 - segT, crossings


# -- public operations --------------------------------------------------------


def crossing_instants(path: PathBase, omega, eps: float = 0.0, tol: float = 1e-9) -> list[float]:
    """Sorted instants where det(psi(t) exp(-eps J) - omega I) vanishes.

    Endpoints are included when degenerate.  Instants closer than ``tol`` to
    an endpoint are reported as that endpoint.
    """
    if eps < 0 or tol <= 0:
        raise ValueError("need eps >= 0 and tol > 0")
    omega = _normalize(omega)
    p = path.perturbed(eps)
    T = p.horizon
    out = []
    if _kernel(p.evaluate(0.0), omega).shape[1]:
        out.append(0.0)
    end = bool(_kernel(p.endpoint, omega).shape[1])
    for t, _ in _find_roots(p, omega, SAMPLES_PER_PERIOD):
        if t > T - tol:
            end = True
        elif t >= tol and (not out or t - out[-1] >= tol):
            out.append(float(t))
    if end:
        out.append(T)
    return out


def crossing_form(path: PathBase, omega, t: float) -> tuple[int, int]:
    """Signature (m+, m-) of the crossing form at a crossing instant t."""
    omega = _normalize(omega)
    K = _kernel(path.evaluate(t), omega)
    if K.shape[1] == 0:
        raise ValueError(f"t={t} is not a crossing instant for omega={omega}")
    p, q, degenerate = _form_signature(path.hamiltonian(t), K)
    if degenerate:
        raise DegenerateCrossing(f"degenerate crossing form at t={t}")
    return p, q


def nullity(path: PathBase, omega, tol: float = KERNEL_TOL) -> int:
    """dim_C ker(psi(T) - omega I), singular values below tol (relative)."""
    omega = _normalize(omega)
    M = path.endpoint
    s = np.linalg.svd(M - omega * np.eye(M.shape[0]), compute_uv=False)
    return int(np.sum(s <= tol * max(1.0, s[0])))


def clm_index(path: PathBase, omega, eps: float | None = None) -> IndexReport:
    """CLM index of the pair (Gr(omega I), Gr(psi)) on [0, T].

    With ``eps=None`` the unperturbed crossings are used when they are all
    regular; otherwise the eps schedule runs until three consecutive values
    agree.  A fixed ``eps`` forces a single evaluation at that value.
    """
    omega = _normalize(omega)
    end = path.endpoint
    if not np.all(np.isfinite(end)) or np.max(np.abs(end)) > GROWTH_LIMIT:
        raise NonConvergence("path grows beyond what double precision resolves")
    if isinstance(path, DiamondPath):
        reps = [clm_index(b, omega, eps) for b in path.blocks]
        crossings = tuple(sorted((c for r in reps for c in r.crossings),
                                 key=lambda c: c.instant))
        return IndexReport(sum(r.index for r in reps), sum(r.nullity for r in reps),
                           crossings, max(r.eps for r in reps), "blockwise")
    try:
        if isinstance(path, SymplecticPath):
            return _clm_cached(path.generator.tobytes(), path.right.tobytes(), path.dim,
                               path.horizon, omega, eps)
        return _clm_index(path, omega, eps)
    except np.linalg.LinAlgError as exc:
        raise NonConvergence(f"singular value iteration failed: {exc}") from exc


@functools.lru_cache(maxsize=4096)
def _clm_cached(gen: bytes, right: bytes, dim: int, horizon: float, omega: complex,
                eps: float | None) -> IndexReport:
    # grids revisit the same alpha-only Kepler block for every beta
    L = np.frombuffer(gen).reshape(dim, dim)
    R = np.frombuffer(right).reshape(dim, dim)
    return _clm_index(SymplecticPath(L, horizon, R), omega, eps)


def _clm_index(path: PathBase, omega: complex, eps: float | None) -> IndexReport:
    nu = nullity(path, omega)
    if eps is not None:
        if eps == 0:
            idx, cr = _regular_count(path, omega, False)
            return IndexReport(idx, nu, tuple(cr), 0.0, "analytic-crossing")
        idx, cr = _perturbed_count(path, omega, eps)
        return IndexReport(idx, nu, tuple(cr), eps, "perturbed")
    try:
        idx, cr = _regular_count(path, omega, False)
        return IndexReport(idx, nu, tuple(cr), 0.0, "analytic-crossing")
    except DegenerateCrossing:
        pass
    streak: list[tuple[float, int, list]] = []
    for e in EPS_SCHEDULE:
        try:
            idx, cr = _perturbed_count(path, omega, e)
        except DegenerateCrossing:
            streak = []
            continue
        if streak and streak[-1][1] != idx:
            streak = []
        streak.append((e, idx, cr))
        if len(streak) == 3:
            e0, idx0, cr0 = streak[0]
            return IndexReport(idx0, nu, tuple(cr0), e0, "perturbed")
    raise NonConvergence(f"eps schedule did not stabilize for omega={omega}")


def omega_index(path: PathBase, omega, eps: float | None = None) -> IndexReport:
    """i_omega of the path: CLM count minus n for omega = 1, CLM count otherwise."""
    omega = _normalize(omega)
    rep = clm_index(path, omega, eps)
    idx = rep.index - path.n if _is_one(omega) else rep.index
    return IndexReport(idx, rep.nullity, rep.crossings, rep.eps, rep.method)
