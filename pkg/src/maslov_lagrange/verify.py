"""Oracle-pair verification suites.

Each suite pits two independent routes against each other and reports
integer mismatches and the largest floating point residual.  One line per
case is written to ``emit`` in the form

    suite=<name> case=<coords> status=<ok|MISMATCH|skip> [residual=<x>] [detail]
"""
from __future__ import annotations

import cmath
import math
import sys
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .engine import DegenerateCrossing, NonConvergence, omega_index
from .iteration import (bott_long_sum, iterate_path, krein_closed_index,
                        omega_index_via_splitting, splitting_numbers, splitting_table,
                        unit_spectrum_angles)
from .linalg import mat_exp
from .model import (ModelParams, StabilityClass, central_configuration_check,
                    classify_stability, closed_morse, coincidence_curve, degenerate_curve,
                    essential_path, full_path, generators, half_turn_curve,
                    kepler_closed_solution, kepler_normal_forms, kepler_path,
                    lambda3_spectrum_and_angles, meyer_schmidt_check, omega_table_e2,
                    omega_table_e3, stability_curve, theta_alpha)

__all__ = ["VerifyOutcome", "SUITES", "run_suite", "ls_grid"]

BAND = 1e-6  # points this close to a curve or an angle breakpoint are skipped


@dataclass
class VerifyOutcome:
    suite: str
    cases: int = 0
    mismatches: list = field(default_factory=list)
    max_residual: float = 0.0
    tol: float = 1e-9
    skipped: int = 0

    @property
    def passed(self) -> bool:
        return not self.mismatches and self.max_residual <= self.tol

    def merge(self, other: "VerifyOutcome") -> None:
        self.cases += other.cases
        self.mismatches.extend((other.suite, *m) for m in other.mismatches)
        self.max_residual = max(self.max_residual, other.max_residual)
        self.skipped += other.skipped

    def summary(self) -> str:
        status = "pass" if self.passed else "FAIL"
        return (f"suite={self.suite} cases={self.cases} mismatches={len(self.mismatches)} "
                f"skipped={self.skipped} max_residual={self.max_residual:.3g} "
                f"tol={self.tol:g} status={status}")


class _Recorder:
    def __init__(self, suite: str, tol: float, emit: Callable[[str], None] | None):
        self.out = VerifyOutcome(suite, tol=tol)
        self.emit = emit

    def _line(self, case: str, status: str, extra: str = "") -> None:
        if self.emit is not None:
            self.emit(f"suite={self.out.suite} case={case} status={status}{extra}")

    def compare(self, case: str, got, want, coords) -> None:
        self.out.cases += 1
        if got == want:
            self._line(case, "ok", f" value={got}")
        else:
            self.out.mismatches.append(coords)
            self._line(case, "MISMATCH", f" got={got} want={want}")

    def residual(self, case: str, r: float, coords) -> None:
        self.out.cases += 1
        self.out.max_residual = max(self.out.max_residual, float(r))
        ok = r <= self.out.tol
        if not ok:
            self.out.mismatches.append(coords)
        self._line(case, "ok" if ok else "MISMATCH", f" residual={r:.3g}")

    def skip(self, case: str, why: str) -> None:
        self.out.skipped += 1
        self._line(case, "skip", f" reason={why}")


def _fmt(**kw) -> str:
    return ",".join(f"{k}={v:.6g}" if isinstance(v, float) else f"{k}={v}"
                    for k, v in kw.items())


def ls_grid(n_alpha: int = 10, n_beta: int = 10, alpha_max: float = 1.9) -> list[ModelParams]:
    """Points strictly inside the linearly stable region, n_beta per alpha."""
    pts = []
    for a in np.linspace(0.0, alpha_max, n_alpha):
        top = float(stability_curve(a))
        for f in np.linspace(0.02, 0.98, n_beta):
            pts.append(ModelParams(float(a), f * top))
    return pts


def _near_curve(p: ModelParams, band: float = BAND) -> bool:
    a, b = p.alpha, p.beta
    curves = (stability_curve(a), degenerate_curve(a), half_turn_curve(a), coincidence_curve(a))
    return any(abs(b - float(c)) < band for c in curves) or abs(a - 1.0) < band


# -- suites -------------------------------------------------------------------


def suite_kepler(tol: float = 1e-9, emit=None, seed: int = 0, n: int = 10,
                 n_alpha: int = 50) -> VerifyOutcome:
    """Closed-form phi_2 against the matrix exponential, and i_1(phi_2) against 0 / 2."""
    rec = _Recorder("kepler", tol, emit)
    for a in np.linspace(0.0, 1.9, n):
        L = generators(ModelParams(float(a), 0.0)).lambda2
        for tau in np.linspace(0.0, 2 * math.pi, n):
            r = np.max(np.abs(kepler_closed_solution(float(a), float(tau)) - mat_exp(L, float(tau))))
            rec.residual(_fmt(alpha=float(a), tau=float(tau)), r, (float(a), float(tau)))
    for a in np.linspace(0.0, 1.99, n_alpha):
        a = float(a)
        got = omega_index(kepler_path(a), 1.0).index
        want = closed_morse(ModelParams(a, 0.0), "E2")
        rec.compare(_fmt(alpha=a, index="i1"), got, want, (a,))
    return rec.out


def suite_bott(tol: float = 1e-9, emit=None, seed: int = 0, n_alpha: int = 4, n_beta: int = 4,
               ks=(2, 3, 4, 6, 8)) -> VerifyOutcome:
    """Direct crossing count of the k-th iterate against the sum over k-th roots of unity."""
    rec = _Recorder("bott", tol, emit)
    for p in ls_grid(n_alpha, n_beta):
        P = full_path(p)
        for k in ks:
            case = _fmt(alpha=p.alpha, beta=p.beta, k=k)
            try:
                direct = omega_index(iterate_path(P, k), 1.0).index
                summed = bott_long_sum(P, k)
            except (DegenerateCrossing, NonConvergence) as exc:
                rec.skip(case, type(exc).__name__)
                continue
            rec.compare(case, direct, summed, (p.alpha, p.beta, k))
    return rec.out


def suite_splitting(tol: float = 1e-9, emit=None, seed: int = 0, n_alpha: int = 20,
                    n_theta: int = 16) -> VerifyOutcome:
    """Limit-definition splitting numbers of phi_2 against the normal form tables,
    and the reconstruction of i_omega against the closed E2 table."""
    rec = _Recorder("splitting", tol, emit)
    for a in np.linspace(0.0, 1.95, n_alpha):
        a = float(a)
        P = kepler_path(a)
        nf = kepler_normal_forms(a)
        ta = theta_alpha(a)
        for name, w in (("1", 1.0), ("e^i.ta", cmath.exp(1j * ta)),
                        ("e^-i.ta", cmath.exp(-1j * ta)), ("-1", -1.0)):
            got = splitting_numbers(P, w).as_tuple()
            want = splitting_table(nf, w).as_tuple()
            rec.compare(_fmt(alpha=a, omega=name), got, want, (a, name))
        i1 = omega_index(P, 1.0).index
        data = {phi: splitting_table(nf, cmath.exp(1j * phi))
                for phi in unit_spectrum_angles(P.endpoint)}
        for th in np.linspace(math.pi / n_theta, math.pi, n_theta):
            th = float(th)
            got = omega_index_via_splitting(i1, data, th)
            rec.compare(_fmt(alpha=a, theta=th, route="reconstruction"), got,
                        omega_table_e2(a, th), (a, th))
    return rec.out


def suite_krein(tol: float = 1e-9, emit=None, seed: int = 0, n: int = 12) -> VerifyOutcome:
    """Krein closed form against the crossing count for i_1(phi_3) at LS points."""
    rec = _Recorder("krein", tol, emit)
    for a in np.linspace(0.0, 1.9, n):
        for b in np.linspace(0.05, 9.0, n):
            p = ModelParams(float(a), float(b))
            case = _fmt(alpha=p.alpha, beta=p.beta)
            if classify_stability(p) is not StabilityClass.LS or _near_curve(p):
                continue
            try:
                k = krein_closed_index(generators(p).b3, 2 * math.pi).index
            except DegenerateCrossing:
                rec.skip(case, "degenerate")
                continue
            rec.compare(case, omega_index(essential_path(p), 1.0).index, k, (p.alpha, p.beta))
    return rec.out


def suite_meyer_schmidt(tol: float = 1e-9, emit=None, seed: int = 0,
                        n: int = 50) -> VerifyOutcome:
    """Meyer-Schmidt coordinates and the central configuration equation on random data."""
    rec = _Recorder("meyer-schmidt", tol, emit)
    rng = np.random.default_rng(seed)
    for i in range(n):
        m = rng.uniform(0.05, 1.0, 3)
        r1, r2 = meyer_schmidt_check(m)
        rec.residual(f"masses#{i},check=mass-metric", r1, (i, "metric"))
        rec.residual(f"masses#{i},check=symplectic", r2, (i, "symplectic"))
    for i in range(n):
        m = rng.uniform(0.05, 1.0, 3)
        a = 0.0 if i % 5 == 0 else float(rng.uniform(0.0, 2.0))
        _, res = central_configuration_check(m, a)
        rec.residual(f"cc#{i},alpha={a:.6g}", res, (i, a))
    return rec.out


def _theta_breaks(p: ModelParams) -> list[float]:
    if classify_stability(p) is StabilityClass.SI:
        return []
    _, _, ang = lambda3_spectrum_and_angles(p)
    return [ang.theta1, ang.theta2, 2 * math.pi - ang.theta1, 2 * math.pi - ang.theta2]


def suite_tables(tol: float = 1e-9, emit=None, seed: int = 0, n_alpha: int = 25,
                 n_grid: int = 10, n_theta: int = 16) -> VerifyOutcome:
    """Engine i_omega against the E2 and E3 tables and the Morse tables."""
    rec = _Recorder("tables", tol, emit)
    thetas = [float(t) for t in np.linspace(math.pi / n_theta, math.pi, n_theta)]
    for a in np.linspace(0.0, 1.95, n_alpha):
        a = float(a)
        ta = theta_alpha(a)
        P = kepler_path(a)
        for th in thetas:
            case = _fmt(alpha=a, theta=th, block="E2")
            if min(abs(th - ta), abs(th - (2 * math.pi - ta))) < BAND:
                rec.skip(case, "breakpoint")
                continue
            got = omega_index(P, cmath.exp(1j * th)).index
            rec.compare(case, got, omega_table_e2(a, th), (a, th, "E2"))
    for a in np.linspace(0.0, 1.9, n_grid):
        for b in np.linspace(0.05, 9.0, n_grid):
            p = ModelParams(float(a), float(b))
            if _near_curve(p):
                rec.skip(_fmt(alpha=p.alpha, beta=p.beta), "curve band")
                continue
            P3 = essential_path(p)
            i1 = omega_index(P3, 1.0).index
            rec.compare(_fmt(alpha=p.alpha, beta=p.beta, index="i1_E3"), i1,
                        closed_morse(p, "E3"), (p.alpha, p.beta, "E3"))
            i2 = omega_index(kepler_path(p.alpha), 1.0).index
            rec.compare(_fmt(alpha=p.alpha, beta=p.beta, index="morse"), i1 + i2,
                        closed_morse(p, "full"), (p.alpha, p.beta, "full"))
            if classify_stability(p) is StabilityClass.SI:
                continue
            breaks = _theta_breaks(p)
            for th in thetas:
                case = _fmt(alpha=p.alpha, beta=p.beta, theta=th, block="E3")
                if any(abs(th - x) < BAND for x in breaks):
                    rec.skip(case, "breakpoint")
                    continue
                got = omega_index(P3, cmath.exp(1j * th)).index
                rec.compare(case, got, omega_table_e3(p, th), (p.alpha, p.beta, th))
    return rec.out


SUITES = {
    "kepler": suite_kepler,
    "bott": suite_bott,
    "splitting": suite_splitting,
    "krein": suite_krein,
    "meyer-schmidt": suite_meyer_schmidt,
    "tables": suite_tables,
}


def run_suite(name: str, seed: int = 0, tol: float = 1e-9,
              emit: Callable[[str], None] | None = None) -> VerifyOutcome:
    """Run one suite, or every suite for name "all"."""
    if emit is None:
        emit = lambda line: print(line, file=sys.stdout)  # noqa: E731
    if name == "all":
        total = VerifyOutcome("all", tol=tol)
        for key, fn in SUITES.items():
            out = fn(tol=tol, emit=emit, seed=seed)
            emit(out.summary())
            total.merge(out)
        return total
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)} or all")
    return SUITES[name](tol=tol, emit=emit, seed=seed)
