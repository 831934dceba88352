"""Command line driver.

Exit status: 0 ok, 1 verification mismatch, 2 usage or input error.
Every common flag can also be set through MASLOV_<FLAG>, for example
MASLOV_JOBS=4 or MASLOV_TOL=1e-10; explicit flags win.
"""
from __future__ import annotations

import argparse
import cmath
import os
import sys

from . import grid as gridmod
from .engine import DegenerateCrossing, NonConvergence, omega_index
from .iteration import bott_long_sum, iterate_path
from .model import (ModelParams, closed_morse, essential_path, full_path, iterate_closed_e2,
                    kepler_path, n_alpha_path, r_alpha_path)
from .render import render_svg
from .sp2 import trace_path
from .verify import SUITES, run_suite

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _env(name: str, default):
    return os.environ.get(f"MASLOV_{name}", default)


def _float_or_none(s):
    return None if s in (None, "") else float(s)


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", default=_env("OUT", None), help="output file (default: stdout)")
    p.add_argument("--tol", type=float, default=float(_env("TOL", 1e-9)),
                   help="residual tolerance (default 1e-9)")
    p.add_argument("--eps", type=float, default=_float_or_none(_env("EPS", None)),
                   help="fixed perturbation eps for the index engine (default: automatic)")
    p.add_argument("--jobs", type=int, default=int(_env("JOBS", gridmod.default_jobs())),
                   help="worker processes (default: logical cores)")


def _grid_args(p: argparse.ArgumentParser, alpha=(0.0, 1.9, 21), beta=(0.1, 9.0, 21)) -> None:
    p.add_argument("--alpha-min", type=float, default=alpha[0])
    p.add_argument("--alpha-max", type=float, default=alpha[1])
    p.add_argument("--alpha-steps", type=int, default=alpha[2])
    p.add_argument("--beta-min", type=float, default=beta[0])
    p.add_argument("--beta-max", type=float, default=beta[1])
    p.add_argument("--beta-steps", type=int, default=beta[2])


def _spec(ns) -> gridmod.GridSpec:
    return gridmod.GridSpec(ns.alpha_min, ns.alpha_max, ns.alpha_steps,
                            ns.beta_min, ns.beta_max, ns.beta_steps)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="maslov-lagrange",
        description="Maslov-type indices of symplectic paths and the Lagrangian "
                    "circular orbit of the three-body problem.")
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("grid", help="evaluate a parameter grid into CSV")
    g.add_argument("kind", choices=gridmod.KINDS)
    _grid_args(g)
    g.add_argument("--theta", type=float, help="angle in (0, pi] for kind=omega")
    g.add_argument("--k", type=int, help="iteration number for kind=iterate")
    g.add_argument("--method", choices=("direct", "bott"), default="direct",
                   help="iterate route: crossing count of the iterate or root-of-unity sum")
    g.add_argument("--kmax", type=int, default=8, help="largest k for kind=jump-curves")
    _common(g)

    v = sub.add_parser("verify", help="run an oracle-pair suite")
    v.add_argument("suite", choices=(*SUITES, "all"))
    v.add_argument("--seed", type=int, default=int(_env("SEED", 0)))
    _common(v)

    r = sub.add_parser("render", help="render a grid CSV to SVG")
    r.add_argument("csv")
    r.add_argument("--column", help="value column to color by")
    r.add_argument("--palette", help="ordered value=color pairs, e.g. LS=#2b83ba,SI=#d7191c")
    _common(r)

    k = sub.add_parser("kepler-index", help="i_1 of the Kepler block phi_2")
    k.add_argument("--alpha", type=float, required=True)
    _common(k)

    o = sub.add_parser("omega-index", help="i_omega of phi_2, phi_3 or both")
    o.add_argument("--alpha", type=float, required=True)
    o.add_argument("--beta", type=float, default=0.0)
    o.add_argument("--theta", type=float, default=0.0, help="omega = exp(i theta)")
    o.add_argument("--block", choices=("E2", "E3", "full"), default="full")
    _common(o)

    it = sub.add_parser("iterate", help="i_1 of the k-th iterate, directly and by Bott-Long")
    it.add_argument("--alpha", type=float, required=True)
    it.add_argument("--beta", type=float, default=0.0)
    it.add_argument("--k", type=int, required=True)
    it.add_argument("--block", choices=("E2", "E3", "full"), default="full")
    _common(it)

    j = sub.add_parser("jump-curves", help="jump curves f_{k,l} on an alpha grid (CSV)")
    _grid_args(j, beta=(0.0, 9.0, 2))
    j.add_argument("--kmax", type=int, default=8)
    _common(j)

    s = sub.add_parser("sp2-trace", help="cylindrical coordinates (t, r, theta, z) along a path")
    s.add_argument("--path", choices=("N", "R"), default="N",
                   help="N: the shear factor N_alpha, R: the rotation factor R_alpha")
    s.add_argument("--alpha", type=float, required=True)
    s.add_argument("--samples", type=int, default=201)
    _common(s)
    return ap


def _write_text(text: str, out) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _path_for(block: str, alpha: float, beta: float):
    if block == "E2":
        return kepler_path(alpha)
    p = ModelParams(alpha, beta)
    return essential_path(p) if block == "E3" else full_path(p)


def _parse_palette(s: str | None) -> dict[str, str] | None:
    if not s:
        return None
    out = {}
    for item in s.split(","):
        if "=" not in item:
            raise UsageError(f"palette entry {item!r} is not value=color")
        key, color = item.split("=", 1)
        out[key.strip()] = color.strip()
    return out


def _cmd_grid(ns) -> int:
    header, rows = gridmod.grid_rows(ns.kind, _spec(ns), theta=ns.theta, k=ns.k,
                                     method=ns.method, kmax=ns.kmax, eps=ns.eps,
                                     jobs=max(1, ns.jobs))
    _write_text(gridmod.to_csv_text(header, rows), ns.out)
    return EXIT_OK


def _cmd_jump(ns) -> int:
    ns.kind, ns.theta, ns.k, ns.method = "jump-curves", None, None, "direct"
    return _cmd_grid(ns)


def _cmd_verify(ns) -> int:
    lines = []
    emit = lines.append if ns.out else print
    out = run_suite(ns.suite, seed=ns.seed, tol=ns.tol, emit=emit)
    emit(out.summary())
    if ns.out:
        _write_text("\n".join(lines) + "\n", ns.out)
        print(out.summary())
    return EXIT_OK if out.passed else EXIT_MISMATCH


def _cmd_render(ns) -> int:
    out = ns.out or os.path.splitext(ns.csv)[0] + ".svg"
    n = render_svg(ns.csv, out, _parse_palette(ns.palette), ns.column)
    print(f"wrote {out} ({n} cells)")
    return EXIT_OK


def _cmd_kepler(ns) -> int:
    rep = omega_index(kepler_path(ns.alpha), 1.0, ns.eps)
    closed = closed_morse(ModelParams(ns.alpha, 0.0), "E2")
    _write_text(f"alpha={ns.alpha:.9g} i1={rep.index} closed_form={closed} "
                f"nullity={rep.nullity} method={rep.method} eps={rep.eps:g}\n", ns.out)
    return EXIT_OK


def _cmd_omega(ns) -> int:
    w = cmath.exp(1j * ns.theta)
    rep = omega_index(_path_for(ns.block, ns.alpha, ns.beta), w, ns.eps)
    lines = [f"alpha={ns.alpha:.9g} beta={ns.beta:.9g} theta={ns.theta:.9g} block={ns.block} "
             f"index={rep.index} nullity={rep.nullity} method={rep.method} eps={rep.eps:g}"]
    for c in rep.crossings:
        lines.append(f"  crossing t={c.instant:.12g} dim={c.kernel_dim} "
                     f"signature={c.signature} position={c.position}")
    _write_text("\n".join(lines) + "\n", ns.out)
    return EXIT_OK


def _cmd_iterate(ns) -> int:
    P = _path_for(ns.block, ns.alpha, ns.beta)
    direct = omega_index(iterate_path(P, ns.k), 1.0, ns.eps).index
    summed = bott_long_sum(P, ns.k, 1.0, ns.eps)
    line = f"alpha={ns.alpha:.9g} beta={ns.beta:.9g} k={ns.k} block={ns.block} " \
           f"direct={direct} bott_long={summed}"
    if ns.block == "E2":
        line += f" closed_form={iterate_closed_e2(ns.alpha, ns.k)}"
    _write_text(line + "\n", ns.out)
    return EXIT_OK if direct == summed else EXIT_MISMATCH


def _cmd_trace(ns) -> int:
    path = n_alpha_path(ns.alpha) if ns.path == "N" else r_alpha_path(ns.alpha)
    rows = trace_path(path, samples=ns.samples)
    text = "t,r,theta,z\n" + "".join(
        ",".join(gridmod.format_value(x) for x in row) + "\n" for row in rows)
    _write_text(text, ns.out)
    return EXIT_OK


COMMANDS = {
    "grid": _cmd_grid,
    "verify": _cmd_verify,
    "render": _cmd_render,
    "kepler-index": _cmd_kepler,
    "omega-index": _cmd_omega,
    "iterate": _cmd_iterate,
    "jump-curves": _cmd_jump,
    "sp2-trace": _cmd_trace,
}


def main(argv=None) -> int:
    ap = build_parser()
    try:
        ns = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return COMMANDS[ns.command](ns)
    except (UsageError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DegenerateCrossing, NonConvergence) as exc:
        print(f"error: index not computable: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
