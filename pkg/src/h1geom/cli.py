"""Command-line interface: verification suites, CSV export, instability
certificate search.

Exit codes: 0 success, 1 verification/certificate failure, 2 usage or
configuration error, 3 numerical failure.  Reports are deterministic byte
for byte for identical configuration.
"""

from __future__ import annotations

import argparse
import math
import sys
from typing import Sequence

from .core import FrameVector, Point
from .errors import (CertificateNotFound, ConfigError, GeometryError,
                     NonFiniteValue)
from .geodesics import GeodesicArc, exp_geodesic
from .stability import (certify_instability_h2, certify_instability_nosing,
                        cosine_bump, h2_certificate_test_function, q_form,
                        ruled_index_value, scaled_helicoid_certificate)
from .surfaces import (CatenoidChart, HelicoidChart, VerticalPlaneChart,
                       paraboloid_chart, plane_chart, surface_frame)
from .verify import SUITES, run_suites

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_CONFIG = 2
EXIT_NUMERIC = 3


def _fmt(x: float) -> str:
    return format(x, ".17g")


def load_config(path: str, allowed: set[str]) -> dict[str, str]:
    """Flat key=value file; unknown keys are rejected."""
    out: dict[str, str] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            key, sep, val = line.partition("=")
            if not sep:
                raise ConfigError(f"{path}:{lineno}: expected key=value")
            key = key.strip()
            if key not in allowed:
                raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
            out[key] = val.strip()
    return out


def _write_lines(path: str | None, lines: Sequence[str]) -> None:
    text = "\n".join(lines) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def cmd_verify(args: argparse.Namespace) -> int:
    suites = list(SUITES) if args.suite == "all" else [args.suite]
    overrides: dict[str, float] = {}
    items = list(args.tol or [])
    if args.config:
        cfg = load_config(args.config, {"suite", "tol"})
        if "tol" in cfg:
            items = cfg["tol"].split(",") + items
    for item in items:
        name, sep, val = item.partition("=")
        if not sep:
            raise ConfigError(f"--tol expects name=value, got {item!r}")
        try:
            tol = float(val)
        except ValueError as exc:
            raise ConfigError(f"bad tolerance value in {item!r}") from exc
        if tol <= 0:
            raise ConfigError("tolerances must be positive")
        overrides[name.strip()] = tol

    results = run_suites(suites, overrides)
    lines = [f"# verification suites: {', '.join(suites)}"]
    known = {r.name for r in results}
    for name, tol in sorted(overrides.items()):
        lines.append(f"# tolerance override: {name}={_fmt(tol)}")
        if name not in known:
            lines.append(f"# override did not match any check: {name}")
    lines.append(f"{'check':40s} {'identity':44s} {'residual':>12s} {'threshold':>9s}  status")
    for r in results:
        lines.append(r.line())
    n_fail = sum(1 for r in results if not r.passed)
    lines.append(f"# {len(results) - n_fail}/{len(results)} checks passed")
    _write_lines(args.out, lines)
    if any(not math.isfinite(r.residual) for r in results):
        return EXIT_NUMERIC
    return EXIT_OK if n_fail == 0 else EXIT_FAIL


# ---------------------------------------------------------------------------
# export
# ---------------------------------------------------------------------------

def _surface_from_args(args: argparse.Namespace):
    kind = args.surface
    if kind == "vertical_plane":
        return VerticalPlaneChart()
    if kind == "plane":
        return plane_chart(args.a, args.b, args.c)
    if kind == "paraboloid":
        return paraboloid_chart()
    if kind == "helicoid":
        return HelicoidChart(args.R)
    if kind == "catenoid":
        return CatenoidChart(args.lam)
    raise ConfigError(f"unknown surface {kind!r}")


def cmd_export_geodesic(args: argparse.Namespace) -> int:
    p0 = Point(args.x0, args.y0, args.t0)
    v0 = FrameVector(args.va, args.vb, args.vc, p0)
    arc = GeodesicArc(p0, v0)
    rows = ["s,x,y,t,lambda,speed"]
    n = args.num
    for i in range(n + 1):
        s = args.smin + (args.smax - args.smin) * i / n if n > 0 else args.smin
        q, vel = exp_geodesic(arc, s)
        rows.append(",".join(_fmt(v) for v in (s, q.x, q.y, q.t, vel.c, vel.norm())))
    _write_lines(args.out, rows)
    return EXIT_OK


def cmd_export_surface(args: argparse.Namespace) -> int:
    chart = _surface_from_args(args)
    (d1, d2) = chart.domain
    u1min = args.u1min if args.u1min is not None else d1[0]
    u1max = args.u1max if args.u1max is not None else d1[1]
    u2min = args.u2min if args.u2min is not None else d2[0]
    u2max = args.u2max if args.u2max is not None else d2[1]
    rows = ["u1,u2,x,y,t,Nh,NT,BZS,H,q,area_density"]
    n1, n2 = args.n1, args.n2
    if n1 < 1 or n2 < 1:  # empty grid: header-only file
        _write_lines(args.out, rows)
        return EXIT_OK
    for i in range(n1 + 1):
        u1 = u1min + (u1max - u1min) * i / n1
        for j in range(n2 + 1):
            u2 = u2min + (u2max - u2min) * j / n2
            fr = surface_frame(chart, (u1, u2), singular_ok=True)
            dens = fr.Nh_norm * fr.riem_area
            if fr.regular:
                vals = (u1, u2, fr.N.base.x, fr.N.base.y, fr.N.base.t,
                        fr.Nh_norm, fr.NT, fr.BZS, fr.H, fr.q, dens)
            else:
                nan = float("nan")
                vals = (u1, u2, fr.N.base.x, fr.N.base.y, fr.N.base.t,
                        fr.Nh_norm, fr.NT, nan, nan, nan, dens)
            rows.append(",".join(_fmt(v) for v in vals))
    _write_lines(args.out, rows)
    return EXIT_OK


def cmd_export(args: argparse.Namespace) -> int:
    if args.kind == "geodesic":
        return cmd_export_geodesic(args)
    return cmd_export_surface(args)


# ---------------------------------------------------------------------------
# certify
# ---------------------------------------------------------------------------

def cmd_certify(args: argparse.Namespace) -> int:
    if args.target == "h2":
        cert = certify_instability_h2()
        u = h2_certificate_test_function(cert.k, cert.delta, cert.eps0)
        confirm = q_form(2.0, u, cert.quad.doubled())
        lines = cert.to_text().splitlines()
        lines.append(f"Q_value_doubled={_fmt(confirm)}")
        _write_lines(args.out, lines)
        return EXIT_OK if (cert.Q_value < 0.0 and confirm < 0.0) else EXIT_FAIL

    if args.target == "helicoid":
        if args.R is None or args.R <= 0:
            raise ConfigError("certify helicoid requires --R > 0")
        base = certify_instability_h2()
        u = h2_certificate_test_function(base.k, base.delta, base.eps0)
        confirm = q_form(2.0, u, base.quad.doubled())
        cert = scaled_helicoid_certificate(base, args.R)
        lines = cert.to_text().splitlines()
        lines.append(f"base_Q_value={_fmt(base.Q_value)}")
        lines.append(f"base_Q_value_doubled={_fmt(confirm)}")
        lines.append(f"dilation_lambda={_fmt(math.log(2.0 / args.R))}")
        _write_lines(args.out, lines)
        return EXIT_OK if (cert.Q_value < 0.0 and confirm < 0.0) else EXIT_FAIL

    if args.target == "catenoid":
        if args.lam == 0:
            raise ConfigError("certify catenoid requires --lam != 0")
        chart = CatenoidChart(args.lam)
        r = math.sqrt(2.0) * abs(args.lam)
        t = args.lam * args.lam
        u0 = chart.locate(Point(r, 0.0, t))
        phi = cosine_bump(0.0, 1.0)
        try:
            cert, ruled = certify_instability_nosing(
                chart, u0, list(range(1, args.kmax + 1)), phi)
        except CertificateNotFound:
            return EXIT_FAIL
        confirm = ruled_index_value(chart, ruled, phi, cert.k, cert.quad.doubled())
        lines = cert.to_text().splitlines()
        lines.append(f"Q_value_doubled={_fmt(confirm)}")
        _write_lines(args.out, lines)
        return EXIT_OK if (cert.Q_value < 0.0 and confirm < 0.0) else EXIT_FAIL

    raise ConfigError(f"unknown certify target {args.target!r}")


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="h1geom",
                                 description="Heisenberg-group surface geometry toolkit")
    sub = ap.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="run identity suites")
    p_verify.add_argument("--suite", default="all",
                          choices=[*SUITES.keys(), "all"])
    p_verify.add_argument("--tol", action="append", metavar="NAME=VALUE",
                          help="override a check threshold (repeatable)")
    p_verify.add_argument("--config", help="flat key=value config file")
    p_verify.add_argument("--out", help="write the report to a file")
    p_verify.set_defaults(func=cmd_verify)

    p_export = sub.add_parser("export", help="CSV export of geodesics or surface grids")
    sub_e = p_export.add_subparsers(dest="kind", required=True)

    pg = sub_e.add_parser("geodesic")
    pg.add_argument("--x0", type=float, default=0.0)
    pg.add_argument("--y0", type=float, default=0.0)
    pg.add_argument("--t0", type=float, default=0.0)
    pg.add_argument("--va", type=float, default=1.0, help="X-coefficient of the velocity")
    pg.add_argument("--vb", type=float, default=0.0, help="Y-coefficient")
    pg.add_argument("--vc", type=float, default=0.0, help="T-coefficient")
    pg.add_argument("--smin", type=float, default=0.0)
    pg.add_argument("--smax", type=float, default=1.0)
    pg.add_argument("--num", type=int, default=100)
    pg.add_argument("--out")
    pg.set_defaults(func=cmd_export)

    ps = sub_e.add_parser("surface-grid")
    ps.add_argument("--surface", required=True,
                    choices=["vertical_plane", "plane", "paraboloid", "helicoid", "catenoid"])
    ps.add_argument("--R", type=float, default=2.0)
    ps.add_argument("--lam", type=float, default=1.0)
    ps.add_argument("--a", type=float, default=0.0)
    ps.add_argument("--b", type=float, default=0.0)
    ps.add_argument("--c", type=float, default=0.0)
    ps.add_argument("--u1min", type=float)
    ps.add_argument("--u1max", type=float)
    ps.add_argument("--u2min", type=float)
    ps.add_argument("--u2max", type=float)
    ps.add_argument("--n1", type=int, default=20)
    ps.add_argument("--n2", type=int, default=20)
    ps.add_argument("--out")
    ps.set_defaults(func=cmd_export)

    p_cert = sub.add_parser("certify", help="search instability certificates")
    p_cert.add_argument("target", choices=["h2", "helicoid", "catenoid"])
    p_cert.add_argument("--R", type=float)
    p_cert.add_argument("--lam", type=float, default=1.0)
    p_cert.add_argument("--kmax", type=int, default=64)
    p_cert.add_argument("--out")
    p_cert.set_defaults(func=cmd_certify)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (NonFiniteValue, OverflowError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except GeometryError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
