"""Command-line front end: ``pantoq eval|verify|scan|oracle``.

Reports go to stdout as JSON (or CSV with ``--format csv``).  Exit codes:
0 when every check passes, 1 when a check fails, 2 on usage or domain
errors.  ``PANTOQ_MAX_TERMS`` overrides the series term limit.
"""
from __future__ import annotations

import argparse
import cmath
import csv
import io
import json
import math
import os
import sys
import time
from dataclasses import dataclass, field

import numpy as np

from . import asymptotics, connection, contour, oracle, qcore, series
from .qcore import ConvergenceError, DomainError, QContext, SurfacePoint

CSV_HEADER = ["x_re", "x_im", "value_re", "value_im", "abs_err"]


@dataclass
class RunReport:
    command: str
    parameters: dict
    results: list = field(default_factory=list)
    checks: list = field(default_factory=list)
    extra: dict = field(default_factory=dict)
    wall_time: float | None = None

    @property
    def passed(self) -> bool:
        return all(c["passed"] for c in self.checks)

    def check(self, name: str, residual: float, threshold: float, **info):
        ok = bool(np.isfinite(residual) and residual <= threshold)
        self.checks.append({"name": name, "residual": float(residual),
                            "threshold": threshold, "passed": ok, **info})
        return ok

    def add(self, x, value, abs_err, **info):
        x, value = complex(x), complex(value)
        self.results.append({"x": [x.real, x.imag], "value": [value.real, value.imag],
                             "abs_err": float(abs_err), **info})

    def to_json(self) -> str:
        out = {"command": self.command, "parameters": self.parameters,
               "results": self.results, "checks": self.checks,
               "passed": self.passed, **self.extra}
        if self.wall_time is not None:
            out["wall_time"] = self.wall_time
        return json.dumps(out, indent=2, default=_jsonable)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for r in self.results:
            w.writerow([repr(r["x"][0]), repr(r["x"][1]), repr(r["value"][0]),
                        repr(r["value"][1]), repr(r["abs_err"])])
        return buf.getvalue()


def _jsonable(o):
    if isinstance(o, complex):
        return [o.real, o.imag]
    if isinstance(o, np.generic):
        return o.item()
    raise TypeError(type(o))


def parse_complex(text: str) -> complex:
    """Read ``re+imi`` literals such as ``0.3+0.1i``, ``-2``, ``2i``."""
    s = text.strip().replace(" ", "").replace("I", "i").replace("j", "i")
    if s.endswith("i"):
        body = s[:-1]
        if body in ("", "+", "-"):
            s = body + "1i"
    try:
        return complex(s.replace("i", "j"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex literal: {text!r}") from None


def _ctx(args) -> QContext:
    if args.q is None:
        raise DomainError("--q is required")
    kw = {}
    env = os.environ.get("PANTOQ_MAX_TERMS")
    if env:
        kw["max_terms"] = int(env)
    if getattr(args, "tol", None) is not None:
        kw["rel_tol"] = args.tol
    return QContext(args.q, **kw)


def _point(args, name: str = "x") -> SurfacePoint:
    z = getattr(args, name)
    if z is None:
        raise DomainError(f"--{name} is required")
    return SurfacePoint.from_complex(z, args.arg_winding)


def _need(args, name: str):
    v = getattr(args, name)
    if v is None:
        raise DomainError(f"--{name} is required")
    return v


# ---------------------------------------------------------------------------
# eval

def _eval_value(fn: str, args):
    """Return ``(x, value, abs_err, terms)`` for the named function."""
    if fn == "W":
        z = _need(args, "z") if args.z is not None else _need(args, "x")
        return z, asymptotics.lambert_w(z), 1e-13 * max(1.0, abs(z)), None
    ctx = _ctx(args)
    if fn == "F":
        x = _need(args, "x")
        r = series.F(_need(args, "mu"), x, ctx)
        return x, r.value, r.abs_err, r.terms_used
    if fn == "G":
        z = args.z if args.z is not None else _need(args, "x")
        r = series.G(_need(args, "mu"), z, ctx)
        return z, r.value, r.abs_err, r.terms_used
    x = _point(args) if fn != "Psi" or args.z is None else _point(args, "z")
    if fn == "theta":
        r = qcore.theta(x, ctx)
    elif fn == "Psi":
        v = args.v if args.v is not None else ctx.kappa * math.pi / 2
        r = series.Psi(_need(args, "u"), v, x, args.order)
    elif fn == "Phi":
        r = series.Phi(_need(args, "u"), _need(args, "mu"), x, ctx, args.order)
    elif fn == "I":
        r = contour.I_jordan(_need(args, "mu"), complex(x), None, ctx)
    elif fn == "Inu":
        r = contour.I_nu_ray(_need(args, "nu"), _need(args, "mu"), x, args.d, ctx)
    elif fn == "f0":
        r = contour.f0(complex(x), ctx)
    elif fn == "g0":
        r = contour.g0_line(x, args.sign, args.eps, ctx)
    elif fn == "h0":
        r = contour.h0(x, None, ctx)
    elif fn == "h_asymptotic":
        N = 2 if args.order is None else args.order
        v = asymptotics.h_asymptotic(x, N, ctx)
        w = asymptotics.omega(-1.0 / ctx.log_q, x.scale(ctx.q ** -1.5))
        bound = asymptotics.remainder_bound(N, abs(w)) * abs(v)
        return complex(x), v, bound, N
    else:
        raise DomainError(f"unknown function {fn!r}")
    return complex(x), r.value, r.abs_err, r.terms_used


def cmd_eval(args) -> RunReport:
    rep = RunReport("eval " + args.function, _params(args))
    x, v, err, terms = _eval_value(args.function, args)
    rep.add(x, v, err, terms=terms)
    return rep


# ---------------------------------------------------------------------------
# verify

def _verify_connection(args, rep):
    ctx = _ctx(args)
    mu = _need(args, "mu")
    K = 4 if args.K is None else args.K
    p = connection.ConnectionParams(mu, ctx, K=K)
    for x in (1.0, 2.0, 5.0, 2 * cmath.exp(1j * math.pi / 4)):
        f = series.F(mu, x, ctx).value
        rhs = connection.connection_rhs(p, x)
        rep.add(x, rhs.value, rhs.abs_err)
        rep.check(f"F vs rhs at x={x:.6g}", abs(f - rhs.value) / abs(f), 1e-8)


def _verify_degenerate(args, rep):
    ctx = _ctx(args)
    m = 0 if args.m is None else args.m
    rng = np.random.default_rng(0)
    for _ in range(10):
        x = complex(*rng.uniform(-3, 3, 2))
        res = connection.degenerate_identity(m, x, ctx)
        rep.add(x, series.F(-m, x, ctx).value, res)
        rep.check(f"m={m} at x={x:.4g}", res, 1e-12)


def _verify_dirichlet(args, rep):
    ctx = _ctx(args)
    mu = _need(args, "mu")
    for x in (0.5, 2.0, 5.0 + 1j, 10.0):
        a = series.F(mu, x, ctx, method="series").value
        b = series.F_dirichlet(mu, x, None, ctx).value
        c = series.F_jackson(mu, x, ctx).value
        rep.add(x, b, abs(a - b))
        rep.check(f"Dirichlet at x={x:.4g}", abs(a - b) / abs(a), 1e-10)
        rep.check(f"Jackson at x={x:.4g}", abs(a - c) / abs(a), 1e-10)


def _verify_modular(args, rep):
    ctx = _ctx(args)
    rng = np.random.default_rng(1)
    for _ in range(20):
        x = SurfacePoint(rng.uniform(-2, 2), rng.uniform(-7, 7))
        res = qcore.verify_theta_modular(x, ctx)
        rep.add(complex(x), qcore.theta(x, ctx).value, res)
        rep.check(f"modular at log x={x.log:.4g}", res, 1e-10)
    rep.check("eta relation", qcore.verify_eta(ctx), 1e-10)


def _verify_character(args, rep):
    ctx = _ctx(args)
    mu = args.mu if args.mu is not None else 0.3 + 0.2j
    L = 3 if args.order is None else args.order
    rng = np.random.default_rng(2)
    for _ in range(30):
        x = SurfacePoint(rng.uniform(-1.5, 1.5), rng.uniform(-2 * math.pi + 0.8, -0.8))
        d = connection.character_direct(mu, x, ctx)
        r = connection.character_fourier(mu, 1, x, L, ctx)
        rep.add(complex(x), r.value, r.abs_err)
        rep.check(f"Fourier at log x={x.log:.4g}", abs(d - r.value) / abs(d), 1e-8)


def _verify_monodromy(args, rep):
    ctx = _ctx(args)
    mu = _need(args, "mu")
    x = args.x if args.x is not None else 1.0
    for k in (0, 1):
        f = series.F(mu + k, x, ctx).value
        r = contour.monodromy_F(k, mu, x, ctx)
        rep.add(x, r.value, r.abs_err, k=k)
        rep.check(f"monodromy k={k} vs F(mu+k)", abs(r.value - f) / abs(f), 1e-7)


def _verify_winding(args, rep):
    ctx = _ctx(args)
    x = args.x if args.x is not None else 2.0
    n = 3 if args.order is None else args.order
    r = contour.winding_sum(x, n, ctx)
    f = contour.f0(x, ctx).value
    rep.add(x, r.value, r.abs_err)
    rep.check(f"sum_|n|<={n} h(x e^(2 pi i n)) = f0", abs(r.value - f) / abs(f), 1e-6)


def _verify_saddle(args, rep):
    ctx = _ctx(args)
    N = 2 if args.order is None else args.order
    errs = []
    for x in (50.0, 100.0, 200.0):
        ref = contour.h0(x, None, ctx).value
        v = asymptotics.h_asymptotic(x, N, ctx)
        errs.append(abs(v / ref - 1.0))
        rep.add(x, v, abs(v - ref))
    rep.check("relative error at |x|=50", errs[0], 1e-3)
    rep.check("decreasing along 50, 100, 200",
              0.0 if errs[0] > errs[1] > errs[2] else 1.0, 0.5)


_SUITES = {
    "connection": _verify_connection, "degenerate": _verify_degenerate,
    "dirichlet": _verify_dirichlet, "modular": _verify_modular,
    "character": _verify_character, "monodromy": _verify_monodromy,
    "winding": _verify_winding, "saddle": _verify_saddle,
}


def cmd_verify(args) -> RunReport:
    rep = RunReport("verify " + args.suite, _params(args))
    _SUITES[args.suite](args, rep)
    return rep


# ---------------------------------------------------------------------------
# scan

def _scan_psi_boundary(args, rep):
    ctx = _ctx(args)
    u = args.u if args.u is not None else 0.5
    v = args.v if args.v is not None else ctx.kappa * math.pi / 2
    slope = series.psi_coefficient_slope(u, v, 20, 40)
    rep.extra["slope"] = slope
    rep.check("coefficient decay slope vs -|v|", abs(slope + abs(v)) / abs(v), 0.01)
    edge = math.exp(abs(v))
    diverged = True
    for frac in np.linspace(0.5, 1.2, 15):
        z = complex(frac * edge)
        r = series.Psi(u, v, z, None if frac < 1 else 40, strict=False)
        rep.add(z, r.value, r.abs_err, converged=r.converged)
        if frac >= 1:
            diverged = diverged and not r.converged
    rep.check("no convergence for |z| >= e^|v|", 0.0 if diverged else 1.0, 0.5)


def _scan_left_asymptote(args, rep):
    ctx = _ctx(args)
    mu = args.mu if args.mu is not None else 0.7
    target = qcore.qpoch_inf(qcore.q_power(mu, ctx), ctx)
    prev = math.inf
    decreasing = True
    for r in (1, 2, 5, 10, 15, 20, 25, 30):
        v = cmath.exp(-r) * series.F(mu, -r, ctx).value
        d = abs(v - target)
        rep.add(-r, v, d)
        decreasing = decreasing and d < prev
        prev = d
    rep.check("|e^x F - (alpha;q)_inf| decreasing", 0.0 if decreasing else 1.0, 0.5)


def _scan_h_ladder(args, rep):
    ctx = _ctx(args)
    N = 2 if args.order is None else args.order
    prev = math.inf
    decreasing = True
    for k in range(5):
        x = 25.0 * 2 ** k
        ref = contour.h0(x, None, ctx).value
        v = asymptotics.h_asymptotic(x, N, ctx, min_omega=0.0)
        rel = abs(v / ref - 1.0)
        rep.add(x, v, rel)
        decreasing = decreasing and rel < prev
        prev = rel
    rep.check("relative error decreasing along 25*2^k", 0.0 if decreasing else 1.0, 0.5)


_SCANS = {"psi-boundary": _scan_psi_boundary, "left-asymptote": _scan_left_asymptote,
          "h-ladder": _scan_h_ladder}


def cmd_scan(args) -> RunReport:
    rep = RunReport("scan " + args.target, _params(args))
    _SCANS[args.target](args, rep)
    _write(args.out, rep.to_csv())
    return rep


# ---------------------------------------------------------------------------
# oracle

def cmd_oracle(args) -> RunReport:
    ctx = _ctx(args)
    rep = RunReport("oracle", _params(args))
    if args.b0:
        sol = oracle.integrate_fde_b0(args.d, args.rmax, args.step, ctx)
        ref = lambda x: contour.f0(x, ctx).value  # noqa: E731
    else:
        mu = _need(args, "mu")
        sol = oracle.integrate_fde(mu, args.d, args.rmax, args.step, ctx)
        ref = lambda x: series.F(mu, x, ctx).value  # noqa: E731
    stride = max(1, (len(sol.radii) - 1) // 200)
    mismatch = 0.0
    for r, y in zip(sol.radii[::stride], sol.values[::stride]):
        x = r * cmath.exp(1j * args.d)
        d = abs(y - ref(x))
        mismatch = max(mismatch, d / max(1.0, abs(y)))
        rep.add(x, y, d)
    rep.extra["residual_max"] = sol.residual_max
    rep.check("max equation residual", sol.residual_max, 1e-6 if args.tol is None else args.tol)
    rep.check("max mismatch vs closed form", mismatch, 1e-6 if args.tol is None else args.tol)
    if args.out:
        _write(args.out, rep.to_csv())
    return rep


# ---------------------------------------------------------------------------

def _params(args) -> dict:
    skip = {"func", "format", "out", "timing"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip and v is not None}


def _write(path, text):
    if not path:
        raise DomainError("--out is required")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    cx = parse_complex
    common.add_argument("--q", type=float)
    common.add_argument("--mu", type=cx)
    common.add_argument("--nu", type=cx)
    common.add_argument("--x", type=cx)
    common.add_argument("--z", type=cx)
    common.add_argument("--u", type=cx)
    common.add_argument("--v", type=float)
    common.add_argument("--m", type=int)
    common.add_argument("--d", type=float)
    common.add_argument("--arg-winding", type=int, default=0)
    common.add_argument("--order", type=int)
    common.add_argument("--K", type=int)
    common.add_argument("--tol", type=float)
    common.add_argument("--out")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--timing", action="store_true", help="add wall time to the JSON")

    p = argparse.ArgumentParser(prog="pantoq", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="cmd", required=True)
    e = sub.add_parser("eval", parents=[common], help="evaluate one function")
    e.add_argument("function", choices=("F", "G", "theta", "Psi", "Phi", "I", "Inu", "f0",
                                        "g0", "h0", "h_asymptotic", "W"))
    e.add_argument("--sign", type=int, default=1, choices=(-1, 1))
    e.add_argument("--eps", type=float, default=0.25)
    e.set_defaults(func=cmd_eval)
    v = sub.add_parser("verify", parents=[common], help="run an identity suite")
    v.add_argument("suite", choices=sorted(_SUITES))
    v.set_defaults(func=cmd_verify)
    s = sub.add_parser("scan", parents=[common], help="write a CSV scan")
    s.add_argument("target", choices=sorted(_SCANS))
    s.set_defaults(func=cmd_scan)
    o = sub.add_parser("oracle", parents=[common], help="method-of-steps integration")
    o.add_argument("--rmax", type=float, default=10.0)
    o.add_argument("--step", type=float, default=1e-3)
    o.add_argument("--b0", action="store_true", help="solve y'(x) = y(qx) instead")
    o.set_defaults(func=cmd_oracle)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.cmd == "oracle" and args.d is None:
        args.d = 0.0
    t0 = time.perf_counter()
    try:
        rep = args.func(args)
    except DomainError as exc:
        print(f"pantoq: domain error: {exc}", file=sys.stderr)
        return 2
    except ConvergenceError as exc:
        print(f"pantoq: no convergence: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"pantoq: {exc}", file=sys.stderr)
        return 2
    if args.timing:
        rep.wall_time = time.perf_counter() - t0
    sys.stdout.write(rep.to_csv() if args.format == "csv" else rep.to_json() + "\n")
    return 0 if rep.passed else 1


if __name__ == "__main__":
    sys.exit(main())
