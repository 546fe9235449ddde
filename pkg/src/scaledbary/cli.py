"""Command-line front end.

Exit status: 0 on success, 2 on a usage error, 1 on a numerical failure.
Output goes to stdout unless ``--out PATH`` is given.  No subcommand uses
randomness, and with ``--no-timing`` every output is byte-reproducible.
"""

import argparse
import json
import math
import sys
import time

import numpy as np

from . import experiments as ex
from .barycentric import BarycentricInterpolant, eval_many
from .levin import LevinProblem, phased_amplitude, reference_oscillatory_integral, solve_levin
from .potential import (PotentialContext, equilibrium_integral, fit_convergence,
                        observed_prototype_log_rate, potential_U_field, potential_U_node,
                        potential_U_split, potential_V, predicted_prototype_log_rate,
                        rate_level_R)
from .volterra import VolterraProblem, mittag_leffler_solution, solve_volterra


class UsageError(Exception):
    pass


def parse_range(text, integer=True):
    """``start:step:stop`` (inclusive), ``start:stop`` or a comma list."""
    conv = int if integer else float
    try:
        if ":" in text:
            parts = [conv(p) for p in text.split(":")]
            if len(parts) == 2:
                start, step, stop = parts[0], 1, parts[1]
            elif len(parts) == 3:
                start, step, stop = parts
            else:
                raise ValueError
            if step <= 0 or stop < start:
                raise ValueError
            n = int(math.floor((stop - start) / step + 1e-9)) + 1
            return [conv(start + k * step) for k in range(n)]
        return [conv(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise UsageError(f"cannot parse range {text!r}") from None


def _json(obj):
    return json.dumps(obj, indent=2, sort_keys=True, allow_nan=True) + "\n"


def _num(v):
    v = float(v)
    return None if math.isnan(v) else v


def _add_node_flags(p):
    p.add_argument("--map", choices=ex.MAP_NAMES, default="power")
    p.add_argument("--s", type=float, default=2.0)
    p.add_argument("--alpha", type=float, default=1.0, help="map exponent divisor")
    p.add_argument("--T", type=float, default=1.0)
    p.add_argument("--x0", type=float, default=1e-10)
    p.add_argument("--a", type=float, default=1.0)
    p.add_argument("--p", type=int, default=1)
    p.add_argument("--eps", type=float, default=0.1)
    p.add_argument("--weights", choices=("chebyshev", "jacobi"), default="chebyshev")
    p.add_argument("--beta", type=float, default=0.0)
    p.add_argument("--gamma", type=float, default=0.0)


def _add_target_flags(p):
    p.add_argument("--f", default="abs", help="abs, pow, sqrt, log or const")
    p.add_argument("--f-alpha", type=float, default=0.5, help="exponent for --f pow")


def _node_spec(a):
    return ex.NodeSpec(map=a.map, s=a.s, alpha=a.alpha, T=a.T, x0=a.x0, a=a.a, p=a.p,
                       eps=a.eps, weights=a.weights, beta=a.beta, gamma=a.gamma)


def _default_grid(a):
    if a.grid:
        return a.grid
    return {"sym": "xx-sym", "log": "xxx", "poly": "xx-sym", "tan": "xx-sym",
            "sinh": "xx-sym"}.get(a.map, "xx")


def build_parser():
    top = argparse.ArgumentParser(prog="scaledbary", description=__doc__.splitlines()[0])
    sub = top.add_subparsers(dest="command", required=True)

    def command(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--out", help="write output to this path instead of stdout")
        p.add_argument("--no-timing", action="store_true", help="report wall times as 0")
        return p

    p = command("interp", "evaluate one interpolant at given points")
    _add_target_flags(p)
    _add_node_flags(p)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--x", required=True, help="points: list or start:step:stop")

    p = command("converge", "max-norm error sweep over N")
    _add_target_flags(p)
    _add_node_flags(p)
    p.add_argument("--N", required=True)
    p.add_argument("--grid", choices=ex.GRID_TAGS)
    p.add_argument("--delta", type=float, default=1e-2)

    p = command("compare", "Newman's approximant against scaled interpolation")
    p.add_argument("--f", choices=("abs", "sqrt"), default="abs")
    p.add_argument("--N", required=True)
    p.add_argument("--s", type=float)

    p = command("compare-maps", "conformal maps against power-scaled nodes")
    p.add_argument("--f-alpha", type=float, default=1 / math.pi)
    p.add_argument("--N", type=int, default=100)
    p.add_argument("--p", type=int, default=1)
    for name in ("poly-a", "tan-eps", "sinh-eps", "power-s"):
        p.add_argument(f"--{name}", help="parameter list overriding the default")

    p = command("volterra", "weakly singular Volterra equation, unit forcing")
    p.add_argument("--alpha", type=float, default=0.5)
    p.add_argument("--N", default="50")
    p.add_argument("--s", type=float, default=5.0)
    p.add_argument("--quad-order", type=int)
    p.add_argument("--rule", choices=("composite", "gauss-jacobi"), default="composite")
    p.add_argument("--format", choices=("json", "csv"), default="json")

    p = command("levin", "Levin collocation against the brute-force oracle")
    p.add_argument("--alpha", type=float, default=0.5)
    p.add_argument("--omega", type=float, default=5000.0)
    p.add_argument("--N", type=int, default=60)
    p.add_argument("--s", type=float, default=10.0)
    p.add_argument("--beta", type=float, default=0.0)
    p.add_argument("--gamma", type=float, default=10.0)
    p.add_argument("--oracle-tol", type=float, default=1e-15)

    p = command("potential", "logarithmic potential functionals")
    _add_node_flags(p)
    p.add_argument("--sigma", type=float, default=-1.0)
    p.add_argument("--quantity", default="node",
                   choices=("node", "equilibrium", "field", "split", "V", "R", "prototype"))
    p.add_argument("--points", default="-1:0.5:1", help="unit reference coordinates")
    p.add_argument("--imag", type=float, default=0.0, help="imaginary part for field/V/R")
    p.add_argument("--z", type=float, default=-0.5, help="physical pole for --quantity prototype")
    p.add_argument("--N", type=int, default=200)

    p = command("fit", "fit a convergence CSV")
    p.add_argument("--in", dest="path", required=True)
    return top


def _emit(args, text):
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_interp(a):
    f = ex.target_function(a.f, a.f_alpha)
    x, w = _node_spec(a).build(a.N)
    r = BarycentricInterpolant(x, w, f(np.array(x)))
    pts = np.array(parse_range(a.x, integer=False))
    vals = eval_many(r, pts)
    t = ex.Table(("x", "r", "f"))
    for xi, ri, fi in zip(pts, vals, f(pts)):
        t.add(xi, ri, fi)
    return t.to_csv()


def cmd_converge(a):
    f = ex.target_function(a.f, a.f_alpha)
    spec = _node_spec(a)
    grid = ex.make_grid(_default_grid(a), x0=a.x0, T=a.T, delta=a.delta)
    rows = ex.run_converge(f, spec, parse_range(a.N), grid, timing=not a.no_timing)
    for r in rows:
        if r.status != "ok":
            print(f"warning: N={r.N}: pole on the evaluation grid", file=sys.stderr)
    return ex.records_to_csv(rows)


def cmd_compare(a):
    rows = ex.run_compare_newman(a.f, parse_range(a.N), a.s, timing=not a.no_timing)
    t = ex.Table(("method",) + ex.CSV_HEADER)
    for method, r in rows:
        t.add(method, r.N, r.max_error, r.wall_time)
    return t.to_csv()


def cmd_compare_maps(a):
    params = {}
    for key, (name, pname) in {"poly_a": ("poly", "a"), "tan_eps": ("tan", "eps"),
                               "sinh_eps": ("sinh", "eps"), "power_s": ("power", "s")}.items():
        text = getattr(a, key)
        if text:
            params[name] = tuple((pname, v) for v in parse_range(text, integer=False))
    rows = ex.run_compare_maps(a.f_alpha, a.N, params, p=a.p, timing=not a.no_timing)
    t = ex.Table(("map", "parameter", "value") + ex.CSV_HEADER)
    for r in rows:
        t.add(r.map, r.parameter, r.value, r.N, r.max_error, r.wall_time)
    return t.to_csv()


def cmd_volterra(a):
    grid = ex.make_grid("xx").points
    exact = mittag_leffler_solution(a.alpha)(grid)
    records, summary = [], []
    for N in parse_range(a.N):
        prob = VolterraProblem(alpha=a.alpha, N=N, s=a.s, M=a.quad_order, rule=a.rule)
        t0 = time.perf_counter()
        y = solve_volterra(prob)
        err = float(np.max(np.abs(y(grid) - exact)))
        dt = 0.0 if a.no_timing else time.perf_counter() - t0
        records.append(ex.ConvergenceRecord(N, err, dt))
        summary.append({"N": N, "max_error": err, "wall_time_s": dt,
                        "quad_order": prob.quad_order})
    if a.format == "csv":
        return ex.records_to_csv(records)
    return _json({"alpha": a.alpha, "s": a.s, "rule": a.rule, "grid": "xx",
                  "reference": "mittag-leffler", "runs": summary})


def cmd_levin(a):
    prob = LevinProblem(f=phased_amplitude(a.omega, a.alpha), alpha=a.alpha, omega=a.omega,
                        N=a.N, beta=a.beta, gamma=a.gamma, s=a.s)
    t0 = time.perf_counter()
    res = solve_levin(prob)
    dt = 0.0 if a.no_timing else time.perf_counter() - t0
    ref, est = reference_oscillatory_integral(prob, tol=a.oracle_tol, return_estimate=True)
    return _json({
        "alpha": a.alpha, "omega": a.omega, "N": a.N, "s": a.s,
        "beta": a.beta, "gamma": a.gamma,
        "integral": [res.integral.real, res.integral.imag],
        "oracle": [ref.real, ref.imag], "oracle_error_estimate": est,
        "absolute_error": abs(res.integral - ref),
        "relative_error": abs(res.integral - ref) / abs(ref),
        "condition": res.condition, "wall_time_s": dt,
    })


def cmd_potential(a):
    spec = _node_spec(a)
    if spec.map == "sym":
        raise UsageError("potential functionals need a single-sided map")
    m = spec.singular_map()
    ctx = PotentialContext(m, sigma=a.sigma)
    if a.quantity == "prototype":
        xs = ex.make_grid("xx").points[::10] * (m.image_interval[1] - m.image_interval[0]) \
            + m.image_interval[0]
        # V is constant off [sigma, 1], so any off-interval point serves
        pred = predicted_prototype_log_rate(ctx, complex(-2.0, 0.0))
        obs = observed_prototype_log_rate(m, a.N, a.z, xs)
        return _json({"N": a.N, "z": a.z, "predicted_log_rate": pred,
                      "observed_log_rate": obs, "ratio": obs / pred})
    pts = parse_range(a.points, integer=False)
    real_only = {"node": potential_U_node, "equilibrium": equilibrium_integral,
                 "split": potential_U_split}
    complex_ok = {"field": potential_U_field, "V": potential_V, "R": rate_level_R}
    if a.quantity in real_only:
        if a.imag:
            raise UsageError(f"--quantity {a.quantity} takes real points only")
        fn = real_only[a.quantity]
        t = ex.Table(("y", a.quantity))
        for y in pts:
            t.add(y, fn(ctx, y))
    else:
        fn = complex_ok[a.quantity]
        t = ex.Table(("re", "im", a.quantity))
        for y in pts:
            t.add(y, a.imag, fn(ctx, complex(y, a.imag)))
    return t.to_csv()


def cmd_fit(a):
    with open(a.path) as fh:
        records = ex.read_records_csv(fh.read())
    fit = fit_convergence(records)
    return _json({"slope": _num(fit.slope), "r2_algebraic": _num(fit.r2_algebraic),
                  "C": _num(fit.C), "r2_root": _num(fit.r2_root),
                  "regime": fit.regime, "used": fit.used})


COMMANDS = {
    "interp": cmd_interp, "converge": cmd_converge, "compare": cmd_compare,
    "compare-maps": cmd_compare_maps, "volterra": cmd_volterra, "levin": cmd_levin,
    "potential": cmd_potential, "fit": cmd_fit,
}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        text = COMMANDS[args.command](args)
    except (UsageError, ValueError, OSError) as exc:
        print(f"scaledbary {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except ArithmeticError as exc:
        print(f"scaledbary {args.command}: numerical failure: {exc}", file=sys.stderr)
        return 1
    _emit(args, text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
