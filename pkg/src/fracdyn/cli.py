"""Command-line front end.

Subcommands: mlf, solve, classify, portrait, singular, region2, fde,
serve.  Exit codes: 0 success, 1 domain error (the originating error
class name is printed to stderr), 2 usage error (argparse).  All numeric
output is deterministic for fixed flags.
"""

from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from . import __version__
from .document import build_document, canonical_json, region2_csv, samples_csv
from .errors import FracdynError
from .fdesolve import PCOptions, solve_pc
from .linsys import (
    AdaptivePolicy,
    ComplexPair,
    FractionalLinearSystem,
    RealEigen,
    UniformPolicy,
    sample_trajectory,
)
from .mlf import MLParams, ml2, ml_deriv
from .region2 import Region2Config, estimate_deltas
from .singular import MLCurve, SingularConfig, detect_singularities
from .stability import classify_eigenvalue, default_deltas
from .svg import render_svg


def _parse_complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", ""))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from exc


def _parse_pair(text: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected two comma-separated values: {text!r}")
    return float(parts[0]), float(parts[1])


def _parse_floats(text: str) -> list[float]:
    return [float(p) for p in text.split(",") if p.strip()]


def _write_out(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _region_info(alpha: float) -> dict:
    d1, d2 = default_deltas(alpha)
    b = alpha * math.pi / 2.0
    return {
        "name": "II",
        "delta1": d1,
        "delta2": d2,
        "boundary": b,
        "interval": [b - d1, b + d2],
    }


def cmd_mlf(args) -> int:
    params = MLParams(alpha=args.alpha, beta=args.beta)
    z = _parse_complex(args.z)
    v = ml2(params, z) if args.deriv == 0 else ml_deriv(params, args.deriv, z)
    print(canonical_json({"re": v.real, "im": v.imag}))
    return 0


def _spiral_curve(args) -> MLCurve:
    theta = args.theta if args.theta is not None else args.alpha * math.pi / 2.0 + args.epsilon
    return MLCurve(alpha=args.alpha, r=args.r, theta=theta, x0=tuple(args.x0))


def _spiral_system(alpha: float, lam: complex, x0) -> FractionalLinearSystem:
    return FractionalLinearSystem(
        alpha=alpha, blocks=[ComplexPair(lam.real, lam.imag)], x0=np.asarray(x0, float)
    )


def cmd_solve(args) -> int:
    curve = _spiral_curve(args)
    system = _spiral_system(args.alpha, curve.lam, args.x0)
    policy = UniformPolicy(args.n) if args.n else AdaptivePolicy()
    traj = sample_trajectory(system, args.tstart, args.tmax, policy)
    if args.out and args.out.endswith(".csv"):
        _write_out(samples_csv(traj.t, traj.states), args.out)
        return 0
    doc = build_document(
        alpha=args.alpha,
        eigenvalue={"r": args.r, "theta": curve.theta},
        x0=list(args.x0),
        t=traj.t,
        states=traj.states,
        singular_points=[],
        region=_region_info(args.alpha),
        config={"tstart": args.tstart, "tmax": args.tmax, "n": args.n},
    )
    _write_out(doc.to_json(), args.out)
    return 0


def cmd_classify(args) -> int:
    c = classify_eigenvalue(args.alpha, complex(args.re, args.im))
    out = {
        "alpha": args.alpha,
        "eigenvalue": {"re": args.re, "im": args.im},
        "arg_abs": c.arg_abs,
        "boundary_angle": c.boundary_angle,
        "region": c.region,
        "stability": c.stability,
        "portrait": c.portrait,
    }
    if args.json:
        print(canonical_json(out))
    else:
        print(f"region {c.region}  {c.stability}  {c.portrait}")
    return 0


def cmd_portrait(args) -> int:
    if args.l1 is not None and args.l2 is not None:
        blocks = [RealEigen(args.l1), RealEigen(args.l2)]

        def mksys(x0):
            return FractionalLinearSystem(alpha=args.alpha, blocks=blocks, x0=np.asarray(x0))

        lam_info = {"l1": args.l1, "l2": args.l2}
    else:
        theta = (
            args.theta if args.theta is not None else args.alpha * math.pi / 2.0 + args.epsilon
        )
        lam = args.r * complex(math.cos(theta), math.sin(theta))

        def mksys(x0):
            return _spiral_system(args.alpha, lam, x0)

        lam_info = {"r": args.r, "theta": theta}
    ics = [
        (math.cos(2.0 * math.pi * k / args.nics), math.sin(2.0 * math.pi * k / args.nics))
        for k in range(args.nics)
    ]
    trajs = []
    for x0 in ics:
        traj = sample_trajectory(mksys(x0), args.tstart, args.tmax, AdaptivePolicy())
        trajs.append(traj.states)
    svg = render_svg(trajs)
    _write_out(svg, args.out)
    if args.json_out:
        payload = {
            "alpha": args.alpha,
            "eigenvalue": lam_info,
            "initial_conditions": [list(p) for p in ics],
            "n_trajectories": len(trajs),
        }
        _write_out(canonical_json(payload), args.json_out)
    return 0


def cmd_singular(args) -> int:
    curve = _spiral_curve(args)
    config = SingularConfig()
    points = detect_singularities(curve, (args.tstart, args.tmax), config)
    if args.out and args.out.endswith(".svg"):
        system = _spiral_system(args.alpha, curve.lam, args.x0)
        traj = sample_trajectory(system, args.tstart, args.tmax, AdaptivePolicy())
        _write_out(render_svg([traj.states], points), args.out)
        return 0
    system = _spiral_system(args.alpha, curve.lam, args.x0)
    traj = sample_trajectory(system, args.tstart, args.tmax, AdaptivePolicy())
    doc = build_document(
        alpha=args.alpha,
        eigenvalue={"r": args.r, "theta": curve.theta},
        x0=list(args.x0),
        t=traj.t,
        states=traj.states,
        singular_points=points,
        region=_region_info(args.alpha),
        config={"tstart": args.tstart, "tmax": args.tmax},
    )
    _write_out(doc.to_json(), args.out)
    return 0


def cmd_region2(args) -> int:
    rows = []
    for alpha in args.alpha:
        if args.estimate:
            est = estimate_deltas(alpha, Region2Config(r=args.r))
            rows.append(
                {
                    "alpha": alpha,
                    "boundary": est.boundary_angle,
                    "delta1": est.delta1,
                    "delta2": est.delta2,
                }
            )
        else:
            d1, d2 = default_deltas(alpha)
            rows.append(
                {
                    "alpha": alpha,
                    "boundary": alpha * math.pi / 2.0,
                    "delta1": d1,
                    "delta2": d2,
                }
            )
    if args.format == "csv":
        _write_out(region2_csv(rows), args.out)
    else:
        _write_out(canonical_json({"rows": rows, "estimated": args.estimate}), args.out)
    return 0


_FDE_NAMESPACE = {
    k: getattr(math, k)
    for k in ("sin", "cos", "tan", "exp", "log", "sqrt", "atan", "pi", "tanh")
}


def _compile_field(exprs: list[str], dim: int):
    codes = [compile(e, "<f>", "eval") for e in exprs]
    names = ["x", "y", "z", "w"][:dim]

    def f(t, x):
        env = dict(_FDE_NAMESPACE, t=t)
        for nm, xv in zip(names, x):
            env[nm] = xv
        return np.array([eval(c, {"__builtins__": {}}, env) for c in codes])

    return f


def cmd_fde(args) -> int:
    x0 = _parse_floats(args.x0)
    orders = _parse_floats(args.orders)
    exprs = [e.strip() for e in args.field.split(";")]
    if len(exprs) != len(x0):
        raise FracdynError("need one field expression per component")
    f = _compile_field(exprs, len(x0))
    traj = solve_pc(
        f,
        orders if len(orders) > 1 else orders[0],
        x0,
        args.tmax,
        args.n,
        PCOptions(corrector_iterations=args.corrector_iterations),
    )
    if args.out and args.out.endswith(".csv"):
        _write_out(samples_csv(traj.t, traj.states[:, :2]), args.out)
    elif args.out and args.out.endswith(".svg"):
        _write_out(render_svg([traj.states[:, :2]]), args.out)
    else:
        payload = {
            "orders": orders,
            "x0": x0,
            "t": [float(v) for v in traj.t],
            "states": [[float(v) for v in row] for row in traj.states],
            "source": traj.source,
        }
        _write_out(canonical_json(payload), args.out)
    return 0


def cmd_serve(args) -> int:
    from .service import serve

    serve(port=args.port, bind=args.bind)
    return 0


def _add_spiral_flags(p, x0_default="1,0"):
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--r", type=float, default=1.0)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--theta", type=float, default=None, help="eigenvalue argument")
    g.add_argument(
        "--epsilon", type=float, default=0.0, help="offset from alpha*pi/2 (default 0)"
    )
    p.add_argument("--x0", type=_parse_pair, default=_parse_pair(x0_default))
    p.add_argument("--tstart", type=float, default=0.5)
    p.add_argument("--tmax", type=float, default=500.0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fracdyn")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mlf", help="evaluate a Mittag-Leffler function")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--beta", type=float, default=1.0)
    p.add_argument("--z", required=True, help="complex value, e.g. '1.5' or '1+2j'")
    p.add_argument("--deriv", type=int, default=0)
    p.set_defaults(func=cmd_mlf)

    p = sub.add_parser("solve", help="sample an exact spiral trajectory")
    _add_spiral_flags(p)
    p.add_argument("--n", type=int, default=None, help="uniform sample count")
    p.add_argument("--out", default=None, help=".json or .csv; default stdout JSON")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("classify", help="classify an eigenvalue")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--re", type=float, required=True)
    p.add_argument("--im", type=float, default=0.0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("portrait", help="phase portrait, multiple initial conditions")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--l1", type=float, default=None, help="first real eigenvalue")
    p.add_argument("--l2", type=float, default=None, help="second real eigenvalue")
    p.add_argument("--r", type=float, default=1.0)
    p.add_argument("--theta", type=float, default=None)
    p.add_argument("--epsilon", type=float, default=0.0)
    p.add_argument("--nics", type=int, default=8, help="initial conditions on unit circle")
    p.add_argument("--tstart", type=float, default=0.5)
    p.add_argument("--tmax", type=float, default=40.0)
    p.add_argument("--out", required=True, help="SVG path")
    p.add_argument("--json-out", default=None, dest="json_out")
    p.set_defaults(func=cmd_portrait)

    p = sub.add_parser("singular", help="detect and annotate singular points")
    _add_spiral_flags(p)
    p.add_argument("--out", default=None, help=".json or .svg; default stdout JSON")
    p.set_defaults(func=cmd_singular)

    p = sub.add_parser("region2", help="Region II band widths")
    p.add_argument("--alpha", type=float, nargs="+", required=True)
    p.add_argument("--r", type=float, default=1.0)
    p.add_argument("--estimate", action="store_true", help="bisect instead of interpolate")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_region2)

    p = sub.add_parser("fde", help="nonlinear predictor-corrector run")
    p.add_argument("--orders", required=True, help="comma-separated, e.g. '0.9,0.9'")
    p.add_argument("--x0", required=True, help="comma-separated initial state")
    p.add_argument(
        "--field", required=True, help="semicolon-separated expressions in t,x,y,..."
    )
    p.add_argument("--tmax", type=float, required=True)
    p.add_argument("--n", type=int, default=2000)
    p.add_argument("--corrector-iterations", type=int, default=1)
    p.add_argument("--out", default=None, help=".json, .csv or .svg")
    p.set_defaults(func=cmd_fde)

    p = sub.add_parser("serve", help="start the HTTP service")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--bind", default="127.0.0.1")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FracdynError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
