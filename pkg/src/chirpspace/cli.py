"""Command-line front end.

Exit codes: 0 success or pass, 1 non-convergence or failed verification,
2 bad input, 3 I/O failure. Every output file gets a sibling
``<output>.manifest.json`` recording the command, parameters and timings.
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import asdict, dataclass, field
from importlib.metadata import PackageNotFoundError, version as _pkg_version

import numpy as np

from . import formats
from .chirp_model import ChirpPolynomial, evaluate_nonlinear, evaluate_polynomial
from .correlator import Axis, evaluate_grid
from .frft import SingularOrderError, frft
from .reconstruction import DetectionConfig, reconstruct
from .sampling import SamplingConfig, circle_orbit, generate_samples
from .verification import verify_frft, verify_ld, verify_nonlinear, verify_theorem3

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_IO = 0, 1, 2, 3


def tool_version() -> str:
    try:
        return _pkg_version("artifact")
    except PackageNotFoundError:
        return "0.1.0"


@dataclass
class RunManifest:
    command: str
    parameters: dict
    seed: int | None
    inputs: list = field(default_factory=list)
    outputs: list = field(default_factory=list)
    tool_version: str = field(default_factory=tool_version)
    wall_time: float = 0.0
    summary: dict = field(default_factory=dict)

    def write(self, out_path):
        formats.write_json(str(out_path) + ".manifest.json", asdict(self))


class InputError(Exception):
    pass


def _samples_from_args(args):
    if getattr(args, "samples", None):
        return formats.read_samples_csv(args.samples, args.lam, args.seed)
    cfg = SamplingConfig(args.lam, args.seed, args.half_window)
    return generate_samples(cfg, jitter=args.jitter)


def _add_sampling(p, with_file=True):
    if with_file:
        p.add_argument("--samples", help="sample CSV (n,x); otherwise points are generated")
    p.add_argument("--lambda", dest="lam", type=float, default=1.0, help="mean sample spacing")
    p.add_argument("--half-window", type=int, default=100, help="L, indices -L..L")
    p.add_argument("--jitter", type=float, default=None, help="fixed jitter fraction in [0, 1) instead of random")


def _add_common(p):
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)


def cmd_sample(args, man):
    samples = _samples_from_args(args)
    formats.write_samples_csv(args.out, samples)
    return EXIT_OK


def cmd_synth(args, man):
    model = formats.load_model(args.model)
    man.inputs.append(args.model)
    samples = _samples_from_args(args)
    if isinstance(model, ChirpPolynomial):
        values = evaluate_polynomial(model, samples.x)
    else:
        values = evaluate_nonlinear(model, samples.x)
    formats.write_values_csv(args.out, samples, values)
    return EXIT_OK


def _grid_axes(args):
    if args.omega is not None or args.c is not None:
        if args.omega is None or args.c is None:
            raise InputError("--omega and --c must be given together")
        return Axis(args.omega, 1.0, 1), Axis(args.c, 1.0, 1)
    need = ("omega_min", "omega_step", "omega_count", "c_min", "c_step", "c_count")
    if any(getattr(args, k) is None for k in need):
        raise InputError("give --omega/--c or all of --omega-min/-step/-count and --c-min/-step/-count")
    return (Axis(args.omega_min, args.omega_step, args.omega_count),
            Axis(args.c_min, args.c_step, args.c_count))


def cmd_correlate(args, man):
    samples, values = formats.read_values_csv(args.values, args.lam)
    man.inputs.append(args.values)
    if args.half_window is not None:
        L = samples.half_window
        values = values[L - args.half_window:L + args.half_window + 1]
        samples = samples.window(args.half_window)
    w_axis, c_axis = _grid_axes(args)
    grid = evaluate_grid(values, samples, w_axis, c_axis, method=args.method, threads=args.threads)
    formats.write_grid_csv(args.out, grid)
    i, j = np.unravel_index(int(np.argmax(grid.magnitude)), grid.values.shape)
    peak = grid.probe(int(i), int(j))
    man.summary = {"peak_omega": peak.omega, "peak_c": peak.rate, "peak_abs": float(grid.magnitude[i, j])}
    return EXIT_OK


def cmd_reconstruct(args, man):
    samples, values = formats.read_values_csv(args.values, args.lam)
    man.inputs.append(args.values)
    cfg = DetectionConfig(tuple(args.omega_range), tuple(args.rate_range), samples.half_window,
                          args.epsilon, args.max_components, args.refine_tol, args.detect_window)
    report = reconstruct(values, samples, cfg)
    formats.write_json(args.out, formats.report_to_json(report))
    man.summary = {"converged": report.converged, "residual_history": list(report.residual_history)}
    return EXIT_OK if report.converged else EXIT_FAIL


def cmd_frft(args, man):
    f = formats.read_function_csv(args.input)
    man.inputs.append(args.input)
    out = frft(f, args.order, args.out_start, args.out_step, args.out_count)
    formats.write_function_csv(args.out, out)
    return EXIT_OK


def cmd_verify(args, man):
    if args.subject == "theorem3":
        report = verify_theorem3(args.omega, args.c, args.lam, args.L, range(args.seed, args.seed + args.seeds),
                                 args.target, args.C)
    elif args.subject == "ld":
        report = verify_ld(args.N, args.C, args.omega, args.c, args.trials, args.seed, args.threshold,
                           args.index_offset, args.variant)
    elif args.subject == "nonlinear":
        report = verify_nonlinear(args.coeffs, args.n_list, args.method, args.trials, args.seed, args.slope_tol)
    else:
        report = verify_frft(args.order, args.start, args.stop, args.step, args.tol)
    formats.write_json(args.out, report)
    man.summary = {"pass": report["pass"]}
    return EXIT_OK if report["pass"] else EXIT_FAIL


def cmd_diagnose(args, man):
    samples = _samples_from_args(args)
    diag = circle_orbit(samples, args.omega, args.c)
    rows = ((int(n), formats.fmt(x), formats.fmt(y), formats.fmt(b))
            for n, x, y, b in zip(samples.indices, samples.x, diag.orbit, diag.deviation_bounds))
    formats._write_rows(args.out, ("n", "x", "y", "deviation_bound"), rows)
    man.summary = {"wrap_threshold": diag.wrap_threshold, "x_rescaled_by_lambda": samples.config.lam}
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="chirpspace", description=__doc__.splitlines()[0])
    parser.add_argument("--threads", type=int, default=None, help="worker cap for grid evaluation")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sample", help="generate jittered sample points")
    _add_sampling(p, with_file=False)
    _add_common(p)
    p.set_defaults(run=cmd_sample)

    p = sub.add_parser("synth", help="evaluate a chirp model at sample points")
    p.add_argument("--model", required=True)
    _add_sampling(p)
    _add_common(p)
    p.set_defaults(run=cmd_synth)

    p = sub.add_parser("correlate", help="chirp correlator at one probe or over a grid")
    p.add_argument("--values", required=True)
    p.add_argument("--lambda", dest="lam", type=float, default=1.0)
    p.add_argument("--half-window", type=int, default=None)
    p.add_argument("--omega", type=float)
    p.add_argument("--c", type=float)
    for name in ("omega", "c"):
        p.add_argument(f"--{name}-min", type=float)
        p.add_argument(f"--{name}-step", type=float)
        p.add_argument(f"--{name}-count", type=int)
    p.add_argument("--method", choices=("direct", "fast"), default="direct")
    _add_common(p)
    p.set_defaults(run=cmd_correlate)

    p = sub.add_parser("reconstruct", help="detect and deflate chirp components")
    p.add_argument("--values", required=True)
    p.add_argument("--lambda", dest="lam", type=float, default=1.0)
    p.add_argument("--omega-range", type=float, nargs=2, required=True)
    p.add_argument("--rate-range", type=float, nargs=2, required=True)
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--max-components", type=int, default=10)
    p.add_argument("--refine-tol", type=float, default=1e-3)
    p.add_argument("--detect-window", type=int, default=None)
    _add_common(p)
    p.set_defaults(run=cmd_reconstruct)

    p = sub.add_parser("frft", help="fractional Fourier transform of a sampled function")
    p.add_argument("--input", required=True)
    p.add_argument("--order", type=float, required=True)
    p.add_argument("--out-start", type=float)
    p.add_argument("--out-step", type=float)
    p.add_argument("--out-count", type=int)
    _add_common(p)
    p.set_defaults(run=cmd_frft)

    p = sub.add_parser("verify", help="run a verification harness")
    vsub = p.add_subparsers(dest="subject", required=True)
    v = vsub.add_parser("theorem3")
    v.add_argument("--omega", type=float, default=1.0)
    v.add_argument("--c", type=float, default=0.3)
    v.add_argument("--lambda", dest="lam", type=float, default=1.0)
    v.add_argument("--L", type=int, nargs="+", default=[100, 1000, 10000])
    v.add_argument("--seeds", type=int, default=50, help="number of seeds, starting at --seed")
    v.add_argument("--target", type=float, default=0.05)
    v.add_argument("--C", type=float, default=0.5)
    v = vsub.add_parser("ld")
    v.add_argument("--N", type=int, default=10)
    v.add_argument("--C", type=float, default=0.5)
    v.add_argument("--omega", type=float, default=1.0)
    v.add_argument("--c", type=float, default=0.3)
    v.add_argument("--trials", type=int, default=100_000)
    v.add_argument("--threshold", type=float, default=None, help="default m_N_hat + b_N")
    v.add_argument("--index-offset", type=int, default=1)
    v.add_argument("--variant", choices=("circle", "indexed"), default="circle")
    v = vsub.add_parser("nonlinear")
    v.add_argument("--coeffs", type=float, nargs="+", default=[0.0, 0.0, 0.0, 1.0])
    v.add_argument("--n-list", type=int, nargs="+", default=[10, 30, 100, 300])
    v.add_argument("--method", choices=("expected", "monte_carlo"), default="expected")
    v.add_argument("--trials", type=int, default=100_000)
    v.add_argument("--slope-tol", type=float, default=0.3)
    v = vsub.add_parser("frft")
    v.add_argument("--order", type=float, default=0.5)
    v.add_argument("--start", type=float, default=-10.0)
    v.add_argument("--stop", type=float, default=10.0)
    v.add_argument("--step", type=float, default=0.01)
    v.add_argument("--tol", type=float, default=1e-3)
    for v in vsub.choices.values():
        _add_common(v)
    p.set_defaults(run=cmd_verify)

    p = sub.add_parser("diagnose", help="circle-map diagnostics")
    dsub = p.add_subparsers(dest="subject", required=True)
    d = dsub.add_parser("circle")
    d.add_argument("--omega", type=float, required=True)
    d.add_argument("--c", type=float, required=True)
    _add_sampling(d)
    _add_common(d)
    p.set_defaults(run=cmd_diagnose)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    params = {k: v for k, v in vars(args).items() if k != "run"}
    man = RunManifest(args.command, params, getattr(args, "seed", None), outputs=[args.out])
    t0 = time.perf_counter()
    try:
        code = args.run(args, man)
    except SingularOrderError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (InputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    man.wall_time = time.perf_counter() - t0
    try:
        man.write(args.out)
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return code


if __name__ == "__main__":
    sys.exit(main())
