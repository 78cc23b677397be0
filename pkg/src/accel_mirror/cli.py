"""Command-line front end: figure data as CSV, plus the validation suite.

Every long option can also be given in a plain-text config file passed
with ``--config``, one ``key = value`` per line (``#`` starts a comment).
Keys use the option name with or without the leading dashes; options
given on the command line win over the file.

Exit codes: 0 success, 2 configuration error, 3 numerical failure,
4 validation failure.
"""

import argparse
import math
import os
import sys
import tempfile
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import detector
from .circuit import LAWS, MirrorModel, compose
from .errors import ConfigError, DivergenceError, DomainError, QuadratureError
from .modes import Wavepacket
from .numerics import QuadratureSpec
from .statistics import vacuum_number

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC, EXIT_VALIDATION = 0, 2, 3, 4


# ---------------------------------------------------------------- parsing

def parse_grid(text):
    """``start:stop:count`` -> evenly spaced floats (count >= 2)."""
    parts = str(text).split(":")
    if len(parts) != 3:
        raise ConfigError(f"grid {text!r} must look like start:stop:count")
    try:
        start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise ConfigError(f"grid {text!r} has non-numeric fields") from None
    if count < 2:
        raise ConfigError(f"grid {text!r} needs count >= 2")
    if not (math.isfinite(start) and math.isfinite(stop)):
        raise ConfigError(f"grid {text!r} must have finite ends")
    return [float(x) for x in np.linspace(start, stop, count)]


def parse_list(text):
    try:
        vals = [float(v) for v in str(text).split(",") if v.strip()]
    except ValueError:
        raise ConfigError(f"bad number list {text!r}") from None
    if not vals:
        raise ConfigError("empty number list")
    return vals


def read_config(path):
    """Read ``key = value`` lines into a dict keyed by argparse dest names."""
    cfg = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        cfg[key.lstrip("-").replace("-", "_")] = value
    return cfg


def read_table(path):
    """Two whitespace- or comma-separated columns ``Omega R``."""
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read reflectivity table {path}: {exc}") from None
    points = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].replace(",", " ").split()
        if not line:
            continue
        if len(line) != 2:
            raise ConfigError(f"{path}:{lineno}: expected two columns")
        try:
            points.append((float(line[0]), float(line[1])))
        except ValueError:
            raise ConfigError(f"{path}:{lineno}: non-numeric entry") from None
    return points


def _add_mirror(p, default_law, default_g=10.0):
    p.add_argument("--mirror", choices=LAWS, default=default_law, help="reflectivity law")
    p.add_argument("--g", type=float, default=default_g, help="rational-law cutoff parameter a*g")
    p.add_argument("--epsilon", type=float, default=0.05, help="sharp-law cutoff Omega")
    p.add_argument("--table", default=None, help="file of (Omega, R) knots for the tabulated law")
    p.add_argument("--phase", type=float, default=0.0, help="beamsplitter phase (radians)")


def _add_packet(p, k0=20.0, sigma="1", v0=0.0):
    p.add_argument("--k0", type=float, default=k0, help="central frequency k0/a")
    p.add_argument("--sigma", default=sigma, help="bandwidth sigma/a, comma list for several curves")
    p.add_argument("--v0", type=float, default=v0, help="central position a*V0")


def _add_common(p):
    p.add_argument("--config", default=None, help="key = value config file")
    p.add_argument("-o", "--output", default=None, help="CSV path (default: stdout)")
    p.add_argument("--precision", type=int, default=12, help="significant digits")
    p.add_argument("--rel-tol", type=float, default=1e-9)
    p.add_argument("--abs-tol", type=float, default=1e-12)
    p.add_argument("--workers", type=int, default=1, help="processes for sweep points")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="accel-mirror",
        description="Radiation and squeezing from a uniformly accelerated, "
                    "partially transparent mirror.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="Unruh-particle spectrum n(Omega)")
    _add_common(p)
    _add_mirror(p, "perfect")
    p.add_argument("--omega-grid", default="0.02:3:150", help="start:stop:count")

    p = sub.add_parser("flux", help="N(f) versus a*V0")
    _add_common(p)
    _add_mirror(p, "rational")
    _add_packet(p, sigma="0.5,1,2")
    p.add_argument("--v0-grid", default="-1.5:1.5:61", help="start:stop:count")

    p = sub.add_parser("energy", help="E(f) = k0 N(f) versus k0")
    _add_common(p)
    _add_mirror(p, "rational")
    _add_packet(p, sigma="1")
    p.add_argument("--k0-grid", default="10:100:10", help="start:stop:count")

    p = sub.add_parser("variance", help="minimum quadrature variance versus a*V0")
    _add_common(p)
    _add_mirror(p, "rational")
    _add_packet(p, sigma="0.5,1,2")
    p.add_argument("--v0-grid", default="-1.5:1.5:61", help="start:stop:count")

    p = sub.add_parser("approx-check", help="sharp-cutoff N(f): quadrature vs closed form")
    _add_common(p)
    _add_packet(p, sigma="1")
    p.add_argument("--epsilons", default="0.02,0.05,0.1,0.2,0.5", help="comma list of cutoffs")

    p = sub.add_parser("validate", help="run the invariant suite")
    p.add_argument("--config", default=None, help="key = value config file")
    p.add_argument("--circuits", type=int, default=1000, help="random circuit draws")
    p.add_argument("--perturb", type=float, default=0.0,
                   help="add this to one composed-matrix entry (sensitivity self-test)")
    return parser, sub


def parse_args(argv):
    parser, sub = build_parser()
    args = parser.parse_args(argv)
    if args.config:
        cfg = read_config(args.config)
        cmd_parser = sub.choices[args.command]
        known = {a.dest for a in cmd_parser._actions}
        unknown = sorted(set(cfg) - known - {"command"})
        if unknown:
            raise ConfigError(f"unknown config keys for {args.command}: {', '.join(unknown)}")
        cfg.pop("command", None)
        cmd_parser.set_defaults(**cfg)
        args = parser.parse_args(argv)
    return args


# ---------------------------------------------------------------- models

def mirror_from_args(args):
    law = args.mirror
    if law == "rational":
        return MirrorModel.rational(args.g, phase=args.phase)
    if law == "sharp":
        return MirrorModel.sharp(args.epsilon, phase=args.phase)
    if law == "tabulated":
        if not args.table:
            raise ConfigError("tabulated mirror needs --table")
        return MirrorModel.tabulated(read_table(args.table), phase=args.phase)
    if law == "perfect":
        return MirrorModel.perfect(phase=args.phase)
    return MirrorModel.transparent(phase=args.phase)


def quad_from_args(args):
    return QuadratureSpec(rel_tol=args.rel_tol, abs_tol=args.abs_tol)


def _fmt(x, precision):
    return f"{x:.{precision}g}"


def _map(fn, items, workers):
    if workers > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, items))
    return [fn(item) for item in items]


# sweep-point workers live at module level so they pickle

def _flux_point(job):
    wp, model, quad = job
    return detector.flux_particle_number(wp, model, quad)


def _energy_point(job):
    wp, model, quad = job
    return detector.energy(wp, model, quad)


def _variance_point(job):
    wp, model, quad = job
    return detector.min_variance(wp, model, quad)


def _spectrum_point(job):
    omega, model = job
    return vacuum_number(compose(omega, model), 0)


# ---------------------------------------------------------------- commands

def _blocks(header, sigmas, rows_for, precision):
    lines = [header]
    for sigma in sigmas:
        if len(sigmas) > 1:
            lines.append(f"# sigma={_fmt(sigma, precision)}")
        for row in rows_for(sigma):
            lines.append(",".join(_fmt(v, precision) for v in row))
    return lines


def run_flux(args):
    model = mirror_from_args(args)
    quad = quad_from_args(args)
    sigmas = parse_list(args.sigma)
    v0s = parse_grid(args.v0_grid)
    packets = {s: [Wavepacket(args.k0, s, v) for v in v0s] for s in sigmas}
    if model.law != "transparent" and not model.ir_regular:
        raise DivergenceError(f"N(f) diverges for the {model.describe()} mirror")

    def rows(sigma):
        vals = _map(_flux_point, [(wp, model, quad) for wp in packets[sigma]], args.workers)
        return zip(v0s, vals)
    return _blocks("aV0,N", sigmas, rows, args.precision)


def run_energy(args):
    model = mirror_from_args(args)
    quad = quad_from_args(args)
    sigmas = parse_list(args.sigma)
    k0s = parse_grid(args.k0_grid)
    packets = {s: [Wavepacket(k, s, args.v0) for k in k0s] for s in sigmas}
    if model.law != "transparent" and not model.ir_regular:
        raise DivergenceError(f"E(f) diverges for the {model.describe()} mirror")

    def rows(sigma):
        vals = _map(_energy_point, [(wp, model, quad) for wp in packets[sigma]], args.workers)
        return zip(k0s, vals)
    return _blocks("k0,E", sigmas, rows, args.precision)


def run_variance(args):
    model = mirror_from_args(args)
    quad = quad_from_args(args)
    sigmas = parse_list(args.sigma)
    v0s = parse_grid(args.v0_grid)
    packets = {s: [Wavepacket(args.k0, s, v) for v in v0s] for s in sigmas}

    def rows(sigma):
        vals = _map(_variance_point, [(wp, model, quad) for wp in packets[sigma]], args.workers)
        return [(v, vm, ps) for v, (vm, ps) in zip(v0s, vals)]
    return _blocks("aV0,var_min,phi_s", sigmas, rows, args.precision)


def run_spectrum(args):
    model = mirror_from_args(args)
    omegas = parse_grid(args.omega_grid)
    if min(omegas) <= 0:
        raise DomainError("omega grid must be strictly positive")
    vals = _map(_spectrum_point, [(w, model) for w in omegas], args.workers)
    lines = ["Omega,n"]
    lines += [f"{_fmt(w, args.precision)},{_fmt(n, args.precision)}" for w, n in zip(omegas, vals)]
    return lines


def run_approx_check(args):
    quad = quad_from_args(args)
    eps = parse_list(args.epsilons)
    wp = Wavepacket(args.k0, parse_list(args.sigma)[0], args.v0)
    for e in eps:
        if e <= 0:
            raise DomainError("cutoffs must be > 0")
    numeric = _map(_flux_point, [(wp, MirrorModel.sharp(e), quad) for e in eps], args.workers)
    lines = ["epsilon,N_numeric,N_approx,rel_err"]
    for e, n in zip(eps, numeric):
        approx = detector.approx_particle_number(wp, e)
        rel = abs(approx - n) / abs(n) if n else math.inf
        lines.append(",".join(_fmt(v, args.precision) for v in (e, n, approx, rel)))
    return lines


def run_validate(args, out=None):
    from .validation import run_checks
    out = out or sys.stdout
    checks = run_checks(perturb=args.perturb, n_circuits=args.circuits)
    for c in checks:
        print(c.line(), file=out)
    failed = sum(not c.passed for c in checks)
    print(f"{len(checks) - failed}/{len(checks)} checks passed", file=out)
    return EXIT_OK if failed == 0 else EXIT_VALIDATION


COMMANDS = {
    "spectrum": run_spectrum,
    "flux": run_flux,
    "energy": run_energy,
    "variance": run_variance,
    "approx-check": run_approx_check,
}


def write_csv(lines, path):
    """Write atomically: either the complete file appears or nothing does."""
    text = "\n".join(lines) + "\n"
    if path is None:
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".accel-mirror-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def main(argv=None):
    try:
        args = parse_args(argv)
        if args.command == "validate":
            return run_validate(args)
        if args.precision < 1 or args.workers < 1:
            raise ConfigError("precision and workers must be >= 1")
        lines = COMMANDS[args.command](args)
        write_csv(lines, args.output)
    except (ConfigError, DomainError) as exc:
        print(f"accel-mirror: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (QuadratureError, DivergenceError) as exc:
        print(f"accel-mirror: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
