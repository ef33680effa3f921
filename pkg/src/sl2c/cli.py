"""Command-line front end.

    sl2c spectrum --scarf --v1 2 --v2 3 --out s.json
    sl2c invert --morse-general --v1r 0 --v1i 2 --v2r 4 --v2i 0
    sl2c scan --scarf --v1 2 --v2-range 1.5:3.0 --out scan.csv
    sl2c verify --morse-param --a 1 --b 1 --gamma 3 --delta 3

Exit codes: 0 success, 2 invalid input, 3 eigensolver or bracketing failure.
"""

import argparse
import csv
import datetime as dt
import io
import json
import math
import sys
from dataclasses import dataclass

from sl2c.errors import InvalidStrengths, NoConvergence, NotBracketed, SingularPotential
from sl2c.grid import GridSpec
from sl2c.numerics import default_grid, grid_eigenvalues, match_spectra, scan_critical
from sl2c.potentials import MorseGeneral, MorseParametrized, PoschlTellerPT, ScarfPT
from sl2c.spectra import invert_for, series_for

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_NUMERIC = 3

SCAN_GRID = GridSpec(-20.0, 20.0, 2001)


@dataclass
class JobConfig:
    command: str
    strengths: object
    grid: GridSpec = None
    levels: int = 10
    tol: float = 1e-3
    out: str = None
    fmt: str = "json"
    reproducible: bool = False
    v2_range: tuple = None
    family: object = None
    points: int = 16
    threshold: float = 1e-5
    bisect_tol: float = 1e-4


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        flags = ", ".join("--" + n.replace("_", "-") for n in missing)
        raise InvalidStrengths(f"{args.variant} needs {flags}")
    return [getattr(args, n) for n in names]


def _family(args):
    """Strengths constructor ``(v1, v2) -> PhysicalStrengths`` for the PT-symmetric variants."""
    if args.variant == "scarf":
        return ScarfPT
    gamma = math.pi / 8 if args.gamma is None else args.gamma
    return lambda v1, v2: PoschlTellerPT(v1, v2, gamma, args.c)


def _strengths(args):
    if args.variant in ("scarf", "pt2"):
        return _family(args)(*_need(args, "v1", "v2"))
    if args.variant == "morse-general":
        return MorseGeneral(*_need(args, "v1r", "v1i", "v2r", "v2i"))
    return MorseParametrized(*_need(args, "a", "b", "gamma", "delta"))


def _parse_range(text):
    parts = text.split(":")
    if len(parts) != 2:
        raise InvalidStrengths(f"--v2-range must look like lo:hi, got {text!r}")
    lo, hi = float(parts[0]), float(parts[1])
    if not lo < hi:
        raise InvalidStrengths(f"--v2-range needs lo < hi, got {text!r}")
    return lo, hi


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    variant = common.add_mutually_exclusive_group(required=True)
    variant.add_argument("--scarf", dest="variant", action="store_const", const="scarf",
                         help="-V1 sech^2 x - i V2 sech x tanh x")
    variant.add_argument("--pt2", dest="variant", action="store_const", const="pt2",
                         help="V1 cosech^2 tau - V2 cosech tau coth tau, tau = x - c - i gamma")
    variant.add_argument("--morse-general", dest="variant", action="store_const", const="morse-general",
                         help="(V1R + i V1I) e^{-2x} - (V2R + i V2I) e^{-x}")
    variant.add_argument("--morse-param", dest="variant", action="store_const", const="morse-param",
                         help="Morse in the (A, B, gamma, delta) parametrization")
    for name in ("v1", "v2", "v1r", "v1i", "v2r", "v2i", "a", "b", "delta"):
        common.add_argument("--" + name, type=float)
    common.add_argument("--gamma", type=float, help="imaginary shift (--pt2) or Morse gamma (--morse-param)")
    common.add_argument("--c", type=float, default=0.0, help="real shift for --pt2")
    common.add_argument("--grid", type=GridSpec.parse, help="xmin:xmax:n")
    common.add_argument("--levels", type=int, default=10)
    common.add_argument("--tol", type=float, default=1e-3, help="matching tolerance for verify")
    common.add_argument("--out", help="output path (stdout if omitted)")
    common.add_argument("--format", dest="fmt", choices=("json", "csv"), default=None)
    common.add_argument("--reproducible", action="store_true", help="omit the timestamp field")

    parser = argparse.ArgumentParser(prog="sl2c", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("spectrum", parents=[common], help="closed-form bound-state spectrum")
    sub.add_parser("invert", parents=[common], help="algebra labels (m, b) from strengths")
    scan = sub.add_parser("scan", parents=[common], help="exceptional-point scan in V2")
    scan.add_argument("--v2-range", required=True)
    scan.add_argument("--points", type=int, default=16)
    scan.add_argument("--threshold", type=float, default=1e-5)
    scan.add_argument("--bisect-tol", type=float, default=1e-4)
    sub.add_parser("verify", parents=[common], help="match closed-form levels to grid eigenvalues")
    return parser


# values that may start with "-" (e.g. --grid -20:20:2001)
_RANGE_FLAGS = ("--grid", "--v2-range")


def _attach_range_values(argv):
    out, it = [], iter(argv)
    for tok in it:
        if tok in _RANGE_FLAGS:
            value = next(it, None)
            out.append(tok if value is None else f"{tok}={value}")
        else:
            out.append(tok)
    return out


def parse_config(argv=None) -> JobConfig:
    """Parse and validate; raises InvalidStrengths before anything is computed."""
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_attach_range_values(argv))
    if args.levels < 1:
        raise InvalidStrengths("--levels must be at least 1")
    if not args.tol > 0:
        raise InvalidStrengths("--tol must be positive")
    fmt = args.fmt or ("csv" if args.command == "scan" else "json")
    if fmt == "csv" and args.command != "scan":
        raise InvalidStrengths("csv output is only available for scan")
    cfg = JobConfig(args.command, None, args.grid, args.levels, args.tol, args.out, fmt, args.reproducible)
    if args.command == "scan":
        if args.variant not in ("scarf", "pt2"):
            raise InvalidStrengths("scan needs --scarf or --pt2")
        cfg.v2_range = _parse_range(args.v2_range)
        cfg.points, cfg.threshold, cfg.bisect_tol = args.points, args.threshold, args.bisect_tol
        if cfg.points < 2:
            raise InvalidStrengths("--points must be at least 2")
        cfg.family = _family(args)
        # V2 is scanned; build at the upper end only to validate V1 and the shape
        cfg.strengths = cfg.family(_need(args, "v1")[0], cfg.v2_range[1])
    else:
        cfg.strengths = _strengths(args)
    return cfg


def _stamp(data: dict, cfg: JobConfig) -> dict:
    if not cfg.reproducible:
        data["generated_at"] = dt.datetime.now(dt.timezone.utc).isoformat()
    return data


def _emit(text: str, cfg: JobConfig):
    if cfg.out:
        with open(cfg.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json(data) -> str:
    return json.dumps(data, indent=2) + "\n"


def _scan_csv(result) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["v2", "gap", "max_imag", "numeric_broken", "classification"])
    for p in result.gap_curve:
        writer.writerow([repr(p.v2), repr(p.gap), repr(p.max_imag), int(p.numeric_broken), p.classification])
    return buf.getvalue()


def _scan_dict(result) -> dict:
    return {
        "v1": result.v1,
        "algebraic_critical": result.algebraic_critical,
        "numeric_critical": result.numeric_critical,
        "evaluations": result.evaluations,
    }


def run(cfg: JobConfig) -> int:
    s = cfg.strengths
    if cfg.command == "spectrum":
        _emit(_json(_stamp(series_for(s, cfg.levels).to_dict(), cfg)), cfg)
    elif cfg.command == "invert":
        _emit(_json(_stamp(invert_for(s).to_dict(), cfg)), cfg)
    elif cfg.command == "verify":
        grid = cfg.grid or default_grid(s)
        spectrum = series_for(s, cfg.levels)
        report = match_spectra(spectrum, grid_eigenvalues(s.potential, grid), cfg.tol, grid.h)
        data = report.to_dict()
        data["classification"] = spectrum.classification.value
        _emit(_json(_stamp(data, cfg)), cfg)
    elif cfg.command == "scan":
        lo, hi = cfg.v2_range
        result = scan_critical(
            s.v1, lo, hi, cfg.grid or SCAN_GRID,
            threshold=cfg.threshold, curve_points=cfg.points, bisect_tol=cfg.bisect_tol,
            family=cfg.family,
        )
        summary = _scan_dict(result)
        if cfg.fmt == "csv":
            _emit(_scan_csv(result), cfg)
            if cfg.out:
                sys.stdout.write(_json(summary))
        else:
            summary["gap_curve"] = [
                {"v2": p.v2, "gap": None if math.isnan(p.gap) else p.gap, "max_imag": p.max_imag,
                 "numeric_broken": p.numeric_broken, "classification": p.classification}
                for p in result.gap_curve
            ]
            _emit(_json(_stamp(summary, cfg)), cfg)
    else:
        raise InvalidStrengths(f"unknown command {cfg.command!r}")
    return EXIT_OK


def main(argv=None) -> int:
    try:
        cfg = parse_config(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    except (InvalidStrengths, ValueError) as exc:
        print(f"sl2c: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    try:
        return run(cfg)
    except (NoConvergence, NotBracketed) as exc:
        print(f"sl2c: error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (InvalidStrengths, SingularPotential) as exc:
        print(f"sl2c: error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
