"""Command line front end.

Subcommands: construct, verify, diversity, simulate, sweep. Exit codes:
0 on success, 1 on usage or parameter errors, 2 when a verification fails.
Option precedence for the simulator: command line flags override --config
file entries, which override built-in defaults. When --seed is absent the
STBCKIT_SEED environment variable supplies the default seed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .algebra import algebra_from_json, algebra_to_json, stbc_from_json, stbc_to_json
from .constructions import KNOWN_CODE_IDS, build_code
from .optimality import min_det_diversity, verify_code
from .simulate import (
    SimConfig,
    resolve_code_params,
    diversity_slope,
    make_constellation,
    point_to_json,
    run_ber,
    write_ber_csv,
    write_sidecar,
    write_sweep_csv,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFY_FAILED = 2
SEED_ENV = "STBCKIT_SEED"


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad usage by default; status 2 is
    # reserved for verification failures here, so remap usage errors to 1.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_code_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--code", choices=KNOWN_CODE_IDS, help="catalog code id (default cyclic)")
    p.add_argument("--n", type=int, help="block size for the cyclic family (default 2)")
    p.add_argument("--t-arg", type=float, help="phase of t in radians (t on the unit circle)")
    p.add_argument("--t-re", type=float, help="real part of t (give with --t-im)")
    p.add_argument("--t-im", type=float, help="imaginary part of t (give with --t-re)")
    p.add_argument("--delta-arg", type=float, help="phase of delta in radians")
    p.add_argument("--x-arg", type=float, help="biquadratic: phase of x in radians")
    p.add_argument("--y-arg", type=float, help="biquadratic: phase of y in radians")
    p.add_argument("--delta1-arg", type=float, help="biquadratic: phase of delta1 in radians")
    p.add_argument("--delta2-arg", type=float, help="biquadratic: phase of delta2 in radians")


def _code_params_from_args(args) -> dict:
    """Collect JSON-friendly code parameters from parsed flags."""
    params: dict = {}
    if args.n is not None:
        params["n"] = args.n
    if args.t_arg is not None and (args.t_re is not None or args.t_im is not None):
        raise ValueError("give t either as --t-arg or as --t-re/--t-im, not both")
    if args.t_arg is not None:
        params["t_arg"] = args.t_arg
    elif args.t_re is not None or args.t_im is not None:
        if args.t_re is None or args.t_im is None:
            raise ValueError("--t-re and --t-im must be given together")
        params["t_re"] = args.t_re
        params["t_im"] = args.t_im
    for flag in ("delta_arg", "x_arg", "y_arg", "delta1_arg", "delta2_arg"):
        value = getattr(args, flag)
        if value is not None:
            params[flag] = value
    return params




def _build_from_args(args):
    params = _code_params_from_args(args)
    code_id = args.code or "cyclic"
    return code_id, build_code(code_id, **resolve_code_params(params))


def _write_or_print(doc: dict, out: str | None) -> None:
    text = json.dumps(doc, indent=2) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_construct(args) -> int:
    code_id, (code, spec) = _build_from_args(args)
    doc = {
        "code": code_id,
        "algebra": None if spec is None else algebra_to_json(spec),
        "stbc": stbc_to_json(code),
    }
    _write_or_print(doc, args.out)
    if args.out:
        print(f"wrote {code_id} (n={code.n}, k={code.k}) to {args.out}")
    return EXIT_OK


def cmd_verify(args) -> int:
    if getattr(args, "infile", None):
        doc = json.loads(Path(args.infile).read_text())
        code = stbc_from_json(doc["stbc"])
        spec = None if doc.get("algebra") is None else algebra_from_json(doc["algebra"])
        code_id = doc.get("code", "loaded")
    else:
        code_id, (code, spec) = _build_from_args(args)
    report = verify_code(code, spec, tol=args.tol)
    _write_or_print({"code": code_id, **report.to_json()}, args.out)
    verdict = "PASS" if report.ok else "FAIL"
    print(f"{code_id}: {verdict} (tol={args.tol:g})")
    return EXIT_OK if report.ok else EXIT_VERIFY_FAILED


def cmd_diversity(args) -> int:
    code_id, (code, _) = _build_from_args(args)
    constellation = make_constellation(args.constellation)
    report = min_det_diversity(code, constellation.points)
    _write_or_print({"code": code_id, **report.to_json()}, args.out)
    state = "fully diverse" if report.fully_diverse else "NOT fully diverse"
    print(f"{code_id}: min |det| = {report.min_det_modulus:.6g} over "
          f"{report.pairs_examined} difference vectors ({state})")
    return EXIT_OK


def _seed_default() -> int:
    env = os.environ.get(SEED_ENV)
    return int(env) if env else 0


def _sim_config(args, parser: argparse.ArgumentParser) -> SimConfig:
    """Merge defaults, --config file entries, and explicit flags."""
    doc: dict = {}
    if args.config:
        doc = json.loads(Path(args.config).read_text())
        if not isinstance(doc, dict):
            raise ValueError("--config must contain a JSON object")
    params = dict(doc.get("code_params", {}))
    params.update(_code_params_from_args(args))
    if args.code:
        doc["code"] = args.code
    if "code" not in doc:
        doc["code"] = "cyclic"
    doc["code_params"] = params
    if args.m is not None:
        doc["m"] = args.m
    if args.constellation is not None:
        doc["constellation"] = args.constellation
        doc.setdefault("order", make_constellation(args.constellation).order)
    if args.snr_start is not None or args.snr_stop is not None or args.snr_step is not None:
        if None in (args.snr_start, args.snr_stop, args.snr_step):
            parser.error("--snr-start, --snr-stop and --snr-step must be given together")
        if args.snr_step <= 0:
            raise ValueError("--snr-step must be positive")
        count = int(round((args.snr_stop - args.snr_start) / args.snr_step)) + 1
        grid = [args.snr_start + i * args.snr_step for i in range(count)]
        grid = [g for g in grid if g <= args.snr_stop + 1e-9]
        doc["snr_grid_db"] = grid
    if args.trials is not None:
        doc["trials_per_point"] = args.trials
    if args.seed is not None:
        doc["seed"] = args.seed
    elif "seed" not in doc:
        doc["seed"] = _seed_default()
    if args.slope_fit_points is not None:
        doc["slope_fit_points"] = args.slope_fit_points
    return SimConfig.from_json(doc)


def _slope_or_none(points, fit_count):
    try:
        return diversity_slope(points, fit_count)
    except ValueError:
        return None


def cmd_simulate(args, parser) -> int:
    cfg = _sim_config(args, parser)
    points = run_ber(cfg, workers=args.workers)
    slope = _slope_or_none(points, cfg.slope_fit_points)
    if args.format == "json":
        doc = {
            "config": cfg.to_json(),
            "points": [point_to_json(p) for p in points],
            "diversity_slope": slope,
        }
        _write_or_print(doc, args.out)
    else:
        if not args.out:
            parser.error("--out is required with --format csv")
        write_ber_csv(points, args.out)
        write_sidecar(cfg, slope, Path(args.out).with_suffix(".json"))
    slope_text = "n/a" if slope is None else f"{slope:.3f}"
    print(f"diversity slope estimate: {slope_text} "
          f"(fit over last {cfg.slope_fit_points} nonzero points)")
    return EXIT_OK


def cmd_sweep(args, parser) -> int:
    code_ids = [c.strip() for c in args.codes.split(",") if c.strip()]
    if not code_ids:
        parser.error("--codes needs at least one code id")
    cfg = _sim_config(args, parser)
    # Build every requested code first so a bad id aborts before any
    # simulation time is spent.
    for code_id in code_ids:
        build_code(code_id, **resolve_code_params(dict(cfg.code_params)))
    rows = []
    slopes: dict[str, float | None] = {}
    for code_id in code_ids:
        cfg_i = SimConfig.from_json({**cfg.to_json(), "code": code_id})
        points = run_ber(cfg_i, workers=args.workers)
        slopes[code_id] = _slope_or_none(points, cfg.slope_fit_points)
        rows.extend((code_id, p) for p in points)
    if not args.out:
        parser.error("--out is required for sweep")
    write_sweep_csv(rows, args.out)
    write_sidecar(cfg, slopes, Path(args.out).with_suffix(".json"))
    for code_id in code_ids:
        slope = slopes[code_id]
        slope_text = "n/a" if slope is None else f"{slope:.3f}"
        print(f"{code_id}: diversity slope estimate {slope_text}")
    return EXIT_OK


def _add_sim_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--m", type=int, help="receive antennas (default 4)")
    p.add_argument("--constellation", choices=("qpsk",), help="signal set (default qpsk)")
    p.add_argument("--snr-start", type=float, help="first SNR point in dB")
    p.add_argument("--snr-stop", type=float, help="last SNR point in dB (inclusive)")
    p.add_argument("--snr-step", type=float, help="SNR spacing in dB")
    p.add_argument("--trials", type=int, help="frames per SNR point (default 10000)")
    p.add_argument("--seed", type=int, help=f"base seed (default ${SEED_ENV} or 0)")
    p.add_argument("--slope-fit-points", type=int, help="points in the slope fit (default 3)")
    p.add_argument("--workers", type=int, default=1, help="worker processes (default 1)")
    p.add_argument("--config", help="JSON file with simulator settings")
    p.add_argument("--format", choices=("csv", "json"), default="csv", help="output format")
    p.add_argument("--out", help="output path (CSV gets a .json sidecar)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="stbckit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", parents=[], help="build a code and write its data as JSON")
    _add_code_options(p)
    p.add_argument("--out", help="output JSON path (stdout when omitted)")
    p.set_defaults(handler=lambda args, parser: cmd_construct(args))

    p = sub.add_parser("verify", help="run the optimality checks")
    _add_code_options(p)
    p.add_argument("--in", dest="infile", help="verify a construct output file instead of building")
    p.add_argument("--tol", type=float, default=1e-9, help="residual tolerance (default 1e-9)")
    p.add_argument("--out", help="report JSON path (stdout when omitted)")
    p.set_defaults(handler=lambda args, parser: cmd_verify(args))

    p = sub.add_parser("diversity", help="exhaustive minimum determinant over a constellation")
    _add_code_options(p)
    p.add_argument("--constellation", choices=("qpsk",), default="qpsk")
    p.add_argument("--out", help="report JSON path (stdout when omitted)")
    p.set_defaults(handler=lambda args, parser: cmd_diversity(args))

    p = sub.add_parser("simulate", help="Monte Carlo BER over an SNR grid")
    _add_code_options(p)
    _add_sim_options(p)
    p.set_defaults(handler=cmd_simulate)

    p = sub.add_parser("sweep", help="simulate several codes with one shared setup")
    p.add_argument("--codes", required=True, help="comma separated code ids")
    _add_code_options(p)
    _add_sim_options(p)
    p.set_defaults(handler=cmd_sweep)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.handler(args, parser)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
