"""ccr-forge command line.

    ccr-forge run <config.json> [--out DIR] [--strict]
    ccr-forge validate <config.json> [--strict]
    ccr-forge version

Exit codes: 0 success, 1 a numerical check failed, 2 invalid config or
violated physics precondition.
"""
import argparse
import json
import os
import sys
import time

import numpy as np

from . import __version__
from .config import ConfigError, load_json, validate
from .experiments import preflight, run_experiment, thread_count

EXIT_OK, EXIT_CHECK_FAILED, EXIT_INVALID = 0, 1, 2


def _plain(obj):
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _plain(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    return obj


def dumps_report(report):
    return json.dumps(_plain(report), sort_keys=True, indent=2, allow_nan=False) + "\n"


def format_cell(x):
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return str(int(x))
    return format(float(x), ".17g")


def format_csv(header, rows):
    lines = [",".join(header)]
    lines.extend(",".join(format_cell(x) for x in row) for row in rows)
    return "\n".join(lines) + "\n"


def _write(path, text):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _load(path, strict):
    cfg, warnings = validate(load_json(path), strict=strict)
    for w in warnings:
        print(f"warning: {w}", file=sys.stderr)
    return cfg


def cmd_run(args):
    start = time.perf_counter()
    try:
        thread_count()
        cfg = _load(args.config, args.strict)
        if args.out:
            cfg.output_dir = args.out
        results, checks, tables = run_experiment(cfg)
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ArithmeticError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    passed = all(checks.values())
    report = {
        "artifact": "ccr-forge",
        "version": __version__,
        "experiment": cfg.experiment,
        "config": cfg.echo(),
        "tolerances": cfg.tolerances.as_dict(),
        "results": results,
        "checks": checks,
        "passed": passed,
    }
    os.makedirs(cfg.output_dir, exist_ok=True)
    for name, (header, rows) in sorted(tables.items()):
        _write(os.path.join(cfg.output_dir, name), format_csv(header, rows))
    _write(os.path.join(cfg.output_dir, "report.json"), dumps_report(report))
    # wall time lives outside report.json so reports stay byte-reproducible
    _write(os.path.join(cfg.output_dir, "timing.json"),
           dumps_report({"wall_time_s": time.perf_counter() - start}))
    for name, ok in checks.items():
        print(f"{'PASS' if ok else 'FAIL'}  {name}")
    return EXIT_OK if passed else EXIT_CHECK_FAILED


def cmd_validate(args):
    try:
        cfg = _load(args.config, args.strict)
        preflight(cfg)
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    print(f"ok: {cfg.experiment}")
    return EXIT_OK


def cmd_version(args):
    print(f"ccr-forge {__version__}")
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="ccr-forge", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("run", help="run the experiment described by a JSON config")
    p.add_argument("config")
    p.add_argument("--out", help="output directory (overrides output_dir in the config)")
    p.add_argument("--strict", action="store_true", help="reject unknown config keys")
    p.set_defaults(func=cmd_run)
    p = sub.add_parser("validate", help="check a config without running it")
    p.add_argument("config")
    p.add_argument("--strict", action="store_true", help="reject unknown config keys")
    p.set_defaults(func=cmd_validate)
    p = sub.add_parser("version", help="print the version")
    p.set_defaults(func=cmd_version)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
