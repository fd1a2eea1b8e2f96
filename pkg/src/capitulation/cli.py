"""Command-line entry point: ``verify --min P --max Q [options]``."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

import yaml

from . import __version__
from .errors import UsageError
from .verifier import CASES, CHECK_FAMILIES, compare_golden, summarize, sweep, to_csv, to_json

log = logging.getLogger("capitulation")

DEFAULTS = {
    "min": None,
    "max": None,
    "case": "all",
    "checks": "all",
    "format": "csv",
    "out": None,
    "jobs": 1,
    "golden": None,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="verify",
        description="Check the 2-class field tower and capitulation statements for "
                    "k = Q(sqrt 2p, i) over primes p = 1 mod 8.",
    )
    # defaults are None so that config-file values can fill the gaps
    ap.add_argument("--min", type=int, help="smallest p to consider (>= 17)")
    ap.add_argument("--max", type=int, help="largest p to consider")
    ap.add_argument("--case", choices=CASES + ("all",), help="keep only primes of this case")
    ap.add_argument("--checks", choices=("all",) + tuple(CHECK_FAMILIES), help="check family")
    ap.add_argument("--format", choices=("csv", "json"), help="output format (default csv)")
    ap.add_argument("--out", help="write output here instead of stdout")
    ap.add_argument("--jobs", type=int, help="worker processes (default 1)")
    ap.add_argument("--golden", help="CSV fixture whose rows must match the output")
    ap.add_argument("--config", help="YAML file with the same keys as the flags")
    ap.add_argument("-v", "--verbose", action="store_true")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    return ap


def load_config(path: str) -> dict:
    with open(path) as fh:
        data = yaml.safe_load(fh) or {}
    if not isinstance(data, dict):
        raise UsageError(f"config {path} must be a mapping")
    data = {k.replace("-", "_"): v for k, v in data.items()}
    unknown = set(data) - set(DEFAULTS)
    if unknown:
        raise UsageError(f"unknown config keys: {', '.join(sorted(unknown))}")
    return data


def resolve(args: argparse.Namespace) -> dict:
    """Merge defaults, config file and flags; flags win."""
    opts = dict(DEFAULTS)
    if args.config:
        opts.update(load_config(args.config))
    for key in DEFAULTS:
        val = getattr(args, key)
        if val is not None:
            opts[key] = val
    if opts["min"] is None or opts["max"] is None:
        raise UsageError("--min and --max are required (on the command line or in --config)")
    if opts["case"] not in CASES + ("all",):
        raise UsageError(f"bad case {opts['case']!r}")
    if opts["checks"] not in ("all",) + tuple(CHECK_FAMILIES):
        raise UsageError(f"bad checks {opts['checks']!r}")
    if opts["format"] not in ("csv", "json"):
        raise UsageError(f"bad format {opts['format']!r}")
    return opts


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        opts = resolve(args)
        result = sweep(int(opts["min"]), int(opts["max"]), opts["case"], opts["checks"],
                       int(opts["jobs"]))
        golden_text = Path(opts["golden"]).read_text() if opts["golden"] else None
    except (UsageError, OSError, yaml.YAMLError, ValueError) as exc:
        print(f"verify: error: {exc}", file=sys.stderr)
        return 2

    csv_text = to_csv(result)
    text = csv_text if opts["format"] == "csv" else to_json(result)
    if opts["out"]:
        Path(opts["out"]).write_text(text)
    else:
        sys.stdout.write(text)

    counts = summarize(result.results)
    log.info("%d primes, %d passed, %d failed, %d skipped",
             counts["primes"], counts["pass"], counts["fail"], counts["skip"])
    status = 0 if counts["fail"] == 0 else 1
    for _, rep in result.results:
        for c in rep.checks:
            if c.status == "fail":
                print(f"FAIL p={rep.p} {c.id} ({c.anchor}): {c.witness}", file=sys.stderr)
    if golden_text is not None:
        diffs = compare_golden(csv_text, golden_text)
        for d in diffs:
            print(f"golden mismatch: {d}", file=sys.stderr)
        if diffs:
            status = 1
    return status


if __name__ == "__main__":
    sys.exit(main())
