"""Command line entry point: build, verify, export."""

from __future__ import annotations

import argparse
import json
import logging
import sys

from . import __version__
from .errors import CayleyError, ConfigError
from .report import CHECK_NAMES, SuiteConfig, export, run_suite, summary

log = logging.getLogger("extraspecial_cayley")


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="escay", description="Cayley graphs on the extraspecial group of order p^3.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="build the Cayley graph and print a summary")
    b.add_argument("-p", type=int, required=True)
    b.add_argument("--format", choices=["json", "dot"], default=None, help="also write the graph in this format")
    b.add_argument("-o", "--output", default=None)

    v = sub.add_parser("verify", help="run the verification suite")
    v.add_argument("-p", type=int, required=True)
    v.add_argument("--checks", default="all", help="comma separated names or prefixes, or 'all'")
    v.add_argument("--skip-aut-search", action="store_true")
    v.add_argument("--allow-large-aut-search", action="store_true", help="run the automorphism search for p >= 7")
    v.add_argument("--timeout", type=float, default=120.0, help="per-check soft timeout in seconds (0 disables)")
    v.add_argument("--json", dest="json_path", default=None, help="write the report as JSON")
    v.add_argument("--list", action="store_true", help="list check names and exit")

    e = sub.add_parser("export", help="write Γ, Σ or Γ/<c> to a file")
    e.add_argument("-p", type=int, required=True)
    e.add_argument("--graph", choices=["gamma", "sigma", "quotient"], required=True)
    e.add_argument("--format", choices=["json", "dot"], default="json")
    e.add_argument("-o", "--output", default=None)
    return ap


def _checks(arg: str):
    if arg.strip() == "all":
        return "all"
    names = [c.strip() for c in arg.split(",") if c.strip()]
    for c in names:
        if not any(n == c or n.startswith(c.rstrip(".") + ".") for n in CHECK_NAMES):
            raise ConfigError(f"unknown check {c!r}")
    return names


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(message)s")
    try:
        if args.command == "build":
            config = SuiteConfig(args.p, format=args.format or "json", output=args.output)
            print(json.dumps(summary(config), indent=2, sort_keys=True))
            if args.format or args.output:
                path = export(config, "gamma")
                print(f"wrote {path}")
            return 0
        if args.command == "export":
            config = SuiteConfig(args.p, format=args.format, output=args.output)
            print(f"wrote {export(config, args.graph)}")
            return 0
        if args.list:
            print("\n".join(CHECK_NAMES))
            return 0
        config = SuiteConfig(
            args.p,
            checks=_checks(args.checks),
            skip_aut_search=args.skip_aut_search,
            allow_large_aut_search=args.allow_large_aut_search,
            timeout=args.timeout or None,
            json_path=args.json_path,
        )
        report = run_suite(config)
        for r in report.results:
            tag = "INFO" if r.informational else ("PASS" if r.passed else "FAIL")
            extra = f"  ({r.detail})" if r.detail else ""
            print(f"{tag:4}  {r.name:40} {r.seconds:8.2f}s{extra}")
        print(f"overall: {'PASS' if report.passed else 'FAIL'}  p={report.p} t={report.t}  {report.total_seconds:.1f}s")
        return 0 if report.passed else 1
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (CayleyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
