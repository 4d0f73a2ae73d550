"""``orbisect`` command line.

Exit codes: verdict commands return 0 (ADMITS), 2 (OBSTRUCTED),
3 (INCONCLUSIVE) or 4 (HYPOTHESIS_VIOLATED); other commands return 0.
Invalid input returns 1 and command-line usage errors return 64.
"""
from __future__ import annotations

import argparse
import sys
from typing import Sequence

from . import __version__, report
from .bundles import is_good, sector_bundle_data
from .config import CapExceeded
from .obstruct import auto_gamma, verdict_closed, verdict_open, verdict_with_boundary
from .sectors import SIMPLICIAL, compute_sectors
from .specio import FORMATS, SpecDocument, SpecError, gamma_from_string, load_spec

EXIT_INPUT = 1
EXIT_USAGE = 64

COMMANDS = ("sectors", "inertia", "multisectors", "obstruct", "obstruct-boundary", "obstruct-open", "bundle-check", "poset")


class _Parser(argparse.ArgumentParser):
    # exit status 2 is taken by OBSTRUCTED
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="orbisect", description="Gamma-sectors and vector-field obstructions for finite quotient orbifolds.")
    p.add_argument("--version", action="version", version=f"orbisect {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_, before=None):
        sp = sub.add_parser(name, help=help_)
        if before is not None:
            sp.add_argument(before, type=int, help="number of free generators")
        sp.add_argument("spec", help="spec document (JSON)")
        sp.add_argument("--format", choices=FORMATS, default=None, help="output format (default: table)")
        sp.add_argument("--subdivisions", type=int, default=None, help="subdivision passes for irregular actions")
        return sp

    for name, help_ in [
        ("sectors", "sector table for the spec's gamma (default auto)"),
        ("obstruct", "closed-orbifold verdict"),
        ("obstruct-boundary", "verdict for an orbifold with boundary"),
        ("obstruct-open", "verdict for the complement of the removed subcomplex"),
        ("bundle-check", "good/bad data of the spec's bundle on every sector"),
        ("poset", "order on sectors (DOT by default)"),
    ]:
        sp = add(name, help_)
        sp.add_argument("--gamma", default=None, help="auto, free:D, cyclic:N or pres:R:w1;w2")
        if name == "obstruct-open":
            sp.add_argument("--removed", default=None, help="JSON list of removed simplices (overrides the spec)")
    add("inertia", "sectors for Gamma = Z")
    add("multisectors", "sectors for the free group on k generators", before="k")
    return p


def _resolve_gamma(args, doc: SpecDocument):
    if getattr(args, "gamma", None) is not None:
        g = gamma_from_string(args.gamma)
    elif doc.gamma is not None:
        g = doc.gamma
    else:
        g = "auto"
    if g == "auto":
        return auto_gamma(doc.spec, doc.caps)
    return g


def _emit(text: str, out) -> None:
    out.write(text)


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        doc = load_spec(args.spec)
        if args.subdivisions is not None:
            if args.subdivisions < 0:
                raise SpecError("must be nonnegative", "--subdivisions")
            object.__setattr__(doc.spec, "subdivisions", args.subdivisions)
        fmt = args.format or doc.output_format or ("dot" if args.command == "poset" else "table")
        return _dispatch(args, doc, fmt, out)
    except (SpecError, OSError) as e:
        err.write(f"orbisect: {e}\n")
        return EXIT_INPUT
    except CapExceeded as e:
        err.write(f"orbisect: {e}\n")
        return EXIT_INPUT
    except ValueError as e:
        err.write(f"orbisect: {e}\n")
        return EXIT_INPUT


def _dispatch(args, doc: SpecDocument, fmt: str, out) -> int:
    spec, caps = doc.spec, doc.caps
    cmd = args.command
    if cmd in ("sectors", "inertia", "multisectors", "poset"):
        if cmd == "inertia":
            gamma = gamma_from_string("free:1")
        elif cmd == "multisectors":
            if args.k < 0:
                raise SpecError("k must be nonnegative", "k")
            gamma = gamma_from_string(f"free:{args.k}")
        else:
            gamma = _resolve_gamma(args, doc)
        table = compute_sectors(spec, gamma, caps)
        if fmt == "json":
            _emit(report.dumps(report.table_json(table)), out)
        elif fmt == "dot":
            _emit(report.poset_dot(table), out)
        else:
            _emit(report.table_text(table), out)
        return 0
    if cmd == "bundle-check":
        if doc.bundle is None:
            raise SpecError("spec has no bundle block", "bundle")
        table = compute_sectors(spec, _resolve_gamma(args, doc), caps)
        rows = sector_bundle_data(doc.bundle, table)
        good = is_good(doc.bundle)
        if fmt == "json":
            _emit(report.dumps(report.bundle_json(table, doc.bundle, rows, good)), out)
        elif fmt == "dot":
            _emit(report.poset_dot(table), out)
        else:
            _emit(report.bundle_text(table, doc.bundle, rows, good), out)
        return 0
    if cmd == "obstruct":
        if spec.has_boundary:
            raise SpecError("spec has a boundary; use obstruct-boundary", "space.boundary")
        v = verdict_closed(spec, _resolve_gamma(args, doc), caps)
    elif cmd == "obstruct-boundary":
        if not spec.has_boundary:
            raise SpecError("spec has no boundary; use obstruct", "space.boundary")
        v = verdict_with_boundary(spec, _resolve_gamma(args, doc), caps)
    else:
        if spec.model != SIMPLICIAL:
            raise SpecError("obstruct-open needs a simplicial space", "space.type")
        removed = doc.removed
        if args.removed is not None:
            import json

            try:
                removed = [tuple(s) for s in json.loads(args.removed)]
            except (json.JSONDecodeError, TypeError):
                raise SpecError("expected a JSON list of vertex lists", "--removed") from None
        if removed is None:
            raise SpecError("no removed subcomplex given", "removed")
        gamma = None if (args.gamma is None and doc.gamma in (None, "auto")) else (
            gamma_from_string(args.gamma) if args.gamma is not None else doc.gamma
        )
        if gamma == "auto":
            gamma = None
        v = verdict_open(spec, removed, gamma, caps)
    if fmt == "json":
        _emit(report.dumps(report.verdict_json(v)), out)
    elif fmt == "dot":
        _emit(report.poset_dot(v.table), out)
    else:
        _emit(report.verdict_text(v), out)
    return v.exit_code


def main(argv: Sequence[str] | None = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
