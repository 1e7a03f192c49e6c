"""Command line: compute, verify, render, query, validate, families."""
import argparse
import json
import logging
import os
import sys
import traceback
from typing import List, Optional, Tuple

from .documents import (
    is_report,
    parse_complex,
    parse_report,
    serialize_report,
    trace_report,
)
from .errors import KronholmError
from .families import FAMILIES, as_stream, resolve_family
from .log import add_log_item, setup_logging
from .modules import FreeModule
from .pipeline import CellComplexSpec, compute, query_finite_type, validate, verify_trace
from .render import render_ascii, render_png, render_svg
from .settings import AppConfig, load_settings, resolve_margin, resource_path, svg_unit

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INPUT = 2
EXIT_NOT_REALIZABLE = 3


def _read_text(path: str) -> str:
    if not os.path.exists(path) and os.path.exists(resource_path(path)):
        path = resource_path(path)  # bundled corpus in the one-file build
    try:
        with open(path, "r", encoding="utf-8") as f:
            return f.read()
    except OSError as e:
        raise KronholmError(f"cannot read {path}: {e.strerror}")


def _load_complex(path: str) -> CellComplexSpec:
    return parse_complex(_read_text(path))


def _write(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as f:
            f.write(text)
        print(f"✅ Đã ghi {out}")
    else:
        sys.stdout.write(text)


def cmd_compute(args, settings) -> int:
    spec = _load_complex(args.file)
    trace = compute(spec, algebraic=args.algebraic)
    verified, window = None, None
    if args.verify:
        check = verify_trace(trace, resolve_margin(args.margin, settings))
        verified, window = check.ok, check.window
    _write(serialize_report(trace_report(trace, verified, window)), args.out)
    if trace.aborted_at is not None:
        add_log_item(f"⚠️ stage {trace.aborted_at} aborted (not realizable)", level="warning")
    if verified is False:
        return EXIT_VERIFY_FAILED
    return EXIT_OK


def cmd_verify(args, settings) -> int:
    spec = _load_complex(args.file)
    margin = resolve_margin(args.margin, settings)
    trace = compute(spec, algebraic=args.algebraic)
    check = verify_trace(trace, margin)
    print(f"📌 {spec.name}: {len(trace.stages)} stage(s), margin {margin}")
    for st, sc in zip(trace.stages, check.stages):
        mark = "✅" if sc.ok else "❌"
        extra = ""
        if sc.localization_ok is not None:
            extra = ", localization ok" if sc.localization_ok else ", localization FAILED"
        print(f"{mark} stage {sc.index} {st.cell.deg} {st.result.case.value}: "
              f"{sc.discrepancies} discrepancy(ies){extra}")
    gens = " ".join(f"{g.label}{g.deg}" for g in trace.final.gens) or "(zero)"
    print(f"📌 final: {gens}")
    if trace.aborted_at is not None:
        print(f"⚠️ stopped at stage {trace.aborted_at}")
    return EXIT_OK if check.ok else EXIT_VERIFY_FAILED


def _module_for_render(args) -> Tuple[FreeModule, str]:
    text = _read_text(args.file)
    try:
        data = json.loads(text)
    except json.JSONDecodeError:
        data = None
    if is_report(data):
        report = parse_report(text)
        if args.stage == "final":
            return report.generators, f"{report.name}: final"
        index = int(args.stage)
        for st in report.stages:
            if st.index == index:
                return st.basis, f"{report.name}: stage {index}"
        raise KronholmError(f"report has no stage {index}")
    spec = parse_complex(text)
    trace = compute(spec, algebraic=args.algebraic)
    if args.stage == "final":
        return trace.final, f"{spec.name}: final"
    index = int(args.stage)
    if not 1 <= index <= len(trace.stages):
        raise KronholmError(f"stage must be between 1 and {len(trace.stages)}, got {index}")
    return trace.stages[index - 1].result.new_module, f"{spec.name}: stage {index}"


def cmd_render(args, settings) -> int:
    module, title = _module_for_render(args)
    if args.format == "ascii":
        _write(render_ascii(module, title), args.out)
    elif args.format == "svg":
        _write(render_svg(module, title, unit=svg_unit(settings)), args.out)
    else:
        if not args.out:
            raise KronholmError("--format png needs --out")
        render_png(module, args.out, title)
        print(f"✅ Đã ghi {args.out}")
    return EXIT_OK


def cmd_query(args, settings) -> int:
    try:
        source = resolve_family(args.target)
    except KronholmError:
        source = _load_complex(args.target)
    value = query_finite_type(as_stream(source), args.p, args.q, truncation=args.truncation)
    print(value)
    return EXIT_OK


def cmd_validate(args, settings) -> int:
    spec = parse_complex(_read_text(args.file), check=False)
    violations = validate(spec)
    if not violations:
        print(f"✅ {spec.name}: {len(spec.cells)} cell(s), no violations")
        return EXIT_OK
    for v in violations:
        print(f"❌ {v}")
    return EXIT_INPUT


def cmd_families(args, settings) -> int:
    for name, text in FAMILIES.items():
        print(f"{name:<14} {text}")
    return EXIT_OK


def _stage_arg(value: str) -> str:
    if value == "final":
        return value
    try:
        if int(value) >= 1:
            return value
    except ValueError:
        pass
    raise argparse.ArgumentTypeError("stage must be a positive integer or 'final'")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=AppConfig.APP_NAME,
        description="Exact RO(C2)-graded cohomology of Rep(C2)-complexes as free M2-modules.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {AppConfig.APP_VERSION}")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="more log output (-vv for debug)")
    parser.add_argument("--no-color", action="store_true", help="plain log lines")
    parser.add_argument("--config", help="JSON settings file (margin, svg_unit)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="run the pipeline and emit a JSON report")
    p.add_argument("file")
    p.add_argument("--out")
    p.add_argument("--verify", action="store_true", help="run the oracle and record the result")
    p.add_argument("--margin", type=int)
    p.add_argument("--algebraic", action="store_true", help="abort a non-realizable stage instead of failing")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("verify", help="check every stage against the LES oracle")
    p.add_argument("file")
    p.add_argument("--margin", type=int)
    p.add_argument("--algebraic", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("render", help="draw a cone chart")
    p.add_argument("file", help="complex document or report")
    p.add_argument("--format", choices=("ascii", "svg", "png"), default="ascii")
    p.add_argument("--stage", type=_stage_arg, default="final")
    p.add_argument("--out")
    p.add_argument("--algebraic", action="store_true")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("query", help="dimension of one bidegree, finite-type complexes included")
    p.add_argument("target", help="family name (see 'families') or complex document")
    p.add_argument("-p", type=int, required=True)
    p.add_argument("-q", type=int, required=True)
    p.add_argument("--truncation", type=int, help="fixed-set bound i (default max(p, p-q-2)+1)")
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("validate", help="list problems in a complex document")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("families", help="list built-in complexes")
    p.set_defaults(func=cmd_families)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_INPUT
    level = logging.WARNING
    if args.verbose == 1:
        level = logging.INFO
    elif args.verbose >= 2:
        level = logging.DEBUG
    setup_logging(level, color=False if args.no_color else None)
    try:
        settings = load_settings(args.config)
        return args.func(args, settings)
    except KronholmError as e:
        print(f"error: {e.kind}: {e}", file=sys.stderr)
        return e.exit_code
    except Exception as e:
        print(f"Error: {e}", file=sys.stderr)
        traceback.print_exc()
        return EXIT_VERIFY_FAILED


if __name__ == "__main__":
    sys.exit(main())
