"""Command line entry point.

    sspring check <source> --props ssp,sip,c3 --side both --method both --format json
    sspring verify <source>
    sspring fixtures list
    sspring fixtures run <name>

``<source>`` is a descriptor file, an inline JSON descriptor, or a fixture
name.  Exit codes: 0 pass, 1 property or assertion failure, 2 invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import __version__
from .config import Caps
from .descriptor import parse_descriptor
from .errors import CapExceeded, DescriptorError
from .finmod import free_module
from .fixtures import CORPUS, FIXTURES, run_fixture
from .ideals import idempotents
from .properties import METHODS, PROPERTIES, SIDED, check_property
from .ring import FiniteRing, RingDescriptor, construct
from .suites import module_lemma_suite, theorem_suite

EXIT_PASS, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def load_source(source: str, caps: Caps) -> tuple[RingDescriptor, str]:
    path = Path(source)
    if path.is_file():
        return parse_descriptor(path.read_text()), str(path)
    if source.lstrip().startswith("{"):
        return parse_descriptor(source), "inline"
    if source in FIXTURES:
        return FIXTURES[source].descriptor(caps), f"fixture:{source}"
    if source in CORPUS:
        return CORPUS[source], f"corpus:{source}"
    raise InputError(f"{source!r} is neither a descriptor file nor a fixture or corpus name")


def ring_summary(R: FiniteRing, desc: RingDescriptor, origin: str) -> dict:
    return {"source": origin, "descriptor": desc.to_dict(), "size": R.size,
            "idempotents": len(idempotents(R))}


def make_report(ring: dict, verdicts: list, theorems: list, timings: dict, caps: Caps) -> dict:
    return {"ring": ring, "verdicts": verdicts, "theorems": theorems,
            "timings": timings, "caps": caps.as_dict(), "version": __version__}


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2)
    lines = [f"# sspring report (v{report['version']})", ""]
    ring = report.get("ring")
    if ring:
        lines += [f"- source: `{ring['source']}`", f"- size: {ring['size']}",
                  f"- idempotents: {ring['idempotents']}", ""]
    if report["verdicts"]:
        lines += ["| property | side | method | holds | witness |", "|---|---|---|---|---|"]
        for v in report["verdicts"]:
            w = "" if v["holds"] else json.dumps(v["witness"])
            lines.append(f"| {v['property']} | {v['side']} | {v['method']} | {v['holds']} | {w} |")
        lines.append("")
    for suite in report["theorems"]:
        lines += [f"## {suite['subject']}", "", "| check | status | universe |", "|---|---|---|"]
        for c in suite["checks"]:
            lines.append(f"| {c['check_id']} | {c['status']} | {c['universe']} |")
        lines.append("")
    lines.append("caps: " + ", ".join(f"{k}={v}" for k, v in report["caps"].items()))
    return "\n".join(lines)


def _split(value: str, allowed, what: str) -> list[str]:
    items = [v.strip().lower() for v in value.split(",") if v.strip()]
    bad = [v for v in items if v not in allowed]
    if bad or not items:
        raise InputError(f"unsupported {what}: {', '.join(bad) or '(empty)'}; choose from {', '.join(allowed)}")
    return items


def cmd_check(args, caps: Caps) -> tuple[dict, int]:
    props = _split(args.props, PROPERTIES, "property")
    sides = ["left", "right"] if args.side == "both" else [args.side]
    methods = list(METHODS) if args.method == "both" else ["ef_criterion" if args.method == "ef" else args.method]
    desc, origin = load_source(args.source, caps)
    R = construct(desc, caps.size)
    verdicts, timings, ok = [], {}, True
    for prop in props:
        for side in (sides if prop in SIDED else ["n/a"]):
            for method in (methods if prop == "ssp" else ["definitional"]):
                key = f"{prop}/{side}" + (f"/{method}" if prop == "ssp" else "")
                start = time.perf_counter()
                try:
                    v = check_property(R, prop, side if side != "n/a" else "right", method, caps)
                except CapExceeded as exc:
                    verdicts.append({"property": prop, "side": side, "holds": None, "witness": None,
                                     "method": method, "skipped": str(exc)})
                    continue
                finally:
                    timings[key] = round(time.perf_counter() - start, 6)
                verdicts.append(v.as_dict())
                ok &= v.holds
    return make_report(ring_summary(R, desc, origin), verdicts, [], timings, caps), (EXIT_PASS if ok else EXIT_FAIL)


def cmd_verify(args, caps: Caps) -> tuple[dict, int]:
    if args.module_rank < 0:
        raise InputError("--module-rank must be non-negative")
    desc, origin = load_source(args.source, caps)
    R = construct(desc, caps.size)
    timings = {}
    start = time.perf_counter()
    ring_report = theorem_suite(R, caps, subject=f"ring {origin}")
    timings["theorem_suite"] = round(time.perf_counter() - start, 6)
    modules = [(f"free({n})", free_module(R, n, caps.size)) for n in range(1, args.module_rank + 1)]
    start = time.perf_counter()
    module_report = module_lemma_suite(modules, caps, subject=f"free modules over {origin}")
    timings["module_lemma_suite"] = round(time.perf_counter() - start, 6)
    theorems = [ring_report.as_dict(), module_report.as_dict()]
    ok = ring_report.passed and module_report.passed
    return (make_report(ring_summary(R, desc, origin), [], theorems, timings, caps),
            EXIT_PASS if ok else EXIT_FAIL)


def cmd_fixtures(args, caps: Caps) -> tuple[dict, int]:
    if args.action == "list":
        listing = [{"name": f.name, "expected": f.summary} for f in FIXTURES.values()]
        return {"fixtures": listing, "version": __version__}, EXIT_PASS
    if not args.name:
        raise InputError("fixtures run needs a fixture name")
    if args.name not in FIXTURES:
        raise InputError(f"unknown fixture {args.name!r}; known: {', '.join(FIXTURES)}")
    start = time.perf_counter()
    result = run_fixture(args.name, caps)
    report = {"fixture": result.as_dict(), "timings": {"run": round(time.perf_counter() - start, 6)},
              "caps": caps.as_dict(), "version": __version__}
    return report, EXIT_PASS if result.passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    caps = argparse.ArgumentParser(add_help=False)
    caps.add_argument("--cap-size", type=int, default=Caps.size, help="max ring/module carrier size")
    caps.add_argument("--cap-ideals", type=int, default=Caps.ideals,
                      help="max ring/module size for ideal and submodule enumeration")
    caps.add_argument("--cap-hom", type=int, default=Caps.hom, help="max homomorphisms per enumeration")

    parser = argparse.ArgumentParser(prog="sspring", description=__doc__.splitlines()[0] if __doc__ else None)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", parents=[caps], help="decide ring properties")
    check.add_argument("source")
    check.add_argument("--props", default="ssp,sip,c3")
    check.add_argument("--side", choices=["left", "right", "both"], default="both")
    check.add_argument("--method", choices=["definitional", "ef", "both"], default="definitional")
    check.add_argument("--format", choices=["json", "md"], default="json")

    verify = sub.add_parser("verify", parents=[caps], help="run the theorem and module lemma suites")
    verify.add_argument("source")
    verify.add_argument("--module-rank", type=int, default=1,
                        help="run the module checks on free(R, n) for n up to this rank")
    verify.add_argument("--format", choices=["json", "md"], default="json")

    fixtures = sub.add_parser("fixtures", parents=[caps], help="list or run shipped fixtures")
    fixtures.add_argument("action", choices=["list", "run"])
    fixtures.add_argument("name", nargs="?")
    fixtures.add_argument("--format", choices=["json", "md"], default="json")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_PASS
    try:
        caps = Caps(size=args.cap_size, ideals=args.cap_ideals, hom=args.cap_hom)
        handler = {"check": cmd_check, "verify": cmd_verify, "fixtures": cmd_fixtures}[args.command]
        report, code = handler(args, caps)
    except (InputError, DescriptorError, CapExceeded, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if "fixture" in report or "fixtures" in report:
        print(json.dumps(report, indent=2) if args.format == "json" else _render_fixture(report))
    else:
        print(render(report, args.format))
    return code


def _render_fixture(report: dict) -> str:
    if "fixtures" in report:
        return "\n".join(f"- **{f['name']}**: {f['expected']}" for f in report["fixtures"])
    fx = report["fixture"]
    lines = [f"# fixture {fx['name']}: {'PASS' if fx['passed'] else 'FAIL'}", "",
             "| assertion | expected | actual | ok |", "|---|---|---|---|"]
    for a in fx["assertions"]:
        lines.append(f"| {a['description']} | {a['expected']} | {a['actual']} | {a['passed']} |")
    return "\n".join(lines)


if __name__ == "__main__":
    sys.exit(main())
