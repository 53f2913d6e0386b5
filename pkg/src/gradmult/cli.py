"""Command-line front end: run one script, or verify the shipped fixtures."""

import argparse
import importlib.resources
import json
import sys
from pathlib import Path

from .errors import KernelError
from .reports import canonical_json, run_script, strip_volatile
from .scalars import field_from_text
from .script import ParseError, parse_script


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="gradmult",
        description="exact degree-sequence and multiplicity computations",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    runp = sub.add_parser("run", help="execute a session script, emit a JSON report")
    runp.add_argument("script", help="path to the script file")
    runp.add_argument("--seed", type=int, default=0, help="seed for randomized searches")
    runp.add_argument("--field", default=None, help="override the script field: fp:P or qq")
    runp.add_argument("--json", dest="json_out", default=None, metavar="OUT")

    sub.add_parser("verify-suite", help="run the shipped fixtures against their goldens")
    return parser


def _run(args):
    path = Path(args.script)
    try:
        text = path.read_text()
    except OSError as exc:
        print(f"gradmult: cannot read {args.script}: {exc}", file=sys.stderr)
        return 1
    override = None
    if args.field:
        try:
            override = field_from_text(args.field)
        except ValueError as exc:
            print(f"gradmult: {exc}", file=sys.stderr)
            return 1
    try:
        script = parse_script(text, field_override=override)
    except ParseError as exc:
        print(f"gradmult: {exc.message}", file=sys.stderr)
        return 1
    try:
        doc, exit_code = run_script(script, seed=args.seed, name=path.name)
    except KernelError as exc:
        print(f"gradmult: {exc.code}: {exc.message}", file=sys.stderr)
        return 1
    blob = canonical_json(doc)
    sys.stdout.write(blob)
    if args.json_out:
        Path(args.json_out).write_text(blob)
    return exit_code


def _verify_suite(_args):
    root = importlib.resources.files("gradmult").joinpath("suite")
    manifest = json.loads(root.joinpath("manifest.json").read_text())
    failures = 0
    for fixture in manifest["fixtures"]:
        name = fixture["script"]
        text = root.joinpath(name).read_text()
        override = field_from_text(fixture["field"]) if fixture.get("field") else None
        try:
            script = parse_script(text, field_override=override)
            doc, exit_code = run_script(script, seed=fixture.get("seed", 0), name=name)
        except KernelError as exc:
            print(f"FAIL {name}: {exc.code}: {exc.message}")
            failures += 1
            continue
        problems = []
        if exit_code != fixture["exit"]:
            problems.append(f"exit {exit_code} != {fixture['exit']}")
        golden = json.loads(root.joinpath(fixture["golden"]).read_text())
        if strip_volatile(doc) != strip_volatile(golden):
            problems.append("report differs from golden")
        if problems:
            print(f"FAIL {name}: " + "; ".join(problems))
            failures += 1
        else:
            print(f"PASS {name}")
    total = len(manifest["fixtures"])
    print(f"{total - failures}/{total} fixtures passed")
    return 0 if failures == 0 else 1


def main(argv=None):
    args = _build_parser().parse_args(argv)
    if args.subcommand == "run":
        return _run(args)
    return _verify_suite(args)


if __name__ == "__main__":
    sys.exit(main())
