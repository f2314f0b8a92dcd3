"""Command line: ``python -m skewgroupoid <command> INSTANCE``.

Exit codes: 0 every applicable check passed, 1 some check failed,
2 the input could not be read or parsed.
"""
import argparse
import json
import sys
from pathlib import Path

from .errors import ParseError
from .fuzz import run_fuzz
from .instance import FIXTURES, load_fixture, parse_instance
from .pipeline import Options, run_pipeline

EXIT_OK, EXIT_CHECK, EXIT_INPUT = 0, 1, 2

COMMAND_SECTIONS = {
    "validate": ("validate",),
    "components": ("validate", "components"),
    "factorize": ("validate", "components", "factorize"),
    "report": ("validate", "components", "factorize", "separable", "frobenius", "artinian"),
}


def load(spec):
    """A path, or the name of a bundled fixture."""
    p = Path(spec)
    if not p.exists() and spec in FIXTURES:
        return load_fixture(spec)
    return parse_instance(p)


def build_parser():
    ap = argparse.ArgumentParser(prog="skewgroupoid",
                                 description="Partial skew groupoid rings: factorization and "
                                             "extension checks on JSON instances.")
    sub = ap.add_subparsers(dest="command", required=True)

    def instance_cmd(name, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("instance", help="instance JSON file or bundled fixture name "
                                        f"({', '.join(FIXTURES)})")
        p.add_argument("--base", help="base object for the group-type search")
        p.add_argument("--format", choices=("text", "json"), default="text")
        return p

    instance_cmd("validate", "check groupoid, algebra and partial action axioms")
    instance_cmd("components", "list connected components")
    instance_cmd("factorize", "group-type search and the factorization isomorphism")
    c = instance_cmd("check", "separability, Frobenius and artinian checks")
    c.add_argument("--separable", action="store_true")
    c.add_argument("--frobenius", action="store_true")
    c.add_argument("--artinian", action="store_true")
    c.add_argument("--all", action="store_true")
    instance_cmd("report", "run everything")

    f = sub.add_parser("fuzz", help="random instances against the invariant suites")
    f.add_argument("--seed", type=int, default=0)
    f.add_argument("--count", type=int, default=100)
    f.add_argument("--max-objects", type=int, default=3)
    f.add_argument("--max-dim", type=int, default=12)
    f.add_argument("--max-group", type=int, default=4)
    f.add_argument("--out", default="fuzz-failures",
                   help="directory for instances that violate an invariant")
    f.add_argument("--format", choices=("text", "json"), default="text")
    return ap


def _sections(args):
    if args.command != "check":
        return COMMAND_SECTIONS[args.command]
    picked = [s for s in ("separable", "frobenius", "artinian") if getattr(args, s)]
    if args.all or not picked:
        picked = ["separable", "frobenius", "artinian"]
    return ("validate", "components", *picked)


def main(argv=None, out=None):
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    if args.command == "fuzz":
        summary = run_fuzz(args.seed, args.count, args.max_objects, args.max_dim,
                           args.max_group, out_dir=args.out)
        if args.format == "json":
            print(json.dumps(summary.as_dict(), indent=2, sort_keys=True), file=out)
        else:
            print(summary.to_text(), file=out)
        return EXIT_OK if summary.ok else EXIT_CHECK
    try:
        inst = load(args.instance)
        if args.base is not None and args.base not in inst.objects:
            raise ParseError(f"--base {args.base!r} is not an object of the instance")
        report = run_pipeline(inst, Options(sections=_sections(args), base=args.base))
    except (ParseError, OSError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(report.to_json() if args.format == "json" else report.to_text(), file=out)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
