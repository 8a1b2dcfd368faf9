"""Command-line front end.

Exit codes: 0 success, 1 usage or input error, 2 hypothesis violation,
3 audit failure.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .audit import audit_config, sweep
from .bounds import bound_table
from .exact import EnumerationLimitError, HypothesisError, IncidenceError, PointSet, as_point
from .generators import GENERATORS, GeneratorSpec, InfeasibleError, generate
from .incidence import KINDS, enumerate_objects, pair_degrees, point_degrees
from .serialization import PointSetFile, dumps, loads_point_set, point_set_to_json, to_csv
from .transforms import inversion_correspondence, invert, project_from_point
from .validation import require

EXIT_OK, EXIT_USAGE, EXIT_HYPOTHESIS, EXIT_AUDIT = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _int_range(text: str) -> list:
    """"9" -> [9]; "5:8" -> [5, 6, 7, 8]; "5,7,9" -> [5, 7, 9]."""
    try:
        if ":" in text:
            lo, hi = text.split(":", 1)
            return list(range(int(lo), int(hi) + 1))
        return [int(part) for part in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N, A:B or A,B,C; got {text!r}") from None


def _common(p, *, input_file=True):
    if input_file:
        p.add_argument("input", nargs="?", default="-", help="point-set JSON file (default: stdin)")
    p.add_argument("--out", default="-", help="output path (default: stdout)")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--max-quadruples", type=int, default=None, help="override the sphere enumeration cap")
    p.add_argument("--strict", action="store_true", help="exit 2 when a hypothesis is violated")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="incidence-lab", description="Exact incidence counting and bound audits.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def spec_args(p):
        p.add_argument("--name", required=True, choices=sorted(GENERATORS))
        p.add_argument("--n", type=int, default=None)
        p.add_argument("--k", type=int, default=1)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--dim", type=int, choices=(2, 3), default=2)
        p.add_argument("--flags", default="", help="comma-separated hypotheses for random_constrained")
        p.add_argument("--values", default=None, help="comma-separated rationals for cubic_orchard")
        p.add_argument("--through-planes", type=int, default=0)

    p = sub.add_parser("gen", help="generate a configuration")
    spec_args(p)
    _common(p, input_file=False)

    p = sub.add_parser("count", help="incidence profiles")
    _common(p)
    p.add_argument("--kind", choices=sorted(KINDS), default=None, help="default: every kind for the dimension")
    p.add_argument("--anchor", type=int, default=None, help="restrict to objects through this point index")

    p = sub.add_parser("project", help="central projection from a point")
    _common(p)
    p.add_argument("--anchor", type=int, required=True)

    p = sub.add_parser("invert", help="inversion about a point of the set (or --center)")
    _common(p)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--anchor", type=int)
    group.add_argument("--center", help="comma-separated rationals, not a point of the set")

    p = sub.add_parser("audit", help="evaluate every bound against enumerated counts")
    _common(p)
    p.add_argument("--spheres", choices=("auto", "yes", "no"), default="auto")

    p = sub.add_parser("sweep", help="audit a generator family over a range of n")
    spec_args(p)
    p.set_defaults(n=None)
    for action in p._actions:
        if action.dest == "n":
            action.type = _int_range
            action.help = "N, A:B (inclusive) or A,B,C"
        if action.dest == "k":
            action.type = _int_range
            action.default = None
    _common(p, input_file=False)
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--spheres", choices=("auto", "yes", "no"), default="auto")

    p = sub.add_parser("bounds", help="tabulate bound formulas")
    _common(p, input_file=False)
    p.add_argument("--name", action="append", required=True,
                   help="bound name, or orchard / maxima / all; repeatable")
    p.add_argument("--n", type=_int_range, required=True)
    p.add_argument("--k", type=_int_range, default=[1])
    return parser


# --------------------------------------------------------------------------- #


def _read(path) -> PointSetFile:
    if path == "-":
        text = sys.stdin.read()
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    return loads_point_set(text)


def _write(args, text):
    if not text.endswith("\n"):
        text += "\n"
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _spheres_flag(value):
    return {"auto": None, "yes": True, "no": False}[value]


def _enum_kw(args):
    return {"max_quadruples": args.max_quadruples} if args.max_quadruples is not None else {}


def _spec(args, n=None, k=None):
    values = None
    if args.values:
        values = tuple(as_point(args.values.split(",")))
    flags = frozenset(f for f in args.flags.split(",") if f)
    return GeneratorSpec(
        name=args.name, n=n if n is not None else args.n, k=k if k is not None else args.k,
        seed=args.seed, flags=flags, values=values, dim=args.dim, through_planes=args.through_planes,
    )


def _strict_check(args, doc: PointSetFile):
    if not args.strict:
        return
    S = doc.points
    names = doc.claims.get("hypotheses")
    if names is None:
        names = ["not_all_collinear"] if S.dim == 2 else ["no_3_collinear", "not_all_coplanar"]
    require(S, names, k=doc.claims.get("k"))


def cmd_gen(args):
    config = generate(_spec(args))
    _write(args, dumps(point_set_to_json(config.points, config.claims)))


def cmd_count(args):
    doc = _read(args.input)
    _strict_check(args, doc)
    S = doc.points
    kinds = [args.kind] if args.kind else [k for k, d in KINDS.items() if d == S.dim]
    out = {"n": len(S), "dim": S.dim, "profiles": {}}
    rows = []
    for kind in kinds:
        enum = enumerate_objects(S, kind, jobs=args.jobs, **_enum_kw(args))
        prof = enum.through(args.anchor) if args.anchor is not None else enum.profile()
        out["profiles"][kind] = prof.to_json()
        rows.extend({"kind": kind, "k": k, "count": c} for k, c in sorted(prof.counts.items()))
    if args.kind is None and args.anchor is None:
        degrees = point_degrees(S) if S.dim == 2 else pair_degrees(S)
        out["profiles"]["point_degrees" if S.dim == 2 else "pair_degrees"] = degrees.to_json()
    _write(args, to_csv(rows, ["kind", "k", "count"]) if args.format == "csv" else dumps(out))


def cmd_project(args):
    doc = _read(args.input)
    _strict_check(args, doc)
    S = doc.points
    proj = project_from_point(S, args.anchor)
    lines = proj.lines(jobs=args.jobs)
    planes = enumerate_objects(S, "planes", jobs=args.jobs).objects
    correspondence = []
    for key, members in sorted(lines.objects.items(), key=lambda kv: sorted(kv[1])):
        original = frozenset(proj.back_map[i] for i in members) | {args.anchor}
        plane = proj.plane_of(key)
        correspondence.append({
            "line_key": list(key),
            "plane_key": plane.to_json(),
            "points": sorted(original),
            "plane_enumerated": planes.get(plane) == original,
        })
    out = {**proj.to_json(), "line_profile": lines.profile().to_json(), "correspondence": correspondence}
    if args.format == "csv":
        rows = [{"k": k, "lines": c} for k, c in sorted(lines.profile().counts.items())]
        _write(args, to_csv(rows))
    else:
        _write(args, dumps(out))


def cmd_invert(args):
    doc = _read(args.input)
    _strict_check(args, doc)
    S = doc.points
    if args.center is not None:
        image = invert(S, as_point(args.center.split(",")))
        out = point_set_to_json(image)
    else:
        table = inversion_correspondence(S, args.anchor, check_hypotheses=args.strict)
        out = point_set_to_json(table.image)
        out["correspondence"] = table.to_json()
        out["bijective"] = table.bijective
    _write(args, dumps(out))


def cmd_audit(args):
    doc = _read(args.input)
    _strict_check(args, doc)
    report = audit_config(
        doc.points, spheres=_spheres_flag(args.spheres), claims=doc.claims or None,
        jobs=args.jobs, **_enum_kw(args),
    )
    _write(args, to_csv(report.csv_rows()) if args.format == "csv" else dumps(report.to_json()))
    return EXIT_OK if report.ok else EXIT_AUDIT


def cmd_sweep(args):
    ns = args.n if args.n is not None else [None]
    spec = _spec(args, n=ns[0], k=(args.k or [1])[0])
    result = sweep(
        spec, ns, trials=args.trials, seed=args.seed, jobs=args.jobs, ks=args.k,
        spheres=_spheres_flag(args.spheres), **_enum_kw(args),
    )
    if args.format == "csv":
        rows = [{"bound": name, **st} for name, st in sorted(result.summary["bounds"].items())]
        _write(args, to_csv(rows))
    else:
        _write(args, dumps(result.to_json()))
    failed = any(st["fail"] for st in result.summary["bounds"].values())
    return EXIT_AUDIT if failed else EXIT_OK


def cmd_bounds(args):
    rows = bound_table(args.name, args.n, args.k)
    _write(args, to_csv(rows) if args.format == "csv" else dumps(rows))


COMMANDS = {
    "gen": cmd_gen,
    "count": cmd_count,
    "project": cmd_project,
    "invert": cmd_invert,
    "audit": cmd_audit,
    "sweep": cmd_sweep,
    "bounds": cmd_bounds,
}


def cli_main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError(parser.format_usage().strip())
        return COMMANDS[args.command](args) or EXIT_OK
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except HypothesisError as exc:
        print(f"hypothesis violation: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except (EnumerationLimitError, InfeasibleError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (IncidenceError, ValueError, TypeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main():
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
