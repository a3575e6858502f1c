"""Command-line front end.

Eigenvalues are written k/n and mean e^(2 pi i k/n).

Exit codes: 0 success, 1 usage or input error, 2 verdict not applicable
(infinite image or order cap), 3 a verification suite reported a failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .braid import BraidRep, RepSpec, RootFraction, scale_to_modular, tw_construct
from .catalog import (
    RHO_G_THETA,
    catalog_listing,
    find_case,
    mtc_examples,
    noncongruence_spec,
    theorem_a_cases,
)
from .closure import DEFAULT_CLOSURE_CAP, enumerate_group
from .congruence import NotApplicable, all_scalings, full_pipeline, pipeline_from_rep, to_modular_rep
from .cyclotomic import DEFAULT_MAX_CONDUCTOR, set_max_conductor
from .errors import B3Error, ConductorTooLarge, OrderCapExceeded
from .linalg import DEFAULT_ORDER_CAP, format_matrix
from .verify import verify_hsu, verify_theorem_a, verify_theorem_b
from .words import hsu_generators

EXIT_OK, EXIT_USAGE, EXIT_NA, EXIT_FAIL = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def dumps(obj) -> str:
    """Canonical JSON text; loading and dumping it again gives the same bytes."""
    return json.dumps(obj, indent=2, ensure_ascii=True) + "\n"


def _add_caps(p):
    p.add_argument("--order-cap", type=int, default=DEFAULT_ORDER_CAP, help="largest matrix order searched")
    p.add_argument("--max-conductor", type=int, default=DEFAULT_MAX_CONDUCTOR, help="largest cyclotomic conductor")
    p.add_argument("--closure-cap", type=int, default=DEFAULT_CLOSURE_CAP, help="element cap for group closure")


def _add_source(p):
    p.add_argument("--dim", type=int, choices=(2, 3))
    p.add_argument("--eig", action="append", default=[], metavar="K/N", help="eigenvalue e^(2 pi i K/N); repeat")
    p.add_argument("--spec-json", metavar="JSON", help='e.g. {"dim": 3, "eigs": ["1/9", "11/18", "5/18"]}')
    p.add_argument("--name", help="catalog entry, e.g. A2:r4j1:lambda=7/24, B:ell3+, MTC:G")
    p.add_argument("--theta", default="auto", help="scaling root: auto, all, or K/N")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="b3congruence", description="Congruence kernels of B3 representations.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("classify", help="run the congruence pipeline on one representation")
    _add_source(p)
    _add_caps(p)
    p.add_argument("--image-order", action="store_true", help="also enumerate the image group")
    p.add_argument("--json", action="store_true")
    p.add_argument("--timings", action="store_true", help="fill timings_ms (breaks byte-identical output)")

    p = sub.add_parser("verify-theorem-a", help="check every finite-image family case with 2 <= po <= 5")
    p.add_argument("--only", action="append", metavar="NAME", help="case name; repeat")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--image-order", action="store_true")
    p.add_argument("--json", action="store_true")
    p.add_argument("--timings", action="store_true")
    p.add_argument("--max-conductor", type=int, default=DEFAULT_MAX_CONDUCTOR)

    p = sub.add_parser("verify-theorem-b", help="check the dimension-3 non-congruence family")
    p.add_argument("--ell", type=int, action="append", help="odd ell >= 3; repeat (default 3 5 7 9)")
    p.add_argument("--json", action="store_true")
    p.add_argument("--timings", action="store_true")
    p.add_argument("--max-conductor", type=int, default=DEFAULT_MAX_CONDUCTOR)

    p = sub.add_parser("catalog", help="list built-in representations")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("hsu-oracle", help="check Hsu generators against integer matrices mod N")
    p.add_argument("--min", type=int, default=2, dest="n_min")
    p.add_argument("--max", type=int, default=60, dest="n_max")
    p.add_argument("--show", type=int, metavar="N", help="print constants and words for one level")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("closure", help="enumerate the image of the scaled modular representation")
    _add_source(p)
    _add_caps(p)
    p.add_argument("--json", action="store_true")
    return parser


# ------------------------------------------------------------------ helpers


def _parse_theta(text: str):
    if text in ("auto", "all"):
        return text
    try:
        return RootFraction.parse(text)
    except ValueError as exc:
        raise UsageError(f"--theta: {exc}") from exc


def _resolve_source(args) -> tuple[str | None, RepSpec | None, BraidRep | None, RootFraction | None]:
    """(name, spec, explicit rep, default theta) from the flags."""
    given = [bool(args.eig or args.dim), bool(args.spec_json), bool(args.name)]
    if sum(given) != 1:
        raise UsageError("give exactly one of --dim/--eig, --spec-json or --name")
    if args.spec_json:
        try:
            return None, RepSpec.from_json(json.loads(args.spec_json)), None, None
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise UsageError(f"--spec-json: {exc}") from exc
    if args.name:
        name = args.name.strip()
        if name.startswith("MTC:"):
            for nm, obj in mtc_examples():
                if nm == name:
                    if isinstance(obj, RepSpec):
                        return nm, obj, None, None
                    return nm, None, obj, RHO_G_THETA
            raise UsageError(f"unknown MTC example {name!r}")
        if name.startswith("B:ell"):
            body = name[len("B:ell"):]
            if not body or body[-1] not in "+-":
                raise UsageError(f"bad family name {name!r}; expected B:ell<odd>+ or B:ell<odd>-")
            try:
                ell = int(body[:-1])
                return name, noncongruence_spec(ell, 1 if body[-1] == "+" else -1), None, None
            except ValueError as exc:
                raise UsageError(str(exc)) from exc
        try:
            case = find_case(name)
        except KeyError as exc:
            raise UsageError(str(exc.args[0])) from exc
        return case.name, case.spec, None, None
    if args.dim is None:
        raise UsageError("--eig needs --dim")
    if len(args.eig) != args.dim:
        raise UsageError(f"--dim {args.dim} needs exactly {args.dim} --eig values, got {len(args.eig)}")
    return None, RepSpec.parse(args.dim, args.eig), None, None


def _render_report(r) -> str:
    lines = []
    if r.name:
        lines.append(f"name:        {r.name}")
    if r.spec is not None:
        lines.append(f"spec:        {r.spec}")
    lines.append(f"theta:       {r.theta if r.theta is not None else '-'}")
    lines.append(f"po:          {r.po if r.po is not None else '-'}")
    if r.spectrum is not None:
        lines.append(f"spectrum:    {', '.join(str(e) for e in r.spectrum)}")
    lines.append(f"glevel:      {r.glevel if r.glevel is not None else '-'}")
    if r.finiteness is not None:
        lines.append(f"finiteness:  {r.finiteness.value} ({r.finiteness_reason})")
    if r.image_order is not None:
        lines.append(f"image order: {r.image_order}")
    lines.append(f"verdict:     {r.summary()}")
    v = r.verdict
    if v.type == "NonCongruence":
        lines.append(f"witness word: {v.witness}")
        lines.append("evaluated matrix:")
        lines.append(format_matrix(v.evaluated))
        lines.append(f"failing generator indices: {list(v.failing)}")
    for note in r.notes:
        lines.append(f"note: {note}")
    if r.timings_ms is not None:
        lines.append(f"timings_ms:  {r.timings_ms}")
    return "\n".join(lines)


# ----------------------------------------------------------------- commands


def cmd_classify(args) -> int:
    name, spec, rep, default_theta = _resolve_source(args)
    theta = _parse_theta(args.theta)
    if theta == "auto":
        theta = default_theta
    opts = dict(order_cap=args.order_cap, closure_cap=args.closure_cap, image_order=args.image_order,
                name=name, timings=args.timings)
    if theta == "all":
        reports = all_scalings(spec=spec, rep=rep, **opts)
    elif rep is not None:
        reports = [pipeline_from_rep(rep, theta, **opts)]
    else:
        reports = [full_pipeline(spec, theta, **opts)]
    if args.json:
        out = reports[0].to_json() if len(reports) == 1 and args.theta != "all" else [r.to_json() for r in reports]
        sys.stdout.write(dumps(out))
    else:
        print("\n\n".join(_render_report(r) for r in reports))
    return EXIT_NA if any(isinstance(r.verdict, NotApplicable) for r in reports) else EXIT_OK


def _suite_output(suite: str, results, as_json: bool) -> int:
    ok = all(r.passed for r in results)
    if as_json:
        sys.stdout.write(dumps({"suite": suite, "passed": ok, "count": len(results),
                                "failures": sum(not r.passed for r in results),
                                "results": [r.to_json() for r in results]}))
    else:
        for r in results:
            print(r.line())
        print(f"{suite}: {sum(r.passed for r in results)}/{len(results)} passed")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_verify_theorem_a(args) -> int:
    try:
        results = verify_theorem_a(args.only, jobs=args.jobs, image_order=args.image_order, timings=args.timings)
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from exc
    return _suite_output("theorem-a", results, args.json)


def cmd_verify_theorem_b(args) -> int:
    ells = args.ell or [3, 5, 7, 9]
    for ell in ells:
        if ell < 3 or ell % 2 == 0:
            raise UsageError(f"--ell {ell}: ell must be odd and at least 3")
    return _suite_output("theorem-b", verify_theorem_b(ells, timings=args.timings), args.json)


def cmd_catalog(args) -> int:
    listing = catalog_listing()
    if args.json:
        sys.stdout.write(dumps(listing))
        return EXIT_OK
    for c in theorem_a_cases():
        eigs = ", ".join(str(e) for e in c.eigs)
        print(f"{c.name:28s} eigs=({eigs})  expected level {c.expected_level} [{c.level_source}]")
    for entry in listing["noncongruence"]:
        print(f"{entry['name']:28s} eigs=({', '.join(entry['spec']['eigs'])})  expected glevel {entry['expected_glevel']}")
    for entry in listing["mtc"]:
        what = "explicit matrices" if entry["explicit_matrices"] else f"eigs=({', '.join(entry['spec']['eigs'])})"
        print(f"{entry['name']:28s} {what}")
    return EXIT_OK


def cmd_hsu_oracle(args) -> int:
    if args.show is not None:
        if args.show < 1:
            raise UsageError("--show needs a positive level")
        data = hsu_generators(args.show)
        if args.json:
            sys.stdout.write(dumps({**data.constants(), "words": list(data.labels)}))
        else:
            for k, v in data.constants().items():
                print(f"{k}: {v}")
            for i, label in enumerate(data.labels):
                print(f"  [{i}] {label}")
        return EXIT_OK
    if args.n_min < 2 or args.n_max < args.n_min:
        raise UsageError("need 2 <= --min <= --max")
    result = verify_hsu(args.n_min, args.n_max)
    if args.json:
        sys.stdout.write(dumps(result.to_json()))
    else:
        print(result.line())
    return EXIT_OK if result.passed else EXIT_FAIL


def cmd_closure(args) -> int:
    name, spec, rep, default_theta = _resolve_source(args)
    theta = _parse_theta(args.theta)
    if theta == "all":
        raise UsageError("closure takes a single theta")
    if theta == "auto":
        theta = default_theta
    if rep is None:
        rep = tw_construct(spec)
    scaled, theta = scale_to_modular(rep, theta)
    m = to_modular_rep(scaled)
    res = enumerate_group([m.X, m.Y], args.closure_cap)
    out = {"name": name, "spec": None if spec is None else spec.to_json(), "theta": str(theta),
           "finite": res.finite, "order": res.order, "elements_explored": res.elements_explored,
           "cap_hit": res.cap_hit}
    if args.json:
        sys.stdout.write(dumps(out))
    else:
        for k, v in out.items():
            print(f"{k}: {v}")
    return EXIT_OK if res.finite else EXIT_NA


COMMANDS = {
    "classify": cmd_classify,
    "verify-theorem-a": cmd_verify_theorem_a,
    "verify-theorem-b": cmd_verify_theorem_b,
    "catalog": cmd_catalog,
    "hsu-oracle": cmd_hsu_oracle,
    "closure": cmd_closure,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "max_conductor", None):
        set_max_conductor(args.max_conductor)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ConductorTooLarge, OrderCapExceeded) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NA
    except (B3Error, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        set_max_conductor(DEFAULT_MAX_CONDUCTOR)


if __name__ == "__main__":
    sys.exit(main())
