"""Command line interface: ``equizeta {analyze,verify,classical,corpus}``.

Exit codes: 0 success, 2 identity violated, 3 unsupported input, 4 parse error.
"""

import argparse
import json
import logging
import sys

from . import kernels
from .pipeline import ProblemSpec, SpecError, UnsupportedGroup, analyze, classical, verify
from .qhpoly import NonPositiveWeight, NotQuasihomogeneous, WeightsNotUnique
from .strata_euler import ResourceLimit, UnsupportedRestriction

EXIT_OK, EXIT_VIOLATION, EXIT_UNSUPPORTED, EXIT_PARSE = 0, 2, 3, 4

UNSUPPORTED = (NotQuasihomogeneous, WeightsNotUnique, NonPositiveWeight,
               UnsupportedRestriction, UnsupportedGroup, ResourceLimit)

log = logging.getLogger("equizeta")


def dumps(report):
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def _elem_text(elem):
    if not elem:
        return "0"
    parts = []
    for item in elem:
        H = item["subgroup"]
        parts.append(f"{item['coeff']:+d}[G/H(order {H['order']}, N={H['N']})]")
    return " ".join(parts)


def render_text(report):
    lines = []
    if "polynomial" in report:
        w = report["weights"]
        g = report["groups"]
        lines.append(f"f = {report['polynomial']}")
        lines.append(f"weights q = {tuple(w['q'])}, d = {w['d']}")
        lines.append(f"|G_f| = {g['G_f']['order']} {g['G_f']['invariant_factors']}, "
                     f"G ({g['choice']}) order {g['G']['order']}, h = ({', '.join(g['h'])})")
        lines.append("strata:  J   chi_V (route)   chi_Y (route)")
        for row in report["strata"]["table"]:
            lines.append(f"  {row['J']}  {row['chi_V']} ({row['prov_V']})  "
                         f"{row['chi_Y']} ({row['prov_Y']})")
        mu = report["strata"]["milnor_number"]
        lines.append(f"mu = {mu if mu is not None else 'not isolated'}, "
                     f"chi(V_f) = {report['strata']['euler_characteristic']}")
    if "verification" in report:
        v = report["verification"]
        lines.append(f"zeta^G = {_elem_text(report['zeta'].get('element'))}")
        lines.append(f"Or     = {_elem_text(report['orbit']['element'])}")
        lines.append(f"LHS    = {_elem_text(v['lhs'])}")
        lines.append(f"RHS    = {_elem_text(v['rhs'])}")
        lines.append(f"residual = {_elem_text(v['residual'])}  ok={v['ok']} "
                     f"secondary_ok={v['secondary_ok']} independent={v['independent']}")
    if "classical" in report:
        c = report["classical"]
        lines.append(f"P_X(t) = {c['poincare_closed']['text']}  ~ {c['poincare_series']}")
        lines.append(f"zeta_f(t) = {c['zeta']['text']}, reduced {c['zeta_reduced']['text']}")
        lines.append(f"Saito dual = {c['saito_dual']['text']}, Or_X(t) = {c['orbit_function']['text']}")
        lines.append(f"classical relation residual = {c['ini_residual']}  ok={c['ini_ok']}")
        lines.append(f"sum m*s_m = {c['degree_sum']}, s_m integral = {c['s_integral']}")
    if "entries" in report:
        for row in report["entries"]:
            status = "ok" if row["ok"] else "FAIL"
            orders = ", ".join(f"{k}:|G|={g['order']}" for k, g in row["groups"].items())
            lines.append(f"{status:4s} {row['name']:28s} {orders}  zeta={row['classical']['zeta']}"
                         f"  ini={'ok' if row['classical']['ini_ok'] else 'FAIL'}")
        ini = report["ini"]
        lines.append(f"main identity: {'all ok' if report['main_ok'] else 'FAILURES'}; "
                     f"classical relation: sign {ini['calibrated_sign']} (frozen {ini['frozen_sign']}), "
                     f"{ini['non_calibration_passing']}/{ini['non_calibration_total']} non-calibration entries")
    return "\n".join(lines) + "\n"


def _load_spec(args):
    if args.input:
        try:
            with open(args.input) as fh:
                text = fh.read()
        except OSError as exc:
            raise SpecError(str(exc)) from None
        doc = text
    elif args.poly:
        doc = {"polynomial": args.poly}
    else:
        raise SpecError("give --input FILE or --poly POLYNOMIAL")
    spec = ProblemSpec.from_json(doc)
    if args.group:
        spec.group = args.group
    if args.truncation is not None:
        spec.truncation = args.truncation
    return spec


def build_parser():
    parser = argparse.ArgumentParser(prog="equizeta", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("analyze", "verify", "classical", "corpus"):
        sp = sub.add_parser(name)
        if name != "corpus":
            sp.add_argument("--input", help="problem description (JSON)")
            sp.add_argument("--poly", help="polynomial, e.g. 'x^2+y^3' (instead of --input)")
            sp.add_argument("--group", choices=["full-symmetry", "monodromy-cyclic"])
        else:
            sp.add_argument("--jobs", type=int, default=1)
        sp.add_argument("--truncation", type=int)
        sp.add_argument("--output", help="write the report here instead of stdout")
        sp.add_argument("--format", choices=["json", "text"], default="json")
        sp.add_argument("-v", "--verbose", action="store_true")
    return parser


def run(argv=None):
    """Run the CLI; returns (exit code, report or None)."""
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    log.info("kernel backend: %s", kernels.backend())
    report, code = None, EXIT_OK
    try:
        if args.command == "corpus":
            from .corpus import run_corpus

            report = run_corpus(args.truncation, args.jobs)
            code = EXIT_OK if report["ok"] else EXIT_VIOLATION
        else:
            spec = _load_spec(args)
            if args.command == "analyze":
                _, report = analyze(spec)
            elif args.command == "verify":
                _, report = verify(spec)
                code = EXIT_OK if report["verification"]["ok"] else EXIT_VIOLATION
            else:
                _, report = classical(spec)
    except SpecError as exc:
        print(f"equizeta: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE, None
    except UNSUPPORTED as exc:
        print(f"equizeta: unsupported input: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED, None
    except ValueError as exc:
        # e.g. generators outside G_f
        print(f"equizeta: unsupported input: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED, None
    text = dumps(report) if args.format == "json" else render_text(report)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code, report


def main(argv=None):
    code, _ = run(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
