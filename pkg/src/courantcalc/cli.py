"""Command-line front end: load JSON inputs, run suites, emit reports.

Exit codes: 0 when every check passes, 1 on check failures, 2 on malformed
input files, 3 on semantic precondition failures (bad shapes, gates).
Reports are deterministic: identical configurations produce byte-identical
JSON output.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import cochain as co
from . import dorfman as dc
from .algebroid import algebroid_from_json, verify_axioms
from .battery import Battery
from .cohomology import PointComplex
from .report import PreconditionError, Report
from .scalar import ParseError, Scalar

__all__ = ["main"]


def build_parser():
    parser = argparse.ArgumentParser(
        prog="courantcalc",
        description="exact verification and computation for Courant "
                    "algebroids and Dorfman connections")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--battery-degree", type=int, default=2,
                       help="monomial degree cap for battery sections")
        p.add_argument("--extras", type=int, default=3,
                       help="number of seeded random battery elements")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("-o", "--output", default=None,
                       help="write the report (or built object) to a file")

    p = sub.add_parser("verify-algebroid", help="check the structure axioms")
    p.add_argument("algebroid")
    common(p)

    p = sub.add_parser("cartan", help="check the commutation-relation suite")
    p.add_argument("algebroid")
    p.add_argument("--max-degree", type=int, default=4,
                   help="degree cap for the test cochains")
    common(p)

    p = sub.add_parser("connection-build", help="construct a connection")
    p.add_argument("algebroid")
    p.add_argument("predual")
    common(p)

    p = sub.add_parser("connection-verify", help="check the connection axioms")
    p.add_argument("algebroid")
    p.add_argument("predual")
    p.add_argument("connection")
    common(p)

    p = sub.add_parser("curvature", help="check the curvature laws")
    p.add_argument("algebroid")
    p.add_argument("predual")
    p.add_argument("connection")
    p.add_argument("--case", choices=("auto", "K", "F"), default="auto",
                   help="adapted-frame case for the induced connection")
    common(p)

    p = sub.add_parser("bianchi", help="check both Bianchi components")
    p.add_argument("algebroid")
    p.add_argument("predual")
    p.add_argument("connection")
    common(p)

    p = sub.add_parser("bott", help="quotient connection of a Dirac frame")
    p.add_argument("algebroid")
    p.add_argument("dirac")
    common(p)

    p = sub.add_parser("cohomology", help="betti numbers over a point")
    p.add_argument("algebroid")
    p.add_argument("--max-p", type=int, default=None)
    common(p)

    p = sub.add_parser("predual-diagnose", help="pairing rank bookkeeping")
    p.add_argument("algebroid")
    p.add_argument("predual")
    common(p)
    return parser


def _load_json(path):
    with open(path, "r", encoding="utf-8") as handle:
        return json.load(handle)


def _battery(alg, args):
    return Battery(alg, degree=args.battery_degree, extras=args.extras,
                   seed=args.seed)


def _config(args, alg=None, battery=None):
    cfg = {"battery_degree": args.battery_degree, "extras": args.extras,
           "seed": args.seed}
    for name in ("algebroid", "predual", "connection", "dirac"):
        if hasattr(args, name):
            cfg[name] = getattr(args, name)
    if hasattr(args, "case"):
        cfg["case"] = args.case
    if hasattr(args, "max_p") and args.max_p is not None:
        cfg["max_p"] = args.max_p
    if hasattr(args, "max_degree"):
        cfg["max_degree"] = args.max_degree
    if alg is not None:
        cfg["base_dimension"] = alg.n
        cfg["rank"] = alg.rank
    if battery is not None:
        cfg["battery_sections"] = len(battery.sections)
        cfg["battery_functions"] = len(battery.functions)
    return cfg


def cmd_verify_algebroid(args):
    alg = algebroid_from_json(_load_json(args.algebroid))
    battery = _battery(alg, args)
    report = verify_axioms(alg, battery)
    return report, _config(args, alg, battery), None


def cmd_cartan(args):
    alg = algebroid_from_json(_load_json(args.algebroid))
    battery = _battery(alg, args)
    per_degree = {}
    for w in co.generator_cochains(alg, battery):
        if w.degree <= args.max_degree:
            per_degree.setdefault(w.degree, []).append(w)
    cochains = [w for d in sorted(per_degree) for w in per_degree[d][:2]]
    report = co.cartan_suite(alg, battery, cochains=cochains)
    return report, _config(args, alg, battery), None


def _load_connection_inputs(args, need_connection=True):
    alg = algebroid_from_json(_load_json(args.algebroid))
    bundle = dc.predual_from_json(alg, _load_json(args.predual))
    conn = None
    if need_connection:
        conn = dc.connection_from_json(bundle, _load_json(args.connection))
    return alg, bundle, conn


def cmd_connection_build(args):
    alg, bundle, _ = _load_connection_inputs(args, need_connection=False)
    battery = _battery(alg, args)
    conn = dc.build_connection(bundle, battery)
    report = dc.verify_connection(conn, battery)
    payload = dc.connection_to_json(conn)
    return report, _config(args, alg, battery), ("connection", payload)


def cmd_connection_verify(args):
    alg, bundle, conn = _load_connection_inputs(args)
    battery = _battery(alg, args)
    report = dc.verify_connection(conn, battery)
    return report, _config(args, alg, battery), None


def _resolve_case(args, bundle):
    if args.case != "auto":
        return args.case
    alg = bundle.alg
    s, r = bundle.rank, alg.rank
    if s <= r and all(bundle.pairing_matrix[i][j] == alg.pairing_matrix[i][j]
                      for i in range(s) for j in range(r)):
        return "F"
    if s >= r:
        zero = Scalar.zero(alg.n)
        ok = all(bundle.pairing_matrix[i][j] ==
                 (alg.pairing_matrix[i][j] if i < r else zero)
                 for i in range(s) for j in range(r))
        if ok:
            return "K"
    raise PreconditionError(
        "cannot infer an adapted-frame case from the pairing; pass --case")


def cmd_curvature(args):
    alg, bundle, conn = _load_connection_inputs(args)
    battery = _battery(alg, args)
    case = _resolve_case(args, bundle)
    report = Report("curvature laws")
    bs = bundle.test_elements(degree=args.battery_degree, extras=args.extras,
                              seed=args.seed)

    fails, checked = [], 0
    for s1, s2 in battery.section_tuples(2, reduced=True):
        for f in battery.functions[:5]:
            checked += 1
            res = dc.curvature_R0(conn, s1, s2, bundle.d_B(f))
            if not res.is_zero():
                fails.append((f"{battery.label(s1)}, {battery.label(s2)}, f={f}",
                              str(res)))
    report.add("curvature-kills-derivation-images", not fails, checked,
               *(fails[0] if fails else (None, None)))

    fails, checked = [], 0
    for f in battery.functions:
        for g in battery.functions[:5]:
            checked += 1
            res = dc.curvature_R1(conn, f, bundle.d_B(g))
            if not res.is_zero():
                fails.append((f"f={f}, g={g}", str(res)))
    report.add("function-curvature-kills-derivation-images", not fails, checked,
               *(fails[0] if fails else (None, None)))

    fails, checked = [], 0
    for b in bs[:: max(1, len(bs) // 6)]:
        leaf = dc.b_leaf(bundle, b)
        dd = dc.covariant_differential(conn, dc.covariant_differential(conn, leaf))
        for f in battery.functions[:6]:
            checked += 1
            lhs = dc.evaluateB(dc.interior_f_b(f, dd), 0, ())
            rhs = dc.curvature_R1(conn, f, b)
            if not (lhs - rhs).is_zero():
                fails.append((f"b={b}, f={f}", str(lhs - rhs)))
    report.add("contracted-square-is-derivative-along-dual-differential",
               not fails, checked, *(fails[0] if fails else (None, None)))

    fails, checked = [], 0
    for b in bs[:: max(1, len(bs) // 4)]:
        for f in battery.functions[:4]:
            leaf = dc.b_leaf(bundle, b)
            scaled = dc.b_leaf(bundle, b.scale(f))
            dd = dc.covariant_differential(conn, dc.covariant_differential(conn, leaf))
            dds = dc.covariant_differential(conn, dc.covariant_differential(conn, scaled))
            for pair in list(battery.section_tuples(2, reduced=True))[:20]:
                checked += 1
                lhs = dc.evaluateB(dds, 0, pair)
                rhs = dc.evaluateB(dd, 0, pair).scale(f)
                if not (lhs - rhs).is_zero():
                    fails.append((f"b={b}, f={f}, {battery.describe(pair)}",
                                  str(lhs - rhs)))
    report.add("squared-differential-linear-over-functions", not fails, checked,
               *(fails[0] if fails else (None, None)))

    lin = dc.induced_linear_connection(conn, case, battery)
    report.extend(dc.curvature_symbol_checks(conn, lin, battery, bs))
    report.extend(dc.verify_linear_connection(lin, battery, bs))
    report.extend(dc.compatibility_check(conn, lin, battery, bs))
    return report, _config(args, alg, battery), None


def cmd_bianchi(args):
    alg, bundle, conn = _load_connection_inputs(args)
    battery = _battery(alg, args)
    report = dc.bianchi_check(conn, battery)
    return report, _config(args, alg, battery), None


def cmd_bott(args):
    alg = algebroid_from_json(_load_json(args.algebroid))
    sections = dc.dirac_from_json(alg, _load_json(args.dirac))
    _, _, report = dc.bott_connection(alg, sections,
                                      battery_degree=args.battery_degree,
                                      extras=args.extras, seed=args.seed)
    return report, _config(args, alg), None


def cmd_cohomology(args):
    alg = algebroid_from_json(_load_json(args.algebroid))
    pc = PointComplex(alg)
    report = Report("point cohomology")
    top = pc.rank if args.max_p is None else min(args.max_p, pc.rank)
    ok = True
    for p in range(pc.rank):
        m1 = pc.differential_matrix(p)
        m2 = pc.differential_matrix(p + 1) if p + 1 < pc.rank else []
        if m1 and m2 and m1[0] and m2[0]:
            prod_zero = all(
                sum(m2[i][t] * m1[t][j] for t in range(len(m1))) == 0
                for i in range(len(m2)) for j in range(len(m1[0])))
            ok = ok and prod_zero
    report.add("differential-squares-to-zero", ok, pc.rank)
    euler_cochain = pc.euler_characteristic()
    euler_betti = sum((-1) ** p * pc.betti(p) for p in range(pc.rank + 1))
    report.add("euler-characteristic-consistency",
               euler_cochain == euler_betti, 1,
               None if euler_cochain == euler_betti
               else f"{euler_cochain} != {euler_betti}")
    payload = {"table": pc.table(top)}
    return report, _config(args, alg), ("cohomology", payload)


def cmd_predual_diagnose(args):
    alg = algebroid_from_json(_load_json(args.algebroid))
    bundle = dc.predual_from_json(alg, _load_json(args.predual))
    diag = dc.predual_diagnose(bundle)
    report = Report("predual diagnosis")
    report.add("pairing-rank-computed", True, 1)
    return report, _config(args, alg), ("diagnosis", diag)


COMMANDS = {
    "verify-algebroid": cmd_verify_algebroid,
    "cartan": cmd_cartan,
    "connection-build": cmd_connection_build,
    "connection-verify": cmd_connection_verify,
    "curvature": cmd_curvature,
    "bianchi": cmd_bianchi,
    "bott": cmd_bott,
    "cohomology": cmd_cohomology,
    "predual-diagnose": cmd_predual_diagnose,
}


def _render(args, report, config, payload):
    doc = {"command": args.command, "config": config,
           "passed": report.passed,
           "checks": [c.to_dict() for c in report.checks]}
    if payload is not None:
        key, value = payload
        doc[key] = value
    if args.format == "json":
        return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"
    lines = [f"command: {args.command}"]
    for c in report.checks:
        mark = "PASS" if c.passed else "FAIL"
        line = f"[{mark}] {c.name} ({c.checked} tuples)"
        if not c.passed:
            if c.witness:
                line += f"\n       witness: {c.witness}"
            if c.residual:
                line += f"\n       residual: {c.residual}"
        lines.append(line)
    if payload is not None:
        key, value = payload
        if key == "cohomology":
            lines.append("p  dim  rank_d  betti")
            for row in value["table"]:
                lines.append(f"{row['p']:<3}{row['dim']:<5}"
                             f"{row['rank_d']:<8}{row['betti']}")
        elif key == "diagnosis":
            for k in sorted(value):
                lines.append(f"{k}: {value[k]}")
        elif key == "connection":
            lines.append(f"gamma entries: {len(value['gamma'])} nonzero rows")
    lines.append("result: " + ("all checks passed" if report.passed
                               else "checks FAILED"))
    return "\n".join(lines) + "\n"


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report, config, payload = COMMANDS[args.command](args)
    except (json.JSONDecodeError, ParseError, FileNotFoundError,
            KeyError) as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return 2
    except PreconditionError as exc:
        sys.stderr.write(f"precondition failed: {exc}\n")
        return 3
    text = _render(args, report, config, payload)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as handle:
            if args.command == "connection-build" and payload is not None:
                json.dump(payload[1], handle, sort_keys=True, indent=1)
                handle.write("\n")
            else:
                handle.write(text)
        if args.command == "connection-build":
            sys.stdout.write(text)
    else:
        sys.stdout.write(text)
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
