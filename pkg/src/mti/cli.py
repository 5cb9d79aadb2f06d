"""Command line interface.

Matrices are passed as JSON arrays of arrays of decimal integer strings
(strings so that 64-bit-lossy JSON readers round-trip them), either inline
or as a path to a file containing the JSON.  Every subcommand can emit a
stable JSON document ("schema": 1) with --json.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .bqf import classes_with_trace, hyperbolic_classes_below, class_count_with_trace
from .census import census, density_report, theorem_constants
from .csw import compare_with_rep_trace, csw_invariant
from .intmat import IntMatrix, mapping_torus_homology, smith_normal_form
from .modular import (
    COSET_REPRESENTATIVES,
    ZETA3,
    lambda_function,
    lemma_cool_report,
    mobius,
)
from .sl2 import (
    Sl2Matrix,
    classify_mod_2,
    classify_mod_p,
    dw_invariant_genus_g,
    dw_invariant_sl2,
    genus1_homology,
)
from .weight1 import qexpansion_check

SCHEMA = 1


class DomainError(Exception):
    """Invalid mathematical input (exit code 1, not a usage error)."""


def _load_matrix(arg: str) -> IntMatrix:
    text = arg
    if not arg.lstrip().startswith("["):
        with open(arg, "r", encoding="utf-8") as fh:
            text = fh.read()
    try:
        return IntMatrix.from_json(text)
    except (ValueError, json.JSONDecodeError) as exc:
        raise DomainError(f"bad matrix JSON: {exc}") from exc


def _as_sl2(m: IntMatrix) -> Sl2Matrix:
    if m.rows != 2 or m.cols != 2:
        raise DomainError("expected a 2x2 matrix")
    try:
        return Sl2Matrix(m[0, 0], m[0, 1], m[1, 0], m[1, 1])
    except ValueError as exc:
        raise DomainError(str(exc)) from exc


def _emit(args, payload: dict, text: str) -> None:
    if getattr(args, "json", False):
        payload = {"schema": SCHEMA, **payload}
        print(json.dumps(payload, indent=None, sort_keys=True))
    else:
        print(text)


def _cmd_snf(args) -> int:
    m = _load_matrix(args.matrix)
    if args.subtract_identity:
        if m.rows != m.cols:
            raise DomainError("--subtract-identity needs a square matrix")
        m = m - IntMatrix.identity(m.rows)
    res = smith_normal_form(m)
    payload = {
        "diag": [str(d) for d in res.diag],
        "left": json.loads(res.left.to_json()),
        "right": json.loads(res.right.to_json()),
    }
    _emit(args, payload, f"diag {res.diag}")
    return 0


def _cmd_dw(args) -> int:
    m = _load_matrix(args.matrix)
    if m.rows == 2:
        val = dw_invariant_sl2(_as_sl2(m), args.prime)
    else:
        try:
            val = dw_invariant_genus_g(m, args.prime, check_symplectic=not args.no_check)
        except ValueError as exc:
            raise DomainError(str(exc)) from exc
    payload = {"p": args.prime, "value": str(val.value), "exponent": val.exponent}
    _emit(args, payload, str(val.value))
    return 0


def _cmd_classify(args) -> int:
    a = _as_sl2(_load_matrix(args.matrix))
    if args.prime == 2:
        label = classify_mod_2(a)
    else:
        try:
            label = classify_mod_p(a, args.prime)
        except ValueError as exc:
            raise DomainError(str(exc)) from exc
    payload = {
        "p": label.p,
        "kind": label.kind,
        "trace_mod_p": label.trace_mod_p,
        "qr_flag": label.qr_flag,
    }
    _emit(args, payload, label.kind)
    return 0


def _cmd_homology(args) -> int:
    m = _load_matrix(args.matrix)
    if m.rows == 2:
        group = genus1_homology(_as_sl2(m))
    else:
        try:
            group = mapping_torus_homology(m, check_symplectic=not args.no_check)
        except ValueError as exc:
            raise DomainError(str(exc)) from exc
    payload = {"free_rank": group.free_rank, "torsion": [str(t) for t in group.torsion]}
    _emit(args, payload, str(group))
    return 0


def _cmd_classes(args) -> int:
    if args.trace is None and args.tmax is None:
        raise DomainError("need --trace or --tmax")
    if args.trace is not None:
        if abs(args.trace) <= 2:
            raise DomainError("|trace| must exceed 2")
        reps = classes_with_trace(args.trace)
        payload = {
            "trace": args.trace,
            "classes": [
                {
                    "matrix": [[str(r.matrix.a), str(r.matrix.b)], [str(r.matrix.c), str(r.matrix.d)]],
                    "form": [str(r.form.m), str(r.form.l), str(r.form.k)],
                    "content": str(r.primitive_content),
                }
                for r in reps
            ],
        }
        _emit(args, payload, json.dumps(payload["classes"]))
        return 0
    if args.tmax < 4:
        raise DomainError("--tmax must be at least 4")
    counts = [(t, class_count_with_trace(t)) for t in range(3, args.tmax)]
    if args.count_only:
        payload = {"tmax": args.tmax, "counts": [{"t": t, "classes_per_sign": c} for t, c in counts]}
        text = "\n".join(f"{t} {c}" for t, c in counts)
        _emit(args, payload, text)
        return 0
    total = 0
    lines = []
    for rep in hyperbolic_classes_below(args.tmax):
        total += 1
        lines.append(f"{rep.trace} {rep.form.as_tuple()} content={rep.primitive_content}")
    _emit(args, {"tmax": args.tmax, "total": total}, "\n".join(lines))
    return 0


def _cmd_census(args) -> int:
    if args.tmax < 10:
        raise DomainError("--tmax must be at least 10")
    threads = args.threads or int(os.environ.get("MTI_THREADS", "1"))
    report = census(args.prime, args.tmax, threads=threads)
    csv_text = report.to_csv()
    if args.csv:
        if args.csv == "-":
            sys.stdout.write(csv_text)
        else:
            with open(args.csv, "w", encoding="utf-8") as fh:
                fh.write(csv_text)
    dens = density_report(report)
    consts = theorem_constants(report)
    payload = {
        "p": report.p,
        "T": report.T,
        "total": report.total_classes,
        "total_pos": report.total_pos,
        "per_label": report.per_label,
        "dw_sum": report.dw_sum,
        "snf_triple": list(report.snf_triple),
        "li_T2": report.li_T2,
        "density": [
            {
                "kind": r.kind,
                "count": r.count,
                "empirical": r.empirical,
                "predicted": r.predicted,
                "deviation": r.deviation,
            }
            for r in dens.rows
        ],
        "constants": {
            "dw_all": consts.dw_all,
            "dw_pos": consts.dw_pos,
            "dw_printed": consts.dw_printed,
            "dw_derived": consts.dw_derived,
            "snf_all": list(consts.snf_all),
            "snf_pos": list(consts.snf_pos),
            "snf_printed": list(consts.snf_printed),
            "snf_derived": list(consts.snf_derived),
        },
    }
    if args.json_out:
        with open(args.json_out, "w", encoding="utf-8") as fh:
            json.dump({"schema": SCHEMA, **payload}, fh, sort_keys=True)
    lines = [
        f"census p={report.p} T={report.T}: {report.total_classes} classes "
        f"({report.total_pos} with positive trace), li(T^2)={report.li_T2:.3f}",
        f"  per label: {report.per_label}",
        f"  dw_sum={report.dw_sum} snf_triple={report.snf_triple}",
        "  label kind | count | empirical | predicted | rel.dev",
    ]
    for r in dens.rows:
        lines.append(
            f"  {r.kind:>4} | {r.count:>8} | {r.empirical:.6f} | {r.predicted:.6f} | {r.deviation:.4f}"
        )
    lines.append(
        "  constants vs li(T^2): "
        f"dw all-classes={consts.dw_all:.4f} positive-trace={consts.dw_pos:.4f} "
        f"printed={consts.dw_printed:.4f} class-size-derived={consts.dw_derived:.4f}"
    )
    lines.append(
        f"  snf all-classes=({', '.join(f'{v:.5f}' for v in consts.snf_all)}) "
        f"positive-trace=({', '.join(f'{v:.5f}' for v in consts.snf_pos)})"
    )
    lines.append(
        f"  snf printed=({', '.join(f'{v:.5f}' for v in consts.snf_printed)}) "
        f"class-size-derived=({', '.join(f'{v:.5f}' for v in consts.snf_derived)})"
    )
    lines.append(
        "  note: all-classes constants run ~2x the class-size-derived ones; the"
        " positive-trace normalization (one class per +-pair) matches them."
    )
    _emit(args, payload, "\n".join(lines))
    return 0


def _cmd_lambda_check(args) -> int:
    expected = {
        "Id": complex(0.5, -0.866025),
        "T": complex(0.5, 0.866025),
        "S": complex(0.5, 0.866025),
        "T.S": complex(0.5, -0.866025),
        "T.S.T": complex(0.5, 0.866025),
        "-S.T^-1": complex(0.5, -0.866025),
    }
    rows = []
    ok = True
    for name, ref in expected.items():
        val = lambda_function(mobius(COSET_REPRESENTATIVES[name], ZETA3)).value
        good = abs(val - ref) < 1e-5
        ok = ok and good
        rows.append((name, val, ref, good))
    lemma = lemma_cool_report()
    payload = {
        "lambda_values": [
            {"coset": n, "value": [v.real, v.imag], "reference": [r.real, r.imag], "pass": g}
            for n, v, r, g in rows
        ],
        "log_formula": [
            {
                "coset": r.name,
                "mod2_class": r.mod2_class,
                "principal": r.formula_principal,
                "positive_branch": r.formula_positive,
                "z": r.z_value,
                "agrees": r.agrees,
            }
            for r in lemma
        ],
    }
    lines = ["coset | computed | reference | pass"]
    for n, v, r, g in rows:
        lines.append(f"{n:>8} | {v.real:+.6f}{v.imag:+.6f}i | {r.real:+.6f}{r.imag:+.6f}i | {g}")
    lines.append("coset | class | formula(principal) | formula([0,2pi)) | Z | agrees")
    for r in lemma:
        lines.append(
            f"{r.name:>8} | {r.mod2_class} | {r.formula_principal:.6f} | "
            f"{r.formula_positive:.6f} | {r.z_value} | {'ok' if r.agrees else 'FLAG'}"
        )
    _emit(args, payload, "\n".join(lines))
    return 0 if ok else 1


def _cmd_csw(args) -> int:
    a = _as_sl2(_load_matrix(args.matrix))
    if abs(a.trace) <= 2:
        raise DomainError("|trace| must exceed 2")
    if args.level < 1:
        raise DomainError("--level must be a positive integer")
    if args.oracle:
        cmp_ = compare_with_rep_trace(a, args.level)
        payload = {
            "level": args.level,
            "gauss_sum": [cmp_.gauss_sum.real, cmp_.gauss_sum.imag],
            "rep_trace": [cmp_.trace.real, cmp_.trace.imag],
            "modulus_difference": cmp_.modulus_difference,
            "phase_difference_turns": cmp_.phase_difference,
        }
        text = (
            f"gauss sum  {cmp_.gauss_sum:.10f}\n"
            f"rep trace  {cmp_.trace:.10f}\n"
            f"|mod diff| {cmp_.modulus_difference:.3e}\n"
            f"phase diff {cmp_.phase_difference} turns"
        )
    else:
        z = csw_invariant(a, args.level)
        payload = {"level": args.level, "gauss_sum": [z.real, z.imag]}
        text = f"{z:.10f}"
    _emit(args, payload, text)
    return 0


def _cmd_modform(args) -> int:
    try:
        report = qexpansion_check(args.d, args.pmax)
    except ValueError as exc:
        raise DomainError(str(exc)) from exc
    payload = {
        "d": report.d,
        "pmax": report.pmax,
        "mismatches": report.mismatches,
        "rows": [
            {
                "p": r.p,
                "a_p": r.computed,
                "reference": r.reference,
                "pattern": r.pattern,
                "mod2_class": r.mod2_class,
                "z": r.z_value,
            }
            for r in report.rows
        ],
    }
    lines = ["p | a_p | ref | splitting | mod-2 class | Z | Z-2"]
    for r in report.rows:
        lines.append(
            f"{r.p:>3} | {r.computed:>2} | {r.reference:>2} | {r.pattern:>6} | "
            f"{r.mod2_class} | {r.z_value} | {r.z_value - 2}"
        )
    lines.append(f"mismatches: {report.mismatches or 'none'}")
    _emit(args, payload, "\n".join(lines))
    return 0 if not report.mismatches else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mti",
        description="Mapping-torus invariants: partition functions, class enumeration, densities.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_matrix(p):
        p.add_argument("--matrix", required=True, help="inline JSON or path to JSON file")

    p = sub.add_parser("snf", help="Smith normal form (optionally of M - Id)")
    add_matrix(p)
    p.add_argument("--subtract-identity", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_snf)

    p = sub.add_parser("dw", help="Z/p partition function of the mapping torus")
    add_matrix(p)
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--no-check", action="store_true", help="skip the symplectic validation")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_dw)

    p = sub.add_parser("classify", help="conjugacy class mod p")
    add_matrix(p)
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("homology", help="H1 of the mapping torus")
    add_matrix(p)
    p.add_argument("--no-check", action="store_true", help="skip the symplectic validation")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_homology)

    p = sub.add_parser("classes", help="hyperbolic classes by trace")
    p.add_argument("--trace", type=int)
    p.add_argument("--tmax", type=int)
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_classes)

    p = sub.add_parser("census", help="classify all classes with |Tr| < T mod p")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--tmax", type=int, required=True)
    p.add_argument("--csv", help="CSV output path, or - for stdout")
    p.add_argument("--json-out", dest="json_out", help="JSON output path")
    p.add_argument("--threads", type=int, default=0, help="fallback: MTI_THREADS")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_census)

    p = sub.add_parser("lambda-check", help="lambda values and log-formula table")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_lambda_check)

    p = sub.add_parser("csw", help="level-k Gauss-sum invariant")
    add_matrix(p)
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--oracle", action="store_true", help="also evaluate the rep-trace oracle")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_csw)

    p = sub.add_parser("modform", help="weight-one coefficient comparison table")
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--pmax", type=int, default=100)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_modform)

    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except (DomainError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
