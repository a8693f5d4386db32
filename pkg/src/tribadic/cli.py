"""Command-line front end: classify, table, verify, zero, scan.

Machine-readable output: every command can emit a JSON record with the fields
{command, params, status, payload, precision_used, elapsed_ms}; `table` also
speaks CSV with columns p,N,ell,u.  Exit codes are a function of the status
alone: 0 pass/decided, 1 fail (a counterexample or table disagreement),
2 undecided, 3 excluded, 64 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from fractions import Fraction

from ._factor import is_prime
from .galois import EXCLUDED_PRIMES, prime_context
from .interpolation import (
    ConditionNotMet,
    classify_zero,
    hensel_zero,
    series_coeffs,
    strassman_mu,
)
from .padic import DEFAULT_PRECISION, PrecisionError
from .tribonacci import trib_mod
from .classifier import (
    BUILTIN_SPEC_NAMES,
    ClassificationRecord,
    FormulaCase,
    FormulaSpec,
    STATUS_EXCLUDED,
    STATUS_UNDECIDED,
    builtin_spec,
    classify_prime,
    derive_linear_formula,
    published_table,
    reproduce_table,
    scan_range,
    validate_published_rows,
    verify_formula,
)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_UNDECIDED = 2
EXIT_EXCLUDED = 3
EXIT_USAGE = 64

_EXIT_BY_STATUS = {
    "pass": EXIT_PASS,
    "fail": EXIT_FAIL,
    "undecided": EXIT_UNDECIDED,
    "excluded": EXIT_EXCLUDED,
}


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors, which collides with "undecided"
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _jsonable(x):
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, float) and x == float("inf"):  # the nu_p(0) marker
        return "inf"
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _verdict_dict(v):
    return _jsonable(
        {
            "status": v.status,
            "Q": v.q,
            "ell": v.ell,
            "u": v.u,
            "zero_digits": list(v.zero_digits) if v.zero_digits else None,
            "diagnostic": v.diagnostic,
            "detail": v.detail,
        }
    )


def spec_to_dict(spec: FormulaSpec) -> dict:
    return _jsonable(
        {
            "p": spec.p,
            "Q": spec.q,
            "default_kappa": spec.default_kappa,
            "cases": [
                {"residues": list(c.residues), "kappa": c.kappa, "a": c.a, "mu": c.mu}
                for c in spec.cases
            ],
        }
    )


def _parse_target(a):
    if a is None or isinstance(a, int):
        return a
    if isinstance(a, str):
        if "/" in a:
            num, den = a.split("/")
            return Fraction(int(num), int(den))
        return int(a)
    raise ValueError(f"bad linear target {a!r}")


def spec_from_dict(data: dict) -> FormulaSpec:
    cases = tuple(
        FormulaCase(tuple(c["residues"]), c["kappa"], _parse_target(c.get("a")), c.get("mu", 1))
        for c in data["cases"]
    )
    return FormulaSpec(data["p"], data["Q"], cases, data.get("default_kappa", 0))


def _record_dict(rec: ClassificationRecord) -> dict:
    out = {
        "p": rec.p,
        "d": rec.d,
        "N": rec.n_period,
        "ml": _verdict_dict(rec.verdict_ml),
        "rational": _verdict_dict(rec.verdict_rat),
        "zero_table": [
            _jsonable({"ell": i.ell, "deriv_ok": i.deriv_ok, "u": i.u, "class": i.target})
            for i in rec.zero_table
        ],
    }
    if rec.formula is not None:
        out["formula"] = spec_to_dict(rec.formula)
    return out


def _emit(args, command, params, status, payload, prec_used, t0) -> int:
    record = {
        "command": command,
        "params": _jsonable(params),
        "status": status,
        "payload": payload,
        "precision_used": prec_used,
        "elapsed_ms": int((time.time() - t0) * 1000),
    }
    if args.format == "json":
        print(json.dumps(record, indent=2))
    elif args.format == "csv":
        _print_csv(command, payload)
    else:
        _print_text(record)
    return _EXIT_BY_STATUS[status]


def _print_csv(command, payload):
    w = csv.writer(sys.stdout)
    if command == "table":
        w.writerow(["p", "N", "ell", "u"])
        for row in payload["rows"]:
            w.writerow([row["p"], row["N"], row["ell"], row["u"]])
    elif command == "classify":
        w.writerow(["p", "N", "ml_status", "ml_ell", "ml_u", "ml_Q", "rat_status", "rat_Q"])
        r = payload
        w.writerow(
            [r["p"], r["N"], r["ml"]["status"], r["ml"]["ell"], r["ml"]["u"], r["ml"]["Q"],
             r["rational"]["status"], r["rational"]["Q"]]
        )
    elif command == "verify":
        w.writerow(["n", "predicted", "actual"])
        for m in payload["mismatches"]:
            w.writerow([m["n"], m["predicted"], m["actual"]])
    else:
        print(json.dumps(payload))


def _print_text(record):
    print(f"# {record['command']}  status={record['status']}  "
          f"precision={record['precision_used']}  elapsed={record['elapsed_ms']}ms")
    print(json.dumps(record["payload"], indent=2))


def table_rows_to_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(["p", "N", "ell", "u"])
    for r in rows:
        w.writerow([r.p, r.n_period, r.ell, r.u])
    return buf.getvalue()


def table_rows_from_csv(text: str):
    out = []
    for rec in csv.DictReader(io.StringIO(text)):
        out.append(
            {k: (int(v) if v not in ("", None) else None) for k, v in
             (("p", rec["p"]), ("N", rec["N"]), ("ell", rec["ell"]), ("u", rec["u"]))}
        )
    return out


# ---------------------------------------------------------------------------
# subcommands


def _cmd_classify(args) -> int:
    t0 = time.time()
    if not is_prime(args.prime):
        print(f"classify: {args.prime} is not prime", file=sys.stderr)
        return EXIT_USAGE
    rec = classify_prime(args.prime, args.precision)
    payload = _record_dict(rec)
    if rec.verdict_ml.status == STATUS_EXCLUDED:
        status = "excluded"
    elif rec.verdict_ml.status == STATUS_UNDECIDED and rec.verdict_rat.status == STATUS_UNDECIDED:
        status = "undecided"
    else:
        status = "pass"  # at least one conjecture form was decided
    return _emit(args, "classify", {"prime": args.prime, "precision": args.precision},
                 status, payload, rec.prec, t0)


def _cmd_table(args) -> int:
    t0 = time.time()
    rows = reproduce_table(args.max, args.precision, jobs=args.jobs)
    payload = {
        "rows": [
            {"p": r.p, "N": r.n_period, "ell": r.ell, "u": r.u, "status": r.status} for r in rows
        ]
    }
    status = "pass"
    if args.validate_paper:
        checks = validate_published_rows(args.precision, our_rows=rows, p_max=args.max)
        bad = [c for c in checks if not c.ok]
        payload["published_validation"] = {
            "rows_checked": len(checks),
            "disagreements": [
                {"p": c.p, "N": c.n_matches, "ell_is_zero": c.ell_is_zero,
                 "deriv_ok": c.deriv_holds, "u": c.u_matches}
                for c in bad
            ],
        }
        if bad:
            status = "fail"
    return _emit(args, "table",
                 {"max": args.max, "precision": args.precision, "validate_paper": args.validate_paper},
                 status, payload, args.precision, t0)


def _load_spec(name: str) -> FormulaSpec:
    if name in BUILTIN_SPEC_NAMES:
        return builtin_spec(name)
    with open(name) as fh:
        return spec_from_dict(json.load(fh))


def _cmd_verify(args) -> int:
    t0 = time.time()
    try:
        spec = _load_spec(args.spec)
    except (OSError, KeyError) as exc:
        print(f"verify: cannot load spec {args.spec!r}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    lo, _, hi = args.range.partition("..")
    lo, hi = int(lo), int(hi)
    if hi < lo:
        print("verify: empty range", file=sys.stderr)
        return EXIT_USAGE
    mismatches = verify_formula(spec, lo, hi)
    payload = {
        "spec": spec_to_dict(spec),
        "range": [lo, hi],
        "mismatches": [_jsonable({"n": m.n, "predicted": m.predicted, "actual": m.actual})
                       for m in mismatches],
    }
    status = "pass" if not mismatches else "fail"
    return _emit(args, "verify", {"spec": args.spec, "range": args.range}, status, payload,
                 DEFAULT_PRECISION, t0)


def _cmd_zero(args) -> int:
    t0 = time.time()
    if not is_prime(args.prime) or args.prime in EXCLUDED_PRIMES:
        print(f"zero: need an admissible prime (not 2 or 11), got {args.prime}", file=sys.stderr)
        return EXIT_USAGE
    p, ell, s = args.prime, args.ell, args.multiplier
    prec = args.precision
    for attempt in range(3):
        try:
            return _zero_once(args, p, ell, s, prec << attempt, t0)
        except PrecisionError:
            continue
    print("zero: precision escalation exhausted", file=sys.stderr)
    return EXIT_FAIL


def _zero_once(args, p, ell, s, prec, t0) -> int:
    ctx = prime_context(p, prec)
    params = {"prime": p, "ell": ell, "multiplier": s, "precision": prec}
    payload = {"p": p, "N": ctx.n_period, "ell": ell, "s": s}
    divides = trib_mod(ell, p) == 0
    payload["divides"] = divides
    if not divides:
        payload["conclusion"] = "p does not divide T(ell): f_ell has no zero on Z_p"
        return _emit(args, "zero", params, "pass", payload, prec, t0)
    series = series_coeffs(ctx, ell, s)
    payload["e"] = series.e
    payload["mu"] = strassman_mu(series)
    try:
        record = hensel_zero(series)
        payload["deriv_ok"] = True
    except ConditionNotMet:
        payload["deriv_ok"] = False
        cert = derive_linear_formula(ctx, ell, s)
        if cert is None:
            payload["conclusion"] = "derivative condition fails and no linear certificate was found"
            return _emit(args, "zero", params, "undecided", payload, prec, t0)
        payload["linear_certificate"] = _jsonable(
            {"a": cert.a, "kappa": cert.kappa, "mu": cert.mu, "Q": cert.q, "residue": cert.residue}
        )
        return _emit(args, "zero", params, "pass", payload, prec, t0)
    target = classify_zero(ctx, record)
    payload["zero"] = {
        "digits": record.b.digits(),
        "residue": record.b.residue,
        "unique": record.unique,
        "newton_residual_valuations": list(record.residual_vals),
        "classification": _jsonable({"kind": target.kind,
                                     "value": target.value if target.kind != "other" else None}),
    }
    cert = derive_linear_formula(ctx, ell, s)
    if cert is not None:
        payload["linear_certificate"] = _jsonable(
            {"a": cert.a, "kappa": cert.kappa, "mu": cert.mu, "Q": cert.q, "residue": cert.residue}
        )
    return _emit(args, "zero", params, "pass", payload, prec, t0)


def _cmd_scan(args) -> int:
    t0 = time.time()
    summary = scan_range(args.max, args.precision, jobs=args.jobs)
    payload = _jsonable(
        {
            "p_max": summary.p_max,
            "total_primes": summary.total_primes,
            "ml": summary.ml,
            "rational": summary.rat,
            "cube_root_family": summary.cube_root_family,
            "cube_root_family_fraction": summary.cube_root_family_fraction,
            "cube_root_family_expected_density": 1 / 12,
        }
    )
    return _emit(args, "scan", {"max": args.max, "precision": args.precision},
                 "pass", payload, args.precision, t0)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="tribadic", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--precision", type=int, default=DEFAULT_PRECISION,
                        help="working p-adic precision K (default 24)")
        sp.add_argument("--format", choices=("json", "csv", "text"), default="text")

    sp = sub.add_parser("classify", help="decide both conjecture forms for one prime")
    sp.add_argument("--prime", type=int, required=True)
    common(sp)
    sp.set_defaults(fn=_cmd_classify)

    sp = sub.add_parser("table", help="reproduce the failure-witness table up to --max")
    sp.add_argument("--max", type=int, default=600)
    sp.add_argument("--validate-paper", action="store_true",
                    help="cross-check against the embedded published table")
    sp.add_argument("--jobs", type=int, default=1)
    common(sp)
    sp.set_defaults(fn=_cmd_table)

    sp = sub.add_parser("verify", help="check a closed-form valuation spec against the sequence")
    sp.add_argument("--spec", required=True,
                    help=f"one of {', '.join(BUILTIN_SPEC_NAMES)} or a JSON file")
    sp.add_argument("--range", default="1..10000", help="inclusive range a..b")
    common(sp)
    sp.set_defaults(fn=_cmd_verify)

    sp = sub.add_parser("zero", help="locate and classify the zero of one interpolant f_ell")
    sp.add_argument("--prime", type=int, required=True)
    sp.add_argument("--ell", type=int, required=True)
    sp.add_argument("--multiplier", type=int, default=1, help="period multiplier s (default 1)")
    common(sp)
    sp.set_defaults(fn=_cmd_zero)

    sp = sub.add_parser("scan", help="verdict counts and density summary up to --max")
    sp.add_argument("--max", type=int, default=600)
    sp.add_argument("--jobs", type=int, default=1)
    common(sp)
    sp.set_defaults(fn=_cmd_scan)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else EXIT_USAGE
    return args.fn(args)


def entrypoint() -> None:  # console-script shim
    raise SystemExit(main())


if __name__ == "__main__":
    raise SystemExit(main())
