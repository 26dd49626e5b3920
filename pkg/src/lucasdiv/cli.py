"""Command-line front end: `lucasdiv <command> ...`.

Every command prints JSON (one object per line) except `verify-theorem`, which
streams CSV rows and finishes with a JSON summary. Integers that can grow
without bound (sequence terms, S-parts, polynomial values) are written as
decimal strings; small counters and indices stay numbers.

Exit codes: 0 success, 1 usage, 2 bound violation, 3 checkpoint mismatch,
4 witness certification failed at every precision up to 4096 bits.
"""
from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import algebraic, lucas_core, numtheory, order_solver, valuation
from .lucas_core import Identity, LucasParams
from .order_solver import DivRecord, ScanConfig, Status

SCHEMA_VERSION = "1"
CSV_HEADER = ["a", "b", "k", "m", "s_min", "n_witness", "structural", "bound_ok"]
CHECKPOINT_EVERY = 1000

EXIT_OK, EXIT_USAGE, EXIT_VIOLATION, EXIT_CHECKPOINT, EXIT_CERTIFY = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


# --- report rows -------------------------------------------------------------

@dataclass(frozen=True)
class ReportRow:
    """Flat record for JSON output. `fields` keeps insertion order so that
    parse -> serialize reproduces the original line byte for byte."""

    kind: str
    fields: tuple
    schema_version: str = SCHEMA_VERSION

    def to_dict(self) -> dict:
        return {"schema_version": self.schema_version, "kind": self.kind, **dict(self.fields)}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_json(cls, line: str) -> "ReportRow":
        d = json.loads(line)
        version = d.pop("schema_version")
        kind = d.pop("kind")
        return cls(kind, tuple(d.items()), version)

    def get(self, key):
        return dict(self.fields)[key]

    @classmethod
    def from_div_record(cls, rec: DivRecord, **extra) -> "ReportRow":
        fields = [("a", rec.a), ("b", rec.b), ("k", rec.k), ("m", rec.m),
                  ("s_min", rec.s_min), ("n_witness", rec.n_witness),
                  ("structural", rec.structural), ("bound_ok", rec.bound_ok),
                  ("status", rec.status.value)]
        return cls("order", tuple(fields) + tuple(extra.items()))

    def to_div_record(self) -> DivRecord:
        d = dict(self.fields)
        return DivRecord(d["a"], d["b"], d["k"], d["m"], d["s_min"], d["n_witness"],
                         d["structural"], d["bound_ok"], Status(d["status"]))


def csv_row(rec: DivRecord) -> list[str]:
    def opt(x):
        return "" if x is None else str(x)
    return [str(rec.a), str(rec.b), str(rec.k), str(rec.m), opt(rec.s_min), opt(rec.n_witness),
            "true" if rec.structural else "false", "true" if rec.bound_ok else "false"]


def parse_csv_row(row: list[str]) -> DivRecord:
    """Inverse of csv_row (the status column is not part of the CSV and comes back as FOUND
    or NONE_EXISTS)."""
    a, b, k, m = (int(x) for x in row[:4])
    s_min = int(row[4]) if row[4] else None
    n_wit = int(row[5]) if row[5] else None
    status = Status.FOUND if s_min is not None else Status.NONE_EXISTS
    return DivRecord(a, b, k, m, s_min, n_wit, row[6] == "true", row[7] == "true", status)


def _csv_line(values: list[str]) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerow(values)
    return buf.getvalue()


def _emit(obj) -> None:
    if isinstance(obj, ReportRow):
        print(obj.to_json())
    else:
        print(json.dumps(obj, separators=(",", ":")))


# --- parameter helpers ---------------------------------------------------------

def _params(a: int, b: int) -> LucasParams:
    try:
        return LucasParams(a, b)
    except lucas_core.DegenerateParamsError as exc:
        raise UsageError(f"{exc}; the divisibility results assume a != 0, b in {{-1, 1}} and "
                         "(a, b) not in {(1, -1), (-1, -1), (2, -1), (-2, -1)}") from None


def _env_precision(fallback: int) -> int:
    if os.environ.get("LUCASDIV_PRECISION") is None:
        return fallback
    try:
        return lucas_core.default_precision()
    except ValueError as exc:
        raise UsageError(str(exc)) from None


# --- commands ------------------------------------------------------------------

def cmd_seq(args) -> int:
    params = _params(args.a, args.b)
    if args.n_max < 0:
        raise UsageError("n_max must be >= 0")
    if args.mod is not None and args.mod < 2:
        raise UsageError("--mod must be >= 2")
    for row in lucas_core.lucas_table(params, args.n_max, args.mod):
        _emit({"n": row.index, "u": str(row.u), "v": str(row.v)})
    return EXIT_OK


def cmd_order(args) -> int:
    params = _params(args.a, args.b)
    if args.m < 2:
        raise UsageError("m must be >= 2")
    if args.k < 1:
        raise UsageError("k must be >= 1")
    if args.n is not None:
        if args.n < 0:
            raise UsageError("--n must be >= 0")
        s, status = order_solver.solve_at_n(params, args.k, args.m, args.n, args.s_cap)
        structural = s in order_solver.STRUCTURAL
        if s is None:
            bound_ok = status is Status.NONE_EXISTS
        else:
            bound_ok = structural or order_solver.bound_holds(args.m, s, args.k)
        rec = DivRecord(args.a, args.b, args.k, args.m, s, args.n if s is not None else None,
                        structural, bound_ok, status)
        _emit(ReportRow.from_div_record(rec, mode="per_n", n=args.n))
        return EXIT_OK
    if args.allow_n_zero:
        best, status = order_solver._min_over_n(params, args.k, args.m, args.s_cap, True)
        s_min, n_wit = best if best else (None, None)
        structural = s_min in order_solver.STRUCTURAL
        bound_ok = (status is Status.NONE_EXISTS) if s_min is None else \
            structural or order_solver.bound_holds(args.m, s_min, args.k)
        rec = DivRecord(args.a, args.b, args.k, args.m, s_min, n_wit, structural, bound_ok, status)
    else:
        rec = order_solver.solve_record(args.a, args.b, args.k, args.m, args.s_cap)
    _emit(ReportRow.from_div_record(rec, mode="min_over_n"))
    return EXIT_OK


def _scan_config(args) -> ScanConfig:
    b_values = tuple(sorted(set(args.b))) if args.b else (-1, 1)
    if args.s_cap is not None and args.s_cap < 4:
        raise UsageError("--s-cap must be >= 4")
    if args.k_max < 1:
        raise UsageError("--k-max must be >= 1")
    return ScanConfig((args.a_min, args.a_max), b_values, args.k_max, args.m_max, args.s_cap)


def config_hash(config: ScanConfig) -> str:
    key = {"schema_version": SCHEMA_VERSION, "a_range": list(config.a_range),
           "b_values": list(config.b_values), "k_min": config.k_min, "k_max": config.k_max,
           "m_min": config.m_min, "m_max": config.m_max, "s_cap": config.s_cap}
    return hashlib.sha256(json.dumps(key, sort_keys=True).encode()).hexdigest()


def write_checkpoint(path: str, chash: str, last, rows: int) -> None:
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        json.dump({"schema_version": SCHEMA_VERSION, "config_hash": chash,
                   "last_completed": list(last) if last else None, "rows_emitted": rows}, fh)
    os.replace(tmp, path)


def read_checkpoint(path: str) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _truncate_to_rows(path: str, rows: int) -> None:
    """Keep the header plus the first `rows` data lines of a CSV file."""
    keep = 0
    with open(path, "rb") as fh:
        for i, line in enumerate(fh):
            if i > rows:
                break
            keep += len(line)
    with open(path, "r+b") as fh:
        fh.truncate(keep)


def cmd_verify_theorem(args) -> int:
    config = _scan_config(args)
    chash = config_hash(config)
    grid_size = sum(1 for _ in config.coordinates())
    ckpt_path = args.checkpoint or (args.out + ".ckpt" if args.out else None)

    start_after, rows = None, 0
    if args.resume:
        if not args.out:
            raise UsageError("--resume needs --out pointing at the partial CSV")
        ckpt = read_checkpoint(args.resume)
        if ckpt.get("config_hash") != chash:
            print(f"lucasdiv: checkpoint {args.resume} was written for a different scan configuration",
                  file=sys.stderr)
            return EXIT_CHECKPOINT
        rows = ckpt["rows_emitted"]
        start_after = tuple(ckpt["last_completed"]) if ckpt["last_completed"] else None
        _truncate_to_rows(args.out, rows)
        ckpt_path = args.checkpoint or args.resume
        out = open(args.out, "a", encoding="utf-8", newline="")
    elif args.out:
        out = open(args.out, "w", encoding="utf-8", newline="")
        out.write(_csv_line(CSV_HEADER))
    else:
        out = sys.stdout
        out.write(_csv_line(CSV_HEADER))

    t0 = time.perf_counter()
    violations, last, emitted_now = 0, start_after, 0
    status = EXIT_OK

    def checkpoint():
        out.flush()
        if ckpt_path:
            write_checkpoint(ckpt_path, chash, last, rows)

    try:
        stream = order_solver.verify_theorem(config, workers=args.workers,
                                             start_after=start_after, raise_on_violation=True)
        for rec in stream:
            out.write(_csv_line(csv_row(rec)))
            rows += 1
            emitted_now += 1
            last = (rec.a, rec.b, rec.k, rec.m)
            if rows % CHECKPOINT_EVERY == 0:
                checkpoint()
            if args.max_rows is not None and emitted_now >= args.max_rows:
                break
    except order_solver.TheoremViolation as exc:
        violations += 1
        sys.stderr.write(_csv_line(csv_row(exc.record)))
        status = EXIT_VIOLATION
    except KeyboardInterrupt:
        checkpoint()
        if out is not sys.stdout:
            out.close()
        return 130
    checkpoint()
    if out is not sys.stdout:
        out.close()
    summary = {"grid_size": grid_size, "violations": violations,
               "rows_emitted": rows, "wall_seconds": round(time.perf_counter() - t0, 3)}
    # with CSV on stdout the summary goes to stderr so the CSV stays parseable
    print(json.dumps(summary, separators=(",", ":")), file=sys.stdout if args.out else sys.stderr)
    return status


def cmd_witness(args) -> int:
    params = _params(args.a, args.b)
    if args.v < 1 or args.k < 1:
        raise UsageError("k and v must be >= 1")
    if gcd(args.j, args.v) != 1:
        raise UsageError(f"j = {args.j} is not coprime to v = {args.v}")
    if params.a < 1:
        raise UsageError("witness search needs a >= 1")
    if args.bound < 1:
        raise UsageError("--bound must be >= 1")
    bits = args.precision if args.precision is not None else _env_precision(256)
    try:
        w = algebraic.find_dependence_auto(params, args.k, args.v, args.j, args.bound, bits)
    except algebraic.InsufficientPrecision as exc:
        print(f"lucasdiv: certification failed: {exc}", file=sys.stderr)
        return EXIT_CERTIFY
    if w is None:
        print("null")
        return EXIT_OK
    _emit(ReportRow("witness", (("R", w.R), ("S", w.S), ("torsion", w.torsion_order),
                                ("degenerate", w.degenerate), ("relation", w.relation))))
    return EXIT_OK


def cmd_valuation(args) -> int:
    params = _params(args.a, args.b)
    if args.m < 1:
        raise UsageError("m must be >= 1")
    if not numtheory.is_prime(args.p):
        raise UsageError(f"{args.p} is not prime")
    rep = valuation.valuation_report(params, args.p, args.m)
    _emit(ReportRow("valuation", (("a", args.a), ("b", args.b), ("p", rep.p), ("m", rep.m),
                                  ("nu", rep.nu_table), ("f_p", rep.f_p),
                                  ("nu_direct", rep.nu_direct), ("consistent", rep.consistent))))
    return EXIT_OK


def cmd_spart(args) -> int:
    params = _params(args.a, args.b)
    if args.m < 1:
        raise UsageError("m must be >= 1")
    try:
        primes = valuation.PrimeSet(int(x) for x in args.primes.split(",") if x.strip())
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    value = valuation.s_part(params, primes, args.m)
    _emit(ReportRow("spart", (("a", args.a), ("b", args.b), ("m", args.m),
                              ("primes", list(primes)), ("spart", str(value)))))
    return EXIT_OK


def cmd_identities(args) -> int:
    params = _params(args.a, args.b)
    if args.n_max < 0 or args.k_max < 1:
        raise UsageError("need --n-max >= 0 and --k-max >= 1")
    checked = {i.value: 0 for i in Identity}
    failures = []
    for k in range(1, args.k_max + 1):
        for which in Identity:
            if not lucas_core.identity_applies(params, k, which):
                continue
            for n in range(args.n_max + 1):
                checked[which.value] += 1
                if not lucas_core.check_comment_identity(params, k, n, which):
                    failures.append({"identity": which.value, "k": k, "n": n})
    _emit(ReportRow("identities", (("a", args.a), ("b", args.b), ("checked", checked),
                                   ("failures", failures))))
    return EXIT_OK if not failures else EXIT_VIOLATION


def cmd_cyclotomic(args) -> int:
    if args.v < 1:
        raise UsageError("v must be >= 1")
    poly = numtheory.cyclotomic(args.v)
    if args.at is None:
        _emit(ReportRow("cyclotomic", (("v", args.v), ("degree", poly.degree),
                                       ("coeffs", [str(c) for c in poly.coeffs]))))
        return EXIT_OK
    try:
        x = Fraction(args.at)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"--at expects an integer or fraction, got {args.at!r}") from None
    _emit(ReportRow("cyclotomic", (("v", args.v), ("at", str(x)), ("value", str(poly(x))))))
    return EXIT_OK


# --- parser --------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="lucasdiv", description="Lucas-sequence divisibility toolkit")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("seq", help="print (n, U_n, V_n) for n <= n_max")
    s.add_argument("a", type=int)
    s.add_argument("b", type=int)
    s.add_argument("n_max", type=int)
    s.add_argument("--mod", type=int)
    s.set_defaults(func=cmd_seq)

    s = sub.add_parser("order", help="least s with U_m | U_{n+k}^s - U_n^s")
    for name in ("a", "b", "k", "m"):
        s.add_argument(name, type=int)
    g = s.add_mutually_exclusive_group()
    g.add_argument("--n", type=int, help="fix n instead of minimizing over it")
    g.add_argument("--min-over-n", action="store_true", help="minimize over n >= 1 (default)")
    s.add_argument("--s-cap", type=int, help="largest s tried (default 4m)")
    s.add_argument("--allow-n-zero", action="store_true", help="let the n-minimization include n = 0")
    s.set_defaults(func=cmd_order)

    s = sub.add_parser("verify-theorem", help="scan a grid for m >= 20000 (sk)^2 with s not in {1,2,4}")
    s.add_argument("--a-min", type=int, default=1)
    s.add_argument("--a-max", type=int, default=6)
    s.add_argument("--b", type=int, action="append", choices=(-1, 1),
                   help="repeatable; default both -1 and 1")
    s.add_argument("--k-max", type=int, default=3)
    s.add_argument("--m-max", type=int, default=500)
    s.add_argument("--s-cap", type=int, help="largest s tried per record (default 4m)")
    s.add_argument("--workers", type=int, help="process count (default: all CPUs)")
    s.add_argument("--out", help="CSV destination (default stdout)")
    s.add_argument("--checkpoint", help="checkpoint path (default OUT.ckpt)")
    s.add_argument("--resume", metavar="CHECKPOINT", help="continue the scan recorded in CHECKPOINT")
    s.add_argument("--max-rows", type=int, help="stop after this many rows in this invocation")
    s.set_defaults(func=cmd_verify_theorem)

    s = sub.add_parser("witness", help="bounded search for alpha^R xi^S = 1")
    for name in ("a", "b", "k", "v", "j"):
        s.add_argument(name, type=int)
    s.add_argument("--bound", type=int, default=20)
    s.add_argument("--precision", type=int, help="starting precision in bits (default 256)")
    s.set_defaults(func=cmd_witness)

    s = sub.add_parser("valuation", help="nu_p(U_m) and the rank of appearance of p")
    for name in ("a", "b", "p", "m"):
        s.add_argument(name, type=int)
    s.set_defaults(func=cmd_valuation)

    s = sub.add_parser("spart", help="S-part of U_m")
    for name in ("a", "b", "m"):
        s.add_argument(name, type=int)
    s.add_argument("--primes", required=True, help="comma-separated primes, e.g. 2,3")
    s.set_defaults(func=cmd_spart)

    s = sub.add_parser("identities", help="check the closed-form factorizations")
    s.add_argument("a", type=int)
    s.add_argument("b", type=int)
    s.add_argument("--n-max", type=int, default=100)
    s.add_argument("--k-max", type=int, default=8)
    s.set_defaults(func=cmd_identities)

    s = sub.add_parser("cyclotomic", help="coefficients or a value of Phi_v")
    s.add_argument("v", type=int)
    s.add_argument("--at")
    s.set_defaults(func=cmd_cyclotomic)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # usage errors and --help
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"lucasdiv: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
