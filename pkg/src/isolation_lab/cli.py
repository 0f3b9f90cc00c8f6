"""Command-line harness for sweeps, tables, extremal checks, and certificates.

Subcommands
-----------
* ``sweep``    -- run one bound over every connected graph from a source,
                  solving iota exactly and (for the E_2/E_3 bounds) also
                  producing a certified isolating set and checking the
                  sandwich  iota <= |certificate| <= bound.
* ``ckn``      -- table of c_{k,n} = max iota_k(G)/n over connected n-vertex
                  graphs, as exact rationals with a witness graph each.
* ``extremal`` -- check the equality rows of the bound-attaining families.
* ``emit``     -- print constructions (or the builtin enumeration) as graph6.
* ``solve``    -- exact iota of given graphs for one family, with witness.
* ``certify``  -- certified isolating set with its case trace; refuses the
                  exception graphs by name.

Exit codes: 0 clean, 1 violation (or refused certificate), 2 usage error,
3 malformed graph6 input.  Machine-readable reports go to ``--json``
(JSON-lines) and ``--csv``; the human summary always goes to stdout.
Per-graph rows carry the keys
{graph6, n, leaves, iota, bound, exception, tight, cert_size?, case_trace?}.

A ``--budget S`` caps the exact solver at sets of size S per graph; graphs
whose optimum exceeds the cap become "skipped (budget)" rows instead of
aborting the run.  ``--jobs N`` (default from ISOLATION_LAB_JOBS) fans
per-graph work out to N processes; results are merged back in input order,
so reports are deterministic for a fixed command line.
"""

from __future__ import annotations

import argparse
import csv
import json
import multiprocessing
import os
import sys
import time
from fractions import Fraction
from typing import Iterable, Iterator, Optional, TextIO

from .bounds import (
    THEOREMS,
    check_bound,
    classify_exception,
    theorem_bound,
    theorem_family,
)
from .constructions import build_B, build_B_prime_7r_C6, build_B_prime_P3
from .enumeration import BUILTIN_MAX_N, connected_graphs, read_graph6_stream
from .families import FamilySpec, edge_family, exact_iota
from .graphs import (
    Graph,
    Graph6Error,
    bits,
    graph6_decode,
    graph6_encode,
    is_connected,
    leaf_count,
)
from .prover import InternalConsistencyError, isolate_k2, isolate_k3

ROW_FIELDS = (
    "graph6", "n", "leaves", "iota", "bound", "exception", "tight",
    "cert_size", "case_trace",
)

# How the certify refusals name the exception graphs.
EXCEPTION_NAMES = {
    "P3": "3-vertex-path exception",
    "K3": "triangle exception",
    "K13": "3-leaf-star exception",
    "C6": "6-cycle exception",
    "C6P": "pendant-6-cycle exception",
    "C6PP": "chorded-pendant-6-cycle exception",
    "C7": "7-cycle exception",
    "K2": "single-edge exception",
    "C5": "5-cycle exception",
}


class UsageError(Exception):
    """Bad combination of arguments (exit code 2)."""


# ===== Family / source plumbing =============================================


def parse_family(text: str):
    """Map a --family value to (label, FamilySpec, theorem id or None, k).

    ``e1``/``e2``/``e3`` and ``cycles`` carry a proven bound; ``k:K`` is the
    generic edge family E_K, which only has one for K <= 3.
    """
    table = {
        "e1": ("e1", edge_family(1), "k1", 1),
        "e2": ("e2", edge_family(2), "k2", 2),
        "e3": ("e3", edge_family(3), "k3", 3),
        "cycles": ("cycles", theorem_family("cycles"), "cycles", None),
    }
    if text in table:
        return table[text]
    if text.startswith("k:"):
        try:
            k = int(text[2:])
        except ValueError:
            raise UsageError(f"bad family {text!r}: k:K needs an integer K")
        if k < 1:
            raise UsageError("k:K needs K >= 1")
        theorem = {1: "k1", 2: "k2", 3: "k3"}.get(k)
        return (text, edge_family(k), theorem, k)
    raise UsageError(
        f"unknown family {text!r} (choose e1, e2, e3, cycles, or k:K)"
    )


def _resolve_jobs(value: Optional[str]) -> int:
    if value is None:
        value = os.environ.get("ISOLATION_LAB_JOBS", "1")
        where = "ISOLATION_LAB_JOBS"
    else:
        where = "--jobs"
    try:
        jobs = int(value)
    except ValueError:
        raise UsageError(f"{where} must be an integer, got {value!r}")
    if jobs < 1:
        raise UsageError(f"{where} must be >= 1, got {jobs}")
    return jobs


def iter_source(
    source: str,
    n_min: int,
    n_max: int,
    strict: bool,
) -> Iterator[Graph]:
    """Connected graphs with n_min <= n <= n_max from a --source value.

    ``builtin`` enumerates every isomorphism class up to n_max; ``file:PATH``
    and ``-`` read graph6 lines (disconnected and out-of-range graphs are
    dropped, since the bounds only speak about connected graphs).
    """
    if source == "builtin":
        if n_max > BUILTIN_MAX_N:
            raise UsageError(
                f"builtin enumeration stops at n = {BUILTIN_MAX_N}; "
                f"use --source file:PATH for larger sweeps"
            )
        for n in range(n_min, n_max + 1):
            yield from connected_graphs(n)
        return

    if source == "-":
        lines: Iterable[str] = sys.stdin
    elif source.startswith("file:"):
        path = source[5:]
        try:
            lines = open(path, "r", encoding="ascii")
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc}")
    else:
        raise UsageError(
            f"unknown source {source!r} (choose builtin, file:PATH, or -)"
        )

    issues: list[tuple[int, str]] = []
    try:
        for g in read_graph6_stream(
            lines, connected_only=True, strict=strict, issues=issues
        ):
            if n_min <= g.n <= n_max:
                yield g
    finally:
        if lines is not sys.stdin:
            lines.close()  # type: ignore[union-attr]
        for line_no, message in issues:
            print(f"warning: skipped line {line_no}: {message}", file=sys.stderr)


class _Writers:
    """Optional JSON-lines and CSV side outputs for per-row reports."""

    def __init__(self, json_path: Optional[str], csv_path: Optional[str],
                 fields: tuple[str, ...] = ROW_FIELDS):
        self.fields = fields
        self._json: Optional[TextIO] = None
        self._csv_file: Optional[TextIO] = None
        self._csv = None
        if json_path:
            self._json = open(json_path, "w", encoding="ascii")
        if csv_path:
            self._csv_file = open(csv_path, "w", encoding="ascii", newline="")
            self._csv = csv.DictWriter(self._csv_file, fieldnames=fields,
                                       restval="")
            self._csv.writeheader()

    def write(self, row: dict) -> None:
        if self._json is not None:
            self._json.write(json.dumps(row) + "\n")
        if self._csv is not None:
            self._csv.writerow(row)

    def close(self) -> None:
        if self._json is not None:
            self._json.close()
        if self._csv_file is not None:
            self._csv_file.close()


# ===== sweep =================================================================


def _sweep_one(task: tuple[str, str, Optional[int]]) -> tuple[dict, list[str]]:
    """Check one graph6 line against one bound; runs inside worker processes.

    Returns the report row plus any problem messages (bound violations or
    prover failures).  The sandwich iota <= |certificate| <= bound is checked
    here for the E_2/E_3 bounds.
    """
    g6, theorem, budget = task
    g = graph6_decode(g6)
    rec = check_bound(g, theorem, budget=budget)
    row = {
        "graph6": rec.graph6,
        "n": rec.n,
        "leaves": rec.leaves,
        "iota": rec.iota,
        "bound": rec.bound,
        "exception": rec.exception,
        "tight": rec.tight,
    }
    problems: list[str] = []
    if rec.violated:
        problems.append(
            f"bound violated: iota={rec.iota} > bound={rec.bound} on {rec.graph6}"
        )
    if theorem in ("k2", "k3") and rec.exception is None:
        prove = isolate_k2 if theorem == "k2" else isolate_k3
        try:
            cert = prove(g)
        except (InternalConsistencyError, ValueError) as exc:
            problems.append(f"prover failed on {rec.graph6}: {exc}")
        else:
            size = cert.d.bit_count()
            row["cert_size"] = size
            row["case_trace"] = "; ".join(e.line() for e in cert.trace)
            if size > rec.bound:
                problems.append(
                    f"certificate too large on {rec.graph6}: {size} > {rec.bound}"
                )
            if rec.iota is not None and size < rec.iota:
                problems.append(
                    f"certificate beats the optimum on {rec.graph6}: "
                    f"{size} < iota={rec.iota} (solver or prover is wrong)"
                )
    return row, problems


def _fan_out(worker, tasks: list, jobs: int) -> Iterator:
    """Apply a worker over tasks, in order, optionally across processes."""
    if jobs <= 1 or len(tasks) <= 1:
        for task in tasks:
            yield worker(task)
        return
    with multiprocessing.Pool(processes=jobs) as pool:
        chunk = max(1, min(256, len(tasks) // (jobs * 4) or 1))
        yield from pool.imap(worker, tasks, chunksize=chunk)


def cmd_sweep(args) -> int:
    label, _fam, theorem, _k = parse_family(args.family)
    if theorem is None:
        raise UsageError(
            f"family {label!r} has no proven bound to sweep (only e1, e2, "
            f"e3, and cycles do)"
        )
    jobs = _resolve_jobs(args.jobs)
    start = time.monotonic()
    graphs = [
        graph6_encode(g)
        for g in iter_source(args.source, args.n_min, args.n_max,
                             args.strict_parse)
    ]
    tasks = [(g6, theorem, args.budget) for g6 in graphs]
    writers = _Writers(args.json, args.csv)
    checked = 0
    tight = 0
    skipped = 0
    exceptions: dict[str, int] = {}
    per_n: dict[int, list[int]] = {}
    all_problems: list[str] = []
    try:
        for row, problems in _fan_out(_sweep_one, tasks, jobs):
            writers.write(row)
            checked += 1
            stats = per_n.setdefault(row["n"], [0, 0, 0, 0])  # graphs/viol/tight/skip
            stats[0] += 1
            if row["exception"] is not None:
                exceptions[row["exception"]] = exceptions.get(row["exception"], 0) + 1
            if row["iota"] is None:
                skipped += 1
                stats[3] += 1
                print(f"skipped (budget): {row['graph6']}")
            if row["tight"]:
                tight += 1
                stats[2] += 1
            if problems:
                stats[1] += len(problems)
                all_problems.extend(problems)
                for message in problems:
                    print(f"VIOLATION {message}")
    finally:
        writers.close()
    elapsed = time.monotonic() - start
    print(f"sweep {label} (bound {theorem}) n={args.n_min}..{args.n_max} "
          f"source={args.source} jobs={jobs}")
    for n in sorted(per_n):
        g, v, t, s = per_n[n]
        print(f"  n={n:<2} {g:>7} graphs  {v} violations  {t} tight  {s} skipped")
    if exceptions:
        listed = ", ".join(f"{tag} x{count}" for tag, count in exceptions.items())
        print(f"exceptions skipped: {listed}")
    print(f"checked {checked} graphs: {len(all_problems)} violations, "
          f"{tight} tight, {sum(exceptions.values())} exceptions, "
          f"{skipped} skipped  [{elapsed:.2f}s]")
    return 1 if all_problems else 0


# ===== ckn ===================================================================


def _ckn_one(task: tuple[str, int]) -> tuple[str, int]:
    g6, k = task
    got = exact_iota(graph6_decode(g6), edge_family(k))
    assert got is not None  # no budget on this path
    return g6, got.value


def cmd_ckn(args) -> int:
    label, _fam, _theorem, k = parse_family(args.family)
    if k is None:
        raise UsageError(
            f"c_{{k,n}} is defined for the edge families only, not {label!r}"
        )
    jobs = _resolve_jobs(args.jobs)
    writers = _Writers(args.json, args.csv, fields=("k", "n", "c", "witness"))
    try:
        for n in range(args.n_min, args.n_max + 1):
            tasks = [
                (graph6_encode(g), k)
                for g in iter_source(args.source, n, n, args.strict_parse)
            ]
            best: Optional[Fraction] = None
            witness = None
            for g6, value in _fan_out(_ckn_one, tasks, jobs):
                c = Fraction(value, n)
                if best is None or c > best:
                    best, witness = c, g6
            if best is None:
                continue  # source had no graphs of this order
            row = {"k": k, "n": n, "c": f"{best.numerator}/{best.denominator}",
                   "witness": witness}
            writers.write(row)
            print(f"c_{{{k},{n}}} = {row['c']:<6} witness {witness}")
    finally:
        writers.close()
    return 0


# ===== extremal ==============================================================


def _extremal_rows(label: str, n_min: int, n_max: int):
    """(name, param, graph, family, expected) rows for one bound's families."""
    if label == "e1":
        for n in range(max(n_min, 3), n_max + 1):
            yield (f"B({n},K2)", n, build_B(n, "K2"), edge_family(1), n // 3)
    elif label == "e3":
        for n in range(max(n_min, 4), n_max + 1):
            yield (f"B({n},K3)", n, build_B(n, "K3"), edge_family(3), n // 4)
    elif label == "cycles":
        for n in range(max(n_min, 4), n_max + 1):
            yield (f"B({n},K3)", n, build_B(n, "K3"),
                   theorem_family("cycles"), n // 4)
    elif label == "e2":
        for n in range(max(n_min, 5), n_max + 1):
            g = build_B_prime_P3(n)
            yield (f"B'({n},P3)", n, g, edge_family(2),
                   theorem_bound(g, "k2"))
        for r in range(1, n_max // 7 + 1):
            if n_min <= 7 * r <= n_max:
                yield (f"B'(7r,C6) r={r}", 7 * r, build_B_prime_7r_C6(r),
                       edge_family(2), 2 * r)
    else:
        raise UsageError(
            f"no extremal family rows for {label!r} (choose e1, e2, e3, "
            f"or cycles)"
        )


def cmd_extremal(args) -> int:
    label, _fam, theorem, _k = parse_family(args.family)
    if theorem is None:
        raise UsageError(f"family {label!r} has no extremal rows")
    writers = _Writers(args.json, args.csv,
                       fields=("construction", "n", "expected", "iota", "equal"))
    failures = 0
    try:
        for name, n, g, fam, expected in _extremal_rows(label, args.n_min,
                                                        args.n_max):
            # A cap at the expected value decides equality exactly: the solver
            # returns None iff the optimum exceeds the cap.
            cap = expected if args.budget is None else min(expected, args.budget)
            got = exact_iota(g, fam, budget=cap)
            value = None if got is None else got.value
            equal = value == expected
            row = {"construction": name, "n": n, "expected": expected,
                   "iota": value, "equal": equal}
            writers.write(row)
            shown = "> cap" if value is None else value
            verdict = "ok" if equal else "MISMATCH"
            print(f"{name:<16} n={n:<3} iota = {shown} expected {expected}  {verdict}")
            if not equal:
                failures += 1
    finally:
        writers.close()
    if failures:
        print(f"{failures} equality rows failed")
        return 1
    return 0


# ===== emit ==================================================================


def cmd_emit(args) -> int:
    kind = args.construction
    if kind == "builtin":
        if args.n_max > BUILTIN_MAX_N:
            raise UsageError(f"builtin enumeration stops at n = {BUILTIN_MAX_N}")
        for n in range(args.n_min, args.n_max + 1):
            for g in connected_graphs(n):
                print(graph6_encode(g))
        return 0
    try:
        if kind == "b":
            if args.n is None or args.f is None:
                raise UsageError("emit b needs --n and --f (a named graph tag)")
            print(graph6_encode(build_B(args.n, args.f)))
        elif kind == "bp-p3":
            if args.n is None:
                raise UsageError("emit bp-p3 needs --n")
            print(graph6_encode(build_B_prime_P3(args.n)))
        else:  # bp-c6; argparse rules out anything else
            if args.r is None:
                raise UsageError("emit bp-c6 needs --r")
            print(graph6_encode(build_B_prime_7r_C6(args.r)))
    except ValueError as exc:  # bad tag or out-of-range parameter
        raise UsageError(str(exc))
    return 0


# ===== solve =================================================================


def _input_graphs(args) -> Iterator[Graph]:
    """Graphs for solve/certify: a positional graph6 line or a --source."""
    if args.graph6 is not None and args.source is not None:
        raise UsageError("give either one graph6 argument or --source, not both")
    if args.graph6 is not None:
        yield graph6_decode(args.graph6)
        return
    if args.source is None:
        raise UsageError("need a graph6 argument or --source")
    yield from iter_source(args.source, 1, 1 << 30, args.strict_parse)


def _vertex_list(mask: int) -> str:
    return "{" + ", ".join(str(v) for v in bits(mask)) + "}"


def cmd_solve(args) -> int:
    label, fam, theorem, _k = parse_family(args.family)
    writers = _Writers(args.json, args.csv,
                       fields=ROW_FIELDS[:7] + ("witness",))
    try:
        for g in _input_graphs(args):
            g6 = graph6_encode(g)
            exception = None if theorem is None else classify_exception(g, theorem)
            bound = None
            if theorem is not None and is_connected(g):
                bound = theorem_bound(g, theorem)
            got = exact_iota(g, fam, budget=args.budget)
            if got is None:
                row = {"graph6": g6, "n": g.n, "leaves": leaf_count(g),
                       "iota": None, "bound": bound, "exception": exception,
                       "tight": False, "witness": None}
                writers.write(row)
                print(f"skipped (budget): {g6}")
                continue
            tight = (bound is not None and exception is None
                     and got.value == bound)
            row = {"graph6": g6, "n": g.n, "leaves": leaf_count(g),
                   "iota": got.value, "bound": bound, "exception": exception,
                   "tight": tight, "witness": sorted(bits(got.witness))}
            writers.write(row)
            note = f" (exception {exception})" if exception else ""
            shown_bound = "-" if bound is None else bound
            print(f"{g6}: iota_{label} = {got.value}  bound {shown_bound}"
                  f"{note}  witness {_vertex_list(got.witness)}")
    finally:
        writers.close()
    return 0


# ===== certify ===============================================================


def cmd_certify(args) -> int:
    k = args.k
    prove = isolate_k2 if k == 2 else isolate_k3
    theorem = "k2" if k == 2 else "k3"
    writers = _Writers(args.json, args.csv,
                       fields=ROW_FIELDS + ("certificate",))
    refused = 0
    try:
        for g in _input_graphs(args):
            g6 = graph6_encode(g)
            if not is_connected(g):
                raise UsageError(f"{g6} is disconnected; the bound only "
                                 f"covers connected graphs")
            tag = classify_exception(g, theorem)
            if tag is not None:
                name = EXCEPTION_NAMES[tag]
                print(f"certify refused: {g6} is the {name}; the E_{k} bound "
                      f"does not hold for it", file=sys.stderr)
                refused += 1
                continue
            cert = prove(g)
            row = {
                "graph6": g6, "n": g.n, "leaves": leaf_count(g),
                "iota": None, "bound": cert.bound, "exception": None,
                "tight": False, "cert_size": cert.d.bit_count(),
                "case_trace": "; ".join(e.line() for e in cert.trace),
                "certificate": sorted(bits(cert.d)),
            }
            writers.write(row)
            print(f"graph: {g6} (n={g.n}, {leaf_count(g)} leaves)")
            print(f"bound: {cert.bound}  certificate: {_vertex_list(cert.d)} "
                  f"({cert.d.bit_count()} vertices)")
            print("trace:")
            for entry in cert.trace:
                print(f"  {entry.line()}")
    finally:
        writers.close()
    return 1 if refused else 0


# ===== entry point ===========================================================


def _add_common(sub, *, n_defaults=(1, 8), budget=True, jobs=True):
    sub.add_argument("--n-min", type=int, default=n_defaults[0])
    sub.add_argument("--n-max", type=int, default=n_defaults[1])
    sub.add_argument("--source", default="builtin",
                     help="builtin, file:PATH, or - for stdin")
    sub.add_argument("--json", metavar="PATH", help="write JSON-lines rows")
    sub.add_argument("--csv", metavar="PATH", help="write CSV rows")
    sub.add_argument("--strict-parse", action="store_true",
                     help="fail on malformed graph6 lines instead of skipping")
    if budget:
        sub.add_argument("--budget", type=int, metavar="S",
                         help="cap the exact solver at sets of size S")
    if jobs:
        sub.add_argument("--jobs", metavar="N",
                         help="worker processes (default $ISOLATION_LAB_JOBS or 1)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="isolation-lab",
        description="Isolation-number bounds: exhaustive sweeps, exact "
                    "tables, extremal families, and certified isolating sets.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    sweep = subs.add_parser("sweep", help="verify one bound over a graph source")
    sweep.add_argument("--family", required=True,
                       help="e1, e2, e3, or cycles")
    _add_common(sweep)
    sweep.set_defaults(func=cmd_sweep)

    ckn = subs.add_parser("ckn", help="exact c_{k,n} = max iota_k/n table")
    ckn.add_argument("--family", required=True, help="e1, e2, e3, or k:K")
    _add_common(ckn, budget=False)
    ckn.set_defaults(func=cmd_ckn)

    extremal = subs.add_parser("extremal",
                               help="check bound-attaining equality rows")
    extremal.add_argument("--family", required=True,
                          help="e1, e2, e3, or cycles")
    _add_common(extremal, n_defaults=(1, 16), jobs=False)
    extremal.set_defaults(func=cmd_extremal)

    emit = subs.add_parser("emit", help="print constructions as graph6")
    emit.add_argument("construction", choices=("b", "bp-p3", "bp-c6", "builtin"))
    emit.add_argument("--n", type=int, help="vertex count for b / bp-p3")
    emit.add_argument("--f", metavar="TAG",
                      help="copied graph for b (e.g. K2, K3, P3)")
    emit.add_argument("--r", type=int, help="copy count for bp-c6")
    emit.add_argument("--n-min", type=int, default=1)
    emit.add_argument("--n-max", type=int, default=6)
    emit.set_defaults(func=cmd_emit)

    solve = subs.add_parser("solve", help="exact iota with a witness set")
    solve.add_argument("graph6", nargs="?", help="one graph6 line")
    solve.add_argument("--family", required=True,
                       help="e1, e2, e3, cycles, or k:K")
    _add_common(solve, jobs=False)
    solve.set_defaults(func=cmd_solve, source=None)

    certify = subs.add_parser(
        "certify", help="certified isolating set within the bound")
    certify.add_argument("graph6", nargs="?", help="one graph6 line")
    certify.add_argument("--k", type=int, choices=(2, 3), required=True)
    _add_common(certify, budget=False, jobs=False)
    certify.set_defaults(func=cmd_certify, source=None)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except Graph6Error as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 3
    except BrokenPipeError:
        return 0


if __name__ == "__main__":
    sys.exit(main())
