"""Command line interface.

    algdyn report FILE [--json] [--tol T] [--bound B] [--max-period N] ...
    algdyn entropy FILE
    algdyn expansive FILE
    algdyn periodic FILE [--n N | --lattice "a,b;c,d"]
    algdyn gcd FILE
    algdyn fitting FILE [--level L] [--candidate POLY]
    algdyn serve [--host H] [--port P]

Exit codes: 0 success; 2 malformed input (file, polynomial grammar, or a
claimed resolution whose maps do not compose to zero); 3 rank-deficient
presentation (free submodule, infinite entropy); 4 budget exhausted with
an Undecided core verdict.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import random
import sys

from .mahler import (METHOD_EXACT_INFINITE, METHOD_JENSEN,
                     METHOD_QUADRATURE, mahler)
from .expansive import expansive as expansive_check
from .fitting import (CompositionNonzeroError, Contained, FreeResolution,
                      fitting_ideal, principal_candidate_check)
from .laurent import LaurentPoly
from .polyio import (PolyParseError, Problem, ProblemFormatError, load_problem,
                     parse_poly, serialize_poly)
from .presentation import FreeSubmoduleError, PresentationMatrix, minors
from .report import (PROV_BOUNDED, PROV_CERTIFIED, PROV_EXACT, ReportConfig,
                     STATUS_FREE_SUBMODULE, STATUS_OK, STATUS_UNDECIDED,
                     _expansive_json, build_report, render_text)
from .squaredyn import Lattice, fix_count

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_FREE_SUBMODULE = 3
EXIT_UNDECIDED = 4

_STATUS_EXIT = {
    STATUS_OK: EXIT_OK,
    STATUS_FREE_SUBMODULE: EXIT_FREE_SUBMODULE,
    STATUS_UNDECIDED: EXIT_UNDECIDED,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="algdyn",
        description="Dynamical invariants of modules over the integral "
                    "Laurent polynomial ring.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_file=True):
        if with_file:
            p.add_argument("file", help="problem file (JSON)")
        p.add_argument("--tol", type=float, default=1e-6,
                       help="entropy tolerance (default 1e-6)")
        p.add_argument("--budget", type=int, default=10 ** 7,
                       help="grid evaluation budget (default 1e7)")
        p.add_argument("--bound", type=int, default=8,
                       help="search bound for mixing/ergodicity/cyclotomic "
                            "tests (default 8)")
        p.add_argument("--max-period", type=int, default=8,
                       help="largest rectangular period in the fix table")
        p.add_argument("--precision", type=int, default=256,
                       help="working precision in bits (>= 53)")
        p.add_argument("--threads", type=int, default=None,
                       help="worker threads (ALGDYN_THREADS as fallback; "
                            "computation is deterministic regardless)")
        p.add_argument("--seed", type=int, default=None,
                       help="seed for any randomized heuristics")
        p.add_argument("--json", action="store_true",
                       help="emit machine-readable JSON")
        return p

    add_common(sub.add_parser("report", help="full dynamical report"))
    add_common(sub.add_parser("entropy", help="entropy of the presented system"))
    add_common(sub.add_parser("expansive", help="expansiveness verdict"))
    p = add_common(sub.add_parser("periodic", help="periodic point counts"))
    p.add_argument("--n", type=int, default=None,
                   help="rectangular period (count points of period n in "
                        "every direction)")
    p.add_argument("--lattice", type=str, default=None,
                   help='lattice basis rows, e.g. "2,1;0,2"')
    add_common(sub.add_parser("gcd", help="maximal-minor ideal and its gcd"))
    p = add_common(sub.add_parser("fitting", help="Fitting ideals of a resolution"))
    p.add_argument("--level", type=int, default=None,
                   help="single level to report (default: all)")
    p.add_argument("--candidate", type=str, default=None,
                   help="principal candidate generator p: test whether the "
                        "level ideal lies inside <p>")
    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    return parser


def _config_from(args) -> ReportConfig:
    threads = args.threads
    if threads is None:
        threads = int(os.environ.get("ALGDYN_THREADS", "1") or "1")
    if args.seed is not None:
        random.seed(args.seed)
    return ReportConfig(tol=args.tol, grid_budget=args.budget,
                        search_bound=args.bound, precision=args.precision,
                        max_period=args.max_period, threads=max(1, threads),
                        json=args.json)


def _emit(payload: dict, as_json: bool, text: str) -> None:
    if as_json:
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def _load(path: str) -> Problem:
    return load_problem(path)


def _presentation(problem: Problem) -> PresentationMatrix:
    return PresentationMatrix(problem.d, problem.presentation_matrix)


def _parse_lattice_arg(text: str, d: int) -> Lattice:
    try:
        rows = tuple(tuple(int(x) for x in row.split(","))
                     for row in text.split(";"))
    except ValueError:
        raise ProblemFormatError(f"malformed lattice argument {text!r}") from None
    if len(rows) != d or any(len(r) != d for r in rows):
        raise ProblemFormatError(f"lattice must be a {d}x{d} integer matrix")
    return Lattice(rows)


def cmd_report(args) -> int:
    problem = _load(args.file)
    config = _config_from(args)
    report = build_report(problem, config)
    _emit(report, args.json, render_text(report))
    return _STATUS_EXIT[report["status"]]


def cmd_entropy(args) -> int:
    problem = _load(args.file)
    config = _config_from(args)
    A = _presentation(problem)
    try:
        ideal = minors(A)
    except FreeSubmoduleError as exc:
        payload = {"schema": 1, "entropy": {"value": "infinite",
                                            "method": METHOD_EXACT_INFINITE,
                                            "error": 0.0,
                                            "provenance": PROV_EXACT},
                   "status": STATUS_FREE_SUBMODULE, "error": str(exc)}
        _emit(payload, args.json,
              f"entropy: infinite ({exc})")
        return EXIT_FREE_SUBMODULE
    val = mahler(ideal.gcd, tol=config.tol, budget=config.grid_budget)
    prov = {METHOD_JENSEN: PROV_CERTIFIED,
            METHOD_QUADRATURE: PROV_BOUNDED}.get(val.method, PROV_EXACT)
    payload = {"schema": 1,
               "entropy": {"value": "infinite" if math.isinf(val.value) else val.value,
                           "method": val.method, "error": val.error,
                           "provenance": prov},
               "gcd": serialize_poly(ideal.gcd),
               "status": STATUS_OK}
    if val.note:
        payload["entropy"]["note"] = val.note
    shown = "infinite" if math.isinf(val.value) else f"{val.value:.12g}"
    _emit(payload, args.json,
          f"entropy: {shown}  [{val.method}, error {val.error:.3g}, {prov}]")
    return EXIT_OK


def cmd_expansive(args) -> int:
    problem = _load(args.file)
    config = _config_from(args)
    A = _presentation(problem)
    try:
        verdict = expansive_check(A, budget=config.grid_budget)
    except FreeSubmoduleError as exc:
        _emit({"schema": 1, "status": STATUS_FREE_SUBMODULE, "error": str(exc)},
              args.json, f"error: {exc}")
        return EXIT_FREE_SUBMODULE
    block = _expansive_json(verdict)
    payload = {"schema": 1, "expansiveness": block,
               "status": STATUS_UNDECIDED if block["verdict"] == "Undecided"
               else STATUS_OK}
    if block["verdict"] == "Expansive":
        text = (f"Expansive (margin {block['margin']:.6g}, grid {block['grid']}, "
                f"{block['provenance']})")
    elif block["verdict"] == "NotExpansive":
        text = (f"NotExpansive (witness ({', '.join(block['witness'])}), "
                f"residual {block['residual']:.3g})")
    else:
        best = block["best_margin"]
        besttxt = "none" if best is None else f"{best:.3g}"
        text = (f"Undecided (best margin {besttxt} after "
                f"{block['budget_used']} evaluations)")
    _emit(payload, args.json, text)
    return _STATUS_EXIT[payload["status"]]


def cmd_periodic(args) -> int:
    problem = _load(args.file)
    config = _config_from(args)
    A = _presentation(problem)
    if not A.is_square():
        raise ProblemFormatError(
            "periodic point counts need a square presentation matrix")
    if args.lattice is not None:
        lattice = _parse_lattice_arg(args.lattice, A.d)
    elif problem.lattice is not None:
        lattice = Lattice(problem.lattice)
    else:
        lattice = None

    rows = []
    if lattice is not None:
        count = fix_count(A, lattice)
        rows.append({"basis": [list(r) for r in lattice.basis],
                     "index": lattice.index(),
                     "count": "infinite" if count.is_infinite else str(count.value)})
    else:
        upto = args.n if args.n is not None else config.max_period
        for n in range(1, upto + 1):
            count = fix_count(A, Lattice.rectangular(A.d, n))
            rows.append({"period": n,
                         "count": "infinite" if count.is_infinite else str(count.value)})
    payload = {"schema": 1, "counts": rows, "provenance": PROV_EXACT,
               "status": STATUS_OK}
    lines = []
    for row in rows:
        label = f"n={row['period']}" if "period" in row else f"index {row['index']}"
        lines.append(f"{label}: {row['count']}")
    _emit(payload, args.json, "\n".join(lines))
    return EXIT_OK


def cmd_gcd(args) -> int:
    problem = _load(args.file)
    A = _presentation(problem)
    try:
        ideal = minors(A)
    except FreeSubmoduleError as exc:
        _emit({"schema": 1, "status": STATUS_FREE_SUBMODULE, "error": str(exc)},
              args.json, f"error: {exc}")
        return EXIT_FREE_SUBMODULE
    payload = {"schema": 1,
               "generators": [serialize_poly(g) for g in ideal.generators],
               "gcd": serialize_poly(ideal.gcd),
               "provenance": PROV_EXACT, "status": STATUS_OK}
    text = (f"generators: {', '.join(payload['generators'])}\n"
            f"gcd: {payload['gcd']}")
    _emit(payload, args.json, text)
    return EXIT_OK


def cmd_fitting(args) -> int:
    problem = _load(args.file)
    if problem.maps is not None:
        res = FreeResolution(problem.d, problem.maps)
    else:
        res = FreeResolution(problem.d, (problem.presentation_matrix,))
    res.validate()
    levels = [args.level] if args.level is not None \
        else list(range(1, res.length + 1))
    candidate = None
    if args.candidate is not None:
        candidate = parse_poly(args.candidate, problem.d)
    out_levels = []
    lines = []
    for level in levels:
        data = fitting_ideal(res, level)
        entry = {"level": data.level, "rank": data.rank,
                 "generators": [serialize_poly(g) for g in data.generators],
                 "gcd": serialize_poly(data.gcd),
                 "gcd_content_factors": [[p, e] for p, e in data.content_factors]}
        lines.append(f"level {data.level}: rank {data.rank}, gcd {entry['gcd']}, "
                     f"generators: {', '.join(entry['generators'])}")
        if candidate is not None:
            verdict = principal_candidate_check(res, level, candidate)
            if isinstance(verdict, Contained):
                entry["candidate"] = {"poly": serialize_poly(candidate),
                                      "verdict": "Contained"}
                lines.append(f"  ideal lies inside <{entry['candidate']['poly']}>")
            else:
                entry["candidate"] = {"poly": serialize_poly(candidate),
                                      "verdict": "NotContained",
                                      "witness": serialize_poly(verdict.witness)}
                lines.append(f"  generator {entry['candidate']['witness']} is not "
                             f"divisible by {serialize_poly(candidate)}")
        out_levels.append(entry)
    payload = {"schema": 1, "levels": out_levels, "provenance": PROV_EXACT,
               "status": STATUS_OK}
    _emit(payload, args.json, "\n".join(lines))
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    from .service import app
    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


_COMMANDS = {
    "report": cmd_report,
    "entropy": cmd_entropy,
    "expansive": cmd_expansive,
    "periodic": cmd_periodic,
    "gcd": cmd_gcd,
    "fitting": cmd_fitting,
    "serve": cmd_serve,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except FreeSubmoduleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FREE_SUBMODULE
    except (PolyParseError, ProblemFormatError, CompositionNonzeroError,
            ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
