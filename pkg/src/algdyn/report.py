"""Assembles the full dynamical report for a parsed problem.

One dictionary, JSON-ready and versioned ("schema": 1), collecting the
validation result, the determinantal ideal, entropy, expansiveness, the
square-case dynamics (periodic point table, growth rates, mixing and
ergodicity), the Fitting levels of a supplied resolution, and a property
summary.  Every verdict carries a provenance label:

* Exact           proved by exact arithmetic;
* CertifiedNumeric  proved by interval arithmetic with certified error;
* BoundedSearch   established only within an explicit search bound;
* Undecided       the budget ran out before a verdict.

A bounded-search result is never labeled Exact.  Integers that may
exceed 2^53 (periodic point counts) are rendered as strings so the JSON
survives consumers with double-precision integer parsing.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import squaredyn
from .expansive import Expansive, NotExpansive, expansive
from .fitting import FreeResolution, fitting_ideal
from .mahler import (METHOD_EXACT_INFINITE, METHOD_EXACT_LOG_INTEGER,
                     METHOD_EXACT_ZERO, METHOD_JENSEN, METHOD_QUADRATURE,
                     NO, YES, MahlerValue, mahler, zero_mahler_test)
from .laurent import LaurentPoly, TorusPoint
from .polyio import Problem, serialize_poly
from .presentation import (FreeSubmoduleError, PresentationMatrix, det, minors,
                           rank)

PROV_EXACT = "Exact"
PROV_CERTIFIED = "CertifiedNumeric"
PROV_BOUNDED = "BoundedSearch"
PROV_UNDECIDED = "Undecided"

STATUS_OK = "ok"
STATUS_FREE_SUBMODULE = "free-submodule"
STATUS_UNDECIDED = "undecided"

_ENTROPY_PROVENANCE = {
    METHOD_EXACT_ZERO: PROV_EXACT,
    METHOD_EXACT_LOG_INTEGER: PROV_EXACT,
    METHOD_EXACT_INFINITE: PROV_EXACT,
    METHOD_JENSEN: PROV_CERTIFIED,
    METHOD_QUADRATURE: PROV_BOUNDED,
}

INFORMATIONAL_PROPERTIES = {
    "dcc": (
        "finitely presented modules over the Laurent ring are Noetherian, so "
        "the descending chain condition on closed invariant subgroups holds "
        "for every system this tool accepts"),
    "mixing_of_all_orders": (
        "deciding mixing of all orders needs the full associated-prime "
        "decomposition (each prime either a rational prime or of "
        "characteristic zero with mixing quotient); not computed here"),
    "completely_positive_entropy": (
        "completely positive entropy requires positive entropy of the "
        "quotient by every associated prime; associated-prime enumeration "
        "is out of scope"),
    "bernoulli": (
        "Bernoullicity is equivalent to completely positive entropy, which "
        "requires the full associated-prime decomposition; not computed here"),
    "unique_maximal_measure": (
        "uniqueness of the maximal measure requires finite completely "
        "positive entropy, which needs the associated-prime data; not "
        "computed here"),
}


@dataclass(frozen=True)
class ReportConfig:
    """Tuning knobs shared by the CLI and the service."""

    tol: float = 1e-6
    grid_budget: int = 10 ** 7
    search_bound: int = 8
    precision: int = 256
    max_period: int = 8
    threads: int = 1
    json: bool = False

    def __post_init__(self):
        if self.tol <= 0 or self.grid_budget <= 0 or self.search_bound <= 0 \
                or self.max_period <= 0 or self.threads <= 0:
            raise ValueError("all report bounds must be positive")
        if self.precision < 53:
            raise ValueError("precision must be at least 53 bits")


def _angle_str(a) -> str:
    if isinstance(a, Fraction):
        return str(a)
    return repr(float(a))


def _point_json(p: TorusPoint) -> list[str]:
    return [_angle_str(a) for a in p.angles]


def _entropy_json(val: MahlerValue) -> dict:
    out = {
        "value": "infinite" if math.isinf(val.value) else val.value,
        "method": val.method,
        "error": val.error,
        "provenance": _ENTROPY_PROVENANCE[val.method],
    }
    if val.note:
        out["note"] = val.note
    return out


def _expansive_json(verdict) -> dict:
    if isinstance(verdict, Expansive):
        prov = PROV_EXACT if verdict.grid == 0 else PROV_CERTIFIED
        return {"verdict": "Expansive", "grid": verdict.grid,
                "margin": verdict.margin, "provenance": prov}
    if isinstance(verdict, NotExpansive):
        prov = PROV_EXACT if verdict.exact else PROV_CERTIFIED
        return {"verdict": "NotExpansive",
                "witness": _point_json(verdict.witness),
                "witness_exact": verdict.exact,
                "residual": verdict.residual,
                "provenance": prov}
    # -inf means no candidate margin was ever evaluated; strict JSON has no
    # spelling for it, so the field is null in that case
    best = verdict.best_margin if math.isfinite(verdict.best_margin) else None
    return {"verdict": "Undecided", "best_margin": best,
            "budget_used": verdict.budget_used, "provenance": PROV_UNDECIDED}


def _property_json(verdict) -> dict:
    if isinstance(verdict, squaredyn.Holds):
        out = {"verdict": "Holds", "provenance": PROV_EXACT}
        if verdict.justification:
            out["note"] = verdict.justification
        return out
    if isinstance(verdict, squaredyn.Fails):
        w = verdict.witness
        if isinstance(w, tuple):
            w = list(w)
        return {"verdict": "Fails", "witness": w, "provenance": PROV_EXACT}
    return {"verdict": "VerifiedUpTo", "bound": verdict.bound,
            "provenance": PROV_BOUNDED}


def _positive_entropy_json(gcd_poly: LaurentPoly, entropy: MahlerValue,
                           config: ReportConfig) -> dict:
    """Clause check: positive entropy iff the gcd is not a unit times a
    product of generalized cyclotomics.  Exact when entropy itself is
    exact; certified off a root-based value; bounded search otherwise."""
    if entropy.method == METHOD_QUADRATURE:
        verdict = zero_mahler_test(gcd_poly, bound=config.search_bound,
                                          budget=config.grid_budget)
        if verdict == YES:
            return {"verdict": "No", "provenance": PROV_EXACT,
                    "note": "the gcd reduced to a unit after dividing out "
                            "generalized cyclotomic factors"}
        if verdict == NO:
            return {"verdict": "Yes", "provenance": PROV_BOUNDED,
                    "note": "grid estimate exceeds the zero-measure threshold"}
        return {"verdict": "Undecided", "provenance": PROV_UNDECIDED,
                "note": f"no verdict within cyclotomic search bound "
                        f"{config.search_bound}"}
    if entropy.method == METHOD_JENSEN:
        if entropy.value - entropy.error > 0:
            return {"verdict": "Yes", "provenance": PROV_CERTIFIED}
        return {"verdict": "Undecided", "provenance": PROV_UNDECIDED,
                "note": "certified enclosure straddles zero"}
    # exact methods: zero, log of an integer, infinite
    positive = entropy.value > 0
    return {"verdict": "Yes" if positive else "No", "provenance": PROV_EXACT}


def _fix_table(g: LaurentPoly, d: int, max_period: int) -> list[dict]:
    rows = []
    for n in range(1, max_period + 1):
        count = squaredyn.fix_count_rectangular(g, (n,) * d)
        rows.append({
            "period": n,
            "count": "infinite" if count.is_infinite else str(count.value),
        })
    return rows


def _growth_table(fix_rows: list[dict], d: int) -> list[dict] | None:
    if any(r["count"] == "infinite" for r in fix_rows):
        return None
    out = []
    for r in fix_rows:
        n = r["period"]
        c = int(r["count"])
        out.append({"period": n, "rate": math.log(c) / n ** d})
    return out


def _square_block(A: PresentationMatrix, config: ReportConfig) -> dict:
    g = det(A)
    fix_rows = _fix_table(g, A.d, config.max_period)
    block: dict = {
        "det": serialize_poly(g),
        "fix_counts": fix_rows,
        "fix_provenance": PROV_EXACT,
    }
    growth = _growth_table(fix_rows, A.d)
    if growth is None:
        block["growth_note"] = ("some period has infinitely many periodic "
                                "points, so growth rates are undefined")
    else:
        block["growth"] = growth
    block["mixing"] = _property_json(squaredyn.mixing_check(A, config.search_bound))
    block["ergodicity"] = _property_json(squaredyn.ergodic_check(A, config.search_bound))
    return block


def _fitting_block(res: FreeResolution) -> dict:
    levels = []
    for level in range(1, res.length + 1):
        data = fitting_ideal(res, level)
        levels.append({
            "level": data.level,
            "rank": data.rank,
            "generators": [serialize_poly(g) for g in data.generators],
            "gcd": serialize_poly(data.gcd),
            "gcd_content_factors": [[p, e] for p, e in data.content_factors],
        })
    return {"levels": levels, "provenance": PROV_EXACT}


def _lattice_block(A: PresentationMatrix, lattice_rows) -> dict:
    lat = squaredyn.Lattice(tuple(tuple(r) for r in lattice_rows))
    if not A.is_square():
        return {"basis": [list(r) for r in lat.basis],
                "index": lat.index(),
                "count": None,
                "note": "periodic point counts need a square presentation"}
    count = squaredyn.fix_count(A, lat)
    return {"basis": [list(r) for r in lat.basis],
            "index": lat.index(),
            "count": "infinite" if count.is_infinite else str(count.value),
            "provenance": PROV_EXACT}


def _expected_notes(problem: Problem) -> list[str]:
    notes = []
    for key, value in sorted(problem.expected.items()):
        notes.append(f"fixture reference data: {key} = {value!r}")
    return notes


def build_report(problem: Problem, config: ReportConfig | None = None) -> dict:
    """Full dynamical report for a parsed problem.

    Composition failures of a supplied resolution raise
    CompositionNonzeroError (the input is not a resolution); a rank
    deficient presentation produces a partial report with status
    "free-submodule" and infinite entropy rather than raising.
    """
    config = config or ReportConfig()
    report: dict = {"schema": 1}
    if problem.name:
        report["name"] = problem.name
    report["kind"] = problem.kind
    report["d"] = problem.d

    res = None
    if problem.kind == "resolution":
        res = FreeResolution(problem.d, problem.maps)
        res.validate()

    A = PresentationMatrix(problem.d, problem.presentation_matrix)
    r = rank(A)
    validation = {"k": A.k, "n": A.n, "rank": r, "ok": r == A.k}
    report["validation"] = validation

    if r < A.k:
        report["status"] = STATUS_FREE_SUBMODULE
        report["error"] = str(FreeSubmoduleError(r, A.k))
        report["entropy"] = {
            "value": "infinite",
            "method": METHOD_EXACT_INFINITE,
            "error": 0.0,
            "provenance": PROV_EXACT,
            "note": ("the rows generate a free submodule of rank below k, "
                     "so the quotient contains a full shift and the entropy "
                     "is infinite"),
        }
        notes = _expected_notes(problem)
        if notes:
            report["notes"] = notes
        return report

    ideal = minors(A)
    report["minors"] = {
        "generators": [serialize_poly(g) for g in ideal.generators],
        "gcd": serialize_poly(ideal.gcd),
        "provenance": PROV_EXACT,
    }

    entropy_val = mahler(ideal.gcd, tol=config.tol, budget=config.grid_budget)
    report["entropy"] = _entropy_json(entropy_val)

    verdict = expansive(A, budget=config.grid_budget)
    report["expansiveness"] = _expansive_json(verdict)

    properties: dict = {
        "positive_entropy": _positive_entropy_json(ideal.gcd, entropy_val, config),
        "expansiveness": {
            "verdict": report["expansiveness"]["verdict"],
            "provenance": report["expansiveness"]["provenance"],
        },
    }

    if A.is_square():
        square = _square_block(A, config)
        report["square"] = square
        properties["mixing"] = square["mixing"]
        properties["ergodicity"] = square["ergodicity"]
    else:
        na = {"verdict": "NotApplicable",
              "note": "periodic point, mixing and ergodicity analysis needs "
                      "a square presentation matrix"}
        properties["mixing"] = dict(na)
        properties["ergodicity"] = dict(na)

    properties["informational"] = dict(INFORMATIONAL_PROPERTIES)
    report["properties"] = properties

    if res is not None:
        report["fitting"] = _fitting_block(res)

    if problem.lattice is not None:
        report["lattice"] = _lattice_block(A, problem.lattice)

    undecided = report["expansiveness"]["verdict"] == "Undecided" \
        or properties["positive_entropy"]["verdict"] == "Undecided"
    report["status"] = STATUS_UNDECIDED if undecided else STATUS_OK

    notes = _expected_notes(problem)
    if notes:
        report["notes"] = notes
    return report


def render_text(report: dict) -> str:
    """Human-readable rendering of a report dictionary."""
    lines = []
    title = report.get("name") or report.get("kind", "problem")
    lines.append(f"== {title} (d = {report['d']}) ==")
    v = report["validation"]
    lines.append(f"presentation: {v['k']} x {v['n']}, rank {v['rank']}"
                 + ("" if v["ok"] else "  ** rank deficient **"))
    if report.get("error"):
        lines.append(f"error: {report['error']}")
    ent = report.get("entropy")
    if ent:
        value = ent["value"]
        shown = value if isinstance(value, str) else f"{value:.12g}"
        lines.append(f"entropy: {shown}  [{ent['method']}, error {ent['error']:.3g}, "
                     f"{ent['provenance']}]")
        if ent.get("note"):
            lines.append(f"  note: {ent['note']}")
    m = report.get("minors")
    if m:
        lines.append(f"minor ideal gcd: {m['gcd']}")
        lines.append(f"minor generators: {', '.join(m['generators'])}")
    e = report.get("expansiveness")
    if e:
        if e["verdict"] == "Expansive":
            lines.append(f"expansiveness: Expansive (margin {e['margin']:.6g}, "
                         f"grid {e['grid']}, {e['provenance']})")
        elif e["verdict"] == "NotExpansive":
            kindtxt = "exact" if e["witness_exact"] else "certified"
            lines.append(f"expansiveness: NotExpansive ({kindtxt} witness at "
                         f"({', '.join(e['witness'])}), residual {e['residual']:.3g})")
        else:
            best = e["best_margin"]
            besttxt = "none" if best is None else f"{best:.3g}"
            lines.append(f"expansiveness: Undecided (best margin "
                         f"{besttxt} after {e['budget_used']} evaluations)")
    sq = report.get("square")
    if sq:
        lines.append(f"det: {sq['det']}")
        counts = ", ".join(f"{row['period']}:{row['count']}" for row in sq["fix_counts"])
        lines.append(f"fix counts (n:count): {counts}")
        if sq.get("growth"):
            tail = sq["growth"][-1]
            lines.append(f"growth rate at n={tail['period']}: {tail['rate']:.6f}")
        elif sq.get("growth_note"):
            lines.append(f"growth: {sq['growth_note']}")
        for prop in ("mixing", "ergodicity"):
            pj = sq[prop]
            extra = ""
            if pj["verdict"] == "Fails":
                extra = f" at {pj['witness']}"
            elif pj["verdict"] == "VerifiedUpTo":
                extra = f" up to bound {pj['bound']}"
            lines.append(f"{prop}: {pj['verdict']}{extra} [{pj['provenance']}]")
    fit = report.get("fitting")
    if fit:
        for lv in fit["levels"]:
            lines.append(f"fitting level {lv['level']}: rank {lv['rank']}, "
                         f"gcd {lv['gcd']}, generators: {', '.join(lv['generators'])}")
    lat = report.get("lattice")
    if lat:
        lines.append(f"lattice index {lat['index']}: "
                     f"count {lat.get('count')}")
    pe = report.get("properties", {}).get("positive_entropy")
    if pe:
        lines.append(f"positive entropy: {pe['verdict']} [{pe['provenance']}]")
    for note in report.get("notes", []):
        lines.append(f"note: {note}")
    lines.append(f"status: {report['status']}")
    return "\n".join(lines)
