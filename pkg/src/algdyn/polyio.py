"""Text and file formats for Laurent polynomials and presentation problems.

Polynomial grammar (whitespace insensitive):

    poly    := term (('+' | '-') term)*
    term    := [sign] (integer ['*' factors] | factors)
    factors := var ['^' integer] ('*' var ['^' integer])*
    var     := 'u' index            # u1, u2, ..., ud

Multiplication signs are explicit ("2*u1", never "2u1").  Repeated
variables multiply ("u1*u1" is u1^2) and like terms combine, so parsing
never fails on redundancy, only on malformed syntax.  `serialize_poly`
emits the canonical form (graded lex descending, explicit '*'), and
parse(serialize(f)) == f for every polynomial.

Problem files are JSON documents:

    {"d": 2, "kind": "presentation",
     "matrix": [["2", "u2^2-5", "0"], ["0", "u1*u2-7*u1+u2", "3"]]}

    {"d": 2, "kind": "resolution",
     "maps": [[["1+u1+u2", "2"]], [["2"], ["-1-u1-u2"]]]}

    {"d": 2, "kind": "lattice-query",
     "matrix": [["u1^2-4*u1-1"]], "lattice": [[2, 0], [0, 2]]}

with optional "name" and "expected" metadata passed through untouched.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

from .laurent import LaurentPoly

MAX_EXPONENT = 10 ** 6
MAX_INDEX = 64


class PolyParseError(ValueError):
    """Malformed polynomial text; carries the character position."""

    def __init__(self, message: str, pos: int, text: str):
        self.pos = pos
        self.text = text
        super().__init__(f"{message} at position {pos}: {text!r}")


class ProblemFormatError(ValueError):
    """Structurally invalid problem file."""


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self) -> str:
        c = self.peek()
        self.pos += 1
        return c

    def error(self, message: str) -> PolyParseError:
        return PolyParseError(message, self.pos, self.text)

    def integer(self) -> int:
        self.skip_ws()
        start = self.pos
        if self.pos < len(self.text) and self.text[self.pos] in "+-":
            self.pos += 1
        digits = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == digits:
            self.pos = start
            raise self.error("expected an integer")
        return int(self.text[start:self.pos])


def parse_poly(text: str, dim: int) -> LaurentPoly:
    """Parse polynomial text over d = dim variables."""
    if dim < 1:
        raise ValueError("dimension must be at least 1")
    sc = _Scanner(text)
    terms: list[tuple[tuple[int, ...], int]] = []

    def parse_var() -> tuple[int, int]:
        # caller has seen 'u'
        sc.skip_ws()
        if sc.peek() != "u":
            raise sc.error("expected a variable")
        sc.pos += 1
        start = sc.pos
        while sc.pos < len(sc.text) and sc.text[sc.pos].isdigit():
            sc.pos += 1
        if sc.pos == start:
            raise sc.error("expected a variable index after 'u'")
        index = int(sc.text[start:sc.pos])
        if not 1 <= index <= dim:
            raise PolyParseError(f"variable u{index} out of range for dimension {dim}",
                                 start, sc.text)
        exp = 1
        if sc.peek() == "^":
            sc.pos += 1
            exp = sc.integer()
            if abs(exp) > MAX_EXPONENT:
                raise PolyParseError(f"exponent {exp} exceeds the limit {MAX_EXPONENT}",
                                     sc.pos, sc.text)
        return index - 1, exp

    def parse_term(sign: int):
        sc.skip_ws()
        coeff = sign
        exps = [0] * dim
        c = sc.peek()
        if c.isdigit():
            coeff *= sc.integer()
            if sc.peek() == "*":
                sc.pos += 1
                sc.skip_ws()
                if sc.peek() != "u":
                    raise sc.error("expected a variable after '*'")
            elif sc.peek() == "u":
                raise sc.error("missing '*' between coefficient and variable")
            else:
                terms.append((tuple(exps), coeff))
                return
        elif c != "u":
            raise sc.error("expected a term")
        while True:
            index, exp = parse_var()
            exps[index] += exp
            if sc.peek() == "*":
                sc.pos += 1
                continue
            break
        terms.append((tuple(exps), coeff))

    sc.skip_ws()
    if not sc.peek():
        raise sc.error("empty polynomial")
    sign = 1
    if sc.peek() in "+-":
        sign = -1 if sc.take() == "-" else 1
    parse_term(sign)
    while sc.peek():
        op = sc.take()
        if op not in "+-":
            sc.pos -= 1
            raise sc.error(f"expected '+' or '-', found {op!r}")
        parse_term(-1 if op == "-" else 1)
    return LaurentPoly(dim, terms)


def serialize_poly(f: LaurentPoly) -> str:
    """Canonical text form; inverse of parse_poly on its image."""
    return str(f)


# -- problem files ---------------------------------------------------------

KINDS = ("presentation", "resolution", "lattice-query")


@dataclass
class Problem:
    """A parsed problem file."""

    d: int
    kind: str
    matrix: tuple[tuple[LaurentPoly, ...], ...] | None = None
    maps: tuple[tuple[tuple[LaurentPoly, ...], ...], ...] | None = None
    lattice: tuple[tuple[int, ...], ...] | None = None
    name: str | None = None
    expected: dict[str, Any] = field(default_factory=dict)

    @property
    def presentation_matrix(self) -> tuple[tuple[LaurentPoly, ...], ...]:
        """The presentation: the matrix itself, or the first map of a resolution."""
        if self.matrix is not None:
            return self.matrix
        if self.maps:
            return self.maps[0]
        raise ProblemFormatError("problem carries no presentation matrix")


def _parse_matrix(rows, d: int, what: str) -> tuple[tuple[LaurentPoly, ...], ...]:
    if not isinstance(rows, list) or not rows:
        raise ProblemFormatError(f"{what} must be a nonempty list of rows")
    width = None
    out = []
    for i, row in enumerate(rows):
        if not isinstance(row, list) or not row:
            raise ProblemFormatError(f"{what} row {i} must be a nonempty list")
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise ProblemFormatError(f"{what} row {i} has {len(row)} entries, expected {width}")
        entries = []
        for j, cell in enumerate(row):
            if not isinstance(cell, str):
                raise ProblemFormatError(f"{what} entry ({i},{j}) must be a string")
            try:
                entries.append(parse_poly(cell, d))
            except PolyParseError as exc:
                raise PolyParseError(f"{what} entry ({i},{j}): {exc.args[0]}", exc.pos, cell) from None
        out.append(tuple(entries))
    return tuple(out)


def parse_problem(doc: dict) -> Problem:
    """Validate and parse an in-memory problem document."""
    if not isinstance(doc, dict):
        raise ProblemFormatError("problem document must be a JSON object")
    d = doc.get("d")
    if not isinstance(d, int) or not 1 <= d <= MAX_INDEX:
        raise ProblemFormatError(f"'d' must be an integer in [1, {MAX_INDEX}]")
    kind = doc.get("kind")
    if kind not in KINDS:
        raise ProblemFormatError(f"'kind' must be one of {KINDS}, got {kind!r}")
    problem = Problem(d=d, kind=kind, name=doc.get("name"),
                      expected=doc.get("expected") or {})
    if kind in ("presentation", "lattice-query"):
        if "matrix" not in doc:
            raise ProblemFormatError(f"kind {kind!r} requires a 'matrix'")
        problem.matrix = _parse_matrix(doc["matrix"], d, "matrix")
    if kind == "resolution":
        maps = doc.get("maps")
        if not isinstance(maps, list) or not maps:
            raise ProblemFormatError("kind 'resolution' requires a nonempty 'maps' list")
        parsed = tuple(_parse_matrix(m, d, f"maps[{i}]") for i, m in enumerate(maps))
        for i in range(len(parsed) - 1):
            cols = len(parsed[i][0])
            rows = len(parsed[i + 1])
            if cols != rows:
                raise ProblemFormatError(
                    f"maps[{i}] has {cols} columns but maps[{i + 1}] has {rows} rows; "
                    "consecutive maps must compose")
        problem.maps = parsed
    if "lattice" in doc and doc["lattice"] is not None:
        lat = doc["lattice"]
        if (not isinstance(lat, list) or len(lat) != d
                or any(not isinstance(r, list) or len(r) != d for r in lat)):
            raise ProblemFormatError(f"'lattice' must be a {d}x{d} integer matrix")
        for r in lat:
            for x in r:
                if not isinstance(x, int):
                    raise ProblemFormatError("lattice entries must be integers")
        problem.lattice = tuple(tuple(r) for r in lat)
    elif kind == "lattice-query":
        raise ProblemFormatError("kind 'lattice-query' requires a 'lattice'")
    return problem


def load_problem(path: str) -> Problem:
    """Load and validate a problem file from disk."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ProblemFormatError(f"invalid JSON in {path}: {exc}") from None
    return parse_problem(doc)


def matrix_to_strings(matrix) -> list[list[str]]:
    return [[serialize_poly(entry) for entry in row] for row in matrix]


def save_report(report: dict, path: str) -> None:
    """Write a report dictionary as stable, human-diffable JSON."""
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(report, fh, indent=2)
        fh.write("\n")
