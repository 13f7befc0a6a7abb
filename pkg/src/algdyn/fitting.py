"""Fitting ideals of user-supplied finite free resolutions.

A resolution is an ordered list of matrices phi_1, ..., phi_t over the
Laurent ring with phi_i . phi_{i+1} = 0; the level-l Fitting ideal is
generated by the r x r minors of phi_l where r = rank(phi_l) over the
fraction field.  Rank 0 gives the trivial ideal <1>.

Resolutions are input, never computed: syzygy computation would need
Groebner machinery over the integers, and the level-1 ideal (all that
entropy and expansiveness require) comes straight from the presentation
matrix.  validate() only confirms that consecutive maps compose to zero;
it does not certify exactness.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Union

from .gcdring import gcd_list
from .laurent import LaurentPoly, divides
from .polyio import parse_poly
from .presentation import Matrix, as_matrix, minor_dets, rank


class CompositionNonzeroError(ValueError):
    """Consecutive maps of a claimed resolution do not compose to zero.

    `level` is 1-based: the product phi_level . phi_{level+1} has a nonzero
    entry at (row, col)."""

    def __init__(self, level: int, row: int, col: int, value: LaurentPoly):
        self.level = level
        self.row = row
        self.col = col
        self.value = value
        super().__init__(
            f"maps {level} and {level + 1} do not compose to zero: "
            f"entry ({row}, {col}) of the product is {value}")


def _mat_mul(a: Matrix, b: Matrix) -> Matrix:
    dim = a[0][0].dim
    zero = LaurentPoly.zero(dim)
    out = []
    for i in range(len(a)):
        row = []
        for j in range(len(b[0])):
            acc = zero
            for m in range(len(b)):
                if a[i][m] and b[m][j]:
                    acc = acc + a[i][m] * b[m][j]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


@dataclass(frozen=True)
class FreeResolution:
    """Maps phi_1, ..., phi_t with cols(phi_i) = rows(phi_{i+1})."""

    d: int
    maps: tuple[Matrix, ...]

    def __post_init__(self):
        if not self.maps:
            raise ValueError("a resolution needs at least one map")
        maps = tuple(as_matrix(m) for m in self.maps)
        object.__setattr__(self, "maps", maps)
        for m in maps:
            for row in m:
                for entry in row:
                    if entry.dim != self.d:
                        raise ValueError("matrix entry dimension mismatch")
        for i in range(len(maps) - 1):
            if len(maps[i][0]) != len(maps[i + 1]):
                raise ValueError(
                    f"maps {i + 1} and {i + 2} are not composable: "
                    f"{len(maps[i][0])} columns vs {len(maps[i + 1])} rows")

    @classmethod
    def from_strings(cls, d: int, maps: list[list[list[str]]]) -> "FreeResolution":
        parsed = tuple(
            tuple(tuple(parse_poly(s, d) for s in row) for row in m) for m in maps)
        return cls(d, parsed)

    @property
    def length(self) -> int:
        return len(self.maps)

    def validate(self) -> None:
        """Check phi_i . phi_{i+1} = 0 exactly for every i; raise on failure."""
        for i in range(len(self.maps) - 1):
            prod = _mat_mul(self.maps[i], self.maps[i + 1])
            for r, row in enumerate(prod):
                for c, entry in enumerate(row):
                    if entry:
                        raise CompositionNonzeroError(i + 1, r, c, entry)


def _factor_positive(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of n >= 1 as ((p, multiplicity), ...)."""
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


@dataclass(frozen=True)
class FittingLevel:
    """Level-l Fitting data: rank of the map, minor generators, their gcd,
    and the prime factorization of the gcd's integer content."""

    level: int
    rank: int
    generators: tuple[LaurentPoly, ...]
    gcd: LaurentPoly
    content_factors: tuple[tuple[int, int], ...]


def fitting_ideal(res: FreeResolution, level: int) -> FittingLevel:
    """Generators of the level-l Fitting ideal: the r x r minors of phi_l
    over every row and column subset, unit normalized and deduplicated."""
    if not 1 <= level <= res.length:
        raise ValueError(f"level must be between 1 and {res.length}")
    m = res.maps[level - 1]
    r = rank(m)
    one = LaurentPoly.one(res.d)
    if r == 0:
        return FittingLevel(level, 0, (one,), one, ())
    nr, nc = len(m), len(m[0])
    cache: dict = {}
    col_subsets = list(itertools.combinations(range(nc), r))
    seen = {}
    for rsub in itertools.combinations(range(nr), r):
        for v in minor_dets(m, rsub, col_subsets, cache):
            if v:
                nv = v.unit_normalize()
                seen[nv.sorted_terms()] = nv
    gens = tuple(seen[key] for key in sorted(seen))
    g = gcd_list(list(gens))
    return FittingLevel(level, r, gens, g, _factor_positive(g.content()))


def fitting_report(res: FreeResolution) -> list[FittingLevel]:
    """fitting_ideal at every level of the resolution."""
    res.validate()
    return [fitting_ideal(res, level) for level in range(1, res.length + 1)]


@dataclass(frozen=True)
class Contained:
    pass


@dataclass(frozen=True)
class NotContained:
    witness: LaurentPoly


Containment = Union[Contained, NotContained]


def principal_candidate_check(res: FreeResolution, level: int,
                              p: LaurentPoly) -> Containment:
    """Whether the level-l Fitting ideal lies inside the principal ideal <p>.

    For principal ideals containment is exact divisibility generator by
    generator; a NotContained verdict carries the first generator p fails
    to divide.  Candidates that are not principal need ideal membership
    tests and are out of scope."""
    if p.is_zero() or p.is_unit():
        raise ValueError("candidate must be a nonzero non-unit")
    data = fitting_ideal(res, level)
    for g in data.generators:
        if not divides(p, g):
            return NotContained(witness=g)
    return Contained()


def kernel_check(a: Matrix, v: list[LaurentPoly]) -> int | None:
    """Verify A . v = 0 exactly; None when it holds, else the first
    (0-based) row of A whose dot product with v is nonzero."""
    m = as_matrix(a)
    if len(m[0]) != len(v):
        raise ValueError("vector length does not match the matrix columns")
    dim = m[0][0].dim
    zero = LaurentPoly.zero(dim)
    for i, row in enumerate(m):
        acc = zero
        for entry, x in zip(row, v):
            if entry and x:
                acc = acc + entry * x
        if acc:
            return i
    return None
