"""Presentation matrices over the Laurent polynomial ring and their
determinantal data.

A module M = R^k / A R^n is presented by a k x n matrix A.  The row rank
of A over the fraction field decides whether the associated ideal theory
is meaningful: rank < k means M contains a free summand, the entropy is
infinite, and the maximal-minor ideal is zero.  `validate` enforces full
row rank; `minors` collects the k x k minors into a determinantal ideal
and records their gcd.

All elimination is fraction free (Bareiss): every division performed is
exact in the ring, so results are exact integers of the ring with no
coefficient blowup beyond minor size.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .gcdring import gcd_list
from .laurent import LaurentPoly, exact_div

Matrix = tuple[tuple[LaurentPoly, ...], ...]


class FreeSubmoduleError(ValueError):
    """The presentation matrix has row rank below k: the module has a free
    summand, all k x k minors vanish, and the entropy is infinite."""

    def __init__(self, rank: int, k: int):
        self.rank = rank
        self.k = k
        super().__init__(
            f"presentation matrix has row rank {rank} < k = {k}: the module "
            "contains a free summand, the maximal-minor ideal is zero and the "
            "entropy is infinite")


def as_matrix(rows: Sequence[Sequence[LaurentPoly]]) -> Matrix:
    out = tuple(tuple(row) for row in rows)
    if not out or not out[0]:
        raise ValueError("matrix must be nonempty")
    width = len(out[0])
    dim = out[0][0].dim
    for row in out:
        if len(row) != width:
            raise ValueError("ragged matrix")
        for entry in row:
            if not isinstance(entry, LaurentPoly) or entry.dim != dim:
                raise ValueError("matrix entries must share one Laurent ring")
    return out


@dataclass(frozen=True)
class PresentationMatrix:
    """A k x n matrix over Z[u1^{+-1}, ..., ud^{+-1}]."""

    d: int
    rows: Matrix

    def __post_init__(self):
        rows = as_matrix(self.rows)
        object.__setattr__(self, "rows", rows)
        if rows[0][0].dim != self.d:
            raise ValueError(f"entries live in dimension {rows[0][0].dim}, not d={self.d}")

    @classmethod
    def from_strings(cls, d: int, rows: Sequence[Sequence[str]]) -> "PresentationMatrix":
        from .polyio import parse_poly
        return cls(d, tuple(tuple(parse_poly(s, d) for s in row) for row in rows))

    @property
    def k(self) -> int:
        return len(self.rows)

    @property
    def n(self) -> int:
        return len(self.rows[0])

    def entry(self, i: int, j: int) -> LaurentPoly:
        return self.rows[i][j]

    def is_square(self) -> bool:
        return self.k == self.n

    def __str__(self) -> str:
        return "[" + "; ".join(", ".join(str(e) for e in row) for row in self.rows) + "]"


# -- fraction-free elimination ---------------------------------------------


def _eliminate(rows: Matrix) -> tuple[int, int, LaurentPoly | None]:
    """Bareiss elimination with row pivoting and column skipping.

    Returns (rank, swap_parity, last_pivot).  For a square matrix of full
    rank the determinant is swap_parity * last_pivot.
    """
    m = [list(r) for r in rows]
    nr, nc = len(m), len(m[0])
    dim = m[0][0].dim
    zero = LaurentPoly.zero(dim)
    prev = LaurentPoly.one(dim)
    parity = 1
    rank = 0
    row = 0
    pivot = None
    for col in range(nc):
        if row >= nr:
            break
        piv = next((r for r in range(row, nr) if m[r][col]), None)
        if piv is None:
            continue
        if piv != row:
            m[row], m[piv] = m[piv], m[row]
            parity = -parity
        p = m[row][col]
        for r in range(row + 1, nr):
            for c in range(col + 1, nc):
                num = p * m[r][c] - m[r][col] * m[row][c]
                q = exact_div(num, prev)
                assert q is not None, "fraction-free elimination division must be exact"
                m[r][c] = q
            m[r][col] = zero
        prev = p
        pivot = p
        rank += 1
        row += 1
    return rank, parity, pivot


def rank(A: PresentationMatrix | Matrix) -> int:
    """Row rank over the fraction field."""
    rows = A.rows if isinstance(A, PresentationMatrix) else as_matrix(A)
    r, _, _ = _eliminate(rows)
    return r


def validate(A: PresentationMatrix) -> None:
    """Raise FreeSubmoduleError unless A has full row rank k."""
    r = rank(A)
    if r < A.k:
        raise FreeSubmoduleError(r, A.k)


def det(A: PresentationMatrix | Matrix) -> LaurentPoly:
    """Raw determinant of a square matrix (no unit normalization)."""
    rows = A.rows if isinstance(A, PresentationMatrix) else as_matrix(A)
    if len(rows) != len(rows[0]):
        raise ValueError("determinant of a non-square matrix")
    dim = rows[0][0].dim
    r, parity, pivot = _eliminate(rows)
    if r < len(rows):
        return LaurentPoly.zero(dim)
    assert pivot is not None
    return pivot if parity == 1 else -pivot


# -- minors -----------------------------------------------------------------


def minor_dets(rows: Matrix, row_subset: tuple[int, ...], col_subsets, cache=None):
    """Determinants of the square submatrices rows[row_subset] x cols for each
    column subset, sharing subminors through one memo table."""
    if cache is None:
        cache = {}
    dim = rows[0][0].dim
    zero = LaurentPoly.zero(dim)

    def rec(rsub: tuple[int, ...], csub: tuple[int, ...]) -> LaurentPoly:
        key = (rsub, csub)
        hit = cache.get(key)
        if hit is not None:
            return hit
        if len(rsub) == 1:
            val = rows[rsub[0]][csub[0]]
        else:
            r = rsub[-1]
            val = zero
            for pos, c in enumerate(csub):
                entry = rows[r][c]
                if not entry:
                    continue
                sub = rec(rsub[:-1], csub[:pos] + csub[pos + 1:])
                if not sub:
                    continue
                term = entry * sub
                # sign of expanding along the last row, position pos
                if (len(rsub) - 1 + pos) % 2:
                    term = -term
                val = val + term
        cache[key] = val
        return val

    return [rec(tuple(row_subset), tuple(cs)) for cs in col_subsets]


@dataclass(frozen=True)
class DeterminantalIdeal:
    """Generators (unit-normal, deduplicated, deterministic order) of the ideal
    of k x k minors, together with their gcd."""

    generators: tuple[LaurentPoly, ...]
    gcd: LaurentPoly


def minors(A: PresentationMatrix) -> DeterminantalIdeal:
    """The ideal of maximal minors of a validated presentation matrix.

    Column subsets are enumerated in lexicographic order; zero minors are
    dropped, the rest are unit normalized and deduplicated.
    """
    validate(A)
    k, n = A.k, A.n
    col_subsets = list(itertools.combinations(range(n), k))
    dets = minor_dets(A.rows, tuple(range(k)), col_subsets)
    raw = [v for v in dets if v]
    seen = {}
    for v in raw:
        nv = v.unit_normalize()
        seen[nv.sorted_terms()] = nv
    gens = tuple(seen[key] for key in sorted(seen))
    g = gcd_list(list(gens))
    return DeterminantalIdeal(generators=gens, gcd=g)
