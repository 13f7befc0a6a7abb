"""Periodic points, growth, mixing and ergodicity for square presentations.

For a square presentation matrix A (k = n) with nonzero determinant, the
points fixed by a finite-index sublattice L of Z^d form a finite group
whenever det(A) does not vanish at any L-periodic character, and then

    |Fix_L| = | prod over characters z in the dual of Z^d / L of det(A)(z) |.

Three independent routes compute the same number:

* rectangular lattices: iterated resultants against u_i^{n_i} - 1, done
  exactly as determinants of multiplication matrices over the ring, one
  variable at a time;
* arbitrary lattices: Smith normal form of the lattice basis enumerates
  the character group exactly; vanishing is tested exactly at each
  root-of-unity character, and the product is evaluated with certified
  interval arithmetic at escalating precision until the enclosure pins a
  unique integer;
* a block-matrix oracle: the integer matrix of multiplication by A on
  (Z[u]/(u^n - 1, ...))^k, with a plain integer determinant.

Mixing and ergodicity reduce to bounded gcd searches against u^m - 1.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from . import certify, intlinalg
from .certify import ComplexBox
from .gcdring import gcd
from .laurent import LaurentPoly, TorusPoint
from .mahler import PrecisionExhausted
from .presentation import PresentationMatrix, det, validate


@dataclass(frozen=True)
class Lattice:
    """A finite-index sublattice of Z^d, generated by the rows of `basis`."""

    basis: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        basis = tuple(tuple(int(x) for x in row) for row in self.basis)
        object.__setattr__(self, "basis", basis)
        d = len(basis)
        if any(len(row) != d for row in basis):
            raise ValueError("lattice basis must be a square integer matrix")
        if intlinalg.det_int([list(r) for r in basis]) == 0:
            raise ValueError("lattice basis is singular: the sublattice must have finite index")

    @classmethod
    def rectangular(cls, d: int, sides) -> "Lattice":
        """diag(n_1, ..., n_d); an integer argument is used for every side."""
        if isinstance(sides, int):
            sides = (sides,) * d
        sides = tuple(int(s) for s in sides)
        if len(sides) != d or any(s == 0 for s in sides):
            raise ValueError("rectangular lattice needs d nonzero sides")
        return cls(tuple(tuple(abs(s) if i == j else 0 for j in range(d))
                         for i, s in enumerate(sides)))

    @property
    def d(self) -> int:
        return len(self.basis)

    def index(self) -> int:
        return abs(intlinalg.det_int([list(r) for r in self.basis]))

    def rectangular_sides(self) -> tuple[int, ...] | None:
        """The diagonal when the basis is diagonal, else None."""
        if all(self.basis[i][j] == 0
               for i in range(self.d) for j in range(self.d) if i != j):
            return tuple(abs(self.basis[i][i]) for i in range(self.d))
        return None

    def dual_characters(self) -> list[TorusPoint]:
        """All characters of Z^d trivial on the sublattice, as torus points.

        With basis rows L = U D V in Smith form, the solutions of
        L t = 0 (mod 1) are t = V^{-1} (j_1/s_1, ..., j_d/s_d)."""
        L = [list(r) for r in self.basis]
        _, D, V = intlinalg.smith_normal_form(L)
        vinv = intlinalg.invert_unimodular(V)
        diag = [D[i][i] for i in range(self.d)]
        points = []
        seen = set()
        for js in itertools.product(*(range(s) for s in diag)):
            y = [Fraction(j, s) for j, s in zip(js, diag)]
            t = tuple(sum(Fraction(vinv[i][m]) * y[m] for m in range(self.d)) % 1
                      for i in range(self.d))
            seen.add(t)
            points.append(TorusPoint(t))
        assert len(seen) == self.index(), "character count must equal the lattice index"
        return points


@dataclass(frozen=True)
class PeriodicCount:
    """Number of L-periodic points: a nonnegative integer or infinite."""

    value: int | None   # None means infinite

    @classmethod
    def finite(cls, v: int) -> "PeriodicCount":
        return cls(int(v))

    @classmethod
    def infinite(cls) -> "PeriodicCount":
        return cls(None)

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    def __str__(self) -> str:
        return "infinite" if self.value is None else str(self.value)


@dataclass(frozen=True)
class Holds:
    justification: str = ""


@dataclass(frozen=True)
class Fails:
    witness: object


@dataclass(frozen=True)
class VerifiedUpTo:
    bound: int


PropertyVerdict = Union[Holds, Fails, VerifiedUpTo]


def _require_square(A: PresentationMatrix) -> LaurentPoly:
    if not A.is_square():
        raise ValueError("periodic point counts need a square presentation matrix")
    validate(A)
    return det(A)


# -- route (a): iterated resultants ------------------------------------------


def _resultant_vs_unit_cycle(h: LaurentPoly, var: int, n: int) -> LaurentPoly:
    """prod over the n-th roots of unity w of h(..., u_var = w, ...), computed
    exactly as the determinant of multiplication by h on R[u_var]/(u_var^n - 1).

    The result no longer involves u_var."""
    dim = h.dim
    rows = [[LaurentPoly.zero(dim) for _ in range(n)] for _ in range(n)]
    for exps, c in h.terms():
        m = exps[var]
        rest = exps[:var] + (0,) + exps[var + 1:]
        mono = LaurentPoly.monomial(dim, rest, c)
        for e in range(n):
            f = (e + m) % n
            rows[f][e] = rows[f][e] + mono
    return det(tuple(tuple(r) for r in rows))


def fix_count_rectangular(g: LaurentPoly, sides) -> PeriodicCount:
    """|prod_{z^sides = 1} g(z)| by iterated exact resultants."""
    h = g
    for var, n in enumerate(sides):
        h = _resultant_vs_unit_cycle(h, var, n)
    if h.is_zero():
        return PeriodicCount.infinite()
    value = h.constant_value()
    return PeriodicCount.finite(abs(value))


# -- route (b): character enumeration ------------------------------------------


def fix_count_characters(g: LaurentPoly, lattice: Lattice,
                         start_prec: int = 128, max_prec: int = 16384) -> PeriodicCount:
    """|prod over dual characters of g|, with exact vanishing tests and a
    certified interval product rounded to the unique enclosed integer."""
    points = lattice.dual_characters()
    for p in points:
        if certify.vanishes_at_rational_point(g, p):
            return PeriodicCount.infinite()
    quarter = Fraction(1, 4)
    prec = start_prec
    while prec <= max_prec:
        with certify.iv_precision(prec):
            total = ComplexBox.exact_int(1)
            for p in points:
                total = total * certify.eval_box(g, p)
            lo, hi = certify.endpoints_as_fractions(total.abs_interval())
        # exact rational endpoints: float or interval comparisons go
        # indeterminate once the count outgrows the ambient precision
        if hi - lo < quarter:
            value = math.floor(hi)
            if lo <= value <= hi:
                return PeriodicCount.finite(value)
        prec *= 2
    raise PrecisionExhausted(
        f"character product would not stabilize below precision {max_prec}")


# -- route (c): block integer matrix -------------------------------------------


def block_matrix_oracle(A: PresentationMatrix, n: int, max_side: int = 256) -> PeriodicCount:
    """|Fix| for the rectangular lattice n Z^d via the integer matrix of
    multiplication by A on (Z[u1, ..., ud]/(u1^n - 1, ..., ud^n - 1))^k.

    Independent of the other routes: no polynomial determinant is taken.
    """
    if not A.is_square():
        raise ValueError("the block matrix oracle needs a square matrix")
    if n < 1:
        raise ValueError("period must be positive")
    k, d = A.k, A.d
    side = k * n ** d
    if side > max_side:
        raise ValueError(f"block matrix side {side} exceeds the cap {max_side}")
    exps_list = list(itertools.product(range(n), repeat=d))
    pos = {e: idx for idx, e in enumerate(exps_list)}
    size = len(exps_list)
    B = [[0] * side for _ in range(side)]
    for i in range(k):
        for j in range(k):
            entry = A.rows[i][j]
            for m, c in entry.terms():
                for f in exps_list:
                    e = tuple((mf + ff) % n for mf, ff in zip(m, f))
                    B[i * size + pos[e]][j * size + pos[f]] += c
    value = intlinalg.det_int(B)
    if value == 0:
        return PeriodicCount.infinite()
    return PeriodicCount.finite(abs(value))


# -- public API -----------------------------------------------------------------


def fix_count(A: PresentationMatrix, lattice: Lattice) -> PeriodicCount:
    """Number of points fixed by every lattice element, for square A.

    Rectangular lattices go through exact iterated resultants; general
    lattices through Smith-form character enumeration."""
    g = _require_square(A)
    if lattice.d != A.d:
        raise ValueError("lattice dimension does not match the matrix")
    sides = lattice.rectangular_sides()
    if sides is not None:
        return fix_count_rectangular(g, sides)
    return fix_count_characters(g, lattice)


def growth_rate(A: PresentationMatrix, max_n: int) -> list[tuple[int, float]]:
    """[(n, log |Fix_{nZ^d}| / n^d)] for n = 1..max_n.

    An infinite count aborts: the action is not expansive along that
    lattice and the growth rate is not defined there."""
    g = _require_square(A)
    out = []
    for n in range(1, max_n + 1):
        count = fix_count_rectangular(g, (n,) * A.d)
        if count.is_infinite:
            raise ValueError(
                f"period {n} has infinitely many periodic points (non-expansive "
                "direction); growth rates are undefined")
        out.append((n, math.log(count.value) / n ** A.d))
    return out


def mixing_check(A: PresentationMatrix, bound: int = 8) -> PropertyVerdict:
    """Mixing fails exactly when det(A) shares a factor with some u^m - 1.

    Searches m in the half space with max-norm <= bound, smallest first;
    a hit is an exact failure witness, otherwise the property is verified
    up to the bound."""
    g = _require_square(A)
    d = A.d
    for m in intlinalg.half_space_vectors(d, bound):
        t = LaurentPoly.monomial(d, m) - LaurentPoly.one(d)
        if not gcd(g, t).is_unit():
            return Fails(witness=m)
    return VerifiedUpTo(bound=bound)


def ergodic_check(A: PresentationMatrix, bound: int = 8) -> PropertyVerdict:
    """Ergodicity of the action presented by a validated square matrix.

    For d >= 2 the ideal (u1^m - 1, ..., ud^m - 1) has height d >= 2, so no
    height-one associated prime of det(A) can contain every generator and
    the action is ergodic outright.  For d = 1 failure means det(A) shares
    a factor with u1^m - 1 for some m, searched up to the bound."""
    g = _require_square(A)
    if A.d >= 2:
        return Holds(justification=(
            "with d >= 2 independent directions, no height-one prime above "
            "det(A) contains u_i^m - 1 for every i, so every nontrivial "
            "eigenfunction relation is ruled out"))
    for m in range(1, bound + 1):
        t = LaurentPoly(1, {(m,): 1}) - LaurentPoly.one(1)
        if not gcd(g, t).is_unit():
            return Fails(witness=m)
    return VerifiedUpTo(bound=bound)
