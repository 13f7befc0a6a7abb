"""Greatest common divisors in the Laurent polynomial ring over Z.

The ring Z[u1^{+-1}, ..., ud^{+-1}] is a gcd domain (it is a localization
of a UFD), so gcds exist and are unique up to units.  This module returns
the unit-normal representative and always verifies the result by two
exact divisions before returning it; a gcd that fails to divide its
inputs is a bug, not a value.

Algorithm: strip monomial units, split off the integer content, then run
a primitive polynomial remainder sequence recursively over a chosen main
variable, taking contents with respect to that variable by recursive
multivariate gcds of the coefficients.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .laurent import LaurentPoly, exact_div


@dataclass(frozen=True)
class GcdResult:
    """A gcd together with the exact cofactors input_i / gcd."""

    gcd: LaurentPoly
    cofactors: tuple[LaurentPoly, ...]


def _deg_in(f: LaurentPoly, v: int) -> int:
    """Maximum exponent of variable v (inputs here always have min exponent 0)."""
    if f.is_zero():
        return -1
    return f.exponent_range(v)[1]


def _coeffs_in(f: LaurentPoly, v: int) -> dict[int, LaurentPoly]:
    """Split f as a polynomial in u_v with coefficients free of u_v."""
    out: dict[int, dict] = {}
    for exps, c in f.terms():
        e = exps[v]
        rest = exps[:v] + (0,) + exps[v + 1:]
        out.setdefault(e, {})[rest] = c
    return {e: LaurentPoly(f.dim, terms) for e, terms in out.items()}


def _content_in(f: LaurentPoly, v: int) -> LaurentPoly:
    """gcd of the u_v-coefficients of f (a polynomial free of u_v)."""
    coeffs = list(_coeffs_in(f, v).values())
    g = coeffs[0]
    for h in coeffs[1:]:
        if g.is_one():
            break
        g = _gcd_engine(g, h)
    return g


def _primitive_in(f: LaurentPoly, v: int) -> LaurentPoly:
    cont = _content_in(f, v)
    if cont.is_one():
        return f
    q = exact_div(f, cont)
    assert q is not None, "content must divide"
    return q


def _pseudo_rem(a: LaurentPoly, b: LaurentPoly, v: int) -> LaurentPoly:
    """Pseudo remainder of a by b with respect to u_v (no divisions)."""
    db = _deg_in(b, v)
    b_coeffs = _coeffs_in(b, v)
    lead_b = b_coeffs[db]
    r = a
    while not r.is_zero():
        dr = _deg_in(r, v)
        if dr < db:
            break
        r_coeffs = _coeffs_in(r, v)
        lead_r = r_coeffs[dr]
        shift = [0] * a.dim
        shift[v] = dr - db
        r = lead_b * r - lead_r.shift(tuple(shift)) * b
    return r


def _gcd_engine(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    """Unit-normal gcd of two nonzero polynomials (unverified core)."""
    f = f.unit_normalize()
    g = g.unit_normalize()
    cf, cg = f.content(), g.content()
    c = math.gcd(cf, cg)
    f = f.scale_down_exact(cf)
    g = g.scale_down_exact(cg)
    prim = _primitive_gcd(f, g)
    return (prim * c).unit_normalize()


def _primitive_gcd(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    """gcd of two integer-primitive ordinary polynomials, itself primitive."""
    if f.is_constant() or g.is_constant():
        return LaurentPoly.one(f.dim)
    common = sorted(set(f.variables()) & set(g.variables()))
    if not common:
        return LaurentPoly.one(f.dim)
    v = min(common, key=lambda i: (_deg_in(f, i) + _deg_in(g, i), i))

    cont_f = _content_in(f, v)
    cont_g = _content_in(g, v)
    cont_gcd = _gcd_engine(cont_f, cont_g) if not (cont_f.is_one() or cont_g.is_one()) \
        else LaurentPoly.one(f.dim)
    a = _primitive_in(f, v)
    b = _primitive_in(g, v)
    if _deg_in(a, v) < _deg_in(b, v):
        a, b = b, a
    while True:
        r = _pseudo_rem(a, b, v)
        if r.is_zero():
            prs = b
            break
        if _deg_in(r, v) == 0:
            # a nonzero u_v-free remainder: the primitive parts share no u_v factor
            prs = LaurentPoly.one(f.dim)
            break
        a, b = b, _primitive_in(r.unit_normalize(), v)
    if not prs.is_one():
        prs = _primitive_in(prs.unit_normalize(), v)
        prs = prs.scale_down_exact(prs.content())
    return (cont_gcd * prs).unit_normalize()


def gcd(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    """Unit-normal gcd, verified: the result exactly divides both inputs.

    gcd(f, 0) is the unit normalization of f; gcd(0, 0) is an error.
    The integer content participates: gcd(6, 2*u1) == 2.
    """
    if f.dim != g.dim:
        raise ValueError("dimension mismatch")
    if f.is_zero() and g.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    if f.is_zero():
        return g.unit_normalize()
    if g.is_zero():
        return f.unit_normalize()
    result = _gcd_engine(f, g)
    if exact_div(f, result) is None or exact_div(g, result) is None:
        raise AssertionError(
            f"gcd verification failed: {result} does not divide both {f} and {g}")
    return result


def gcd_list(fs: Sequence[LaurentPoly]) -> LaurentPoly:
    """gcd of a list with at least one nonzero element."""
    fs = list(fs)
    if not fs:
        raise ValueError("gcd of an empty list is undefined")
    nonzero = [f for f in fs if not f.is_zero()]
    if not nonzero:
        raise ValueError("gcd of all-zero list is undefined")
    g = nonzero[0].unit_normalize()
    for f in nonzero[1:]:
        if g.is_one():
            break
        g = gcd(g, f)
    return g


def gcd_cofactors(fs: Sequence[LaurentPoly]) -> GcdResult:
    """gcd of the list together with the exact quotients input_i / gcd."""
    g = gcd_list(fs)
    cofs = []
    for f in fs:
        q = exact_div(f, g)
        assert q is not None, "gcd must divide every input"
        cofs.append(q)
    return GcdResult(gcd=g, cofactors=tuple(cofs))


def multiplicity(f: LaurentPoly, p: LaurentPoly) -> int:
    """Largest k with p^k dividing f.  Requires f nonzero and p a nonunit
    nonzero polynomial, otherwise the count is unbounded or meaningless."""
    if f.is_zero():
        raise ValueError("multiplicity in the zero polynomial is undefined")
    if p.is_zero() or p.is_unit():
        raise ValueError("multiplicity with respect to zero or a unit is undefined")
    count = 0
    current = f
    while True:
        q = exact_div(current, p)
        if q is None:
            return count
        current = q
        count += 1
