"""Dense univariate polynomial helpers over the integers and rationals.

Polynomials are plain lists of coefficients, index = exponent, with no
trailing zeros (the zero polynomial is the empty list).  This module is
deliberately independent of the sparse Laurent representation so it can
double as a cross-check oracle in tests: division, gcd, cyclotomic
polynomials, squarefree decomposition and Sturm chains.
"""
from __future__ import annotations

import functools
import math
from fractions import Fraction


def trim(cs: list) -> list:
    while cs and not cs[-1]:
        cs.pop()
    return cs


def degree(cs: list) -> int:
    """Degree, with the zero polynomial reported as -1."""
    return len(cs) - 1


def is_zero(cs: list) -> bool:
    return not cs


def add(f: list, g: list) -> list:
    n = max(len(f), len(g))
    out = [0] * n
    for i, c in enumerate(f):
        out[i] += c
    for i, c in enumerate(g):
        out[i] += c
    return trim(out)


def neg(f: list) -> list:
    return [-c for c in f]


def sub(f: list, g: list) -> list:
    return add(f, neg(g))


def mul(f: list, g: list) -> list:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                if b:
                    out[i + j] += a * b
    return trim(out)


def scale(f: list, c) -> list:
    if not c:
        return []
    return [a * c for a in f]


def evaluate(f: list, x):
    acc = 0
    for c in reversed(f):
        acc = acc * x + c
    return acc


def derivative(f: list) -> list:
    return trim([i * c for i, c in enumerate(f)][1:])


def content(f: list) -> int:
    g = 0
    for c in f:
        g = math.gcd(g, c)
        if g == 1:
            return 1
    return g


def primitive(f: list) -> list:
    c = content(f)
    return [a // c for a in f] if c > 1 else list(f)


def divmod_exact(f: list, g: list) -> tuple[list, list] | None:
    """Integer polynomial division when every intermediate quotient coefficient
    is integral; returns (q, r) with f = q*g + r, deg r < deg g, or None when a
    coefficient fails to divide.  Exact for monic g."""
    if not g:
        raise ZeroDivisionError("division by zero polynomial")
    r = list(f)
    q = [0] * max(len(f) - len(g) + 1, 0)
    dg = degree(g)
    lc = g[-1]
    while degree(r) >= dg:
        c, rem = divmod(r[-1], lc)
        if rem:
            return None
        k = degree(r) - dg
        q[k] = c
        for i, b in enumerate(g):
            r[i + k] -= c * b
        trim(r)
    return trim(q), r


def div_exact(f: list, g: list) -> list | None:
    """Exact quotient f/g over Z, or None when g does not divide f."""
    res = divmod_exact(f, g)
    if res is None:
        return None
    q, r = res
    return q if not r else None


def pseudo_rem(f: list, g: list) -> list:
    """Pseudo remainder: lc(g)^(deg f - deg g + 1) * f modulo g, exactly."""
    if not g:
        raise ZeroDivisionError("pseudo remainder by zero")
    r = list(f)
    dg = degree(g)
    lc = g[-1]
    while degree(r) >= dg:
        k = degree(r) - dg
        c = r[-1]
        r = [lc * a for a in r]
        for i, b in enumerate(g):
            r[i + k] -= c * b
        trim(r)
    return r


def gcd_int(f: list, g: list) -> list:
    """gcd over Z including integer content, normalized to positive leading
    coefficient.  Primitive polynomial remainder sequence."""
    if not f:
        return [c if g[-1] > 0 else -c for c in g] if g else []
    if not g:
        return [c if f[-1] > 0 else -c for c in f]
    c = math.gcd(content(f), content(g))
    a, b = primitive(f), primitive(g)
    if degree(a) < degree(b):
        a, b = b, a
    while b:
        r = primitive(pseudo_rem(a, b))
        a, b = b, r
    a = primitive(a)
    if a[-1] < 0:
        a = neg(a)
    return scale(a, c)


def squarefree_part(f: list) -> list:
    d = gcd_int(f, derivative(f))
    q = div_exact(f, d)
    assert q is not None
    return q


def yun_squarefree(f: list) -> list[tuple[list, int]]:
    """Squarefree decomposition f = content * prod a_i^i over Q, with the a_i
    primitive integer polynomials.  Returns [(a_i, i)] for nonconstant a_i."""
    f = primitive(f)
    if degree(f) < 1:
        return []
    if f[-1] < 0:
        f = neg(f)
    df = derivative(f)
    a = gcd_int(f, df)
    b = div_exact(f, a)
    c = div_exact(df, a)
    assert b is not None and c is not None
    out = []
    i = 1
    while degree(b) >= 1:
        d = sub(c, derivative(b))
        p = gcd_int(b, d)
        if degree(p) >= 1:
            out.append((primitive(p), i))
        b2 = div_exact(b, p)
        c = div_exact(d, p)
        assert b2 is not None and c is not None
        b = b2
        i += 1
    return out


@functools.lru_cache(maxsize=None)
def cyclotomic(n: int) -> tuple[int, ...]:
    """The n-th cyclotomic polynomial, as a coefficient tuple."""
    if n < 1:
        raise ValueError("cyclotomic index must be positive")
    f = [-1] + [0] * (n - 1) + [1]          # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            q = div_exact(f, list(cyclotomic(d)))
            assert q is not None
            f = q
    return tuple(f)


def euler_phi(n: int) -> int:
    result = n
    p = 2
    m = n
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def cyclotomic_indices_up_to_degree(deg: int):
    """All n with deg(cyclotomic(n)) = phi(n) <= deg.  Uses phi(n) >= sqrt(n/2)."""
    if deg < 1:
        return []
    bound = 2 * deg * deg + 1
    return [n for n in range(1, bound + 1) if euler_phi(n) <= deg]


def strip_cyclotomic_factors(f: list, indices=None) -> tuple[list, list[tuple[int, int]]]:
    """Divide out cyclotomic factors (with multiplicity).  Returns the cofactor
    and the list of (index, multiplicity) removed.  With indices=None every
    possible index for the current degree is tried."""
    g = list(f)
    removed: list[tuple[int, int]] = []
    if not g:
        return g, removed
    cand = indices if indices is not None else cyclotomic_indices_up_to_degree(degree(g))
    for n in cand:
        phi_n = degree(list(cyclotomic(n)))
        count = 0
        while degree(g) >= phi_n:
            q = div_exact(g, list(cyclotomic(n)))
            if q is None:
                break
            g = q
            count += 1
        if count:
            removed.append((n, count))
    return g, removed


def mod_monic(f: list, g: list) -> list:
    """Remainder of f modulo a monic g, exact over Z."""
    if not g or g[-1] != 1:
        raise ValueError("modulus must be monic")
    r = list(f)
    dg = degree(g)
    while degree(r) >= dg:
        c = r[-1]
        k = degree(r) - dg
        for i, b in enumerate(g):
            r[i + k] -= c * b
        trim(r)
    return r


def reciprocal(f: list) -> list:
    """x^deg(f) * f(1/x): the coefficient list reversed."""
    out = list(reversed(f))
    return trim(out)


# -- Sturm chains over the rationals --------------------------------------


def _to_fracs(f: list) -> list[Fraction]:
    return [Fraction(c) for c in f]


def _frac_rem(f: list[Fraction], g: list[Fraction]) -> list[Fraction]:
    r = list(f)
    dg = len(g) - 1
    lc = g[-1]
    while len(r) - 1 >= dg and r:
        c = r[-1] / lc
        k = len(r) - 1 - dg
        for i, b in enumerate(g):
            r[i + k] -= c * b
        while r and not r[-1]:
            r.pop()
    return r


def sturm_chain(f: list) -> list[list[Fraction]]:
    p0 = _to_fracs(f)
    p1 = _to_fracs(derivative(f))
    chain = [p0, p1]
    while chain[-1]:
        r = _frac_rem(chain[-2], chain[-1])
        if not r:
            break
        chain.append([-c for c in r])
    return chain


def _sign_changes(chain: list[list[Fraction]], x: Fraction) -> int:
    signs = []
    for p in chain:
        v = evaluate(p, x)
        if v:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_real_roots(f: list, lo: Fraction, hi: Fraction) -> int:
    """Number of distinct real roots in the half open interval (lo, hi].

    The input need not be squarefree; the count is of distinct roots."""
    f = squarefree_part(primitive(f))
    if degree(f) < 1:
        return 0
    chain = sturm_chain(f)
    return _sign_changes(chain, lo) - _sign_changes(chain, hi)


def isolate_one_root(f: list, lo: Fraction, hi: Fraction, width: Fraction) -> tuple[Fraction, Fraction]:
    """Shrink (lo, hi], known to contain at least one root, to width <= width
    around some root by Sturm bisection."""
    f = squarefree_part(primitive(f))
    chain = sturm_chain(f)

    def count(a, b):
        return _sign_changes(chain, a) - _sign_changes(chain, b)

    assert count(lo, hi) >= 1
    while hi - lo > width:
        mid = (lo + hi) / 2
        if evaluate(_to_fracs(f), mid) == 0:
            return (mid - width / 2, mid + width / 2)
        if count(lo, mid) >= 1:
            hi = mid
        else:
            lo = mid
    return lo, hi
