"""Expansiveness of the action presented by a matrix A.

The action is expansive exactly when the maximal minors B_1, ..., B_r of A
have no common zero on the unit torus.  Three cooperating strategies:

* a constant nonzero minor settles the question immediately;
* in one variable the common zeros are the zeros of the gcd g of the
  minors, and circle roots of integer polynomials are decidable exactly:
  cyclotomic factors give root-of-unity zeros, and the remaining circle
  roots are counted by Sturm chains applied to the Chebyshev-type
  transform of the self-reciprocal part of g;
* in general a doubling grid sweep certifies positivity via Lipschitz
  bounds (the bulk in floating point with a conservative error model,
  borderline points re-verified with interval arithmetic), and failed
  sweeps attempt a witness descent toward a common zero.

Verdicts carry their evidence: a certified margin, a witness point with a
residual (exact when the minors vanish exactly there), or the budget
spent before giving up.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

import mpmath
import numpy as np

from . import certify, torusgrid, unipoly
from .gcdring import gcd_cofactors
from .laurent import LaurentPoly, TorusPoint
from .presentation import PresentationMatrix, minors


@dataclass(frozen=True)
class Expansive:
    """No common torus zero: certified by the grid of size `grid` (0 when a
    constant minor or an exact argument decided), with min-slack `margin`."""

    grid: int
    margin: float


@dataclass(frozen=True)
class NotExpansive:
    """A common torus zero at `witness`; residual is a certified upper bound
    for max_j |B_j(witness)|, and exact=True means the minors vanish there
    exactly (root of unity witness)."""

    witness: TorusPoint
    residual: float
    exact: bool


@dataclass(frozen=True)
class Undecided:
    """Budget ran out: best certified slack seen so far and evaluations used."""

    best_margin: float
    budget_used: int


ExpansivenessVerdict = Union[Expansive, NotExpansive, Undecided]

DEFAULT_BUDGET = 10 ** 7
RESIDUAL_THRESHOLD = 1e-12


def torus_min_estimate(polys: Sequence[LaurentPoly], N: int) -> float:
    """min over the N^d grid of max_j |f_j|: a cheap upper-bound diagnostic
    for the true minimum of the max (not certified)."""
    polys = list(polys)
    if not polys:
        raise ValueError("need at least one polynomial")
    return torusgrid.min_max_abs([torusgrid.eval_on_grid(f, N) for f in polys])


def expansive(A: PresentationMatrix, budget: int = DEFAULT_BUDGET) -> ExpansivenessVerdict:
    """Decide expansiveness of the action presented by A."""
    ideal = minors(A)
    gens = list(ideal.generators)
    for g in gens:
        if g.is_constant():
            return Expansive(grid=0, margin=float(abs(g.constant_value())))
    if A.d == 1:
        return _expansive_one_var(gens, ideal.gcd, budget)
    return _sweep(gens, budget)


# -- one variable: exact decision ------------------------------------------


def _circle_root_count(prim: list[int]) -> tuple[int, int | None]:
    """(number of distinct unit-circle roots, least cyclotomic index dividing).

    prim: primitive integer coefficients, not constant, nonzero at 0.
    """
    for q in unipoly.cyclotomic_indices_up_to_degree(unipoly.degree(prim)):
        if unipoly.div_exact(prim, list(unipoly.cyclotomic(q))) is not None:
            return 1, q
    # no root-of-unity zeros; remaining circle roots live in gcd(p, p*)
    s = unipoly.gcd_int(prim, unipoly.reciprocal(prim))
    if unipoly.degree(s) < 2:
        return 0, None
    n2 = unipoly.degree(s)
    assert n2 % 2 == 0 and s == unipoly.reciprocal(s), "self-reciprocal part expected"
    t = _chebyshev_transform(s)
    count = unipoly.count_real_roots(t, Fraction(-2), Fraction(2))
    return count, None


def _chebyshev_transform(s: list[int]) -> list[int]:
    """For self-reciprocal s of even degree 2n, the integer polynomial T with
    T(x + 1/x) = x^-n s(x); circle roots of s map to roots of T in (-2, 2)."""
    n = unipoly.degree(s) // 2
    # p_j(w) = x^j + x^-j: p_0 = 2, p_1 = w, p_j = w p_{j-1} - p_{j-2}
    p_prev, p_cur = [2], [0, 1]
    t = [s[n] if n < len(s) else 0]
    for j in range(1, n + 1):
        c = s[n + j]
        if c:
            t = unipoly.add(t, unipoly.scale(p_cur, c))
        p_prev, p_cur = p_cur, unipoly.sub([0] + p_cur, p_prev)
    return t


def _expansive_one_var(gens, g: LaurentPoly, budget: int) -> ExpansivenessVerdict:
    prim = g.unit_normalize()
    content = prim.content()
    if content > 1:
        prim = prim.scale_down_exact(content)
    if prim.is_constant():
        # gcd is an integer: minors share no zeros at all
        return _certified_margin(gens, budget)
    _, _, coeffs = prim.dense_univariate()
    count, cyc_index = _circle_root_count(coeffs)
    if cyc_index is not None:
        witness = TorusPoint((Fraction(1, cyc_index),))
        assert all(certify.vanishes_at_rational_point(b, witness) for b in gens)
        return NotExpansive(witness=witness, residual=0.0, exact=True)
    if count == 0:
        return _certified_margin(gens, budget)
    witness = _isolated_circle_witness(coeffs)
    residual = max(certify.evaluate(b, witness, prec=512).abs_upper for b in gens)
    return NotExpansive(witness=witness, residual=residual, exact=False)


def _isolated_circle_witness(coeffs: list[int]) -> TorusPoint:
    """A high-accuracy rational-angle approximation of a circle root of the
    polynomial, found by Sturm bisection of the Chebyshev transform."""
    s = unipoly.gcd_int(coeffs, unipoly.reciprocal(coeffs))
    t = _chebyshev_transform(s)
    lo, hi = unipoly.isolate_one_root(t, Fraction(-2), Fraction(2), Fraction(1, 2 ** 120))
    w = (lo + hi) / 2
    with certify.work_precision(400):
        wm = mpmath.mpf(w.numerator) / mpmath.mpf(w.denominator)
        theta = mpmath.acos(wm / 2) / (2 * mpmath.pi)
        scaled = int(mpmath.floor(theta * 2 ** 200))
    angle = Fraction(scaled, 2 ** 200)
    return TorusPoint((angle,))


# -- grid sweep with certified slack -----------------------------------------


def _certified_margin(gens, budget: int) -> ExpansivenessVerdict:
    """Sweep for a matrix already known (or hoped) to be expansive."""
    verdict = _sweep(gens, budget, allow_witness=False)
    if not isinstance(verdict, Expansive):
        # the exact route has already ruled out common zeros; report that
        # knowledge with a vacuous margin rather than contradicting it
        return Expansive(grid=0, margin=0.0)
    return verdict


def _sweep(gens, budget: int, allow_witness: bool = True) -> ExpansivenessVerdict:
    d = gens[0].dim
    lips = [g.lipschitz_bound() for g in gens]
    errs = [torusgrid.eval_error_bound(g) for g in gens]
    spent = 0
    best_margin = -math.inf
    N = 32
    while spent + len(gens) * N ** d <= budget:
        arrays = [np.abs(torusgrid.eval_on_grid(g, N)) for g in gens]
        spent += len(gens) * N ** d
        cell = 1.0 / (2.0 * N)
        slack = np.maximum.reduce(
            [a - (e + L * cell) for a, e, L in zip(arrays, errs, lips)])
        margin = float(slack.min())
        best_margin = max(best_margin, margin)
        if margin > 0.0:
            certified, cert_margin = _verify_borderline(gens, slack, N, margin, errs)
            if certified:
                return Expansive(grid=N, margin=cert_margin)
        elif allow_witness:
            worst = np.unravel_index(int(slack.argmin()), slack.shape)
            hit = _witness_descent(gens, torusgrid.grid_point(tuple(map(int, worst)), N))
            spent += 2000
            if hit is not None:
                return hit
        N *= 2
    return Undecided(best_margin=best_margin, budget_used=spent)


def _verify_borderline(gens, slack, N: int, margin: float, errs) -> tuple[bool, float]:
    """Re-check near-threshold grid points with interval arithmetic.

    The bulk filter runs in float64 under a conservative error model; any
    point whose slack is within 4096 float-error-units of the decision gets
    a certified re-evaluation.  Returns (all points certified, margin)."""
    fuzz = 4096.0 * max(errs)
    borderline = np.argwhere(slack < margin + fuzz)
    if len(borderline) > 512:
        borderline = borderline[:512]
    cell = 1.0 / (2.0 * N)
    cert_margin = margin
    for index in borderline:
        point = torusgrid.grid_point(tuple(int(i) for i in index), N)
        point_slack = -math.inf
        for g in gens:
            enc = certify.evaluate(g, point, prec=128)
            point_slack = max(point_slack, enc.abs_lower - g.lipschitz_bound() * cell)
        if point_slack <= 0.0:
            return False, margin
        cert_margin = min(cert_margin, point_slack)
    return True, cert_margin


def _witness_descent(gens, start: TorusPoint) -> NotExpansive | None:
    """Descend from the worst grid point toward a common zero of the minors."""
    from scipy.optimize import minimize

    d = start.dim

    def objective(angles):
        z = tuple(complex(math.cos(2 * math.pi * a), math.sin(2 * math.pi * a))
                  for a in angles)
        return sum(abs(g.eval_complex(z)) ** 2 for g in gens)

    x0 = [float(a) for a in start.angles]
    result = minimize(objective, x0, method="Nelder-Mead",
                      options={"xatol": 1e-15, "fatol": 1e-30, "maxiter": 4000})
    angles = [a % 1.0 for a in result.x]
    # try to recognize a root-of-unity witness
    for denom_cap in (1, 2, 3, 4, 6, 8, 12, 16, 24, 36, 60, 120, 1024):
        cand = TorusPoint(tuple(Fraction(a).limit_denominator(denom_cap) for a in angles))
        if cand.common_order() > 10 ** 6:
            continue
        if all(certify.vanishes_at_rational_point(g, cand) for g in gens):
            return NotExpansive(witness=cand, residual=0.0, exact=True)
    witness = TorusPoint(tuple(angles))
    residual = max(certify.evaluate(g, witness, prec=256).abs_upper for g in gens)
    if residual < RESIDUAL_THRESHOLD:
        return NotExpansive(witness=witness, residual=residual, exact=False)
    return None
