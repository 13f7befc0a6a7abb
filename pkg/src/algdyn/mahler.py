"""Mahler measures of integer Laurent polynomials, and entropy.

The (logarithmic) Mahler measure m(f) is the mean of log|f| over the
torus.  For the dynamical systems presented by a matrix A, the entropy
equals m(gcd of the maximal minors of A), so this module carries the
analytic core of the package.

Three computation routes, chosen by dispatch:

* exact: units have measure 0; a nonzero constant c has measure log|c|;
  any product of a unit, an integer and cyclotomic polynomials is settled
  exactly by stripping cyclotomic factors.
* one variable: Jensen's formula m(f) = log|lc| + sum log max(1, |root|),
  with roots from a numerical solver and every root enclosed in a
  certified disk through its Weierstrass correction, so the reported
  error bound is mathematically guaranteed.
* several variables: trapezoidal quadrature of log|f| on golden-offset
  doubling grids under an evaluation budget; the reported error is the
  last doubling delta, a heuristic (not certified) estimate.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath
import numpy as np
from mpmath import iv, mp, mpf

from . import certify, torusgrid, unipoly
from .certify import ComplexBox
from .gcdring import gcd_list
from .laurent import LaurentPoly, TorusPoint, exact_div
from .presentation import PresentationMatrix, minors

LOG_1_1 = math.log(1.1)

METHOD_EXACT_ZERO = "ExactZero"
METHOD_EXACT_LOG_INTEGER = "ExactLogInteger"
METHOD_EXACT_INFINITE = "ExactInfinite"
METHOD_JENSEN = "JensenRoots"
METHOD_QUADRATURE = "Quadrature"

YES = "Yes"
NO = "No"
UNDECIDED = "Undecided"

DEFAULT_BUDGET = 10 ** 7


@dataclass(frozen=True)
class MahlerValue:
    """A Mahler measure with its provenance.

    value is always >= 0 (or +inf for the zero polynomial); error is a
    certified bound for the Exact* and JensenRoots methods and a heuristic
    doubling delta for Quadrature.
    """

    value: float
    method: str
    error: float = 0.0
    note: str | None = None

    def is_exact(self) -> bool:
        return self.method in (METHOD_EXACT_ZERO, METHOD_EXACT_LOG_INTEGER,
                               METHOD_EXACT_INFINITE)


class PrecisionExhausted(RuntimeError):
    """The certified root solver hit its precision ceiling."""


# -- certified Jensen route --------------------------------------------------


def _weierstrass_disks(coeffs: list[int], roots) -> list[tuple] | None:
    """Certified inclusion disks around approximate roots.

    For a squarefree p of degree n with approximations z_1..z_n, every true
    root lies in the union of the disks D(z_i, n * |W_i|) where
    W_i = p(z_i) / (lc * prod_{j != i} (z_i - z_j)), and a union component
    made of k disks holds exactly k roots.  With pairwise disjoint disks
    each disk holds exactly one root.  Returns [(z_i, radius_i)] with float
    upper-bound radii, or None when a denominator cannot be bounded away
    from zero (coincident approximations).

    Must run inside certify.work_precision.
    """
    n = len(coeffs) - 1
    boxes = [ComplexBox.from_mpf_pair(z.real, z.imag) for z in roots]
    coeff_boxes = [ComplexBox(iv.mpf(c), iv.mpf(0)) for c in coeffs]
    lc = coeff_boxes[-1]
    disks = []
    for i, zi in enumerate(boxes):
        # Horner evaluation of p at z_i
        acc = coeff_boxes[-1]
        for c in reversed(coeff_boxes[:-1]):
            acc = acc * zi + c
        denom = lc
        for j, zj in enumerate(boxes):
            if j != i:
                denom = denom * (zi - zj)
        dlo, _ = denom.abs_bounds()
        if dlo <= 0.0:
            return None
        _, num_hi = acc.abs_bounds()
        radius = n * num_hi / dlo
        disks.append((roots[i], radius))
    return disks


def _disks_disjoint(disks) -> bool:
    for i in range(len(disks)):
        zi, ri = disks[i]
        for j in range(i + 1, len(disks)):
            zj, rj = disks[j]
            sep = ComplexBox.from_mpf_pair(zi.real - zj.real, zi.imag - zj.imag)
            lo, _ = sep.abs_bounds()
            if lo <= ri + rj:
                return False
    return True


def _root_sum_certified(coeffs: list[int], tol: float, max_prec: int = 8192):
    """(sum_i log max(1, |root_i|), certified error) for squarefree coeffs."""
    n = len(coeffs) - 1
    if n < 1:
        return 0.0, 0.0
    rev = [mpmath.mpf(c) for c in reversed(coeffs)]
    prec = 128
    while prec <= max_prec:
        with certify.work_precision(prec):
            try:
                roots = mpmath.polyroots(rev, maxsteps=200, extraprec=prec)
            except mpmath.libmp.NoConvergence:
                prec *= 2
                continue
            disks = _weierstrass_disks(coeffs, roots)
            if disks is None or not _disks_disjoint(disks):
                prec *= 2
                continue
            total = mpf(0)
            total_err = 0.0
            pad = 2.0 ** (10 - prec)       # covers mpf rounding of the bounds
            for z, r in disks:
                az = mpmath.sqrt(z.real ** 2 + z.imag ** 2)
                lo = az - mpf(r)
                hi = az + mpf(r)
                v_lo = mpmath.log(lo) if lo > 1 else mpf(0)
                v_hi = mpmath.log(hi) if hi > 1 else mpf(0)
                total_err += float(v_hi - v_lo) * (1 + 2.0 ** -40) + pad
                total += mpmath.log(az) if az > 1 else mpf(0)
            if total_err <= tol:
                return float(total), total_err
        prec *= 2
    raise PrecisionExhausted(
        f"could not certify roots of degree-{n} polynomial within precision {max_prec}")


def mahler_univariate(f: LaurentPoly, tol: float = 1e-9) -> MahlerValue:
    """Mahler measure of a Laurent polynomial in (at most) one variable.

    Exact for constants and for products of cyclotomics, monomials and
    integers; otherwise Jensen's formula with a certified error <= tol.
    """
    if f.is_zero():
        return MahlerValue(math.inf, METHOD_EXACT_INFINITE)
    if len(f.variables()) > 1:
        raise ValueError("mahler_univariate needs a polynomial in one variable")
    g = f.unit_normalize()
    if g.is_constant():
        c = abs(g.constant_value())
        if c == 1:
            return MahlerValue(0.0, METHOD_EXACT_ZERO)
        return MahlerValue(math.log(c), METHOD_EXACT_LOG_INTEGER)
    _, _, coeffs = g.dense_univariate()
    content = unipoly.content(coeffs)
    prim = [c // content for c in coeffs]
    rest, _removed = unipoly.strip_cyclotomic_factors(prim)
    if unipoly.degree(rest) == 0:
        # f was content * monomial * product of cyclotomics
        c = content * abs(rest[0])
        if c == 1:
            return MahlerValue(0.0, METHOD_EXACT_ZERO)
        return MahlerValue(math.log(c), METHOD_EXACT_LOG_INTEGER)
    # Jensen: m(f) = log(content) + sum_k mult_k * m(factor_k)
    factors = unipoly.yun_squarefree(prim)
    weights = [(fac, mult, mult * unipoly.degree(fac)) for fac, mult in factors]
    total_weight = sum(w for _, _, w in weights) or 1
    value = math.log(content) if content > 1 else 0.0
    error = 0.0
    for fac, mult, w in weights:
        share = tol * w / total_weight
        root_sum, err = _root_sum_certified(fac, share / max(mult, 1))
        value += mult * (math.log(abs(fac[-1])) + root_sum)
        error += mult * err
    return MahlerValue(max(value, 0.0), METHOD_JENSEN, error)


# -- quadrature route --------------------------------------------------------


def quadrature_mean(f: LaurentPoly, N: int, zero_prec: int = 512) -> tuple[float, int]:
    """Mean of log|f| over the N^d golden-offset grid.

    Samples indistinguishable from zero at float precision are re-checked
    with certified interval evaluation; samples still containing zero are
    discarded.  Returns (mean, number of discarded samples).
    """
    values = np.abs(torusgrid.eval_on_grid(f, N))
    bound = max(torusgrid.eval_error_bound(f) * 8.0, 1e-290)
    mask = values <= bound
    discarded = 0
    certified_logs = []
    if mask.any():
        for index in np.argwhere(mask):
            point = torusgrid.grid_point(tuple(int(i) for i in index), N)
            lo = certify.abs_value_lower_bound(f, point, max_prec=zero_prec)
            if lo > 0.0:
                enc = certify.evaluate(f, point, prec=zero_prec)
                certified_logs.append(math.log((enc.abs_lower + enc.abs_upper) / 2.0))
            else:
                discarded += 1
    kept = np.log(values[~mask])
    count = kept.size + len(certified_logs)
    if count == 0:
        raise ValueError("every grid sample of log|f| was discarded")
    mean = (float(kept.sum()) + sum(certified_logs)) / count
    return mean, discarded


def mahler_quadrature(f: LaurentPoly, tol: float = 1e-3,
                      budget: int = DEFAULT_BUDGET, start: int = 64) -> MahlerValue:
    """Mahler measure by quadrature on doubling grids.

    Stops when two successive grids agree within tol or when the next grid
    would exceed the evaluation budget; the reported error is the last
    doubling delta (heuristic).  Budget exhaustion is flagged in the note.
    """
    if f.is_zero():
        return MahlerValue(math.inf, METHOD_EXACT_INFINITE)
    d = f.dim
    N = start
    while N > 2 and N ** d > budget:
        N //= 2
    if N ** d > budget:
        raise ValueError(f"evaluation budget {budget} cannot afford even one {N}^{d} grid")
    spent = 0
    prev = None
    est = None
    delta = math.inf
    discarded_total = 0
    while spent + N ** d <= budget:
        est, disc = quadrature_mean(f, N)
        discarded_total += disc
        spent += N ** d
        if prev is not None:
            delta = abs(est - prev)
            if delta < tol:
                return _quad_value(est, delta, discarded_total, None)
        prev = est
        N *= 2
    note = f"budget {budget} exhausted before convergence"
    # with a single grid there is no doubling delta; the estimate could be
    # off by its own magnitude, so say so rather than claim tol
    error = delta if math.isfinite(delta) else max(abs(est), tol)
    return _quad_value(est, error, discarded_total, note)


def _quad_value(est: float, delta: float, discarded: int, note: str | None) -> MahlerValue:
    extra = f"{discarded} near-zero samples discarded" if discarded else None
    if note and extra:
        note = f"{note}; {extra}"
    elif extra:
        note = extra
    return MahlerValue(max(est, 0.0), METHOD_QUADRATURE, delta, note)


# -- dispatch and entropy -----------------------------------------------------


def mahler(f: LaurentPoly, tol: float = 1e-6, budget: int = DEFAULT_BUDGET) -> MahlerValue:
    """Mahler measure by the cheapest adequate route.

    Units are exact zeros; constants are exact logs; one-variable input
    goes through certified Jensen evaluation; anything else is quadrature.
    """
    if f.is_zero():
        return MahlerValue(math.inf, METHOD_EXACT_INFINITE)
    if f.is_unit():
        return MahlerValue(0.0, METHOD_EXACT_ZERO)
    if f.is_constant():
        c = abs(f.constant_value())
        return MahlerValue(math.log(c), METHOD_EXACT_LOG_INTEGER) if c > 1 \
            else MahlerValue(0.0, METHOD_EXACT_ZERO)
    if len(f.variables()) <= 1:
        return mahler_univariate(f, tol=min(tol, 1e-9))
    return mahler_quadrature(f, tol=max(tol, 1e-3), budget=budget)


def entropy(A: PresentationMatrix, tol: float = 1e-6,
            budget: int = DEFAULT_BUDGET) -> MahlerValue:
    """Topological entropy of the action presented by A: the Mahler measure
    of the gcd of the k x k minors.  Raises FreeSubmoduleError when the
    matrix does not have full row rank (infinite entropy)."""
    ideal = minors(A)
    return mahler(ideal.gcd, tol=tol, budget=budget)


# -- zero measure test ---------------------------------------------------------


def _generalized_cyclotomics(d: int, bound: int):
    """Candidate measure-zero factors Phi_j(u^m) for j <= bound and primitive
    m in the half space with max-norm <= bound."""
    from .intlinalg import half_space_vectors
    out = []
    for m in half_space_vectors(d, bound, primitive_only=True):
        for j in range(1, bound + 1):
            cyc = list(unipoly.cyclotomic(j))
            uni = LaurentPoly(1, {(e,): c for e, c in enumerate(cyc) if c})
            out.append(uni.substitute_monomials([m], d))
    return out


def zero_mahler_test(f: LaurentPoly, bound: int = 8,
                     budget: int = DEFAULT_BUDGET) -> str:
    """Decide m(f) == 0 within a bounded search: "Yes", "No" or "Undecided".

    Measure zero for nonzero f happens exactly when f is a unit times a
    product of cyclotomic polynomials evaluated at monomials.  The test
    strips such factors for cyclotomic index and exponent norm up to the
    bound; if a unit remains the answer is an exact Yes.  Otherwise the
    measure of the cofactor is estimated, and an estimate certifiably
    above log(1.1) answers No; anything else is Undecided.
    """
    if f.is_zero():
        return NO
    g = f.unit_normalize()
    if g.is_unit():
        return YES
    if g.content() > 1:
        # m(f) >= log(content) >= log 2 > log 1.1
        return NO
    candidates = _generalized_cyclotomics(f.dim, bound)
    progress = True
    while progress and not g.is_unit():
        progress = False
        for cand in candidates:
            q = exact_div(g, cand)
            while q is not None:
                g = q
                progress = True
                q = exact_div(g, cand)
    g = g.unit_normalize()
    if g.is_unit():
        return YES
    est = mahler(g, tol=1e-9, budget=budget)
    if est.value - est.error > LOG_1_1:
        return NO
    return UNDECIDED
