"""Vectorized evaluation of Laurent polynomials on torus grids.

Grids are uniform N^d lattices of angles offset by the golden ratio
fraction, (j + (sqrt(5) - 1)/2) / N, so no grid point is ever a rational
angle: root-of-unity zeros of the polynomial cannot land exactly on a
sample point, which keeps log-integrands finite almost surely and makes
doubling ladders well behaved.

The bulk work is plain float64, so results carry a conservative rounding
error bound (`eval_error_bound`); callers that need certainty re-check
individual points with certified interval arithmetic.
"""
from __future__ import annotations

import numpy as np

from .laurent import LaurentPoly, TorusPoint

GOLDEN_FRACTION = (np.sqrt(5.0) - 1.0) / 2.0

EPS = 2.0 ** -52


def grid_angles(N: int) -> np.ndarray:
    """The N offset angles (in turns) used along every axis."""
    return (np.arange(N, dtype=np.float64) + GOLDEN_FRACTION) / N


def grid_point(index: tuple[int, ...], N: int) -> TorusPoint:
    """The torus point at a multi-index of the N^d grid."""
    return TorusPoint(tuple(float((i + GOLDEN_FRACTION) / N) for i in index))


def eval_on_grid(f: LaurentPoly, N: int) -> np.ndarray:
    """Values of f at every point of the N^d golden-offset grid.

    Returns a complex array of shape (N,) * d, laid out so that axis i
    corresponds to variable u_{i+1}.
    """
    d = f.dim
    angles = grid_angles(N)
    shape = (N,) * d
    acc = np.zeros(shape, dtype=np.complex128)
    # cache per-variable phase vectors by exponent
    cache: dict[tuple[int, int], np.ndarray] = {}

    def phase(axis: int, e: int) -> np.ndarray:
        key = (axis, e)
        vec = cache.get(key)
        if vec is None:
            vec = np.exp((2j * np.pi * e) * angles)
            cache[key] = vec
        return vec

    for exps, coeff in f.terms():
        term = None
        for axis, e in enumerate(exps):
            if not e:
                continue
            vec = phase(axis, e)
            expanded = vec.reshape((1,) * axis + (N,) + (1,) * (d - axis - 1))
            term = expanded if term is None else term * expanded
        if term is None:
            acc += coeff
        else:
            acc = acc + coeff * term
    return acc


def eval_error_bound(f: LaurentPoly) -> float:
    """Conservative absolute error bound for eval_on_grid values.

    Each phase factor exp(2*pi*i*e*theta) suffers argument rounding of
    order |2*pi*e| * eps plus a few ulps from exp itself; products over d
    factors and the sum over terms accumulate linearly.  The constants
    here are deliberately generous; borderline decisions must re-check
    with interval arithmetic regardless.
    """
    worst_exps = 0
    for exps, _ in f.terms():
        worst_exps = max(worst_exps, sum(abs(e) for e in exps))
    ops = 8.0 * (worst_exps + 1) + 4.0 * (f.dim + f.num_terms() + 4)
    return f.coefficient_norm() * ops * EPS


def min_max_abs(values_per_poly: list[np.ndarray]) -> float:
    """min over grid points of max over polynomials of |value|."""
    stack = np.stack([np.abs(v) for v in values_per_poly])
    return float(stack.max(axis=0).min())
