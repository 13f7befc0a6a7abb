"""Certified evaluation of Laurent polynomials at points of the torus.

Values are enclosed in axis-aligned complex boxes built from mpmath's
interval arithmetic, so every reported enclosure is mathematically
guaranteed to contain the true value.  Rational angles additionally get an
exact zero test through reduction modulo cyclotomic polynomials.

mpmath's interval context carries global precision, so all interval work
happens under a module lock with the precision saved and restored.
"""
from __future__ import annotations

import threading
from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction

from mpmath import iv, mpf

from . import unipoly
from .laurent import LaurentPoly, TorusPoint

_IV_LOCK = threading.RLock()

# float32-ish safety factors: float(mpf) rounds to nearest, so certified
# float bounds are nudged outward by a factor far larger than that error
_DOWN = 1.0 - 2.0 ** -40
_UP = 1.0 + 2.0 ** -40
_TINY = 1e-320


def _float_down(x) -> float:
    """A float guaranteed <= the mpf/interval-endpoint x (for x >= 0)."""
    f = float(mpf(x))
    if f <= 0.0:
        return 0.0
    return f * _DOWN


def _float_up(x) -> float:
    """A float guaranteed >= the mpf/interval-endpoint x (for x >= 0)."""
    f = float(mpf(x))
    if f < 0.0:
        return 0.0
    return f * _UP + _TINY


@contextmanager
def iv_precision(prec: int):
    """Serialize access to mpmath's interval context at the given precision."""
    with _IV_LOCK:
        saved = iv.prec
        iv.prec = prec
        try:
            yield
        finally:
            iv.prec = saved


@contextmanager
def work_precision(prec: int):
    """Set both the plain and the interval mpmath contexts, under the lock."""
    from mpmath import mp
    with _IV_LOCK:
        saved_mp, saved_iv = mp.prec, iv.prec
        mp.prec = prec
        iv.prec = prec
        try:
            yield
        finally:
            mp.prec = saved_mp
            iv.prec = saved_iv


def iv_fraction(q: Fraction):
    """The rational q as a certified interval."""
    return iv.mpf(q.numerator) / iv.mpf(q.denominator)


def endpoints_as_fractions(x) -> tuple[Fraction, Fraction]:
    """Exact rational endpoints of an interval scalar.

    Interval scalars compare against other numbers by converting them at the
    ambient precision first, so a comparison with a wide integer can come
    back indeterminate (None).  Binary endpoints are exact rationals; pulling
    them out makes any subsequent test exact regardless of precision.
    """
    from mpmath import libmp

    def as_fraction(raw) -> Fraction:
        p, q = libmp.to_rational(raw)
        # the backend may hand back gmpy2 integers; Fraction stores them
        # as-is, and mixed comparisons against them can blow up later
        return Fraction(int(p), int(q))

    raw_a, raw_b = x._mpi_
    return as_fraction(raw_a), as_fraction(raw_b)


class ComplexBox:
    """Rectangle [re] + i[im] with interval real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re, im):
        self.re = re
        self.im = im

    @classmethod
    def exact_int(cls, re: int = 0, im: int = 0) -> "ComplexBox":
        return cls(iv.mpf(re), iv.mpf(im))

    @classmethod
    def from_mpf_pair(cls, re, im) -> "ComplexBox":
        return cls(iv.mpf(re), iv.mpf(im))

    def __add__(self, other: "ComplexBox") -> "ComplexBox":
        return ComplexBox(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "ComplexBox") -> "ComplexBox":
        return ComplexBox(self.re - other.re, self.im - other.im)

    def __mul__(self, other: "ComplexBox") -> "ComplexBox":
        return ComplexBox(self.re * other.re - self.im * other.im,
                          self.re * other.im + self.im * other.re)

    def conj(self) -> "ComplexBox":
        return ComplexBox(self.re, -self.im)

    def scale(self, c: int) -> "ComplexBox":
        k = iv.mpf(c)
        return ComplexBox(self.re * k, self.im * k)

    def abs_squared(self):
        # ** has true square semantics on intervals straddling zero; * does not
        return self.re ** 2 + self.im ** 2

    def contains_zero(self) -> bool:
        return (mpf(self.re.a) <= 0 <= mpf(self.re.b)
                and mpf(self.im.a) <= 0 <= mpf(self.im.b))

    def midpoint(self) -> complex:
        return complex(float(mpf(self.re.mid)), float(mpf(self.im.mid)))

    def abs_interval(self):
        """Certified interval containing |z| for every z in the box.

        Endpoints are kept at the interval context's working precision; a
        round trip through the plain-mpf context would round to nearest and
        could push the lower bound above the upper one on a point-like box.
        """
        hi = iv.sqrt(self.abs_squared()).b
        re_a, re_b = self.re.a, self.re.b
        im_a, im_b = self.im.a, self.im.b
        near_re = re_a if re_a > 0 else (re_b if re_b < 0 else None)
        near_im = im_a if im_a > 0 else (im_b if im_b < 0 else None)
        lo_sq = iv.mpf(0)
        if near_re is not None:
            lo_sq += iv.mpf([near_re, near_re]) ** 2
        if near_im is not None:
            lo_sq += iv.mpf([near_im, near_im]) ** 2
        lo = iv.sqrt(lo_sq).a
        return iv.mpf([lo, hi])

    def abs_bounds(self) -> tuple[float, float]:
        """(lower, upper) float bounds for |z| over the box, rounded outward."""
        ai = self.abs_interval()
        return _float_down(ai.a), _float_up(ai.b)

    def radius(self) -> float:
        """Float upper bound for the distance from the midpoint to the box corners."""
        r = iv.sqrt((self.re.delta / 2) ** 2 + (self.im.delta / 2) ** 2)
        mid = self.midpoint()
        return _float_up(r.b) + (abs(mid.real) + abs(mid.imag)) * 2.0 ** -50


@dataclass(frozen=True)
class Enclosure:
    """Published result of a certified evaluation: |true - mid| <= rad and
    abs_lower <= |true| <= abs_upper are mathematically guaranteed."""

    mid: complex
    rad: float
    abs_lower: float
    abs_upper: float
    precision: int

    def contains_zero(self) -> bool:
        return self.abs_lower <= 0.0


def unit_root_box(angle: Fraction | float) -> ComplexBox:
    """Enclosure of exp(2 pi i * angle), the angle given in turns.

    Must run inside iv_precision.  Float angles convert exactly to rationals,
    so the reduction modulo one full turn is exact in every case.
    """
    a = (angle if isinstance(angle, Fraction) else Fraction(angle)) % 1
    theta = 2 * iv.pi * iv_fraction(a)
    return ComplexBox(iv.cos(theta), iv.sin(theta))


def eval_box(f: LaurentPoly, point: TorusPoint) -> ComplexBox:
    """Certified enclosure of f at the torus point.

    Must run inside iv_precision; external callers normally use `evaluate`.
    """
    coords = [unit_root_box(a) for a in point.angles]
    pow_cache: list[dict[int, ComplexBox]] = [dict() for _ in range(f.dim)]

    def coord_power(i: int, e: int) -> ComplexBox:
        cache = pow_cache[i]
        if e in cache:
            return cache[e]
        if e == 0:
            box = ComplexBox.exact_int(1)
        elif e < 0:
            box = coord_power(i, -e).conj()
        elif e == 1:
            box = coords[i]
        else:
            half = coord_power(i, e // 2)
            box = half * half
            if e & 1:
                box = box * coords[i]
        cache[e] = box
        return box

    total = ComplexBox.exact_int(0)
    for exps, coeff in f.terms():
        term = None
        for i, e in enumerate(exps):
            if e:
                p = coord_power(i, e)
                term = p if term is None else term * p
        if term is None:
            term = ComplexBox.exact_int(1)
        total = total + term.scale(coeff)
    return total


def evaluate(f: LaurentPoly, point: TorusPoint, prec: int = 64) -> Enclosure:
    """Evaluate f at a torus point with a certified complex enclosure."""
    if point.dim != f.dim:
        raise ValueError("point dimension does not match polynomial")
    with iv_precision(prec):
        box = eval_box(f, point)
        lo, hi = box.abs_bounds()
        return Enclosure(mid=box.midpoint(), rad=box.radius(),
                         abs_lower=lo, abs_upper=hi, precision=prec)


def vanishes_at_rational_point(f: LaurentPoly, point: TorusPoint) -> bool:
    """Exact test of f(z) = 0 at a rational (root of unity) torus point.

    With angles a_i = n_i / q over a common denominator q, the value is
    p(zeta_q) for p(x) = sum_m c_m x^(sum_i m_i n_i mod q), which vanishes
    iff the cyclotomic polynomial of order q divides p.
    """
    if not point.is_rational():
        raise ValueError("exact vanishing test needs rational angles")
    if point.dim != f.dim:
        raise ValueError("point dimension does not match polynomial")
    q = point.common_order()
    nums = [int(a * q) for a in point.exact_angles()]
    coeffs = [0] * q
    for exps, c in f.terms():
        k = sum(e * n for e, n in zip(exps, nums)) % q
        coeffs[k] += c
    rem = unipoly.mod_monic(unipoly.trim(coeffs), list(unipoly.cyclotomic(q)))
    return not rem


MAX_EXACT_ORDER = 10 ** 6


def abs_value_lower_bound(f: LaurentPoly, point: TorusPoint, max_prec: int = 4096) -> float:
    """Certified positive lower bound for |f| at the point, escalating
    precision; 0.0 when the value is exactly zero or remains undecided.

    Rational points of moderate order are settled exactly first, so
    escalation terminates on root-of-unity zeros.
    """
    if (point.is_rational() and point.common_order() <= MAX_EXACT_ORDER
            and vanishes_at_rational_point(f, point)):
        return 0.0
    prec = 64
    while prec <= max_prec:
        enc = evaluate(f, point, prec)
        if enc.abs_lower > 0:
            return enc.abs_lower
        prec *= 2
    return 0.0
