"""Exact sparse arithmetic for Laurent polynomials over the integers.

The ring is Z[u1^{+-1}, ..., ud^{+-1}].  A polynomial is stored as a map
from exponent vectors (tuples of d signed integers) to nonzero integer
coefficients.  All arithmetic is exact; coefficients are arbitrary
precision.  Instances are immutable and hashable.

Terms are ordered by graded lexicographic order, descending, which fixes
a canonical form for serialization and for deterministic iteration.
Units of the ring are exactly the terms +-u^m; `unit_normalize` picks the
canonical associate of a polynomial under multiplication by units.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

Exponents = tuple[int, ...]

TWO_PI = 2.0 * math.pi


def _term_sort_key(item: tuple[Exponents, int]):
    exps, _ = item
    return (sum(exps), exps)


class LaurentPoly:
    """A Laurent polynomial in `dim` variables with integer coefficients."""

    __slots__ = ("dim", "_terms", "_key")

    def __init__(self, dim: int, terms: Mapping[Exponents, int] | Iterable[tuple[Exponents, int]] = ()):
        if dim < 0:
            raise ValueError("dimension must be nonnegative")
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Exponents, int] = {}
        for exps, coeff in items:
            exps = tuple(exps)
            if len(exps) != dim:
                raise ValueError(f"exponent vector {exps} does not have length {dim}")
            if not all(isinstance(e, int) for e in exps):
                raise ValueError(f"exponents must be integers, got {exps}")
            coeff = int(coeff)
            if coeff:
                c = acc.get(exps, 0) + coeff
                if c:
                    acc[exps] = c
                elif exps in acc:
                    del acc[exps]
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "_terms", acc)
        object.__setattr__(self, "_key", None)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    # -- constructors ------------------------------------------------

    @classmethod
    def zero(cls, dim: int) -> "LaurentPoly":
        return cls(dim)

    @classmethod
    def one(cls, dim: int) -> "LaurentPoly":
        return cls(dim, {(0,) * dim: 1})

    @classmethod
    def constant(cls, dim: int, c: int) -> "LaurentPoly":
        return cls(dim, {(0,) * dim: int(c)})

    @classmethod
    def monomial(cls, dim: int, exps: Exponents, coeff: int = 1) -> "LaurentPoly":
        return cls(dim, {tuple(exps): coeff})

    @classmethod
    def variable(cls, dim: int, index: int, power: int = 1) -> "LaurentPoly":
        """The monomial u_{index+1}^power (index is zero based)."""
        if not 0 <= index < dim:
            raise ValueError(f"variable index {index} out of range for dimension {dim}")
        exps = [0] * dim
        exps[index] = power
        return cls(dim, {tuple(exps): 1})

    # -- inspection --------------------------------------------------

    def sorted_terms(self) -> tuple[tuple[Exponents, int], ...]:
        """Terms in canonical order: graded lexicographic, descending."""
        key = self._key
        if key is None:
            key = tuple(sorted(self._terms.items(), key=_term_sort_key, reverse=True))
            object.__setattr__(self, "_key", key)
        return key

    def terms(self) -> Iterator[tuple[Exponents, int]]:
        return iter(self.sorted_terms())

    def coefficient(self, exps: Exponents) -> int:
        return self._terms.get(tuple(exps), 0)

    def num_terms(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_constant(self) -> bool:
        if not self._terms:
            return True
        return set(self._terms) == {(0,) * self.dim}

    def constant_value(self) -> int:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self._terms.get((0,) * self.dim, 0)

    def is_unit(self) -> bool:
        """Units of the Laurent ring are the single terms with coefficient +-1."""
        if len(self._terms) != 1:
            return False
        (coeff,) = self._terms.values()
        return coeff in (1, -1)

    def is_one(self) -> bool:
        return self._terms == {(0,) * self.dim: 1}

    def leading_term(self) -> tuple[Exponents, int]:
        """Greatest term in graded lex order.  Errors on the zero polynomial."""
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        return self.sorted_terms()[0]

    def variables(self) -> tuple[int, ...]:
        """Indices of the variables that actually occur."""
        used = [False] * self.dim
        for exps in self._terms:
            for i, e in enumerate(exps):
                if e:
                    used[i] = True
        return tuple(i for i, u in enumerate(used) if u)

    def exponent_range(self, index: int) -> tuple[int, int]:
        """(min, max) exponent of variable `index` over the support."""
        if not self._terms:
            raise ValueError("zero polynomial has empty support")
        vals = [exps[index] for exps in self._terms]
        return min(vals), max(vals)

    def total_degree_span(self) -> int:
        if not self._terms:
            return 0
        degs = [sum(e) for e in self._terms]
        return max(degs) - min(degs)

    def coefficients(self) -> tuple[int, ...]:
        return tuple(c for _, c in self.sorted_terms())

    # -- equality / hashing / repr -----------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self.is_constant() and self.constant_value() == other
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.dim == other.dim and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.dim, self.sorted_terms()))

    def __str__(self) -> str:
        return serialize_terms(self.sorted_terms())

    def __repr__(self) -> str:
        return f"LaurentPoly({self.dim}, {str(self)!r})"

    # -- ring operations ---------------------------------------------

    def _coerce(self, other) -> "LaurentPoly | None":
        if isinstance(other, LaurentPoly):
            if other.dim != self.dim:
                raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")
            return other
        if isinstance(other, int):
            return LaurentPoly.constant(self.dim, other)
        return None

    def __add__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        acc = dict(self._terms)
        for exps, coeff in other._terms.items():
            c = acc.get(exps, 0) + coeff
            if c:
                acc[exps] = c
            elif exps in acc:
                del acc[exps]
        return LaurentPoly(self.dim, acc)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.dim, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not self._terms or not other._terms:
            return LaurentPoly.zero(self.dim)
        a, b = self._terms, other._terms
        if len(a) < len(b):
            a, b = b, a
        acc: dict[Exponents, int] = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                exps = tuple(x + y for x, y in zip(e1, e2))
                c = acc.get(exps, 0) + c1 * c2
                if c:
                    acc[exps] = c
                elif exps in acc:
                    del acc[exps]
        return LaurentPoly(self.dim, acc)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            if not self.is_unit():
                raise ValueError("negative powers require a unit")
            ((exps, coeff),) = self._terms.items()
            inv = LaurentPoly(self.dim, {tuple(-e for e in exps): coeff})
            return inv ** (-n)
        result = LaurentPoly.one(self.dim)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, exps: Exponents) -> "LaurentPoly":
        """Multiply by the monomial u^exps."""
        exps = tuple(exps)
        if len(exps) != self.dim:
            raise ValueError("shift vector has wrong length")
        return LaurentPoly(self.dim, {tuple(a + b for a, b in zip(e, exps)): c
                                      for e, c in self._terms.items()})

    # -- normal forms -------------------------------------------------

    def monomial_shift(self) -> Exponents:
        """Per-variable minimum exponent over the support (zero polynomial: all zeros)."""
        if not self._terms:
            return (0,) * self.dim
        its = iter(self._terms)
        first = list(next(its))
        for exps in its:
            for i, e in enumerate(exps):
                if e < first[i]:
                    first[i] = e
        return tuple(first)

    def unit_normalize(self) -> "LaurentPoly":
        """Canonical associate: shift so every variable has minimum exponent 0,
        then flip the sign so the coefficient of the lexicographically greatest
        exponent vector is positive.  The zero polynomial maps to itself."""
        if not self._terms:
            return self
        shift = self.monomial_shift()
        acc = {tuple(a - b for a, b in zip(e, shift)): c for e, c in self._terms.items()}
        top = max(acc)
        if acc[top] < 0:
            acc = {e: -c for e, c in acc.items()}
        return LaurentPoly(self.dim, acc)

    def content(self) -> int:
        """gcd of the absolute coefficient values; 0 for the zero polynomial."""
        g = 0
        for c in self._terms.values():
            g = math.gcd(g, c)
            if g == 1:
                return 1
        return g

    def scale_down_exact(self, c: int) -> "LaurentPoly":
        """Divide every coefficient by the integer c; c must divide the content."""
        if c == 0:
            raise ZeroDivisionError("division by zero")
        acc = {}
        for e, coeff in self._terms.items():
            q, r = divmod(coeff, c)
            if r:
                raise ValueError(f"{c} does not divide coefficient {coeff}")
            acc[e] = q
        return LaurentPoly(self.dim, acc)

    # -- structure helpers --------------------------------------------

    def single_variable(self) -> int | None:
        """Index of the unique variable occurring, or None unless exactly one occurs."""
        used = self.variables()
        return used[0] if len(used) == 1 else None

    def dense_univariate(self, index: int | None = None) -> tuple[int, Exponents, list[int]]:
        """View a polynomial supported on one variable as a dense coefficient list.

        Returns (index, shift, coeffs) with self = u^shift * sum coeffs[j] * u_index^j
        and coeffs[0] != 0.  Constants report index 0 and an empty or [c] list.
        """
        used = self.variables()
        if len(used) > 1:
            raise ValueError("polynomial uses more than one variable")
        if index is None:
            index = used[0] if used else 0
        shift = self.monomial_shift()
        lo = shift[index] if self._terms else 0
        hi = self.exponent_range(index)[1] if self._terms else 0
        coeffs = [0] * (hi - lo + 1)
        for exps, c in self._terms.items():
            coeffs[exps[index] - lo] = c
        return index, shift, coeffs

    def substitute_monomials(self, targets: Iterable[Exponents], out_dim: int) -> "LaurentPoly":
        """Ring map u_i -> u^{targets[i]} into a Laurent ring of dimension out_dim.

        Each target is an exponent vector of length out_dim.  The number of
        targets must equal the ambient dimension of self.
        """
        targets = [tuple(t) for t in targets]
        if len(targets) != self.dim:
            raise ValueError(f"expected {self.dim} target vectors, got {len(targets)}")
        for t in targets:
            if len(t) != out_dim:
                raise ValueError(f"target {t} does not have length {out_dim}")
        acc: dict[Exponents, int] = {}
        for exps, coeff in self._terms.items():
            new = [0] * out_dim
            for e, t in zip(exps, targets):
                if e:
                    for j, tj in enumerate(t):
                        new[j] += e * tj
            key = tuple(new)
            c = acc.get(key, 0) + coeff
            if c:
                acc[key] = c
            elif key in acc:
                del acc[key]
        return LaurentPoly(out_dim, acc)

    # -- analytic helpers ---------------------------------------------

    def lipschitz_bound(self) -> float:
        """A Lipschitz constant on the torus with respect to the metric
        rho(z, w) = max_i (angular distance of coordinate i, in turns):
        |f(z) - f(w)| <= L * rho(z, w) with L = 2*pi*sum |c_m| * ||m||_1."""
        total = 0
        for exps, coeff in self._terms.items():
            total += abs(coeff) * sum(abs(e) for e in exps)
        return TWO_PI * float(total)

    def coefficient_norm(self) -> int:
        """Sum of absolute coefficient values (an upper bound for |f| on the torus)."""
        return sum(abs(c) for c in self._terms.values())

    def eval_complex(self, z: tuple[complex, ...]) -> complex:
        """Plain floating point evaluation; no error control."""
        if len(z) != self.dim:
            raise ValueError("point has wrong dimension")
        total = 0j
        for exps, coeff in self._terms.items():
            v = complex(coeff)
            for zi, e in zip(z, exps):
                if e:
                    v *= zi ** e
            total += v
        return total


# -- exact division ----------------------------------------------------


def exact_div(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly | None:
    """Exact quotient f/g in the Laurent ring, or None when g does not divide f.

    Division by the zero polynomial raises; the result q always satisfies
    q * g == f exactly.
    """
    if g.dim != f.dim:
        raise ValueError("dimension mismatch")
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if f.is_zero():
        return f
    # Strip monomial shifts so both operands are ordinary polynomials with
    # per-variable minimum exponent 0.  In a domain the minimum exponent of a
    # product is the sum of the minimum exponents, so the quotient, when it
    # exists, is u^(fshift - gshift) times an ordinary polynomial quotient.
    fshift = f.monomial_shift()
    gshift = g.monomial_shift()
    fn = f.shift(tuple(-s for s in fshift))
    gn = g.shift(tuple(-s for s in gshift))
    glead_e, glead_c = gn.leading_term()
    q_terms: dict[Exponents, int] = {}
    rem = fn
    while not rem.is_zero():
        rlead_e, rlead_c = rem.leading_term()
        qc, qr = divmod(rlead_c, glead_c)
        if qr:
            return None
        qe = tuple(a - b for a, b in zip(rlead_e, glead_e))
        if any(e < 0 for e in qe):
            return None
        q_terms[qe] = qc
        rem = rem - LaurentPoly.monomial(f.dim, qe, qc) * gn
    q = LaurentPoly(f.dim, q_terms)
    return q.shift(tuple(a - b for a, b in zip(fshift, gshift)))


def divides(g: LaurentPoly, f: LaurentPoly) -> bool:
    if g.is_zero():
        return f.is_zero()
    return exact_div(f, g) is not None


# -- canonical text form -------------------------------------------------


def _monomial_str(exps: Exponents) -> str:
    parts = []
    for i, e in enumerate(exps):
        if e == 0:
            continue
        if e == 1:
            parts.append(f"u{i + 1}")
        else:
            parts.append(f"u{i + 1}^{e}")
    return "*".join(parts)


def serialize_terms(items: tuple[tuple[Exponents, int], ...]) -> str:
    """Canonical text form: graded lex descending, explicit '*', '^' powers."""
    if not items:
        return "0"
    out = []
    for exps, coeff in items:
        mono = _monomial_str(exps)
        mag = abs(coeff)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not out:
            out.append(body if coeff > 0 else f"-{body}")
        else:
            out.append(f" + {body}" if coeff > 0 else f" - {body}")
    return "".join(out)


# -- points on the torus --------------------------------------------------


def _normalize_angle(a) -> Fraction | float:
    if isinstance(a, Fraction):
        return a % 1
    if isinstance(a, int):
        return Fraction(a) % 1
    if isinstance(a, float):
        return a % 1.0
    raise TypeError(f"angle must be Fraction, int or float, not {type(a).__name__}")


@dataclass(frozen=True)
class TorusPoint:
    """A point of the d-torus recorded by its angles, in turns (full circles).

    Angles are kept modulo 1.  A Fraction angle is an exact statement that the
    coordinate is the corresponding root of unity; float angles are numerical.
    """

    angles: tuple[Fraction | float, ...]

    def __post_init__(self):
        object.__setattr__(self, "angles", tuple(_normalize_angle(a) for a in self.angles))

    @property
    def dim(self) -> int:
        return len(self.angles)

    def is_rational(self) -> bool:
        return all(isinstance(a, Fraction) for a in self.angles)

    def exact_angles(self) -> tuple[Fraction, ...]:
        """Angles as exact rationals.  Floats convert exactly (binary rationals)."""
        return tuple(a if isinstance(a, Fraction) else Fraction(a) % 1 for a in self.angles)

    def common_order(self) -> int:
        """For rational points: the least q with q * angle integral for all angles."""
        if not self.is_rational():
            raise ValueError("point is not a rational (root of unity) point")
        q = 1
        for a in self.angles:
            q = q * a.denominator // math.gcd(q, a.denominator)
        return q

    def to_complex(self) -> tuple[complex, ...]:
        return tuple(complex(math.cos(TWO_PI * float(a)), math.sin(TWO_PI * float(a)))
                     for a in self.angles)

    def __str__(self) -> str:
        return "(" + ", ".join(str(a) for a in self.angles) + ")"
