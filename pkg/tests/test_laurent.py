"""Laurent polynomial ring: arithmetic axioms, normal forms, evaluation."""

from __future__ import annotations

import cmath
import math
import random
from fractions import Fraction

import pytest

from algdyn.laurent import LaurentPoly, TorusPoint, divides, exact_div

from util import random_poly


def P(dim, terms):
    return LaurentPoly(dim, terms)


class TestConstruction:
    def test_zero_terms_dropped(self):
        f = P(1, {(0,): 0, (1,): 2})
        assert f == P(1, {(1,): 2})
        assert f.num_terms() == 1

    def test_like_terms_combine_from_iterable(self):
        f = LaurentPoly(1, [((1,), 2), ((1,), 3)])
        assert f == P(1, {(1,): 5})

    def test_dimension_mismatch_rejected(self):
        with pytest.raises(ValueError):
            LaurentPoly(2, {(1,): 1})

    def test_variable_is_zero_based(self):
        u = LaurentPoly.variable(2, 0)
        v = LaurentPoly.variable(2, 1)
        assert u == P(2, {(1, 0): 1})
        assert v == P(2, {(0, 1): 1})
        with pytest.raises(ValueError):
            LaurentPoly.variable(2, 2)

    def test_constant_and_is_helpers(self):
        assert LaurentPoly.zero(3).is_zero()
        assert LaurentPoly.one(2).is_one()
        assert LaurentPoly.constant(1, 7).is_constant()
        assert LaurentPoly.constant(1, 7).constant_value() == 7
        assert LaurentPoly.monomial(2, (1, -1), -1).is_unit()
        assert not LaurentPoly.constant(1, 2).is_unit()


class TestRingAxioms:
    def test_axioms_on_random_triples(self, rng):
        zero = {d: LaurentPoly.zero(d) for d in (1, 2, 3)}
        one = {d: LaurentPoly.one(d) for d in (1, 2, 3)}
        for _ in range(1000):
            d = rng.choice((1, 2, 3))
            f = random_poly(rng, d, allow_zero=True)
            g = random_poly(rng, d, allow_zero=True)
            h = random_poly(rng, d, allow_zero=True)
            assert (f + g) + h == f + (g + h)
            assert f + g == g + f
            assert f * g == g * f
            assert (f * g) * h == f * (g * h)
            assert f * (g + h) == f * g + f * h
            assert f + zero[d] == f
            assert f * one[d] == f
            assert f - f == zero[d]
            assert -(-f) == f

    def test_integer_scalars_coerce(self):
        f = P(1, {(1,): 1})
        assert 2 * f == f + f
        assert f - 1 == P(1, {(1,): 1, (0,): -1})

    def test_pow(self, rng):
        for _ in range(50):
            d = rng.choice((1, 2))
            f = random_poly(rng, d)
            assert f**3 == f * f * f
            assert f**0 == LaurentPoly.one(d)

    def test_negative_pow_requires_unit(self):
        u = LaurentPoly.variable(2, 0)
        assert u**-2 == P(2, {(-2, 0): 1})
        assert (-u) ** -1 == P(2, {(-1, 0): -1})
        with pytest.raises(ValueError):
            (u + 1) ** -1


class TestNormalForm:
    def test_unit_normalize_examples(self):
        f = P(1, {(-2,): -4, (1,): 2})  # 2u - 4u^-2 = u^-2 (2u^3 - 4)
        assert f.unit_normalize() == P(1, {(3,): 2, (0,): -4})
        assert LaurentPoly.zero(2).unit_normalize().is_zero()
        assert LaurentPoly.constant(1, -5).unit_normalize() == LaurentPoly.constant(1, 5)

    def test_unit_normalize_idempotent(self, rng):
        for _ in range(300):
            f = random_poly(rng, rng.choice((1, 2)))
            g = f.unit_normalize()
            assert g.unit_normalize() == g

    def test_unit_normalize_is_an_associate(self, rng):
        for _ in range(300):
            f = random_poly(rng, rng.choice((1, 2)))
            g = f.unit_normalize()
            q = exact_div(f, g)
            assert q is not None and q.is_unit()

    def test_unit_normalize_sign_and_support(self, rng):
        for _ in range(300):
            f = random_poly(rng, 2).unit_normalize()
            assert all(f.exponent_range(i)[0] == 0 for i in range(2))
            lex_greatest = max(m for m, _ in f.sorted_terms())
            assert f.coefficient(lex_greatest) > 0

    def test_content(self):
        assert P(1, {(0,): 6, (1,): -9}).content() == 3
        assert LaurentPoly.zero(1).content() == 0


class TestDivision:
    def test_product_divisibility(self, rng):
        for _ in range(300):
            d = rng.choice((1, 2))
            f = random_poly(rng, d)
            g = random_poly(rng, d)
            q = exact_div(f * g, g)
            assert q == f
            assert divides(g, f * g)

    def test_non_divisible(self):
        u = LaurentPoly.variable(1, 0)
        assert exact_div(u + 1, u - 1) is None
        assert not divides(LaurentPoly.constant(1, 2), u + 1)

    def test_division_by_zero(self):
        u = LaurentPoly.variable(1, 0)
        with pytest.raises(ZeroDivisionError):
            exact_div(u, LaurentPoly.zero(1))
        assert exact_div(LaurentPoly.zero(1), u) == LaurentPoly.zero(1)
        assert divides(LaurentPoly.zero(1), LaurentPoly.zero(1))
        assert not divides(LaurentPoly.zero(1), u)


class TestEvaluation:
    def test_eval_complex_example(self):
        f = P(1, {(1,): 1, (0,): -2})  # u - 2
        assert f.eval_complex((1 + 0j,)) == -1
        assert abs(f.eval_complex((-1 + 0j,)) - (-3)) < 1e-12

    def test_torus_point_roundtrip(self):
        pt = TorusPoint((Fraction(1, 3), Fraction(5, 3)))
        assert pt.angles == (Fraction(1, 3), Fraction(2, 3))
        assert pt.is_rational()
        assert pt.common_order() == 3
        z = pt.to_complex()
        assert abs(z[0] - cmath.exp(2j * math.pi / 3)) < 1e-12

    def test_float_angles_are_not_exact(self):
        pt = TorusPoint((0.25, 0.5))
        assert not pt.is_rational()
        with pytest.raises(ValueError):
            pt.common_order()

    def test_lipschitz_bound_is_sound(self, rng):
        for _ in range(100):
            d = rng.choice((1, 2))
            f = random_poly(rng, d, max_coeff=5, max_exp=3)
            L = f.lipschitz_bound()
            x = tuple(rng.random() for _ in range(d))
            y = tuple(rng.random() for _ in range(d))
            rho = max(min(abs(a - b), 1 - abs(a - b)) for a, b in zip(x, y))
            fx = f.eval_complex(TorusPoint(x).to_complex())
            fy = f.eval_complex(TorusPoint(y).to_complex())
            assert abs(fx - fy) <= L * rho + 1e-9


class TestStructure:
    def test_sorted_terms_graded_lex_descending(self, rng):
        for _ in range(200):
            f = random_poly(rng, 2, max_terms=6)
            keys = [(sum(m), m) for m, _ in f.sorted_terms()]
            assert keys == sorted(keys, reverse=True)

    def test_substitute_monomials(self):
        # f(u1, u2) = u1 + u2 with u1 -> t^2, u2 -> t^-1
        f = P(2, {(1, 0): 1, (0, 1): 1})
        g = f.substitute_monomials([(2,), (-1,)], 1)
        assert g == P(1, {(2,): 1, (-1,): 1})

    def test_dense_univariate(self):
        f = P(1, {(-1,): 3, (2,): -1})
        index, shift, coeffs = f.dense_univariate()
        assert (index, shift) == (0, (-1,))
        assert coeffs == [3, 0, 0, -1]
        rebuilt = sum(
            (LaurentPoly.monomial(1, (shift[0] + j,), c) for j, c in enumerate(coeffs) if c),
            LaurentPoly.zero(1),
        )
        assert rebuilt == f

    def test_single_variable_detection(self):
        f = P(2, {(1, 0): 1, (3, 0): -2})
        assert f.single_variable() == 0
        g = P(2, {(1, 1): 1})
        assert g.single_variable() is None
        assert LaurentPoly.constant(2, 5).single_variable() is None

    def test_exponent_range_and_span(self):
        f = P(2, {(-1, 2): 1, (3, 0): 1})
        assert f.exponent_range(0) == (-1, 3)
        assert f.exponent_range(1) == (0, 2)
        assert f.total_degree_span() == 2

    def test_hash_consistency(self, rng):
        for _ in range(100):
            f = random_poly(rng, 2)
            g = LaurentPoly(2, dict(f.sorted_terms()))
            assert f == g and hash(f) == hash(g)
