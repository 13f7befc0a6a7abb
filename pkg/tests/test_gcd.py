"""GCDs in the Laurent polynomial ring, cross-checked against sympy."""

from __future__ import annotations

import pytest
import sympy

from algdyn.gcdring import gcd, gcd_cofactors, gcd_list, multiplicity
from algdyn.laurent import LaurentPoly, divides, exact_div
from algdyn.polyio import parse_poly

from util import random_poly


def P1(s: str) -> LaurentPoly:
    return parse_poly(s, 1)


def P2(s: str) -> LaurentPoly:
    return parse_poly(s, 2)


class TestExamples:
    def test_integer_content(self):
        assert gcd(P2("6"), P2("2*u1*u2-14*u1+2*u2")) == P2("2")

    def test_common_polynomial_factor(self):
        f = P1("u1-1") * P1("u1+2")
        g = P1("u1-1") * P1("u1-3")
        assert gcd(f, g) == P1("u1-1")

    def test_monomial_shifts_are_units(self):
        f = P1("u1^-3") * P1("u1-1")
        g = P1("u1^5") * P1("u1-1")
        assert gcd(f, g) == P1("u1-1")

    def test_coprime(self):
        assert gcd(P1("u1-1"), P1("u1+1")).is_one()
        assert gcd(P2("u1-1"), P2("u2-1")).is_one()

    def test_bivariate_common_factor(self):
        c = P2("u1+u2-1")
        assert gcd(c * P2("u1-2"), c * P2("u2+3")) == c

    def test_zero_arguments(self):
        z = LaurentPoly.zero(1)
        assert gcd(P1("2*u1-4"), z) == P1("2*u1-4")
        assert gcd(z, P1("-3*u1")) == P1("3")
        with pytest.raises(ValueError):
            gcd(z, z)

    def test_gcd_list(self):
        fs = [P2("6"), P2("3*u2^2-15"), P2("2*u1*u2-14*u1+2*u2")]
        assert gcd_list(fs).is_one()
        assert gcd_list([P1("4*u1-8"), P1("6*u1-12"), P1("10")]) == P1("2")
        with pytest.raises(ValueError):
            gcd_list([])
        with pytest.raises(ValueError):
            gcd_list([LaurentPoly.zero(1), LaurentPoly.zero(1)])

    def test_result_is_unit_normalized(self):
        g = gcd(P1("-2*u1^3+2*u1^2"), P1("-2*u1^5+2*u1^4"))
        assert g == P1("2*u1-2")


class TestCofactors:
    def test_exact_cofactor_identity(self, rng):
        for _ in range(300):
            d = rng.choice((1, 2))
            fs = [random_poly(rng, d, max_terms=3, max_exp=2, max_coeff=4) for _ in range(rng.randint(2, 4))]
            res = gcd_cofactors(fs)
            assert len(res.cofactors) == len(fs)
            for f, c in zip(fs, res.cofactors):
                assert res.gcd * c == f

    def test_cofactors_with_zero_entry(self):
        z = LaurentPoly.zero(1)
        res = gcd_cofactors([P1("2*u1-4"), z, P1("6")])
        assert res.gcd == P1("2")
        assert res.cofactors[1].is_zero()
        assert res.gcd * res.cofactors[0] == P1("2*u1-4")


class TestProperties:
    def test_gcd_divides_both_and_absorbs_common_factor(self, rng):
        for _ in range(300):
            d = rng.choice((1, 2))
            a = random_poly(rng, d, max_terms=2, max_exp=2, max_coeff=3)
            b = random_poly(rng, d, max_terms=2, max_exp=2, max_coeff=3)
            c = random_poly(rng, d, max_terms=2, max_exp=2, max_coeff=3)
            g = gcd(a * c, b * c)
            assert divides(g, a * c)
            assert divides(g, b * c)
            assert divides(c, g)

    def test_gcd_symmetry_and_idempotence(self, rng):
        for _ in range(200):
            d = rng.choice((1, 2))
            f = random_poly(rng, d, max_terms=3, max_exp=2, max_coeff=4)
            g = random_poly(rng, d, max_terms=3, max_exp=2, max_coeff=4)
            h = gcd(f, g)
            assert h == gcd(g, f)
            assert gcd(f, f) == f.unit_normalize()
            assert gcd(h, f) == h

    def test_gcd_of_associates(self, rng):
        for _ in range(100):
            f = random_poly(rng, 2, max_terms=3)
            unit = LaurentPoly.monomial(2, (rng.randint(-2, 2), rng.randint(-2, 2)), rng.choice((-1, 1)))
            assert gcd(f, f * unit) == f.unit_normalize()


class TestMultiplicity:
    def test_examples(self):
        f = P1("u1-1") ** 2 * P1("u1+3")
        assert multiplicity(f, P1("u1-1")) == 2
        assert multiplicity(f, P1("u1+3")) == 1
        assert multiplicity(f, P1("u1+1")) == 0
        assert multiplicity(P1("4*u1-4"), P1("2")) == 2

    def test_invalid_arguments(self):
        with pytest.raises(ValueError):
            multiplicity(P1("u1-1"), P1("u1"))
        with pytest.raises(ValueError):
            multiplicity(P1("u1-1"), LaurentPoly.zero(1))
        with pytest.raises(ValueError):
            multiplicity(LaurentPoly.zero(1), P1("u1-1"))

    def test_matches_construction(self, rng):
        for _ in range(100):
            base = random_poly(rng, 1, max_terms=2, max_exp=2, max_coeff=3)
            if base.is_unit() or base.is_zero():
                continue
            k = rng.randint(0, 3)
            cof = random_poly(rng, 1, max_terms=2, max_exp=2, max_coeff=3)
            f = base**k * cof
            assert multiplicity(f, base) >= k


class TestSympyCrossOracle:
    def _to_sympy(self, f: LaurentPoly, syms):
        expr = sympy.Integer(0)
        for exps, c in f.sorted_terms():
            term = sympy.Integer(c)
            for s, e in zip(syms, exps):
                term *= s**e
            expr += term
        return expr

    def _from_sympy(self, expr, syms, dim: int) -> LaurentPoly:
        poly = sympy.Poly(sympy.expand(expr), *syms)
        terms = {}
        for monom, coeff in poly.terms():
            terms[tuple(int(e) for e in monom)] = int(coeff)
        return LaurentPoly(dim, terms)

    def test_gcd_agrees_with_sympy(self, rng):
        for _ in range(200):
            d = rng.choice((1, 2))
            syms = sympy.symbols(f"u1:{d + 1}")
            a = random_poly(rng, d, max_terms=2, max_exp=2, max_coeff=3, laurent=False)
            b = random_poly(rng, d, max_terms=2, max_exp=2, max_coeff=3, laurent=False)
            c = random_poly(rng, d, max_terms=2, max_exp=2, max_coeff=3, laurent=False)
            ours = gcd(a * c, b * c)
            theirs = sympy.gcd(
                self._to_sympy(a * c, syms), self._to_sympy(b * c, syms)
            )
            theirs_poly = self._from_sympy(theirs, syms, d).unit_normalize()
            assert ours == theirs_poly
