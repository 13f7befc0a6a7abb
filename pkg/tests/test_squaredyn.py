"""Periodic points, growth rates, mixing and ergodicity for square presentations."""

from __future__ import annotations

import math
import random

import numpy as np
import pytest

from algdyn.laurent import LaurentPoly
from algdyn.polyio import load_problem, parse_poly
from algdyn.presentation import PresentationMatrix, det
from algdyn.squaredyn import (
    Fails,
    Holds,
    Lattice,
    PeriodicCount,
    VerifiedUpTo,
    block_matrix_oracle,
    ergodic_check,
    fix_count,
    fix_count_characters,
    fix_count_rectangular,
    growth_rate,
    mixing_check,
)

from util import fixture, random_poly


def P(s: str, d: int) -> LaurentPoly:
    return parse_poly(s, d)


def M(d: int, *rows) -> PresentationMatrix:
    return PresentationMatrix(d, tuple(tuple(parse_poly(s, d) for s in r) for r in rows))


def matrix_from(path: str) -> PresentationMatrix:
    prob = load_problem(fixture(path))
    return PresentationMatrix(prob.d, prob.presentation_matrix)


class TestLattice:
    def test_rectangular(self):
        L = Lattice.rectangular(2, (2, 3))
        assert L.basis == ((2, 0), (0, 3))
        assert L.index() == 6
        assert L.rectangular_sides() == (2, 3)
        assert Lattice.rectangular(2, 4).rectangular_sides() == (4, 4)

    def test_general_lattice(self):
        L = Lattice(((2, 1), (0, 2)))
        assert L.index() == 4
        assert L.rectangular_sides() is None

    def test_singular_rejected(self):
        with pytest.raises(ValueError):
            Lattice(((1, 2), (2, 4)))
        with pytest.raises(ValueError):
            Lattice.rectangular(2, 0)

    def test_dual_characters_enumerate_the_quotient(self):
        L = Lattice(((2, 1), (0, 2)))
        points = L.dual_characters()
        assert len(points) == L.index()
        for pt in points:
            assert pt.is_rational()
            # every character is trivial on the sublattice rows
            for row in L.basis:
                pairing = sum(r * a for r, a in zip(row, pt.angles))
                assert pairing == int(pairing)


class TestFixCounts:
    def test_doubling_map(self):
        A = M(1, ("u1-2",))
        for n in (1, 2, 3, 4, 8):
            assert fix_count(A, Lattice.rectangular(1, n)).value == 2**n - 1

    def test_identity_direction_gives_infinitely_many(self):
        A = M(1, ("u1-1",))
        assert fix_count(A, Lattice.rectangular(1, 3)).is_infinite

    def test_constant_three(self):
        A = M(2, ("3",))
        for n in (1, 2, 3):
            assert fix_count(A, Lattice.rectangular(2, n)).value == 3 ** (n * n)

    def test_constant_on_general_lattice(self):
        # |c|^(lattice index) independent of the lattice shape
        A = M(2, ("3",))
        assert fix_count(A, Lattice(((2, 1), (0, 2)))).value == 81

    def test_ledrappier_small_square(self):
        A = M(2, ("1+u1+u2",))
        assert fix_count(A, Lattice.rectangular(2, 2)).value == 3

    def test_affine_form_rectangular_and_skew(self):
        A = M(2, ("3-u1-u2",))
        assert fix_count(A, Lattice.rectangular(2, 2)).value == 45
        assert fix_count(A, Lattice(((2, 1), (0, 2)))).value == 51

    def test_metallic_fixture_table(self):
        A = matrix_from("metallic_pair_a.json")
        values = [fix_count(A, Lattice.rectangular(1, n)).value for n in (1, 2, 3, 4)]
        assert values == [4, 16, 76, 320]
        assert fix_count(A, Lattice.rectangular(1, 6)).value == 5776

    def test_matrix_pair_with_equal_determinant_has_equal_counts(self):
        A = matrix_from("metallic_pair_a.json")
        B = matrix_from("metallic_pair_b.json")
        for n in range(1, 9):
            L = Lattice.rectangular(1, n)
            assert fix_count(A, L).value == fix_count(B, L).value

    def test_companion_matrix_against_numpy(self):
        # multiplication by u on Z[u]/(u^2 - u - 1) is the Fibonacci matrix
        A = M(1, ("u1", "-1"), ("-1", "u1-1"))
        C = np.array([[0, 1], [1, 1]], dtype=np.int64)
        for n in range(1, 7):
            expected = abs(round(np.linalg.det(np.linalg.matrix_power(C, n) - np.eye(2))))
            got = fix_count(A, Lattice.rectangular(1, n))
            assert got.value == expected

    def test_unimodular_change_of_basis_preserves_counts(self, rng):
        A = M(2, ("3-u1-u2",))
        base = ((2, 1), (0, 2))
        for _ in range(10):
            # random unimodular row operations on the basis
            rows = [list(r) for r in base]
            for _ in range(4):
                i, j = rng.sample((0, 1), 2)
                c = rng.randint(-2, 2)
                rows[i] = [a + c * b for a, b in zip(rows[i], rows[j])]
                if rng.random() < 0.3:
                    rows[i] = [-a for a in rows[i]]
            L1, L2 = Lattice(base), Lattice(tuple(tuple(r) for r in rows))
            assert L1.index() == L2.index()
            assert fix_count(A, L1).value == fix_count(A, L2).value


class TestOracleAgreement:
    def test_three_routes_agree_on_random_instances(self, rng):
        checked = 0
        while checked < 30:
            d = rng.choice((1, 2))
            k = rng.choice((1, 2))
            rows = tuple(
                tuple(
                    random_poly(rng, d, max_terms=3, max_exp=1, max_coeff=3, allow_zero=True)
                    for _ in range(k)
                )
                for _ in range(k)
            )
            A = PresentationMatrix(d, rows)
            g = det(A)
            if g.is_zero():
                continue
            n = rng.randint(1, 4)
            a = fix_count_rectangular(g, (n,) * d)
            b = fix_count_characters(g, Lattice.rectangular(d, n))
            c = block_matrix_oracle(A, n)
            assert a.is_infinite == b.is_infinite == c.is_infinite
            if not a.is_infinite:
                assert a.value == b.value == c.value
            checked += 1


class TestGrowth:
    def test_growth_approaches_entropy(self):
        A = M(1, ("u1-2",))
        rates = growth_rate(A, 10)
        assert rates[0] == (1, math.log(1))
        n, last = rates[-1]
        assert n == 10
        assert abs(last - math.log(2)) < 0.07

    def test_growth_undefined_with_infinite_counts(self):
        A = M(1, ("u1-1",))
        with pytest.raises(ValueError) as err:
            growth_rate(A, 5)
        assert "infinitely many" in str(err.value)


class TestMixing:
    def test_monomial_relation_fails_with_minimal_witness(self):
        v = mixing_check(M(2, ("u1*u2-1",)))
        assert v == Fails(witness=(1, 1))

    def test_affine_form_passes_bounded_search(self):
        assert mixing_check(M(2, ("3-u1-u2",))) == VerifiedUpTo(bound=8)

    def test_cyclotomic_direction_fails(self):
        assert mixing_check(M(1, ("u1^2-1",))) == Fails(witness=(1,))

    def test_bound_is_respected(self):
        v = mixing_check(M(2, ("u1*u2-1",)), bound=3)
        assert v == Fails(witness=(1, 1))


class TestErgodicity:
    def test_two_dimensional_actions_are_ergodic_outright(self):
        v = ergodic_check(M(2, ("u1*u2-1",)))
        assert isinstance(v, Holds)
        assert v.justification

    def test_identity_direction_fails(self):
        assert ergodic_check(M(1, ("u1-1",))) == Fails(witness=1)
        assert ergodic_check(M(1, ("u1^3-1",))) == Fails(witness=1)

    def test_doubling_map_verified(self):
        assert ergodic_check(M(1, ("u1-2",))) == VerifiedUpTo(bound=8)

    def test_metallic_verified(self):
        A = matrix_from("metallic_pair_a.json")
        assert mixing_check(A) == VerifiedUpTo(bound=8)
        assert ergodic_check(A) == VerifiedUpTo(bound=8)


class TestPeriodicCount:
    def test_str_and_flags(self):
        assert str(PeriodicCount.finite(45)) == "45"
        assert str(PeriodicCount.infinite()) == "infinite"
        assert PeriodicCount.infinite().is_infinite
        assert not PeriodicCount.finite(0).is_infinite
