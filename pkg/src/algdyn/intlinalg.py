"""Exact integer matrix utilities: determinants, Smith normal form,
unimodular inverses.

Everything here is plain lists of lists of Python ints.  Determinants use
fraction-free (Bareiss) elimination; the Smith normal form tracks its row
and column operations so that M = U * D * V with U, V unimodular, which is
what lattice character enumeration needs.
"""
from __future__ import annotations

import itertools
import math
from fractions import Fraction

IntMatrix = list[list[int]]


def half_space_vectors(d: int, bound: int, primitive_only: bool = False) -> list[tuple[int, ...]]:
    """Nonzero integer vectors with max-norm <= bound whose first nonzero
    coordinate is positive (one representative per +-v pair), sorted by
    (max-norm, lexicographic) so small witnesses come first."""
    out = []
    for v in itertools.product(range(-bound, bound + 1), repeat=d):
        first = next((x for x in v if x), None)
        if first is None or first < 0:
            continue
        if primitive_only and math.gcd(*v) != 1:
            continue
        out.append(v)
    out.sort(key=lambda v: (max(abs(x) for x in v), v))
    return out


def identity(n: int) -> IntMatrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def matmul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    n, m, p = len(a), len(b), len(b[0])
    assert len(a[0]) == m
    return [[sum(a[i][k] * b[k][j] for k in range(m)) for j in range(p)] for i in range(n)]


def mat_vec(a: IntMatrix, v: list) -> list:
    return [sum(a[i][k] * v[k] for k in range(len(v))) for i in range(len(a))]


def transpose(a: IntMatrix) -> IntMatrix:
    return [list(col) for col in zip(*a)]


def det_int(matrix: IntMatrix) -> int:
    """Exact determinant by fraction-free elimination."""
    m = [list(r) for r in matrix]
    n = len(m)
    if any(len(r) != n for r in m):
        raise ValueError("determinant of a non-square matrix")
    sign = 1
    prev = 1
    for t in range(n - 1):
        piv = next((r for r in range(t, n) if m[r][t]), None)
        if piv is None:
            return 0
        if piv != t:
            m[t], m[piv] = m[piv], m[t]
            sign = -sign
        p = m[t][t]
        for r in range(t + 1, n):
            for c in range(t + 1, n):
                num = p * m[r][c] - m[r][t] * m[t][c]
                q, rem = divmod(num, prev)
                assert not rem, "Bareiss division must be exact"
                m[r][c] = q
            m[r][t] = 0
        prev = p
    return sign * m[n - 1][n - 1]


def invert_unimodular(matrix: IntMatrix) -> IntMatrix:
    """Exact inverse of an integer matrix with determinant +-1."""
    n = len(matrix)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(matrix)]
    for t in range(n):
        piv = next((r for r in range(t, n) if a[r][t]), None)
        if piv is None:
            raise ValueError("matrix is singular")
        a[t], a[piv] = a[piv], a[t]
        inv = 1 / a[t][t]
        a[t] = [x * inv for x in a[t]]
        for r in range(n):
            if r != t and a[r][t]:
                f = a[r][t]
                a[r] = [x - f * y for x, y in zip(a[r], a[t])]
    out = []
    for row in a:
        vals = row[n:]
        if any(x.denominator != 1 for x in vals):
            raise ValueError("matrix is not unimodular")
        out.append([int(x) for x in vals])
    return out


def smith_normal_form(matrix: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """(U, D, V) with matrix = U * D * V, U and V unimodular, D diagonal with
    nonnegative entries satisfying the divisibility chain d1 | d2 | ...

    The factorization is verified before returning.
    """
    a = [list(r) for r in matrix]
    nr, nc = len(a), len(a[0])
    u = identity(nr)   # tracks inverse row operations
    v = identity(nc)   # tracks inverse column operations

    def row_swap(i, j):
        a[i], a[j] = a[j], a[i]
        for r in u:
            r[i], r[j] = r[j], r[i]

    def row_add(i, j, q):
        # row i += q * row j; U gets col j -= q * col i
        a[i] = [x + q * y for x, y in zip(a[i], a[j])]
        for r in u:
            r[j] -= q * r[i]

    def row_negate(i):
        a[i] = [-x for x in a[i]]
        for r in u:
            r[i] = -r[i]

    def col_swap(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        v[i], v[j] = v[j], v[i]

    def col_add(i, j, q):
        # col i += q * col j; V gets row j -= q * row i
        for row in a:
            row[i] += q * row[j]
        v[j] = [x - q * y for x, y in zip(v[j], v[i])]

    def col_negate(i):
        for row in a:
            row[i] = -row[i]
        v[i] = [-x for x in v[i]]

    t = 0
    while t < min(nr, nc):
        # locate the nonzero entry of least magnitude in the trailing block
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        bi, bj = best
        if bi != t:
            row_swap(t, bi)
        if bj != t:
            col_swap(t, bj)
        if a[t][t] < 0:
            row_negate(t)
        dirty = False
        for i in range(nr):
            if i != t and a[i][t]:
                q = a[i][t] // a[t][t]
                row_add(i, t, -q)
                if a[i][t]:
                    dirty = True
        for j in range(nc):
            if j != t and a[t][j]:
                q = a[t][j] // a[t][t]
                col_add(j, t, -q)
                if a[t][j]:
                    dirty = True
        if dirty:
            continue
        # divisibility: fold any non-multiple into the pivot's row and retry
        p = a[t][t]
        offender = None
        for i in range(t + 1, nr):
            for j in range(t + 1, nc):
                if a[i][j] % p:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            row_add(t, offender, 1)
            continue
        t += 1

    d = [[a[i][j] if i == j else 0 for j in range(nc)] for i in range(nr)]
    if matmul(matmul(u, d), v) != [list(r) for r in matrix]:
        raise AssertionError("Smith normal form factorization failed verification")
    return u, d, v
