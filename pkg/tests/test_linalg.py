import random
from fractions import Fraction

import pytest

from diagdom.linalg import (det_bareiss, leading_principal_minors, mat_mul,
                            primitive_integer_vector, rank_mod_p,
                            rational_nullspace, smith_normal_form,
                            sylvester_positive)
from diagdom.scalars import Infinitesimal


def naive_det(m):
    n = len(m)
    if n == 0:
        return 1
    if n == 1:
        return m[0][0]
    total = 0
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        total += (-1) ** j * m[0][j] * naive_det(minor)
    return total


def test_bareiss_matches_cofactor_expansion():
    rng = random.Random(0)
    for _ in range(40):
        n = rng.randrange(1, 5)
        m = [[rng.randrange(-6, 7) for _ in range(n)] for _ in range(n)]
        assert det_bareiss(m) == naive_det(m)


def test_bareiss_fractions():
    m = [[Fraction(1, 2), Fraction(1, 3)], [Fraction(1, 5), Fraction(1, 7)]]
    assert det_bareiss(m) == Fraction(1, 14) - Fraction(1, 15)


def test_sylvester_examples():
    assert sylvester_positive([[1, 0], [0, 1]])
    assert not sylvester_positive([[1, 2], [2, 1]])  # det = -3
    with pytest.raises(ValueError):
        sylvester_positive([[1, 2], [3, 1]])
    with pytest.raises(ValueError):
        sylvester_positive([[1, 2, 3], [2, 1, 0]])


def cholesky_positive(m):
    """Independent oracle: rational LDL^T decomposition succeeds with all
    positive pivots iff the symmetric matrix is positive definite."""
    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    for k in range(n):
        if a[k][k] <= 0:
            return False
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            for j in range(k, n):
                a[i][j] -= f * a[k][j]
    return True


def test_sylvester_agrees_with_cholesky_oracle():
    rng = random.Random(7)
    for _ in range(60):
        n = rng.randrange(1, 6)
        b = [[Fraction(rng.randrange(-4, 5)) for _ in range(n)] for _ in range(n)]
        # b^T b + shift*I spans both definite and indefinite cases
        m = [[sum(b[k][i] * b[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
        shift = rng.randrange(-3, 4)
        for i in range(n):
            m[i][i] += shift
        assert sylvester_positive(m) == cholesky_positive(m)


def test_sylvester_infinitesimal_entries():
    eps = Infinitesimal(0, 1)
    m = [[Infinitesimal(1), eps], [eps, Infinitesimal(1)]]
    assert sylvester_positive(m)
    # zero standard part decided by the perturbation
    m2 = [[eps]]
    assert sylvester_positive(m2)
    assert not sylvester_positive([[Infinitesimal(0, -1)]])


def test_minors_increasing_prefixes():
    m = [[2, 1, 0], [1, 2, 1], [0, 1, 2]]
    assert leading_principal_minors(m) == [2, 3, 4]


def test_smith_normal_form_properties():
    rng = random.Random(3)
    for _ in range(30):
        rows = rng.randrange(1, 5)
        cols = rng.randrange(1, 5)
        m = [[rng.randrange(-9, 10) for _ in range(cols)] for _ in range(rows)]
        d, s, t = smith_normal_form(m)
        assert mat_mul(mat_mul(s, m), t) == d
        assert abs(det_bareiss(s)) == 1
        assert abs(det_bareiss(t)) == 1
        diag = [d[i][i] for i in range(min(rows, cols))]
        for i in range(len(diag) - 1):
            if diag[i + 1]:
                assert diag[i] != 0 and diag[i + 1] % diag[i] == 0
        for i in range(rows):
            for j in range(cols):
                if i != j:
                    assert d[i][j] == 0


def test_rational_nullspace():
    m = [[1, 2, 3], [2, 4, 6]]
    basis = rational_nullspace(m)
    assert len(basis) == 2
    for v in basis:
        assert all(sum(row[i] * v[i] for i in range(3)) == 0 for row in m)


def test_primitive_integer_vector():
    assert primitive_integer_vector([Fraction(2, 3), Fraction(4, 3)]) == [1, 2]
    assert primitive_integer_vector([6, -9]) == [2, -3]


def test_rank_mod_p():
    p = 101
    assert rank_mod_p([[1, 2], [2, 4]], p) == 1
    assert rank_mod_p([[1, 0], [0, 1]], p) == 2
    assert rank_mod_p([[101, 0], [0, 1]], p) == 1
