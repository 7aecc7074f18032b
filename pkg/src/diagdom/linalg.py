"""Exact integer / rational linear algebra.

Fraction-free determinants and leading principal minors (Bareiss),
the Sylvester positivity criterion, Smith normal form over Z, rational
nullspace, and Gaussian rank over a prime field.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .scalars import Infinitesimal


def det_bareiss(m):
    """Determinant by fraction-free elimination; entries int or Fraction."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if not a[k][k]:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                q, r = divmod(num, prev) if isinstance(num, int) and isinstance(prev, int) else (num / prev, 0)
                if r:
                    raise ArithmeticError("non-exact division in Bareiss step")
                a[i][j] = q
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def leading_principal_minors(m):
    """All leading principal minors det(m[:k, :k]) for k = 1..n."""
    n = len(m)
    return [det_bareiss([row[: k + 1] for row in m[: k + 1]]) for k in range(n)]


def _minor_infinitesimal(m):
    """det of a matrix with Infinitesimal entries via d/d(eps) expansion.

    det(A + eps*B) = det(A) + eps * sum_i det(A with column i replaced by
    the corresponding column of B); valid since eps^2 = 0.
    """
    n = len(m)
    a = [[x.a if isinstance(x, Infinitesimal) else x for x in row] for row in m]
    b = [[x.b if isinstance(x, Infinitesimal) else 0 for x in row] for row in m]
    d0 = det_bareiss(a)
    d1 = 0
    for col in range(n):
        mod = [row[:] for row in a]
        for i in range(n):
            mod[i][col] = b[i][col]
        d1 += det_bareiss(mod)
    return Infinitesimal(d0, d1)


def sylvester_positive(m) -> bool:
    """True iff the symmetric matrix m is positive definite.

    Checks that all leading principal minors are positive.  Entries may be
    ints, Fractions, or Infinitesimals (compared lexicographically).
    Raises ValueError on non-square or non-symmetric input.
    """
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("matrix is not square")
    for i in range(n):
        for j in range(i + 1, n):
            if m[i][j] != m[j][i]:
                raise ValueError("matrix is not symmetric")
    has_eps = any(isinstance(x, Infinitesimal) for row in m for x in row)
    for k in range(1, n + 1):
        sub = [row[:k] for row in m[:k]]
        d = _minor_infinitesimal(sub) if has_eps else det_bareiss(sub)
        if not d > 0:
            return False
    return True


def smith_normal_form(m):
    """Smith normal form of an integer matrix.

    Returns (d, s, t) with s @ m @ t == d, where d is diagonal with
    d[i] | d[i+1] and s, t unimodular.  Matrices are lists of lists of ints.
    """
    rows = len(m)
    cols = len(m[0]) if rows else 0
    a = [list(map(int, row)) for row in m]
    s = [[int(i == j) for j in range(rows)] for i in range(rows)]
    t = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def row_op(i, j, q):  # row_i -= q * row_j
        a[i] = [x - q * y for x, y in zip(a[i], a[j])]
        s[i] = [x - q * y for x, y in zip(s[i], s[j])]

    def col_op(i, j, q):  # col_i -= q * col_j
        for row in a:
            row[i] -= q * row[j]
        for row in t:
            row[i] -= q * row[j]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        s[i], s[j] = s[j], s[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in t:
            row[i], row[j] = row[j], row[i]

    k = 0
    while k < min(rows, cols):
        # find a pivot with minimal absolute value
        piv = None
        for i in range(k, rows):
            for j in range(k, cols):
                if a[i][j] and (piv is None or abs(a[i][j]) < abs(a[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        swap_rows(k, piv[0])
        swap_cols(k, piv[1])
        dirty = False
        for i in range(k + 1, rows):
            if a[i][k]:
                row_op(i, k, a[i][k] // a[k][k])
                if a[i][k]:
                    swap_rows(k, i)
                    dirty = True
        for j in range(k + 1, cols):
            if a[k][j]:
                col_op(j, k, a[k][j] // a[k][k])
                if a[k][j]:
                    swap_cols(k, j)
                    dirty = True
        if dirty:
            continue
        # ensure divisibility of the remaining block
        bad = None
        for i in range(k + 1, rows):
            for j in range(k + 1, cols):
                if a[i][j] % a[k][k]:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            a[k] = [x + y for x, y in zip(a[k], a[bad])]
            s[k] = [x + y for x, y in zip(s[k], s[bad])]
            continue
        if a[k][k] < 0:
            a[k] = [-x for x in a[k]]
            s[k] = [-x for x in s[k]]
        k += 1
    return a, s, t


def rational_nullspace(m):
    """Basis of the right nullspace of a matrix over Q (list of Fraction vectors)."""
    rows = len(m)
    cols = len(m[0]) if rows else 0
    a = [[Fraction(x) for x in row] for row in m]
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        a[r] = [x / a[r][c] for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * cols
        v[fc] = Fraction(1)
        for ri, pc in enumerate(pivots):
            v[pc] = -a[ri][fc]
        basis.append(v)
    return basis


def primitive_integer_vector(v):
    """Scale a rational vector to a primitive integer vector (gcd 1)."""
    fracs = [Fraction(x) for x in v]
    if all(x == 0 for x in fracs):
        raise ValueError("zero vector has no primitive scaling")
    lcm = 1
    for x in fracs:
        lcm = lcm * x.denominator // gcd(lcm, x.denominator)
    ints = [int(x * lcm) for x in fracs]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    return [x // g for x in ints]


def rank_mod_p(m, p: int) -> int:
    """Rank of an integer matrix over Z/p by Gaussian elimination."""
    rows = [[x % p for x in row] for row in m]
    n_rows = len(rows)
    n_cols = len(rows[0]) if n_rows else 0
    rank = 0
    r = 0
    for c in range(n_cols):
        piv = next((i for i in range(r, n_rows) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], p - 2, p)
        rows[r] = [(x * inv) % p for x in rows[r]]
        for i in range(n_rows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        rank += 1
        r += 1
        if r == n_rows:
            break
    return rank


def mat_mul(a, b):
    """Plain exact matrix product (lists of lists)."""
    n, k = len(a), len(b)
    m = len(b[0]) if k else 0
    return [[sum(a[i][t] * b[t][j] for t in range(k)) for j in range(m)] for i in range(n)]
