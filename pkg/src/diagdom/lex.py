"""Lexicographic tuples with a -infinity padding convention.

Tuples of different lengths are compared by padding the shorter one with a
bottom element, so a list that agrees with a longer one on their common
prefix is strictly *smaller* than the longer one.
"""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering


class _NegInf:
    """Bottom element: strictly less than every other comparable value."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "-inf"

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("_NegInf")


NEG_INF = _NegInf()

_SCALARS = (int, Fraction)


def cmp_values(a, b) -> int:
    """Three-way compare of lex entries; returns -1, 0 or +1.

    Entries may be numbers, strings, LexTuple/tuple/list (compared
    recursively with padding) or NEG_INF.  Mixing incompatible kinds
    raises TypeError.
    """
    a_inf, b_inf = a is NEG_INF, b is NEG_INF
    if a_inf and b_inf:
        return 0
    if a_inf:
        return -1
    if b_inf:
        return 1
    a_seq = isinstance(a, (LexTuple, tuple, list))
    b_seq = isinstance(b, (LexTuple, tuple, list))
    if a_seq and b_seq:
        return _cmp_seq(a, b)
    if a_seq != b_seq:
        raise TypeError(f"cannot compare sequence with scalar: {a!r} vs {b!r}")
    if isinstance(a, _SCALARS) and isinstance(b, _SCALARS):
        return (a > b) - (a < b)
    if isinstance(a, str) and isinstance(b, str):
        return (a > b) - (a < b)
    # fall back to objects exposing rich comparison (e.g. Infinitesimal)
    if type(a) is type(b):
        return (a > b) - (a < b)
    raise TypeError(f"cannot compare entries of kind {type(a)} and {type(b)}")


def _cmp_seq(a, b) -> int:
    n = max(len(a), len(b))
    for i in range(n):
        x = a[i] if i < len(a) else NEG_INF
        y = b[i] if i < len(b) else NEG_INF
        c = cmp_values(x, y)
        if c:
            return c
    return 0


@total_ordering
class LexTuple:
    """Immutable tuple compared lexicographically with -inf padding.

    Entries can be numbers, strings, nested LexTuples (or plain tuples),
    or NEG_INF.  On equal common prefixes the longer tuple is greater.
    """

    __slots__ = ("values",)

    def __init__(self, values=()):
        self.values = tuple(values)

    def __len__(self):
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def __iter__(self):
        return iter(self.values)

    def __repr__(self):
        return f"LexTuple{self.values!r}"

    def __eq__(self, other):
        if not isinstance(other, (LexTuple, tuple, list)):
            return NotImplemented
        return _cmp_seq(self, other) == 0

    def __lt__(self, other):
        if not isinstance(other, (LexTuple, tuple, list)):
            return NotImplemented
        return _cmp_seq(self, other) < 0

    def __hash__(self):
        return hash(self.values)


def lex_compare(a, b) -> int:
    """Three-way lexicographic comparison with -inf padding."""
    return cmp_values(a, b)
