"""Exact scalar rings used throughout the engine.

No floating point anywhere: integers, rationals (fractions.Fraction),
sparse multivariate polynomials over the rationals, a large prime field
for randomized identity testing, and a degree-one infinitesimal extension
used for generic perturbations with exact order comparisons.
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import total_ordering

# Default modulus for randomized polynomial-identity testing: the Mersenne
# prime 2^61 - 1.  A nonzero evaluation mod p certifies that an integer
# polynomial is not identically zero.
DEFAULT_PRIME = (1 << 61) - 1


def is_probable_prime(n: int, rounds: int = 20) -> bool:
    """Miller-Rabin test, deterministic seed; good enough to validate config."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    rng = random.Random(0xC0FFEE)
    for _ in range(rounds):
        a = rng.randrange(2, n - 1)
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class PrimeField:
    """The field Z/p for a large prime p; elements are plain ints in [0, p)."""

    def __init__(self, p: int = DEFAULT_PRIME):
        if not is_probable_prime(p):
            raise ValueError(f"modulus {p} is not prime")
        self.p = p

    def reduce(self, x: int) -> int:
        return x % self.p

    def sample(self, rng: random.Random) -> int:
        return rng.randrange(self.p)

    def __repr__(self):
        return f"PrimeField({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))


class Poly:
    """Sparse multivariate polynomial with Fraction coefficients.

    A monomial is a sorted tuple of (variable, exponent) pairs; variables
    are arbitrary hashable tokens.  Only the ring operations needed by
    tensor contraction are provided (+, -, *, ==, evaluation).
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = dict(terms) if terms else {}

    @classmethod
    def const(cls, c) -> "Poly":
        c = Fraction(c)
        return cls({(): c} if c else {})

    @classmethod
    def var(cls, name) -> "Poly":
        return cls({((name, 1),): Fraction(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mul_monomials(m1, m2)
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return Poly(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def evaluate(self, assignment):
        """Evaluate with variable values from `assignment` (exact arithmetic)."""
        total = 0
        for m, c in self.terms.items():
            v = c
            for name, e in m:
                v = v * assignment[name] ** e
            total = total + v
        return total

    def total_degree(self) -> int:
        return max((sum(e for _, e in m) for m in self.terms), default=0)

    def variables(self):
        seen = set()
        for m in self.terms:
            for name, _ in m:
                seen.add(name)
        return seen

    def __repr__(self):
        if not self.terms:
            return "Poly(0)"
        bits = []
        for m, c in sorted(self.terms.items(), key=lambda kv: repr(kv[0])):
            mono = "*".join(f"{n}^{e}" if e > 1 else f"{n}" for n, e in m) or "1"
            bits.append(f"{c}*{mono}")
        return "Poly(" + " + ".join(bits) + ")"


def _mul_monomials(m1, m2):
    if not m1:
        return m2
    if not m2:
        return m1
    exps: dict = {}
    for n, e in m1:
        exps[n] = exps.get(n, 0) + e
    for n, e in m2:
        exps[n] = exps.get(n, 0) + e
    return tuple(sorted(exps.items(), key=lambda kv: repr(kv[0])))


def _coerce(x):
    if isinstance(x, Poly):
        return x
    if isinstance(x, (int, Fraction)):
        return Poly.const(x)
    return NotImplemented


@total_ordering
class Infinitesimal:
    """Element a + b*eps with eps^2 = 0, ordered lexicographically by (a, b).

    Realizes generic perturbation "in the linear term only": the standard
    part decides comparisons, the eps part breaks ties.  Coefficients are
    ints or Fractions.
    """

    __slots__ = ("a", "b")

    def __init__(self, a, b=0):
        self.a = a
        self.b = b

    @staticmethod
    def _lift(x):
        if isinstance(x, Infinitesimal):
            return x
        if isinstance(x, (int, Fraction)):
            return Infinitesimal(x, 0)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return Infinitesimal(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return Infinitesimal(-self.a, -self.b)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return self._lift(other) + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return Infinitesimal(self.a * o.a, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __lt__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return (self.a, self.b) < (o.a, o.b)

    def __hash__(self):
        return hash((self.a, self.b))

    def __repr__(self):
        return f"({self.a} + {self.b}*eps)"


def format_rational(x) -> str:
    """Render an exact number as `p/q` (never decimal-rounded)."""
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)
    return str(x)
