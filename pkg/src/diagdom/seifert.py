"""Seifert fibered data: normal forms, orbifold Euler characteristic, and
the fibered-piece complexity tuples.

Notation M(+-g, b; a_1/b_1, ..., a_k/b_k): base of genus g (sign for
orientability) with b boundary circles and k exceptional fibers given by
rational slopes.  An integer slope is legal only for b = 0, k = 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering

from .lex import LexTuple


class SeifertError(ValueError):
    pass


@dataclass(frozen=True)
class SeifertData:
    orientable_base: bool
    genus: int
    boundary: int
    fibers: tuple

    def __post_init__(self):
        fibers = tuple(Fraction(f) for f in self.fibers)
        object.__setattr__(self, "fibers", fibers)
        if self.genus < 0 or self.boundary < 0:
            raise SeifertError("negative genus or boundary count")
        for f in fibers:
            if f.denominator == 1 and not (self.boundary == 0 and len(fibers) == 1):
                raise SeifertError(
                    "integer slope allowed only for closed base with a single fiber")

    @classmethod
    def parse(cls, text: str) -> "SeifertData":
        """Parse 'M(+g,b;a/b,...)' or 'M(-g,b;...)'."""
        body = text.strip()
        if body.startswith("M(") and body.endswith(")"):
            body = body[2:-1]
        head, _, tail = body.partition(";")
        gpart, bpart = head.split(",")
        gpart = gpart.strip()
        orientable = not gpart.startswith("-")
        genus = int(gpart.lstrip("+-"))
        fibers = tuple(Fraction(x.strip()) for x in tail.split(",") if x.strip())
        return cls(orientable, genus, int(bpart), fibers)

    def euler_number(self) -> Fraction:
        """Sum of slopes; a fibering invariant when the base is closed."""
        return sum(self.fibers, Fraction(0))

    def __str__(self):
        sign = "+" if self.orientable_base else "-"
        fib = ",".join(str(f) for f in self.fibers)
        return f"M({sign}{self.genus},{self.boundary};{fib})"


def seifert_normal_form(d: SeifertData):
    """(orientability, genus, boundary, sorted nonzero residues, euler-or-None).

    Slopes matter mod 1, zero residues drop out of the singular data, and
    the Euler number is retained as a separate invariant iff the base is
    closed.
    """
    residues = tuple(sorted(f - f.numerator // f.denominator for f in d.fibers
                            if f.denominator != 1))
    euler = d.euler_number() if d.boundary == 0 else None
    return (d.orientable_base, d.genus, d.boundary, residues, euler)


def seifert_isomorphic(d1: SeifertData, d2: SeifertData) -> bool:
    """Orientation- and fiber-preserving isomorphism of the two fiberings."""
    return seifert_normal_form(d1) == seifert_normal_form(d2)


def chi_orb(d: SeifertData) -> Fraction:
    """Orbifold Euler characteristic of the base: chi(surface) minus one
    (1 - 1/beta) per exceptional fiber."""
    if d.orientable_base:
        chi = 2 - 2 * d.genus - d.boundary
    else:
        chi = 2 - d.genus - d.boundary
    return Fraction(chi) - sum((1 - Fraction(1, f.denominator)) for f in d.fibers)


# ---------------------------------------------------------------------------
# total order on nonzero rational residues up to sign
# ---------------------------------------------------------------------------


def residue_class(f: Fraction) -> Fraction:
    """Canonical representative in (0, 1/2] of +-f mod 1; None for 0."""
    r = f - f.numerator // f.denominator
    if r == 0:
        return None
    return min(r, 1 - r)


def class_sort_key(c: Fraction):
    """Fixed order on the classes: by (denominator, numerator), ascending."""
    return (c.denominator, c.numerator)


@total_ordering
class SingList:
    """Singular-fiber data: per class a pair (count, defect), compared
    class-by-class in the fixed class order with missing classes = (0, 0)."""

    def __init__(self, entries):
        self.entries = {c: (int(s), int(df)) for c, (s, df) in dict(entries).items()
                        if (s, df) != (0, 0)}

    @classmethod
    def of(cls, d: SeifertData) -> "SingList":
        residues = [f - f.numerator // f.denominator for f in d.fibers]
        residues = [r for r in residues if r != 0]
        classes = {}
        for r in residues:
            c = min(r, 1 - r)
            classes.setdefault(c, [0, 0])
        for c in classes:
            plus = sum(1 for r in residues if r == c)
            minus = sum(1 for r in residues if r == 1 - c)
            if c == 1 - c:  # the class 1/2 is its own mirror
                s, defect = plus, 0
            else:
                s, defect = plus + minus, -abs(plus - minus)
            classes[c] = (s, defect)
        return cls(classes)

    def _ordered(self, other):
        keys = sorted(set(self.entries) | set(other.entries), key=class_sort_key)
        mine = tuple(self.entries.get(k, (0, 0)) for k in keys)
        theirs = tuple(other.entries.get(k, (0, 0)) for k in keys)
        return mine, theirs

    def __eq__(self, other):
        if not isinstance(other, SingList):
            return NotImplemented
        return self.entries == other.entries

    def __lt__(self, other):
        if not isinstance(other, SingList):
            return NotImplemented
        mine, theirs = self._ordered(other)
        return mine < theirs

    def __hash__(self):
        return hash(tuple(sorted(self.entries.items(), key=lambda kv: class_sort_key(kv[0]))))

    def __repr__(self):
        inner = ", ".join(f"{k}:{v}" for k, v in
                          sorted(self.entries.items(), key=lambda kv: class_sort_key(kv[0])))
        return f"SingList({inner})"


def c_cs(d: SeifertData) -> LexTuple:
    """Complexity of a connected fibered piece:
    (boundary count, -chi_orb, singular data, and -|euler| when closed)."""
    parts = [d.boundary, -chi_orb(d), SingList.of(d)]
    if d.boundary == 0:
        parts.append(-abs(d.euler_number()))
    return LexTuple(parts)


def c_s(m: int, m_prime: int, sf_pieces, n: int | None = None) -> LexTuple:
    """Fibered complexity of a decomposed closed manifold.

    m: maximal number of independent tori (caller-supplied metadata);
    m_prime: number of decomposition tori; sf_pieces: SeifertData of the
    fibered pieces.  Tuples of different length compare with bottom
    padding, so a longer piece list wins at equal prefix.
    """
    sf_pieces = list(sf_pieces)
    if n is None:
        n = len(sf_pieces)
    pieces_sorted = sorted((c_cs(p) for p in sf_pieces), reverse=True)
    head = [m, -m_prime,
            sum((-chi_orb(p) for p in sf_pieces), Fraction(0)),
            sum(p.genus for p in sf_pieces),
            n]
    return LexTuple(head + pieces_sorted)
