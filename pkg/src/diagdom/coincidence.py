"""Coincidence signatures of multi-indices and their extravagant weights.

A label occurring exactly k times in a multi-index contributes one
k-tuple.  The signature (#n-tuples, ..., #pairs) is ordered
lexicographically; the weight function embeds that order into the
positive integers so steeply that contracted operators built from
weighted tensors are diagonally dominant.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import factorial


@dataclass(frozen=True)
class CoincidenceSignature:
    """counts[i] = number of distinct labels occurring exactly (n-i) times,
    stored largest tuple size first: (#n-tuples, #(n-1)-tuples, ..., #pairs)."""

    valence: int
    counts: tuple

    def __post_init__(self):
        if len(self.counts) != max(self.valence - 1, 0):
            raise ValueError("counts must cover tuple sizes n..2")
        weighted = sum((self.valence - i) * c for i, c in enumerate(self.counts))
        if weighted > self.valence:
            raise ValueError("signature exceeds the index length")

    def count_of(self, k: int) -> int:
        """Number of k-tuples (2 <= k <= valence)."""
        return self.counts[self.valence - k]

    def sort_key(self):
        return self.counts

    def is_trivial(self) -> bool:
        return not any(self.counts)


def coincidence_signature(multi_index) -> CoincidenceSignature:
    """Signature of a multi-index: one k-tuple per label occurring k times."""
    idx = tuple(multi_index)
    n = len(idx)
    mult = Counter(Counter(idx).values())
    counts = tuple(mult.get(k, 0) for k in range(n, 1, -1))
    return CoincidenceSignature(n, counts)


# Growth schedules for the tuple-size weights B_k.  The default "tower"
# makes each level an enormous power of the previous one, which provably
# dominates every desk-scale off-diagonal accumulation; the weaker
# schedules exist to exhibit positivity failures at small bases.
GROWTHS = ("tower", "geometric", "flat")


def tuple_weights(base: int, valence: int, dim: int, growth: str = "tower"):
    """Weights B_2..B_n for pair, triple, ..., n-tuple coincidences."""
    if base < 2:
        raise ValueError("base must be at least 2")
    if growth not in GROWTHS:
        raise ValueError(f"unknown growth {growth!r}")
    weights = {}
    if valence < 2:
        return weights
    b = base
    weights[2] = b
    for k in range(3, valence + 1):
        if growth == "tower":
            b = (dim * b) ** (factorial(valence) * valence)
        elif growth == "geometric":
            b = b * base
        else:
            b = base
        weights[k] = b
    return weights


def coincidence_weight(sig: CoincidenceSignature, base: int, valence: int,
                       dim: int, growth: str = "tower") -> int:
    """The weight prod_k B_k^(#k-tuples); 1 on the trivial signature."""
    if valence != sig.valence:
        raise ValueError("valence mismatch with signature")
    weights = tuple_weights(base, valence, dim, growth)
    out = 1
    for k in range(2, valence + 1):
        c = sig.count_of(k)
        if c:
            out *= weights[k] ** c
    return out


def weighted_entry(multi_index, base: int, dim: int, growth: str = "tower") -> int:
    """Tensor entry for a multi-index under coincidence weighting."""
    sig = coincidence_signature(multi_index)
    return coincidence_weight(sig, base, len(tuple(multi_index)), dim, growth)


def all_signatures(valence: int):
    """Every realizable coincidence signature of a given index length
    (derived from the integer partitions of subsets of the index slots)."""
    out = set()
    for part in _partitions(valence):
        mult = Counter(p for p in part if p >= 2)
        counts = tuple(mult.get(k, 0) for k in range(valence, 1, -1))
        out.add(CoincidenceSignature(valence, counts))
    return sorted(out, key=lambda s: s.counts)


def _partitions(n: int, cap: int | None = None):
    if n == 0:
        yield ()
        return
    cap = cap or n
    for first in range(min(n, cap), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


# ---------------------------------------------------------------------------
# exact weight comparison without materializing tower integers
# ---------------------------------------------------------------------------

def weight_exponents(sig: CoincidenceSignature, valence: int, dim: int,
                     growth: str = "tower"):
    """(X, Y) with weight = dim^X * base^Y; exact for every growth.

    Tower levels satisfy B_k = dim^(a_k) * base^(b_k) with integer a_k,
    b_k, so weights stay comparable even when the integers themselves are
    astronomically long.
    """
    from math import factorial
    if valence != sig.valence:
        raise ValueError("valence mismatch with signature")
    e = factorial(valence) * valence
    a, b = 0, 1  # B_2 = base
    x = y = 0
    for k in range(2, valence + 1):
        c = sig.count_of(k)
        if c:
            x += a * c
            y += b * c
        if growth == "tower":
            a, b = e * (a + 1), e * b
        elif growth == "geometric":
            b += 1
        elif growth != "flat":
            raise ValueError(f"unknown growth {growth!r}")
    return x, y


def _log2_bounds(m: int, q: int = 64):
    """Verified rational bounds lo/q <= log2(m) <= hi/q via exact powers."""
    if m < 1:
        raise ValueError("need a positive integer")
    power = m ** q
    lo = power.bit_length() - 1  # 2^lo <= m^q
    assert (1 << lo) <= power < (1 << (lo + 1))
    from fractions import Fraction
    return Fraction(lo, q), Fraction(lo + 1, q)


def compare_weights(s1: CoincidenceSignature, s2: CoincidenceSignature,
                    base: int, valence: int, dim: int, growth: str = "tower",
                    margin: int = 1) -> bool:
    """Exact decision of weight(s1) > margin * weight(s2).

    Decides via verified log bounds on the exponent forms; falls back to
    exact big-integer comparison when the bounds are inconclusive and the
    integers are representable.
    """
    x1, y1 = weight_exponents(s1, valence, dim, growth)
    x2, y2 = weight_exponents(s2, valence, dim, growth)
    dx, dy = x1 - x2, y1 - y2
    if dx == 0 and dy == 0:
        return 1 > margin
    d_lo, d_hi = _log2_bounds(dim)
    b_lo, b_hi = _log2_bounds(base)
    m_lo, m_hi = _log2_bounds(margin) if margin > 1 else (0, 0)
    # log2 lhs/rhs = dx*log2(d) + dy*log2(B) - log2(margin)
    lo = dx * (d_lo if dx > 0 else d_hi) + dy * (b_lo if dy > 0 else b_hi) - m_hi
    hi = dx * (d_hi if dx > 0 else d_lo) + dy * (b_hi if dy > 0 else b_lo) - m_lo
    if lo > 0:
        return True
    if hi < 0:
        return False
    # inconclusive interval: settle exactly if the integers are small enough
    if max(abs(dx), abs(dy)) * max(base.bit_length(), dim.bit_length()) > 10 ** 7:
        raise ArithmeticError("comparison too close to decide at this precision")
    lhs = dim ** max(dx, 0) * base ** max(dy, 0)
    rhs = margin * dim ** max(-dx, 0) * base ** max(-dy, 0)
    return lhs > rhs
