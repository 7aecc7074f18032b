"""Sum graphs of sphere/disk systems and prime-divisor complexities.

A sum graph has one vertex per complementary piece (labeled by the capped
piece, "S3"/"B3" for the thin ones) and one edge per sphere or disk; half
vertices and half edges belong to pieces and disks meeting the boundary
and only occur in relative graphs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .lex import LexTuple


class SumGraphError(ValueError):
    pass


@dataclass(frozen=True)
class SumVertex:
    id: str
    label: str            # capped piece; "S3" (regular thin) or "B3" (half thin)
    half: bool = False

    @property
    def thin(self) -> bool:
        return self.label == ("B3" if self.half else "S3")

    @property
    def fat(self) -> bool:
        return not self.thin

    def __post_init__(self):
        if self.half and self.label == "S3":
            raise SumGraphError("a half vertex capping to S3 should be labeled B3")
        if not self.half and self.label == "B3":
            raise SumGraphError("a regular vertex cannot be labeled B3")


@dataclass(frozen=True)
class SumEdge:
    a: str
    b: str
    half: bool = False


class SumGraph:
    def __init__(self, vertices, edges):
        self.vertices = tuple(vertices)
        self.edges = tuple(edges)
        ids = {v.id for v in self.vertices}
        if len(ids) != len(self.vertices):
            raise SumGraphError("duplicate vertex ids")
        for e in self.edges:
            if e.a not in ids or e.b not in ids:
                raise SumGraphError(f"edge {e} references unknown vertex")

    def is_relative(self) -> bool:
        return any(v.half for v in self.vertices) or any(e.half for e in self.edges)

    def components(self):
        parent = {v.id: v.id for v in self.vertices}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in self.edges:
            ra, rb = find(e.a), find(e.b)
            if ra != rb:
                parent[ra] = rb
        groups: dict = {}
        for v in self.vertices:
            groups.setdefault(find(v.id), []).append(v.id)
        return tuple(tuple(sorted(g)) for g in sorted(groups.values()))

    def slid(self, edge_index: int, end: int, new_vertex: str) -> "SumGraph":
        """Edge slide: move one endpoint to a vertex adjacent to it.

        The move tracks sliding a sphere across another; adjacency of the
        old endpoint and the target (via some other edge) is required, so
        connectivity and hence (r, s) are preserved.
        """
        e = self.edges[edge_index]
        old = (e.a, e.b)[end]
        adjacent = any((f.a == old and f.b == new_vertex) or
                       (f.b == old and f.a == new_vertex)
                       for k, f in enumerate(self.edges) if k != edge_index)
        if not adjacent and new_vertex != old:
            raise SumGraphError("slide target is not adjacent to the old endpoint")
        moved = SumEdge(new_vertex if end == 0 else e.a,
                        new_vertex if end == 1 else e.b, e.half)
        edges = list(self.edges)
        edges[edge_index] = moved
        return SumGraph(self.vertices, edges)


def sum_graph_stats(g: SumGraph):
    """(r, s) of a closed sum graph: fat-vertex count and first Betti number."""
    if g.is_relative():
        raise SumGraphError("stats are defined for non-relative sum graphs")
    r = sum(1 for v in g.vertices if v.fat)
    comps = g.components()
    s = len(g.edges) - len(g.vertices) + len(comps)
    return (r, s)


def component_stats(g: SumGraph):
    """Per-component (r, s), in component order."""
    if g.is_relative():
        raise SumGraphError("stats are defined for non-relative sum graphs")
    out = []
    for comp in g.components():
        vs = [v for v in g.vertices if v.id in comp]
        es = [e for e in g.edges if e.a in comp]
        r = sum(1 for v in vs if v.fat)
        s = len(es) - len(vs) + 1
        out.append((r, s))
    return out


def c2_of(components) -> LexTuple:
    """Total (r, s) followed by the per-component pairs, non-increasing."""
    comps = [tuple(c) for c in components]
    total = (sum(c[0] for c in comps), sum(c[1] for c in comps))
    return LexTuple([total] + sorted(comps, reverse=True))


def c2_of_graph(g: SumGraph) -> LexTuple:
    return c2_of(component_stats(g))


# ---------------------------------------------------------------------------
# divisors over oriented prime classes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OrientedPrime:
    """A prime class with an orientation mark; amphichiral primes equal
    their reversal and are canonicalized to the + mark."""

    name: str
    orientation: int = 1
    amphichiral: bool = False

    def __post_init__(self):
        if self.orientation not in (1, -1):
            raise SumGraphError("orientation must be +1 or -1")
        if self.amphichiral and self.orientation == -1:
            object.__setattr__(self, "orientation", 1)

    def reversed(self) -> "OrientedPrime":
        if self.amphichiral:
            return self
        return OrientedPrime(self.name, -self.orientation, False)


class Divisor:
    """Finite multiset of oriented primes (non-negative multiplicities)."""

    def __init__(self, counts=None):
        self.counts: dict = {}
        for prime, k in dict(counts or {}).items():
            if k:
                self.counts[prime] = self.counts.get(prime, 0) + int(k)

    def is_nonnegative(self) -> bool:
        return all(k >= 0 for k in self.counts.values())

    def is_zero(self) -> bool:
        return not any(self.counts.values())

    def multiplicity(self, prime) -> int:
        return self.counts.get(prime, 0)

    def __add__(self, other):
        out = dict(self.counts)
        for prime, k in other.counts.items():
            out[prime] = out.get(prime, 0) + k
        return Divisor(out)


def cbar_p(sigma: Divisor, cp) -> LexTuple:
    """Values cp(name) listed with multiplicity, non-increasing.

    cp maps the underlying prime name to an ordered value; orientation
    does not change the value.  The zero divisor gives the empty (minimal)
    list.  Negative divisors are rejected.
    """
    if not sigma.is_nonnegative():
        raise SumGraphError("divisor must be non-negative")
    values = []
    for prime, k in sigma.counts.items():
        values.extend([cp[prime.name]] * k)
    return LexTuple(sorted(values, reverse=True))


def c_iota(sigma: Divisor) -> LexTuple:
    """Per orientation-orbit: (total count, -|count difference|), sorted
    non-increasing; the defect is 0 for amphichiral primes."""
    if not sigma.is_nonnegative():
        raise SumGraphError("divisor must be non-negative")
    orbits: dict = {}
    for prime, k in sigma.counts.items():
        orbits.setdefault(prime.name, {}).setdefault(prime.orientation, 0)
        orbits[prime.name][prime.orientation] += k
    pairs = []
    for name, marks in orbits.items():
        plus = marks.get(1, 0)
        minus = marks.get(-1, 0)
        total = plus + minus
        amphichiral = any(p.amphichiral for p in sigma.counts if p.name == name)
        defect = 0 if amphichiral else -abs(plus - minus)
        pairs.append((total, defect))
    return LexTuple(sorted(pairs, reverse=True))


def sum_graph_from_json_obj(obj) -> SumGraph:
    """Schema: {"vertices": [{"id", "label", "half"?}],
    "edges": [{"a", "b", "half"?}]}."""
    try:
        vertices = [SumVertex(v["id"], v["label"], bool(v.get("half", False)))
                    for v in obj["vertices"]]
        edges = [SumEdge(e["a"], e["b"], bool(e.get("half", False)))
                 for e in obj.get("edges", ())]
        return SumGraph(vertices, edges)
    except (KeyError, TypeError) as exc:
        raise SumGraphError(f"malformed sum graph object: {exc}") from exc
