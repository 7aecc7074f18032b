"""Formal linear combinations of graphs, the gluing pairing, complexity
strings, and certified diagonal-dominance verdicts.

The dominance comparator is exact without ever expanding large
polynomials: equality of invariant strings is certified by a graph
isomorphism witness, and strictness by a single nonzero evaluation of an
integer polynomial over a prime field (a sound non-identity certificate),
combined with the Cauchy-Schwarz inequality, which pins the direction of
the first lexicographic difference.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .contraction import contract
from .graphs import GraphError, LabeledGraph, MiddleGraph, glue_along_cuts, glue_middle
from .graph_iso import isomorphic_rel_boundary, permissible_permutations
from .middleop import weighted_assignment
from .scalars import DEFAULT_PRIME, Poly
from .tensors import generic_assignment

# extra moduli for escalation; all comfortably above any prime used casually
_BACKUP_PRIMES = (DEFAULT_PRIME, (1 << 61) - 31, (1 << 61) - 69)


class FormalVector:
    """Finite linear combination of graph classes with a common boundary.

    Graphs are deduplicated by isomorphism relative to the boundary; zero
    coefficients are dropped.  Coefficients are exact rationals.
    """

    def __init__(self, boundary_size: int, terms=(), permissible=None):
        self.boundary_size = boundary_size
        self.permissible = permissible
        self.terms: list = []
        for g, c in terms:
            self.add(g, c)

    def add(self, graph: LabeledGraph, coeff):
        if len(graph.cuts) != self.boundary_size:
            raise GraphError("graph boundary does not match the vector's boundary")
        coeff = Fraction(coeff)
        for k, (g, c) in enumerate(self.terms):
            if isomorphic_rel_boundary(graph, g, self.permissible) is not None:
                s = c + coeff
                if s:
                    self.terms[k] = (g, s)
                else:
                    del self.terms[k]
                return
        if coeff:
            self.terms.append((graph, coeff))

    def is_zero(self) -> bool:
        return not self.terms

    def scaled(self, s) -> "FormalVector":
        return FormalVector(self.boundary_size,
                            [(g, c * Fraction(s)) for g, c in self.terms],
                            self.permissible)

    def coefficient_of(self, graph) -> Fraction:
        for g, c in self.terms:
            if isomorphic_rel_boundary(graph, g, self.permissible) is not None:
                return c
        return Fraction(0)

    def __len__(self):
        return len(self.terms)


def pair(v: FormalVector, w: FormalVector) -> FormalVector:
    """The sesquilinear gluing pairing into closed-graph combinations.

    Scalars are real rationals, so conjugation of the right coefficients
    is the identity; classes of the glued closed graphs are collected.
    """
    if v.boundary_size != w.boundary_size:
        raise GraphError("boundary mismatch between the paired vectors")
    out = FormalVector(0)
    for a, ca in v.terms:
        for b, cb in w.terms:
            out.add(glue_along_cuts(a, b), ca * cb)
    return out


@dataclass(frozen=True)
class ComplexityString:
    """Tuple of invariants at dimensions 1..dmax, compared lexicographically."""

    values: tuple
    mode: str
    seed: int

    def __len__(self):
        return len(self.values)

    def __eq__(self, other):
        return isinstance(other, ComplexityString) and self.values == other.values

    def __lt__(self, other):
        for a, b in zip(self.values, other.values):
            if isinstance(a, Poly) or isinstance(b, Poly):
                raise TypeError("symbolic strings support equality comparison only")
            if a != b:
                return a < b
        return len(self.values) < len(other.values)


def complexity_string(graph: LabeledGraph, dmax: int, mode: str = "symbolic",
                      seed: int = 0, p: int = DEFAULT_PRIME,
                      field: str = "prime") -> ComplexityString:
    """Invariants of the closed graph at edge-space dimensions 1..dmax.

    The assignment at each dimension is generated deterministically from
    the seed and shared across graphs with the same labels.
    """
    labels = tuple(graph.labels.values())
    values = []
    for d in range(1, dmax + 1):
        if mode == "symbolic":
            assignment = generic_assignment(labels, d, mode="symbolic", seed=seed)
            values.append(contract(graph, assignment))
        elif mode == "randomized":
            assignment = generic_assignment(labels, d, mode="randomized", seed=seed,
                                            field=field, p=p)
            values.append(contract(graph, assignment, p=p if field == "prime" else None))
        else:
            raise ValueError(f"unknown mode {mode!r}")
    return ComplexityString(tuple(values), mode, seed)


# ---------------------------------------------------------------------------
# dominance verdicts
# ---------------------------------------------------------------------------


@dataclass
class Verdict:
    kind: str                      # "STRICT" | "EQUAL_ISO" | "INCONCLUSIVE"
    witness: object = None         # GraphIso for EQUAL_ISO
    detail: dict = field(default_factory=dict)

    def is_strict(self):
        return self.kind == "STRICT"

    def is_equal(self):
        return self.kind == "EQUAL_ISO"


class DominanceEngine:
    """Certified dominance comparisons with per-graph value caching."""

    def __init__(self, dmax: int, seed: int = 0, samples: int = 2,
                 symbolic_edge_cap: int = 8):
        self.dmax = dmax
        self.seed = seed
        self.samples = min(samples, len(_BACKUP_PRIMES))
        self.symbolic_edge_cap = symbolic_edge_cap
        self._values: dict = {}
        self._glued: dict = {}

    def glued(self, a: LabeledGraph, b: LabeledGraph) -> LabeledGraph:
        key = (id(a), id(b))
        if key not in self._glued:
            self._glued[key] = glue_along_cuts(a, b)
        return self._glued[key]

    def value(self, graph: LabeledGraph, d: int, sample: int) -> int:
        """Invariant of a closed graph in Z/p for the sample's prime."""
        key = (id(graph), d, sample)
        if key not in self._values:
            p = _BACKUP_PRIMES[sample]
            labels = tuple(graph.labels.values())
            assignment = generic_assignment(labels, d, mode="randomized",
                                            seed=self.seed + 977 * sample, p=p)
            self._values[key] = contract(graph, assignment, p=p)
        return self._values[key]

    def diagonal_dominance(self, a: LabeledGraph, b: LabeledGraph) -> Verdict:
        """Verdict for a pair with common boundary.

        STRICT means the string of the mixed gluing drops strictly below
        the larger diagonal string for every generic real assignment; the
        certificate is the first dimension at which the exact polynomial
        identities (equal diagonals, Cauchy-Schwarz equality) fail.
        """
        if len(a.cuts) != len(b.cuts):
            raise GraphError("boundary mismatch")
        iso = isomorphic_rel_boundary(a, b)
        if iso is not None:
            return Verdict("EQUAL_ISO", witness=iso)
        aa, ab, bb = self.glued(a, a), self.glued(a, b), self.glued(b, b)
        for d in range(1, self.dmax + 1):
            for sample in range(self.samples):
                p = _BACKUP_PRIMES[sample]
                alpha = self.value(aa, d, sample)
                beta = self.value(bb, d, sample)
                gamma = self.value(ab, d, sample)
                if alpha != beta or (gamma * gamma - alpha * beta) % p:
                    return Verdict("STRICT", detail={
                        "dimension": d, "prime": p, "sample": sample,
                        "aa": alpha, "bb": beta, "ab": gamma})
        return self._escalate(a, b, aa, ab, bb)

    def _escalate(self, a, b, aa, ab, bb) -> Verdict:
        """No witness at sampled points: decide symbolically if feasible."""
        needed = max(a.edge_count(), b.edge_count())
        if self.dmax < needed:
            return Verdict("INCONCLUSIVE", detail={"reason": "dmax below the edge bound",
                                                   "needed": needed})
        if ab.edge_count() > self.symbolic_edge_cap:
            return Verdict("INCONCLUSIVE", detail={"reason": "symbolic expansion too large"})
        for d in range(1, self.dmax + 1):
            labels = tuple(ab.labels.values())
            assignment = generic_assignment(labels, d, mode="symbolic", seed=self.seed)
            alpha = contract(aa, assignment)
            beta = contract(bb, assignment)
            gamma = contract(ab, assignment)
            if alpha != beta or gamma * gamma != alpha * beta:
                return Verdict("STRICT", detail={"dimension": d, "symbolic": True})
        return Verdict("INCONCLUSIVE", detail={"reason": "identities hold symbolically"})


def diagonal_dominance(a: LabeledGraph, b: LabeledGraph, dmax: int,
                       seed: int = 0) -> Verdict:
    return DominanceEngine(dmax, seed).diagonal_dominance(a, b)


# ---------------------------------------------------------------------------
# positivity certificates
# ---------------------------------------------------------------------------


@dataclass
class PositivityCertificate:
    """A closed class of pair(v, v) whose coefficient is a sum of squares."""

    witness_graph: LabeledGraph
    coefficient: Fraction
    diagonal_indices: tuple

    def is_zero_vector(self):
        return False


@dataclass
class ZeroVector:
    def is_zero_vector(self):
        return True


def check_positivity(v: FormalVector, dmax: int = 0, seed: int = 0):
    """Certificate that pair(v, v) is nonzero for nonzero v.

    Collects the glued classes with provenance and exhibits a diagonal
    class receiving only diagonal contributions: its collected coefficient
    is the positive sum of squared coefficients.  Diagonal dominance
    guarantees such a class exists (the maximal-complexity diagonal).
    """
    if v.is_zero():
        return ZeroVector()
    classes: list = []  # (graph, contributions: list of (i, j, coeff))
    for i, (a, ca) in enumerate(v.terms):
        for j, (b, cb) in enumerate(v.terms):
            g = glue_along_cuts(a, b)
            for k, (rep, contribs) in enumerate(classes):
                if isomorphic_rel_boundary(g, rep) is not None:
                    contribs.append((i, j, ca * cb))
                    break
            else:
                classes.append((g, [(i, j, ca * cb)]))
    for rep, contribs in classes:
        if all(i == j for i, j, _ in contribs):
            coeff = sum(c for _, _, c in contribs)
            assert coeff > 0
            return PositivityCertificate(rep, coeff, tuple(i for i, _, _ in contribs))
    raise RuntimeError("no purely diagonal class found; dominance violated?")


# ---------------------------------------------------------------------------
# middle-glued dominance (real weighted tensors, honest order comparisons)
# ---------------------------------------------------------------------------


def middle_dominance(a: LabeledGraph, h: MiddleGraph, b: LabeledGraph,
                     dmax: int, base: int = 1 << 16, growth: str = "tower",
                     seed: int = 0) -> Verdict:
    """Dominance of the middle-glued pairing with coincidence-weighted
    tensors, computed over exact rationals so order is honest.

    Every vertex label (in the outer graphs and in the middle) receives
    its weighted tensor; the verdict compares |Z(AHB)| against
    max(Z(AHA), Z(BHB)) lexicographically over dimensions 1..dmax.
    """
    group = permissible_permutations(h)
    iso = isomorphic_rel_boundary(a, b, group)
    aha = glue_middle(a, h, a)
    ahb = glue_middle(a, h, b)
    bhb = glue_middle(b, h, b)
    labels = {l.id: l for g in (aha, ahb, bhb) for l in g.labels.values()}
    first_diff = None
    for d in range(1, dmax + 1):
        assignment = weighted_assignment(tuple(labels.values()), d, base, growth, seed=seed)
        alpha = contract(aha, assignment)
        beta = contract(bhb, assignment)
        gamma = contract(ahb, assignment)
        if not (gamma * gamma <= alpha * beta):
            return Verdict("INCONCLUSIVE", detail={
                "reason": "Cauchy-Schwarz violated (middle operator not positive here)",
                "dimension": d})
        if alpha != beta or gamma * gamma != alpha * beta:
            first_diff = d
            break
    if first_diff is None:
        if iso is not None:
            return Verdict("EQUAL_ISO", witness=iso)
        return Verdict("INCONCLUSIVE", detail={"reason": "strings equal up to dmax"})
    return Verdict("STRICT", detail={"dimension": first_diff})


# ---------------------------------------------------------------------------
# corpus sweeps
# ---------------------------------------------------------------------------


@dataclass
class SweepRecord:
    a_index: int
    b_index: int
    verdict: str
    detail: dict


@dataclass
class SweepReport:
    records: list
    corpus_sizes: dict
    failures: int

    def ok(self) -> bool:
        return self.failures == 0


def positivity_sweep(label_set, max_vertices: int, max_edges: int,
                     boundary_sizes=(0, 1, 2), dmax: int = 6, seed: int = 0,
                     progress=None) -> SweepReport:
    """Exhaustive dominance sweep over an enumerated corpus.

    For every unordered pair of distinct classes the verdict must be
    STRICT; for every class paired with itself, EQUAL_ISO.  Failures count
    any other outcome.
    """
    from .graph_enum import enumerate_graphs

    records = []
    sizes = {}
    failures = 0
    for nb in boundary_sizes:
        boundary = tuple(f"c{i}" for i in range(nb))
        corpus = list(enumerate_graphs(max_vertices, max_edges, label_set,
                                       boundary, dedupe=True))
        sizes[nb] = len(corpus)
        engine = DominanceEngine(dmax, seed)
        for i, j in combinations(range(len(corpus)), 2):
            verdict = engine.diagonal_dominance(corpus[i], corpus[j])
            if not verdict.is_strict():
                failures += 1
                records.append(SweepRecord(i, j, verdict.kind, dict(verdict.detail, boundary=nb)))
            elif progress:
                progress(nb, i, j, verdict)
        for i in range(len(corpus)):
            verdict = engine.diagonal_dominance(corpus[i], corpus[i])
            if not verdict.is_equal():
                failures += 1
                records.append(SweepRecord(i, i, verdict.kind, dict(verdict.detail, boundary=nb)))
    return SweepReport(records, sizes, failures)
