"""Exhaustive enumeration of labeled graphs within size bounds.

Graphs are generated by choosing a multiset of vertex labels and then
enumerating perfect matchings of the half-edge set (all vertex slots plus
the boundary cut points).  Every isomorphism class within the bounds
appears at least once; optional deduplication collapses classes.
"""

from __future__ import annotations

from itertools import combinations_with_replacement

from .graph_iso import isomorphic_rel_boundary
from .graphs import LabeledGraph, cend, vend


def enumerate_graphs(max_vertices: int, max_edges: int, label_set, boundary=(),
                     dedupe: bool = False, permissible=None):
    """Yield all graphs with at most `max_vertices` vertices and `max_edges`
    edges over the given labels, with boundary cut points `boundary`.

    Vertex-free circles are not generated (they only arise from gluing).
    With dedupe=True each isomorphism class is yielded once.
    """
    labels = tuple(label_set)
    boundary = tuple(boundary)
    seen = []
    for count in range(max_vertices + 1):
        for combo in combinations_with_replacement(labels, count):
            half = sum(l.valence for l in combo) + len(boundary)
            if half % 2 or half // 2 > max_edges:
                continue
            vertices = tuple((f"v{i}", lab.id) for i, lab in enumerate(combo))
            ends = []
            for i, lab in enumerate(combo):
                ends.extend(vend(f"v{i}", s) for s in range(lab.valence))
            ends.extend(cend(c) for c in boundary)
            for matching in _perfect_matchings(ends):
                g = LabeledGraph(labels, vertices, matching, boundary)
                if dedupe:
                    if any(isomorphic_rel_boundary(g, h, permissible) for h in seen):
                        continue
                    seen.append(g)
                yield g


def _perfect_matchings(ends):
    """All perfect matchings of a list of endpoints, each exactly once."""
    if not ends:
        yield ()
        return
    first, rest = ends[0], ends[1:]
    for i in range(len(rest)):
        pair = (first, rest[i])
        for sub in _perfect_matchings(rest[:i] + rest[i + 1:]):
            yield (pair,) + sub
