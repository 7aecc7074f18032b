from itertools import combinations

from diagdom.graphs import LabeledGraph, ordinary_label, cend, vend
from diagdom.graph_enum import enumerate_graphs, _perfect_matchings
from diagdom.graph_iso import isomorphic_rel_boundary


def test_empty_bounds_give_empty_graph():
    gs = list(enumerate_graphs(0, 0, [], ()))
    assert len(gs) == 1
    assert gs[0].is_closed() and not gs[0].vertices and not gs[0].edges


def test_perfect_matchings_count():
    # (2n)! / (2^n n!) matchings of 2n points: 1, 3, 15
    for n, want in ((1, 1), (2, 3), (3, 15)):
        assert len(list(_perfect_matchings(list(range(2 * n))))) == want


def matchings_oracle(ends):
    """Second implementation: recursive generation pairing the last element."""
    if not ends:
        return [()]
    out = []
    last = ends[-1]
    for i in range(len(ends) - 1):
        pair = (ends[i], last)
        rest = ends[:i] + ends[i + 1:-1]
        out.extend(m + (pair,) for m in matchings_oracle(rest))
    return out


def test_counts_against_second_implementation(l3, l1):
    """The class counts from the matching enumerator agree with an
    independent recursive generator followed by deduplication."""
    for labels, boundary in (([l3], ()), ([l3], ("c0", "c1")), ([l3, l1], ("c0",))):
        got = list(enumerate_graphs(2, 3, labels, boundary, dedupe=True))

        # oracle: regenerate raw graphs with the independent matcher
        raw = []
        from itertools import combinations_with_replacement
        for count in range(3):
            for combo in combinations_with_replacement(labels, count):
                half = sum(l.valence for l in combo) + len(boundary)
                if half % 2 or half // 2 > 3:
                    continue
                vertices = tuple((f"v{i}", lab.id) for i, lab in enumerate(combo))
                ends = []
                for i, lab in enumerate(combo):
                    ends.extend(vend(f"v{i}", s) for s in range(lab.valence))
                ends.extend(cend(c) for c in boundary)
                for matching in matchings_oracle(tuple(ends)):
                    raw.append(LabeledGraph(labels, vertices, matching, boundary))
        classes = []
        for g in raw:
            if not any(isomorphic_rel_boundary(g, h) for h in classes):
                classes.append(g)
        assert len(got) == len(classes)


def test_closed_trivalent_two_vertices(l3):
    """By hand: the empty graph, the theta, and the barbell."""
    gs = list(enumerate_graphs(2, 3, [l3], dedupe=True))
    assert len(gs) == 3
    sizes = sorted(len(g.edges) for g in gs)
    assert sizes == [0, 3, 3]


def test_every_class_appears(l3):
    """Dedup=False yields every class at least once."""
    raw = list(enumerate_graphs(2, 3, [l3], ()))
    dedup = list(enumerate_graphs(2, 3, [l3], (), dedupe=True))
    for cls in dedup:
        assert any(isomorphic_rel_boundary(cls, g) for g in raw)


def test_boundary_parity(l3):
    """Odd total half-edge count cannot happen: one trivalent vertex with
    no boundary is skipped."""
    gs = list(enumerate_graphs(1, 3, [l3], ()))
    assert all(len(g.vertices) != 1 for g in gs)
    gs1 = list(enumerate_graphs(1, 3, [l3], ("c0",), dedupe=True))
    assert len(gs1) == 1  # vertex with one loop and one cut leg
    g = gs1[0]
    assert len(g.vertices) == 1 and len(g.edges) == 2
