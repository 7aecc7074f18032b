from itertools import permutations, product

import pytest

from diagdom.graphs import (FULL, IDENTITY, LabeledGraph, MiddleGraph, PermGroup,
                            VertexLabel, barbell_graph, cend, ordinary_label,
                            theta_graph, vend)
from diagdom.graph_iso import isomorphic_rel_boundary, permissible_permutations
from diagdom.graph_enum import enumerate_graphs


def brute_force_iso(a, b, permissible=None):
    """Independent oracle: try every vertex bijection, every slot permutation
    drawn from the symmetry groups, every permissible boundary permutation,
    and compare edge multisets literally."""
    if len(a.vertices) != len(b.vertices) or len(a.edges) != len(b.edges):
        return False
    if a.circles != b.circles or len(a.cuts) != len(b.cuts):
        return False
    a_vs = [v for v, _ in a.vertices]
    b_vs = [v for v, _ in b.vertices]
    cut_perms = [tuple(range(len(a.cuts)))]
    if permissible is not None:
        cut_perms = sorted(permissible.elements())

    def slot_groups(g, vid):
        return sorted(g.label_of(vid).group().elements())

    for perm in permutations(b_vs):
        vmap = dict(zip(a_vs, perm))
        if any(a.label_of(v).id != b.label_of(vmap[v]).id for v in a_vs):
            continue
        pools = [slot_groups(a, v) for v in a_vs]
        for sigmas in product(*pools):
            smap = dict(zip(a_vs, sigmas))
            for cp in cut_perms:
                def m(end):
                    if end[0] == "c":
                        return ("c", cp[a.cut_index(end[1])])
                    return ("v", vmap[end[1]], smap[end[1]][end[2]])

                mapped = sorted(tuple(sorted((repr(m(x)), repr(m(y))))) for x, y in a.edges)
                target = sorted(
                    tuple(sorted((repr(_plain(b, x)), repr(_plain(b, y))))) for x, y in b.edges)
                if mapped == target:
                    return True
    return False


def _plain(g, end):
    if end[0] == "c":
        return ("c", g.cut_index(end[1]))
    return ("v", end[1], end[2])


def test_reflexive(l3):
    t = theta_graph()
    w = isomorphic_rel_boundary(t, t)
    assert w is not None
    assert set(w.vertex_map) == {"x", "y"}


def test_theta_vs_barbell(l3):
    assert isomorphic_rel_boundary(theta_graph(), barbell_graph()) is None


def test_matches_brute_force_oracle(l3, l1):
    corpus = list(enumerate_graphs(2, 3, [l3, l1], ("c0",)))[:40]
    for a in corpus:
        for b in corpus:
            got = isomorphic_rel_boundary(a, b) is not None
            want = brute_force_iso(a, b)
            assert got == want


def test_matches_oracle_asymmetric(a3):
    corpus = list(enumerate_graphs(2, 3, [a3], ()))
    for a in corpus:
        for b in corpus:
            assert (isomorphic_rel_boundary(a, b) is not None) == brute_force_iso(a, b)


def test_equivalence_relation_on_corpus(l3, l1):
    corpus = list(enumerate_graphs(3, 4, [l3, l1], ("c0", "c1")))[:25]
    rel = [[isomorphic_rel_boundary(a, b) is not None for b in corpus] for a in corpus]
    n = len(corpus)
    for i in range(n):
        assert rel[i][i]
        for j in range(n):
            assert rel[i][j] == rel[j][i]
            for k in range(n):
                if rel[i][j] and rel[j][k]:
                    assert rel[i][k]


def test_slot_order_matters_for_asymmetric_labels(a3):
    g1 = LabeledGraph((a3,), (("x", a3.id),),
                      ((vend("x", 0), vend("x", 1)), (vend("x", 2), cend("c0"))), ("c0",))
    g2 = LabeledGraph((a3,), (("x", a3.id),),
                      ((vend("x", 0), vend("x", 2)), (vend("x", 1), cend("c0"))), ("c0",))
    assert isomorphic_rel_boundary(g1, g2) is None
    assert not brute_force_iso(g1, g2)


def test_witness_is_a_valid_isomorphism(l3, l1):
    corpus = list(enumerate_graphs(2, 3, [l3, l1], ("c0", "c1"), dedupe=True))
    for a in corpus:
        for b in corpus:
            w = isomorphic_rel_boundary(a, b)
            if w is None:
                continue

            def m(end):
                if end[0] == "c":
                    return ("c", w.cut_perm[a.cut_index(end[1])])
                return ("v", w.vertex_map[end[1]], w.slot_maps[end[1]][end[2]])

            mapped = sorted(tuple(sorted((repr(m(x)), repr(m(y))))) for x, y in a.edges)
            target = sorted(tuple(sorted((repr(_plain(b, x)), repr(_plain(b, y)))))
                            for x, y in b.edges)
            assert mapped == target


def test_boundary_permutation_only_when_permissible(l3):
    l1 = ordinary_label(1)
    a = LabeledGraph((l3, l1), (("x", l3.id), ("y", l1.id)),
                     ((vend("x", 0), cend("c0")), (vend("x", 1), cend("c1")),
                      (vend("x", 2), vend("y", 0))), ("c0", "c1"))
    b = LabeledGraph((l3, l1), (("x", l3.id), ("y", l1.id)),
                     ((vend("x", 0), cend("c1")), (vend("x", 1), cend("c0")),
                      (vend("x", 2), vend("y", 0))), ("c0", "c1"))
    # same graph with the two cuts swapped: isomorphic since both attach to x
    assert isomorphic_rel_boundary(a, b) is not None

    # attach the cuts to distinguishable vertices to force the swap to matter
    lw = VertexLabel("w3", 3, FULL)
    def two_pods(c_first, c_second):
        return LabeledGraph(
            (l3, lw, l1),
            (("p", l3.id), ("q", lw.id), ("u", l1.id), ("v", l1.id)),
            ((vend("p", 0), cend(c_first)), (vend("q", 0), cend(c_second)),
             (vend("p", 1), vend("p", 2)), (vend("q", 1), vend("u", 0)),
             (vend("q", 2), vend("v", 0))),
            ("c0", "c1"))

    a2 = two_pods("c0", "c1")
    b2 = two_pods("c1", "c0")
    assert isomorphic_rel_boundary(a2, b2) is None
    swap = PermGroup(2, ((1, 0),))
    assert isomorphic_rel_boundary(a2, b2, swap) is not None
    assert brute_force_iso(a2, b2, swap)


# ---------------------------------------------------------------------------
# permissible permutations of middle graphs
# ---------------------------------------------------------------------------


def strand_and_pods_middle(n_pods=3, with_strand=True):
    """One free strand plus fully symmetric 4-valent pods, each holding two
    upper and two lower cuts; permissible swaps exchange cut pairs 2-3,
    4-5, 6-7 (counting from 1)."""
    l4 = ordinary_label(4)
    verts, edges, upper, lower = [], [], [], []
    if with_strand:
        upper.append("u_s")
        lower.append("l_s")
        edges.append((cend("u_s"), cend("l_s")))
    for k in range(n_pods):
        v = f"p{k}"
        verts.append((v, l4.id))
        u1, u2, w1, w2 = f"u{k}a", f"u{k}b", f"l{k}a", f"l{k}b"
        upper += [u1, u2]
        lower += [w1, w2]
        edges += [(vend(v, 0), cend(u1)), (vend(v, 1), cend(u2)),
                  (vend(v, 2), cend(w1)), (vend(v, 3), cend(w2))]
    g = LabeledGraph((l4,), verts, edges, tuple(upper) + tuple(lower))
    return MiddleGraph(g, upper, lower)


def test_seven_cut_shape_permissible_group():
    h = strand_and_pods_middle(3, with_strand=True)
    group = permissible_permutations(h)
    assert group.order() == 8
    gens = {(0, 2, 1, 3, 4, 5, 6), (0, 1, 2, 4, 3, 5, 6), (0, 1, 2, 3, 4, 6, 5)}
    elements = group.elements()
    assert gens <= set(elements)
    # the strand position never moves
    assert all(p[0] == 0 for p in elements)


def test_identity_strands_give_identity_group():
    h = MiddleGraph.identity_strands(3)
    assert permissible_permutations(h).order() == 1


def test_asymmetric_vertices_give_identity_group(a3):
    l2 = VertexLabel("a2", 2, IDENTITY)
    g = LabeledGraph((l2,), (("x", l2.id), ("y", l2.id)),
                     ((vend("x", 0), cend("u0")), (vend("y", 0), cend("u1")),
                      (vend("x", 1), cend("l0")), (vend("y", 1), cend("l1"))),
                     ("u0", "u1", "l0", "l1"))
    h = MiddleGraph(g, ("u0", "u1"), ("l0", "l1"))
    assert permissible_permutations(h).order() == 1


def test_parallel_cut_edges_one_vertex_full_symmetric():
    k = 3
    l6 = ordinary_label(2 * k)
    edges = []
    upper = [f"u{i}" for i in range(k)]
    lower = [f"l{i}" for i in range(k)]
    for i in range(k):
        edges.append((vend("x", i), cend(upper[i])))
        edges.append((vend("x", k + i), cend(lower[i])))
    g = LabeledGraph((l6,), (("x", l6.id),), edges, tuple(upper) + tuple(lower))
    h = MiddleGraph(g, upper, lower)
    group = permissible_permutations(h)
    import math
    assert group.order() == math.factorial(k)


def test_permissible_group_closed_under_composition():
    h = strand_and_pods_middle(2, with_strand=True)
    group = permissible_permutations(h)
    els = group.elements()
    for p in els:
        for q in els:
            comp = tuple(p[q[i]] for i in range(len(p)))
            assert comp in els
        inv = tuple(sorted(range(len(p)), key=lambda i: p[i]))
        assert inv in els
