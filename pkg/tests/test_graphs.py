import pytest

from diagdom.graphs import (FULL, GraphError, LabeledGraph, MiddleGraph,
                            VertexLabel, barbell_graph, cend, empty_graph,
                            glue_along_cuts, glue_middle, ordinary_label,
                            single_loop, tetrahedron_graph, theta_graph, vend)
from diagdom.graph_iso import isomorphic_rel_boundary


def one_legged(l1, vid="x", cut="c0"):
    return LabeledGraph((l1,), ((vid, l1.id),), ((vend(vid, 0), cend(cut)),), (cut,))


def test_slot_bookkeeping_enforced(l3):
    with pytest.raises(GraphError):
        LabeledGraph((l3,), (("x", l3.id),), ((vend("x", 0), vend("x", 1)),))
    with pytest.raises(GraphError):  # slot used twice
        LabeledGraph((l3,), (("x", l3.id),),
                     ((vend("x", 0), vend("x", 0)), (vend("x", 1), vend("x", 2))))


def test_cut_bookkeeping_enforced(l1):
    with pytest.raises(GraphError):  # cut never used
        LabeledGraph((l1,), (("x", l1.id),), ((vend("x", 0), cend("c0")),), ("c0", "c1"))
    with pytest.raises(GraphError):  # cut used twice
        LabeledGraph((), (), ((cend("c0"), cend("c0")),), ("c0",))


def test_glue_one_valent_pair(l1):
    g = glue_along_cuts(one_legged(l1), one_legged(l1))
    assert g.is_closed() and len(g.edges) == 1 and len(g.vertices) == 2
    ends = {e[0] for e in g.edges} | {e[1] for e in g.edges}
    assert all(e[0] == "v" for e in ends)


def test_glue_doubly_cut_edges_make_circle():
    arc = LabeledGraph((), (), ((cend("c0"), cend("c1")),), ("c0", "c1"))
    g = glue_along_cuts(arc, arc)
    assert g.is_closed() and g.circles == 1 and not g.edges
    assert g.edge_count() == 1


def test_glue_cut_count_mismatch(l1):
    with pytest.raises(GraphError):
        glue_along_cuts(one_legged(l1), empty_graph())


def test_glue_commutes_up_to_iso(l3, l1):
    from diagdom.graph_enum import enumerate_graphs

    corpus = list(enumerate_graphs(2, 3, [l3, l1], ("c0", "c1"), dedupe=True))
    for a in corpus[:6]:
        for b in corpus[:6]:
            ab = glue_along_cuts(a, b)
            ba = glue_along_cuts(b, a)
            assert isomorphic_rel_boundary(ab, ba) is not None


def test_glue_middle_identity_strands_is_plain_glue(l3):
    h = MiddleGraph.identity_strands(2)
    from diagdom.graph_enum import enumerate_graphs

    corpus = list(enumerate_graphs(2, 3, [l3], ("c0", "c1"), dedupe=True))
    for a in corpus:
        for b in corpus:
            assert isomorphic_rel_boundary(
                glue_middle(a, h, b), glue_along_cuts(a, b)) is not None


def test_glue_middle_symmetric_double_admits_reflection(l3, l1):
    l4 = ordinary_label(4)
    g = LabeledGraph((l4,), (("p", l4.id),),
                     ((vend("p", 0), cend("u0")), (vend("p", 1), cend("u1")),
                      (vend("p", 2), cend("l0")), (vend("p", 3), cend("l1"))),
                     ("u0", "u1", "l0", "l1"))
    h = MiddleGraph(g, ("u0", "u1"), ("l0", "l1"))
    a = LabeledGraph((l3, l1), (("x", l3.id), ("y", l1.id)),
                     ((vend("x", 0), cend("c0")), (vend("x", 1), cend("c1")),
                      (vend("x", 2), vend("y", 0))), ("c0", "c1"))
    aha = glue_middle(a, h, a)
    # the doubled graph is isomorphic to itself with the two copies swapped
    assert isomorphic_rel_boundary(aha, aha) is not None
    assert len(aha.vertices) == 2 * len(a.vertices) + 1


def test_middle_graph_validation(l3):
    g = LabeledGraph((), (), ((cend("u0"), cend("l0")),), ("u0", "l0"))
    MiddleGraph(g, ("u0",), ("l0",))
    with pytest.raises(GraphError):
        MiddleGraph(g, ("u0",), ())
    # reflection must preserve edges: an arc joining the two uppers of a
    # 2-cut middle cannot be matched on the lower side
    g2 = LabeledGraph((), (), ((cend("u0"), cend("u1")), (cend("l0"), cend("l1"))),
                      ("u0", "u1", "l0", "l1"))
    MiddleGraph(g2, ("u0", "u1"), ("l0", "l1"))  # fine: arcs map to each other
    g3 = LabeledGraph((), (), ((cend("u0"), cend("l1")), (cend("u1"), cend("l0"))),
                      ("u0", "u1", "l0", "l1"))
    MiddleGraph(g3, ("u0", "u1"), ("l0", "l1"))  # crossed arcs also reflection-closed


def test_json_round_trip(l3):
    for g in (theta_graph(), barbell_graph(), tetrahedron_graph(), single_loop()):
        back = LabeledGraph.from_json(g.to_json())
        assert isomorphic_rel_boundary(g, back) is not None
        assert back.circles == g.circles


def test_json_malformed():
    with pytest.raises(GraphError):
        LabeledGraph.from_json('{"vertices": [{"id": "x"}]}')


def test_explicit_symmetry_label_validation():
    VertexLabel("r", 3, ((1, 2, 0),))
    with pytest.raises(GraphError):
        VertexLabel("r", 3, ((1, 1, 0),))
    with pytest.raises(GraphError):
        VertexLabel("r", -1, FULL)
