"""Labeled multigraphs with boundary cut points.

A graph carries vertices with labels (each label fixes a valence and a
symmetry group on its slots), a multiset of edges between vertex slots
and/or cut points, an ordered list of cut points forming the boundary,
and a count of closed vertex-free circle components (these arise when
chains of doubly cut edges close up under gluing).

Endpoint encoding: ("v", vertex_id, slot) or ("c", cut_id).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import permutations


class GraphError(ValueError):
    """Malformed graph data or an illegal operation on graphs."""


# ---------------------------------------------------------------------------
# permutation groups on {0..n-1}
# ---------------------------------------------------------------------------

IDENTITY = "identity"
FULL = "full"


class PermGroup:
    """Small permutation group given by generators; closure is enumerated."""

    def __init__(self, degree: int, generators=()):
        self.degree = degree
        gens = []
        for g in generators:
            g = tuple(g)
            if sorted(g) != list(range(degree)):
                raise GraphError(f"generator {g} is not a permutation of 0..{degree - 1}")
            gens.append(g)
        self.generators = tuple(gens)
        self._elements = None

    @classmethod
    def identity(cls, degree: int) -> "PermGroup":
        return cls(degree, ())

    @classmethod
    def full(cls, degree: int) -> "PermGroup":
        return cls(degree, _symmetric_generators(degree))

    def elements(self):
        if self._elements is None:
            ident = tuple(range(self.degree))
            seen = {ident}
            frontier = [ident]
            while frontier:
                nxt = []
                for e in frontier:
                    for g in self.generators:
                        h = tuple(e[g[i]] for i in range(self.degree))
                        if h not in seen:
                            seen.add(h)
                            nxt.append(h)
                frontier = nxt
            self._elements = frozenset(seen)
        return self._elements

    def __contains__(self, perm) -> bool:
        return tuple(perm) in self.elements()

    def order(self) -> int:
        return len(self.elements())

    def is_identity_only(self) -> bool:
        return not self.generators or self.order() == 1

    def __repr__(self):
        return f"PermGroup(degree={self.degree}, order={self.order()})"


def _symmetric_generators(n: int):
    if n <= 1:
        return ()
    if n == 2:
        return ((1, 0),)
    return ((1, 0) + tuple(range(2, n)), tuple(range(1, n)) + (0,))


# ---------------------------------------------------------------------------
# labels and graphs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class VertexLabel:
    """Vertex type: an id, a valence, and a symmetry group on slots 0..valence-1.

    `symmetry` is "identity", "full", or a tuple of generator permutations.
    """

    id: str
    valence: int
    symmetry: object = IDENTITY

    def __post_init__(self):
        if self.valence < 0:
            raise GraphError("valence must be non-negative")
        if self.symmetry not in (IDENTITY, FULL):
            gens = tuple(tuple(g) for g in self.symmetry)
            for g in gens:
                if sorted(g) != list(range(self.valence)):
                    raise GraphError(f"symmetry generator {g} invalid for valence {self.valence}")
            object.__setattr__(self, "symmetry", gens)

    def symmetry_kind(self) -> str:
        if self.symmetry == IDENTITY:
            return IDENTITY
        if self.symmetry == FULL:
            return FULL
        return "explicit"

    def group(self) -> PermGroup:
        if self.symmetry == IDENTITY:
            return PermGroup.identity(self.valence)
        if self.symmetry == FULL:
            return PermGroup.full(self.valence)
        return PermGroup(self.valence, self.symmetry)


def vend(vertex_id, slot):
    return ("v", vertex_id, slot)

def cend(cut_id):
    return ("c", cut_id)


def _end_key(e):
    return (e[0], repr(e[1]), e[2] if e[0] == "v" else -1)


def _norm_edge(e):
    a, b = e
    return (a, b) if _end_key(a) <= _end_key(b) else (b, a)


class LabeledGraph:
    """Immutable labeled multigraph with ordered boundary cut points."""

    __slots__ = ("labels", "vertices", "edges", "cuts", "circles", "_by_vid")

    def __init__(self, labels, vertices, edges, cuts=(), circles=0):
        if isinstance(labels, dict):
            labels = tuple(labels.values())
        self.labels = {l.id: l for l in labels}
        if len(self.labels) != len(labels):
            raise GraphError("duplicate label ids")
        self.vertices = tuple((vid, lab) for vid, lab in vertices)
        self._by_vid = dict(self.vertices)
        if len(self._by_vid) != len(self.vertices):
            raise GraphError("duplicate vertex ids")
        for vid, lab in self.vertices:
            if lab not in self.labels:
                raise GraphError(f"vertex {vid!r} has unknown label {lab!r}")
        self.edges = tuple(sorted((_norm_edge(tuple(e)) for e in edges), key=lambda e: (_end_key(e[0]), _end_key(e[1]))))
        self.cuts = tuple(cuts)
        if circles < 0:
            raise GraphError("negative circle count")
        self.circles = int(circles)
        self._validate()

    def _validate(self):
        slot_use: dict = {}
        cut_use: dict = {}
        for e in self.edges:
            for end in e:
                if end[0] == "v":
                    _, vid, slot = end
                    if vid not in self._by_vid:
                        raise GraphError(f"edge endpoint references unknown vertex {vid!r}")
                    val = self.labels[self._by_vid[vid]].valence
                    if not (0 <= slot < val):
                        raise GraphError(f"slot {slot} out of range for vertex {vid!r} (valence {val})")
                    slot_use[(vid, slot)] = slot_use.get((vid, slot), 0) + 1
                elif end[0] == "c":
                    cut_use[end[1]] = cut_use.get(end[1], 0) + 1
                else:
                    raise GraphError(f"bad endpoint {end!r}")
        for vid, lab in self.vertices:
            for s in range(self.labels[lab].valence):
                if slot_use.get((vid, s), 0) != 1:
                    raise GraphError(f"slot {s} of vertex {vid!r} used {slot_use.get((vid, s), 0)} times")
        if len(set(self.cuts)) != len(self.cuts):
            raise GraphError("duplicate cut ids")
        for c in self.cuts:
            if cut_use.get(c, 0) != 1:
                raise GraphError(f"cut point {c!r} used {cut_use.get(c, 0)} times")
        for c in cut_use:
            if c not in self.cuts:
                raise GraphError(f"edge references unlisted cut point {c!r}")

    # -- basic queries ------------------------------------------------------

    def label_of(self, vid) -> VertexLabel:
        return self.labels[self._by_vid[vid]]

    def is_closed(self) -> bool:
        return not self.cuts

    def edge_count(self) -> int:
        """Number of edges, circles included."""
        return len(self.edges) + self.circles

    def cut_index(self, cut_id) -> int:
        return self.cuts.index(cut_id)

    def doubly_cut_edges(self):
        return tuple(e for e in self.edges if e[0][0] == "c" and e[1][0] == "c")

    def vertex_ids(self):
        return tuple(vid for vid, _ in self.vertices)

    def components(self):
        """Partition of vertex ids into connected components (cut-joined ends
        do not connect; circles are not listed)."""
        parent = {vid: vid for vid, _ in self.vertices}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in self.edges:
            ends = [end[1] for end in e if end[0] == "v"]
            if len(ends) == 2:
                ra, rb = find(ends[0]), find(ends[1])
                if ra != rb:
                    parent[ra] = rb
        groups: dict = {}
        for vid, _ in self.vertices:
            groups.setdefault(find(vid), []).append(vid)
        return tuple(tuple(g) for g in groups.values())

    def relabel(self, prefix: str) -> "LabeledGraph":
        """Namespace vertex and cut ids (labels untouched)."""
        vmap = {vid: f"{prefix}{vid}" for vid, _ in self.vertices}
        cmap = {c: f"{prefix}{c}" for c in self.cuts}

        def m(end):
            return ("v", vmap[end[1]], end[2]) if end[0] == "v" else ("c", cmap[end[1]])

        return LabeledGraph(
            tuple(self.labels.values()),
            tuple((vmap[v], l) for v, l in self.vertices),
            tuple((m(a), m(b)) for a, b in self.edges),
            tuple(cmap[c] for c in self.cuts),
            self.circles,
        )

    def __repr__(self):
        return (f"LabeledGraph(V={len(self.vertices)}, E={len(self.edges)}, "
                f"cuts={len(self.cuts)}, circles={self.circles})")

    # -- serialization ------------------------------------------------------

    def to_json_obj(self):
        def end_obj(end):
            if end[0] == "v":
                return {"v": end[1], "slot": end[2]}
            return {"cut": end[1]}

        labels = []
        for l in self.labels.values():
            sym = l.symmetry if l.symmetry in (IDENTITY, FULL) else [list(g) for g in l.symmetry]
            labels.append({"id": l.id, "valence": l.valence, "symmetry": sym})
        obj = {
            "labels": labels,
            "vertices": [{"id": v, "label": l} for v, l in self.vertices],
            "edges": [[end_obj(a), end_obj(b)] for a, b in self.edges],
            "cuts": list(self.cuts),
        }
        if self.circles:
            obj["circles"] = self.circles
        return obj

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True)

    @classmethod
    def from_json_obj(cls, obj) -> "LabeledGraph":
        try:
            labels = []
            for l in obj["labels"]:
                sym = l.get("symmetry", IDENTITY)
                if isinstance(sym, list):
                    sym = tuple(tuple(g) for g in sym)
                labels.append(VertexLabel(l["id"], l["valence"], sym))
            vertices = [(v["id"], v["label"]) for v in obj["vertices"]]

            def end(o):
                if "cut" in o:
                    return cend(o["cut"])
                return vend(o["v"], o["slot"])

            edges = [(end(a), end(b)) for a, b in obj["edges"]]
            return cls(labels, vertices, edges, tuple(obj.get("cuts", ())), obj.get("circles", 0))
        except (KeyError, TypeError) as exc:
            raise GraphError(f"malformed graph object: {exc}") from exc

    @classmethod
    def from_json(cls, text: str) -> "LabeledGraph":
        return cls.from_json_obj(json.loads(text))


class MiddleGraph:
    """A graph sandwiched between two boundary copies, with a reflection.

    `upper` and `lower` are ordered cut lists, each positionally identified
    with the common boundary; the reflection pairs upper[k] with lower[k],
    fixes every vertex, and must map the edge multiset to itself.  Extra
    `horizontal` cuts (not swapped by the reflection) take vector inputs
    when the operator of the middle graph is formed.
    """

    __slots__ = ("graph", "upper", "lower", "horizontal")

    def __init__(self, graph: LabeledGraph, upper, lower, horizontal=()):
        self.graph = graph
        self.upper = tuple(upper)
        self.lower = tuple(lower)
        self.horizontal = tuple(horizontal)
        if len(self.upper) != len(self.lower):
            raise GraphError("upper/lower cut lists differ in length")
        all_cuts = self.upper + self.lower + self.horizontal
        if sorted(all_cuts, key=repr) != sorted(graph.cuts, key=repr):
            raise GraphError("upper+lower+horizontal must exhaust the cut points")
        if len(set(all_cuts)) != len(all_cuts):
            raise GraphError("upper/lower/horizontal lists overlap")
        self._check_involution()

    def _check_involution(self):
        """The positional upper/lower swap must extend to an automorphism
        fixing every vertex, with slot permutations inside symmetry groups."""
        g = self.graph
        iota = {}
        for u, l in zip(self.upper, self.lower):
            iota[u] = l
            iota[l] = u
        for h in self.horizontal:
            iota[h] = h

        explicit = [vid for vid, _ in g.vertices if g.label_of(vid).symmetry_kind() == "explicit"]
        sigma_pools = [sorted(g.label_of(v).group().elements()) for v in explicit]

        def keys(sigmas):
            sig = dict(zip(explicit, sigmas))

            def end_key(end, mapped):
                if end[0] == "c":
                    return ("c", iota[end[1]] if mapped else end[1])
                _, vid, slot = end
                kind = g.label_of(vid).symmetry_kind()
                if kind == FULL:
                    return ("v", vid, None)
                if kind == "explicit" and mapped:
                    return ("v", vid, sig[vid][slot])
                return ("v", vid, slot)

            orig, img = [], []
            for a, b in g.edges:
                orig.append(tuple(sorted((end_key(a, False), end_key(b, False)))))
                img.append(tuple(sorted((end_key(a, True), end_key(b, True)))))
            return sorted(orig), sorted(img)

        from itertools import product as _product
        for sigmas in _product(*sigma_pools) if explicit else ((),):
            orig, img = keys(sigmas)
            if orig == img:
                return
        raise GraphError("reflection does not extend to an automorphism fixing the vertices")

    def boundary_size(self) -> int:
        return len(self.upper)

    @classmethod
    def identity_strands(cls, c: int) -> "MiddleGraph":
        """The trivial middle: one doubly cut strand per boundary position."""
        upper = tuple(f"u{i}" for i in range(c))
        lower = tuple(f"l{i}" for i in range(c))
        edges = [(cend(u), cend(l)) for u, l in zip(upper, lower)]
        g = LabeledGraph((), (), edges, upper + lower)
        return cls(g, upper, lower)


# ---------------------------------------------------------------------------
# gluing
# ---------------------------------------------------------------------------


def glue_along_cuts(a: LabeledGraph, b: LabeledGraph) -> LabeledGraph:
    """Glue two graphs along their boundaries, identified positionally.

    Cut edges are joined at matching cut points; chains of doubly cut
    edges compose transitively, and fully closed chains become circles.
    """
    if len(a.cuts) != len(b.cuts):
        raise GraphError(f"cut count mismatch: {len(a.cuts)} vs {len(b.cuts)}")
    ra, rb = a.relabel("A."), b.relabel("B.")
    _merge_labels_check(a, b)
    ports = {}
    for i, (ca, cb) in enumerate(zip(ra.cuts, rb.cuts)):
        ports[ca] = i
        ports[cb] = i
    return _fuse([ra, rb], ports, ())


def glue_middle(a: LabeledGraph, h: MiddleGraph, b: LabeledGraph) -> LabeledGraph:
    """Glue a to the upper boundary of h and b to the lower boundary."""
    c = h.boundary_size()
    if len(a.cuts) != c or len(b.cuts) != c:
        raise GraphError("boundary size mismatch with the middle graph")
    if h.horizontal:
        raise GraphError("cannot close a middle graph with horizontal cuts")
    ra, rh, rb = a.relabel("A."), h.graph.relabel("H."), b.relabel("B.")
    _merge_labels_check(a, h.graph)
    _merge_labels_check(b, h.graph)
    _merge_labels_check(a, b)
    ports = {}
    for i in range(c):
        ports[ra.cuts[i]] = ("u", i)
        ports[f"H.{h.upper[i]}"] = ("u", i)
        ports[rb.cuts[i]] = ("l", i)
        ports[f"H.{h.lower[i]}"] = ("l", i)
    return _fuse([ra, rh, rb], ports, ())


def _merge_labels_check(a: LabeledGraph, b: LabeledGraph):
    for lid, lab in a.labels.items():
        other = b.labels.get(lid)
        if other is not None and other != lab:
            raise GraphError(f"label {lid!r} means different things in the two graphs")


def _fuse(graphs, ports, free_cuts) -> LabeledGraph:
    """Join relabeled graphs at shared ports; each port joins exactly two ends.

    Edges through ports form a 1-manifold: its arc components become edges
    between concrete endpoints and its circle components become circles.
    """
    labels: dict = {}
    vertices = []
    edges = []
    circles = 0
    for g in graphs:
        labels.update(g.labels)
        vertices.extend(g.vertices)
        circles += g.circles
        for e in g.edges:
            resolved = tuple(
                ("p", ports[end[1]]) if end[0] == "c" and end[1] in ports else end
                for end in e
            )
            edges.append(resolved)

    plain = [e for e in edges if all(end[0] != "p" for end in e)]
    chain = [e for e in edges if any(end[0] == "p" for end in e)]

    # pair up edge-ends at each port
    at_port: dict = {}
    for ei, e in enumerate(chain):
        for side in (0, 1):
            if e[side][0] == "p":
                at_port.setdefault(e[side][1], []).append((ei, side))
    for p, ends in at_port.items():
        if len(ends) != 2:
            raise GraphError(f"port {p!r} joins {len(ends)} edge ends")
    partner = {}
    for (x, y) in at_port.values():
        partner[x] = y
        partner[y] = x

    final_edges = []
    visited = set()

    def walk(ei, side):
        """From the concrete end (ei, side), walk through ports to the far end."""
        cur = (ei, 1 - side)
        while True:
            visited.add(cur[0])
            end = chain[cur[0]][cur[1]]
            if end[0] != "p":
                return end
            nxt = partner[cur]
            cur = (nxt[0], 1 - nxt[1])

    for ei, e in enumerate(chain):
        if ei in visited:
            continue
        for side in (0, 1):
            if e[side][0] != "p":
                visited.add(ei)
                final_edges.append((e[side], walk(ei, side)))
                break

    # whatever is left consists of circles
    for ei, e in enumerate(chain):
        if ei in visited:
            continue
        circles += 1
        cur = (ei, 0)
        while cur[0] not in visited:
            visited.add(cur[0])
            nxt = partner[(cur[0], 1 - cur[1])]
            cur = nxt

    final_edges.extend(plain)
    return LabeledGraph(tuple(labels.values()), vertices, final_edges, free_cuts, circles)


# ---------------------------------------------------------------------------
# convenience constructors used all over the test corpus
# ---------------------------------------------------------------------------


def ordinary_label(valence: int) -> VertexLabel:
    """The fully symmetric label of a given valence, named by the valence."""
    return VertexLabel(f"v{valence}", valence, FULL)


def theta_graph(label=None) -> LabeledGraph:
    lab = label or ordinary_label(3)
    return LabeledGraph(
        (lab,), (("x", lab.id), ("y", lab.id)),
        ((vend("x", 0), vend("y", 0)), (vend("x", 1), vend("y", 1)), (vend("x", 2), vend("y", 2))),
    )


def barbell_graph(label=None) -> LabeledGraph:
    lab = label or ordinary_label(3)
    return LabeledGraph(
        (lab,), (("x", lab.id), ("y", lab.id)),
        ((vend("x", 0), vend("x", 1)), (vend("x", 2), vend("y", 2)), (vend("y", 0), vend("y", 1))),
    )


def tetrahedron_graph(label=None) -> LabeledGraph:
    lab = label or ordinary_label(3)
    vs = ["p", "q", "r", "s"]
    slots = {v: 0 for v in vs}
    edges = []
    for i in range(4):
        for j in range(i + 1, 4):
            edges.append((vend(vs[i], slots[vs[i]]), vend(vs[j], slots[vs[j]])))
            slots[vs[i]] += 1
            slots[vs[j]] += 1
    return LabeledGraph((lab,), tuple((v, lab.id) for v in vs), edges)


def single_loop() -> LabeledGraph:
    """One circle, no vertices."""
    return LabeledGraph((), (), (), (), circles=1)


def empty_graph() -> LabeledGraph:
    return LabeledGraph((), (), ())
