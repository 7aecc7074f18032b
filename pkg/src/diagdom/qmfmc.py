"""Quantum maxflow/mincut probe.

A network is a graph whose vertices all have the same valence with
locally ordered incident edge slots, plus k input and l output cut edges.
Inserting one shared v-index tensor W at every vertex turns the network
into a linear map from the input tensor power to the output tensor power.
The probe compares the observed rank of that map (for random W over a
large prime field) against the maxflow bound: rank is always at most
d^mincut, and injectivity (rank d^k) is conjectured for generic W when k
edge-disjoint paths exist.  The probe reports evidence only; it proves
nothing beyond the sampled instances.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .contraction import contract
from .graphs import LabeledGraph, VertexLabel, cend, vend, FULL, IDENTITY
from .linalg import rank_mod_p
from .scalars import DEFAULT_PRIME
from .tensors import Tensor, Assignment


class NetworkError(ValueError):
    pass


@dataclass
class FlowNetwork:
    """Vertices 0..n-1 of common valence; slot connections and cut slots.

    edges: ((v, slot), (w, slot)) internal connections; inputs/outputs:
    ordered lists of (v, slot) carrying the boundary cut edges.  Slots are
    ordered per vertex (no symmetry).
    """

    valence: int
    n_vertices: int
    edges: tuple
    inputs: tuple
    outputs: tuple

    def __post_init__(self):
        used = set()
        for group in (self.edges,):
            for (a, b) in group:
                for end in (a, b):
                    self._claim(end, used)
        for end in tuple(self.inputs) + tuple(self.outputs):
            self._claim(end, used)
        for v in range(self.n_vertices):
            for s in range(self.valence):
                if (v, s) not in used:
                    raise NetworkError(f"slot {s} of vertex {v} unused")

    def _claim(self, end, used):
        v, s = end
        if not (0 <= v < self.n_vertices and 0 <= s < self.valence):
            raise NetworkError(f"bad slot reference {end}")
        if end in used:
            raise NetworkError(f"slot {end} used twice")
        used.add(end)

    def to_labeled_graph(self) -> LabeledGraph:
        lab = VertexLabel("W", self.valence, IDENTITY)
        vertices = [(f"n{v}", "W") for v in range(self.n_vertices)]
        edges = [(vend(f"n{a[0]}", a[1]), vend(f"n{b[0]}", b[1])) for a, b in self.edges]
        cuts = []
        for i, (v, s) in enumerate(self.inputs):
            cid = f"in{i}"
            cuts.append(cid)
            edges.append((vend(f"n{v}", s), cend(cid)))
        for i, (v, s) in enumerate(self.outputs):
            cid = f"out{i}"
            cuts.append(cid)
            edges.append((vend(f"n{v}", s), cend(cid)))
        return LabeledGraph((lab,), vertices, edges, cuts)


def maxflow(net: FlowNetwork) -> int:
    """Maximum number of edge-disjoint input->output paths (unit capacities
    on all connections, including through-vertex passage is NOT limited:
    flow travels along edges; vertices are free)."""
    # classical augmenting paths on the undirected edge set with unit
    # capacities per edge; super-source feeds input slots' vertices.
    cap: dict = {}

    def add(u, w):
        cap[(u, w)] = cap.get((u, w), 0) + 1
        cap.setdefault((w, u), 0)

    for (a, b) in net.edges:
        add(("v", a[0]), ("v", b[0]))
        add(("v", b[0]), ("v", a[0]))
    for (v, _s) in net.inputs:
        add("S", ("v", v))
    for (v, _s) in net.outputs:
        add(("v", v), "T")

    flow = 0
    while True:
        # BFS for an augmenting path
        parent = {"S": None}
        queue = ["S"]
        while queue and "T" not in parent:
            u = queue.pop(0)
            for (x, y), c in cap.items():
                if x == u and c > 0 and y not in parent:
                    parent[y] = (u, (x, y))
                    queue.append(y)
        if "T" not in parent:
            return flow
        node = "T"
        while parent[node] is not None:
            u, e = parent[node]
            cap[e] -= 1
            cap[(e[1], e[0])] += 1
            node = u
        flow += 1


def theta_matrix(net: FlowNetwork, w: Tensor, p: int = DEFAULT_PRIME):
    """Matrix of the induced map (rows: output multi-indices, columns:
    input multi-indices) over Z/p."""
    graph = net.to_labeled_graph()
    assignment = Assignment(w.dims[0] if w.dims else 1, {"W": w},
                            check_symmetry=False)
    t = contract(graph, assignment, p=p)
    d = assignment.d
    k, l = len(net.inputs), len(net.outputs)
    # free axes come out in cut order: inputs first, then outputs
    mat = np.transpose(t.data, axes=list(range(k, k + l)) + list(range(k)))
    return mat.reshape(d ** l, d ** k)


@dataclass
class ProbeReport:
    maxflow: int
    mincut_rank_bound: int
    ranks: list
    d: int
    k: int
    seed: int
    verdict: str
    note: str = "statistical evidence only; no proof claim"


def qmfmc_probe(net: FlowNetwork, d: int, trials: int = 8, seed: int = 0,
                p: int = DEFAULT_PRIME) -> ProbeReport:
    """Sample random tensors over Z/p and compare observed ranks with the
    flow bounds."""
    rng = random.Random(seed)
    mf = maxflow(net)
    k = len(net.inputs)
    bound = d ** min(mf, k)
    ranks = []
    for _ in range(trials):
        data = np.empty((d,) * net.valence, dtype=object)
        for idx in product(range(d), repeat=net.valence):
            data[idx] = rng.randrange(p)
        w = Tensor(data)
        mat = theta_matrix(net, w, p)
        r = rank_mod_p([[int(x) for x in row] for row in mat], p)
        if r > bound:
            raise AssertionError("rank exceeded the mincut bound; impossible")
        ranks.append(r)
    full = d ** k
    if mf >= k and all(r == full for r in ranks):
        verdict = "injective in every trial (consistent with the conjecture)"
    elif mf < k:
        verdict = f"flow bottleneck {mf} < {k}; rank capped at d^{mf}"
    else:
        verdict = "rank fell short in some trials"
    return ProbeReport(mf, bound, ranks, d, k, seed, verdict)


# ---------------------------------------------------------------------------
# generators for probe corpora
# ---------------------------------------------------------------------------


def path_network(length: int = 2) -> FlowNetwork:
    """k = 1: a simple chain of 2-valent vertices."""
    edges = tuple(((v, 1), (v + 1, 0)) for v in range(length - 1))
    return FlowNetwork(2, length, edges, ((0, 0),), ((length - 1, 1),))


def bottleneck_network(k: int = 2) -> FlowNetwork:
    """k inputs forced through a single middle vertex: mincut 1 via slots.

    Vertices: k collectors with all inputs... simplest: one (k+1)-valent
    funnel vertex with k inputs and one internal edge to a matching fan-out.
    """
    val = k + 1
    edges = (((0, k), (1, k)),)
    inputs = tuple((0, s) for s in range(k))
    outputs = tuple((1, s) for s in range(k))
    return FlowNetwork(val, 2, edges, inputs, outputs)


def layered_monotone_network(k: int, depth: int, rng: random.Random) -> FlowNetwork:
    """Monotone network: layers of k vertices, each vertex 2-valent-in and
    2-valent-out is overkill; use valence 2 with straight wiring plus a
    random permutation between layers (level sets never shrink)."""
    val = 2
    n = k * depth
    edges = []
    for layer in range(depth - 1):
        perm = list(range(k))
        rng.shuffle(perm)
        for i in range(k):
            a = layer * k + i
            b = (layer + 1) * k + perm[i]
            edges.append(((a, 1), (b, 0)))
    inputs = tuple((i, 0) for i in range(k))
    outputs = tuple(((depth - 1) * k + i, 1) for i in range(k))
    return FlowNetwork(val, n, tuple(edges), inputs, outputs)


def random_network(rng: random.Random, valence: int = 3, layers: int = 3,
                   width: int = 2) -> FlowNetwork:
    """Random layered network with a common valence: consecutive layers get
    a random slot matching, first-layer leftovers are inputs, last-layer
    leftovers are outputs, and other leftovers pair up internally."""
    n = layers * width
    free = {(v, s) for v in range(n) for s in range(valence)}
    edges = []
    for layer in range(layers - 1):
        here = sorted(s for s in free if layer * width <= s[0] < (layer + 1) * width)
        there = sorted(s for s in free if (layer + 1) * width <= s[0] < (layer + 2) * width)
        rng.shuffle(here)
        rng.shuffle(there)
        for a, b in zip(here[:width], there[:width]):
            edges.append((a, b))
            free.discard(a)
            free.discard(b)
    inputs = sorted(s for s in free if s[0] < width)
    outputs = sorted(s for s in free if s[0] >= (layers - 1) * width)
    middle = sorted(free - set(inputs) - set(outputs))
    rng.shuffle(middle)
    if len(middle) % 2:
        outputs.append(middle.pop())
    while middle:
        edges.append((middle.pop(), middle.pop()))
    if not inputs or not outputs:
        raise NetworkError("degenerate random network (no boundary)")
    return FlowNetwork(valence, n, tuple(edges), tuple(inputs), tuple(outputs))
