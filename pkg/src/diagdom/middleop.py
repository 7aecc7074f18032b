"""Middle-graph operators, invariant subspaces, and positivity checks.

The operator of a middle graph maps the tensor space of the lower cuts
to that of the upper cuts (identified by the reflection).  Positivity is
certified on the subspace invariant under the permissible boundary
permutations, via the criterion of all leading principal minors positive.
Vertex tensors built from coincidence weighting make the operator
positive there; a weak weighting schedule at a small base does not.
"""

from __future__ import annotations

from itertools import product

import numpy as np

from .coincidence import weighted_entry
from .contraction import contract
from .graphs import GraphError, LabeledGraph, MiddleGraph
from .graph_iso import permissible_permutations
from .linalg import sylvester_positive
from .scalars import Infinitesimal
from .tensors import Assignment, Tensor, TensorError, _stable_rng, _orbit_rep

TOWER_VALENCE_CAP = 4  # tower weights at valence 5+ exceed desk-scale integers


def weighted_assignment(labels, d: int, base: int = 1 << 16, growth: str = "tower",
                        perturb: bool = False, seed: int = 0) -> Assignment:
    """Coincidence-weighted tensors for every label, optionally perturbed.

    Perturbation adds a fresh infinitesimal per entry orbit, keeping the
    label symmetry and leaving all order comparisons decided by the
    unperturbed weights first.
    """
    labels = {l.id: l for l in labels}
    tensors = {}
    for lid in sorted(labels):
        lab = labels[lid]
        if growth == "tower" and lab.valence > TOWER_VALENCE_CAP:
            raise TensorError(
                f"tower weights at valence {lab.valence} are astronomically large; "
                f"use a weaker growth or valence <= {TOWER_VALENCE_CAP}")
        rng = _stable_rng(seed, "weighted", lid, d, base, growth)
        orbit_eps: dict = {}

        def entry(idx, lab=lab, rng=rng, orbit_eps=orbit_eps):
            w = weighted_entry(idx, base, d, growth)
            if not perturb:
                return w
            rep = _orbit_rep(idx, lab)
            if rep not in orbit_eps:
                orbit_eps[rep] = rng.randrange(1, 1 << 30)
            return Infinitesimal(w, orbit_eps[rep])

        tensors[lid] = Tensor.from_function((d,) * lab.valence, entry)
    return Assignment(d, tensors, check_symmetry=False, labels=labels)


def _default_inputs(h: MiddleGraph, d: int):
    return {c: [1] * d for c in h.horizontal}


def _check_cone(inputs):
    for cid, vec in inputs.items():
        for v in vec:
            value = v.a if isinstance(v, Infinitesimal) else v
            if value < 0:
                raise TensorError(f"input at {cid!r} leaves the non-negative cone")


def middle_operator(h: MiddleGraph, assignment: Assignment, horizontal_inputs=None,
                    require_cone: bool = True):
    """Matrix of the contracted middle graph: lower space -> upper space.

    Rows and columns are indexed by multi-indices over the upper and lower
    cuts (row-major, boundary order); the reflection identifies the two.
    Horizontal cuts must receive input vectors (all-ones by default); with
    require_cone they are checked to lie in the non-negative cone.
    """
    d = assignment.d
    inputs = dict(horizontal_inputs) if horizontal_inputs is not None else _default_inputs(h, d)
    if set(inputs) != set(h.horizontal):
        raise GraphError("horizontal inputs must cover exactly the horizontal cuts")
    if require_cone:
        _check_cone(inputs)
    t = contract(h.graph, assignment, inputs=inputs)
    free = [c for c in h.graph.cuts if c not in inputs]
    pos = {c: i for i, c in enumerate(free)}
    perm = [pos[c] for c in h.upper] + [pos[c] for c in h.lower]
    data = np.transpose(t.data, axes=perm)
    c = h.boundary_size()
    rows = d ** c
    return data.reshape(rows, rows)


def invariant_orbits(group, d: int, c: int):
    """Orbits of multi-indices in {0..d-1}^c under boundary permutations."""
    elements = sorted(group.elements())
    seen = set()
    orbits = []
    for idx in product(range(d), repeat=c):
        if idx in seen:
            continue
        orb = {tuple(idx[g[i]] for i in range(c)) for g in elements}
        seen |= orb
        orbits.append(sorted(orb))
    return orbits


def restrict_to_invariants(matrix, orbits, d: int, c: int):
    """Congruence of the matrix onto orbit-sum vectors (unnormalized).

    Restriction of a positive operator is positive and orbit sums span the
    invariant subspace, so the verdict matches the restriction itself.
    """
    def flat(idx):
        out = 0
        for x in idx:
            out = out * d + x
        return out

    n = len(orbits)
    out = [[0] * n for _ in range(n)]
    for a, oa in enumerate(orbits):
        for b, ob in enumerate(orbits):
            acc = 0
            for u in oa:
                fu = flat(u)
                for l in ob:
                    acc = acc + matrix[fu, flat(l)]
            out[a][b] = acc
    return out


def middle_components(h: MiddleGraph):
    """Split a middle graph into its connected components (middle graphs).

    The reflection fixes vertices, so components are reflection-closed;
    pure strand components (doubly cut edges only) are returned too.
    """
    g = h.graph
    comp_of_vertex: dict = {}
    for k, comp in enumerate(g.components()):
        for vid in comp:
            comp_of_vertex[vid] = k
    n_vcomps = len(g.components())

    # assign each edge to a component: vertex component, or its own strand
    groups: dict = {}
    strand_id = n_vcomps
    for e in g.edges:
        vids = [end[1] for end in e if end[0] == "v"]
        if vids:
            key = comp_of_vertex[vids[0]]
        else:
            key = strand_id
            strand_id += 1
        groups.setdefault(key, []).append(e)
    for vid in comp_of_vertex:
        groups.setdefault(comp_of_vertex[vid], [])

    out = []
    for key in sorted(groups):
        edges = groups[key]
        vids = {end[1] for e in edges for end in e if end[0] == "v"}
        if key < n_vcomps:
            vids |= set(g.components()[key])
        cuts_here = [end[1] for e in edges for end in e if end[0] == "c"]
        upper = tuple(c for c in h.upper if c in cuts_here)
        lower = tuple(c for c in h.lower if c in cuts_here)
        horiz = tuple(c for c in h.horizontal if c in cuts_here)
        up_set = set(upper)
        if {h.lower[h.upper.index(u)] for u in upper} != set(lower):
            raise GraphError("component is not reflection-closed")
        sub_lower = tuple(h.lower[h.upper.index(u)] for u in upper)
        sub = LabeledGraph(
            tuple(g.labels.values()),
            tuple((v, l) for v, l in g.vertices if v in vids),
            edges,
            upper + sub_lower + horiz,
        )
        out.append(MiddleGraph(sub, upper, sub_lower, horiz))
    return out


def middle_positivity_check(h: MiddleGraph, d: int, assignment: Assignment | None = None,
                            base: int = 1 << 16, growth: str = "tower",
                            horizontal_inputs=None, perturb: bool = False,
                            seed: int = 0) -> bool:
    """True iff the middle operator restricted to the invariant subspace is
    positive definite, certified componentwise (positivity is multiplicative
    across tensor factors and restriction preserves it).
    """
    if assignment is None:
        labels = tuple(h.graph.labels.values())
        assignment = weighted_assignment(labels, d, base, growth, perturb=perturb, seed=seed)
    inputs = dict(horizontal_inputs) if horizontal_inputs is not None else _default_inputs(h, d)
    for comp in middle_components(h):
        if not comp.graph.vertices:
            continue  # identity strand: positive
        sub_inputs = {c: inputs[c] for c in comp.horizontal}
        m = middle_operator(comp, assignment, sub_inputs)
        group = permissible_permutations(comp)
        orbits = invariant_orbits(group, d, comp.boundary_size())
        restricted = restrict_to_invariants(m, orbits, d, comp.boundary_size())
        if not sylvester_positive(restricted):
            return False
    return True
