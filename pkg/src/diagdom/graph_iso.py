"""Isomorphism of labeled graphs relative to the boundary.

Exhaustive backtracking, built for instances of at most ~8 vertices.
An isomorphism consists of a label-preserving vertex bijection, a slot
permutation at each vertex lying in that vertex's symmetry group, and a
permutation of the boundary cut points drawn from a supplied permissible
group (identity-only by default).  Loops and multi-edges are supported.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product

from .graphs import FULL, IDENTITY, GraphError, LabeledGraph, MiddleGraph, PermGroup


@dataclass
class GraphIso:
    """Witness: vertex map, per-vertex slot maps, boundary permutation."""

    vertex_map: dict
    slot_maps: dict
    cut_perm: tuple


def _slot_targets(g: LabeledGraph):
    """Map (vid, slot) -> target, target = ("c", cut_index) | ("v", wid, wslot)."""
    tgt = {}
    for a, b in g.edges:
        for x, y in ((a, b), (b, a)):
            if x[0] == "v":
                if y[0] == "c":
                    tgt[(x[1], x[2])] = ("c", g.cut_index(y[1]))
                else:
                    tgt[(x[1], x[2])] = ("v", y[1], y[2])
    return tgt


def _vertex_profile(g: LabeledGraph, vid, cut_orbit):
    """Isomorphism-invariant refinement key for a vertex."""
    lab = g.label_of(vid)
    loops = 0
    cut_orbits = []
    nbr_labels = []
    for a, b in g.edges:
        ends = (a, b)
        if all(e[0] == "v" and e[1] == vid for e in ends):
            loops += 1
        else:
            for x, y in ((a, b), (b, a)):
                if x[0] == "v" and x[1] == vid:
                    if y[0] == "c":
                        cut_orbits.append(cut_orbit[g.cut_index(y[1])])
                    elif y[1] != vid:
                        nbr_labels.append(g.label_of(y[1]).id)
    return (lab.id, loops, tuple(sorted(cut_orbits)), tuple(sorted(nbr_labels)))


def _cut_orbit_map(n, permissible: PermGroup | None):
    """orbit index per boundary position under the permissible group."""
    if permissible is None or permissible.is_identity_only():
        return list(range(n))
    orbit = [-1] * n
    next_id = 0
    for i in range(n):
        if orbit[i] >= 0:
            continue
        members = {perm[i] for perm in permissible.elements()}
        for j in members:
            orbit[j] = next_id
        next_id += 1
    return orbit


def _edge_key_multiset(g: LabeledGraph, vmap, slot_maps, cut_perm):
    """Normalized edge keys of g under the partial relabeling.

    Endpoints at fully symmetric vertices forget the slot; endpoints at
    rigid or explicitly symmetric vertices keep the mapped slot.
    """
    keys = []
    for a, b in g.edges:
        ka = _end_key_mapped(g, a, vmap, slot_maps, cut_perm)
        kb = _end_key_mapped(g, b, vmap, slot_maps, cut_perm)
        keys.append(tuple(sorted((ka, kb))))
    keys.sort()
    return keys


def _end_key_mapped(g, end, vmap, slot_maps, cut_perm):
    if end[0] == "c":
        return ("c", cut_perm[g.cut_index(end[1])])
    vid, slot = end[1], end[2]
    w = vmap[vid]
    sm = slot_maps.get(vid)
    return ("v", w, sm[slot] if sm is not None else None)


def _edge_key_multiset_plain(g: LabeledGraph):
    """Edge keys of g itself (identity maps), for the right-hand side."""
    keys = []
    for a, b in g.edges:
        ka = _end_key_plain(g, a)
        kb = _end_key_plain(g, b)
        keys.append(tuple(sorted((ka, kb))))
    keys.sort()
    return keys


def _end_key_plain(g, end):
    if end[0] == "c":
        return ("c", g.cut_index(end[1]))
    vid, slot = end[1], end[2]
    keep = g.label_of(vid).symmetry_kind() != FULL
    return ("v", vid, slot if keep else None)


def isomorphic_rel_boundary(a: LabeledGraph, b: LabeledGraph,
                            permissible: PermGroup | None = None):
    """Search for an isomorphism from a to b relative to the boundary.

    The boundary action must lie in `permissible` (identity when None).
    Returns a GraphIso witness or None.  Total: never raises on valid
    graphs with equal boundary sizes.
    """
    if len(a.cuts) != len(b.cuts):
        return None
    if a.circles != b.circles or len(a.edges) != len(b.edges):
        return None
    if len(a.vertices) != len(b.vertices):
        return None
    if sorted(l for _, l in a.vertices) != sorted(l for _, l in b.vertices):
        return None
    for lid, lab in a.labels.items():
        if lid in b.labels and b.labels[lid] != lab:
            return None

    n_cuts = len(a.cuts)
    orbit = _cut_orbit_map(n_cuts, permissible)
    prof_a: dict = {}
    for vid, _ in a.vertices:
        prof_a.setdefault(_vertex_profile(a, vid, orbit), []).append(vid)
    prof_b: dict = {}
    for vid, _ in b.vertices:
        prof_b.setdefault(_vertex_profile(b, vid, orbit), []).append(vid)
    if set(prof_a) != set(prof_b):
        return None
    for k in prof_a:
        if len(prof_a[k]) != len(prof_b[k]):
            return None

    cut_perms = [tuple(range(n_cuts))]
    if permissible is not None and not permissible.is_identity_only():
        cut_perms = sorted(permissible.elements())

    target_keys = _edge_key_multiset_plain(b)
    classes = sorted(prof_a.items(), key=lambda kv: repr(kv[0]))
    explicit_vs = [vid for vid, _ in a.vertices
                   if a.label_of(vid).symmetry_kind() == "explicit"]

    for cut_perm in cut_perms:
        for vmap in _vertex_bijections(classes, prof_b):
            for slot_maps in _slot_map_choices(a, explicit_vs):
                full_slot_maps = dict(slot_maps)
                for vid, _ in a.vertices:
                    kind = a.label_of(vid).symmetry_kind()
                    if kind == IDENTITY:
                        full_slot_maps[vid] = tuple(range(a.label_of(vid).valence))
                if _edge_key_multiset(a, vmap, full_slot_maps, cut_perm) == target_keys:
                    witness_slots = _complete_witness_slots(a, b, vmap, full_slot_maps, cut_perm)
                    if witness_slots is not None:
                        return GraphIso(dict(vmap), witness_slots, cut_perm)
    return None


def _vertex_bijections(classes, prof_b):
    """All label/profile-respecting vertex bijections (cartesian product)."""
    keys = [k for k, _ in classes]
    a_lists = [vs for _, vs in classes]
    b_lists = [prof_b[k] for k in keys]
    perm_iters = [permutations(bl) for bl in b_lists]
    for combo in product(*perm_iters):
        vmap = {}
        for avs, bvs in zip(a_lists, combo):
            vmap.update(zip(avs, bvs))
        yield vmap


def _slot_map_choices(a: LabeledGraph, explicit_vs):
    """Cartesian product over explicit-symmetry vertices of their group elements."""
    if not explicit_vs:
        yield {}
        return
    groups = [sorted(a.label_of(v).group().elements()) for v in explicit_vs]
    for combo in product(*groups):
        yield dict(zip(explicit_vs, combo))


def _complete_witness_slots(a, b, vmap, slot_maps, cut_perm):
    """Extend the witness with concrete slot maps at fully symmetric vertices.

    Pairs A-edges with B-edges of equal key (the multisets agree by the
    time this runs), then reads the slot bijections off the paired edges,
    so multi-edges between symmetric vertices stay consistent.
    """
    def end_key_a(end):
        return _end_key_mapped(a, end, vmap, slot_maps, cut_perm)

    def end_key_b(end):
        return _end_key_plain(b, end)

    pool: dict = {}
    for e in b.edges:
        k = tuple(sorted((end_key_b(e[0]), end_key_b(e[1]))))
        pool.setdefault(k, []).append(e)

    partial: dict = {}  # (a_vid, a_slot) -> b_slot at full vertices
    for ea in a.edges:
        k = tuple(sorted((end_key_a(ea[0]), end_key_a(ea[1]))))
        lst = pool.get(k)
        if not lst:
            return None
        eb = lst.pop()
        ends_b = list(eb)
        if end_key_a(ea[0]) != end_key_b(ends_b[0]):
            ends_b.reverse()
        for xa, xb in zip(ea, ends_b):
            if xa[0] == "v" and a.label_of(xa[1]).symmetry_kind() == FULL:
                partial[(xa[1], xa[2])] = xb[2]

    out = {vid: slot_maps[vid] for vid, _ in a.vertices
           if a.label_of(vid).symmetry_kind() != FULL}
    for vid, _ in a.vertices:
        if a.label_of(vid).symmetry_kind() == FULL:
            val = a.label_of(vid).valence
            out[vid] = tuple(partial[(vid, s)] for s in range(val))
    return out


def permissible_permutations(h: MiddleGraph) -> PermGroup:
    """Boundary permutations extending to automorphisms of the middle graph
    that fix every vertex, every non-cut edge, and every doubly cut edge."""
    g = h.graph
    c = h.boundary_size()
    upper_pos = {cid: i for i, cid in enumerate(h.upper)}
    lower_pos = {cid: i for i, cid in enumerate(h.lower)}
    horiz = set(h.horizontal)

    tgt = _slot_targets(g)

    # Positions adjacent to each vertex, split by layer, and arc constraints.
    fixed_pairs = []       # doubly cut edges, as frozensets of (layer, pos)
    for a, b in g.edges:
        if a[0] == "c" and b[0] == "c":
            fixed_pairs.append(frozenset(_layer_pos(x[1], upper_pos, lower_pos, horiz) for x in (a, b)))

    def layer_pos_of_cut(cid):
        return _layer_pos(cid, upper_pos, lower_pos, horiz)

    candidates = []
    for perm in permutations(range(c)):
        if _perm_ok(g, h, perm, tgt, fixed_pairs, layer_pos_of_cut):
            candidates.append(perm)
    group = PermGroup(c, candidates)
    return group


def _layer_pos(cid, upper_pos, lower_pos, horiz):
    if cid in upper_pos:
        return ("u", upper_pos[cid])
    if cid in lower_pos:
        return ("l", lower_pos[cid])
    if cid in horiz:
        return ("h", cid)
    raise GraphError(f"cut {cid!r} not in any layer")


def _perm_ok(g, h, perm, tgt, fixed_pairs, layer_pos_of_cut):
    def act(lp):
        layer, p = lp
        if layer == "h":
            return lp
        return (layer, perm[p])

    for pair in fixed_pairs:
        if frozenset(act(lp) for lp in pair) != pair:
            return False

    # per-vertex constraints: slots at non-cut edges are fixed, so the slot
    # permutation induced on cut slots must exist inside the symmetry group
    for vid, _ in g.vertices:
        lab = g.label_of(vid)
        kind = lab.symmetry_kind()
        cut_slots = {}
        for s in range(lab.valence):
            t = tgt[(vid, s)]
            if t[0] == "c":
                cut_slots[s] = layer_pos_of_cut(g.cuts[t[1]])
        if not cut_slots:
            continue
        if kind == IDENTITY:
            if any(act(lp) != lp for lp in cut_slots.values()):
                return False
        elif kind == FULL:
            have = sorted(map(repr, cut_slots.values()))
            want = sorted(repr(act(lp)) for lp in cut_slots.values())
            if have != want:
                return False
        else:
            if not _explicit_vertex_ok(lab, cut_slots, act):
                return False
    return True


def _explicit_vertex_ok(lab, cut_slots, act):
    for sigma in lab.group().elements():
        good = True
        for s in range(lab.valence):
            if s in cut_slots:
                if act(cut_slots[s]) != cut_slots.get(sigma[s]):
                    good = False
                    break
            elif sigma[s] != s:
                good = False
                break
        if good:
            return True
    return False
