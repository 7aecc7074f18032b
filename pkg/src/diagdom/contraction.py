"""Exact tensor-network contraction of labeled graphs.

The network of a graph places the assigned tensor at each vertex, joins
axes along edges, treats doubly cut edges as identity operators, sends
optional input vectors into cut points, and leaves the remaining cut
points as free axes ordered like the boundary.  Vertex-free circles each
contribute a factor of the edge-space dimension.

Two execution paths share the same greedy pairwise-contraction order:
a generic object path for exact scalars, and a modular path over Z/p
that uses the compiled kernel when available (set DIAGDOM_PURE=1 to
force the pure fallback).
"""

from __future__ import annotations

import os
from itertools import product

import numpy as np

from .graphs import LabeledGraph, GraphError
from .tensors import Assignment, Tensor, TensorError

try:  # compiled kernel is optional
    from . import _kernels as _K
except ImportError:  # pragma: no cover - depends on build environment
    _K = None

KERNEL_AVAILABLE = _K is not None


def _use_kernel() -> bool:
    return KERNEL_AVAILABLE and os.environ.get("DIAGDOM_PURE", "") != "1"


class _Node:
    __slots__ = ("data", "axes")

    def __init__(self, data, axes):
        self.data = data
        self.axes = list(axes)


def _matmul(a, b, p):
    """2-D product; modular when p is set, exact object arithmetic otherwise."""
    if p is None:
        return np.dot(a, b)
    if _use_kernel():
        au = np.ascontiguousarray(a, dtype=np.uint64)
        bu = np.ascontiguousarray(b, dtype=np.uint64)
        return _K.matmul_mod(au, bu, p).astype(object)
    return np.dot(a, b) % p


def contract(network: LabeledGraph, assignment: Assignment, inputs=None,
             p: int | None = None):
    """Contract the network; closed graphs give a scalar, otherwise a tensor
    with one axis per remaining cut point (in boundary order).

    `inputs` maps cut ids to length-d vectors contracted into those cuts.
    `p` switches entries and arithmetic to Z/p (entries reduced mod p).
    """
    d = assignment.d
    inputs = dict(inputs or {})
    for cid in inputs:
        if cid not in network.cuts:
            raise GraphError(f"input at unknown cut {cid!r}")

    nodes: list[_Node] = []
    edge_axis_count: dict = {}
    free_axes = {}

    # identity strands between cuts / inputs handled via tiny nodes
    def add_node(arr, axes):
        nodes.append(_Node(np.asarray(arr, dtype=object), axes))
        for ax in axes:
            edge_axis_count[ax] = edge_axis_count.get(ax, 0) + 1

    slot_axis = {}
    for eidx, (a, b) in enumerate(network.edges):
        for end in (a, b):
            if end[0] == "v":
                slot_axis[(end[1], end[2])] = ("e", eidx)

    for vid, lid in network.vertices:
        t = assignment.tensor_for(lid)
        lab = network.label_of(vid)
        if t.valence != lab.valence:
            raise TensorError(f"tensor valence {t.valence} != label valence {lab.valence} at {vid!r}")
        data = t.data if p is None else _reduce_mod(t.data, p)
        add_node(data, [slot_axis[(vid, s)] for s in range(lab.valence)])

    for eidx, (a, b) in enumerate(network.edges):
        cut_ends = [end for end in (a, b) if end[0] == "c"]
        if len(cut_ends) == 1:
            cid = cut_ends[0][1]
            _attach_cut(("e", eidx), cid, network, inputs, add_node, d, p)
        elif len(cut_ends) == 2:
            # doubly cut edge: identity operator between the two cut points
            ca, cb = cut_ends[0][1], cut_ends[1][1]
            ident = np.asarray([[1 if i == j else 0 for j in range(d)] for i in range(d)], dtype=object)
            ax_a, ax_b = ("cutedge", eidx, 0), ("cutedge", eidx, 1)
            add_node(ident, [ax_a, ax_b])
            _attach_cut(ax_a, ca, network, inputs, add_node, d, p)
            _attach_cut(ax_b, cb, network, inputs, add_node, d, p)

    scalar = _pow_scalar(d, network.circles, p)

    # trace out self-edges on each node
    for node in nodes:
        _self_trace(node, p)

    # repeatedly contract the cheapest connected pair
    while True:
        shared: dict = {}
        for i, node in enumerate(nodes):
            for ax in node.axes:
                if ax[0] != "free":
                    shared.setdefault(ax, []).append(i)
        pairs = {}
        for ax, owners in shared.items():
            if len(owners) == 2:
                pairs.setdefault(tuple(sorted(owners)), []).append(ax)
        if not pairs:
            break
        best = min(pairs, key=lambda ij: (_pair_cost(nodes[ij[0]], nodes[ij[1]], pairs[ij]), ij))
        i, j = best
        merged = _contract_pair(nodes[i], nodes[j], pairs[best], p)
        _self_trace(merged, p)
        nodes = [n for k, n in enumerate(nodes) if k not in (i, j)]
        nodes.append(merged)

    # outer-product the disconnected remainder (scalars and free-axis tensors)
    result = None
    for node in nodes:
        if node.data.ndim == 0:
            scalar = _scalar_mul(scalar, node.data.item(), p)
            continue
        if result is None:
            result = node
        else:
            data = np.multiply.outer(result.data, node.data)
            if p is not None:
                data = data % p
            result = _Node(data, result.axes + node.axes)

    free_order = [("free", network.cut_index(c)) for c in network.cuts if c not in inputs]
    if result is None:
        if free_order:
            raise GraphError("internal error: free cuts lost")
        return scalar
    perm = [result.axes.index(ax) for ax in free_order]
    data = np.transpose(result.data, axes=perm)
    if scalar != 1:
        flat = data.reshape(-1)
        out = np.empty(flat.shape, dtype=object)
        for k in range(flat.size):
            out[k] = _scalar_mul(flat[k], scalar, p)
        data = out.reshape(data.shape)
    return Tensor(data)


def _attach_cut(axis, cid, network, inputs, add_node, d, p):
    if cid in inputs:
        vec = [v if p is None else v % p for v in inputs[cid]]
        if len(vec) != d:
            raise TensorError(f"input at {cid!r} has length {len(vec)}, expected {d}")
        add_node(np.asarray(vec, dtype=object), [axis])
    else:
        # free cut: expose it through an identity alias carrying the free axis
        ident = np.asarray([[1 if i == j else 0 for j in range(d)] for i in range(d)], dtype=object)
        add_node(ident, [axis, ("free", network.cut_index(cid))])


def _reduce_mod(data, p):
    flat = data.reshape(-1)
    out = np.empty(flat.shape, dtype=object)
    for i in range(flat.size):
        out[i] = int(flat[i]) % p
    return out.reshape(data.shape)


def _pow_scalar(d, k, p):
    if k == 0:
        return 1
    return pow(d, k, p) if p is not None else d ** k


def _scalar_mul(a, b, p):
    r = a * b
    return r % p if p is not None else r


def _pair_cost(na, nb, shared_axes):
    out = 1
    for n in (na, nb):
        for ax, dim in zip(n.axes, n.data.shape):
            if ax not in shared_axes:
                out *= dim
    return out


def _self_trace(node, p):
    while True:
        dup = None
        for k, ax in enumerate(node.axes):
            if ax[0] == "free":
                continue
            try:
                other = node.axes.index(ax, k + 1)
            except ValueError:
                continue
            dup = (k, other)
            break
        if dup is None:
            return
        a1, a2 = dup
        traced = np.trace(node.data, axis1=a1, axis2=a2)
        if p is not None:
            traced = traced % p
        node.data = np.asarray(traced, dtype=object)
        node.axes = [ax for k, ax in enumerate(node.axes) if k not in (a1, a2)]


def _contract_pair(na, nb, shared_axes, p):
    ax_a = [na.axes.index(ax) for ax in shared_axes]
    ax_b = [nb.axes.index(ax) for ax in shared_axes]
    keep_a = [k for k in range(len(na.axes)) if k not in ax_a]
    keep_b = [k for k in range(len(nb.axes)) if k not in ax_b]
    a = np.transpose(na.data, axes=keep_a + ax_a)
    b = np.transpose(nb.data, axes=ax_b + keep_b)
    m = int(np.prod([na.data.shape[k] for k in keep_a], dtype=np.int64)) if keep_a else 1
    kk = int(np.prod([na.data.shape[k] for k in ax_a], dtype=np.int64)) if ax_a else 1
    n = int(np.prod([nb.data.shape[k] for k in keep_b], dtype=np.int64)) if keep_b else 1
    a2 = np.ascontiguousarray(a.reshape(m, kk))
    b2 = np.ascontiguousarray(b.reshape(kk, n))
    c2 = _matmul(a2, b2, p)
    out_shape = tuple(na.data.shape[k] for k in keep_a) + tuple(nb.data.shape[k] for k in keep_b)
    data = np.asarray(c2, dtype=object).reshape(out_shape)
    axes = [na.axes[k] for k in keep_a] + [nb.axes[k] for k in keep_b]
    return _Node(data, axes)


def reference_contract(network: LabeledGraph, assignment: Assignment, inputs=None,
                       p: int | None = None):
    """Brute-force oracle: sum over all edge index assignments.

    Independent of the pairwise engine; exponential, for tests only.
    """
    d = assignment.d
    inputs = dict(inputs or {})
    edges = network.edges
    free = [c for c in network.cuts if c not in inputs]
    free_pos = {c: i for i, c in enumerate(free)}

    def term_value(eidx_vals, free_vals):
        total = 1
        for vid, lid in network.vertices:
            lab = network.label_of(vid)
            idx = [None] * lab.valence
            for k, (a, b) in enumerate(edges):
                for end in (a, b):
                    if end[0] == "v" and end[1] == vid:
                        idx[end[2]] = eidx_vals[k]
            t = assignment.tensor_for(lid)
            v = t.data[tuple(idx)]
            total = total * (v if p is None else int(v) % p)
        for k, (a, b) in enumerate(edges):
            for end in (a, b):
                if end[0] == "c":
                    cid = end[1]
                    if cid in inputs:
                        total = total * inputs[cid][eidx_vals[k]]
                    elif eidx_vals[k] != free_vals[free_pos[cid]]:
                        return 0
        return total if p is None else total % p

    def accumulate(free_vals):
        acc = 0
        for eidx_vals in product(range(d), repeat=len(edges)):
            acc = acc + term_value(eidx_vals, free_vals)
        acc = acc * _pow_scalar(d, network.circles, p)
        return acc % p if p is not None else acc

    if not free:
        return accumulate(())
    out = np.empty((d,) * len(free), dtype=object)
    for fv in product(range(d), repeat=len(free)):
        out[fv] = accumulate(fv)
    return Tensor(out)
