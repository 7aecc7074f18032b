"""Dense tensors over exact scalars, symmetrization, and generic assignments.

Entries are python objects with exact ring arithmetic (int, Fraction,
Poly, Infinitesimal) or ints reduced modulo a prime.  Desk-scale caps:
edge-space dimension at most 6, valence at most 8.
"""

from __future__ import annotations

import hashlib
import random
from fractions import Fraction
from itertools import product

import numpy as np

from .graphs import FULL, IDENTITY, VertexLabel
from .scalars import DEFAULT_PRIME, Poly

MAX_DIM = 6
MAX_VALENCE = 8


class TensorError(ValueError):
    pass


class Tensor:
    """Dense multi-index array; data is a numpy object array of shape dims."""

    __slots__ = ("data", "conjugated")

    def __init__(self, data, conjugated: bool = False):
        arr = np.asarray(data, dtype=object)
        if any(d > MAX_DIM for d in arr.shape):
            raise TensorError(f"dimension above cap {MAX_DIM}")
        if arr.ndim > MAX_VALENCE:
            raise TensorError(f"valence above cap {MAX_VALENCE}")
        self.data = arr
        self.conjugated = bool(conjugated)

    @property
    def dims(self):
        return self.data.shape

    @property
    def valence(self) -> int:
        return self.data.ndim

    @classmethod
    def from_function(cls, dims, fn) -> "Tensor":
        arr = np.empty(dims, dtype=object)
        for idx in product(*(range(d) for d in dims)):
            arr[idx] = fn(idx)
        return cls(arr)

    def __getitem__(self, idx):
        return self.data[idx]

    def conjugate(self) -> "Tensor":
        """Orientation-reversal flag; entries are real so they are unchanged."""
        return Tensor(self.data, not self.conjugated)

    def permuted(self, perm) -> "Tensor":
        """Slot permutation: result[i_0..] = self[i_perm(0)..]."""
        return Tensor(np.transpose(self.data, axes=perm), self.conjugated)

    def __eq__(self, other):
        if not isinstance(other, Tensor):
            return NotImplemented
        return (self.dims == other.dims and self.conjugated == other.conjugated
                and bool(np.all(self.data == other.data)))

    def __repr__(self):
        return f"Tensor(dims={self.dims})"


def symmetrize(t: Tensor, group) -> Tensor:
    """Average of slot-permuted copies over a permutation group.

    `group` is a PermGroup on the slots of t (or a VertexLabel whose group
    is used).  The result is fixed by the group; symmetrize is idempotent.
    """
    if isinstance(group, VertexLabel):
        group = group.group()
    if group.degree != t.valence:
        raise TensorError(f"group degree {group.degree} != valence {t.valence}")
    elements = sorted(group.elements())
    n = len(elements)
    acc = None
    for g in elements:
        piece = np.transpose(t.data, axes=g)
        acc = piece.copy() if acc is None else acc + piece
    inv = Fraction(1, n)
    out = np.empty(acc.shape, dtype=object)
    flat_in, flat_out = acc.reshape(-1), out.reshape(-1)
    for i in range(flat_in.size):
        flat_out[i] = flat_in[i] * inv
    return Tensor(out.reshape(t.dims), t.conjugated)


def is_group_invariant(t: Tensor, label: VertexLabel) -> bool:
    """Check invariance under the label's symmetry generators only."""
    for g in label.group().generators:
        if not bool(np.all(np.transpose(t.data, axes=g) == t.data)):
            return False
    return True


class Assignment:
    """Tensors for vertex labels, all over a common edge-space dimension d.

    `conj_pairs` maps a label id to its orientation-reversed partner; the
    partner's tensor is the entrywise conjugate (equal, for real scalars).
    """

    def __init__(self, d: int, tensors: dict, conj_pairs: dict | None = None,
                 check_symmetry: bool = True, labels: dict | None = None):
        if not (1 <= d <= MAX_DIM):
            raise TensorError(f"dimension {d} outside 1..{MAX_DIM}")
        self.d = d
        self.tensors = dict(tensors)
        self.conj_pairs = dict(conj_pairs or {})
        self.labels = dict(labels or {})
        for lid, t in self.tensors.items():
            if any(dim != d for dim in t.dims):
                raise TensorError(f"tensor for {lid!r} has dims {t.dims}, expected all {d}")
            lab = self.labels.get(lid)
            if lab is not None:
                if lab.valence != t.valence:
                    raise TensorError(f"tensor valence {t.valence} != label valence {lab.valence}")
                if check_symmetry and not is_group_invariant(t, lab):
                    raise TensorError(f"tensor for {lid!r} is not symmetry-invariant")

    def tensor_for(self, label_id) -> Tensor:
        t = self.tensors.get(label_id)
        if t is None:
            partner = self.conj_pairs.get(label_id)
            if partner is not None and partner in self.tensors:
                return self.tensors[partner].conjugate()
            raise TensorError(f"no tensor assigned to label {label_id!r}")
        return t


def _orbit_rep(idx, label: VertexLabel):
    """Canonical representative of a multi-index under the label's group."""
    kind = label.symmetry_kind()
    if kind == IDENTITY:
        return idx
    if kind == FULL:
        return tuple(sorted(idx))
    best = idx
    for g in label.group().elements():
        cand = tuple(idx[g[i]] for i in range(len(idx)))
        if cand < best:
            best = cand
    return best


def _stable_rng(seed: int, *key) -> random.Random:
    payload = repr((seed,) + key).encode()
    digest = hashlib.sha256(payload).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


def generic_assignment(labels, d: int, mode: str = "symbolic", seed: int = 0,
                       hermitian: bool = False, field: str = "prime",
                       p: int = DEFAULT_PRIME, conj_pairs: dict | None = None) -> Assignment:
    """Assignment with one degree of freedom per entry orbit.

    mode="symbolic": a fresh polynomial indeterminate per orbit, giving
    guaranteed algebraic independence.  mode="randomized": per-orbit
    samples, uniform over Z/p (field="prime") or small nonzero integers
    (field="rational", for order-sensitive exact checks).  Equal seeds
    give identical assignments.  With hermitian=True, conj-paired labels
    share conjugated (here: equal) entries.
    """
    labels = {l.id: l for l in labels}
    conj_pairs = dict(conj_pairs or {})
    tensors = {}
    done = set()
    for lid in sorted(labels):
        if lid in done:
            continue
        lab = labels[lid]
        rng = _stable_rng(seed, "assign", lid, d, mode, field)
        orbit_vals: dict = {}

        def entry(idx, lab=lab, rng=rng, orbit_vals=orbit_vals, lid=lid):
            rep = _orbit_rep(idx, lab)
            if rep not in orbit_vals:
                if mode == "symbolic":
                    orbit_vals[rep] = Poly.var(("T", lid, rep))
                elif mode == "randomized":
                    if field == "prime":
                        orbit_vals[rep] = rng.randrange(p)
                    elif field == "rational":
                        orbit_vals[rep] = Fraction(rng.randrange(1, 10_000))
                    else:
                        raise TensorError(f"unknown field {field!r}")
                else:
                    raise TensorError(f"unknown mode {mode!r}")
            return orbit_vals[rep]

        t = Tensor.from_function((d,) * lab.valence, entry)
        tensors[lid] = t
        done.add(lid)
        if hermitian and lid in conj_pairs:
            partner = conj_pairs[lid]
            if partner in labels:
                tensors[partner] = t.conjugate()
                done.add(partner)
    return Assignment(d, tensors, conj_pairs, check_symmetry=False, labels=labels)
