"""Untwisted finite-group TQFT: hom counting, partition functions,
surface state spaces, handlebody vectors, and the complexity string over
a fixed catalog of finite groups.

Conventions: a closed connected manifold is presented by a finite
presentation of its fundamental group; its partition function is
|Hom(pi_1, G)| / |G| (orbit-stabilizer collapse of the groupoid sum over
bundle classes).  Surface state spaces have the orthogonal basis of
conjugacy classes of surface-group homomorphisms with squared norm
1/|centralizer|.  All arithmetic is exact.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

import numpy as np

CATALOG_VERSION = "v1-order15"
DEFAULT_HOM_GUARD = 10 ** 9
DEFAULT_CLASS_GUARD = 4 * 10 ** 6


class GuardExceeded(RuntimeError):
    """Enumeration would exceed the configured desk-scale guard."""


class GroupError(ValueError):
    pass


class FiniteGroup:
    """Finite group as an explicit multiplication table; laws verified on load."""

    def __init__(self, name: str, table):
        self.name = name
        self.table = tuple(tuple(int(x) for x in row) for row in table)
        self.n = len(self.table)
        self._np_table = np.array(self.table, dtype=np.int16)
        self._verify()
        self.identity = self._find_identity()
        self.inverse = self._find_inverses()
        self._np_inverse = np.array(self.inverse, dtype=np.int16)

    def _verify(self):
        n = self.n
        for row in self.table:
            if len(row) != n or any(not (0 <= x < n) for x in row):
                raise GroupError(f"{self.name}: malformed table")
        t = self._np_table
        # associativity: (ab)c == a(bc) for all a,b,c
        left = t[t, :]            # left[a,b,c] = (ab)c
        right = t[:, t]           # right[a,b,c] = a(bc)
        if not np.array_equal(left, right):
            raise GroupError(f"{self.name}: not associative")

    def _find_identity(self) -> int:
        for e in range(self.n):
            if all(self.table[e][x] == x and self.table[x][e] == x for x in range(self.n)):
                return e
        raise GroupError(f"{self.name}: no identity")

    def _find_inverses(self):
        inv = []
        for x in range(self.n):
            for y in range(self.n):
                if self.table[x][y] == self.identity and self.table[y][x] == self.identity:
                    inv.append(y)
                    break
            else:
                raise GroupError(f"{self.name}: element {x} has no inverse")
        return tuple(inv)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def conj(self, x: int, a: int) -> int:
        """x a x^-1."""
        return self.table[self.table[x][a]][self.inverse[x]]

    def element_orders(self) -> Counter:
        out = Counter()
        for x in range(self.n):
            k, y = 1, x
            while y != self.identity:
                y = self.table[y][x]
                k += 1
            out[k] += 1
        return out

    def is_abelian(self) -> bool:
        return self.table == tuple(tuple(self.table[b][a] for b in range(self.n))
                                   for a in range(self.n))

    def centralizer_order(self, elements) -> int:
        els = list(elements)
        return sum(1 for x in range(self.n)
                   if all(self.table[x][a] == self.table[a][x] for a in els))

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.n})"

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and self.table == other.table

    def __hash__(self):
        return hash(self.table)

    def to_json_obj(self):
        return {"name": self.name, "table": [list(r) for r in self.table]}

    @classmethod
    def from_json_obj(cls, obj) -> "FiniteGroup":
        return cls(obj["name"], obj["table"])


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------


def cyclic(n: int, name=None) -> FiniteGroup:
    return FiniteGroup(name or f"Z{n}", [[(i + j) % n for j in range(n)] for i in range(n)])


def direct_product(g: FiniteGroup, h: FiniteGroup, name=None) -> FiniteGroup:
    n, m = g.n, h.n
    table = [[0] * (n * m) for _ in range(n * m)]
    for a1, b1 in product(range(n), range(m)):
        for a2, b2 in product(range(n), range(m)):
            table[a1 * m + b1][a2 * m + b2] = g.table[a1][a2] * m + h.table[b1][b2]
    return FiniteGroup(name or f"{g.name}x{h.name}", table)


def dihedral(n: int, name=None) -> FiniteGroup:
    """Order 2n: rotations r^i and reflections r^i s."""
    def idx(i, j):
        return i + n * j

    table = [[0] * (2 * n) for _ in range(2 * n)]
    for i, j in product(range(n), range(2)):
        for k, l in product(range(n), range(2)):
            if j == 0:
                table[idx(i, j)][idx(k, l)] = idx((i + k) % n, l)
            else:
                table[idx(i, j)][idx(k, l)] = idx((i - k) % n, 1 - l)
    return FiniteGroup(name or f"D{n}", table)


def dicyclic(n: int, name=None) -> FiniteGroup:
    """Order 4n: <a, b | a^(2n) = 1, b^2 = a^n, b a b^-1 = a^-1>; n=2 is Q8."""
    def idx(i, j):
        return i + 2 * n * j

    table = [[0] * (4 * n) for _ in range(4 * n)]
    for i, j in product(range(2 * n), range(2)):
        for k, l in product(range(2 * n), range(2)):
            if j == 0:
                table[idx(i, j)][idx(k, l)] = idx((i + k) % (2 * n), l)
            elif l == 0:
                table[idx(i, j)][idx(k, l)] = idx((i - k) % (2 * n), 1)
            else:
                table[idx(i, j)][idx(k, l)] = idx((i - k + n) % (2 * n), 0)
    return FiniteGroup(name or (f"Q{4 * n}" if n == 2 else f"Dic{n}"), table)


def alternating4(name="A4") -> FiniteGroup:
    perms = [p for p in product(range(4), repeat=4)
             if sorted(p) == [0, 1, 2, 3] and _perm_sign(p) == 1]
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[tuple(p[q[i]] for i in range(4))] for q in perms] for p in perms]
    return FiniteGroup(name, table)


def _perm_sign(p):
    sign = 1
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                sign = -sign
    return sign


def catalog():
    """All groups of order at most 15, in the fixed versioned order.

    28 groups; the order (within each group order: cyclic first, other
    abelians, then the rest as listed) is frozen forever under
    CATALOG_VERSION.  Pairwise non-isomorphism is covered by tests.
    """
    z = cyclic
    groups = [
        z(1), z(2), z(3),
        z(4), direct_product(z(2), z(2)),
        z(5),
        z(6), dihedral(3, "S3"),
        z(7),
        z(8), direct_product(z(4), z(2)), direct_product(direct_product(z(2), z(2)), z(2), "Z2xZ2xZ2"),
        dihedral(4), dicyclic(2),
        z(9), direct_product(z(3), z(3)),
        z(10), dihedral(5),
        z(11),
        z(12), direct_product(z(6), z(2)), dihedral(6), alternating4(), dicyclic(3),
        z(13),
        z(14), dihedral(7),
        z(15),
    ]
    return tuple(groups)


# ---------------------------------------------------------------------------
# presentations and hom counting
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GroupPresentation:
    """Generators 1..g; relators are words of signed generator indices."""

    generators: int
    relators: tuple = ()
    name: str = ""

    def __post_init__(self):
        rel = tuple(tuple(int(s) for s in w) for w in self.relators)
        object.__setattr__(self, "relators", rel)
        for w in rel:
            for s in w:
                if s == 0 or abs(s) > self.generators:
                    raise GroupError(f"relator letter {s} out of range")

    @classmethod
    def free(cls, g: int) -> "GroupPresentation":
        return cls(g, (), f"F{g}")

    @classmethod
    def trivial(cls) -> "GroupPresentation":
        return cls(0, (), "1")

    @classmethod
    def surface(cls, genus: int) -> "GroupPresentation":
        """Standard genus-g surface group: product of commutators is 1."""
        word = []
        for i in range(genus):
            a, b = 2 * i + 1, 2 * i + 2
            word += [a, b, -a, -b]
        return cls(2 * genus, (tuple(word),) if genus else (), f"Surface{genus}")

    @classmethod
    def free_abelian(cls, k: int) -> "GroupPresentation":
        rel = []
        for i in range(1, k + 1):
            for j in range(i + 1, k + 1):
                rel.append((i, j, -i, -j))
        return cls(k, tuple(rel), f"Z^{k}")

    def conjugated_relators(self, by_letter: int) -> "GroupPresentation":
        rel = tuple((by_letter,) + w + (-by_letter,) for w in self.relators)
        return GroupPresentation(self.generators, rel, self.name + "-conj")

    def to_json_obj(self):
        return {"generators": self.generators, "relators": [list(w) for w in self.relators]}

    @classmethod
    def from_json_obj(cls, obj) -> "GroupPresentation":
        return cls(obj["generators"], tuple(tuple(w) for w in obj.get("relators", ())))


_CHUNK = 1 << 16


def _iter_tuple_chunks(n: int, g: int):
    """Chunks of generator-image arrays: yields (imgs list of g arrays)."""
    total = n ** g
    start = 0
    while start < total:
        stop = min(start + _CHUNK, total)
        ids = np.arange(start, stop, dtype=np.int64)
        imgs = []
        for j in range(g):
            imgs.append(((ids // n ** j) % n).astype(np.int16))
        yield imgs
        start = stop


def _relator_holds(group: FiniteGroup, imgs, word):
    t, inv = group._np_table, group._np_inverse
    m = imgs[0].shape[0] if imgs else 1
    acc = np.full(m, group.identity, dtype=np.int16)
    for s in word:
        x = imgs[abs(s) - 1]
        if s < 0:
            x = inv[x]
        acc = t[acc, x]
    return acc == group.identity


def count_homs(pres: GroupPresentation, group: FiniteGroup,
               guard: int = DEFAULT_HOM_GUARD) -> int:
    """Exact number of homomorphisms from the presented group to `group`."""
    n, g = group.n, pres.generators
    if n ** g > guard:
        raise GuardExceeded(f"{n}^{g} exceeds the guard {guard}")
    if not pres.relators:
        return n ** g
    if g == 0:
        return 1
    total = 0
    for imgs in _iter_tuple_chunks(n, g):
        ok = np.ones(imgs[0].shape[0], dtype=bool)
        for w in pres.relators:
            ok &= _relator_holds(group, imgs, w)
            if not ok.any():
                break
        total += int(ok.sum())
    return total


def z_closed(pres: GroupPresentation, group: FiniteGroup,
             guard: int = DEFAULT_HOM_GUARD) -> Fraction:
    """Partition function |Hom(pi_1, G)| / |G| of a closed connected manifold."""
    return Fraction(count_homs(pres, group, guard), group.n)


def z_closed_components(presentations, group: FiniteGroup,
                        guard: int = DEFAULT_HOM_GUARD) -> Fraction:
    """Disjoint unions multiply."""
    out = Fraction(1)
    for p in presentations:
        out *= z_closed(p, group, guard)
    return out


# ---------------------------------------------------------------------------
# surface state spaces
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HomClass:
    """Conjugacy class of surface-group homs: canonical representative and
    the order of its stabilizer (centralizer of the image)."""

    representative: tuple
    stabilizer_order: int

    def norm_squared(self) -> Fraction:
        return Fraction(1, self.stabilizer_order)


class SurfaceSpace:
    """State space of a closed genus-g surface for a finite group."""

    def __init__(self, genus: int, group: FiniteGroup):
        self.genus = genus
        self.group = group

    def canonical(self, images) -> tuple:
        """Minimal simultaneous conjugate of a generator-image tuple."""
        g = self.group
        orig = tuple(int(x) for x in images)
        best = orig
        for x in range(g.n):
            cand = tuple(g.conj(x, a) for a in orig)
            if cand < best:
                best = cand
        return best

    def stabilizer_order(self, images) -> int:
        return self.group.centralizer_order(set(images))

    def class_of(self, images) -> HomClass:
        rep = self.canonical(images)
        return HomClass(rep, self.stabilizer_order(rep))

    def satisfies_relation(self, images) -> bool:
        g = self.group
        acc = g.identity
        for i in range(self.genus):
            a, b = images[2 * i], images[2 * i + 1]
            acc = g.mul(acc, g.mul(g.mul(a, b), g.mul(g.inverse[a], g.inverse[b])))
        return acc == g.identity

    def __eq__(self, other):
        return (isinstance(other, SurfaceSpace) and other.genus == self.genus
                and other.group == self.group)


def surface_basis(genus: int, group: FiniteGroup,
                  guard: int = DEFAULT_CLASS_GUARD):
    """All conjugacy classes of genus-g surface homs, with norms 1/|stab|.

    Enumerates |G|^(2g) tuples filtered by the surface relation; guarded.
    """
    n = group.n
    if n ** (2 * genus) > guard:
        raise GuardExceeded(f"{n}^{2 * genus} exceeds the class guard {guard}")
    space = SurfaceSpace(genus, group)
    pres = GroupPresentation.surface(genus)
    classes = {}
    if genus == 0:
        return [HomClass((), n)]
    for imgs in _iter_tuple_chunks(n, 2 * genus):
        ok = _relator_holds(group, imgs, pres.relators[0])
        sel = [img[ok] for img in imgs]
        for row in zip(*sel):
            rep = space.canonical(tuple(int(x) for x in row))
            if rep not in classes:
                classes[rep] = HomClass(rep, space.stabilizer_order(rep))
    return sorted(classes.values(), key=lambda c: c.representative)


class DWVector:
    """Sparse vector over surface hom classes (keys: canonical tuples)."""

    def __init__(self, space: SurfaceSpace, components=None):
        self.space = space
        self.components = dict(components or {})

    def coefficient(self, key) -> Fraction:
        return self.components.get(tuple(key), Fraction(0))

    def is_zero(self):
        return not self.components


def handlebody_vector(genus: int, group: FiniteGroup,
                      guard: int = DEFAULT_HOM_GUARD) -> DWVector:
    """Component 1 on classes with a representative killing the b-generators.

    Such homs are exactly the (a_1, 1, a_2, 1, ...) tuples; the weight 1
    is forced by the gluing identity with the connected sum of g copies of
    the sphere-times-circle (tested against it).
    """
    n = group.n
    if n ** genus > guard:
        raise GuardExceeded(f"{n}^{genus} exceeds the guard {guard}")
    space = SurfaceSpace(genus, group)
    comps = {}
    for a_tuple in product(range(n), repeat=genus):
        images = []
        for a in a_tuple:
            images += [a, group.identity]
        key = space.canonical(tuple(images))
        comps[key] = Fraction(1)
    return DWVector(space, comps)


def inner_product(u: DWVector, v: DWVector) -> Fraction:
    """<u, v> = sum over classes of u_a v_a / |stab(a)|."""
    if u.space != v.space:
        raise GroupError("vectors live in different surface state spaces")
    total = Fraction(0)
    for key, cu in u.components.items():
        cv = v.components.get(key)
        if cv:
            total += cu * cv / u.space.stabilizer_order(key)
    return total


# ---------------------------------------------------------------------------
# complexity string and the genus bound
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class C1String:
    """Partition functions over the catalog, lexicographic; tagged with the
    catalog version, and comparisons across versions are rejected."""

    values: tuple
    version: str = CATALOG_VERSION

    def _check(self, other):
        if not isinstance(other, C1String):
            raise TypeError("compare C1String with C1String")
        if other.version != self.version:
            raise ValueError(f"catalog version mismatch: {self.version} vs {other.version}")

    def __lt__(self, other):
        self._check(other)
        return self.values < other.values

    def __le__(self, other):
        self._check(other)
        return self.values <= other.values


def c1_string(pres: GroupPresentation, groups=None,
              guard: int = DEFAULT_HOM_GUARD) -> C1String:
    """The tuple (Z_G(M)) over the catalog order."""
    groups = catalog() if groups is None else groups
    return C1String(tuple(z_closed(pres, g, guard) for g in groups))


def heegaard_lower_bound(pres: GroupPresentation, groups=None,
                         guard: int = DEFAULT_HOM_GUARD) -> int:
    """Largest genus forced over the catalog: the smallest h with
    |G|^h >= |Hom(pi_1, G)|, maximized over groups; at least 1.

    Integer comparisons only, never floating logarithms.
    """
    groups = catalog() if groups is None else groups
    best = 1
    for g in groups:
        try:
            homs = count_homs(pres, g, guard)
        except GuardExceeded:
            continue
        h = 1
        while g.n ** h < homs:
            h += 1
        best = max(best, h)
    return best
