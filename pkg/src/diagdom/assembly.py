"""Decomposed-manifold assemblies: cusped pieces, torus gluings, canonical
torsor markings, the gluing-number invariant, and reflective-torus checks.

Each cusp carries integer coordinates on its first homology; a gluing is
a determinant +-1 integer matrix sending one cusp's coordinates to the
other's.  Fibered pieces know their fiber and base classes per cusp; the
candidate base curves {base + k * fiber} form a Z-torsor that is marked
by minimizing an intersection count (fibered neighbor) or a scale-free
quadratic (cusped-geometry neighbor).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .linalg import rational_nullspace, primitive_integer_vector, smith_normal_form, mat_mul, sylvester_positive
from .seifert import SeifertData, SeifertError


class AssemblyError(ValueError):
    pass


SF, HYP, OPAQUE = "SF", "HYP", "OPAQUE"


@dataclass
class Cusp:
    """Torus end of a piece, with integer homology coordinates.

    For SF pieces `fiber` and `base` are integer 2-vectors (the base class
    pairs nontrivially with the fiber); `shift` moves the chosen base
    curve along the fiber.  HYP cusps carry a positive-definite rational
    gram form and a positive area fixing the similarity class.
    """

    id: str
    fiber: tuple | None = None
    base: tuple | None = None
    shift: int = 0
    gram: tuple | None = None
    area: Fraction | None = None


@dataclass
class Piece:
    kind: str
    cusps: list
    seifert: SeifertData | None = None
    token: str = ""

    def cusp(self, cid: str) -> Cusp:
        for c in self.cusps:
            if c.id == cid:
                return c
        raise AssemblyError(f"no cusp {cid!r} in piece")


@dataclass
class Gluing:
    cusp_a: str
    cusp_b: str
    matrix: tuple  # 2x2, maps cusp_a coordinates to cusp_b coordinates

    def __post_init__(self):
        self.matrix = tuple(tuple(int(x) for x in row) for row in self.matrix)
        if _det2(self.matrix) not in (1, -1):
            raise AssemblyError("gluing matrix must have determinant +-1")


class JSJAssembly:
    """Pieces, cusp gluings, and optional independent-torus metadata m."""

    def __init__(self, pieces, gluings, m: int | None = None, orientation: int = 1):
        self.pieces = list(pieces)
        self.gluings = list(gluings)
        if orientation not in (1, -1):
            raise AssemblyError("orientation must be +-1")
        self.orientation = orientation
        self.m = m
        self._by_cusp = {}
        for pi, piece in enumerate(self.pieces):
            for c in piece.cusps:
                if c.id in self._by_cusp:
                    raise AssemblyError(f"duplicate cusp id {c.id!r}")
                self._by_cusp[c.id] = pi
        used = set()
        for g in self.gluings:
            for cid in (g.cusp_a, g.cusp_b):
                if cid not in self._by_cusp:
                    raise AssemblyError(f"gluing references unknown cusp {cid!r}")
                if cid in used:
                    raise AssemblyError(f"cusp {cid!r} used by two gluings")
                used.add(cid)

    def piece_of(self, cid: str):
        return self.pieces[self._by_cusp[cid]]

    def gluing_at(self, cid: str):
        """(gluing, partner cusp id, matrix from this cusp to the partner)."""
        for g in self.gluings:
            if g.cusp_a == cid:
                return g, g.cusp_b, g.matrix
            if g.cusp_b == cid:
                return g, g.cusp_a, _inv2(g.matrix)
        return None

    def m_prime(self) -> int:
        return len(self.gluings)

    def independent_tori(self, derive_from_internal: bool = False) -> int:
        """The metadata m, defaulting to m'; optionally m' plus the count of
        internal cusps (gluings between fibered pieces with matching fibers)."""
        if self.m is not None:
            return self.m
        if not derive_from_internal:
            return self.m_prime()
        internal = 0
        for g in self.gluings:
            pa, pb = self.piece_of(g.cusp_a), self.piece_of(g.cusp_b)
            if pa.kind == SF and pb.kind == SF:
                ca = pa.cusp(g.cusp_a)
                cb = pb.cusp(g.cusp_b)
                fa = _apply2(g.matrix, ca.fiber)
                if _parallel(fa, cb.fiber):
                    internal += 1
        return self.m_prime() + internal

    def mirrored(self) -> "JSJAssembly":
        return JSJAssembly(self.pieces, self.gluings, self.m, -self.orientation)


def _det2(m):
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


def _inv2(m):
    d = _det2(m)
    adj = ((m[1][1], -m[0][1]), (-m[1][0], m[0][0]))
    if d == 1:
        return adj
    if d == -1:
        return tuple(tuple(-x for x in row) for row in adj)
    raise AssemblyError("matrix is not unimodular")


def _apply2(m, v):
    return (m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1])


def _cross2(u, v):
    return u[0] * v[1] - u[1] * v[0]


def _parallel(u, v):
    return _cross2(u, v) == 0


# ---------------------------------------------------------------------------
# torsor markings
# ---------------------------------------------------------------------------


def mark_torsor_sf(p: int, q: int):
    """Integer minimizers of |p + k q| (the intersection count with the
    neighboring fiber); one value, or two consecutive when p/q is a
    half-integer.  q = 0 signals an invalid decomposition gluing."""
    if q == 0:
        raise AssemblyError("neighboring fibers are parallel (q = 0)")
    lo = -(p // q) if p % q == 0 else None
    if lo is not None:
        return (lo,)
    k_star = Fraction(-p, q)
    import math
    fl = math.floor(k_star)
    ce = fl + 1
    vf, vc = abs(p + fl * q), abs(p + ce * q)
    if vf < vc:
        return (fl,)
    if vc < vf:
        return (ce,)
    return (fl, ce)


def mark_torsor_hyp(b, f, gram, area):
    """Integer minimizers of the scale-free quadratic length^2/area of
    b + k f in the cusp similarity structure; gram must be positive
    definite and f nonzero."""
    g = [[Fraction(x) for x in row] for row in gram]
    if not sylvester_positive(g):
        raise AssemblyError("gram form is not positive definite")
    if Fraction(area) <= 0:
        raise AssemblyError("area must be positive")
    if tuple(f) == (0, 0):
        raise AssemblyError("fiber class is zero")

    def q(v):
        return (g[0][0] * v[0] * v[0] + 2 * g[0][1] * v[0] * v[1]
                + g[1][1] * v[1] * v[1])

    bf = (g[0][0] * b[0] * f[0] + g[0][1] * (b[0] * f[1] + b[1] * f[0])
          + g[1][1] * b[1] * f[1])
    ff = q(f)
    k_star = -Fraction(bf, ff)
    import math
    fl = math.floor(k_star)
    ce = fl if k_star == fl else fl + 1
    if fl == ce:
        return (fl,)
    vf = q((b[0] + fl * f[0], b[1] + fl * f[1]))
    vc = q((b[0] + ce * f[0], b[1] + ce * f[1]))
    if vf < vc:
        return (fl,)
    if vc < vf:
        return (ce,)
    return (fl, ce)


def marking_center(marks) -> Fraction:
    return Fraction(min(marks) + max(marks), 2)


def cusp_marking(assembly: JSJAssembly, cid: str):
    """Marking of the base-curve torsor at a fibered piece's cusp, read off
    from the glued neighbor."""
    piece = assembly.piece_of(cid)
    if piece.kind != SF:
        raise AssemblyError("markings are defined at fibered pieces")
    cusp = piece.cusp(cid)
    if cusp.fiber is None or cusp.base is None:
        raise AssemblyError(f"cusp {cid!r} lacks fiber/base classes")
    glue = assembly.gluing_at(cid)
    if glue is None:
        raise AssemblyError(f"cusp {cid!r} is not glued")
    _, partner_id, mat = glue
    neighbor = assembly.piece_of(partner_id)
    partner = neighbor.cusp(partner_id)
    if neighbor.kind == SF:
        if partner.fiber is None:
            raise AssemblyError(f"cusp {partner_id!r} lacks a fiber class")
        f_prime = _apply2(_inv2(mat), partner.fiber)
        p = _cross2(cusp.base, f_prime)
        q = _cross2(cusp.fiber, f_prime)
        return mark_torsor_sf(p, q)
    if neighbor.kind == HYP:
        if partner.gram is None or partner.area is None:
            raise AssemblyError(f"cusp {partner_id!r} lacks geometry data")
        b_there = _apply2(mat, cusp.base)
        f_there = _apply2(mat, cusp.fiber)
        return mark_torsor_hyp(b_there, f_there, partner.gram, partner.area)
    raise AssemblyError(f"neighbor of {cid!r} carries no marking data")


def gluing_number(assembly: JSJAssembly, piece_index: int) -> Fraction:
    """Sum over the piece's cusps of the offset of the chosen base curve
    from the torsor marking; values in Z[1/2], negated by mirroring."""
    piece = assembly.pieces[piece_index]
    if piece.kind != SF:
        raise AssemblyError("the gluing number is defined for fibered pieces")
    total = Fraction(0)
    for cusp in piece.cusps:
        marks = cusp_marking(assembly, cusp.id)
        offset = Fraction(cusp.shift) - marking_center(marks)
        total += assembly.orientation * offset
    return total


# ---------------------------------------------------------------------------
# boundary kernel of a fibered piece
# ---------------------------------------------------------------------------


@dataclass
class BoundaryKernel:
    dimension: int
    kernel_basis: list          # vectors in the (section, fiber) per-cusp coords
    base_classes: list          # per cusp: primitive integer (section, fiber) pair
    pairings: list              # per cusp: r_i = base . fiber > 0


def boundary_kernel(d: SeifertData) -> BoundaryKernel:
    """Kernel of rational boundary homology into the piece, plus canonical
    primitive base classes with positive fiber pairing.

    Uses the abelianized standard presentation: surface generators, one
    generator per exceptional fiber, one section per boundary circle, and
    the fiber; relations beta_j q_j + alpha_j h = 0 and sum q_j + sum c_i = 0.
    Orientable bases only.
    """
    if not d.orientable_base:
        raise SeifertError("nonorientable bases are not supported here")
    if d.boundary < 1:
        raise SeifertError("the boundary kernel needs at least one boundary circle")
    g, b, k = d.genus, d.boundary, len(d.fibers)
    n_gen = 2 * g + k + b + 1  # x's, q's, c's, h
    q0, c0, h0 = 2 * g, 2 * g + k, 2 * g + k + b
    relations = []
    for j, f in enumerate(d.fibers):
        row = [0] * n_gen
        row[q0 + j] = f.denominator
        row[h0] = f.numerator
        relations.append(row)
    row = [0] * n_gen
    for j in range(k):
        row[q0 + j] = 1
    for i in range(b):
        row[c0 + i] = 1
    relations.append(row)

    # boundary map: cusp i has (section -> c_i, fiber -> h)
    bmap = []
    for i in range(b):
        sec = [0] * n_gen
        sec[c0 + i] = 1
        fib = [0] * n_gen
        fib[h0] = 1
        bmap.extend([sec, fib])

    # u in K iff B^T u lies in the row space of the relations
    cols = []
    for vec in bmap:
        cols.append(list(vec))
    for rel in relations:
        cols.append([-x for x in rel])
    big = [[Fraction(cols[c][r]) for c in range(len(cols))] for r in range(n_gen)]
    null = rational_nullspace(big)
    kernel = []
    seen_rows = []
    for v in null:
        u = v[: 2 * b]
        if any(u):
            reduced = _reduce_against(u, seen_rows)
            if reduced is not None:
                seen_rows.append(reduced)
                kernel.append(u)
    if len(kernel) != b:
        raise SeifertError(f"kernel dimension {len(kernel)} != boundary count {b}")

    base = _find_base_vector(kernel, b)
    base_classes, pairings = [], []
    for i in range(b):
        pair = (base[2 * i], base[2 * i + 1])
        prim = primitive_integer_vector(pair)
        if prim[0] < 0:
            prim = [-x for x in prim]
        if prim[0] == 0:
            raise SeifertError("base class does not pair with the fiber")
        base_classes.append(tuple(prim))
        pairings.append(prim[0])
    return BoundaryKernel(len(kernel), kernel, base_classes, pairings)


def _reduce_against(u, rows):
    v = [Fraction(x) for x in u]
    for row in rows:
        lead = next((i for i, x in enumerate(row) if x), None)
        if lead is not None and v[lead]:
            f = v[lead] / row[lead]
            v = [a - f * c for a, c in zip(v, row)]
    if not any(v):
        return None
    return v


def _find_base_vector(kernel, b):
    """Combination of kernel vectors whose section coordinate is nonzero at
    every cusp (exists: generic combinations work)."""
    for t in range(1, b * b + 4 * b + 4):
        cand = [Fraction(0)] * len(kernel[0])
        for j, v in enumerate(kernel):
            w = Fraction(t) ** j
            cand = [a + w * x for a, x in zip(cand, v)]
        if all(cand[2 * i] != 0 for i in range(b)):
            return cand
    raise SeifertError("no base vector pairs with every boundary fiber")


# ---------------------------------------------------------------------------
# reflective tori
# ---------------------------------------------------------------------------

VSF = "VSF"

_R_HYP = (
    ((1, 0), (0, -1)),
    ((-1, 0), (0, 1)),
    ((0, 1), (1, 0)),
    ((0, -1), (-1, 0)),
)


def _is_vsf_reflection(m) -> bool:
    return (m[0][1] == 0 and m[0][0] in (1, -1) and m[1][1] == -m[0][0]
            and m[1][0] % 2 == 0)


def _conj(g, p):
    """g^-1 p g."""
    return mat_mul(mat_mul(_inv2(g), p), g)


def is_reflective(g, left_kind: str, right_kind: str) -> bool:
    """Whether some reflection of the left side conjugates through the
    gluing to a reflection of the right side.

    Reflection sets: four fixed matrices for a cusped-geometry (HYP) side;
    the family [[e,0],[2m,-e]] for a vertically fibered (VSF) side, with
    m solved for rather than enumerated.
    """
    g = tuple(tuple(int(x) for x in row) for row in g)
    if left_kind == HYP:
        for p in _R_HYP:
            q = _conj(g, p)
            if _matches_kind(q, right_kind):
                return True
        return False
    if left_kind == VSF and right_kind == HYP:
        return is_reflective(_inv2(g), HYP, VSF)
    if left_kind == VSF and right_kind == VSF:
        return _vsf_vsf_solvable(g)
    raise AssemblyError(f"unsupported kinds {left_kind}/{right_kind}")


def _matches_kind(q, kind: str) -> bool:
    qt = tuple(tuple(int(x) for x in row) for row in q)
    if kind == HYP:
        return qt in _R_HYP
    if kind == VSF:
        return _is_vsf_reflection(qt)
    raise AssemblyError(f"unknown kind {kind!r}")


def _vsf_vsf_solvable(g) -> bool:
    """Integer solvability of P g = g Q with P, Q in the VSF family.

    For each sign pair the equation is linear in (m, m'); solved exactly
    via the Smith normal form of the integer coefficient matrix.
    """
    a, b = g[0]
    c, d = g[1]
    for e in (1, -1):
        for e2 in (1, -1):
            # P = [[e,0],[2m,-e]], Q = [[e2,0],[2m',-e2]]
            # rows of P@g - g@Q as linear forms in (m, m'):
            eqs = [
                ((0, -2 * b), (e2 - e) * a),        # entry (0,0)
                ((0, 0), -b * (e + e2)),            # entry (0,1)
                ((2 * a, -2 * d), (e + e2) * c),    # entry (1,0)
                ((2 * b, 0), (e2 - e) * d),         # entry (1,1)
            ]
            if _integer_solvable(eqs):
                return True
    return False


def _integer_solvable(eqs) -> bool:
    rows = [list(coeffs) for coeffs, _ in eqs]
    rhs = [r for _, r in eqs]
    dmat, s, _t = smith_normal_form(rows)
    srhs = [sum(s[i][j] * rhs[j] for j in range(len(rhs))) for i in range(len(rhs))]
    n_unknowns = 2
    for i in range(len(rows)):
        if i < n_unknowns and i < len(dmat) and dmat[i][i]:
            if srhs[i] % dmat[i][i]:
                return False
        else:
            if srhs[i]:
                return False
    return True


def count_reflective(assembly: JSJAssembly, kinds=None) -> int:
    """Number of glued tori passing the reflective check; `kinds` may
    override the side kind per cusp id (defaults: HYP pieces are HYP
    sides, fibered pieces are vertically fibered sides)."""
    kinds = dict(kinds or {})

    def side(cid):
        if cid in kinds:
            return kinds[cid]
        piece = assembly.piece_of(cid)
        if piece.kind == HYP:
            return HYP
        if piece.kind == SF:
            return VSF
        raise AssemblyError(f"piece at {cid!r} has no reflection data")

    total = 0
    for glue in assembly.gluings:
        if is_reflective(glue.matrix, side(glue.cusp_a), side(glue.cusp_b)):
            total += 1
    return total


def dehn_twist(n: int):
    return ((1, n), (0, 1))


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def assembly_from_json_obj(obj) -> JSJAssembly:
    """Schema: {"pieces": [{"kind": "SF"|"HYP"|"OPAQUE", "seifert": "M(...)",
    "cusps": [{"id", "fiber", "base", "shift", "gram", "area"}], "token"}],
    "gluings": [{"a", "b", "matrix": [[..]]}], "m": int?, "orientation": 1|-1}.
    """
    try:
        pieces = []
        for p in obj["pieces"]:
            cusps = []
            for c in p.get("cusps", ()):
                cusps.append(Cusp(
                    id=c["id"],
                    fiber=tuple(c["fiber"]) if "fiber" in c else None,
                    base=tuple(c["base"]) if "base" in c else None,
                    shift=int(c.get("shift", 0)),
                    gram=tuple(tuple(Fraction(x) for x in row) for row in c["gram"]) if "gram" in c else None,
                    area=Fraction(c["area"]) if "area" in c else None,
                ))
            seifert = None
            if "seifert" in p:
                s = p["seifert"]
                seifert = SeifertData.parse(s) if isinstance(s, str) else SeifertData(
                    s["orientable_base"], s["genus"], s["boundary"],
                    tuple(Fraction(f) for f in s.get("fibers", ())))
            pieces.append(Piece(p["kind"], cusps, seifert, p.get("token", "")))
        gluings = [Gluing(g["a"], g["b"], tuple(tuple(int(x) for x in row) for row in g["matrix"]))
                   for g in obj.get("gluings", ())]
        return JSJAssembly(pieces, gluings, obj.get("m"), obj.get("orientation", 1))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, AssemblyError):
            raise
        raise AssemblyError(f"malformed assembly object: {exc}") from exc
