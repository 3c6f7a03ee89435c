"""Hyperbolic development of a triangulation into the Farey tessellation.

Realizing every ideal triangle of the universal cover as a Farey triangle
(vertices = primitive integer vectors with pairwise determinant +-1) gives
the complete hyperbolic structure in which all shear coordinates vanish.
Consequences used throughout:

* deck transformations and edge-crossing "step" matrices are integer
  2x2 matrices of determinant 1 (coherent orientation);
* the holonomy of a closed curve is hyperbolic exactly when the curve is
  essential and nonperipheral (peripheral loops are parabolic);
* closed geodesics realize the normal coordinates of their isotopy class,
  and distinct geodesics intersect minimally, so intersection numbers can
  be counted on straightened strands with rational arithmetic only.

The frame of an edge sends its base lift to the geodesic (0, infinity);
a strand crossing the edge meets that geodesic at height sqrt(b/c) where
[[a,b],[c,d]] is the strand's axis matrix in the frame, so b/c orders the
strands exactly.
"""

from fractions import Fraction

from .errors import InvalidCurve, ShapeError
from .normal import trace_curve

IDENT = ((1, 0), (0, 1))


def mat_mul(m, n):
    return (
        (m[0][0] * n[0][0] + m[0][1] * n[1][0], m[0][0] * n[0][1] + m[0][1] * n[1][1]),
        (m[1][0] * n[0][0] + m[1][1] * n[1][0], m[1][0] * n[0][1] + m[1][1] * n[1][1]),
    )


def mat_det(m):
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


def mat_inv_unimodular(m):
    d = mat_det(m)
    if abs(d) != 1:
        raise ShapeError("matrix is not unimodular")
    return ((d * m[1][1], -d * m[0][1]), (-d * m[1][0], d * m[0][0]))


def mat_vec(m, v):
    return (m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1])


def mat_neg(m):
    return tuple(tuple(-x for x in row) for row in m)


def psl_normalize(m):
    """Canonical sign representative in PSL(2, Z)."""
    for row in m:
        for x in row:
            if x > 0:
                return m
            if x < 0:
                return mat_neg(m)
    raise ShapeError("zero matrix")


def vec_normalize(v):
    """Canonical representative of a projective integer vector."""
    p, q = v
    if q < 0 or (q == 0 and p < 0):
        p, q = -p, -q
    return (p, q)


def vec_det(u, v):
    return u[0] * v[1] - u[1] * v[0]


def _sign(x):
    return (x > 0) - (x < 0)


def orient(u, v, w):
    """+1 when the boundary points u, v, w are counterclockwise."""
    return _sign(vec_det(u, v)) * _sign(vec_det(v, w)) * _sign(vec_det(w, u))


class Development:
    """Base placements, step matrices and edge frames of a triangulation."""

    def __init__(self, tri):
        self.tri = tri
        self.placements = [None] * tri.num_triangles
        self.tree_slots = set()
        self.step = {}  # slot -> unimodular step matrix (identity on the tree)

        base = ((1, 0), (0, 1), (1, 1))  # infinity, 0, 1: counterclockwise
        self.placements[0] = base
        order = [0]
        seen = {0}
        queue = [0]
        while queue:
            t = queue.pop(0)
            for k in range(3):
                t2, k2 = tri.gluing[(t, k)]
                if t2 in seen:
                    continue
                seen.add(t2)
                queue.append(t2)
                order.append(t2)
                self.placements[t2] = self._neighbor_placement(
                    self.placements[t], k, k2
                )
                self.tree_slots.add((t, k))
                self.tree_slots.add((t2, k2))

        for (t, k), (t2, k2) in tri.gluing.items():
            if (t, k) in self.tree_slots:
                self.step[(t, k)] = IDENT
                continue
            placed = self._neighbor_placement(self.placements[t], k, k2)
            gamma = self._matrix_matching(self.placements[t2], placed)
            self.step[(t, k)] = gamma

        # frame of each edge: its base lift in the canonical slot's placement
        self.frame = []
        for e in range(tri.num_edges):
            (t, k), _ = tri.edge_slots[e]
            pl = self.placements[t]
            u, v = pl[(k + 1) % 3], pl[(k + 2) % 3]
            self.frame.append(mat_inv_unimodular(((u[0], v[0]), (u[1], v[1]))))

    @staticmethod
    def _neighbor_placement(pl, k, k2):
        """Placement of the neighbor glued across side k of a placed triangle.

        The neighbor's corner k2 is the reflected apex; its corners k2+1 and
        k2+2 are the old corners k+2 and k+1 (the gluing reverses the edge).
        """
        a = pl[(k + 1) % 3]
        b = pl[(k + 2) % 3]
        apex = vec_normalize(pl[k])
        med = vec_normalize((a[0] + b[0], a[1] + b[1]))
        dif = vec_normalize((a[0] - b[0], a[1] - b[1]))
        if apex == med:
            new_apex = dif
        elif apex == dif:
            new_apex = med
        else:
            raise ShapeError("placement is not a Farey triangle")
        out = [None, None, None]
        out[k2] = new_apex
        out[(k2 + 1) % 3] = b
        out[(k2 + 2) % 3] = a
        return tuple(out)

    @staticmethod
    def _matrix_matching(src, dst):
        """The unimodular matrix carrying placement src to dst projectively.

        Corner vectors are projective representatives, so the matrix is
        solved up to a sign per corner; the determinant +1 choice is the
        orientation-coherent one.
        """
        m_src = ((src[0][0], src[1][0]), (src[0][1], src[1][1]))
        inv = mat_inv_unimodular(m_src)
        for eps in (1, -1):
            m_dst = (
                (dst[0][0], eps * dst[1][0]),
                (dst[0][1], eps * dst[1][1]),
            )
            gamma = mat_mul(m_dst, inv)
            if mat_det(gamma) != 1:
                continue
            got = vec_normalize(mat_vec(gamma, src[2]))
            if got != vec_normalize(dst[2]):
                raise ShapeError("step matrix does not match third corner")
            return psl_normalize(gamma)
        raise ShapeError("orientation-incoherent gluing (no determinant +1 match)")

    # -- walks ----------------------------------------------------------------

    def holonomy(self, crossings):
        """Deck transformation of one period of a closed dual walk."""
        g = IDENT
        for c in crossings:
            g = mat_mul(g, self.step[c.slot])
        return g

    def strand_frames(self, crossings):
        """Per crossing, the matrix carrying the edge's base lift to the
        lift crossed by the developed walk."""
        tri = self.tri
        g = IDENT
        frames = []
        for c in crossings:
            if c.slot == tri.canonical_slot(c.edge):
                frames.append(g)
            else:
                frames.append(mat_mul(g, self.step[c.slot]))
            g = mat_mul(g, self.step[c.slot])
        return frames


# --- axes of hyperbolic matrices ---------------------------------------------


def normalize_hyperbolic(m):
    """Sign-normalize to trace > 2; raises for non-hyperbolic classes."""
    tr = m[0][0] + m[1][1]
    if tr < 0:
        m, tr = mat_neg(m), -tr
    if tr <= 2:
        raise InvalidCurve(
            "holonomy is not hyperbolic "
            f"(|trace| = {tr}: {'peripheral' if tr == 2 else 'inessential'})"
        )
    return m


def axis_quadratic(m):
    """Coefficients (A, B, C) with fixed points the roots of Ax^2 + Bx + C."""
    a, b = m[0]
    c, d = m[1]
    return (c, d - a, -b)


def quad_eval(quad, v):
    """Sign-correct homogeneous evaluation at the projective point v."""
    A, B, C = quad
    p, q = v
    return A * p * p + B * p * q + C * q * q


def axis_crosses(m, u, v):
    """Does the axis of m cross the geodesic with rational endpoints u, v?"""
    quad = axis_quadratic(m)
    fu, fv = quad_eval(quad, u), quad_eval(quad, v)
    if fu == 0 or fv == 0:
        raise ShapeError("axis endpoint coincides with a cusp")
    return fu * fv < 0


def conjugate_to_frame(m, frame):
    """frame * m * frame^-1."""
    return mat_mul(mat_mul(frame, m), mat_inv_unimodular(frame))


def _roots_positive(m):
    """For a hyperbolic m whose axis misses (0, infinity): are both fixed
    points positive reals?  m must be trace-normalized."""
    A, B, C = axis_quadratic(m)
    if A == 0:
        raise ShapeError("axis through infinity where it should not be")
    # roots same side of 0 iff product C/A > 0; then sign = sign of sum
    if _sign(A) * _sign(C) <= 0:
        raise ShapeError("axis crosses (0, infinity) unexpectedly")
    return _sign(-B) * _sign(A) > 0


def _attracting_positive(m):
    """Is the attracting fixed point of m positive?  (trace > 2, A != 0.)"""
    A, B, C = axis_quadratic(m)
    if A == 0:
        raise ShapeError("attracting fixed point at infinity")
    # x+ = (-B + sqrt(D)) / (2A) with D = B^2 - 4AC > 0
    D = B * B - 4 * A * C
    if A > 0:
        # positive iff sqrt(D) > B
        return B < 0 or D > B * B
    return B > 0 and D < B * B


def axis_height_squared(m):
    """Height^2 of the crossing of axis(m) with the geodesic (0, infinity).

    The semicircle with feet x1 < 0 < x2 meets the imaginary axis at
    height sqrt(-x1 x2) = sqrt(C/A... ) = sqrt(b/c) for m = [[a,b],[c,d]].
    """
    A, B, C = axis_quadratic(m)
    if A == 0:
        raise ShapeError("axis through infinity")
    h2 = Fraction(-C, A)  # -(product of roots) = b/c
    if h2 <= 0:
        raise ShapeError("axis does not cross the frame geodesic")
    return h2


# --- geodesic tracing: matrix -> normal coordinates ---------------------------


def _triangle_crossed_sides(m, placement):
    """Indices of the sides of a placed triangle crossed by axis(m)."""
    out = []
    for k in range(3):
        u = placement[(k + 1) % 3]
        v = placement[(k + 2) % 3]
        if axis_crosses(m, u, v):
            out.append(k)
    return out


def _side_beyond(m, placement):
    """The unique side such that the whole axis lies beyond it, when the
    axis misses the triangle."""
    quad = axis_quadratic(m)
    hits = []
    for k in range(3):
        u = placement[(k + 1) % 3]
        v = placement[(k + 2) % 3]
        w = placement[k]
        if quad_eval(quad, u) * quad_eval(quad, v) < 0:
            return None  # crosses this side: axis meets the triangle
        hits.append((k, u, v, w))
    for k, u, v, w in hits:
        # both roots on the far side of geodesic (u,v) from apex w:
        # in the frame sending u -> infinity, v -> 0, roots and w have signs
        frame = mat_inv_unimodular(((u[0], v[0]), (u[1], v[1])))
        m2 = conjugate_to_frame(m, frame)
        w2 = mat_vec(frame, w)
        w_positive = _sign(w2[0]) * _sign(w2[1]) > 0
        if _roots_positive(m2) != w_positive:
            return k
    raise ShapeError("axis position relative to triangle is inconsistent")


def _attracting_beyond(m, placement, k):
    """Is the attracting fixed point beyond side k of the placed triangle?"""
    u = placement[(k + 1) % 3]
    v = placement[(k + 2) % 3]
    w = placement[k]
    frame = mat_inv_unimodular(((u[0], v[0]), (u[1], v[1])))
    m2 = conjugate_to_frame(normalize_hyperbolic(m), frame)
    w2 = mat_vec(frame, w)
    w_positive = _sign(w2[0]) * _sign(w2[1]) > 0
    return _attracting_positive(m2) != w_positive


def _apply_to_placement(m, placement):
    return tuple(vec_normalize(mat_vec(m, c)) for c in placement)


MAX_WALK = 1_000_000


def geodesic_edge_weights(tri, dev, matrix):
    """Normal coordinates of the closed geodesic of a hyperbolic class.

    Walks the axis through the developed tessellation for one period and
    counts surface-edge crossings.
    """
    m = normalize_hyperbolic(matrix)
    t = 0
    pl = dev.placements[0]
    # walk to a triangle crossed by the axis
    for _ in range(MAX_WALK):
        k = _side_beyond(m, pl)
        if k is None:
            break
        t2, k2 = tri.gluing[(t, k)]
        pl = Development._neighbor_placement(pl, k, k2)
        t = t2
    else:
        raise ShapeError("geodesic walk failed to reach the axis")

    start = (t, pl)
    target = (t, _apply_to_placement(m, pl))
    weights = [0] * tri.num_edges
    entry = None
    for _ in range(MAX_WALK):
        crossed = _triangle_crossed_sides(m, pl)
        if entry is not None:
            crossed = [k for k in crossed if k != entry]
            if len(crossed) != 1:
                raise ShapeError("axis does not cross triangle coherently")
            k = crossed[0]
        else:
            if len(crossed) != 2:
                raise ShapeError("axis start triangle not crossed twice")
            k = crossed[0] if _attracting_beyond(m, pl, crossed[0]) else crossed[1]
        weights[tri.slot_edge[(t, k)]] += 1
        t2, k2 = tri.gluing[(t, k)]
        pl = Development._neighbor_placement(pl, k, k2)
        t, entry = t2, k2
        if (t, pl) == target:
            return tuple(weights)
    raise ShapeError("geodesic walk did not close up")


# --- per-curve geometric profiles ---------------------------------------------


class CurveGeometry:
    """Straightened-strand data of one curve: everything intersection
    counting needs, computed once from the trace."""

    __slots__ = ("weights", "holonomy", "heights", "chords", "positions")

    def __init__(self, tri, dev, weights):
        crossings = trace_curve(tri, weights)
        self.weights = tuple(weights)
        hol = dev.holonomy(crossings)
        self.holonomy = normalize_hyperbolic(hol)
        frames = dev.strand_frames(crossings)

        # per crossing: exact height^2 of the strand on its edge's frame
        n = len(crossings)
        strand_heights = [None] * n
        for i, c in enumerate(crossings):
            local = conjugate_to_frame(
                self.holonomy, mat_mul(dev.frame[c.edge], mat_inv_unimodular(frames[i]))
            )
            strand_heights[i] = axis_height_squared(local)

        # heights per edge, with the trace's combinatorial position
        self.heights = [[] for _ in range(tri.num_edges)]
        self.positions = [[] for _ in range(tri.num_edges)]
        for i, c in enumerate(crossings):
            self.heights[c.edge].append(strand_heights[i])
            self.positions[c.edge].append(c.position)

        # chords: per step, the crossing enters the next triangle through the
        # glued slot and leaves through the next crossing's slot
        self.chords = []
        for i, c in enumerate(crossings):
            c2 = crossings[(i + 1) % n]
            enter_slot = tri.gluing[c.slot]
            t = enter_slot[0]
            if c2.slot[0] != t:
                raise ShapeError("trace steps are not triangle-consecutive")
            self.chords.append(
                (
                    t,
                    enter_slot[1],
                    strand_heights[i],
                    c.edge,
                    c2.slot[1],
                    strand_heights[(i + 1) % n],
                    c2.edge,
                )
            )
