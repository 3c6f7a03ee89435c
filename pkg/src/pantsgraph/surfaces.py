"""Supported surfaces and their shipped ideal triangulations.

A triangulation is a collection of oriented ideal triangles with glued
sides.  Conventions, used by every other module:

* Triangle corners are indexed 0, 1, 2 counterclockwise.
* Side k is opposite corner k and has ordered endpoints
  (corner k+1, corner k+2); walking the boundary counterclockwise reads
  every side in that direction.
* A gluing identifies side (t, k) with side (t', k') reversing the induced
  boundary orientations: corner k+1 of t matches corner k'+2 of t', and
  corner k+2 matches corner k'+1.  This forces a coherent orientation of
  the glued surface, which the hyperbolic development verifies.

The shipped models:

* one-holed torus: unit square with one lattice puncture, cut by the NE
  diagonal (2 triangles).
* twice-punctured torus: [0,2] x [0,1] with punctures at (0,0) and (1,0),
  squares cut by the NE diagonal (left) and NW diagonal (right); this
  choice admits an orientation-reversing symmetry x -> -x and an
  orientation-preserving involution (x, y) -> (1-x, -y).
* r-punctured spheres (4 <= r <= 8): double of a convex ideal polygon with
  vertices p_1 .. p_r, both sides fan-triangulated from p_1.  The
  front/back swap is the orientation-reversing reflection.
"""

import json
from importlib import resources

from .errors import ShapeError, Unsupported

SUPPORTED = ((1, 1), (0, 4), (0, 5), (1, 2), (0, 6), (0, 7), (0, 8))


class SurfaceId:
    """Genus and puncture count of a supported surface."""

    __slots__ = ("genus", "punctures")

    def __init__(self, genus, punctures):
        if (genus, punctures) not in SUPPORTED:
            raise Unsupported(f"surface ({genus},{punctures}) is not supported")
        object.__setattr__(self, "genus", genus)
        object.__setattr__(self, "punctures", punctures)

    def __setattr__(self, name, value):
        raise AttributeError("SurfaceId is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, SurfaceId)
            and self.genus == other.genus
            and self.punctures == other.punctures
        )

    def __hash__(self):
        return hash((self.genus, self.punctures))

    def __repr__(self):
        return f"S_{self.genus},{self.punctures}"

    @property
    def complexity(self):
        """Number of curves in a pants decomposition, 3g - 3 + r."""
        return 3 * self.genus - 3 + self.punctures

    @property
    def euler(self):
        return 2 - 2 * self.genus - self.punctures

    def to_json(self):
        return f"{self.genus},{self.punctures}"

    @classmethod
    def from_json(cls, text):
        g, r = text.split(",")
        return cls(int(g), int(r))


def _other(pair, x):
    a, b = pair
    return b if x == a else a


class IdealTriangulation:
    """Slot-level ideal triangulation data with derived edge/vertex tables."""

    def __init__(self, surface, gluing, corner_labels=None, edge_names=None, name=""):
        self.surface = surface
        self.name = name
        slots = sorted(gluing)
        tris = {t for t, _ in slots}
        self.num_triangles = len(tris)
        if tris != set(range(self.num_triangles)):
            raise ShapeError("triangles must be numbered 0..T-1")
        if slots != [(t, k) for t in range(self.num_triangles) for k in range(3)]:
            raise ShapeError("every triangle needs exactly slots 0,1,2")
        for s, s2 in gluing.items():
            if s2 == s or gluing.get(s2) != s:
                raise ShapeError(f"gluing is not a fixed-point-free involution at {s}")
        self.gluing = dict(gluing)

        # edges: canonical slot = lexicographically smaller one
        self.edge_slots = []
        self.slot_edge = {}
        for s in slots:
            s2 = self.gluing[s]
            if s < s2:
                self.slot_edge[s] = self.slot_edge[s2] = len(self.edge_slots)
                self.edge_slots.append((s, s2))
        self.num_edges = len(self.edge_slots)
        self.edge_names = list(edge_names) if edge_names else [
            f"e{i}" for i in range(self.num_edges)
        ]
        if len(self.edge_names) != self.num_edges:
            raise ShapeError("edge name count mismatch")

        # vertex classes: orbits of corners under the around-the-vertex step
        self.corner_vertex = {}
        self.vertices = []  # list of corner lists, one per puncture
        for t in range(self.num_triangles):
            for j in range(3):
                if (t, j) in self.corner_vertex:
                    continue
                orbit = []
                cur = (t, j)
                while cur not in self.corner_vertex:
                    self.corner_vertex[cur] = len(self.vertices)
                    orbit.append(cur)
                    cur = self._next_corner_around_vertex(cur)
                if cur != (t, j):
                    raise ShapeError("corner orbit did not close up")
                self.vertices.append(orbit)

        if len(self.vertices) != surface.punctures:
            raise ShapeError(
                f"triangulation has {len(self.vertices)} punctures, "
                f"expected {surface.punctures}"
            )
        if self.num_triangles - self.num_edges != surface.euler:
            raise ShapeError("Euler characteristic mismatch")

        # optional puncture labels (1-based for spheres); check consistency
        self.vertex_labels = list(range(len(self.vertices)))
        if corner_labels is not None:
            seen = {}
            for t in range(self.num_triangles):
                for j in range(3):
                    v = self.corner_vertex[(t, j)]
                    lab = corner_labels[t][j]
                    if seen.setdefault(v, lab) != lab:
                        raise ShapeError("inconsistent puncture labels around a vertex")
            self.vertex_labels = [seen[v] for v in range(len(self.vertices))]

    # -- incidence helpers ---------------------------------------------------

    def _next_corner_around_vertex(self, corner):
        """Step to the next corner around the same ideal vertex.

        From corner (t, j), cross the adjacent side (t, j+1); corner j is
        that side's endpoint k+2, which the gluing matches to k'+1.
        """
        t, j = corner
        k = (j + 1) % 3
        t2, k2 = self.gluing[(t, k)]
        return (t2, (k2 + 1) % 3)

    def side_endpoints(self, t, k):
        """Ordered corner indices of side k (start, end) along the boundary."""
        return ((t, (k + 1) % 3), (t, (k + 2) % 3))

    def edge_of(self, t, k):
        return self.slot_edge[(t, k)]

    def canonical_slot(self, edge):
        return self.edge_slots[edge][0]

    def other_slot(self, slot):
        return self.gluing[slot]

    def edge_ends(self, edge):
        """The two vertex classes at the ends of an edge (may coincide)."""
        (t, k), _ = self.edge_slots[edge]
        a, b = self.side_endpoints(t, k)
        return (self.corner_vertex[a], self.corner_vertex[b])

    def triangle_edges(self, t):
        return tuple(self.slot_edge[(t, k)] for k in range(3))

    def vertex_of_label(self, label):
        return self.vertex_labels.index(label)

    # -- symmetries ------------------------------------------------------

    def check_symmetry(self, corner_map):
        """Validate a corner bijection as a triangulation automorphism.

        ``corner_map`` maps (t, j) -> (t', j') and must send glued sides to
        glued sides.  Returns (edge_permutation, orientation_preserving).
        """
        if sorted(corner_map) != sorted(corner_map.values()):
            raise ShapeError("corner map is not a bijection on corners")
        tri_map = {}
        parity = None
        for t in range(self.num_triangles):
            images = [corner_map[(t, j)] for j in range(3)]
            tius = {ti for ti, _ in images}
            if len(tius) != 1:
                raise ShapeError("corner map does not respect triangles")
            ti = tius.pop()
            tri_map[t] = ti
            js = [j for _, j in images]
            even = js in ([0, 1, 2], [1, 2, 0], [2, 0, 1])
            if parity is None:
                parity = even
            elif parity != even:
                raise ShapeError("corner map mixes orientations")
        edge_perm = {}
        for (t, k), (t2, k2) in self.gluing.items():
            # side k of t has endpoints k+1, k+2; its image side is the one
            # opposite the image of corner k
            it, ik = corner_map[(t, k)]
            i2t, i2k = corner_map[(t2, k2)]
            if self.gluing[(it, ik)] != (i2t, i2k):
                raise ShapeError("corner map does not commute with the gluing")
            edge_perm[self.slot_edge[(t, k)]] = self.slot_edge[(it, ik)]
        return edge_perm, parity

    # -- serialization -----------------------------------------------------

    def to_json(self):
        corner_labels = [
            [self.vertex_labels[self.corner_vertex[(t, j)]] for j in range(3)]
            for t in range(self.num_triangles)
        ]
        return {
            "version": 1,
            "surface": self.surface.to_json(),
            "name": self.name,
            "gluings": sorted(
                [list(s), list(s2)] for s, s2 in self.gluing.items() if s < s2
            ),
            "edge_names": self.edge_names,
            "corner_labels": corner_labels,
        }

    @classmethod
    def from_json(cls, data):
        if data.get("version") != 1:
            raise ShapeError("unknown triangulation format version")
        gluing = {}
        for s, s2 in data["gluings"]:
            gluing[tuple(s)] = tuple(s2)
            gluing[tuple(s2)] = tuple(s)
        return cls(
            SurfaceId.from_json(data["surface"]),
            gluing,
            corner_labels=data["corner_labels"],
            edge_names=data["edge_names"],
            name=data.get("name", ""),
        )


# --- shipped builders -------------------------------------------------------


def build_torus_one():
    """One-holed torus: unit square, NE diagonal, one lattice puncture.

    Triangle 0 is the lower-right half (corners (0,0), (1,0), (1,1)),
    triangle 1 the upper-left half (corners (0,0), (1,1), (0,1)).
    Edges: a = horizontal, b = vertical, d = diagonal.
    """
    surface = SurfaceId(1, 1)
    gluing = {
        (0, 2): (1, 0), (1, 0): (0, 2),  # a: bottom of T0, top of T1
        (0, 0): (1, 1), (1, 1): (0, 0),  # b: right of T0, left of T1
        (0, 1): (1, 2), (1, 2): (0, 1),  # d: the shared diagonal
    }
    tri = IdealTriangulation(
        surface, gluing,
        corner_labels=[[1, 1, 1], [1, 1, 1]],
        edge_names=None, name="torus_one",
    )
    tri.edge_names = [_name_for_slots(tri, {"a": (0, 2), "b": (0, 0), "d": (0, 1)}, e)
                      for e in range(tri.num_edges)]
    return tri


def build_torus_two():
    """Twice-punctured torus: [0,2] x [0,1], punctures (0,0) and (1,0).

    Square 1 ([0,1] x [0,1]) is cut by its NE diagonal into T0 (lower
    right) and T1 (upper left); square 2 by its NW diagonal into T2 (lower
    left) and T3 (upper right).  Edges: a1, a2 = bottom halves, b1 = x=0,
    b2 = x=1, d1, d2 = the diagonals.
    """
    surface = SurfaceId(1, 2)
    gluing = {}

    def glue(s, s2):
        gluing[s] = s2
        gluing[s2] = s

    glue((0, 2), (1, 0))  # a1
    glue((2, 2), (3, 0))  # a2
    glue((0, 0), (2, 1))  # b2
    glue((1, 1), (3, 2))  # b1
    glue((0, 1), (1, 2))  # d1
    glue((2, 0), (3, 1))  # d2
    # puncture labels: v1 = (0,0)-class is 1, v2 = (1,0)-class is 2
    corner_labels = [
        [1, 2, 2],  # T0: (0,0), (1,0), (1,1)
        [1, 2, 1],  # T1: (0,0), (1,1), (0,1)
        [2, 1, 2],  # T2: (1,0), (2,0), (1,1)
        [1, 1, 2],  # T3: (2,0), (2,1), (1,1)
    ]
    tri = IdealTriangulation(surface, gluing, corner_labels=corner_labels,
                             name="torus_two")
    names = {"a1": (0, 2), "a2": (2, 2), "b2": (0, 0), "b1": (1, 1),
             "d1": (0, 1), "d2": (2, 0)}
    tri.edge_names = [_name_for_slots(tri, names, e) for e in range(tri.num_edges)]
    return tri


def build_sphere(r):
    """r-punctured sphere as the double of a fan-triangulated ideal r-gon.

    Front triangles F_j (j = 2 .. r-1) have corners (p1, p_j, p_{j+1})
    counterclockwise; back triangles B_j are their mirror images with
    corners (p1, p_{j+1}, p_j).  Triangle indices: F_j -> j-2,
    B_j -> (r-2) + (j-2).
    """
    if r < 4 or r > 8:
        raise Unsupported(f"sphere with {r} punctures is not supported")
    surface = SurfaceId(0, r)
    F = {j: j - 2 for j in range(2, r)}
    B = {j: (r - 2) + (j - 2) for j in range(2, r)}
    gluing = {}

    def glue(s, s2):
        gluing[s] = s2
        gluing[s2] = s

    # F_j corners: 0 -> p1, 1 -> p_j, 2 -> p_{j+1}
    #   side 0 = (p_j, p_{j+1}) = polygon side s_j
    #   side 1 = (p_{j+1}, p1) = diagonal d_{j+1} (or polygon side s_r at j=r-1)
    #   side 2 = (p1, p_j) = diagonal d_j (or polygon side s_1 at j=2)
    # B_j corners: 0 -> p1, 1 -> p_{j+1}, 2 -> p_j (mirror)
    names = {}
    for j in range(2, r):
        glue((F[j], 0), (B[j], 0))
        names[f"s{j}"] = (F[j], 0)
    glue((F[2], 2), (B[2], 1))
    names["s1"] = (F[2], 2)
    glue((F[r - 1], 1), (B[r - 1], 2))
    names[f"s{r}"] = (F[r - 1], 1)
    for j in range(3, r):
        glue((F[j - 1], 1), (F[j], 2))
        names[f"d{j}"] = (F[j - 1], 1)
        glue((B[j - 1], 2), (B[j], 1))
        names[f"D{j}"] = (B[j - 1], 2)

    corner_labels = [[1, j, j + 1] for j in range(2, r)] + [
        [1, j + 1, j] for j in range(2, r)
    ]
    tri = IdealTriangulation(surface, gluing, corner_labels=corner_labels,
                             name=f"sphere_{r}")
    tri.edge_names = [_name_for_slots(tri, names, e) for e in range(tri.num_edges)]
    return tri


def _name_for_slots(tri, names, edge):
    for name, slot in names.items():
        if tri.slot_edge[slot] == edge:
            return name
    raise ShapeError(f"edge {edge} was not named")


def build_triangulation(surface):
    if surface == SurfaceId(1, 1):
        return build_torus_one()
    if surface == SurfaceId(1, 2):
        return build_torus_two()
    if surface.genus == 0:
        return build_sphere(surface.punctures)
    raise Unsupported(f"no triangulation for {surface}")


_CACHE = {}


def standard_triangulation(surface):
    """The fixed triangulation shipped as package data (deterministic)."""
    if not isinstance(surface, SurfaceId):
        surface = SurfaceId(*surface)
    if surface not in _CACHE:
        fname = f"tri_{surface.genus}_{surface.punctures}.json"
        ref = resources.files("pantsgraph.data").joinpath(fname)
        with ref.open("r") as fh:
            _CACHE[surface] = IdealTriangulation.from_json(json.load(fh))
    return _CACHE[surface]


# --- shipped symmetries ------------------------------------------------------


def reflection_corner_map(tri):
    """The shipped orientation-reversing involution of each triangulation."""
    s = tri.surface
    if s == SurfaceId(1, 1):
        # (x, y) -> (y, x): swaps the two triangles
        return {
            (0, 0): (1, 0), (0, 1): (1, 2), (0, 2): (1, 1),
            (1, 0): (0, 0), (1, 2): (0, 1), (1, 1): (0, 2),
        }
    if s == SurfaceId(1, 2):
        # (x, y) -> (-x, y): T0 <-> T2, T1 <-> T3
        return {
            (0, 0): (2, 1), (0, 1): (2, 0), (0, 2): (2, 2),
            (2, 1): (0, 0), (2, 0): (0, 1), (2, 2): (0, 2),
            (1, 0): (3, 0), (1, 1): (3, 2), (1, 2): (3, 1),
            (3, 0): (1, 0), (3, 2): (1, 1), (3, 1): (1, 2),
        }
    # spheres: the front/back swap fixing every puncture
    r = s.punctures
    out = {}
    for j in range(2, r):
        f, b = j - 2, (r - 2) + (j - 2)
        out[(f, 0)] = (b, 0)
        out[(f, 1)] = (b, 2)
        out[(f, 2)] = (b, 1)
        out[(b, 0)] = (f, 0)
        out[(b, 2)] = (f, 1)
        out[(b, 1)] = (f, 2)
    return out


def torus_two_involution_corner_map():
    """(x, y) -> (1-x, -y) on the twice-punctured torus: an orientation
    preserving involution swapping the two punctures."""
    return {
        (0, 0): (1, 1), (0, 1): (1, 2), (0, 2): (1, 0),
        (1, 1): (0, 0), (1, 2): (0, 1), (1, 0): (0, 2),
        (2, 0): (3, 1), (2, 1): (3, 2), (2, 2): (3, 0),
        (3, 1): (2, 0), (3, 2): (2, 1), (3, 0): (2, 2),
    }
