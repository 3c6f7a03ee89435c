"""Curves on a supported surface: validation, intersections, actions.

A curve's identity is its normal coordinate vector on the shipped
triangulation; a ``SurfaceModel`` bundles the triangulation with the
hyperbolic development, homology tables and mapping class generators, and
memoizes the per-curve geometry so that intersection numbers, separation
data and generator actions stay cheap across a whole enumeration.
"""

from .errors import InvalidCurve, NotConnected, ShapeError, Unsupported
from .geometry import CurveGeometry, Development, geodesic_edge_weights
from .homology import HomologyData, TorusTypeData
from .intersect import intersection_from_profiles
from .mapping import MappingData, substitute
from .normal import (
    check_matching,
    components,
    enumerate_matchings,
    trace_curve,
    vertex_span_boundary_weights,
    vertex_link_weights,
)
from .regions import complement_pieces, separation_data as _region_separation
from .surfaces import SurfaceId, standard_triangulation

SEPARATING = "separating"


class Curve:
    """An essential, nonperipheral simple closed curve (normal coordinates)."""

    __slots__ = ("surface", "weights")

    def __init__(self, surface, weights):
        object.__setattr__(self, "surface", surface)
        object.__setattr__(self, "weights", tuple(int(w) for w in weights))

    def __setattr__(self, name, value):
        raise AttributeError("Curve is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, Curve)
            and self.surface == other.surface
            and self.weights == other.weights
        )

    def __lt__(self, other):
        return self.weights < other.weights

    def __hash__(self):
        return hash((self.surface, self.weights))

    def __repr__(self):
        return f"Curve{self.weights}"

    def key(self):
        return self.weights

    def to_json(self):
        return {"surface": self.surface.to_json(), "weights": list(self.weights)}


class SurfaceModel:
    """Shared tables and caches for one surface."""

    def __init__(self, surface):
        if not isinstance(surface, SurfaceId):
            surface = SurfaceId(*surface)
        self.surface = surface
        self.tri = standard_triangulation(surface)
        self.dev = Development(self.tri)
        self.homology = HomologyData(self.tri, self.dev)
        self.mapping = MappingData(self.tri, self.dev)
        self._geometry = {}
        self._intersection = {}
        self._separation = {}
        self._trace = {}
        self._torus_refs = None
        if surface.genus == 1:
            self._torus_refs = TorusTypeData(
                self.homology,
                self.basis_curve_weights("vertical"),
                self.basis_curve_weights("horizontal"),
            )

    # -- reference curves ---------------------------------------------------

    def basis_curve_weights(self, which):
        """Weight vectors of the flat reference curves on the tori."""
        names = self.tri.edge_names
        w = [0] * self.tri.num_edges
        if self.surface == SurfaceId(1, 1):
            table = {
                "vertical": {"a": 1, "d": 1},      # the (1,0) curve
                "horizontal": {"b": 1, "d": 1},    # the (0,1) curve
            }[which]
        elif self.surface == SurfaceId(1, 2):
            table = {
                "vertical": {"a1": 1, "d1": 1},    # (1,0): the circle x = 1/2
                "vertical2": {"a2": 1, "d2": 1},   # (1,0): the circle x = 3/2
                "horizontal": {"b1": 1, "b2": 1, "d1": 1, "d2": 1},  # (0,1)
                "waist": {"a2": 2, "b1": 2, "b2": 2, "d1": 2, "d2": 2},
            }[which]
        else:
            raise Unsupported("reference curves exist on the tori only")
        for name, val in table.items():
            w[names.index(name)] = val
        return tuple(w)

    def ring_curve(self, labels):
        """Sphere curve around a set of punctures (boundary of the span).

        Valid whenever the span of the labelled punctures in the 1-skeleton
        and its complement are both connected (always true for consecutive
        labels); the validator rejects anything else.
        """
        if self.surface.genus != 0:
            raise Unsupported("ring curves are a sphere construction")
        vertices = {self.tri.vertex_of_label(l) for l in labels}
        w = vertex_span_boundary_weights(self.tri, vertices)
        return self.curve(w)

    # -- validation and construction -----------------------------------------

    def validate(self, weights):
        """(ok, reason) for the full curve contract."""
        ok, why = check_matching(self.tri, weights)
        if not ok:
            return False, why
        comps = components(self.tri, weights)
        if len(comps) != 1:
            return False, f"{len(comps)} components"
        m = self.dev.holonomy(comps[0])
        tr = abs(m[0][0] + m[1][1])
        if tr == 2:
            return False, "peripheral"
        if tr < 2:
            return False, "inessential"
        return True, ""

    def curve(self, weights):
        ok, why = self.validate(weights)
        if not ok:
            raise InvalidCurve(f"{tuple(weights)}: {why}")
        return Curve(self.surface, weights)

    def curve_unchecked(self, weights):
        return Curve(self.surface, weights)

    # -- cached per-curve data -------------------------------------------------

    def trace(self, curve):
        if curve.weights not in self._trace:
            self._trace[curve.weights] = trace_curve(self.tri, curve.weights)
        return self._trace[curve.weights]

    def geometry(self, curve):
        if curve.weights not in self._geometry:
            self._geometry[curve.weights] = CurveGeometry(
                self.tri, self.dev, curve.weights
            )
        return self._geometry[curve.weights]

    def intersection(self, c1, c2):
        if c1.weights == c2.weights:
            return 0
        key = (c1.weights, c2.weights) if c1.weights < c2.weights else (
            c2.weights, c1.weights
        )
        if key not in self._intersection:
            self._intersection[key] = intersection_from_profiles(
                self.tri, self.geometry(Curve(self.surface, key[0])),
                self.geometry(Curve(self.surface, key[1])),
            )
        return self._intersection[key]

    def disjoint(self, c1, c2):
        return c1 != c2 and self.intersection(c1, c2) == 0

    def separation(self, curve):
        """(separating, puncture partition or None)."""
        if curve.weights not in self._separation:
            separating, partition = _region_separation(
                self.tri, self.geometry(curve)
            )
            in_span = self.homology.is_separating(self.trace(curve))
            if in_span != separating:
                raise ShapeError(
                    "separation routes disagree (regions vs mod-2 homology)"
                )
            self._separation[curve.weights] = (separating, partition)
        return self._separation[curve.weights]

    def torus_type(self, curve):
        """SEPARATING or the primitive (p, q) class on the filled torus."""
        if self.surface.genus != 1:
            raise Unsupported(f"torus_type undefined on {self.surface}")
        separating, _ = self.separation(curve)
        if separating:
            return SEPARATING
        vec = self.homology.exponent_vector(self.trace(curve))
        return self._torus_refs.type_of(vec)

    def pieces(self, curves):
        """Complement pieces of a disjoint system (with a locator)."""
        profiles = [self.geometry(c) for c in curves]
        return complement_pieces(self.tri, profiles)

    # -- enumeration -----------------------------------------------------------

    def enumerate_curves(self, weight_bound):
        """All curves with weights <= bound, sorted by weight vector."""
        if weight_bound < 1:
            return []
        out = []
        for w in enumerate_matchings(self.tri, weight_bound):
            if self.validate(w)[0]:
                out.append(Curve(self.surface, w))
        out.sort()
        return out

    def vertex_link(self, label):
        return vertex_link_weights(self.tri, self.tri.vertex_of_label(label))

    # -- mapping classes ---------------------------------------------------------

    def generator_tokens(self):
        return self.mapping.generator_tokens()

    def apply_token(self, token, curve):
        kind, name, power = self.mapping.parse_token(token)
        if kind == "perm":
            perm = self.mapping.permutations[name]
            w = [0] * self.tri.num_edges
            for e, val in enumerate(curve.weights):
                w[perm[e]] = val
            return Curve(self.surface, w)
        images = self.mapping.automorphism_images(name, power)
        crossings = self.trace(curve)
        dual = self.mapping.slots_to_dual_word([c.slot for c in crossings])
        basis_word = self.mapping.dual_to_basis(dual)
        image_word = substitute(basis_word, images)
        matrix = self.mapping.basis_matrix_of_word(image_word)
        w = geodesic_edge_weights(self.tri, self.dev, matrix)
        ok, why = self.validate(w)
        if not ok:
            raise ShapeError(f"generator image failed validation: {why}")
        return Curve(self.surface, w)

    def apply_word(self, word, curve):
        """Apply a mapping class word (list of tokens, leftmost last)."""
        for token in reversed(list(word)):
            curve = self.apply_token(token, curve)
        return curve


_MODELS = {}


def get_model(surface):
    if not isinstance(surface, SurfaceId):
        surface = SurfaceId(*surface)
    if surface not in _MODELS:
        _MODELS[surface] = SurfaceModel(surface)
    return _MODELS[surface]
