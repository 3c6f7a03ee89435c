"""Pants decompositions, elementary moves and finite pants-graph balls.

All searches run inside a ``Universe``: the complete set of curves with
weights bounded by a fixed constant.  Truncation is handled by explicit
certificates: an edge's triangle completions are guaranteed to lie in the
universe when the two moving curves' weight vectors sum below the bound
(a smoothing of two curves never exceeds the sum of their coordinates),
and ball vertices at full radius are flagged as frontier.
"""

from .errors import (
    CurveNotInDecomposition,
    NotAPantsDecomposition,
    ShapeError,
    UnknownCurve,
)
from .farey import FOUR_HOLED_SPHERE, ONE_HOLED_TORUS


class Universe:
    """All curves with weights <= weight_bound, with disjointness caches."""

    def __init__(self, model, weight_bound):
        self.model = model
        self.weight_bound = weight_bound
        self.curves = model.enumerate_curves(weight_bound)
        self._index = {c: i for i, c in enumerate(self.curves)}
        self._disjoint = {}

    def __contains__(self, curve):
        return curve in self._index

    def __len__(self):
        return len(self.curves)

    def require(self, curve):
        if curve not in self._index:
            raise UnknownCurve(f"curve {curve} is not in the universe")
        return curve

    def disjoint_set(self, curve):
        """All universe curves disjoint from the given one."""
        self.require(curve)
        if curve not in self._disjoint:
            model = self.model
            self._disjoint[curve] = frozenset(
                c for c in self.curves if c != curve and model.intersection(c, curve) == 0
            )
        return self._disjoint[curve]

    def intersection(self, c1, c2):
        return self.model.intersection(c1, c2)

    def curves_within(self, weights_cap):
        """Curves whose weight vector is bounded by the given vector."""
        return [
            c for c in self.curves
            if all(w <= cap for w, cap in zip(c.weights, weights_cap))
        ]


class PantsDecomposition:
    """A canonically sorted maximal disjoint curve system."""

    __slots__ = ("curves",)

    def __init__(self, curves):
        object.__setattr__(self, "curves", tuple(sorted(set(curves))))

    def __setattr__(self, name, value):
        raise AttributeError("PantsDecomposition is immutable")

    def __eq__(self, other):
        return isinstance(other, PantsDecomposition) and self.curves == other.curves

    def __hash__(self):
        return hash(self.curves)

    def __lt__(self, other):
        return self.key() < other.key()

    def __repr__(self):
        return f"P{[c.weights for c in self.curves]}"

    def key(self):
        return tuple(c.weights for c in self.curves)

    def __iter__(self):
        return iter(self.curves)

    def __contains__(self, curve):
        return curve in self.curves

    def replace(self, removed, added):
        if removed not in self.curves:
            raise CurveNotInDecomposition(f"{removed} not in {self}")
        return PantsDecomposition(
            [added if c == removed else c for c in self.curves]
        )

    def rest(self, curve):
        if curve not in self.curves:
            raise CurveNotInDecomposition(f"{curve} not in {self}")
        return tuple(c for c in self.curves if c != curve)

    def to_json(self):
        return [list(c.weights) for c in self.curves]


def is_pants_decomposition(model, curves):
    """Count and pairwise-disjointness check."""
    curves = list(curves)
    if len(set(curves)) != model.surface.complexity:
        return False
    for i, c1 in enumerate(curves):
        for c2 in curves[i + 1:]:
            if model.intersection(c1, c2) != 0:
                return False
    return True


class PantsAdjacency:
    """Dual structure of a decomposition: curves vs complementary pants."""

    def __init__(self, model, decomposition):
        if not is_pants_decomposition(model, decomposition.curves):
            raise NotAPantsDecomposition(f"{decomposition} is not a decomposition")
        self.model = model
        self.decomposition = decomposition
        pieces, _ = model.pieces(decomposition.curves)
        expected = 2 * model.surface.genus - 2 + model.surface.punctures
        if len(pieces) != expected or not all(p.is_pants() for p in pieces):
            raise ShapeError("complement of a pants decomposition must be pants")
        self.pants = pieces
        self._pants_of_curve = {}
        for ci, curve in enumerate(decomposition.curves):
            touching = frozenset(
                pi for pi, p in enumerate(pieces)
                if any(side[0] == ci for side in p.sides)
            )
            self._pants_of_curve[curve] = touching

    def pants_of(self, curve):
        return self._pants_of_curve[curve]

    def lie_on_disjoint_subsurfaces(self, a, b):
        """True when a and b do not cobound a common pair of pants."""
        return not (self.pants_of(a) & self.pants_of(b))


def classify_complement(model, decomposition, curve):
    """Chart type of the complement of the other curves around ``curve``."""
    rest = decomposition.rest(curve)
    if not rest:
        # the chart is the whole surface
        kind = (model.surface.genus, model.surface.punctures)
    else:
        pieces, locate = model.pieces(rest)
        kind = pieces[locate(model.geometry(curve))].kind()
    if kind == (1, 1):
        return ONE_HOLED_TORUS
    if kind == (0, 4):
        return FOUR_HOLED_SPHERE
    raise ShapeError(f"chart has impossible topology {kind}")


def chart_minimal_intersection(chart_kind):
    return 1 if chart_kind == ONE_HOLED_TORUS else 2


def elementary_moves(universe, decomposition, curve):
    """All moves replacing ``curve``, complete within the universe.

    Returns (chart_kind, [(new_curve, new_decomposition), ...]).
    """
    model = universe.model
    universe.require(curve)
    rest = decomposition.rest(curve)
    kind = classify_complement(model, decomposition, curve)
    m = chart_minimal_intersection(kind)
    candidates = None
    for f in rest:
        ds = universe.disjoint_set(f)
        candidates = ds if candidates is None else (candidates & ds)
    if candidates is None:
        candidates = frozenset(universe.curves)
    moves = []
    for c in sorted(candidates):
        if c in decomposition:
            continue
        inter = model.intersection(c, curve)
        if inter == 0:
            raise ShapeError("curve disjoint from a full decomposition")
        if inter == m:
            moves.append((c, decomposition.replace(curve, c)))
    return kind, moves


def is_move(universe, P, Q):
    """Exact edge test for two decompositions in the universe."""
    shared = set(P.curves) & set(Q.curves)
    if len(shared) != len(P.curves) - 1:
        return False
    a = next(c for c in P.curves if c not in shared)
    b = next(c for c in Q.curves if c not in shared)
    kind = classify_complement(universe.model, P, a)
    return universe.intersection(a, b) == chart_minimal_intersection(kind)


class Ball:
    """BFS ball of the pants graph, with labeled edges and frontier flags."""

    def __init__(self, universe, seed, radius):
        self.universe = universe
        self.seed = seed
        self.radius = radius
        self.depth = {seed: 0}
        self.edges = {}  # frozenset({P, Q}) -> (removed from min-key side, added)
        self.adjacency = {seed: set()}
        self.move_certified = {}

        frontier = [seed]
        for d in range(1, radius + 1):
            nxt = []
            for P in sorted(frontier):
                for Q in self._neighbors(P):
                    if Q not in self.depth:
                        self.depth[Q] = d
                        self.adjacency[Q] = set()
                        nxt.append(Q)
            frontier = nxt
        # second pass: all edges among discovered vertices (including
        # frontier-to-frontier edges)
        for P in sorted(self.depth):
            for Q in self._neighbors(P):
                if Q in self.depth:
                    self._add_edge(P, Q)

    def _neighbors(self, P):
        out = []
        for a in P.curves:
            _, moves = elementary_moves(self.universe, P, a)
            out.extend(Q for _, Q in moves)
        return sorted(out)

    def _add_edge(self, P, Q):
        key = self._edge_key(P, Q)
        if key in self.edges:
            return
        first, second = sorted([P, Q])
        removed = next(c for c in first.curves if c not in second)
        added = next(c for c in second.curves if c not in first)
        self.edges[key] = (removed, added)
        self.adjacency[P].add(Q)
        self.adjacency[Q].add(P)

    @staticmethod
    def _edge_key(P, Q):
        return frozenset((P, Q))

    def __contains__(self, P):
        return P in self.depth

    def vertices(self):
        return sorted(self.depth)

    def is_frontier(self, P):
        return self.depth[P] == self.radius

    def interior_vertices(self):
        return [P for P in self.vertices() if not self.is_frontier(P)]

    def has_edge(self, P, Q):
        return self._edge_key(P, Q) in self.edges

    def move_of_edge(self, P, Q):
        """(removed, added) for the directed edge P -> Q."""
        removed = next(c for c in P.curves if c not in Q)
        added = next(c for c in Q.curves if c not in P)
        return removed, added

    def edge_completion_certified(self, P, Q):
        """Both triangle completions of this edge provably lie in the
        universe: a smoothing's weights never exceed the sum."""
        removed, added = self.move_of_edge(P, Q)
        cap = self.universe.weight_bound
        return all(
            x + y <= cap for x, y in zip(removed.weights, added.weights)
        )

    def to_json(self):
        verts = self.vertices()
        index = {P: i for i, P in enumerate(verts)}
        return {
            "surface": self.universe.model.surface.to_json(),
            "weight_bound": self.universe.weight_bound,
            "radius": self.radius,
            "seed": self.seed.to_json(),
            "vertices": [
                {
                    "curves": P.to_json(),
                    "depth": self.depth[P],
                    "frontier": self.is_frontier(P),
                }
                for P in verts
            ],
            "edges": [
                {
                    "u": index[min(key)],
                    "v": index[max(key)],
                    "removed": list(removed.weights),
                    "added": list(added.weights),
                }
                for key, (removed, added) in sorted(
                    self.edges.items(),
                    key=lambda kv: (index[min(kv[0])], index[max(kv[0])]),
                )
            ],
        }

    def to_dot(self):
        verts = self.vertices()
        index = {P: i for i, P in enumerate(verts)}
        lines = ["graph pantsball {"]
        for P in verts:
            shape = "circle" if not self.is_frontier(P) else "dashed"
            label = ";".join(
                ",".join(str(w) for w in c.weights) for c in P.curves
            )
            style = ' style="dashed"' if self.is_frontier(P) else ""
            lines.append(f'  v{index[P]} [label="{label}"{style}];')
        for key, (removed, added) in sorted(
            self.edges.items(), key=lambda kv: (index[min(kv[0])], index[max(kv[0])])
        ):
            u, v = index[min(key)], index[max(key)]
            rm = ",".join(str(w) for w in removed.weights)
            ad = ",".join(str(w) for w in added.weights)
            lines.append(f'  v{u} -- v{v} [label="{rm}->{ad}"];')
        lines.append("}")
        return "\n".join(lines)


def chain_seed(model):
    """The shipped seed decomposition of each surface."""
    s = model.surface
    if s.genus == 0:
        rings = [
            model.ring_curve(list(range(1, j + 2)))
            for j in range(1, s.complexity + 1)
        ]
        return PantsDecomposition(rings)
    if (s.genus, s.punctures) == (1, 1):
        return PantsDecomposition([model.curve(model.basis_curve_weights("vertical"))])
    return PantsDecomposition(
        [
            model.curve(model.basis_curve_weights("vertical")),
            model.curve(model.basis_curve_weights("vertical2")),
        ]
    )


def build_ball(universe, seed, radius):
    for c in seed.curves:
        universe.require(c)
    if not is_pants_decomposition(universe.model, seed.curves):
        raise NotAPantsDecomposition("seed is not a pants decomposition")
    return Ball(universe, seed, radius)
