"""Normal-coordinate combinatorics: matching conditions and curve tracing.

A weight vector (one non-negative integer per edge) satisfies the matching
conditions when in every triangle the three side weights have even sum and
obey the triangle inequalities; the corner coordinate

    c_k = (w_{k+1} + w_{k+2} - w_k) / 2

counts the arcs cutting corner k.  Points on an edge are indexed 0..w-1 in
the reading direction of the edge's canonical slot (from that slot's
corner k+1 towards its corner k+2); the glued slot reads them reversed.

Inside a triangle, reading side k from its start corner k+1, the first
c_{k+1} points belong to arcs cutting corner k+1 and the rest to arcs
cutting corner k+2; the j-th arc of a corner (j = 0 innermost) meets the
corner's two sides at the j-th point from the corner.
"""

from collections import namedtuple

from .errors import NotConnected, ShapeError

Crossing = namedtuple("Crossing", ["edge", "position", "slot"])
# one step of a trace: the curve leaves the current triangle through
# ``slot`` = (triangle, side), at the edge point with global index
# ``position`` on ``edge``.


def corner_coordinates(tri, weights):
    """Per-triangle corner coordinates, or None if matching fails."""
    out = []
    for t in range(tri.num_triangles):
        w = [weights[tri.slot_edge[(t, k)]] for k in range(3)]
        if (w[0] + w[1] + w[2]) % 2:
            return None
        c = [(w[(k + 1) % 3] + w[(k + 2) % 3] - w[k]) // 2 for k in range(3)]
        if min(c) < 0:
            return None
        out.append(tuple(c))
    return out


def check_matching(tri, weights):
    """(ok, reason) for the matching conditions alone."""
    if len(weights) != tri.num_edges:
        raise ShapeError(
            f"expected {tri.num_edges} weights, got {len(weights)}"
        )
    if any(w < 0 or w != int(w) for w in weights):
        return False, "weights must be non-negative integers"
    if all(w == 0 for w in weights):
        return False, "empty (all weights zero)"
    if corner_coordinates(tri, weights) is None:
        return False, "parity or triangle inequality fails in some triangle"
    return True, ""


def _to_global(tri, weights, slot, pos):
    edge = tri.slot_edge[slot]
    if slot == tri.canonical_slot(edge):
        return pos
    return weights[edge] - 1 - pos


def _from_global(tri, weights, slot, g):
    edge = tri.slot_edge[slot]
    if slot == tri.canonical_slot(edge):
        return g
    return weights[edge] - 1 - g


def _step(tri, weights, corners, slot, pos):
    """Cross the triangle entered through ``slot`` at slot-position ``pos``.

    Returns (exit_slot, exit_pos) with exit_pos read from the exit slot's
    own start corner.
    """
    t, k = slot
    c = corners[t]
    w = [weights[tri.slot_edge[(t, i)]] for i in range(3)]
    if pos < c[(k + 1) % 3]:
        k2 = (k + 2) % 3
        pos2 = w[k2] - 1 - pos
    else:
        k2 = (k + 1) % 3
        pos2 = w[k] - 1 - pos
    return (t, k2), pos2


def _directed_states(tri, weights):
    for e in range(tri.num_edges):
        for g in range(weights[e]):
            for slot in tri.edge_slots[e]:
                yield (slot, g)


def _advance(tri, weights, corners, state):
    """From a directed state (entering slot, global index), produce the
    crossing made and the next state."""
    slot, g = state
    pos = _from_global(tri, weights, slot, g)
    exit_slot, exit_pos = _step(tri, weights, corners, slot, pos)
    g2 = _to_global(tri, weights, exit_slot, exit_pos)
    next_slot = tri.gluing[exit_slot]
    edge = tri.slot_edge[exit_slot]
    return Crossing(edge, g2, exit_slot), (next_slot, g2)


def components(tri, weights):
    """The traced components, each a list of Crossings (cyclic order).

    Every undirected edge point is used by exactly one component; each
    component appears once (one direction chosen canonically).
    """
    corners = corner_coordinates(tri, weights)
    if corners is None:
        raise ShapeError("weights do not satisfy the matching conditions")
    seen = set()
    out = []
    for state in sorted(_directed_states(tri, weights)):
        if state in seen:
            continue
        crossings = []
        cur = state
        while cur not in seen:
            seen.add(cur)
            crossing, cur = _advance(tri, weights, corners, cur)
            crossings.append(crossing)
        # mark the reversed direction as seen too: reversed states are the
        # same undirected passages entered from the opposite slot
        for c in crossings:
            seen.add((c.slot, c.position))
        out.append(crossings)
    return out


def trace_curve(tri, weights):
    """The cyclic crossing sequence of a connected curve.

    Starts at the canonical smallest directed state; raises NotConnected
    for multicurves.
    """
    comps = components(tri, weights)
    if len(comps) != 1:
        raise NotConnected(f"weight vector traces to {len(comps)} components")
    return comps[0]


def crossing_counts(tri, crossings):
    counts = [0] * tri.num_edges
    for c in crossings:
        counts[c.edge] += 1
    return counts


# --- constructions -----------------------------------------------------------


def vertex_link_weights(tri, vertex):
    """Weights of the loop around one puncture (peripheral, for tests)."""
    w = [0] * tri.num_edges
    for e in range(tri.num_edges):
        for end in tri.edge_ends(e):
            if end == vertex:
                w[e] += 1
    return tuple(w)


def neighborhood_boundary_weights(tri, vertices, path_edges):
    """Weights of the boundary of a neighborhood of a subtree.

    ``vertices`` are vertex classes and ``path_edges`` edge indices forming
    a tree joining them.  Crosses every edge end at a tree vertex except
    the ends of tree edges themselves.  The result is normal only when no
    triangle carries two tree edges; the curve validator is the arbiter.
    """
    vset = set(vertices)
    w = [0] * tri.num_edges
    for e in range(tri.num_edges):
        for end in tri.edge_ends(e):
            if end in vset:
                w[e] += 1
        if e in path_edges:
            w[e] -= 2
    if any(x < 0 for x in w):
        raise ShapeError("path edges must join the given vertices")
    return tuple(w)


def vertex_span_boundary_weights(tri, vertices):
    """Weights of the boundary of a neighborhood of a full vertex span.

    Crosses exactly the edges with one end inside and one outside; this is
    always matching-valid, and is a single curve whenever the span and its
    complement are connected.
    """
    vset = set(vertices)
    w = []
    for e in range(tri.num_edges):
        ends = tri.edge_ends(e)
        w.append(1 if (ends[0] in vset) != (ends[1] in vset) else 0)
    return tuple(w)


# --- enumeration -------------------------------------------------------------


def _edge_order(tri):
    """Order edges so triangles complete early (better DFS pruning)."""
    remaining = set(range(tri.num_edges))
    order = []
    placed = set()
    while remaining:
        best, best_score = None, (-1, 0)
        for e in sorted(remaining):
            score = 0
            for t, k in tri.edge_slots[e]:
                have = sum(
                    1
                    for i in range(3)
                    if tri.slot_edge[(t, i)] in placed and tri.slot_edge[(t, i)] != e
                )
                score = max(score, have)
            key = (score, -e)
            if key > best_score:
                best, best_score = e, key
        order.append(best)
        placed.add(best)
        remaining.discard(best)
    return order


def enumerate_matchings(tri, weight_bound):
    """All weight vectors <= bound satisfying the matching conditions.

    Depth-first with per-triangle pruning; yields tuples in a fixed
    deterministic order.  Includes multicurves and peripheral loops;
    excludes only the zero vector.
    """
    order = _edge_order(tri)
    position = {e: i for i, e in enumerate(order)}
    # for each triangle, the DFS step at which it becomes fully assigned,
    # and the step at which two of its edges are known
    tri_edges = [tri.triangle_edges(t) for t in range(tri.num_triangles)]

    weights = [0] * tri.num_edges

    def ranges_for(e_idx):
        e = order[e_idx]
        lo, hi = 0, weight_bound
        parity = None
        for t, k in tri.edge_slots[e]:
            others = [tri.slot_edge[(t, i)] for i in range(3) if tri.slot_edge[(t, i)] != e]
            if len(others) == 1:
                # edge appears twice in this triangle: constraint is on
                # 2*w_e +- w_other; handled by the full check below
                continue
            o1, o2 = others
            if position[o1] < e_idx and position[o2] < e_idx:
                x, y = weights[o1], weights[o2]
                lo = max(lo, abs(x - y))
                hi = min(hi, x + y)
                parity = (x + y) % 2
        return lo, hi, parity

    def full_check(upto_idx):
        assigned = {order[i] for i in range(upto_idx + 1)}
        for t in range(tri.num_triangles):
            es = tri_edges[t]
            if not all(e in assigned for e in es):
                continue
            w = [weights[e] for e in es]
            if (w[0] + w[1] + w[2]) % 2:
                return False
            if 2 * max(w) > sum(w):
                return False
        return True

    n = tri.num_edges

    def rec(i):
        if i == n:
            if any(weights):
                yield tuple(weights)
            return
        lo, hi, parity = ranges_for(i)
        for v in range(lo, hi + 1):
            if parity is not None and v % 2 != parity:
                continue
            weights[order[i]] = v
            # check any triangle completed by this assignment
            ok = True
            for t, _ in tri.edge_slots[order[i]]:
                es = tri_edges[t]
                if all(position[e] <= i for e in es):
                    w = [weights[e] for e in es]
                    if (w[0] + w[1] + w[2]) % 2 or 2 * max(w) > sum(w):
                        ok = False
                        break
            if ok:
                yield from rec(i + 1)
        weights[order[i]] = 0

    yield from rec(0)
