"""Exact geometric intersection numbers from straightened strands.

Both curves are realized as closed geodesics for the shipped hyperbolic
structure.  Distinct geodesics are automatically in minimal position, so
the intersection number is the plain count of crossings: merge the two
curves' strands along every edge by their exact heights, then count
interleaved chord pairs inside every triangle.  A height tie means the
crossing happens exactly on an edge; any consistent tie-break pushes it
into one of the two adjacent triangles, where it is counted once.
"""

from .errors import ShapeError


def _merged_ranks(tri, A, B, a_first):
    """Per edge, rank-by-height maps for both curves' strands.

    Returns (rank_a, rank_b, totals): rank_x[edge] maps height -> merged
    rank in ascending height order; totals[edge] = strand count.
    """
    rank_a, rank_b, totals = [], [], []
    for e in range(tri.num_edges):
        entries = [(h, 0 if a_first else 1) for h in A.heights[e]] + [
            (h, 1 if a_first else 0) for h in B.heights[e]
        ]
        entries.sort()
        ra, rb = {}, {}
        for i, (h, tag) in enumerate(entries):
            target = ra if (tag == 0) == a_first else rb
            target[h] = i
        # same-curve duplicate heights would mean coinciding lifts
        if len(ra) != len(A.heights[e]) or len(rb) != len(B.heights[e]):
            raise ShapeError("coinciding strands within one curve")
        rank_a.append(ra)
        rank_b.append(rb)
        totals.append(len(entries))
    return rank_a, rank_b, totals


def _chord_positions(tri, chords, rank, totals):
    """Chords as pairs of absolute cyclic positions around each triangle.

    Along side k the merged strands are read in the slot's own direction:
    the canonical slot runs from the frame's infinity-end (largest height)
    downwards, the glued slot the other way.
    """
    side_offsets = {}
    out = {}
    for t in range(tri.num_triangles):
        offs = []
        total = 0
        for k in range(3):
            offs.append(total)
            total += totals[tri.slot_edge[(t, k)]]
        side_offsets[t] = (offs, total)
    for (t, k_in, h_in, e_in, k_out, h_out, e_out) in chords:
        offs, total = side_offsets[t]
        pos = []
        for k, h, e in ((k_in, h_in, e_in), (k_out, h_out, e_out)):
            idx = rank[e][h]
            if (t, k) == tri.canonical_slot(e):
                idx = totals[e] - 1 - idx
            pos.append(offs[k] + idx)
        out.setdefault(t, []).append(tuple(pos))
    return out


def intersection_from_profiles(tri, A, B):
    """Geometric intersection number of two distinct curves' profiles."""
    if A.weights == B.weights:
        return 0
    a_first = A.weights <= B.weights
    rank_a, rank_b, totals = _merged_ranks(tri, A, B, a_first)
    chords_a = _chord_positions(tri, A.chords, rank_a, totals)
    chords_b = _chord_positions(tri, B.chords, rank_b, totals)
    count = 0
    for t, alist in chords_a.items():
        blist = chords_b.get(t)
        if not blist:
            continue
        for p1, p2 in alist:
            lo, hi = (p1, p2) if p1 < p2 else (p2, p1)
            for q1, q2 in blist:
                count += (lo < q1 < hi) != (lo < q2 < hi)
    return count
