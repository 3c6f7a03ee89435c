"""Cutting a surface along disjoint curves: pieces, punctures, genus.

The curves are realized in straightened position (their strands inside
each triangle are pairwise non-crossing chords), so each triangle is cut
into faces by a non-crossing chord diagram; faces glue across edges along
the gaps between consecutive strands.  For a piece assembled from faces:

    chi(open piece) = #faces - #glued gaps,

since strand-copy vertices and chord-copy boundary edges cancel along the
boundary circles and punctures cancel against their compactification
vertices.  Each curve side is a single boundary circle of its piece, so a
piece's boundary count is just the number of (curve, side) pairs on it.
"""

from .errors import ShapeError

LEFT = "left"
RIGHT = "right"


class Piece:
    """One complementary piece of a multicurve."""

    __slots__ = ("punctures", "sides", "chi", "boundary", "genus", "faces")

    def __init__(self, punctures, sides, chi, boundary, faces):
        self.punctures = frozenset(punctures)
        self.sides = frozenset(sides)
        self.chi = chi
        self.boundary = boundary
        self.faces = faces
        g2 = 2 - chi - len(self.punctures) - boundary
        if g2 < 0 or g2 % 2:
            raise ShapeError("piece has inconsistent Euler characteristic")
        self.genus = g2 // 2

    def kind(self):
        """(genus, #ends) with ends = punctures + boundary circles."""
        return (self.genus, len(self.punctures) + self.boundary)

    def is_pants(self):
        return self.kind() == (0, 3)


def _merged_heights(tri, profiles):
    """Ascending strand heights per edge over all profiles (must be
    strand-disjoint, so no ties)."""
    merged = []
    for e in range(tri.num_edges):
        entries = []
        for ci, prof in enumerate(profiles):
            entries.extend((h, ci) for h in prof.heights[e])
        entries.sort()
        for i in range(1, len(entries)):
            if entries[i - 1][0] == entries[i][0]:
                raise ShapeError("curves are not disjoint along an edge")
        merged.append([h for h, _ in entries])
    return merged


def _inslot_rank(tri, merged, t, k, h):
    e = tri.slot_edge[(t, k)]
    idx = merged[e].index(h)
    if (t, k) == tri.canonical_slot(e):
        return len(merged[e]) - 1 - idx
    return idx


def _inslot_gap_to_global(tri, merged, slot, gap):
    e = tri.slot_edge[slot]
    m = len(merged[e])
    if slot == tri.canonical_slot(e):
        return m - gap
    return gap


class _Arrangement:
    """Faces of all triangles and their gluing across edges."""

    def __init__(self, tri, profiles):
        self.tri = tri
        self.profiles = profiles
        merged = _merged_heights(tri, profiles)
        self.merged = merged

        self.faces = []  # face id -> dict(corners, gaps, walls)
        self.gap_face = {}  # (edge, global gap index) -> [face ids] (2 per gap)
        self.side_face = {}  # (curve, chord index, LEFT/RIGHT) -> face id
        self.point_face = {}  # (slot, in-slot rank rounded to gap) lookup helper

        for t in range(tri.num_triangles):
            self._build_triangle(t)

        for key, faces in self.gap_face.items():
            if len(faces) != 2:
                raise ShapeError("every edge gap must bound exactly two faces")

    def _build_triangle(self, t):
        tri = self.tri
        # boundary elements, counterclockwise: corner j, then the points of
        # side j+2 in its reading direction, with an arc element between
        # consecutive items
        items = []
        for j in range(3):
            items.append(("corner", (t, j)))
            k = (j + 2) % 3
            e = tri.slot_edge[(t, k)]
            for r in range(len(self.merged[e])):
                items.append(("point", k, r))
        n = len(items)
        boundary = []
        for i in range(n):
            boundary.append(items[i])
            nxt = items[(i + 1) % n]
            cur = items[i]
            if cur[0] == "point":
                slot, gap = (t, cur[1]), cur[2] + 1
            elif nxt[0] == "point":
                slot, gap = (t, nxt[1]), nxt[2]
            else:
                # corner j to corner j+1: the side between them, no strands
                j = cur[1][1]
                slot, gap = (t, (j + 2) % 3), 0
            boundary.append(("arc", slot, gap))

        chords = []
        for ci, prof in enumerate(self.profiles):
            for chi, ch in enumerate(prof.chords):
                (tt, k_in, h_in, _e_in, k_out, h_out, _e_out) = ch
                if tt != t:
                    continue
                r_in = _inslot_rank(tri, self.merged, t, k_in, h_in)
                r_out = _inslot_rank(tri, self.merged, t, k_out, h_out)
                chords.append(
                    (("point", k_in, r_in), ("point", k_out, r_out), (ci, chi))
                )
        self._split_region(t, boundary, chords)

    def _split_region(self, t, boundary, chords):
        if not chords:
            face_id = len(self.faces)
            gaps, walls, corners = [], [], []
            for el in boundary:
                if el[0] == "arc":
                    _, slot, gap = el
                    g = _inslot_gap_to_global(self.tri, self.merged, slot, gap)
                    key = (self.tri.slot_edge[slot], g)
                    gaps.append(key)
                    self.gap_face.setdefault(key, []).append(face_id)
                elif el[0] == "wall":
                    walls.append(el[1])
                    self.side_face[el[1]] = face_id
                elif el[0] == "corner":
                    corners.append(el[1])
            self.faces.append(
                {"triangle": t, "gaps": gaps, "walls": walls, "corners": corners}
            )
            return
        start, end, payload = chords[0]
        rest = chords[1:]
        ia = boundary.index(start)
        ib = boundary.index(end)
        # walking counterclockwise from the chord's start to its end sweeps
        # out the region to the right of the directed chord
        if ia < ib:
            right = boundary[ia : ib + 1]
            left = boundary[ib:] + boundary[: ia + 1]
        else:
            right = boundary[ia:] + boundary[: ib + 1]
            left = boundary[ib : ia + 1]
        ci, chi = payload
        right.append(("wall", (ci, chi, RIGHT)))
        left.append(("wall", (ci, chi, LEFT)))
        rest_right, rest_left = [], []
        for c in rest:
            in_r = c[0] in right and c[1] in right
            in_l = c[0] in left and c[1] in left
            if in_r == in_l:
                raise ShapeError("chords cross inside a triangle")
            (rest_right if in_r else rest_left).append(c)
        self._split_region(t, right, rest_right)
        self._split_region(t, left, rest_left)


def complement_pieces(tri, profiles):
    """The pieces of the surface cut along the given disjoint curves.

    Returns (pieces, locate) where ``locate(curve_profile)`` gives the
    piece index containing a further disjoint curve.
    """
    arr = _Arrangement(tri, profiles)
    parent = list(range(len(arr.faces)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    for key, (f1, f2) in arr.gap_face.items():
        union(f1, f2)

    roots = sorted({find(f) for f in range(len(arr.faces))})
    piece_of_face = {f: roots.index(find(f)) for f in range(len(arr.faces))}

    data = [
        {"punctures": set(), "sides": set(), "faces": 0, "gaps": 0}
        for _ in roots
    ]
    for f, face in enumerate(arr.faces):
        p = piece_of_face[f]
        data[p]["faces"] += 1
        for corner in face["corners"]:
            v = tri.corner_vertex[corner]
            data[p]["punctures"].add(tri.vertex_labels[v])
        for (ci, chi, side) in face["walls"]:
            data[p]["sides"].add((ci, side))
    for key, (f1, f2) in arr.gap_face.items():
        p = piece_of_face[f1]
        if piece_of_face[f2] != p:
            raise ShapeError("glued gap joins different pieces")
        data[p]["gaps"] += 1

    pieces = []
    for d in data:
        chi = d["faces"] - d["gaps"]
        pieces.append(
            Piece(d["punctures"], d["sides"], chi, len(d["sides"]), d["faces"])
        )

    def locate(profile):
        """Piece index containing a curve disjoint from the cut system."""
        if not profile.chords:
            raise ShapeError("cannot locate an empty curve")
        (t, k_in, h_in, e_in, *_rest) = profile.chords[0]
        e = tri.slot_edge[(t, k_in)]
        below = sum(1 for h in arr.merged[e] if h < h_in)
        if h_in in arr.merged[e]:
            raise ShapeError("curve is not disjoint from the cut system")
        key = (e, below)
        f1, f2 = arr.gap_face[key]
        # both faces border the gap; the curve enters triangle t there
        for f in (f1, f2):
            if arr.faces[f]["triangle"] == t:
                return piece_of_face[f]
        raise ShapeError("failed to locate curve in arrangement")

    return pieces, locate


def separation_data(tri, profile):
    """(separating, partition): partition maps each side to its punctures."""
    pieces, _ = complement_pieces(tri, [profile])
    if len(pieces) == 1:
        return False, None
    if len(pieces) != 2:
        raise ShapeError("one curve cut the surface into more than two pieces")
    part = tuple(sorted(pieces, key=lambda p: sorted(p.punctures)))
    return True, (frozenset(part[0].punctures), frozenset(part[1].punctures))
