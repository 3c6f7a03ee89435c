"""Mapping class generators acting on curves.

Action pipeline for the twist/braid generators: a curve's trace gives its
deck transformation as a word in the dual generators (non-tree edges);
the dictionary computed below rewrites it over a geometric basis of the
fundamental group; the generator acts by substitution on basis letters;
the image matrix is evaluated and retraced to normal coordinates along
its geodesic.  Orientation-reversing (and other symmetric) generators are
triangulation automorphisms and act by permuting weights.

The basis loops are explicit piecewise-straight paths in a flat model of
each shipped triangulation (unit squares for the tori, the double of a
convex polygon inscribed in a parabola for the spheres).  All crossing
computations are exact rational arithmetic; degenerate waypoints raise.

Conventions are calibrated at build time: the puncture loops of a sphere
get inverted as a block if needed so that x_1 x_2 ... x_r = 1, and the
dictionary is verified against the step matrices letter by letter.
Handedness of individual twists and half-twists is fixed but arbitrary.
"""

from fractions import Fraction

from .errors import ShapeError, UnknownGenerator
from .geometry import IDENT, mat_mul, psl_normalize
from .surfaces import (
    SurfaceId,
    reflection_corner_map,
    torus_two_involution_corner_map,
)

# --- free words ----------------------------------------------------------------
# a word is a tuple of nonzero signed integers; letter k is generator k-1


def reduce_word(seq):
    out = []
    for x in seq:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def invert_word(word):
    return tuple(-x for x in reversed(word))


def substitute(word, images):
    """Apply letter -> word substitution (images indexed by |letter|-1)."""
    out = []
    for x in word:
        img = images[abs(x) - 1]
        out.extend(img if x > 0 else invert_word(img))
    return reduce_word(out)


def nielsen_inverse(words, rank):
    """Express the free generators in terms of a basis.

    ``words`` are reduced words over generators 1..rank forming a free
    basis; returns ``expr`` with expr[g-1] a word over basis indices
    (1-based) evaluating to generator g.  Greedy Nielsen reduction; raises
    if the input is not a basis.
    """
    if len(words) != rank:
        raise ShapeError("basis size must equal the rank")
    W = [tuple(w) for w in words]
    X = [(i + 1,) for i in range(rank)]  # X[i] tracks basis letter i+1
    for _ in range(10000):
        if all(len(w) == 1 for w in W):
            expr = [None] * rank
            for i, w in enumerate(W):
                g = w[0]
                expr[abs(g) - 1] = X[i] if g > 0 else invert_word(X[i])
            if any(e is None for e in expr):
                raise ShapeError("reduced basis does not hit every generator")
            return expr
        improved = False
        for i in range(rank):
            for j in range(rank):
                if i == j:
                    continue
                for eps in (1, -1):
                    wj = W[j] if eps == 1 else invert_word(W[j])
                    xj = X[j] if eps == 1 else invert_word(X[j])
                    cand = reduce_word(W[i] + wj)
                    if len(cand) < len(W[i]):
                        W[i], X[i] = cand, reduce_word(X[i] + xj)
                        improved = True
                        break
                    cand = reduce_word(wj + W[i])
                    if len(cand) < len(W[i]):
                        W[i], X[i] = cand, reduce_word(xj + X[i])
                        improved = True
                        break
                if improved:
                    break
            if improved:
                break
        if not improved:
            raise ShapeError("Nielsen reduction stalled: loops are not a basis")
    raise ShapeError("Nielsen reduction did not terminate")


# --- exact flat models ---------------------------------------------------------


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _on_closed_segment(u, v, w):
    return (
        _cross(u, v, w) == 0
        and min(u[0], v[0]) <= w[0] <= max(u[0], v[0])
        and min(u[1], v[1]) <= w[1] <= max(u[1], v[1])
    )


def _seg_intersect_param(p, q, a, b):
    """Parameter t with p + t(q-p) on segment ab, for a proper crossing;
    None if the segments do not properly cross."""
    d1 = _cross(p, q, a)
    d2 = _cross(p, q, b)
    d3 = _cross(a, b, p)
    d4 = _cross(a, b, q)
    if d1 * d2 < 0 and d3 * d4 < 0:
        return Fraction(d3, d3 - d4)
    # a true touching configuration means the path runs through an edge
    # endpoint or has a waypoint exactly on an edge
    if (
        (d1 == 0 and _on_closed_segment(p, q, a))
        or (d2 == 0 and _on_closed_segment(p, q, b))
        or (d3 == 0 and _on_closed_segment(a, b, p))
        or (d4 == 0 and _on_closed_segment(a, b, q))
    ):
        raise ShapeError("degenerate path: touches an edge or vertex")
    return None


class TorusModel:
    """Flat model of the torus triangulations (universal-cover coordinates)."""

    def __init__(self, tri, triangles, lattice):
        self.tri = tri
        self.triangles = triangles  # triangle -> corner coordinates
        self.lattice = lattice

    def reduce(self, pt):
        lx = self.lattice[0][0]
        x = pt[0] % lx
        y = pt[1] % 1
        return (x, y)

    def locate(self, pt):
        x, y = self.reduce(pt)
        for t, corners in enumerate(self.triangles):
            d = [
                _cross(corners[i], corners[(i + 1) % 3], (x, y)) for i in range(3)
            ]
            if all(v > 0 for v in d) or all(v < 0 for v in d):
                return t
        raise ShapeError(f"point {pt} is on an edge of the flat model")

    def segment_crossings(self, p, q):
        """(t_param, edge) crossings of the open segment, sorted."""
        from math import ceil, floor

        out = []
        lx = self.lattice[0][0]
        for e in range(self.tri.num_edges):
            a, b = self.edge_segment(e)
            mlo = floor((min(p[0], q[0]) - max(a[0], b[0])) / lx) - 1
            mhi = ceil((max(p[0], q[0]) - min(a[0], b[0])) / lx) + 1
            nlo = floor(min(p[1], q[1]) - max(a[1], b[1])) - 1
            nhi = ceil(max(p[1], q[1]) - min(a[1], b[1])) + 1
            for m in range(mlo, mhi + 1):
                for n in range(nlo, nhi + 1):
                    aa = (a[0] + m * lx, a[1] + n)
                    bb = (b[0] + m * lx, b[1] + n)
                    t = _seg_intersect_param(p, q, aa, bb)
                    if t is not None:
                        out.append((t, e))
        out.sort()
        for i in range(1, len(out)):
            if out[i - 1][0] == out[i][0]:
                raise ShapeError("degenerate path: double crossing")
        return out

    def edge_segment(self, e):
        (t, k), _ = self.tri.edge_slots[e]
        corners = self.triangles[t]
        return corners[(k + 1) % 3], corners[(k + 2) % 3]

    def path_slots(self, waypoints):
        """Crossing slots of the piecewise-straight closed path."""
        slots = []
        for i in range(len(waypoints) - 1):
            p, q = waypoints[i], waypoints[i + 1]
            crossings = self.segment_crossings(p, q)
            prev_t = Fraction(0)
            for tpar, e in crossings:
                mid = (
                    p[0] + (tpar + prev_t) / 2 * (q[0] - p[0]),
                    p[1] + (tpar + prev_t) / 2 * (q[1] - p[1]),
                )
                t = self.locate(mid)
                slots.append(self._slot_of(t, e))
                prev_t = tpar
        return slots

    def _slot_of(self, t, e):
        ks = [k for k in range(3) if self.tri.slot_edge[(t, k)] == e]
        if len(ks) != 1:
            raise ShapeError("ambiguous edge in triangle")
        return (t, ks[0])


class SphereModel:
    """The double of a convex polygon; points carry a sheet flag."""

    FRONT, BACK = 0, 1

    def __init__(self, tri, r):
        self.tri = tri
        self.r = r
        self.vertex_xy = {j: (Fraction(j), Fraction(j * j)) for j in range(1, r + 1)}
        # triangle -> planar corner coordinates and sheet
        self.triangles = []
        for j in range(2, r):  # front fans F_j
            self.triangles.append(
                (self.FRONT,
                 [self.vertex_xy[1], self.vertex_xy[j], self.vertex_xy[j + 1]])
            )
        for j in range(2, r):  # back fans B_j (mirror: corners 1, j+1, j)
            self.triangles.append(
                (self.BACK,
                 [self.vertex_xy[1], self.vertex_xy[j + 1], self.vertex_xy[j]])
            )
        self.boundary_sides = []  # (name edge index, planar segment)
        for j in range(1, r + 1):
            a = self.vertex_xy[j]
            b = self.vertex_xy[j % r + 1]
            e = tri.edge_names.index(f"s{j}")
            self.boundary_sides.append((e, a, b))

    def locate(self, sheet, pt):
        for t, (sh, corners) in enumerate(self.triangles):
            if sh != sheet:
                continue
            d = [_cross(corners[i], corners[(i + 1) % 3], pt) for i in range(3)]
            if all(v > 0 for v in d) or all(v < 0 for v in d):
                return t
        raise ShapeError(f"point {pt} not inside any triangle of sheet {sheet}")

    def _interior_crossings(self, sheet, p, q):
        """Diagonal crossings of a segment staying inside the polygon."""
        out = []
        for e in range(self.tri.num_edges):
            name = self.tri.edge_names[e]
            if not (name.startswith("d") or name.startswith("D")):
                continue
            if (name[0] == "d") != (sheet == self.FRONT):
                continue
            j = int(name[1:])
            a, b = self.vertex_xy[1], self.vertex_xy[j]
            t = _seg_intersect_param(p, q, a, b)
            if t is not None:
                out.append((t, e))
        for e, a, b in self.boundary_sides:
            if _seg_intersect_param(p, q, a, b) is not None:
                raise ShapeError("path leaves the polygon without a via point")
        out.sort()
        return out

    def path_slots(self, waypoints):
        """Waypoints are (sheet, point) or ("via", point) boundary marks."""
        slots = []
        i = 0
        cur_sheet, cur_pt = waypoints[0]
        for step in waypoints[1:]:
            if step[0] == "via":
                raise ShapeError("via marks must be followed by a point")
            sheet2, pt2, *via = step
            if sheet2 == cur_sheet and not via:
                for tpar, e in self._interior_crossings(cur_sheet, cur_pt, pt2):
                    mid = _midpoint(cur_pt, pt2, tpar, before=True)
                    t = self.locate(cur_sheet, mid)
                    slots.append(self._slot_of(t, e))
            elif via:
                x = via[0]
                side = self._side_of(x)
                x_in = _shrink(x, cur_pt)
                x_out = _shrink(x, pt2)
                for tpar, e in self._interior_crossings(cur_sheet, cur_pt, x_in):
                    mid = _midpoint(cur_pt, x_in, tpar, before=True)
                    slots.append(self._slot_of(self.locate(cur_sheet, mid), e))
                t_exit = self.locate(cur_sheet, x_in)
                slots.append(self._slot_of(t_exit, side))
                for tpar, e in self._interior_crossings(sheet2, x_out, pt2):
                    mid = _midpoint(x_out, pt2, tpar, before=True)
                    slots.append(self._slot_of(self.locate(sheet2, mid), e))
            else:
                raise ShapeError("sheet change requires a via point")
            cur_sheet, cur_pt = sheet2, pt2
        return slots

    def _side_of(self, x):
        for e, a, b in self.boundary_sides:
            if _cross(a, b, x) == 0 and min(a[0], b[0]) < x[0] < max(a[0], b[0]):
                return e
        raise ShapeError("via point is not on a polygon side")

    def _slot_of(self, t, e):
        ks = [k for k in range(3) if self.tri.slot_edge[(t, k)] == e]
        if len(ks) != 1:
            raise ShapeError("ambiguous edge in triangle")
        return (t, ks[0])


def _midpoint(p, q, tpar, before):
    t = tpar - Fraction(1, 10 ** 9) if before else tpar + Fraction(1, 10 ** 9)
    return (p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1]))


def _shrink(x, toward):
    eps = Fraction(1, 10 ** 9)
    return (x[0] + eps * (toward[0] - x[0]), x[1] + eps * (toward[1] - x[1]))


# --- lassos around punctures ---------------------------------------------------


def corner_orbit_lasso_slots(tri, vertex, start_corner):
    """Crossing slots of a small loop around a puncture, following its
    corner orbit once, starting at the given corner."""
    orbit = tri.vertices[vertex]
    i0 = orbit.index(start_corner)
    rotated = orbit[i0:] + orbit[:i0]
    return [(t, (j + 1) % 3) for (t, j) in rotated]


# --- generator tables -----------------------------------------------------------


class MappingData:
    """Everything needed to apply mapping class generators on a surface."""

    def __init__(self, tri, dev):
        self.tri = tri
        self.dev = dev
        s = tri.surface
        self.nontree_edges = sorted(
            e for e in range(tri.num_edges)
            if tri.edge_slots[e][0] not in dev.tree_slots
        )
        self.edge_letter = {e: i + 1 for i, e in enumerate(self.nontree_edges)}

        self.permutations = {}
        refl_perm, _ = tri.check_symmetry(reflection_corner_map(tri))
        self.permutations["r"] = refl_perm
        if s == SurfaceId(1, 2):
            inv_perm, _ = tri.check_symmetry(torus_two_involution_corner_map())
            self.permutations["i"] = inv_perm

        if s.genus == 0:
            self._init_sphere()
        elif s == SurfaceId(1, 1):
            self._init_torus_one()
        else:
            self._init_torus_two()

        # matrices of the basis letters, from their dual words
        self.basis_matrices = [
            self._word_matrix(w) for w in self.basis_dual_words
        ]

    # -- shared helpers -----------------------------------------------------

    def slots_to_dual_word(self, slots):
        word = []
        for slot in slots:
            if slot in self.dev.tree_slots:
                continue
            e = self.tri.slot_edge[slot]
            sign = 1 if slot == self.tri.canonical_slot(e) else -1
            word.append(sign * self.edge_letter[e])
        return reduce_word(word)

    def _slots_matrix(self, slots):
        g = IDENT
        for slot in slots:
            g = mat_mul(g, self.dev.step[slot])
        return psl_normalize(g)

    def _word_matrix(self, word):
        """Matrix of a dual-letter word."""
        g = IDENT
        for x in word:
            e = self.nontree_edges[abs(x) - 1]
            slot = self.tri.canonical_slot(e)
            step = self.dev.step[slot if x > 0 else self.tri.gluing[slot]]
            g = mat_mul(g, step)
        return psl_normalize(g)

    def basis_matrix_of_word(self, word):
        g = IDENT
        for x in word:
            m = self.basis_matrices[abs(x) - 1]
            if x < 0:
                m = ((m[1][1], -m[0][1]), (-m[1][0], m[0][0]))
            g = mat_mul(g, m)
        return psl_normalize(g)

    def dual_to_basis(self, word):
        return substitute(word, self.dictionary)

    def _finish_dictionary(self, basis_dual_words):
        self.basis_dual_words = [reduce_word(w) for w in basis_dual_words]
        self.dictionary = nielsen_inverse(
            self.basis_dual_words, len(self.nontree_edges)
        )
        # exact verification letter by letter
        for e in self.nontree_edges:
            word = self.dual_to_basis((self.edge_letter[e],))
            got = self.basis_matrix_of_word_raw(word)
            want = psl_normalize(self.dev.step[self.tri.canonical_slot(e)])
            if got != want:
                raise ShapeError("basis dictionary failed verification")

    def basis_matrix_of_word_raw(self, word):
        g = IDENT
        for x in word:
            w = self.basis_dual_words[abs(x) - 1]
            m = self._word_matrix(w if x > 0 else invert_word(w))
            g = mat_mul(g, m)
        return psl_normalize(g)

    # -- sphere ----------------------------------------------------------------

    def _init_sphere(self):
        tri = self.tri
        r = tri.surface.punctures
        model = SphereModel(tri, r)
        self.flat = model
        base = _sphere_basepoint(model)

        lasso_words = []
        for i in range(1, r):
            lasso_words.append(self._sphere_lasso(model, base, i))
        # calibrate: the product over all punctures must be trivial
        full = list(lasso_words) + [self._sphere_lasso(model, base, r)]
        prod = IDENT
        for w in full:
            prod = mat_mul(prod, self._word_matrix(w))
        if psl_normalize(prod) != IDENT:
            full = [invert_word(w) for w in full]
            prod = IDENT
            for w in full:
                prod = mat_mul(prod, self._word_matrix(w))
            if psl_normalize(prod) != IDENT:
                raise ShapeError("puncture loops do not satisfy the relation")
            lasso_words = full[:-1]
        self._finish_dictionary(lasso_words)

        # braid substitutions on the letters x_1 .. x_{r-1}
        n = r - 1
        self.automorphisms = {}
        for i in range(1, r):
            images = [(j,) for j in range(1, n + 1)]
            if i < r - 1:
                images[i - 1] = (i, i + 1, -i)
                images[i] = (i,)
            elif i == r - 1:
                x_r = invert_word(tuple(range(1, n + 1)))
                images[n - 1] = reduce_word((n,) + x_r + (-n,))
            else:  # i == r: conjugate of sigma_{r-1}; not exposed
                raise ShapeError("unreachable")
            self.automorphisms[f"s{i}"] = images
        self.generator_names = [f"s{i}" for i in range(1, r)] + ["r"]

    def _sphere_lasso(self, model, base, label):
        tri = self.tri
        v = tri.vertex_of_label(label)
        orbit = tri.vertices[v]
        fronts = [c for c in orbit if model.triangles[c[0]][0] == model.FRONT]
        start = min(fronts)
        t0 = start[0]
        target = _near_corner(model.triangles[t0][1], start[1])
        tail = model.path_slots([(model.FRONT, base), (model.FRONT, target)])
        loop = corner_orbit_lasso_slots(tri, v, start)
        back = [tri.gluing[s] for s in reversed(tail)]
        return self.slots_to_dual_word(tail + loop + back)

    # -- tori --------------------------------------------------------------------

    def _init_torus_one(self):
        tri = self.tri
        f = Fraction
        model = TorusModel(
            tri,
            [
                [(f(0), f(0)), (f(1), f(0)), (f(1), f(1))],
                [(f(0), f(0)), (f(1), f(1)), (f(0), f(1))],
            ],
            [(f(1), f(0)), (f(0), f(1))],
        )
        self.flat = model
        base = (f(3, 5), f(2, 5))
        a_loop = [(base), (base[0] + 1, base[1])]  # horizontal
        b_loop = [(base), (base[0], base[1] + 1)]  # vertical
        words = [
            self.slots_to_dual_word(model.path_slots(a_loop)),
            self.slots_to_dual_word(model.path_slots(b_loop)),
        ]
        self._finish_dictionary(words)

        # a twist deflects a transverse loop inside the annulus around its
        # core: the crossing segment picks up one full period of travel;
        # the two travel directions are chosen so the twists are coherently
        # handed (the braid relation pins this down)
        ta_img_b = model.path_slots(
            [base, (base[0], f(9, 20)), (base[0] + 1, f(11, 20)),
             (base[0] + 1, base[1] + 1)]
        )
        tb_img_a = model.path_slots(
            [base, (f(29, 20), base[1]), (f(31, 20), base[1] - 1),
             (base[0] + 1, base[1] - 1)]
        )
        self.automorphisms = {
            "ta": [(1,), self.dual_to_basis(self.slots_to_dual_word(ta_img_b))],
            "tb": [self.dual_to_basis(self.slots_to_dual_word(tb_img_a)), (2,)],
        }
        self.generator_names = ["ta", "tb", "r"]

    def _init_torus_two(self):
        tri = self.tri
        f = Fraction
        model = TorusModel(
            tri,
            [
                [(f(0), f(0)), (f(1), f(0)), (f(1), f(1))],
                [(f(0), f(0)), (f(1), f(1)), (f(0), f(1))],
                [(f(1), f(0)), (f(2), f(0)), (f(1), f(1))],
                [(f(2), f(0)), (f(2), f(1)), (f(1), f(1))],
            ],
            [(f(2), f(0)), (f(0), f(1))],
        )
        self.flat = model
        base = (f(3, 5), f(2, 5))
        a_loop = [base, (base[0] + 2, base[1])]
        b_loop = [base, (base[0], base[1] + 1)]
        v2 = tri.vertex_of_label(2)
        c_slots = self._torus_lasso(model, base, v2)
        words = [
            self.slots_to_dual_word(model.path_slots(a_loop)),
            self.slots_to_dual_word(model.path_slots(b_loop)),
            self.slots_to_dual_word(c_slots),
        ]
        self._finish_dictionary(words)

        def bw(slots):
            return self.dual_to_basis(self.slots_to_dual_word(slots))

        # twist deflections along the crossing segment, coherently handed
        # (see torus_one); about the horizontal curve A (y = 1/2 + n)
        ta_b = model.path_slots(
            [base, (base[0], f(9, 20)), (base[0] + 2, f(11, 20)),
             (base[0] + 2, base[1] + 1)]
        )
        # about the vertical curve B1 (annulus around x = 1/2 + 2m)
        tb1_a = model.path_slots(
            [base, (f(49, 20), base[1]), (f(51, 20), base[1] - 1),
             (base[0] + 2, base[1] - 1)]
        )
        # about the vertical curve B2 (annulus around x = 3/2 + 2m)
        tb2_a = model.path_slots(
            [base, (f(29, 20), base[1]), (f(31, 20), base[1] - 1),
             (base[0] + 2, base[1] - 1)]
        )
        self.automorphisms = {
            "ta": [(1,), bw(ta_b), (3,)],
            "tb1": [bw(tb1_a), (2,), (3,)],
            "tb2": [bw(tb2_a), (2,), (3,)],
        }
        self.generator_names = ["ta", "tb1", "tb2", "i", "r"]

    def _torus_lasso(self, model, base, vertex):
        tri = self.tri
        orbit = tri.vertices[vertex]
        start = min(orbit)
        t0, j0 = start
        corners = model.triangles[t0]
        target = _near_corner(corners, j0)
        tail = model.path_slots([base, target])
        loop = corner_orbit_lasso_slots(tri, vertex, start)
        back = [tri.gluing[s] for s in reversed(tail)]
        return tail + loop + back

    # -- applying generators -------------------------------------------------

    def generator_tokens(self):
        return list(self.generator_names)

    def parse_token(self, token):
        """(kind, name, power): kind is "perm" or "auto"."""
        inverse = token.endswith("~")
        name = token[:-1] if inverse else token
        if name in self.permutations:
            return ("perm", name, 1)  # permutations here are involutions
        if name in self.automorphisms:
            return ("auto", name, -1 if inverse else 1)
        raise UnknownGenerator(f"unknown generator token {token!r}")

    def automorphism_images(self, name, power):
        images = self.automorphisms[name]
        if power == 1:
            return images
        return invert_automorphism(images)


def invert_automorphism(images):
    """Inverse of a free-group automorphism given by generator images."""
    expr = nielsen_inverse(images, len(images))
    return expr


def _near_corner(corners, j):
    cx, cy = corners[j]
    ox = (corners[(j + 1) % 3][0] + corners[(j + 2) % 3][0]) / 2
    oy = (corners[(j + 1) % 3][1] + corners[(j + 2) % 3][1]) / 2
    eps = Fraction(1, 37)
    return (cx + eps * (ox - cx), cy + eps * (oy - cy))


def _sphere_basepoint(model):
    corners = model.triangles[0][1]
    x = (corners[0][0] + corners[1][0] + corners[2][0]) / 3 + Fraction(1, 97)
    y = (corners[0][1] + corners[1][1] + corners[2][1]) / 3 + Fraction(1, 89)
    return (x, y)
