"""First homology from crossing words.

The dual generators are the non-tree edges of the development's dual
spanning tree; a curve's class is its exponent vector over them.  A simple
closed curve is separating exactly when its mod-2 class lies in the span
of the puncture loops (the radical of the intersection pairing), and on
the torus surfaces the nonseparating curves carry a primitive class read
in a fixed two-curve basis.
"""

from .errors import ShapeError, Unsupported
from .geometry import IDENT
from .normal import trace_curve, vertex_link_weights


def dual_letters(tri, dev, crossings):
    """The crossing word over non-tree edges: list of (edge, +-1)."""
    out = []
    for c in crossings:
        if dev.step[c.slot] == IDENT and c.slot in dev.tree_slots:
            continue
        sign = 1 if c.slot == tri.canonical_slot(c.edge) else -1
        out.append((c.edge, sign))
    return out


class HomologyData:
    """Peripheral span and (for genus one) the torus-type basis."""

    def __init__(self, tri, dev):
        self.tri = tri
        self.dev = dev
        self.gens = sorted(
            {e for e in range(tri.num_edges)
             if dev.step[tri.edge_slots[e][0]] != IDENT
             or tri.edge_slots[e][0] not in dev.tree_slots}
        )
        self.gen_index = {e: i for i, e in enumerate(self.gens)}
        rank = len(self.gens)
        expected = 2 * tri.surface.genus + tri.surface.punctures - 1
        if rank != expected:
            raise ShapeError("dual generator count does not match rank")

        self.peripheral = []
        for v in range(len(tri.vertices)):
            w = vertex_link_weights(tri, v)
            vec = self.exponent_vector(trace_curve(tri, w))
            self.peripheral.append(vec)
        self._mod2_basis = self._gf2_reduce(
            [[x % 2 for x in vec] for vec in self.peripheral]
        )

    def exponent_vector(self, crossings):
        vec = [0] * len(self.gens)
        for e, sign in dual_letters(self.tri, self.dev, crossings):
            vec[self.gen_index[e]] += sign
        return vec

    @staticmethod
    def _gf2_reduce(rows):
        basis = []
        for row in rows:
            row = list(row)
            for b in basis:
                pivot = next(i for i, x in enumerate(b) if x)
                if row[pivot]:
                    row = [(x + y) % 2 for x, y in zip(row, b)]
            if any(row):
                basis.append(row)
        return basis

    def in_peripheral_span(self, vec):
        row = [x % 2 for x in vec]
        for b in self._mod2_basis:
            pivot = next(i for i, x in enumerate(b) if x)
            if row[pivot]:
                row = [(x + y) % 2 for x, y in zip(row, b)]
        return not any(row)

    def is_separating(self, crossings):
        return self.in_peripheral_span(self.exponent_vector(crossings))


class TorusTypeData:
    """Reads the (p, q) torus type of nonseparating curves on genus one.

    Calibrated on two reference curves declared to be (1,0) and (0,1),
    together with one peripheral class completing an integral basis.
    """

    def __init__(self, homology, ref_10, ref_01):
        tri = homology.tri
        if tri.surface.genus != 1:
            raise Unsupported("torus types exist only on genus-one surfaces")
        self.homology = homology
        cols = [
            homology.exponent_vector(trace_curve(tri, ref_10)),
            homology.exponent_vector(trace_curve(tri, ref_01)),
        ]
        if tri.surface.punctures == 2:
            cols.append(homology.peripheral[0])
        n = len(cols)
        matrix = [[cols[j][i] for j in range(n)] for i in range(n)]
        det = _int_det(matrix)
        if abs(det) != 1:
            raise ShapeError("reference curves do not give an integral basis")
        self.inverse = _int_inverse(matrix, det)

    def type_of(self, vec):
        n = len(self.inverse)
        coords = [sum(self.inverse[i][j] * vec[j] for j in range(n)) for i in range(n)]
        p, q = coords[0], coords[1]
        if q < 0 or (q == 0 and p < 0):
            p, q = -p, -q
        return (p, q)


def _int_det(m):
    n = len(m)
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    if n == 3:
        return (
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        )
    raise ShapeError("determinant implemented for 2x2 and 3x3 only")


def _int_inverse(m, det):
    n = len(m)
    if n == 2:
        adj = [[m[1][1], -m[0][1]], [-m[1][0], m[0][0]]]
    elif n == 3:
        adj = [
            [
                (m[(i + 1) % 3][(j + 1) % 3] * m[(i + 2) % 3][(j + 2) % 3]
                 - m[(i + 1) % 3][(j + 2) % 3] * m[(i + 2) % 3][(j + 1) % 3])
                for i in range(3)
            ]
            for j in range(3)
        ]
    else:
        raise ShapeError("inverse implemented for 2x2 and 3x3 only")
    return [[adj[i][j] * det for j in range(n)] for i in range(n)]
