"""Exact model of the Farey graph.

Vertices are reduced slopes p/q (including 1/0); p/q and r/s span an edge
when |ps - qr| = 1.  This graph is simultaneously the pants graph of the
one-holed torus and of the four-holed sphere, which is why a single module
serves both chart types: only the minimal intersection number (1 vs 2)
differs.

Conventions
-----------
* A slope is stored with q >= 0, gcd(|p|, q) = 1, and 1/0 as the point at
  infinity.  The sign lives on the numerator.
* Associations (the pairing a four-holed-sphere curve induces on the four
  punctures 1..4) are read off the parity class of (p, q):
  (0,1) -> 12|34,  (1,0) -> 13|24,  (1,1) -> 14|23.
  Any fixed marking works; this one is used consistently everywhere.
"""

from math import gcd

from .errors import InvalidSlope, NoSuchAssociation, NotAnEdge

FOUR_HOLED_SPHERE = "four_holed_sphere"
ONE_HOLED_TORUS = "one_holed_torus"


class Slope:
    """A reduced rational p/q with q >= 0; 1/0 is allowed, 0/0 is not."""

    __slots__ = ("p", "q")

    def __init__(self, p, q):
        if p == 0 and q == 0:
            raise InvalidSlope("0/0 is not a slope")
        g = gcd(abs(p), abs(q))
        p //= g
        q //= g
        if q < 0 or (q == 0 and p < 0):
            p, q = -p, -q
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    def __setattr__(self, name, value):
        raise AttributeError("Slope is immutable")

    def __eq__(self, other):
        return isinstance(other, Slope) and self.p == other.p and self.q == other.q

    def __hash__(self):
        return hash((self.p, self.q))

    def __repr__(self):
        return f"{self.p}/{self.q}"

    def __lt__(self, other):
        # canonical (not numeric) order, used for deterministic output
        return (self.q, self.p) < (other.q, other.p)

    def key(self):
        return (self.q, self.p)

    def to_json(self):
        return f"{self.p}/{self.q}"

    @classmethod
    def from_json(cls, text):
        p, q = text.split("/")
        return cls(int(p), int(q))


def normalize_slope(p, q):
    """The canonical representative of the projective pair (p, q)."""
    return Slope(p, q)


def is_farey_edge(a, b):
    return abs(a.p * b.q - a.q * b.p) == 1


def slope_intersection(a, b, kind):
    """Geometric intersection of the curves with these slopes on the chart.

    |ps - qr| on the one-holed torus, twice that on the four-holed sphere.
    """
    det = abs(a.p * b.q - a.q * b.p)
    if kind == ONE_HOLED_TORUS:
        return det
    if kind == FOUR_HOLED_SPHERE:
        return 2 * det
    raise InvalidSlope(f"unknown chart kind {kind!r}")


def farey_neighbors(a, bound):
    """All Farey neighbors of ``a`` with max(|p|, |q|) <= bound.

    Complete within the bound; the full neighbor set is infinite.
    """
    if bound < 1:
        raise InvalidSlope("bound must be >= 1")
    out = set()
    for q in range(0, bound + 1):
        for p in range(-bound, bound + 1):
            if q == 0 and p != 1:
                continue
            if gcd(abs(p), q) != 1:
                continue
            b = Slope(p, q)
            if is_farey_edge(a, b):
                out.add(b)
    return out


def triangle_completions(a, b):
    """The two slopes adjacent to both endpoints of a Farey edge.

    These are the mediant (p+r)/(q+s) and the difference (p-r)/(q-s).
    """
    if not is_farey_edge(a, b):
        raise NotAnEdge(f"{a} and {b} are not Farey-adjacent")
    return {Slope(a.p + b.p, a.q + b.q), Slope(a.p - b.p, a.q - b.q)}


# --- associations -----------------------------------------------------------

_PARITY_TO_PARTITION = {
    (0, 1): frozenset({frozenset({1, 2}), frozenset({3, 4})}),
    (1, 0): frozenset({frozenset({1, 3}), frozenset({2, 4})}),
    (1, 1): frozenset({frozenset({1, 4}), frozenset({2, 3})}),
}


class Association:
    """A pairing of the four punctures {1,2,3,4} into two pairs."""

    __slots__ = ("partition",)

    def __init__(self, partition):
        partition = frozenset(frozenset(part) for part in partition)
        if partition not in _PARITY_TO_PARTITION.values():
            raise InvalidSlope(f"not a pairing of 1..4 into two pairs: {partition}")
        object.__setattr__(self, "partition", partition)

    def __setattr__(self, name, value):
        raise AttributeError("Association is immutable")

    def __eq__(self, other):
        return isinstance(other, Association) and self.partition == other.partition

    def __hash__(self):
        return hash(self.partition)

    def __repr__(self):
        parts = sorted(tuple(sorted(part)) for part in self.partition)
        return "|".join("".join(str(x) for x in part) for part in parts)

    def to_json(self):
        return sorted(sorted(part) for part in self.partition)


def slope_association(a):
    """The puncture pairing induced by the slope-a curve on the four-holed
    sphere, via the fixed parity marking."""
    return Association(_PARITY_TO_PARTITION[(a.p % 2, a.q % 2)])


def associativity_candidates(a, target, bound):
    """Farey neighbors of ``a`` within the bound whose association is
    ``target``.

    The unbounded set is one orbit under the twist and reflection fixing
    ``a``; a neighbor never shares a's own association.
    """
    if target == slope_association(a):
        raise NoSuchAssociation(
            f"no neighbor of {a} has its own association {target}"
        )
    return {b for b in farey_neighbors(a, bound) if slope_association(b) == target}


# --- quadrilateral triples --------------------------------------------------


def find_quadrilateral_triple_central(a, b, c):
    """The central point when {a, b, c} is a quadrilateral triple.

    A quadrilateral triple has exactly two edges among its pairs and sits
    inside a quadrilateral (two triangles sharing an edge), i.e. some
    witness slope is adjacent to all three.  Returns None otherwise.
    The witness, if any, must be a triangle completion of one of the two
    edges, so the decision is exact.
    """
    if len({a, b, c}) != 3:
        return None
    triple = (a, b, c)
    edges = [
        (i, j)
        for i in range(3)
        for j in range(i + 1, 3)
        if is_farey_edge(triple[i], triple[j])
    ]
    if len(edges) != 2:
        return None
    # the vertex on both edges
    (i0, j0), (i1, j1) = edges
    common = ({i0, j0} & {i1, j1}).pop()
    central = triple[common]
    outer = [triple[k] for k in range(3) if k != common]
    for d in triangle_completions(central, outer[0]):
        if is_farey_edge(d, outer[1]) and d not in triple:
            return central
    return None


def quadrilateral_witnesses(a, b, c):
    """All slopes adjacent to each member of a quadrilateral triple."""
    central = find_quadrilateral_triple_central(a, b, c)
    if central is None:
        return set()
    outer = [s for s in (a, b, c) if s != central]
    return {
        d
        for d in triangle_completions(central, outer[0])
        if is_farey_edge(d, outer[1]) and d not in (a, b, c)
    }


# --- the PGL(2, Z) action ---------------------------------------------------

TWIST_FIXING_ZERO = ((1, 0), (1, 1))
TWIST_FIXING_INFINITY = ((1, 1), (0, 1))
REFLECTION = ((-1, 0), (0, 1))

_GENERATORS = {
    "L": TWIST_FIXING_INFINITY,
    "R": TWIST_FIXING_ZERO,
    "S": REFLECTION,
}


def _mat_mul(m, n):
    return (
        (m[0][0] * n[0][0] + m[0][1] * n[1][0], m[0][0] * n[0][1] + m[0][1] * n[1][1]),
        (m[1][0] * n[0][0] + m[1][1] * n[1][0], m[1][0] * n[0][1] + m[1][1] * n[1][1]),
    )


def _mat_det(m):
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


def _mat_inv(m):
    d = _mat_det(m)
    if abs(d) != 1:
        raise InvalidSlope("matrix is not in GL(2, Z)")
    return ((d * m[1][1], -d * m[0][1]), (-d * m[1][0], d * m[0][0]))


class PGL2Word:
    """A finite word in the two parabolic twists and the reflection.

    Stored as the token matrices themselves; ``matrix()`` is their product
    (leftmost token applied last, like function composition).
    """

    __slots__ = ("tokens",)

    def __init__(self, tokens=()):
        tokens = tuple(tuple(tuple(row) for row in t) for t in tokens)
        for t in tokens:
            if abs(_mat_det(t)) != 1:
                raise InvalidSlope(f"token {t} is not in GL(2, Z)")
        object.__setattr__(self, "tokens", tokens)

    def __setattr__(self, name, value):
        raise AttributeError("PGL2Word is immutable")

    def __len__(self):
        return len(self.tokens)

    def __mul__(self, other):
        return PGL2Word(self.tokens + other.tokens)

    @classmethod
    def from_letters(cls, letters):
        """Build a word from a string like "LLrS" (lowercase = inverse)."""
        tokens = []
        for ch in letters:
            m = _GENERATORS.get(ch.upper())
            if m is None:
                raise InvalidSlope(f"unknown generator letter {ch!r}")
            tokens.append(m if ch.isupper() else _mat_inv(m))
        return cls(tokens)

    def matrix(self):
        m = ((1, 0), (0, 1))
        for t in self.tokens:
            m = _mat_mul(m, t)
        return m


def apply_pgl2(word, a):
    """Matrix action (p, q) -> (m11 p + m12 q, m21 p + m22 q), normalized."""
    m = word.matrix() if isinstance(word, PGL2Word) else word
    return Slope(m[0][0] * a.p + m[0][1] * a.q, m[1][0] * a.p + m[1][1] * a.q)


def apply_matrix(m, a):
    return Slope(m[0][0] * a.p + m[0][1] * a.q, m[1][0] * a.p + m[1][1] * a.q)


def _letters_for_power(sym, k):
    return (sym if k > 0 else sym.lower()) * abs(k)


def _word_for_matrix(m):
    """A generator-letter string whose matrix is +-m (PGL action equal).

    Euclidean reduction of the first column by left multiplications with
    powers of L and R, recording the inverses.  Not length-minimal, but
    short enough for desk-scale orbit checks.
    """
    prefix = ""
    if _mat_det(m) == -1:
        prefix = "S"
        m = _mat_mul(REFLECTION, m)
    a, b = m[0][0], m[0][1]
    c, d = m[1][0], m[1][1]
    inverse_ops = []  # letters of the inverses of the applied reductions
    while c != 0:
        if a == 0:
            # rotate: J * m with J = [[0,-1],[1,0]] = L^-1 R L^-1
            a, b, c, d = -c, -d, a, b
            inverse_ops.append("LrL")  # letters of J^-1 (up to sign)
            continue
        if abs(a) >= abs(c):
            k = a // c
            a, b = a - k * c, b - k * d  # L^-k applied
            inverse_ops.append(_letters_for_power("L", k))
        else:
            k = c // a
            c, d = c - k * a, d - k * b  # R^-k applied
            inverse_ops.append(_letters_for_power("R", k))
    # residual is +-[[1, n],[0, 1]] with n = a*b since a = d = +-1
    n = a * b
    if n:
        inverse_ops.append(_letters_for_power("L", n))
    # m = +- (first inverse op) ... (last inverse op), reading left to right
    return prefix + "".join(inverse_ops)


def word_for_matrix(m):
    """A PGL2Word evaluating to +-m (checked)."""
    letters = _word_for_matrix(m)
    w = PGL2Word.from_letters(letters)
    got = w.matrix()
    if got != m and got != tuple(tuple(-x for x in row) for row in m):
        raise InvalidSlope(f"word reconstruction failed for {m}")
    return w


def canonical_quadrilateral_matrix(a, b, c):
    """A matrix carrying the quadrilateral triple {a,b,c} onto the standard
    triple {1/0, 0/1, 2/1} (central 1/0, witness 1/1).

    Returns None when the input is not a quadrilateral triple.
    """
    central = find_quadrilateral_triple_central(a, b, c)
    if central is None:
        return None
    witnesses = quadrilateral_witnesses(a, b, c)
    standard = {Slope(1, 0), Slope(0, 1), Slope(2, 1)}
    for d in witnesses:
        cols = ((central.p, d.p), (central.q, d.q))
        inv = _mat_inv(cols)
        # send central -> 1/0 and witness -> 1/1
        m = _mat_mul(((1, 1), (0, 1)), inv)
        image = {apply_matrix(m, s) for s in (a, b, c)}
        if image == standard:
            return m
        # the two outer points may land on 0/1 and -2/1; flip with S
        m2 = _mat_mul(REFLECTION, m)
        if {apply_matrix(m2, s) for s in (a, b, c)} == standard:
            return m2
    return None


def all_quadrilateral_triples(bound):
    """Every quadrilateral triple with all slopes within the bound."""
    slopes = [
        Slope(p, q)
        for q in range(0, bound + 1)
        for p in range(-bound, bound + 1)
        if not (q == 0 and p != 1) and gcd(abs(p), q) == 1
    ]
    out = []
    n = len(slopes)
    for i in range(n):
        for j in range(i + 1, n):
            if not is_farey_edge(slopes[i], slopes[j]):
                continue
            for k in range(n):
                if k == i or k == j:
                    continue
                # (i,j) edge; require exactly one more edge from k
                eik = is_farey_edge(slopes[i], slopes[k])
                ejk = is_farey_edge(slopes[j], slopes[k])
                if eik == ejk:
                    continue
                triple = frozenset({slopes[i], slopes[j], slopes[k]})
                if find_quadrilateral_triple_central(*triple) is not None:
                    out.append(triple)
    return sorted(set(out), key=lambda t: sorted(s.key() for s in t))
