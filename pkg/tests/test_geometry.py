import pytest

from pantsgraph.errors import InvalidCurve, NotConnected
from pantsgraph.geometry import (
    CurveGeometry,
    Development,
    geodesic_edge_weights,
    mat_det,
    normalize_hyperbolic,
)
from pantsgraph.intersect import intersection_from_profiles
from pantsgraph.normal import (
    check_matching,
    components,
    crossing_counts,
    enumerate_matchings,
    neighborhood_boundary_weights,
    trace_curve,
    vertex_link_weights,
)
from pantsgraph.surfaces import SUPPORTED, SurfaceId, build_triangulation

TRIS = {s: build_triangulation(SurfaceId(*s)) for s in SUPPORTED}
DEVS = {s: Development(t) for s, t in TRIS.items()}


def torus_slope_weights(tri, p, q):
    w = [0, 0, 0]
    w[tri.edge_names.index("a")] = abs(p)
    w[tri.edge_names.index("b")] = abs(q)
    w[tri.edge_names.index("d")] = abs(p - q)
    return tuple(w)


def slopes(bound):
    from math import gcd

    out = []
    for qq in range(0, bound + 1):
        for pp in range(-bound, bound + 1):
            if qq == 0 and pp != 1:
                continue
            if qq > 0 and gcd(abs(pp), qq) != 1:
                continue
            out.append((pp, qq))
    return out


def test_development_builds_and_steps_are_unimodular():
    for s, dev in DEVS.items():
        for gamma in dev.step.values():
            assert mat_det(gamma) == 1


def test_vertex_links_are_parabolic():
    for s, tri in TRIS.items():
        dev = DEVS[s]
        for v in range(len(tri.vertices)):
            w = vertex_link_weights(tri, v)
            ok, _ = check_matching(tri, w)
            assert ok
            crossings = trace_curve(tri, w)
            assert crossing_counts(tri, crossings) == list(w)
            m = dev.holonomy(crossings)
            tr = m[0][0] + m[1][1]
            assert abs(tr) == 2
            assert m not in (((1, 0), (0, 1)), ((-1, 0), (0, -1)))
            with pytest.raises(InvalidCurve):
                normalize_hyperbolic(m)


def test_torus_slope_curves_validate_and_are_hyperbolic():
    tri = TRIS[(1, 1)]
    dev = DEVS[(1, 1)]
    for p, q in slopes(6):
        w = torus_slope_weights(tri, p, q)
        ok, why = check_matching(tri, w)
        assert ok, (p, q, why)
        geom = CurveGeometry(tri, dev, w)
        assert geom.holonomy[0][0] + geom.holonomy[1][1] > 2


def test_trace_conservation_and_connectivity():
    tri = TRIS[(1, 1)]
    w = torus_slope_weights(tri, 2, 5)
    crossings = trace_curve(tri, w)
    assert crossing_counts(tri, crossings) == list(w)
    # a two-component multicurve: twice a slope curve
    w2 = tuple(2 * x for x in torus_slope_weights(tri, 1, 1))
    assert len(components(tri, w2)) == 2
    with pytest.raises(NotConnected):
        trace_curve(tri, w2)


def test_strand_heights_match_combinatorial_order():
    # the geodesic order of a curve's strands along every edge must agree
    # with the normal-position order from the trace (descending height =
    # ascending global position)
    cases = []
    tri1 = TRIS[(1, 1)]
    cases += [(tri1, DEVS[(1, 1)], torus_slope_weights(tri1, p, q))
              for p, q in slopes(5)]
    tri5 = TRIS[(0, 5)]
    for e_path in ("s1", "s2", "s3", "s4"):
        vset = set()
        ei = tri5.edge_names.index(e_path)
        vset.update(tri5.edge_ends(ei))
        cases.append(
            (tri5, DEVS[(0, 5)],
             neighborhood_boundary_weights(tri5, vset, {ei}))
        )
    for tri, dev, w in cases:
        geom = CurveGeometry(tri, dev, w)
        for e in range(tri.num_edges):
            pairs = sorted(
                zip(geom.heights[e], geom.positions[e]), key=lambda t: -t[0]
            )
            assert [p for _, p in pairs] == sorted(geom.positions[e])


def test_torus_intersections_match_slope_determinants():
    tri = TRIS[(1, 1)]
    dev = DEVS[(1, 1)]
    geoms = {}
    for p, q in slopes(5):
        geoms[(p, q)] = CurveGeometry(tri, dev, torus_slope_weights(tri, p, q))
    for (p1, q1), g1 in geoms.items():
        for (p2, q2), g2 in geoms.items():
            expected = abs(p1 * q2 - q1 * p2)
            got = intersection_from_profiles(tri, g1, g2)
            assert got == expected, ((p1, q1), (p2, q2), got, expected)


def test_intersection_symmetric_and_vanishing_on_diagonal():
    tri = TRIS[(0, 5)]
    dev = DEVS[(0, 5)]
    rings = []
    for name in ("s1", "s2", "s3", "s4", "s5"):
        ei = tri.edge_names.index(name)
        w = neighborhood_boundary_weights(tri, set(tri.edge_ends(ei)), {ei})
        rings.append(CurveGeometry(tri, dev, w))
    for g1 in rings:
        assert intersection_from_profiles(tri, g1, g1) == 0
        for g2 in rings:
            assert intersection_from_profiles(
                tri, g1, g2
            ) == intersection_from_profiles(tri, g2, g1)


def test_four_holed_sphere_ring_intersections():
    tri = TRIS[(0, 4)]
    dev = DEVS[(0, 4)]

    def ring(path_name):
        ei = tri.edge_names.index(path_name)
        w = neighborhood_boundary_weights(tri, set(tri.edge_ends(ei)), {ei})
        return CurveGeometry(tri, dev, w)

    r12 = ring("s1")
    r23 = ring("s2")
    r13 = ring("d3")
    assert intersection_from_profiles(tri, r12, r23) == 2
    assert intersection_from_profiles(tri, r12, r13) == 2
    assert intersection_from_profiles(tri, r23, r13) == 2


def test_geodesic_retracing_roundtrip():
    tri = TRIS[(1, 1)]
    dev = DEVS[(1, 1)]
    for p, q in slopes(5):
        w = torus_slope_weights(tri, p, q)
        geom = CurveGeometry(tri, dev, w)
        assert geodesic_edge_weights(tri, dev, geom.holonomy) == w
    tri5 = TRIS[(0, 5)]
    dev5 = DEVS[(0, 5)]
    ei = tri5.edge_names.index("s2")
    w = neighborhood_boundary_weights(tri5, set(tri5.edge_ends(ei)), {ei})
    geom = CurveGeometry(tri5, dev5, w)
    assert geodesic_edge_weights(tri5, dev5, geom.holonomy) == w


def test_enumerate_matchings_torus_counts():
    tri = TRIS[(1, 1)]
    dev = DEVS[(1, 1)]
    found = set()
    for w in enumerate_matchings(tri, 6):
        if len(components(tri, w)) != 1:
            continue
        m = dev.holonomy(trace_curve(tri, w))
        if abs(m[0][0] + m[1][1]) <= 2:
            continue
        found.add(w)
    expected = set()
    for p, q in slopes(6):
        w = torus_slope_weights(tri, p, q)
        if max(w) <= 6:
            expected.add(w)
    assert found == expected
