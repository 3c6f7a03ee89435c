import pytest

from pantsgraph.errors import InvalidCurve, Unsupported
from pantsgraph.surface import SEPARATING, Curve, get_model
from pantsgraph.surfaces import SurfaceId

S05 = get_model((0, 5))
S12 = get_model((1, 2))
S11 = get_model((1, 1))
S06 = get_model((0, 6))


def test_validate_rejects_degenerate_vectors():
    ok, why = S05.validate((0,) * S05.tri.num_edges)
    assert not ok and "empty" in why
    link = S05.vertex_link(1)
    ok, why = S05.validate(link)
    assert not ok and why == "peripheral"
    bad = [0] * S05.tri.num_edges
    bad[0] = 1
    ok, why = S05.validate(tuple(bad))
    assert not ok


def test_ring_curves_and_separation_on_sphere():
    r12 = S05.ring_curve([1, 2])
    separating, partition = S05.separation(r12)
    assert separating
    assert frozenset({1, 2}) in partition and frozenset({3, 4, 5}) in partition
    r23 = S05.ring_curve([2, 3])
    assert S05.intersection(r12, r23) == 2
    r34 = S05.ring_curve([3, 4])
    assert S05.intersection(r12, r34) == 0


def test_every_sphere_curve_is_two_separating():
    for c in S05.enumerate_curves(4):
        separating, partition = S05.separation(c)
        assert separating
        sizes = sorted(len(p) for p in partition)
        assert sizes == [2, 3]


def test_torus_two_types():
    vert = S12.curve(S12.basis_curve_weights("vertical"))
    vert2 = S12.curve(S12.basis_curve_weights("vertical2"))
    horiz = S12.curve(S12.basis_curve_weights("horizontal"))
    waist = S12.curve(S12.basis_curve_weights("waist"))
    assert S12.torus_type(vert) == (1, 0)
    assert S12.torus_type(vert2) == (1, 0)
    assert S12.torus_type(horiz) == (0, 1)
    assert S12.torus_type(waist) == SEPARATING
    separating, partition = S12.separation(waist)
    assert separating and frozenset({1, 2}) in partition
    assert S12.intersection(vert, vert2) == 0
    assert S12.intersection(vert, horiz) == 1
    with pytest.raises(Unsupported):
        S05.torus_type(S05.ring_curve([1, 2]))


def test_torus_two_separating_pairs_intersect_at_least_four():
    curves = S12.enumerate_curves(6)
    seps = [c for c in curves if S12.torus_type(c) == SEPARATING]
    assert seps
    for i, c1 in enumerate(seps):
        for c2 in seps[i + 1:]:
            assert S12.intersection(c1, c2) >= 4


def test_reflection_is_an_involution_preserving_intersections():
    for model, bound in ((S05, 3), (S12, 4), (S11, 4)):
        curves = model.enumerate_curves(bound)
        assert curves
        for c in curves:
            rc = model.apply_token("r", c)
            assert model.apply_token("r", rc) == c
        for c1 in curves[:8]:
            for c2 in curves[:8]:
                assert model.intersection(
                    model.apply_token("r", c1), model.apply_token("r", c2)
                ) == model.intersection(c1, c2)


def test_half_twist_fixes_its_ring_and_permutes_punctures():
    for i in (1, 2, 3, 4):
        ring = S05.ring_curve([i, i + 1])
        assert S05.apply_word([f"s{i}"], ring) == ring
    r23 = S05.ring_curve([2, 3])
    image = S05.apply_word(["s1"], r23)
    separating, partition = S05.separation(image)
    assert frozenset({1, 3}) in partition
    # the inverse word undoes it
    assert S05.apply_word(["s1~"], image) == r23


def test_braid_relations_on_curves():
    samples = S05.enumerate_curves(3)
    assert len(samples) >= 5
    for c in samples:
        lhs = S05.apply_word(["s1", "s2", "s1"], c)
        rhs = S05.apply_word(["s2", "s1", "s2"], c)
        assert lhs == rhs
        assert S05.apply_word(["s1", "s3"], c) == S05.apply_word(["s3", "s1"], c)


def test_half_twists_preserve_intersections():
    samples = S05.enumerate_curves(3)
    for w in (["s1"], ["s2"], ["s4~"], ["s2", "s3"]):
        for c1 in samples[:6]:
            for c2 in samples[:6]:
                assert S05.intersection(
                    S05.apply_word(w, c1), S05.apply_word(w, c2)
                ) == S05.intersection(c1, c2)


def test_torus_twists_fix_cores_and_act_on_types():
    vert = S12.curve(S12.basis_curve_weights("vertical"))
    horiz = S12.curve(S12.basis_curve_weights("horizontal"))
    assert S12.apply_word(["ta"], horiz) == horiz
    assert S12.apply_word(["tb1"], vert) == vert
    assert S12.apply_word(["tb2"], vert) == vert
    # calibrated transvections: ta acts as [[1,0],[1,1]] and tb1 as
    # [[1,-1],[0,1]] on (p, q) classes (a coherently handed pair)
    img = S12.apply_word(["ta"], vert)
    assert S12.torus_type(img) == (1, 1)
    img2 = S12.apply_word(["tb1"], horiz)
    assert S12.torus_type(img2) == (-1, 1)
    # twists about disjoint curves commute
    for c in S12.enumerate_curves(3):
        assert S12.apply_word(["tb1", "tb2"], c) == S12.apply_word(["tb2", "tb1"], c)


def test_torus_twist_braid_relation():
    # the cores intersect once, so the twists satisfy the braid relation
    for c in S12.enumerate_curves(3):
        assert S12.apply_word(["ta", "tb1", "ta"], c) == S12.apply_word(
            ["tb1", "ta", "tb1"], c
        )


def test_torus_one_twists_match_farey_action():
    # on the once-punctured torus the twist action on slopes is parabolic
    def slope_curve(p, q):
        names = S11.tri.edge_names
        w = [0, 0, 0]
        w[names.index("a")] = abs(p)
        w[names.index("b")] = abs(q)
        w[names.index("d")] = abs(p - q)
        return S11.curve(w)

    vert = slope_curve(1, 0)
    horiz = slope_curve(0, 1)
    assert S11.apply_word(["tb"], vert) == vert
    assert S11.apply_word(["ta"], horiz) == horiz
    img = S11.apply_word(["ta"], vert)
    assert img in (slope_curve(1, 1), slope_curve(1, -1))
    for c in S11.enumerate_curves(4):
        assert S11.apply_word(["ta", "tb", "ta"], c) == S11.apply_word(
            ["tb", "ta", "tb"], c
        )


def test_involution_swaps_punctures_on_torus_two():
    # the orientation-preserving involution (x,y) -> (1-x,-y) swaps the
    # punctures; ring-type data is preserved
    curves = S12.enumerate_curves(4)
    for c in curves:
        ic = S12.apply_token("i", c)
        assert S12.apply_token("i", ic) == c
        assert (S12.torus_type(c) == SEPARATING) == (S12.torus_type(ic) == SEPARATING)
    for c1 in curves[:6]:
        for c2 in curves[:6]:
            assert S12.intersection(
                S12.apply_token("i", c1), S12.apply_token("i", c2)
            ) == S12.intersection(c1, c2)


def test_disjoint_subsurface_moves_on_sphere_six():
    a1 = S06.ring_curve([1, 2])
    a2 = S06.ring_curve([1, 2, 3])
    a3 = S06.ring_curve([1, 2, 3, 4])
    assert S06.intersection(a1, a2) == 0
    assert S06.intersection(a2, a3) == 0
    assert S06.intersection(a1, a3) == 0
    pieces, _ = S06.pieces([a1, a2, a3])
    assert len(pieces) == 4
    assert all(p.is_pants() for p in pieces)


def test_enumerate_curves_deterministic_and_valid():
    curves = S12.enumerate_curves(3)
    assert curves == sorted(curves)
    assert curves == S12.enumerate_curves(3)
    for c in curves:
        assert S12.validate(c.weights)[0]
