import pytest

from src.core.constructions import (
    build_c4,
    build_p2,
    build_q3,
    cube,
    octahedron,
    pseudo_double_wheel,
    tetrahedron,
)
from src.core.errors import ColouringError, InvalidMapError
from src.core.map_core import (
    Colour,
    Colouring,
    EmbeddedMap,
    bipartition,
    degrees,
    dual,
    from_rotation,
    has_separating_4cycle,
    is_3_connected,
    is_simple,
    min_degree,
    mirror,
    radial,
    relabel,
    require_colouring,
    require_valid,
    validate,
)
from tests.helpers import make_rng, random_maps


def double_wheel_over_square() -> EmbeddedMap:
    """4-cycle with one hub on each side: the cycle separates the hubs."""
    return from_rotation([[4, 1, 3], [0, 2, 5], [4, 3, 1], [2, 0, 5], [2, 0], [1, 3]])


class TestEmbeddedMap:
    """Rotation-system basics and validation."""

    def test_p2_counts(self):
        p2 = build_p2()
        assert validate(p2) == []
        assert (p2.vertex_count, p2.edge_count, p2.face_count) == (3, 2, 1)
        assert [len(face) for face in p2.face_orbits] == [4]

    def test_single_edge_is_not_a_quadrangulation(self):
        problems = validate(EmbeddedMap((0, 1)))
        assert any("length" in p for p in problems)
        assert validate(EmbeddedMap((0, 1)), quadrangulation=False) == []

    def test_loop_is_reported(self):
        assert any("loop" in p for p in validate(EmbeddedMap((1, 0))))

    def test_non_permutation_rejected(self):
        with pytest.raises(InvalidMapError):
            EmbeddedMap((0, 0))
        with pytest.raises(InvalidMapError):
            EmbeddedMap((0, 1, 2))

    def test_require_valid_lists_violations(self):
        with pytest.raises(InvalidMapError) as info:
            require_valid(EmbeddedMap((0, 1)))
        assert info.value.violations

    def test_c4_counts(self):
        c4 = build_c4()
        assert validate(c4) == []
        assert (c4.vertex_count, c4.edge_count, c4.face_count) == (4, 4, 2)

    def test_vertex_ids_follow_smallest_dart(self):
        c4 = build_c4()
        assert [orbit[0] for orbit in c4.vertex_orbits] == sorted(orbit[0] for orbit in c4.vertex_orbits)
        assert c4.vertex_orbits == ((0, 2), (1, 5), (3, 7), (4, 6))

    def test_euler_counts_on_random_maps(self):
        for qmap in random_maps(30, 10, make_rng(1)):
            n = qmap.vertex_count
            assert qmap.edge_count == 2 * n - 4
            assert qmap.face_count == n - 2
            assert sum(qmap.vertex_degrees) == 4 * n - 8


class TestDegreesAndPredicates:
    """Degree multisets and the structural predicates behind the Q4 family."""

    def test_p2_degrees(self):
        assert degrees(build_p2()) == {1: 2, 2: 1}
        assert min_degree(build_p2()) == 1

    def test_q3_is_not_simple(self):
        assert not is_simple(build_q3())

    def test_c4_simple_but_not_3_connected(self):
        assert is_simple(build_c4())
        assert not is_3_connected(build_c4())

    @pytest.mark.parametrize("k", range(3, 9))
    def test_pseudo_double_wheels_are_polyhedral(self, k):
        wheel = pseudo_double_wheel(k)
        assert is_simple(wheel)
        assert is_3_connected(wheel)
        assert not has_separating_4cycle(wheel)

    def test_separating_4cycle_detected(self):
        qmap = double_wheel_over_square()
        assert validate(qmap) == []
        assert has_separating_4cycle(qmap)
        assert not is_3_connected(qmap)


class TestColourings:
    """Bipartitions and colouring validation."""

    def test_bipartition_is_proper(self):
        for qmap in random_maps(20, 9, make_rng(2)):
            colouring = bipartition(qmap)
            assert colouring[0] is Colour.STABLE
            for a, b in qmap.edges():
                assert colouring[a] is not colouring[b]
            assert colouring.s + colouring.u == qmap.vertex_count

    def test_swapped(self):
        colouring = bipartition(build_p2())
        swapped = colouring.swapped()
        assert (swapped.s, swapped.u) == (colouring.u, colouring.s)

    def test_non_bipartite_rejected(self):
        with pytest.raises(ColouringError):
            bipartition(tetrahedron())

    def test_improper_colouring_rejected(self):
        c4 = build_c4()
        with pytest.raises(ColouringError):
            require_colouring(c4, Colouring((Colour.STABLE,) * 4))


class TestRadialAndDuality:
    """Radial graphs of skeletons and dual maps."""

    def test_radial_of_tetrahedron(self):
        qmap, colouring = radial(tetrahedron())
        assert (qmap.vertex_count, qmap.edge_count, qmap.face_count) == (8, 12, 6)
        assert degrees(qmap) == {3: 8}
        assert (colouring.s, colouring.u) == (4, 4)

    def test_radial_colour_classes(self):
        skeleton = cube()
        qmap, colouring = radial(skeleton)
        assert qmap.vertex_count == skeleton.vertex_count + skeleton.face_count
        assert qmap.edge_count == 2 * skeleton.edge_count
        assert (colouring.s, colouring.u) == (skeleton.face_count, skeleton.vertex_count)
        assert min_degree(qmap) == 3

    def test_radial_of_p2_keeps_multiplicities(self):
        # the single face of P2 meets the centre twice
        qmap, colouring = radial(build_p2())
        assert validate(qmap) == []
        assert (colouring.s, colouring.u) == (1, 3)
        assert not is_simple(qmap)

    def test_radial_rejects_disconnected_input(self):
        with pytest.raises(InvalidMapError):
            radial(EmbeddedMap((0, 1, 2, 3)))

    def test_dual_of_cube_is_octahedron(self):
        octa = octahedron()
        assert (octa.vertex_count, octa.edge_count, octa.face_count) == (6, 12, 8)
        assert degrees(octa) == {4: 6}

    def test_dual_twice_restores_faces(self):
        skeleton = cube()
        twice = dual(dual(skeleton))
        assert twice.vertex_count == skeleton.vertex_count
        assert twice.face_count == skeleton.face_count

    def test_mirror_keeps_counts(self):
        wheel = pseudo_double_wheel(4)
        reflected = mirror(wheel)
        assert reflected.vertex_orbits == tuple(
            sorted((o[0],) + tuple(reversed(o[1:])) for o in wheel.vertex_orbits))
        assert validate(reflected) == []

    def test_relabel_requires_pairs(self):
        with pytest.raises(InvalidMapError):
            relabel(build_p2(), [1, 2, 3, 0])
