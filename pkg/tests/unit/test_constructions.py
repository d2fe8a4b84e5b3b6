from collections import Counter

import pytest

from src.core.canon import are_isomorphic
from src.core.constructions import (
    build_c4,
    build_p2,
    build_q3,
    build_q4,
    cube,
    is_skeleton_name,
    named,
    prism,
    pseudo_double_wheel,
    pyramid,
    tetrahedron,
)
from src.core.errors import InvalidMapError
from src.core.map_core import degrees, radial, validate


class TestSmallQuadrangulations:

    @pytest.mark.parametrize("builder, n", [(build_p2, 3), (build_c4, 4), (build_q3, 4), (build_q4, 4)])
    def test_vertex_counts(self, builder, n):
        qmap = builder()
        assert validate(qmap) == []
        assert qmap.vertex_count == n

    def test_c4_is_a_cycle(self):
        assert degrees(build_c4()) == {2: 4}
        assert [len(f) for f in build_c4().face_orbits] == [4, 4]


class TestPseudoDoubleWheels:

    @pytest.mark.parametrize("k", [3, 4, 5, 6])
    def test_shape(self, k):
        wheel = pseudo_double_wheel(k)
        assert wheel.vertex_count == 2 * k + 2
        expected = Counter({3: 2 * k})
        expected[k] += 2
        assert degrees(wheel) == expected

    def test_three_is_the_cube(self):
        # pdw(3) is the radial graph of the tetrahedron, i.e. the cube graph
        assert are_isomorphic(pseudo_double_wheel(3), radial(tetrahedron())[0])

    def test_small_k_rejected(self):
        with pytest.raises(InvalidMapError):
            pseudo_double_wheel(2)


class TestSkeletons:

    def test_pyramid(self):
        base = pyramid(5)
        assert (base.vertex_count, base.edge_count, base.face_count) == (6, 10, 6)

    def test_prism(self):
        p = prism(5)
        assert (p.vertex_count, p.edge_count, p.face_count) == (10, 15, 7)
        assert are_isomorphic(prism(4), cube())

    def test_bad_parameters(self):
        with pytest.raises(InvalidMapError):
            pyramid(2)
        with pytest.raises(InvalidMapError):
            prism(2)


class TestNamed:

    def test_lookup(self):
        assert named("p2") == build_p2()
        assert named("PDW:4") == pseudo_double_wheel(4)
        assert named("prism:5") == prism(5)

    def test_unknown(self):
        with pytest.raises(KeyError):
            named("dodecahedron")

    def test_bad_argument(self):
        with pytest.raises(ValueError):
            named("pdw:x")

    @pytest.mark.parametrize("spec", ["pdw", "pyramid", "prism"])
    def test_missing_parameter(self, spec):
        with pytest.raises(ValueError, match=f"{spec} needs a parameter"):
            named(spec)

    def test_unexpected_parameter(self):
        with pytest.raises(ValueError, match="takes no parameter"):
            named("cube:3")

    def test_skeleton_names(self):
        assert is_skeleton_name("tetra")
        assert is_skeleton_name("prism:6")
        assert not is_skeleton_name("pdw:3")
