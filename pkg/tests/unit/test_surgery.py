import pytest

from src.core.canon import are_isomorphic, canonical_code
from src.core.constructions import build_c4, build_p2, build_q3, build_q4
from src.core.errors import InvalidContractionError, InvalidWalkError
from src.core.surgery import (
    ContractionSite,
    SplitWalk,
    contract,
    contractibility,
    degree_of_split,
    enumerate_sites,
    enumerate_splits,
    face_extensions,
    is_irreducible,
    is_k_contractible,
    new_face_site,
    split,
    valid_contractions,
)
from src.core.map_core import validate
from src.generation.genesis import generate_all


@pytest.fixture
def p2():
    return build_p2()


class TestSplitWalk:
    """Walk construction and validation."""

    def test_at_derives_vertex_and_m(self, p2):
        walk = SplitWalk.at(p2, 0, 2)
        assert (walk.v, walk.m) == (p2.vertex_of[0], 2)
        assert str(walk) == f"{walk.v}:0:2"

    def test_reversed(self, p2):
        walk = SplitWalk.at(p2, 0, 2)
        assert walk.reversed(p2) == SplitWalk.at(p2, 2, 0)

    def test_darts_at_different_vertices(self, p2):
        with pytest.raises(InvalidWalkError):
            SplitWalk.at(p2, 0, 1)

    def test_out_of_range(self, p2):
        with pytest.raises(InvalidWalkError):
            SplitWalk.at(p2, 0, 9)

    def test_inconsistent_m_rejected(self, p2):
        with pytest.raises(InvalidWalkError):
            split(p2, SplitWalk(p2.vertex_of[0], 0, 2, 1))


class TestSplit:
    """Vertex splitting."""

    def test_p2_centre_two_split_is_c4(self, p2):
        c4 = split(p2, SplitWalk.at(p2, 0, 2))
        assert c4.sigma == (2, 5, 0, 7, 6, 1, 4, 3)
        assert c4 == build_c4()

    def test_small_splits_of_p2(self, p2):
        assert sorted(build_q3().vertex_degrees) == [1, 1, 3, 3]
        assert sorted(build_q4().vertex_degrees) == [1, 1, 2, 4]
        assert not are_isomorphic(build_q3(), build_q4())

    def test_degree_of_split(self, p2):
        assert degree_of_split(p2, SplitWalk.at(p2, 0, 0)) == 1
        assert degree_of_split(p2, SplitWalk.at(p2, 0, 2)) == 2
        assert degree_of_split(p2, SplitWalk.at(p2, 1, 1)) == 1

    def test_enumerate_splits_of_p2(self, p2):
        assert len(enumerate_splits(p2, 1, 3)) == 6
        assert len(enumerate_splits(p2, 1, 3, reflections=False)) == 5
        assert [w.m for w in enumerate_splits(p2, 2, 2)] == [2, 2]

    def test_enumerate_splits_respects_bounds(self):
        level = generate_all(6)
        for qmap in level.classes.values():
            for walk in enumerate_splits(qmap, 2, 3):
                assert 2 <= degree_of_split(qmap, walk) <= 3

    def test_reflections_keep_one_walk_per_pair(self):
        for qmap in generate_all(5).classes.values():
            full = set(enumerate_splits(qmap, 1, 3))
            reduced = set(enumerate_splits(qmap, 1, 3, reflections=False))
            assert reduced <= full
            assert all(w in reduced or w.reversed(qmap) in reduced for w in full)

    @pytest.mark.parametrize("bounds", [(0, 3), (3, 2)])
    def test_bad_restriction(self, p2, bounds):
        with pytest.raises(ValueError):
            enumerate_splits(p2, *bounds)

    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_split_bookkeeping(self, n):
        for qmap in generate_all(n).classes.values():
            for walk in enumerate_splits(qmap, 1, 8):
                child = split(qmap, walk)
                assert validate(child) == []
                assert child.vertex_count == qmap.vertex_count + 1
                assert child.edge_count == qmap.edge_count + 2
                assert child.face_count == qmap.face_count + 1
                new_vertex = child.vertex_of[qmap.dart_count]
                assert child.degree(new_vertex) == walk.m
                assert child.degree(child.vertex_of[walk.d_first]) == qmap.degree(walk.v) - walk.m + 2

    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_split_endpoints_gain_one_edge(self, n):
        for qmap in generate_all(n).classes.values():
            for walk in enumerate_splits(qmap, 1, 8):
                child = split(qmap, walk)
                n1 = qmap.vertex_of[walk.d_first ^ 1]
                nm = qmap.vertex_of[walk.d_last ^ 1]
                for x, orbit in enumerate(qmap.vertex_orbits):
                    if x == walk.v:
                        continue
                    # n1 == nm for m = 1 and for parallel e1, em: that vertex gains two
                    gain = (x == n1) + (x == nm)
                    assert child.degree(child.vertex_of[orbit[0]]) == qmap.degree(x) + gain


class TestContraction:
    """Face contraction and contractibility."""

    def test_c4_contracts_to_p2(self):
        c4 = build_c4()
        results = list(valid_contractions(c4))
        assert len(results) == len(enumerate_sites(c4)) == 4
        for site, degree, result in results:
            assert degree == 2
            assert are_isomorphic(result, build_p2())

    def test_q3_is_only_one_contractible(self):
        q3 = build_q3()
        assert contractibility(q3) == (True, False)
        assert is_k_contractible(q3, 1)
        assert not is_k_contractible(q3, 2)
        failures = 0
        for site in enumerate_sites(q3):
            try:
                contract(q3, site)
            except InvalidContractionError:
                failures += 1
        assert failures > 0

    def test_not_a_face(self, p2):
        with pytest.raises(InvalidContractionError):
            contract(p2, ContractionSite((0, 1, 2, 3), 0))

    def test_irreducible_below_eight(self):
        for n in range(4, 8):
            assert not any(is_irreducible(q) for q in generate_all(n).classes.values())

    @pytest.mark.parametrize("n", [3, 4, 5, 6])
    def test_contract_undoes_split_exactly(self, n):
        for qmap in generate_all(n).classes.values():
            for walk in enumerate_splits(qmap, 1, 12):
                child = split(qmap, walk)
                assert contract(child, new_face_site(qmap, walk)) == qmap

    @pytest.mark.parametrize("n", [4, 5, 6])
    def test_every_contraction_is_undone_by_a_split(self, n):
        for qmap in generate_all(n).classes.values():
            target = canonical_code(qmap)
            for site, degree, smaller in valid_contractions(qmap):
                codes = {canonical_code(split(smaller, w))
                         for w in enumerate_splits(smaller, degree, degree)}
                assert target in codes, f"{site} of degree {degree}"


class TestFaceExtensions:
    """One-vertex insertions inside a face."""

    def test_extensions_of_p2_are_its_splits(self, p2):
        extensions = face_extensions(p2, p2.face_orbits[0])
        assert extensions
        codes = {canonical_code(q) for q in extensions}
        assert codes == set(generate_all(4).codes())

    def test_extensions_add_one_vertex(self):
        c4 = build_c4()
        for face in c4.face_orbits:
            for qmap in face_extensions(c4, face):
                assert qmap.vertex_count == 5
                assert validate(qmap) == []
