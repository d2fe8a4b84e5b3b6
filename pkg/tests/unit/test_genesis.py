import pytest

from config.census_goldens import goldens
from src.core.canon import are_isomorphic, canonical_code
from src.core.constructions import build_c4, build_p2, build_q4, pseudo_double_wheel, tetrahedron
from src.core.map_core import QUASI_DUAL_P1, bipartition, radial
from src.core.surgery import split
from src.generation.genesis import (
    GenerationLevel,
    ancestor,
    ancestor_partition,
    closure,
    expand_parents,
    generate_all,
    generate_levels,
    irreducibles,
    merge_children,
    random_split_chain,
)
from tests.helpers import make_rng, random_maps, random_relabel


class TestGenerationLevel:

    def test_add_deduplicates(self):
        level = GenerationLevel(4)
        c4 = build_c4()
        first = level.add(c4)
        second = level.add(random_relabel(c4, make_rng(3)))
        assert first == second
        assert len(level) == 1
        assert first in level
        assert not level.coloured

    def test_coloured_add(self):
        level = GenerationLevel(4)
        q4 = build_q4()
        level.add(q4, bipartition(q4))
        level.add(q4, bipartition(q4).swapped())
        assert len(level) == 2
        assert level.coloured


class TestExhaustiveGeneration:
    """Counts and witnesses of the S(1,3) generation from P2."""

    @pytest.mark.parametrize("n", range(3, 9))
    def test_counts(self, n):
        assert len(generate_all(n)) == goldens.Q_COUNTS[n]

    @pytest.mark.parametrize("n", [4, 5, 6, 7])
    def test_parent_links_replay(self, n):
        levels = generate_levels(n)
        level, parents = levels[n], levels[n - 1]
        assert set(level.parent_links) == set(level.classes)
        for code, (parent_code, walk) in level.parent_links.items():
            child = split(parents.classes[parent_code], walk)
            assert canonical_code(child) == code

    def test_representatives_are_canonical(self):
        for code, qmap in generate_all(6).classes.items():
            assert canonical_code(qmap) == code

    @pytest.mark.parametrize("n", [2, 13])
    def test_out_of_range(self, n):
        with pytest.raises(ValueError):
            generate_all(n)

    def test_explicit_expander_matches_cache(self):
        serial = generate_levels(6, expand=expand_parents)
        for n in range(3, 7):
            assert serial[n].codes() == generate_all(n).codes()
            assert serial[n].parent_links == generate_all(n).parent_links

    def test_merge_keeps_smallest_witness(self):
        parents = generate_all(5).records()
        whole = expand_parents(parents, 1, 3)
        merged = {}
        merge_children(merged, expand_parents(parents[1::2], 1, 3))
        merge_children(merged, expand_parents(parents[::2], 1, 3))
        assert merged == whole


class TestClosure:

    def test_closure_from_p2_is_generation(self):
        levels = closure([build_p2()], 1, 3, 6)
        assert sorted(levels) == [3, 4, 5, 6]
        assert levels[6].codes() == generate_all(6).codes()

    def test_seed_beyond_range_is_ignored(self):
        assert closure([pseudo_double_wheel(3)], 3, 3, 6) == {}

    def test_seed_only_level(self):
        levels = closure([pseudo_double_wheel(3)], 3, 3, 9)
        assert len(levels[8]) == 1
        assert len(levels[9]) == 0

    def test_coloured_closure_carries_colourings(self):
        p2 = build_p2()
        levels = closure([(p2, bipartition(p2))], 1, 1, 5)
        for level in levels.values():
            assert set(level.colourings) == set(level.classes)

    def test_bad_restriction(self):
        with pytest.raises(ValueError):
            closure([build_p2()], 2, 1, 5)


class TestIrreducibles:

    @pytest.mark.parametrize("n", range(4, 8))
    def test_none_below_eight(self, n):
        assert irreducibles(n) == {}

    def test_eight_is_the_cube(self):
        found = list(irreducibles(8).values())
        assert len(found) == goldens.IRREDUCIBLE_COUNTS[8]
        assert are_isomorphic(found[0], radial(tetrahedron())[0])


class TestAncestor:
    """Iterated monotone contraction."""

    def test_p1_is_its_own_ancestor(self):
        result = ancestor(QUASI_DUAL_P1)
        assert result.ancestor is QUASI_DUAL_P1
        assert result.witnesses == []

    def test_p2_is_a_fixed_point(self):
        result = ancestor(build_p2())
        assert result.ancestor == build_p2()
        assert result.witnesses == []

    def test_irreducible_is_a_fixed_point(self):
        wheel = pseudo_double_wheel(4)
        result = ancestor(wheel)
        assert result.witnesses == []
        assert result.code == canonical_code(wheel)

    def test_small_maps_reduce_to_p2(self):
        p2_code = canonical_code(build_p2())
        for qmap in random_maps(20, 7, make_rng(30)):
            result = ancestor(qmap)
            assert result.code == p2_code
            assert len(result.witnesses) == qmap.vertex_count - 3

    def test_colouring_is_carried(self):
        for qmap in random_maps(10, 7, make_rng(31)):
            result = ancestor(qmap, bipartition(qmap))
            assert result.colouring is not None
            assert result.code.colour_aware
            assert len(result.colouring) == result.ancestor.vertex_count

    def test_random_order_reaches_same_class(self):
        rng = make_rng(32)
        for qmap in random_maps(10, 9, rng):
            expected = ancestor(qmap).code
            for _ in range(3):
                assert ancestor(qmap, rng=rng).code == expected

    def test_partition_of_level_seven(self):
        fibres = ancestor_partition(generate_all(7))
        assert fibres == {canonical_code(build_p2()): goldens.Q_COUNTS[7]}


class TestRandomSplitChain:

    def test_vertex_count(self):
        rng = make_rng(40)
        qmap = random_split_chain(build_p2(), 6, 1, 3, rng)
        assert qmap.vertex_count == 9

    def test_reproducible(self):
        a = random_split_chain(build_p2(), 5, 1, 3, make_rng(41))
        b = random_split_chain(build_p2(), 5, 1, 3, make_rng(41))
        assert a == b

    def test_stops_without_walks(self):
        # an S(3,3) walk needs a vertex of degree >= 4
        assert random_split_chain(build_p2(), 4, 3, 3, make_rng(42)) == build_p2()
