"""
Full census runs against the published tables.
"""

import pytest

from config.census_goldens import goldens
from src.equilibrium.census import census
from src.shell.driver import ParallelLevelExpander


def assert_matches_goldens(report):
    assert report.golden_mismatches() == []
    for n in report.levels:
        assert report.q[n] == goldens.Q_COUNTS[n]
        assert 2 * report.q[n] - report.e_sd[n] == goldens.SUM_E_COUNTS[n]
    for (s, u), expected in goldens.e_counts(report.N).items():
        assert report.e[(s, u)] == expected, f"e({s},{u})"


def test_census_through_eight():
    report = census(8)
    assert_matches_goldens(report)
    assert report.ancestors[8] == goldens.ANCESTOR_ROWS[8]
    # the cube graph is the only irreducible class at n = 8, coloured 4 + 4 and self-dual
    assert report.ancestors[8][3] == 1


@pytest.mark.slow
def test_census_through_ten():
    expander = ParallelLevelExpander(4)
    report = census(10, expander, expander.tally)
    assert_matches_goldens(report)
    for n in range(4, 11):
        assert report.ancestors[n] == goldens.ANCESTOR_ROWS[n]
    assert sum(report.e.values()) == 1 + sum(goldens.SUM_E_COUNTS.values())


def test_tables_are_symmetric():
    report = census(7)
    table = report.table1()
    for (s, u), count in report.e.items():
        assert table.loc[u, s] == count == report.e[(u, s)]
