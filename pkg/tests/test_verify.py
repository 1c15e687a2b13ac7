import pytest

from cplxdist.algebra import gr
from cplxdist.cplane import point2
from cplxdist.esgk import esgk_family
from cplxdist.generators import (grid_points, isotropic_points,
                                 planted_plane_lines, random_points)
from cplxdist.lines3 import canonical_line, vec3
from cplxdist.verify import ALL_SUITES, run_verify

UNIT_SQUARE = [point2(0, 0), point2(1, 0), point2(0, 1), point2(1, 1)]


class TestRunVerify:
    def test_unit_square_full_suite_passes(self):
        fam = esgk_family(UNIT_SQUARE)
        report = run_verify(points=UNIT_SQUARE, lines=list(fam.lines))
        assert report.passed
        oracle = {c.name: c for c in report.checks}["quadruple-bruteforce-oracle"]
        assert "68" in oracle.detail

    def test_isotropic_family_passes(self):
        pts = isotropic_points(5, -1, gr(2))
        report = run_verify(points=pts)
        assert report.passed

    def test_grid_passes(self):
        report = run_verify(points=grid_points(3), triple_budget=60)
        assert report.passed

    def test_random_points_pass(self):
        pts = random_points(6, 8, seed=12)
        report = run_verify(points=pts)
        assert report.passed

    def test_planted_line_mutation_fails_with_witness(self):
        # replace one line of the family with a line whose decoded pair is
        # outside the point set: the cross-consistency check must fail and
        # name the intruder
        fam = esgk_family(UNIT_SQUARE)
        lines = list(fam.lines)
        lines[3] = canonical_line(vec3(7, 9, 0), vec3(1, 1, 1))
        report = run_verify(points=UNIT_SQUARE, lines=lines,
                            suites=["esgk-consistency"])
        assert not report.passed
        failing = [c for c in report.checks if not c.passed]
        assert failing
        assert any(c.witnesses for c in failing)

    def test_planted_duplicate_line_fails(self):
        fam = esgk_family(UNIT_SQUARE)
        lines = list(fam.lines)
        lines[0] = lines[1]
        report = run_verify(lines=lines, suites=["lines-distinct"])
        assert not report.passed

    def test_suite_selection(self):
        report = run_verify(points=UNIT_SQUARE, suites=["distance-stats"])
        assert {c.suite for c in report.checks} == {"distance-stats"}
        assert report.passed

    def test_unknown_suite_rejected(self):
        with pytest.raises(ValueError):
            run_verify(points=UNIT_SQUARE, suites=["nope"])

    def test_empty_input_rejected(self):
        with pytest.raises(ValueError):
            run_verify()

    def test_line_suites_on_planted_planes(self):
        lines, _ = planted_plane_lines(2, 6, 6, seed=4)
        report = run_verify(lines=lines, triple_budget=80)
        assert report.passed
        suites = {c.suite for c in report.checks}
        assert "richness-bounds" in suites and "hairbrush" in suites

    def test_all_suites_listed(self):
        assert set(ALL_SUITES) >= {"distance-stats", "esgk-family",
                                   "lemma65-caps", "hairbrush",
                                   "esgk-consistency"}
