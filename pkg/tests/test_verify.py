import json

import pytest

from angulator.annulus import AnnulusConfig, UnsupportedFlip, initial_bridges
from angulator.disk import Diagonal, DiskConfig, initial_fan
from angulator.quiver import PlainQuiver
from angulator.verify import (
    VerificationReport,
    all_disk_cases,
    check_annulus_maximal,
    check_axioms,
    check_connectivity,
    check_counts,
    check_cut_transport,
    check_flip_cycle,
    check_flip_mutation,
    check_gabriel,
    fuss_catalan,
    is_linear_path,
    random_walk,
    run_suite,
)

PENTAGON = DiskConfig(1, 5)


class TestReport:
    def test_pass_flag_mirrors_failures(self):
        report = VerificationReport("demo")
        report.check(True, "ok")
        assert report.passed and report.cases == 1
        report.check(False, "bad", expected=1, actual=2)
        assert not report.passed
        assert report.failures[0].fingerprint == "bad"

    def test_json_shape(self):
        report = VerificationReport("demo")
        report.check(False, "case", "x", "y")
        data = json.loads(json.dumps(report.to_json_dict()))
        assert data["suite"] == "demo" and data["passed"] is False
        assert data["failures"] == [{"input": "case", "expected": "x", "actual": "y"}]
        assert "elapsed" in data
        assert "elapsed" not in report.to_json_dict(include_elapsed=False)


class TestFussCatalan:
    def test_values(self):
        assert fuss_catalan(1, 3) == 5
        assert fuss_catalan(2, 3) == 12
        assert fuss_catalan(3, 3) == 22
        assert fuss_catalan(1, 5) == 42
        assert fuss_catalan(3, 4) == 140


class TestLinearPath:
    def test_paths(self):
        assert is_linear_path(PlainQuiver(1, ()))
        assert is_linear_path(PlainQuiver(3, (((1, 0), 1), ((2, 1), 1))))
        assert not is_linear_path(PlainQuiver(3, (((0, 1), 1), ((0, 2), 1))))
        assert not is_linear_path(PlainQuiver(3, (((0, 1), 2),)))
        assert not is_linear_path(PlainQuiver(2, (((0, 1), 1), ((1, 0), 1))))


class TestWalks:
    def test_deterministic(self):
        a = [(repr(ang), repr(arc)) for ang, arc in random_walk(PENTAGON, 30, 5)]
        b = [(repr(ang), repr(arc)) for ang, arc in random_walk(PENTAGON, 30, 5)]
        assert a == b
        c = [(repr(ang), repr(arc)) for ang, arc in random_walk(PENTAGON, 30, 6)]
        assert a != c

    def test_zero_steps(self):
        assert list(random_walk(PENTAGON, 0, 1)) == []

    def test_every_emitted_angulation_valid(self):
        for cfg in (DiskConfig(2, 10), AnnulusConfig(1, 2, 2), AnnulusConfig(2, 4, 3)):
            for ang, arc in random_walk(cfg, 60, 3):
                assert ang.is_valid()
                arcs = ang.diagonals if isinstance(cfg, DiskConfig) else ang.arcs
                assert arc in arcs

    def test_annulus_walk_avoids_unsupported_positions(self):
        for ang, arc in random_walk(AnnulusConfig(1, 2, 1), 40, 0):
            ang.flip(arc)  # must not raise


class TestSuites:
    def test_flip_mutation_on_pentagon_enumeration(self):
        report = check_flip_mutation(all_disk_cases(PENTAGON))
        assert report.passed and report.cases == 10

    def test_flip_mutation_records_failures(self):
        # corrupt a case stream by pairing an angulation with a foreign arc
        ang = initial_fan(PENTAGON)
        with pytest.raises(ValueError):
            check_flip_mutation([(ang, Diagonal(2, 4))])

    def test_flip_cycle_and_axioms(self):
        cases = list(all_disk_cases(DiskConfig(2, 8)))
        assert check_flip_cycle(cases).passed
        assert check_axioms(cases).passed

    def test_annulus_cases(self):
        cases = list(random_walk(AnnulusConfig(2, 2, 2), 40, 1))
        assert check_flip_mutation(cases).passed
        assert check_flip_cycle(cases).passed
        assert check_axioms(cases).passed

    def test_counts_and_connectivity(self):
        assert check_counts(DiskConfig(2, 8)).passed
        assert check_connectivity(DiskConfig(2, 8)).passed

    def test_gabriel(self):
        assert check_gabriel(DiskConfig(3, 11)).passed

    def test_cut_transport(self):
        cases = list(random_walk(DiskConfig(2, 10), 25, 2))
        assert check_cut_transport(DiskConfig(2, 10), cases).passed
        acfg = AnnulusConfig(2, 2, 2)
        assert check_cut_transport(acfg, list(random_walk(acfg, 25, 2))).passed

    def test_annulus_maximal(self):
        assert check_annulus_maximal(AnnulusConfig(2, 1, 1), trials=25, seed=0).passed
        assert check_annulus_maximal(AnnulusConfig(1, 2, 1), trials=25, seed=0).passed


class TestRunSuite:
    def test_unknown_suite(self):
        with pytest.raises(ValueError):
            run_suite("nope")

    def test_small_cut_suite_all_pass(self):
        reports = run_suite("cut", seed=1, steps=5)
        assert reports and all(r.passed for r in reports)

    def test_deterministic_given_seed(self):
        a = [r.to_json_dict(include_elapsed=False) for r in run_suite("cut", seed=3, steps=4)]
        b = [r.to_json_dict(include_elapsed=False) for r in run_suite("cut", seed=3, steps=4)]
        assert a == b
