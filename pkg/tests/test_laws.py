from random import Random

import pytest

from pregsem.lib.laws import (
    ORACLE_POSET,
    SUITES,
    SUITE_NAMES,
    brute_force_reductions,
    check_boolean_laws,
    check_counting,
    check_double_role,
    check_lemma1,
    check_reduction_independence,
    check_scaling,
    check_type_round_trip,
    check_yanking,
    run_suite,
    set_partitions,
    suite_checks,
)
from pregsem.lib.pregroup import SimpleType, Type, find_reductions


@pytest.mark.parametrize("suite", sorted(SUITES))
def test_suite_passes_with_few_iterations(suite):
    report = run_suite(suite, seed=0, iters=5)
    assert len(report) > 0
    assert report.all_passed, report.failures()
    assert {result.suite for result in report} == {suite}


def test_suites_are_deterministic_for_a_seed():
    first = run_suite("conceptlogic", seed=3, iters=10)
    second = run_suite("conceptlogic", seed=3, iters=10)
    assert first == second


def test_suite_checks():
    assert "all" in SUITE_NAMES
    assert len(suite_checks("all")) == sum(len(checks) for checks in SUITES.values())
    assert [suite for suite, _ in suite_checks("vmodel")] == ["vmodel"] * 4
    with pytest.raises(ValueError):
        suite_checks("nonsense")


def test_run_suite_reports_progress_per_check():
    seen = []
    run_suite("pregroup", iters=2, on_check=lambda report: seen.append(len(report)))
    assert len(seen) == len(SUITES["pregroup"])
    assert seen == sorted(seen)


def test_brute_force_agrees_on_a_small_string():
    n = SimpleType("n")
    flat = (n, n.left, n, n.right, n)
    assert brute_force_reductions(flat, "n", ORACLE_POSET) == find_reductions([Type(flat)], "n", ORACLE_POSET)
    # the crossing pairing 1-3 2-4 is enumerated and then rejected; only the nested one survives
    nested = (n, n, n.right, n.right, SimpleType("s"))
    (reduction,) = brute_force_reductions(nested, "s", ORACLE_POSET)
    assert reduction.links == ((0, 3), (1, 2))
    assert reduction.survivor == 4


def test_set_partitions_counts_are_bell_numbers():
    assert len(list(set_partitions(3, 3))) == 5
    assert len(list(set_partitions(4, 4))) == 15
    # at most two blocks: 1 + (2^3 - 1)
    assert len(list(set_partitions(4, 2))) == 8
    assert list(set_partitions(1, 3)) == [(frozenset({0}),)]


def test_yanking_covers_every_basic_type_of_the_chips_grammar():
    report = check_yanking(Random(0), 1)
    assert report.all_passed, report.failures()
    # c2, gp, n, n2 and s, each at five exponents
    assert {result.detail for result in report} == {"25 instances"}


def test_type_round_trip_on_random_types():
    report = check_type_round_trip(Random(0), 1000)
    assert report.all_passed, report.failures()
    assert report[0].detail == "1000 instances"


def test_functional_model_laws():
    for check in (check_boolean_laws, check_scaling, check_counting, check_double_role):
        report = check(Random(0), 20)
        assert report.all_passed, report.failures()
        assert {result.suite for result in report} == {"funcmodel"}
    names = {result.name for result in check_boolean_laws(Random(0), 1)}
    assert "predicates form a Boolean algebra: De Morgan" in names
    assert len(names) == 5


def test_lemma1_is_exhaustive_up_to_six_entities():
    report = check_lemma1(Random(0), 1)
    assert report.all_passed, report.failures()
    details = {result.name: result.detail for result in report}
    # Σ over n ≤ 6 of (partitions into at most three blocks) · 4^n
    assert details["p or q constant on every block ⇒ connectives preserved"] == "545636 instances"
    assert details["lemma1_check agrees with the exhaustive table"] == "3940 instances"


def test_reduction_independence_covers_strings_with_several_reductions():
    report = check_reduction_independence(Random(0), 50)
    assert report.all_passed, report.failures()
    assert len(report) == 3
