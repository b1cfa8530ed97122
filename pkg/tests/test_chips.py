from pregsem.lib.chips import FIXTURE_SENTENCES, compare_golden, compute_golden, golden_report, load_golden


def test_every_golden_value_is_recomputed():
    computed = compute_golden()
    expected = load_golden()
    missing = set(expected) - set(computed)
    assert not missing
    for key, value in expected.items():
        assert computed[key] == value, key


def test_golden_report_passes():
    report = golden_report()
    assert report.all_passed
    assert len(report) == len(load_golden())
    assert {result.suite for result in report} == {"chips"}


def test_compare_golden_reports_differences():
    report = compare_golden({"P(new)": "1/2"}, {"P(new)": "13/30", "retained": "c1"})
    assert report.count_failures() == 2
    (changed,) = [result for result in report if result.name == "P(new)"]
    assert changed.detail == "got '1/2', expected '13/30'"


def test_every_fixture_sentence_has_a_verdict():
    computed = compute_golden()
    for sentence, _ in FIXTURE_SENTENCES:
        assert computed[f"verdict({sentence})"] in ("equal", "explained-divergence")
