import csv

from rich.table import Table

from pregsem.lib.LawReport import LawReport
from pregsem.lib.LawResult import LawResult


def make_report() -> LawReport:
    report = LawReport()
    report.record("vmodel", "⊙ unit", True, "25 instances")
    report.record("conceptlogic", "∧ is not idempotent", False, "1/2 ∧ 1/2 = 1/4")
    report.record("conceptlogic", "bijection", True)
    return report


def test_record_and_failures():
    report = make_report()
    assert len(report) == 3
    assert isinstance(report[0], LawResult)
    assert not report.all_passed
    assert report.count_failures() == 1
    (failure,) = report.failures()
    assert failure.name == "∧ is not idempotent"
    assert LawReport().all_passed


def test_results_sort_by_suite_then_name():
    names = [result.name for result in sorted(make_report())]
    assert names == ["bijection", "∧ is not idempotent", "⊙ unit"]


def test_dump_to_tsv_file(tmp_path):
    path = tmp_path / "laws.tsv"
    make_report().dump_to_tsv_file(path)
    with open(path, newline="", encoding="utf-8") as tsv_file:
        rows = list(csv.reader(tsv_file, delimiter="\t"))
    assert rows[0] == ["suite", "name", "passed", "detail"]
    assert rows[1] == ["conceptlogic", "bijection", "True", ""]
    assert len(rows) == 4


def test_as_table():
    table = make_report().as_table(title="Laws")
    assert isinstance(table, Table)
    assert table.row_count == 3
    assert table.title == "Laws"
