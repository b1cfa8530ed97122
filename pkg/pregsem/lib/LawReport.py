from typing import Union
from pathlib import Path
from dataclasses import fields, astuple
from collections import UserList
import csv

from rich.markup import escape
from rich.table import Table, Column

from pregsem.lib.LawResult import LawResult


class LawReport(UserList):
    """
    A list of law results.

    Note: `UserList` is a base class that facilitates the implementation of custom list classes.
          One thing it does is enable sorting via `sorted(the_list)`.
    """

    def record(self, suite: str, name: str, passed: bool, detail: str = "") -> LawResult:
        r"""Appends a result and returns it."""
        result = LawResult(suite=suite, name=name, passed=bool(passed), detail=detail)
        self.data.append(result)
        return result

    @property
    def all_passed(self) -> bool:
        return all(result.passed for result in self.data)

    def failures(self) -> "LawReport":
        return LawReport([result for result in self.data if not result.passed])

    def count_failures(self) -> int:
        return len(self.failures())

    def dump_to_tsv_file(self, file_path: Union[str, Path]) -> None:
        """
        Helper function that dumps the results to a TSV file at the specified path.
        """
        column_names = [field_.name for field_ in fields(LawResult)]
        with open(file_path, "w", newline="", encoding="utf-8") as tsv_file:
            writer = csv.writer(tsv_file, delimiter="\t")
            writer.writerow(column_names)  # header row
            for result in sorted(self.data):
                writer.writerow(astuple(result))  # data row

    def as_table(self, title: str = "Laws") -> Table:
        r"""
        Returns the results as a `rich.Table` instance.
        """
        table = Table(
            Column(header="Suite", footer=f"{len(self.data)} checks"),
            Column(header="Law"),
            Column(header="Result", footer=f"{self.count_failures()} failed"),
            Column(header="Detail"),
            title=title,
            show_footer=True,
        )
        for result in sorted(self.data):
            outcome = "[green]pass[/green]" if result.passed else "[red]FAIL[/red]"
            table.add_row(result.suite, escape(result.name), outcome, escape(result.detail))
        return table
