from fractions import Fraction
from importlib import resources
from typing import Iterable, Union

from rich.console import Console
from rich.progress import Progress, TextColumn, MofNCompleteColumn, BarColumn, TimeElapsedColumn

from pregsem.lib.constants import console, PACKAGE_NAME

Scalar = Union[int, Fraction]


def load_resource_text(resource_path: str) -> str:
    r"""
    Returns the contents of a file bundled with the package, as a string.

    Note: We do this via `importlib.resources` instead of a regular `open()` so
          that the path is accurate both when this program is run in a development
          environment and when it is run when installed from a wheel.
          Reference: https://docs.python.org/3.9/library/importlib.html#importlib.resources.files
    """
    return resources.files(PACKAGE_NAME).joinpath(resource_path).read_text(encoding="utf-8")


def to_fraction(value: Union[int, str, Fraction]) -> Fraction:
    r"""
    Converts an integer, a `Fraction`, or a string like "5/8" or "0.125" into an exact `Fraction`.

    Note: Decimal strings are converted exactly (i.e. "0.1" becomes 1/10, not the nearest binary float).
          Python floats are rejected, since they have already lost exactness.
    """
    if isinstance(value, bool) or isinstance(value, float):
        raise ValueError(f"Refusing inexact scalar: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    return Fraction(str(value).strip())


def format_fraction(value: Scalar) -> str:
    r"""Renders an exact rational as "p/q" (or "p" when the denominator is 1)."""
    value = Fraction(value)
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


def format_tuple(values: Iterable[Scalar]) -> str:
    r"""Renders a sequence of rationals as "(x1, x2, ...)"."""
    return "(" + ", ".join(format_fraction(v) for v in values) + ")"


def init_progress_bar() -> Progress:
    r"""
    Initialize a progress bar that shows the suite being run, its M-of-N completed checks, and elapsed time.

    Reference: https://rich.readthedocs.io/en/stable/progress.html?highlight=progress#columns
    """
    custom_progress = Progress(
        TextColumn("[progress.description]{task.description}"),
        TextColumn("[red]{task.fields[num_failures]}[/red] failures in"),
        MofNCompleteColumn(),
        TextColumn("checks"),
        TextColumn("[progress.percentage]{task.percentage:>3.0f}%"),
        BarColumn(),
        TimeElapsedColumn(),
        TextColumn("elapsed"),
        console=console,
        refresh_per_second=1,
    )

    return custom_progress


def print_section_header(console: Console, text: str) -> None:
    r"""
    Helper function that prints a vertically-padded,
    labeled, horizontal rule to the specified console.

    Reference: https://rich.readthedocs.io/en/stable/console.html#rules
    """
    console.print("")
    console.rule(f"[bold]{text}[/bold]")
    console.print("")
