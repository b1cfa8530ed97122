import json
from fractions import Fraction

import pytest
from rich.console import Console
from rich.progress import Progress

from pregsem.lib.constants import CHIPS_WORLD_RESOURCE
from pregsem.lib.helpers import (
    format_fraction,
    format_tuple,
    init_progress_bar,
    load_resource_text,
    print_section_header,
    to_fraction,
)


def test_init_progress_bar():
    assert isinstance(init_progress_bar(), Progress)


def test_load_resource_text():
    world = json.loads(load_resource_text(CHIPS_WORLD_RESOURCE))
    assert world["entity_count"] == 30


def test_to_fraction():
    assert to_fraction(3) == Fraction(3)
    assert to_fraction("5/8") == Fraction(5, 8)
    assert to_fraction(" 0.125 ") == Fraction(1, 8)
    assert to_fraction("0.1") == Fraction(1, 10)
    assert to_fraction(Fraction(2, 4)) == Fraction(1, 2)
    with pytest.raises(ValueError):
        to_fraction(0.5)
    with pytest.raises(ValueError):
        to_fraction(True)
    with pytest.raises(ValueError):
        to_fraction("five eighths")


def test_format_fraction_and_tuple():
    assert format_fraction(Fraction(10, 5)) == "2"
    assert format_fraction(Fraction(-2, 6)) == "-1/3"
    assert format_fraction(0) == "0"
    assert format_tuple([1, Fraction(5, 8), 0]) == "(1, 5/8, 0)"
    assert format_tuple([]) == "()"


def test_print_section_header():
    console = Console(record=True, width=40)
    print_section_header(console, "Laws")
    assert "Laws" in console.export_text()
