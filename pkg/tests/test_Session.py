from fractions import Fraction
from pathlib import Path

import pytest

from pregsem.lib.errors import ParseError
from pregsem.lib.EvaluationReport import VERDICT_EQUAL, VERDICT_EXPLAINED
from pregsem.lib.funcmodel import SVector, TruthClass
from pregsem.lib.Session import Session

PETS = Path(__file__).parent / "data" / "pets"


@pytest.fixture
def pets():
    return Session.load(PETS / "world.json", PETS / "lexicon.tsv", PETS / "poset.txt")


def test_load_falls_back_to_the_chips_fixture():
    session = Session.load()
    assert session.default_target == "s"
    assert session.scheme.labels == ("c1", "c2", "c3", "c4", "c5")
    assert session.vector_model.basis == session.scheme.labels


def test_choose_reports_missing_and_out_of_range_parses():
    with pytest.raises(ParseError):
        Session.load().choose("blue no", "s")
    with pytest.raises(IndexError):
        Session.load(reduction_index=1).choose("no triangles are blue", "s")


def test_evaluate_a_negated_sentence():
    report = Session.load().evaluate("no triangles are blue")
    assert report.target == "s"
    assert report.f_value == SVector(10, 0)
    assert report.f_state.tag == TruthClass.true
    assert report.verdict == VERDICT_EQUAL
    assert report.chain == ("const -> cod:0: not ∘ are ∘ blue ∘ in_{c2,n} ∘ triangles",)
    assert [row.vector for row in report.words][0] == "operator not"


def test_evaluate_reports_an_explained_divergence():
    report = Session.load().evaluate("new circles", "n2")
    assert report.f_state is None
    assert report.f_description == "a25+a30"
    assert report.verdict == VERDICT_EXPLAINED
    data = report.to_dict()
    assert data["M_C"] == "(0, 0, 0, 1/4, 2/9)"
    assert data["J_C(F)"] == "(0, 0, 0, 0, 2/9)"
    assert data["divergences"] == [
        {"block": "c4", "M_C": "1/4", "J_C(F)": "0", "non_constant_words": ["new", "circles"], "explained": True}
    ]
    assert any("at c4" in line for line in report.summary_lines())


def test_pets_scheme_keeps_cats_and_dogs(pets):
    assert pets.scheme.labels == ("c1", "c2")
    assert pets.scheme.sizes == (2, 2)
    assert pets.default_target == "s"


def test_transitive_sentence_depends_on_word_order(pets):
    forward = pets.evaluate("cats chase dogs")
    assert forward.f_value == SVector(3, 1)
    assert forward.mc.basis == ("c1⊗c1", "c1⊗c2", "c2⊗c1", "c2⊗c2")
    assert forward.mc.coords == (0, Fraction(3, 4), 0, 0)
    assert forward.verdict == VERDICT_EQUAL

    backward = pets.evaluate("dogs chase cats")
    assert backward.f_value == SVector(0, 4)
    assert backward.mc.coords == (0, 0, 0, 0)
    assert backward.verdict == VERDICT_EQUAL


def test_evaluation_table_lists_each_word(pets):
    table = pets.evaluate("cats chase dogs").as_table()
    assert table.row_count == 3
