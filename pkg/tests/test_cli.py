import json
from pathlib import Path

from typer.testing import CliRunner

from pregsem.cli import app

PETS = Path(__file__).parent / "data" / "pets"

runner = CliRunner()


def pets_env() -> dict:
    return {
        "PREGSEM_WORLD": str(PETS / "world.json"),
        "PREGSEM_LEXICON": str(PETS / "lexicon.tsv"),
        "PREGSEM_POSET": str(PETS / "poset.txt"),
    }


def test_version():
    result = runner.invoke(app, ["--version"])
    assert result.exit_code == 0


def test_parse_lists_the_reduction():
    result = runner.invoke(app, ["parse", "no triangles are blue"])
    assert result.exit_code == 0
    assert "1 reduction(s)" in result.output
    assert "links: 2-7 3-6 4-5 8-11 9-10  survivor: 1 -> s" in result.output
    assert result.output.splitlines()[1].startswith("[0] 1:s ")


def test_parse_json():
    result = runner.invoke(app, ["parse", "new triangles", "--target", "n2", "--json"])
    assert result.exit_code == 0
    data = json.loads(result.output)
    assert data["sentence"] == "new triangles"
    (reduction,) = data["reductions"]
    assert reduction["index"] == 0
    assert reduction["types"] == ["n2 c2^l", "c2"]
    assert reduction["reduction"].endswith("survivor: 1 -> n2")


def test_parse_failure_exits_with_2():
    assert runner.invoke(app, ["parse", "blue no"]).exit_code == 2
    assert runner.invoke(app, ["parse", "no unicorns are blue"]).exit_code == 2


def test_eval_text():
    result = runner.invoke(app, ["eval", "no triangles are blue", "--verbose"])
    assert result.exit_code == 0
    assert "Verdict:    equal" in result.output
    assert "not ∘ are ∘ blue ∘ in_{c2,n} ∘ triangles" in result.output


def test_eval_json_reports_the_divergence():
    result = runner.invoke(app, ["eval", "new triangles", "--target", "n2", "--json"])
    assert result.exit_code == 0
    data = json.loads(result.output)
    assert data["verdict"] == "explained-divergence"
    assert data["M_C"] == "(0, 3/8, 1/6, 1/4, 0)"
    assert data["J_C(F)"] == "(0, 3/8, 1/6, 1/2, 0)"
    assert [d["block"] for d in data["divergences"]] == ["c4"]


def test_eval_json_is_byte_identical_across_runs():
    args = ["eval", "triangles are red", "--json"]
    assert runner.invoke(app, args).output == runner.invoke(app, args).output


def test_eval_reduction_out_of_range_is_a_usage_error():
    result = runner.invoke(app, ["eval", "no triangles are blue", "--reduction", "5"])
    assert result.exit_code == 1


def test_eval_with_world_files_from_the_environment():
    result = runner.invoke(app, ["eval", "cats chase dogs", "--json"], env=pets_env())
    assert result.exit_code == 0
    data = json.loads(result.output)
    assert data["F"] == "3·⊤ + 1·⊥"
    assert data["truth"] == "mixed"
    assert data["M_C"] == "(0, 3/4, 0, 0)"
    assert data["verdict"] == "equal"


def test_eval_with_world_files_as_options():
    result = runner.invoke(
        app,
        [
            "eval",
            "dogs chase cats",
            "--world",
            str(PETS / "world.json"),
            "--lexicon",
            str(PETS / "lexicon.tsv"),
            "--poset",
            str(PETS / "poset.txt"),
        ],
    )
    assert result.exit_code == 0
    assert "Truth:      false" in result.output


def test_laws():
    result = runner.invoke(app, ["laws", "--suite", "conceptlogic", "--iters", "5", "--seed", "1"])
    assert result.exit_code == 0
    assert "failures: 0" in result.output


def test_laws_json():
    result = runner.invoke(app, ["laws", "--suite", "vmodel", "--iters", "3", "--json"])
    assert result.exit_code == 0
    data = json.loads(result.output)
    assert data["passed"] is True
    assert {r["suite"] for r in data["results"]} == {"vmodel"}


def test_laws_unknown_suite_is_a_usage_error():
    assert runner.invoke(app, ["laws", "--suite", "nonsense"]).exit_code == 1


def test_fixture_chips(tmp_path):
    report_path = tmp_path / "chips.tsv"
    result = runner.invoke(app, ["fixture-chips", "--report", str(report_path)])
    assert result.exit_code == 0
    assert "failures: 0" in result.output
    lines = report_path.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "suite\tname\tpassed\tdetail"
    assert "chips\tP(new)\tTrue\t13/30" in lines
