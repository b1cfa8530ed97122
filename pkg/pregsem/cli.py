import json
import sys
from contextlib import contextmanager
from pathlib import Path
from typing import Iterator, Optional
from typing_extensions import Annotated

import click
import typer

from pregsem import get_package_metadata
from pregsem.lib.chips import golden_report
from pregsem.lib.constants import (
    console,
    EXIT_EVALUATION_ERROR,
    EXIT_LAW_FAILURE,
    EXIT_PARSE_FAILURE,
    EXIT_USAGE,
)
from pregsem.lib.errors import ParseError, TypeSyntaxError
from pregsem.lib.EvaluationReport import VERDICT_ERROR
from pregsem.lib.helpers import init_progress_bar, print_section_header
from pregsem.lib.LawReport import LawReport
from pregsem.lib.laws import SUITE_NAMES, run_suite, suite_checks
from pregsem.lib.pregroup import flatten, meaning_expression
from pregsem.lib.Session import Session

app = typer.Typer(
    help="Parses strings with a pregroup grammar and evaluates their meanings in a functional model and in a "
    "concept-vector model.",
    add_completion=False,  # hides the shell completion options from `--help` output
    rich_markup_mode="markdown",  # enables use of Markdown in docstrings and CLI help
)

app_version = get_package_metadata("Version")


def display_app_version_and_exit(is_active: bool = False) -> None:
    r"""
    Displays the app's version number, then exits.

    Note: The `is_active` flag will be `True` if the program was
          invoked with the associated CLI option.

    Reference: https://typer.tiangolo.com/tutorial/options/version/
    """
    if is_active:
        console.print(f"[white]{app_version}[/white]")
        raise typer.Exit()


# Options shared by the commands that load a world.
# Reference: https://typer.tiangolo.com/tutorial/parameter-types/path/
WorldOption = Annotated[
    Optional[Path],
    typer.Option(
        "--world",
        envvar="PREGSEM_WORLD",
        exists=True,
        dir_okay=False,
        readable=True,
        resolve_path=True,
        help="Filesystem path of the world JSON file. Defaults to the bundled chips world.",
    ),
]
LexiconOption = Annotated[
    Optional[Path],
    typer.Option(
        "--lexicon",
        envvar="PREGSEM_LEXICON",
        exists=True,
        dir_okay=False,
        readable=True,
        resolve_path=True,
        help="Filesystem path of the lexicon (TSV, or JSON if named `*.json`). Defaults to the chips lexicon.",
    ),
]
PosetOption = Annotated[
    Optional[Path],
    typer.Option(
        "--poset",
        envvar="PREGSEM_POSET",
        exists=True,
        dir_okay=False,
        readable=True,
        resolve_path=True,
        help="Filesystem path of the file declaring the basic types and their order. Defaults to the chips poset.",
    ),
]
TargetOption = Annotated[
    Optional[str],
    typer.Option(
        "--target",
        help="Basic type the string must reduce to. Defaults to the world's first sentence type.",
    ),
]
JsonOption = Annotated[
    bool,
    typer.Option(
        "--json",
        help="Print the result as JSON (with exact rationals) instead of as text.",
    ),
]
VerboseOption = Annotated[
    bool,
    typer.Option(
        "--verbose",
        help="Show verbose output.",
    ),
]


@app.callback()
def root(
    version: Annotated[
        Optional[bool],
        typer.Option(
            "--version",
            callback=display_app_version_and_exit,
            is_eager=True,  # tells Typer to process this option first
            help="Show version number and exit.",
        ),
    ] = None,
):
    r"""
    Parses strings with a pregroup grammar and evaluates their meanings in a functional model and in a
    concept-vector model.
    """


@contextmanager
def exit_on_error() -> Iterator[None]:
    r"""
    Translates the errors the library raises into the program's exit codes.

    Note: An out-of-range `--reduction` surfaces as an `IndexError`, which we treat as a usage error.
    """
    try:
        yield
    except (ParseError, TypeSyntaxError) as error:
        console.print(f"[red]Parse failure:[/red] {error}")
        raise typer.Exit(code=EXIT_PARSE_FAILURE)
    except IndexError as error:
        console.print(f"[red]Usage error:[/red] {error}")
        raise typer.Exit(code=EXIT_USAGE)
    except ValueError as error:
        console.print(f"[red]Evaluation error:[/red] {error}")
        for label, entities in (("Overlaps", "overlaps"), ("Gaps", "gaps")):
            if getattr(error, entities, ()):
                console.print(f"{label}: {', '.join(getattr(error, entities))}")
        raise typer.Exit(code=EXIT_EVALUATION_ERROR)


def echo_json(data) -> None:
    r"""Prints `data` as sorted, indented JSON, so that identical inputs give byte-identical output."""
    typer.echo(json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False))


@app.command("parse")
def parse(
    sentence: Annotated[str, typer.Argument(help="The string to parse, e.g. `no triangles are blue`.")],
    target: TargetOption = None,
    world_file_path: WorldOption = None,
    lexicon_file_path: LexiconOption = None,
    poset_file_path: PosetOption = None,
    output_json: JsonOption = False,
    verbose: VerboseOption = False,
):
    """
    Lists every reduction of a string to the target type, with its link diagram.
    """
    with exit_on_error():
        session = Session.load(world_file_path, lexicon_file_path, poset_file_path)
        target = session.default_target if target is None else target
        parses = session.parse(sentence, target)
        if not parses:
            raise ParseError(f"No reduction of {sentence!r} to {target or 'any basic type'}")

        listing = []
        for index, candidate in enumerate(parses):
            graph = meaning_expression(candidate.entries, candidate.reduction, session.poset)
            listing.append(
                {
                    "index": index,
                    "target": candidate.reduction.target,
                    "types": [entry.type.describe() for entry in candidate.entries],
                    "reduction": candidate.reduction.diagram(flatten(candidate.types)),
                    "chain": graph.chains(),
                }
            )

    if output_json:
        echo_json({"sentence": sentence, "reductions": listing})
        return

    console.print(f"{len(listing)} reduction(s) of '{sentence}' to {target or 'any basic type'}")
    for item in listing:
        console.print(f"[{item['index']}] {item['reduction']}", markup=False, soft_wrap=True)
        if verbose:
            console.print(f"    types: {' | '.join(item['types'])}", markup=False)
            for chain in item["chain"]:
                console.print(f"    {chain}", markup=False)


@app.command("eval")
def evaluate(
    sentence: Annotated[str, typer.Argument(help="The string to evaluate, e.g. `new triangles`.")],
    target: TargetOption = None,
    reduction_index: Annotated[
        int,
        typer.Option(
            "--reduction",
            min=0,
            help="Which of the string's reductions (in the order `parse` lists them) to evaluate.",
        ),
    ] = 0,
    world_file_path: WorldOption = None,
    lexicon_file_path: LexiconOption = None,
    poset_file_path: PosetOption = None,
    output_json: JsonOption = False,
    verbose: VerboseOption = False,
):
    """
    Evaluates a string in the functional model and in the induced vector model, and compares the two.
    """
    with exit_on_error():
        session = Session.load(world_file_path, lexicon_file_path, poset_file_path, reduction_index=reduction_index)
        report = session.evaluate(sentence, target)

    if output_json:
        echo_json(report.to_dict())
    else:
        for line in report.summary_lines():
            console.print(line, markup=False, soft_wrap=True)
        if verbose:
            print_section_header(console, text="Words")
            console.print(report.as_table())
            print_section_header(console, text="Meaning")
            for chain in report.chain:
                console.print(chain, markup=False)
            for step in report.trace:
                console.print(step, markup=False)

    if report.verdict == VERDICT_ERROR:
        raise typer.Exit(code=EXIT_EVALUATION_ERROR)


def _finish_report(report: LawReport, title: str, output_json: bool, verbose: bool) -> None:
    r"""Prints a law report and exits with the failure code if anything failed."""
    # In JSON mode, emit every result, sorted, and nothing else.
    if output_json:
        echo_json(
            {
                "passed": report.all_passed,
                "results": [
                    {"suite": r.suite, "name": r.name, "passed": r.passed, "detail": r.detail} for r in sorted(report)
                ],
            }
        )
    else:
        # Display a table of the failed checks (or, in verbose mode, of all of them).
        shown = report if verbose else report.failures()
        if len(shown) > 0:
            console.print(shown.as_table(title=title))

        # Show a summary line, highlighting the failure count when it is nonzero.
        num_failures = report.count_failures()
        color_name = "white" if num_failures == 0 else "red"
        console.print(f"Checks: {len(report)}, failures: [{color_name}]{num_failures}[/{color_name}]")

    # Any failed law or golden value makes the command fail.
    if not report.all_passed:
        raise typer.Exit(code=EXIT_LAW_FAILURE)


@app.command("laws")
def laws(
    suite: Annotated[
        str,
        typer.Option(
            "--suite",
            help=f"Which law suite to run: {', '.join(SUITE_NAMES)}.",
        ),
    ] = "all",
    seed: Annotated[
        int,
        typer.Option(
            "--seed",
            help="Seed of the random instances. The same seed always gives the same report.",
        ),
    ] = 0,
    iters: Annotated[
        Optional[int],
        typer.Option(
            "--iters",
            min=1,
            help="Number of random instances per randomized check. Defaults to a per-suite count.",
        ),
    ] = None,
    output_json: JsonOption = False,
    verbose: VerboseOption = False,
):
    """
    Runs the seeded law suites and reports every law that fails, with its witness.
    """
    # Resolve the suite name to its checks; an unknown name is a usage error.
    try:
        checks = suite_checks(suite)
    except ValueError as error:
        console.print(f"[red]Usage error:[/red] {error}")
        raise typer.Exit(code=EXIT_USAGE)

    # In JSON mode, the document is the only output.
    if output_json:
        report = run_suite(suite, seed=seed, iters=iters)
    else:
        print_section_header(console, text=f"Running law suite: {suite}")

        # Initialize a progress bar with one step per check.
        custom_progress = init_progress_bar()
        with custom_progress as progress:
            task_id = progress.add_task(suite, total=len(checks), num_failures=0)

            # Advance the progress bar by 0, so the elapsed time starts now.
            progress.update(task_id, advance=0)

            # After each check, advance the bar and refresh the running failure count.
            def on_check(partial: LawReport) -> None:
                progress.update(task_id, advance=1, num_failures=partial.count_failures())

            report = run_suite(suite, seed=seed, iters=iters, on_check=on_check)
        print_section_header(console, text="Summarizing results")

    _finish_report(report, title=f"Laws: {suite}", output_json=output_json, verbose=verbose)


@app.command("fixture-chips")
def fixture_chips(
    report_file_path: Annotated[
        Optional[Path],
        typer.Option(
            "--report",
            dir_okay=False,
            writable=True,
            readable=False,
            resolve_path=True,
            help="Filesystem path at which you want the program to write the comparison as a TSV file.",
        ),
    ] = None,
    output_json: JsonOption = False,
    verbose: VerboseOption = False,
):
    """
    Recomputes every golden value of the bundled chips world and compares it with the golden values.
    """
    # Recompute the golden values from the bundled world files and diff them against `golden.json`.
    with exit_on_error():
        report = golden_report()

    # Create a golden-value report in TSV format, if the user asked for one.
    if report_file_path is not None:
        if not output_json:
            console.print(f"Writing golden report: {report_file_path}")
        report.dump_to_tsv_file(file_path=report_file_path)

    _finish_report(report, title="Chips fixture", output_json=output_json, verbose=verbose)


def main() -> None:
    r"""
    Entry point of the `pregsem` command.

    Note: Click exits with code 2 on usage errors; this program reserves 2 for parse failures,
          so usage errors are remapped to 1 here.
    """
    try:
        exit_code = app(standalone_mode=False)
    except click.exceptions.UsageError as error:
        error.show()
        sys.exit(EXIT_USAGE)
    except click.exceptions.Abort:
        sys.exit(EXIT_USAGE)
    sys.exit(exit_code if isinstance(exit_code, int) else 0)


if __name__ == "__main__":
    main()
