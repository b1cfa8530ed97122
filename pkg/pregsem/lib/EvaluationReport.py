from dataclasses import dataclass, field
from typing import List, Optional, Tuple, Union

from rich.markup import escape
from rich.table import Table, Column

from pregsem.lib.funcmodel import EntityVector, SVector, TruthState
from pregsem.lib.helpers import format_fraction
from pregsem.lib.interp import Divergence
from pregsem.lib.vecmodel import ConceptVector

VERDICT_EQUAL = "equal"
VERDICT_EXPLAINED = "explained-divergence"
VERDICT_ERROR = "error"


@dataclass(frozen=True, order=True)
class WordRow:
    r"""One word of an evaluated sentence, as chosen by the parse."""

    word: str = field()
    type: str = field()
    binding: str = field()  # e.g. "projector new"
    vector: str = field()  # its vector in M_C, or the operator it stands for


@dataclass(frozen=True)
class EvaluationReport:
    r"""
    A sentence evaluated both in the functional model and in the induced vector model, and the verdict
    on whether the two agree.

    Note: `reference` is J_C applied to the entity-level reading of the sentence; `mc` is the pointwise
          product of the word vectors in M_C (with any negation applied to it). When they differ,
          `divergences` lists the blocks and the property words that are not constant on them.
    """

    sentence: str
    target: str
    diagram: str
    chain: Tuple[str, ...]
    f_value: Union[SVector, EntityVector]
    f_state: Optional[TruthState]
    mc: ConceptVector
    reference: ConceptVector
    words: Tuple[WordRow, ...]
    verdict: str
    divergences: Tuple[Divergence, ...] = ()
    trace: Tuple[str, ...] = ()

    @property
    def f_description(self) -> str:
        return str(self.f_value) if isinstance(self.f_value, SVector) else self.f_value.describe()

    def summary_lines(self) -> List[str]:
        lines = [
            f"Sentence:   {self.sentence}  (target {self.target})",
            f"Reduction:  {self.diagram}",
            f"F:          {self.f_description}",
        ]
        if self.f_state is not None:
            lines.append(f"Truth:      {self.f_state.tag.value}")
        lines += [
            f"M_C:        {self.mc}",
            f"J_C(F):     {self.reference}",
            f"Verdict:    {self.verdict}",
        ]
        for divergence in self.divergences:
            explanation = (
                f"not constant on it: {', '.join(divergence.non_constant_words)}"
                if divergence.explained
                else "unexplained"
            )
            lines.append(
                f"  at {divergence.label}: M_C gives {format_fraction(divergence.mc_value)}, "
                f"J_C(F) gives {format_fraction(divergence.reference_value)}; {explanation}"
            )
        return lines

    def as_table(self) -> Table:
        r"""
        Returns the word-by-word comparison as a `rich.Table` instance.
        """
        table = Table(
            Column(header="Word", footer=f"{len(self.words)} words"),
            Column(header="Type"),
            Column(header="Binding"),
            Column(header="M_C", footer=str(self.mc)),
            title=escape(self.sentence),
            show_footer=True,
        )
        for row in self.words:
            table.add_row(escape(row.word), escape(row.type), escape(row.binding), escape(row.vector))
        return table

    def to_dict(self) -> dict:
        r"""A JSON-ready rendering, with every rational written exactly."""
        return {
            "sentence": self.sentence,
            "target": self.target,
            "reduction": self.diagram,
            "chain": list(self.chain),
            "F": self.f_description,
            "truth": None if self.f_state is None else self.f_state.tag.value,
            "M_C": str(self.mc),
            "J_C(F)": str(self.reference),
            "basis": list(self.mc.basis),
            "verdict": self.verdict,
            "divergences": [
                {
                    "block": d.label,
                    "M_C": format_fraction(d.mc_value),
                    "J_C(F)": format_fraction(d.reference_value),
                    "non_constant_words": list(d.non_constant_words),
                    "explained": d.explained,
                }
                for d in self.divergences
            ],
            "words": [
                {"word": row.word, "type": row.type, "binding": row.binding, "M_C": row.vector} for row in self.words
            ],
            "trace": list(self.trace),
        }
