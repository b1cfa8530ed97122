from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Union

from pregsem.lib.constants import CHIPS_LEXICON_RESOURCE, CHIPS_POSET_RESOURCE, CHIPS_WORLD_RESOURCE
from pregsem.lib.errors import ParseError
from pregsem.lib.EvaluationReport import (
    EvaluationReport,
    WordRow,
    VERDICT_EQUAL,
    VERDICT_ERROR,
    VERDICT_EXPLAINED,
)
from pregsem.lib.funcmodel import (
    FunctionalModel,
    SVector,
    World,
    eval_functional,
    load_world,
    read_world_file,
    truth_class,
)
from pregsem.lib.helpers import load_resource_text
from pregsem.lib.interp import (
    PartitionScheme,
    build_MC,
    diagnose_divergence,
    entity_level,
    evaluate_mc,
    interpret,
    scheme_for_world,
)
from pregsem.lib.pregroup import (
    Lexicon,
    Parse,
    Poset,
    flatten,
    load_lexicon,
    load_poset,
    meaning_expression,
    parse_sentence,
    read_lexicon_file,
)
from pregsem.lib.vecmodel import VectorModel


@dataclass(frozen=True)
class Session:
    r"""
    Everything loaded for one run of the program: the poset of basic types, the lexicon, the world, the
    functional model built from them, the partition of the world, and the vector model induced by it.

    Note: The vector model is always `build_MC` of the functional model and the partition, never loaded
          on its own.
    """

    poset: Poset
    lexicon: Lexicon
    world: World
    model: FunctionalModel
    scheme: PartitionScheme
    vector_model: VectorModel
    reduction_index: int = 0

    @classmethod
    def load(
        cls,
        world_path: Optional[Union[str, Path]] = None,
        lexicon_path: Optional[Union[str, Path]] = None,
        poset_path: Optional[Union[str, Path]] = None,
        reduction_index: int = 0,
    ) -> "Session":
        r"""Loads the given files, falling back to the bundled chips fixture for any that is omitted."""
        if poset_path is None:
            poset = load_poset(load_resource_text(CHIPS_POSET_RESOURCE))
        else:
            poset = load_poset(Path(poset_path).read_text(encoding="utf-8"))
        if lexicon_path is None:
            lexicon = load_lexicon(load_resource_text(CHIPS_LEXICON_RESOURCE), poset)
        else:
            lexicon = read_lexicon_file(lexicon_path, poset)
        if world_path is None:
            world = load_world(load_resource_text(CHIPS_WORLD_RESOURCE))
        else:
            world = read_world_file(world_path)

        model = FunctionalModel.from_world(world, lexicon)
        scheme = scheme_for_world(world)
        return cls(
            poset=poset,
            lexicon=lexicon,
            world=world,
            model=model,
            scheme=scheme,
            vector_model=build_MC(model, scheme, lexicon, world),
            reduction_index=reduction_index,
        )

    @property
    def default_target(self) -> Optional[str]:
        return self.world.sentence_types[0] if self.world.sentence_types else None

    def parse(self, sentence: str, target: Optional[str] = None) -> List[Parse]:
        return parse_sentence(sentence, self.lexicon, target, self.poset)

    def choose(self, sentence: str, target: Optional[str] = None) -> Parse:
        r"""
        Returns the parse at the session's reduction index.

        Raises `ParseError` if there is none at all, and `IndexError` if the index is out of range.
        """
        parses = self.parse(sentence, target)
        if not parses:
            raise ParseError(f"No reduction of {sentence!r} to {target or 'any basic type'}")
        if not 0 <= self.reduction_index < len(parses):
            raise IndexError(f"Reduction index {self.reduction_index} is out of range; there are {len(parses)}")
        return parses[self.reduction_index]

    def evaluate(self, sentence: str, target: Optional[str] = None) -> EvaluationReport:
        r"""
        Evaluates a sentence in the functional model and in the vector model, and compares the vector model's
        result with J_C of the sentence's entity-level reading.
        """
        target = self.default_target if target is None else target
        parse = self.choose(sentence, target)
        flat = flatten(parse.types)
        graph = meaning_expression(parse.entries, parse.reduction, self.poset)
        f_value = eval_functional(self.model, graph)
        f_state = truth_class(f_value) if isinstance(f_value, SVector) else None

        mc = evaluate_mc(self.vector_model, parse)
        reference = interpret(entity_level(self.model, parse, self.world), self.scheme)
        divergences = ()
        if mc.vector == reference:
            verdict = VERDICT_EQUAL
        else:
            divergences = diagnose_divergence(self.model, parse, self.world, self.scheme, mc.vector, reference)
            verdict = VERDICT_EXPLAINED if all(d.explained for d in divergences) else VERDICT_ERROR

        words = []
        for entry in parse.entries:
            key = (entry.word, entry.type)
            if key in self.vector_model.operators:
                vector = f"operator {self.vector_model.operators[key]}"
            elif key in self.vector_model.assignment:
                vector = str(self.vector_model.assignment[key])
            else:
                vector = "unbound"
            binding = f"{entry.binding.kind.value} {entry.binding.name}"
            words.append(WordRow(word=entry.word, type=entry.type.describe(), binding=binding, vector=vector))

        return EvaluationReport(
            sentence=sentence,
            target=parse.reduction.target,
            diagram=parse.reduction.diagram(flat),
            chain=tuple(graph.chains()),
            f_value=f_value,
            f_state=f_state,
            mc=mc.vector,
            reference=reference,
            words=tuple(words),
            verdict=verdict,
            divergences=divergences,
            trace=mc.trace,
        )
