r"""
The chips fixture: thirty chips of three shapes and three colours, some of them new.

`compute_golden` recomputes every golden number of this world from scratch (entity sums in the
functional model, block sizes and counts of the colour partition, concept vectors, probabilities and
the agreement of the vector model) and `compare_golden` diffs them against `golden.json`.
"""

import json
from typing import Dict, Mapping, Optional

from pregsem.lib.conceptlogic import Projector, alg_imp, alg_neg, geo_neg
from pregsem.lib.constants import CHIPS_GOLDEN_RESOURCE
from pregsem.lib.funcmodel import logical_consequence
from pregsem.lib.helpers import format_fraction, load_resource_text
from pregsem.lib.interp import generate_concept_space, interpret, state_probability, theorem1_suite
from pregsem.lib.LawReport import LawReport
from pregsem.lib.pregroup import meaning_expression
from pregsem.lib.Session import Session
from pregsem.lib.vecmodel import ConceptVector

# Sentences of the fixture, with the basic type each one is parsed to.
FIXTURE_SENTENCES = (
    ("no triangles are blue", "s"),
    ("triangles are blue", "s"),
    ("triangles are red", "s"),
    ("triangles are yellow", "s"),
    ("squares are blue", "s"),
    ("no circles are red", "s"),
    ("new squares", "n2"),
    ("new triangles", "n2"),
    ("new circles", "n2"),
)

# The counts k(shape, block) of each shape in the blocks where it occurs.
SHAPE_COUNTS = (
    ("square", "c1"),
    ("square", "c2"),
    ("circle", "c4"),
    ("circle", "c5"),
    ("triangle", "c3"),
    ("triangle", "c2"),
    ("triangle", "c4"),
)


def load_chips_session() -> Session:
    return Session.load()


def load_golden() -> Dict[str, str]:
    return json.loads(load_resource_text(CHIPS_GOLDEN_RESOURCE))


def compute_golden(session: Optional[Session] = None) -> Dict[str, str]:
    r"""
    Recomputes the fixture's values as strings, in the formats used by `golden.json`.
    """
    session = load_chips_session() if session is None else session
    world, scheme = session.world, session.scheme
    attributes = world.attributes
    values: Dict[str, str] = {"m": "(" + ", ".join(str(size) for size in scheme.sizes) + ")"}

    for shape, label in SHAPE_COUNTS:
        values[f"k({shape}, {label})"] = str(len(attributes[shape].top_set & scheme.block_of(label)))
    for name in ("square", "triangle", "circle", "new"):
        values[f"J({name})"] = str(interpret(attributes[name], scheme))
    values["¬J(new)"] = str(alg_neg(interpret(attributes["new"], scheme)))
    values["P(new)"] = format_fraction(state_probability(scheme, interpret(attributes["new"], scheme)))
    values["P(square)"] = format_fraction(state_probability(scheme, interpret(attributes["square"], scheme)))

    for sentence, target in FIXTURE_SENTENCES:
        report = session.evaluate(sentence, target)
        values[f"F({sentence})"] = report.f_description
        if report.f_state is not None:
            values[f"truth({sentence})"] = report.f_state.tag.value
        else:
            values[f"J(F({sentence}))"] = str(report.reference)
        values[f"M_C({sentence})"] = str(report.mc)
        values[f"verdict({sentence})"] = report.verdict
        if report.divergences:
            values[f"divergence({sentence})"] = ", ".join(d.label for d in report.divergences)

    parse = session.choose("no triangles are blue", "s")
    graph = meaning_expression(parse.entries, parse.reduction, session.poset)
    values["chain(no triangles are blue)"] = graph.edge_into(("cod", 0)).composite

    blue, red = attributes["blue"], attributes["red"]
    J_blue, J_red = interpret(blue, scheme), interpret(red, scheme)
    reflected = (
        alg_imp(J_blue, J_red) == ConceptVector.ones(scheme.labels)
        and logical_consequence(blue, red)
        and theorem1_suite(blue, red, scheme).all_passed
    )
    values["blue ⊢ red"] = str(reflected).lower()

    # The triangle vector, over all eight sign patterns, lies in the orthocomplement of the blue subspace.
    generated = generate_concept_space([(name, attributes[name]) for name in world.primitives], world.concepts)
    full = generated.scheme(keep_empty=True)
    triangle = interpret(attributes["triangle"], full)
    blue_patterns = [i for i, label in enumerate(full.labels) if "blue" in generated.pattern_of(label).split()]
    not_blue = geo_neg(Projector.from_kept(len(full.labels), blue_patterns))
    values["triangle ⟂ blue"] = str(not_blue.range.contains(triangle.coords)).lower()
    values["retained"] = ", ".join(generated.retained)
    return values


def compare_golden(computed: Mapping[str, str], expected: Mapping[str, str]) -> LawReport:
    r"""One result per expected key: whether the recomputed value is identical to the golden one."""
    report = LawReport()
    for key in sorted(expected):
        actual = computed.get(key)
        if actual == expected[key]:
            report.record("chips", key, True, actual)
        else:
            report.record("chips", key, False, f"got {actual!r}, expected {expected[key]!r}")
    return report


def golden_report(session: Optional[Session] = None) -> LawReport:
    return compare_golden(compute_golden(session), load_golden())
