from fractions import Fraction

import pytest

from pregsem.lib.conceptlogic import DiagOp
from pregsem.lib.errors import EvaluationError, PartitionError
from pregsem.lib.funcmodel import BinaryPredicate, EntitySpace, Predicate, predicate_not
from pregsem.lib.interp import (
    PartitionScheme,
    build_partition,
    connective_preservation,
    describe_pattern,
    diagnose_divergence,
    entity_level,
    evaluate_mc,
    generate_concept_space,
    interpret,
    lemma1_check,
    parse_pattern,
    state_probability,
    theorem1_suite,
)
from pregsem.lib.Session import Session
from pregsem.lib.vecmodel import ConceptVector


@pytest.fixture
def chips():
    return Session.load()


@pytest.fixture
def space():
    return EntitySpace(tuple(f"a{i}" for i in range(1, 7)))


def test_build_partition_and_weights(space):
    scheme = build_partition(
        [Predicate.from_sets(space, [0, 1]), Predicate.from_sets(space, [2]), Predicate.from_sets(space, [3, 4, 5])]
    )
    assert scheme.labels == ("c1", "c2", "c3")
    assert scheme.sizes == (2, 1, 3)
    assert scheme.weights == (Fraction(1, 3), Fraction(1, 6), Fraction(1, 2))
    assert scheme.density == DiagOp(scheme.labels, scheme.weights)


def test_build_partition_reports_overlaps_and_gaps(space):
    with pytest.raises(PartitionError) as excinfo:
        build_partition([Predicate.from_sets(space, [0, 1]), Predicate.from_sets(space, [1, 2])])
    assert excinfo.value.overlaps == ("a2",)
    assert excinfo.value.gaps == ("a4", "a5", "a6")
    with pytest.raises(EvaluationError):
        build_partition([Predicate.from_sets(space, [0], [1])])
    with pytest.raises(PartitionError):
        build_partition([])


def test_interpret_counts_per_block(space):
    scheme = PartitionScheme(space, ("c1", "c2"), (frozenset({0, 1, 2}), frozenset({3, 4, 5})))
    p = Predicate.from_sets(space, [0, 3, 4])
    assert interpret(p, scheme) == ConceptVector(("c1", "c2"), (Fraction(1, 3), Fraction(2, 3)))
    assert state_probability(scheme, interpret(p, scheme)) == Fraction(1, 2)
    with pytest.raises(EvaluationError):
        interpret(Predicate.from_sets(space, [0], [1]), scheme)
    with pytest.raises(EvaluationError):
        state_probability(scheme, ConceptVector(("c1",), (1,)))


def test_interpret_binary_predicate_over_the_product_partition():
    space = EntitySpace(("a1", "a2"))
    scheme = PartitionScheme.singletons(space)
    relation = BinaryPredicate.from_pairs(space, [(0, 1)])
    v = interpret(relation, scheme)
    assert v.basis == ("a1⊗a1", "a1⊗a2", "a2⊗a1", "a2⊗a2")
    assert v.coords == (0, 1, 0, 0)


def test_empty_block_gets_zero_and_breaks_negation():
    space = EntitySpace(("a1", "a2", "a3"))
    scheme = PartitionScheme(space, ("c1", "c2", "c3"), (frozenset({0}), frozenset({1, 2}), frozenset()))
    p = Predicate.from_sets(space, [0])
    assert interpret(p, scheme).coords == (1, 0, 0)
    assert interpret(predicate_not(p), scheme).coords == (0, 1, 0)
    assert scheme.empty_blocks == ("c3",)
    with pytest.raises(PartitionError):
        lemma1_check(p, p, scheme)


def test_product_partition_is_row_major():
    space = EntitySpace(("a1", "a2", "a3"))
    scheme = PartitionScheme(space, ("c1", "c2"), (frozenset({0}), frozenset({1, 2})))
    product = scheme.product()
    assert product.labels == ("c1⊗c1", "c1⊗c2", "c2⊗c1", "c2⊗c2")
    assert product.blocks[1] == frozenset({1, 2})
    assert product.sizes == (1, 2, 2, 4)


def test_lemma1(space):
    scheme = PartitionScheme(space, ("c1", "c2"), (frozenset({0, 1, 2}), frozenset({3, 4, 5})))
    constant = Predicate.from_sets(space, [0, 1, 2])
    p = Predicate.from_sets(space, [0, 3])
    q = Predicate.from_sets(space, [1, 3])
    result = lemma1_check(constant, p, scheme)
    assert result
    assert all(result.preserved.values())
    broken = lemma1_check(p, q, scheme)
    assert not broken
    assert broken.failing_blocks == ("c1", "c2")
    # on c1: J(p ∧ q) = 0, while J(p) J(q) = 1/9
    assert not connective_preservation(p, q, scheme)["and"]


def test_theorem1_suite_on_blue_and_red(chips):
    blue, red = chips.world.attributes["blue"], chips.world.attributes["red"]
    report = theorem1_suite(blue, red, chips.scheme)
    assert report.all_passed
    names = [result.name for result in report]
    assert "negation preserved for p" in names
    assert "consequence reflected p ⊢ q" in names
    assert "connectives preserved" in names


def test_singleton_partition_is_exact(space):
    scheme = PartitionScheme.singletons(space)
    p = Predicate.from_sets(space, [0, 2])
    q = Predicate.from_sets(space, [2, 3])
    assert interpret(p, scheme).is_boolean
    assert all(connective_preservation(p, q, scheme).values())


def test_patterns():
    primitives = ("red", "yellow", "blue")
    assert parse_pattern("red -yellow blue", primitives) == (True, False, True)
    assert describe_pattern((False, True, False), primitives) == "-red yellow -blue"
    with pytest.raises(EvaluationError):
        parse_pattern("red blue", primitives)
    with pytest.raises(EvaluationError):
        parse_pattern("red red -yellow", primitives)
    with pytest.raises(EvaluationError):
        parse_pattern("red -yellow green", primitives)


def test_chips_concept_space(chips):
    primitives = [(name, chips.world.attributes[name]) for name in chips.world.primitives]
    generated = generate_concept_space(primitives, chips.world.concepts)
    assert generated.labels == ("c1", "c2", "c3", "c4", "c5", "c6", "c7", "c8")
    assert generated.retained == ("c1", "c2", "c3", "c4", "c5")
    assert generated.pattern_of("c2") == "red yellow -blue"
    assert chips.scheme.sizes == (5, 8, 6, 2, 9)
    assert len(generated.scheme(keep_empty=True).labels) == 8


def test_generated_labels_follow_the_listed_concepts(space):
    p = Predicate.from_sets(space, [0, 1, 2])
    generated = generate_concept_space([("p", p)], [("big", "-p")])
    assert generated.labels == ("big", "c2")
    assert generated.pattern_of("c2") == "p"
    with pytest.raises(EvaluationError):
        generate_concept_space([("p", p)], [("x", "p"), ("y", "p")])


def test_chips_vector_model_assignment(chips):
    assignment = chips.vector_model.assignment
    vectors = {word: str(vector) for (word, _), vector in assignment.items()}
    assert vectors["square"] == "(1, 5/8, 0, 0, 0)"
    assert vectors["triangle"] == "(0, 3/8, 1, 1/2, 0)"
    assert vectors["circle"] == "(0, 0, 0, 1/2, 1)"
    assert vectors["new"] == "(1/5, 1, 1/6, 1/2, 2/9)"
    assert vectors["are"] == "(1, 1, 1, 1, 1)"
    assert {word for (word, _) in chips.vector_model.operators} == {"no"}


def test_new_triangles_diverges_at_c4(chips):
    parse = chips.choose("new triangles", "n2")
    mc = evaluate_mc(chips.vector_model, parse).vector
    reference = interpret(entity_level(chips.model, parse, chips.world), chips.scheme)
    assert str(mc) == "(0, 3/8, 1/6, 1/4, 0)"
    assert str(reference) == "(0, 3/8, 1/6, 1/2, 0)"
    (divergence,) = diagnose_divergence(chips.model, parse, chips.world, chips.scheme, mc, reference)
    assert divergence.label == "c4"
    assert divergence.mc_value == Fraction(1, 4)
    assert divergence.reference_value == Fraction(1, 2)
    assert divergence.non_constant_words == ("new", "triangles")
    assert divergence.explained


def test_negated_sentence_applies_the_operator_last(chips):
    evaluation = evaluate_mc(chips.vector_model, chips.choose("no triangles are blue", "s"))
    assert str(evaluation.vector) == "(1, 1, 1, 1, 1)"
    assert evaluation.trace[-1] == "not → (1, 1, 1, 1, 1)"
