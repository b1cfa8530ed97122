from fractions import Fraction
from random import Random

import pytest

from pregsem.lib.errors import EvaluationError
from pregsem.lib.pregroup import Poset, Reduction, SimpleType, Type, find_reductions
from pregsem.lib.vecmodel import (
    ConceptVector,
    VectorModel,
    embed_object,
    embed_subject,
    eval_vector_model,
    fact1_demo,
    pointwise,
    random_concept_vectors,
    tensor,
    vmodel_category_laws,
)

BASIS = ("c1", "c2", "c3")


def test_pointwise_and_its_unit():
    u = ConceptVector(BASIS, (Fraction(1, 2), 1, 0))
    v = ConceptVector(BASIS, (Fraction(1, 3), Fraction(3, 4), 1))
    assert pointwise(u, v) == ConceptVector(BASIS, (Fraction(1, 6), Fraction(3, 4), 0))
    assert pointwise(u, ConceptVector.ones(BASIS)) == u
    assert str(pointwise(u, v)) == "(1/6, 3/4, 0)"
    assert pointwise(u, v).describe() == "1/6·c1 + 3/4·c2"


def test_pointwise_rejects_mismatched_bases():
    with pytest.raises(EvaluationError):
        pointwise(ConceptVector(("c1",), (1,)), ConceptVector(("c2",), (1,)))
    with pytest.raises(EvaluationError):
        ConceptVector(BASIS, (1, 0))


def test_tensor_and_embeddings():
    v = ConceptVector(("c1", "c2"), (1, Fraction(1, 2)))
    w = ConceptVector(("c1", "c2"), (0, 1))
    assert tensor(v, w).basis == ("c1⊗c1", "c1⊗c2", "c2⊗c1", "c2⊗c2")
    assert tensor(v, w).coords == (0, 1, 0, Fraction(1, 2))
    assert pointwise(embed_subject(v), embed_object(w)) == tensor(v, w)


def test_eval_vector_model_is_the_pointwise_product():
    n, s = SimpleType("n"), SimpleType("s")
    noun, verb = Type((n,)), Type((n.right, s))
    model = VectorModel(
        basis=BASIS,
        assignment={
            ("dogs", noun): ConceptVector(BASIS, (1, Fraction(1, 2), 0)),
            ("bark", verb): ConceptVector(BASIS, (Fraction(1, 2), 1, 1)),
        },
    )
    assert eval_vector_model(model, [("dogs", noun), ("bark", verb)]) == ConceptVector(
        BASIS, (Fraction(1, 2), Fraction(1, 2), 0)
    )
    assert eval_vector_model(model, []) == ConceptVector.ones(BASIS)
    with pytest.raises(EvaluationError):
        eval_vector_model(model, [("cats", noun)])


def test_category_laws_hold_on_random_vectors():
    sample = list(random_concept_vectors(Random(0), BASIS, 25))
    report = vmodel_category_laws(sample)
    assert report.all_passed
    assert len(report) == 6


def test_fact1_demo_annihilates_the_witness():
    for dim in range(2, 7):
        demo = fact1_demo(dim)
        assert demo.annihilates_witness
        # a1 ⊗ a1 ⊗ a2 is not annihilated: it goes to the sum of a2 ⊗ a_l ⊗ a_l
        assert any(x != 0 for x in demo.image(0, 0, 1))
    # a1 ⊗ a1 ⊗ a1 is not fixed: it goes to a1 ⊗ a1 ⊗ a1 + a1 ⊗ a2 ⊗ a2
    assert fact1_demo(2).image(0, 0, 0) == (1, 0, 0, 1, 0, 0, 0, 0)
    with pytest.raises(EvaluationError):
        fact1_demo(1)


def test_random_concept_vectors_are_seeded():
    first = list(random_concept_vectors(Random(7), BASIS, 5))
    second = list(random_concept_vectors(Random(7), BASIS, 5))
    assert first == second
    assert all(v.is_concept for v in first)


def test_eval_vector_model_validates_the_reduction():
    n, s = SimpleType("n"), SimpleType("s")
    noun, verb = Type((n,)), Type((n.right, s))
    model = VectorModel(
        basis=BASIS,
        assignment={
            ("dogs", noun): ConceptVector(BASIS, (1, Fraction(1, 2), 0)),
            ("bark", verb): ConceptVector(BASIS, (Fraction(1, 2), 1, 1)),
        },
    )
    words = [("dogs", noun), ("bark", verb)]
    parsed = Reduction(links=((0, 1),), survivor=2, target="s")
    assert eval_vector_model(model, words, parsed) == eval_vector_model(model, words)
    with pytest.raises(EvaluationError):
        eval_vector_model(model, words, Reduction(links=((1, 2),), survivor=0, target="n"))
    with pytest.raises(EvaluationError):
        eval_vector_model(model, words, Reduction(links=(), survivor=2, target="s"))
    with pytest.raises(EvaluationError):
        eval_vector_model(model, words, Reduction(links=((0, 1),), survivor=2, target="n"), Poset.from_pairs([]))


def test_eval_vector_model_does_not_depend_on_the_reduction_or_the_word_order():
    n = SimpleType("n")
    types = [Type((n,)), Type((n.left,)), Type((n,)), Type((n.right,)), Type((n,))]
    words = [(f"w{k}", t) for k, t in enumerate(types)]
    vectors = random_concept_vectors(Random(2), BASIS, len(words))
    model = VectorModel(basis=BASIS, assignment=dict(zip(words, vectors)))
    poset = Poset.from_pairs([], elements=("n",))
    reductions = find_reductions(types, "n", poset)
    assert len(reductions) == 2
    meanings = {eval_vector_model(model, words, r, poset) for r in reductions}
    assert meanings == {eval_vector_model(model, words)}
    assert eval_vector_model(model, list(reversed(words))) == eval_vector_model(model, words)
