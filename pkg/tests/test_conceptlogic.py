from fractions import Fraction

import pytest
from sympy import Matrix, Rational

from pregsem.lib.conceptlogic import (
    DiagOp,
    Projector,
    Subspace,
    alg_and,
    alg_imp,
    alg_neg,
    alg_or,
    algebraic_consequence,
    concept_product,
    diag_of,
    geo_and,
    geo_imp,
    geo_neg,
    geo_or,
    geometric_consequence,
    is_composite_projector,
    primitive_integer_vector,
    probabilistic_consequence,
    projector_of_boolean,
    simultaneous_eigenbasis,
    vector_of,
)
from pregsem.lib.errors import EvaluationError, ProjectorError
from pregsem.lib.vecmodel import ConceptVector, pointwise

BASIS = ("c1", "c2", "c3")
HALF = Fraction(1, 2)


def test_scalar_connectives():
    assert alg_neg(Fraction(1, 4)) == Fraction(3, 4)
    assert alg_and(HALF, HALF) == Fraction(1, 4)
    assert alg_or(HALF, HALF) == Fraction(3, 4)
    assert alg_imp(HALF, 0) == HALF
    assert alg_imp(0, Fraction(1, 3)) == 1
    assert alg_imp(HALF, 1) == 1


def test_connectives_lift_coordinatewise():
    X = ConceptVector(BASIS, (1, HALF, 0))
    Y = ConceptVector(BASIS, (HALF, HALF, 1))
    assert alg_and(X, Y) == ConceptVector(BASIS, (HALF, Fraction(1, 4), 0))
    assert alg_or(X, Y) == ConceptVector(BASIS, (1, Fraction(3, 4), 1))
    assert alg_imp(X, Y) == ConceptVector(BASIS, (HALF, Fraction(3, 4), 1))
    assert alg_neg(X) == ConceptVector(BASIS, (0, HALF, 1))
    assert diag_of(alg_or(X, Y)) == alg_or(diag_of(X), diag_of(Y))
    assert vector_of(diag_of(X)) == X


def test_connectives_reject_mixed_operands():
    X = ConceptVector(BASIS, (1, HALF, 0))
    with pytest.raises(EvaluationError):
        alg_and(X, diag_of(X))
    with pytest.raises(EvaluationError):
        alg_or(HALF, X)
    with pytest.raises(EvaluationError):
        alg_imp(X, ConceptVector(("c1",), (1,)))
    with pytest.raises(EvaluationError):
        alg_neg("one half")


def test_diagonal_operators():
    X = ConceptVector(BASIS, (1, HALF, 0))
    Y = ConceptVector(BASIS, (HALF, HALF, 1))
    assert diag_of(X).compose(diag_of(Y)) == diag_of(pointwise(X, Y))
    assert concept_product(X, Y) == alg_and(X, Y)
    assert diag_of(X).trace() == Fraction(3, 2)
    assert str(diag_of(X)) == "diag(1, 1/2, 0)"
    assert not diag_of(X).is_projector
    assert diag_of(X).to_matrix() == Matrix.diag(1, Rational(1, 2), 0)


def test_consequence_relations():
    D = DiagOp(BASIS, (0, 1, HALF))
    E = DiagOp(BASIS, (HALF, 1, 1))
    assert algebraic_consequence(D, E)
    assert probabilistic_consequence(D, E)
    assert E.compose(D) == D
    # probabilistic but not algebraic: 1/2 ≤ 1/2 while 1/2 → 1/2 = 3/4
    F = DiagOp(BASIS, (HALF, 1, 1))
    G = DiagOp(BASIS, (HALF, 1, 1))
    assert probabilistic_consequence(F, G)
    assert not algebraic_consequence(F, G)
    with pytest.raises(EvaluationError):
        algebraic_consequence(DiagOp(BASIS, (2, 0, 0)), E)


def test_subspace_operations():
    n = 3
    x = Subspace.span(n, [(1, 0, 0)])
    xy = Subspace.span(n, [(1, 1, 0), (1, -1, 0)])
    assert xy == Subspace.span(n, [(1, 0, 0), (0, 1, 0)])
    assert (~x) == Subspace.span(n, [(0, 1, 0), (0, 0, 1)])
    assert (x | Subspace.span(n, [(0, 1, 0)])) == xy
    assert (xy & Subspace.span(n, [(1, 0, 1), (0, 1, 0)])) == Subspace.span(n, [(0, 1, 0)])
    assert xy.contains((2, 3, 0))
    assert not xy.contains((0, 0, 1))
    assert (~Subspace.span(n, [])).rank == 3


def test_projector_validation():
    with pytest.raises(ProjectorError):
        Projector(Matrix([[1, 0, 0], [0, 1, 0]]))
    with pytest.raises(ProjectorError):
        Projector(Matrix([[1, 1], [0, 1]]))
    # idempotent but oblique
    with pytest.raises(ProjectorError):
        Projector(Matrix([[1, 1], [0, 0]]))
    p = Projector.onto(2, [(1, 1)])
    assert p.matrix == Matrix([[Rational(1, 2), Rational(1, 2)], [Rational(1, 2), Rational(1, 2)]])


def test_geometric_connectives_on_diagonal_projectors():
    p = Projector.from_kept(3, [0])
    q = Projector.from_kept(3, [0, 1])
    assert geo_neg(p) == Projector.from_kept(3, [1, 2])
    assert geo_and(p, q) == p
    assert geo_or(p, q) == q
    assert geo_imp(p, q) == Projector.from_kept(3, [0, 1, 2])
    assert geo_imp(q, p) == Projector.from_kept(3, [0, 2])
    assert geometric_consequence(p, q)
    assert not geometric_consequence(q, p)


def test_projector_of_boolean():
    assert projector_of_boolean(ConceptVector(BASIS, (1, 0, 1))) == Projector.from_kept(3, [0, 2])
    with pytest.raises(ProjectorError):
        projector_of_boolean(ConceptVector(BASIS, (1, HALF, 1)))


def test_non_commuting_projectors():
    p = Projector.onto(2, [(1, 0)])
    q = Projector.onto(2, [(1, 1)])
    assert not p.commutes_with(q)
    assert not is_composite_projector(p, q)
    with pytest.raises(ProjectorError):
        simultaneous_eigenbasis(p, q)


def test_simultaneous_eigenbasis():
    p = Projector.onto(3, [(1, 1, 0)])
    q = Projector.from_kept(3, [0, 1, 2])
    basis = simultaneous_eigenbasis(p, q)
    assert basis.vectors == ((1, 1, 0), (1, -1, 0), (0, 0, 1))
    assert basis.p_eigenvalues == (1, 0, 0)
    assert basis.q_eigenvalues == (1, 1, 1)
    assert all(basis.connective_coincidence(p, q).values())
    # the order of the arguments does not matter
    assert simultaneous_eigenbasis(q, p).vectors == basis.vectors


def test_primitive_integer_vector():
    assert primitive_integer_vector([Rational(1, 2), Rational(-1, 3), 0]) == (3, -2, 0)
    assert primitive_integer_vector([0, -2, 4]) == (0, 1, -2)
