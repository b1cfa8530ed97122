r"""
Concept vectors and the one-object compact closed category whose composition and tensor are both the
pointwise product; the vector model functor built on it; and the negative result that the usual
vector-space structure admits no structure-preserving functor from the lexical category.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence, Tuple

from sympy import Matrix, zeros

from pregsem.lib.errors import EvaluationError, ParseError
from pregsem.lib.helpers import format_fraction, format_tuple
from pregsem.lib.LawReport import LawReport
from pregsem.lib.pregroup import Poset, Reduction, Type, flatten


@dataclass(frozen=True)
class ConceptVector:
    r"""A vector with rational coordinates over a named, ordered basis of a concept space."""

    basis: Tuple[str, ...]
    coords: Tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coords) != len(self.basis):
            raise EvaluationError(f"Vector has {len(self.coords)} coordinates for a basis of {len(self.basis)}")
        object.__setattr__(self, "coords", tuple(Fraction(c) for c in self.coords))

    @classmethod
    def ones(cls, basis: Sequence[str]) -> "ConceptVector":
        return cls(tuple(basis), (Fraction(1),) * len(basis))

    @classmethod
    def zeros(cls, basis: Sequence[str]) -> "ConceptVector":
        return cls(tuple(basis), (Fraction(0),) * len(basis))

    @property
    def is_concept(self) -> bool:
        r"""Whether every coordinate lies in [0, 1]."""
        return all(0 <= c <= 1 for c in self.coords)

    @property
    def is_boolean(self) -> bool:
        return all(c in (0, 1) for c in self.coords)

    def __str__(self) -> str:
        return format_tuple(self.coords)

    def describe(self) -> str:
        r"""Renders the vector as a combination of basis labels, e.g. "1/5·c1 + 5/8·c2"."""
        terms = [f"{format_fraction(c)}·{label}" for label, c in zip(self.basis, self.coords) if c != 0]
        return " + ".join(terms) or "0"


def _check_same_basis(u: ConceptVector, v: ConceptVector) -> None:
    if u.basis != v.basis:
        raise EvaluationError(f"Basis mismatch: {len(u.basis)}-dimensional {u.basis[:3]} vs {v.basis[:3]}")


def pointwise(u: ConceptVector, v: ConceptVector) -> ConceptVector:
    r"""The coordinatewise product `u ⊙ v`; its neutral element is the all-ones vector."""
    _check_same_basis(u, v)
    return ConceptVector(u.basis, tuple(a * b for a, b in zip(u.coords, v.coords)))


def tensor(u: ConceptVector, v: ConceptVector) -> ConceptVector:
    r"""The Kronecker product `u ⊗ v`, row-major (coordinate `i * len(v) + j` is `u_i v_j`)."""
    basis = tuple(f"{a}⊗{b}" for a in u.basis for b in v.basis)
    return ConceptVector(basis, tuple(a * b for a in u.coords for b in v.coords))


def embed_subject(v: ConceptVector) -> ConceptVector:
    r"""`v ⊗ 1`: a subject noun lifted to the space of transitive sentences."""
    return tensor(v, ConceptVector.ones(v.basis))


def embed_object(w: ConceptVector) -> ConceptVector:
    r"""`1 ⊗ w`: an object noun lifted to the space of transitive sentences."""
    return tensor(ConceptVector.ones(w.basis), w)


@dataclass(frozen=True)
class VectorModel:
    r"""
    A vector space model: lexicon entries `(word, type)` mapped to concept vectors.

    Note: The model is keyed by type as well as word, since it is the reduction that chooses a word's type.
          `operators` lists entries interpreted as operators on vectors (e.g. ¬) rather than as vectors.
    """

    basis: Tuple[str, ...]
    assignment: Mapping[Tuple[str, Type], ConceptVector]
    operators: Mapping[Tuple[str, Type], str] = field(default_factory=dict)

    def vector_for(self, word: str, t: Type) -> ConceptVector:
        if (word, t) not in self.assignment:
            raise EvaluationError(f"No vector for {word!r} at type {t.describe()}")
        return self.assignment[(word, t)]


def eval_vector_model(
    m: VectorModel,
    words: Sequence[Tuple[str, Type]],
    r: Optional[Reduction] = None,
    poset: Optional[Poset] = None,
) -> ConceptVector:
    r"""
    The meaning of a string in a vector model: the pointwise product of its words' vectors.

    Note: The reduction contributes nothing but the choice of types (its image is the all-ones vector);
          it is validated against the words' types under `poset` (the discrete order on their bases when
          omitted), so a crossing or mistyped link set is refused.
    """
    if r is not None:
        flat = flatten([t for _, t in words])
        if poset is None:
            poset = Poset.from_pairs([], elements={simple.base for simple in flat})
        try:
            r.validate(flat, poset)
        except ParseError as error:
            raise EvaluationError(f"Not a reduction of {Type(flat)}: {error}") from error
    result: Optional[ConceptVector] = None
    for word, t in words:
        vector = m.vector_for(word, t)
        result = vector if result is None else pointwise(result, vector)
    return ConceptVector.ones(m.basis) if result is None else result


def vmodel_category_laws(sample: Sequence[ConceptVector]) -> LawReport:
    r"""
    Checks the compact closed structure whose composition and tensor are both `⊙` on consecutive
    triples of the sample: associativity, commutativity, the unit law, the interchange law, the
    snake identity `(ε ⊗ 1) ∘ (1 ⊗ η) = 1`, and closure of [0, 1]-vectors.

    Note: In this category every morphism equals its own name and coname, and ε = η = 1.
    """
    report = LawReport()
    suite = "vmodel"
    failures = {name: "" for name in ("associative", "commutative", "unit", "interchange", "snake", "closure")}
    size = len(sample)
    for index in range(size):
        u, v, w = sample[index], sample[(index + 1) % size], sample[(index + 2) % size]
        x = sample[(index + 3) % size]
        one = ConceptVector.ones(u.basis)
        checks = {
            "associative": pointwise(pointwise(u, v), w) == pointwise(u, pointwise(v, w)),
            "commutative": pointwise(u, v) == pointwise(v, u),
            "unit": pointwise(u, one) == u and pointwise(one, u) == u,
            # (u ⊙ v) ∘ (w ⊙ x) = (u ∘ w) ⊙ (v ∘ x), where ∘ is also ⊙
            "interchange": (
                pointwise(pointwise(u, v), pointwise(w, x)) == pointwise(pointwise(u, w), pointwise(v, x))
            ),
            "snake": (
                pointwise(pointwise(one, one), pointwise(one, one)) == one
                and pointwise(pointwise(one, u), one) == u
            ),
            "closure": not (u.is_concept and v.is_concept) or pointwise(u, v).is_concept,
        }
        for name, passed in checks.items():
            if not passed and not failures[name]:
                failures[name] = f"fails at sample[{index}] = {u}"
    for name, witness in failures.items():
        report.record(suite, f"⊙ {name}", not witness, witness or f"{size} instances")
    return report


@dataclass(frozen=True)
class Fact1Witness:
    r"""
    The map `f = (1 ⊗ η) ∘ (ε ⊗ 1)` on `A ⊗ A ⊗ A`, together with a basis vector it sends to zero.
    """

    dim: int
    matrix: Matrix
    witness: Tuple[int, int, int]

    def image(self, i: int, j: int, k: int) -> Tuple[Fraction, ...]:
        r"""The coordinates of `f(a_i ⊗ a_j ⊗ a_k)` (0-based indices)."""
        column = i * self.dim**2 + j * self.dim + k
        return tuple(Fraction(int(x)) for x in self.matrix[:, column])

    @property
    def annihilates_witness(self) -> bool:
        return all(x == 0 for x in self.image(*self.witness))


def fact1_demo(dim: int) -> Fact1Witness:
    r"""
    Builds `f = (1_A ⊗ η_A) ∘ (ε_A ⊗ 1_A)` densely, with ε the inner product and η = Σ a_l ⊗ a_l.

    Since `f(a_i ⊗ a_j ⊗ a_k) = δ_ij Σ_l a_k ⊗ a_l ⊗ a_l`, the vector `a_1 ⊗ a_2 ⊗ a_1` is sent to 0,
    so `f` is not invertible; a structure-preserving functor would have to send it to an identity.
    """
    if dim < 2:
        raise EvaluationError(f"Dimension must be at least 2 (at dimension 1, f is the identity), got {dim}")
    size = dim**3
    matrix = zeros(size, size)
    for i in range(dim):
        for k in range(dim):
            column = i * dim**2 + i * dim + k
            for l in range(dim):
                matrix[k * dim**2 + l * dim + l, column] = 1
    return Fact1Witness(dim=dim, matrix=matrix, witness=(0, 1, 0))


def random_concept_vectors(rng, basis: Sequence[str], count: int, denominator: int = 12) -> Iterable[ConceptVector]:
    r"""Yields seeded random concept vectors with coordinates `k / denominator` in [0, 1]."""
    for _ in range(count):
        yield ConceptVector(tuple(basis), tuple(Fraction(rng.randint(0, denominator), denominator) for _ in basis))
