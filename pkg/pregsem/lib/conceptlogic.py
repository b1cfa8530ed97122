r"""
Connectives and consequence relations on concept vectors, diagonal operators and projectors.

The algebraic connectives act on scalars in [0, 1] and are lifted coordinatewise:
    ¬α = 1 - α,   α ∧ β = αβ,   α ∨ β = α + β - αβ,   α → β = 1 - α + αβ

The geometric connectives act on orthogonal projectors through their ranges (orthocomplement,
intersection, sum, and the subspace {x : q(p(x)) = p(x)}). On commuting projectors both agree.

Note: Linear algebra is exact: `sympy.Matrix` over rationals, with reduced row echelon forms as the
      canonical representatives of subspaces.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import singledispatch
from typing import Dict, Iterable, List, Sequence, Tuple

from sympy import GramSchmidt, Matrix, Rational, eye, igcd, ilcm, zeros

from pregsem.lib.errors import EvaluationError, ProjectorError
from pregsem.lib.helpers import format_tuple
from pregsem.lib.vecmodel import ConceptVector


@dataclass(frozen=True)
class DiagOp:
    r"""A diagonal operator, stored by its diagonal over a named basis."""

    basis: Tuple[str, ...]
    entries: Tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.entries) != len(self.basis):
            raise EvaluationError(f"Operator has {len(self.entries)} entries for a basis of {len(self.basis)}")
        object.__setattr__(self, "entries", tuple(Fraction(e) for e in self.entries))

    @classmethod
    def identity(cls, basis: Sequence[str]) -> "DiagOp":
        return cls(tuple(basis), (Fraction(1),) * len(basis))

    def compose(self, other: "DiagOp") -> "DiagOp":
        r"""`self ∘ other`, which for diagonal operators is the entrywise product."""
        _check_shapes(self.basis, other.basis)
        return DiagOp(self.basis, tuple(a * b for a, b in zip(self.entries, other.entries)))

    def apply(self, vector: ConceptVector) -> ConceptVector:
        _check_shapes(self.basis, vector.basis)
        return ConceptVector(self.basis, tuple(a * x for a, x in zip(self.entries, vector.coords)))

    def trace(self) -> Fraction:
        return sum(self.entries, Fraction(0))

    @property
    def is_projector(self) -> bool:
        return all(e in (0, 1) for e in self.entries)

    def to_matrix(self) -> Matrix:
        return Matrix.diag(*[Rational(e.numerator, e.denominator) for e in self.entries])

    def __str__(self) -> str:
        return "diag" + format_tuple(self.entries)


def _check_shapes(a: Sequence[str], b: Sequence[str]) -> None:
    if tuple(a) != tuple(b):
        raise EvaluationError(f"Shape mismatch: {len(a)} vs {len(b)} coordinates")


def diag_of(X: ConceptVector) -> DiagOp:
    r"""The diagonal operator `D_X` whose diagonal is X."""
    return DiagOp(X.basis, X.coords)


def vector_of(D: DiagOp) -> ConceptVector:
    r"""The vector on the diagonal of D (inverse of `diag_of`)."""
    return ConceptVector(D.basis, D.entries)


@singledispatch
def alg_neg(x):
    raise EvaluationError(f"No algebraic negation for {type(x).__name__}")


@alg_neg.register(int)
@alg_neg.register(Fraction)
def _(x) -> Fraction:
    return 1 - Fraction(x)


@alg_neg.register
def _(x: ConceptVector) -> ConceptVector:
    return ConceptVector(x.basis, tuple(1 - c for c in x.coords))


@alg_neg.register
def _(x: DiagOp) -> DiagOp:
    return DiagOp(x.basis, tuple(1 - e for e in x.entries))


def _scalar_and(a: Fraction, b: Fraction) -> Fraction:
    return a * b


def _scalar_or(a: Fraction, b: Fraction) -> Fraction:
    return a + b - a * b


def _scalar_imp(a: Fraction, b: Fraction) -> Fraction:
    return 1 - a + a * b


def _lift(scalar_op):
    r"""Builds a binary connective that dispatches on its first operand: scalar, vector, or diagonal operator."""

    @singledispatch
    def connective(x, y):
        raise EvaluationError(f"No algebraic connective for {type(x).__name__}")

    @connective.register(int)
    @connective.register(Fraction)
    def _(x, y) -> Fraction:
        if isinstance(y, (ConceptVector, DiagOp)):
            raise EvaluationError("Shape mismatch: scalar and non-scalar operands")
        return scalar_op(Fraction(x), Fraction(y))

    @connective.register
    def _(x: ConceptVector, y) -> ConceptVector:
        if not isinstance(y, ConceptVector):
            raise EvaluationError("Shape mismatch: vector and non-vector operands")
        _check_shapes(x.basis, y.basis)
        return ConceptVector(x.basis, tuple(scalar_op(a, b) for a, b in zip(x.coords, y.coords)))

    @connective.register
    def _(x: DiagOp, y) -> DiagOp:
        if not isinstance(y, DiagOp):
            raise EvaluationError("Shape mismatch: operator and non-operator operands")
        _check_shapes(x.basis, y.basis)
        return DiagOp(x.basis, tuple(scalar_op(a, b) for a, b in zip(x.entries, y.entries)))

    return connective


alg_and = _lift(_scalar_and)
alg_or = _lift(_scalar_or)
alg_imp = _lift(_scalar_imp)

ALGEBRAIC_CONNECTIVES = {"and": alg_and, "or": alg_or, "imp": alg_imp}


def _check_unit_interval(*operators: DiagOp) -> None:
    for D in operators:
        if not all(0 <= e <= 1 for e in D.entries):
            raise EvaluationError(f"Entries must lie in [0, 1]: {D}")


def algebraic_consequence(D: DiagOp, E: DiagOp) -> bool:
    r"""Whether `D → E = 1`; entrywise this means each entry of D is 0 or the matching entry of E is 1."""
    _check_unit_interval(D, E)
    return alg_imp(D, E) == DiagOp.identity(D.basis)


def probabilistic_consequence(D: DiagOp, E: DiagOp) -> bool:
    r"""Whether `D ≤ E`, read entrywise on the diagonals."""
    _check_unit_interval(D, E)
    _check_shapes(D.basis, E.basis)
    return all(d <= e for d, e in zip(D.entries, E.entries))


@dataclass(frozen=True)
class Subspace:
    r"""
    A subspace of ℚ^n, represented by the nonzero rows of the reduced row echelon form of a spanning set.

    Note: The representative is canonical, so `==` is subspace equality.
          `~U` is the orthocomplement, `U & V` the intersection and `U | V` the sum.
    """

    dim: int
    rows: Tuple[Tuple[Rational, ...], ...]

    @classmethod
    def span(cls, n: int, vectors: Iterable[Sequence]) -> "Subspace":
        vectors = [list(v) for v in vectors]
        if not vectors:
            return cls(n, ())
        echelon, pivots = Matrix(vectors).rref()
        return cls(n, tuple(tuple(echelon.row(i)) for i in range(len(pivots))))

    @classmethod
    def kernel_of(cls, matrix: Matrix) -> "Subspace":
        return cls.span(matrix.cols, [list(v) for v in matrix.nullspace()])

    @classmethod
    def range_of(cls, matrix: Matrix) -> "Subspace":
        return cls.span(matrix.rows, [list(v) for v in matrix.columnspace()])

    @property
    def rank(self) -> int:
        return len(self.rows)

    def basis_matrix(self) -> Matrix:
        r"""The basis vectors as the columns of an n×k matrix."""
        if not self.rows:
            return zeros(self.dim, 0)
        return Matrix(self.rows).T

    def __invert__(self) -> "Subspace":
        if not self.rows:
            return Subspace.span(self.dim, [list(eye(self.dim).row(i)) for i in range(self.dim)])
        return Subspace.kernel_of(Matrix(self.rows))

    def __or__(self, other: "Subspace") -> "Subspace":
        return Subspace.span(self.dim, [list(r) for r in self.rows + other.rows])

    def __and__(self, other: "Subspace") -> "Subspace":
        return ~(~self | ~other)

    def contains(self, vector: Sequence) -> bool:
        return Subspace.span(self.dim, [list(r) for r in self.rows] + [list(vector)]).rank == self.rank

    def projector(self) -> "Projector":
        r"""The orthogonal projector `B (BᵀB)⁻¹ Bᵀ` onto this subspace, B having the basis vectors as columns."""
        if not self.rows:
            return Projector(zeros(self.dim, self.dim))
        B = self.basis_matrix()
        return Projector(B * (B.T * B).inv() * B.T)


@dataclass(frozen=True)
class Projector:
    r"""An orthogonal projector: a square rational matrix P with P∘P = P and Pᵀ = P."""

    matrix: Matrix

    def __post_init__(self):
        P = self.matrix
        if P.rows != P.cols:
            raise ProjectorError(f"Projector must be square, got {P.rows}×{P.cols}")
        if P * P != P:
            raise ProjectorError("Matrix is not idempotent")
        if P.T != P:
            raise ProjectorError("Matrix is idempotent but not symmetric (not an orthogonal projector)")

    @classmethod
    def from_kept(cls, n: int, kept: Iterable[int]) -> "Projector":
        r"""The diagonal projector keeping the listed (0-based) coordinates."""
        kept = set(kept)
        return cls(Matrix.diag(*[1 if i in kept else 0 for i in range(n)]))

    @classmethod
    def onto(cls, n: int, vectors: Iterable[Sequence]) -> "Projector":
        return Subspace.span(n, vectors).projector()

    @property
    def dim(self) -> int:
        return self.matrix.rows

    @property
    def range(self) -> Subspace:
        return Subspace.range_of(self.matrix)

    @property
    def kernel(self) -> Subspace:
        return Subspace.kernel_of(self.matrix)

    def compose(self, other: "Projector") -> Matrix:
        r"""`self ∘ other` as a plain matrix (it need not be a projector)."""
        return self.matrix * other.matrix

    def commutes_with(self, other: "Projector") -> bool:
        return self.matrix * other.matrix == other.matrix * self.matrix

    def is_diagonal(self) -> bool:
        return self.matrix.is_diagonal()

    def diagonal(self) -> Tuple[Fraction, ...]:
        return tuple(Fraction(int(x.p), int(x.q)) for x in self.matrix.diagonal())

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Projector) and self.matrix == other.matrix

    def __hash__(self) -> int:
        return hash(tuple(self.matrix))


def is_composite_projector(p: Projector, q: Projector) -> bool:
    r"""Whether `p ∘ q` is itself a projector (idempotent); for non-commuting p and q it generally is not."""
    composite = p.compose(q)
    return composite * composite == composite


def geo_neg(p: Projector) -> Projector:
    r"""The projector onto the orthocomplement of the range of p."""
    return (~p.range).projector()


def geo_and(p: Projector, q: Projector) -> Projector:
    r"""The projector onto the intersection of the ranges."""
    return (p.range & q.range).projector()


def geo_or(p: Projector, q: Projector) -> Projector:
    r"""The projector onto the sum of the ranges."""
    return (p.range | q.range).projector()


def geo_imp(p: Projector, q: Projector) -> Projector:
    r"""The projector onto `{x : q(p(x)) = p(x)}`, the kernel of `q∘p - p`."""
    return Subspace.kernel_of(q.matrix * p.matrix - p.matrix).projector()


GEOMETRIC_CONNECTIVES = {"and": geo_and, "or": geo_or, "imp": geo_imp}


def geometric_consequence(p: Projector, q: Projector) -> bool:
    r"""Whether q is a geometric consequence of p: `p ⇒ q` is the identity, i.e. `q∘p = p`."""
    return q.matrix * p.matrix == p.matrix


def primitive_integer_vector(vector: Sequence) -> Tuple[int, ...]:
    r"""Scales a nonzero rational vector to coprime integers whose first nonzero entry is positive."""
    values = [Rational(v) for v in vector]
    multiple = ilcm(1, *[v.q for v in values])
    integers = [int(v * multiple) for v in values]
    divisor = 0
    for value in integers:
        divisor = int(igcd(divisor, value))
    first = next(value for value in integers if value != 0)
    sign = 1 if first > 0 else -1
    return tuple(sign * value // divisor for value in integers)


@dataclass(frozen=True)
class EigenBasis:
    r"""
    An orthogonal basis of common eigenvectors of two projectors, with their eigenvalues on each vector.
    """

    vectors: Tuple[Tuple[int, ...], ...]
    p_eigenvalues: Tuple[int, ...]
    q_eigenvalues: Tuple[int, ...]

    def connective_coincidence(self, p: Projector, q: Projector) -> Dict[str, bool]:
        r"""
        For each binary connective, whether the geometric connective acts diagonally on this basis with the
        algebraic connective of the eigenvalues of p and q as its eigenvalues. Negation is checked for p.
        """
        coincidence = {}
        for name, geometric in GEOMETRIC_CONNECTIVES.items():
            expected = [ALGEBRAIC_CONNECTIVES[name](a, b) for a, b in zip(self.p_eigenvalues, self.q_eigenvalues)]
            coincidence[name] = _eigenvalues(geometric(p, q).matrix, self.vectors) == expected
        coincidence["neg"] = _eigenvalues(geo_neg(p).matrix, self.vectors) == [alg_neg(a) for a in self.p_eigenvalues]
        return coincidence


def _eigenvalues(matrix: Matrix, vectors: Sequence[Sequence[int]]):
    r"""The eigenvalue of `matrix` on each vector, or `None` if some vector is not an eigenvector."""
    values = []
    for vector in vectors:
        v = Matrix(vector)
        image = matrix * v
        index = next(i for i, x in enumerate(vector) if x != 0)
        value = image[index] / v[index]
        if image != value * v:
            return None
        values.append(Fraction(int(value.p), int(value.q)))
    return values


def simultaneous_eigenbasis(p: Projector, q: Projector) -> EigenBasis:
    r"""
    Returns an orthogonal basis of common eigenvectors of p and q, provided one is a geometric consequence
    of the other; refuses otherwise.

    The basis is built from the smaller range, then the part of the larger range orthogonal to it, then
    the kernel of the larger projector, each orthogonalized by Gram-Schmidt and scaled to primitive
    integer vectors.
    """
    if p.dim != q.dim:
        raise ProjectorError(f"Projectors act on different spaces: {p.dim} vs {q.dim}")
    if geometric_consequence(p, q):
        smaller, larger = p, q
    elif geometric_consequence(q, p):
        smaller, larger = q, p
    else:
        raise ProjectorError("Neither projector is a geometric consequence of the other; refusing")

    inner = smaller.range
    pieces = [inner, larger.range & ~inner, larger.kernel]
    vectors: List[Tuple[int, ...]] = []
    for piece in pieces:
        if piece.rank == 0:
            continue
        columns = [Matrix(row) for row in piece.rows]
        for orthogonal in GramSchmidt(columns):
            vectors.append(primitive_integer_vector(list(orthogonal)))

    p_values = _eigenvalues(p.matrix, vectors)
    q_values = _eigenvalues(q.matrix, vectors)
    if len(vectors) != p.dim or p_values is None or q_values is None:
        raise ProjectorError("Failed to diagonalize both projectors")
    return EigenBasis(
        vectors=tuple(vectors),
        p_eigenvalues=tuple(int(v) for v in p_values),
        q_eigenvalues=tuple(int(v) for v in q_values),
    )


def concept_product(X: ConceptVector, Y: ConceptVector) -> ConceptVector:
    r"""`D_X ∘ |Y⟩`, which equals `X ∧ Y` (and `X ⊙ Y`)."""
    return diag_of(X).apply(Y)


def projector_of_boolean(X: ConceptVector) -> Projector:
    r"""The diagonal projector `D_X` of a Boolean vector, as a matrix."""
    if not X.is_boolean:
        raise ProjectorError(f"Vector is not Boolean: {X}")
    return Projector.from_kept(len(X.coords), [i for i, c in enumerate(X.coords) if c == 1])
