r"""
The logical functional model: entities, the two-dimensional truth space, predicates and connectives,
and the evaluation of meaning graphs to entity vectors or truth-space vectors.

Note: All scalars are `fractions.Fraction`; there is no floating point anywhere in this module.
"""

import json
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import product
from pathlib import Path
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from pregsem.lib.errors import EvaluationError
from pregsem.lib.helpers import format_fraction
from pregsem.lib.pregroup import (
    BindingKind,
    BoxLabel,
    Coercion,
    Edge,
    LexiconEntry,
    Lexicon,
    MeaningGraph,
    Reduction,
    flatten,
)


@dataclass(frozen=True)
class EntitySpace:
    r"""An ordered orthonormal basis of entities `a_1 ... a_n`."""

    basis: Tuple[str, ...]

    def __post_init__(self):
        if len(set(self.basis)) != len(self.basis):
            raise EvaluationError("Entity identifiers must be unique")

    @property
    def dim(self) -> int:
        return len(self.basis)

    def index(self, entity: Union[int, str]) -> int:
        r"""Resolves an entity given by name, or by 1-based position, to its 0-based index."""
        if isinstance(entity, int) and not isinstance(entity, bool):
            if not 1 <= entity <= self.dim:
                raise EvaluationError(f"No entity at position {entity} (there are {self.dim})")
            return entity - 1
        if entity not in self.basis:
            raise EvaluationError(f"Unknown entity: {entity!r}")
        return self.basis.index(entity)

    def product(self) -> "EntitySpace":
        r"""The basis of `A ⊗ A`, in row-major order (the left factor varies slowest)."""
        return EntitySpace(tuple(f"({a},{b})" for a in self.basis for b in self.basis))


@dataclass(frozen=True)
class EntityVector:
    r"""A vector with rational coefficients over an entity space."""

    space: EntitySpace
    coords: Tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coords) != self.space.dim:
            raise EvaluationError(f"Vector has {len(self.coords)} coordinates, space has dimension {self.space.dim}")
        object.__setattr__(self, "coords", tuple(Fraction(c) for c in self.coords))

    @classmethod
    def indicator(cls, space: EntitySpace, indices: Iterable[int]) -> "EntityVector":
        chosen = set(indices)
        return cls(space, tuple(Fraction(1 if i in chosen else 0) for i in range(space.dim)))

    @classmethod
    def zero(cls, space: EntitySpace) -> "EntityVector":
        return cls(space, (Fraction(0),) * space.dim)

    @property
    def support(self) -> frozenset:
        return frozenset(i for i, c in enumerate(self.coords) if c != 0)

    @property
    def is_boolean(self) -> bool:
        return all(c in (0, 1) for c in self.coords)

    def __add__(self, other: "EntityVector") -> "EntityVector":
        _check_same_space(self.space, other.space)
        return EntityVector(self.space, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def scale(self, factor: Fraction) -> "EntityVector":
        return EntityVector(self.space, tuple(factor * c for c in self.coords))

    def describe(self) -> str:
        r"""Renders the vector as a sum of basis entities, e.g. "a25+a30"."""
        terms = []
        for name, c in zip(self.space.basis, self.coords):
            if c == 1:
                terms.append(name)
            elif c != 0:
                terms.append(f"{format_fraction(c)}·{name}")
        return "+".join(terms) or "0"


def _check_same_space(a: EntitySpace, b: EntitySpace) -> None:
    if a.dim != b.dim:
        raise EvaluationError(f"Dimension mismatch: {a.dim} vs {b.dim}")


@dataclass(frozen=True)
class SVector:
    r"""A vector `top·⊤ + bot·⊥` of the truth space S."""

    top: Fraction = Fraction(0)
    bot: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "top", Fraction(self.top))
        object.__setattr__(self, "bot", Fraction(self.bot))

    def __add__(self, other: "SVector") -> "SVector":
        return SVector(self.top + other.top, self.bot + other.bot)

    def scale(self, factor: Fraction) -> "SVector":
        return SVector(factor * self.top, factor * self.bot)

    def __str__(self) -> str:
        return f"{format_fraction(self.top)}·⊤ + {format_fraction(self.bot)}·⊥"


TOP = SVector(1, 0)
BOT = SVector(0, 1)
ZERO = SVector(0, 0)


@dataclass(frozen=True)
class STensor:
    r"""A vector of `S ⊗ S`, by its coefficients on ⊤⊗⊤, ⊤⊗⊥, ⊥⊗⊤ and ⊥⊗⊥."""

    tt: Fraction = Fraction(0)
    tb: Fraction = Fraction(0)
    bt: Fraction = Fraction(0)
    bb: Fraction = Fraction(0)


def s_tensor(v: SVector, w: SVector) -> STensor:
    return STensor(v.top * w.top, v.top * w.bot, v.bot * w.top, v.bot * w.bot)


class TruthValue(str, Enum):
    r"""The value of a predicate at one entity."""

    zero = "0"
    top = "⊤"
    bot = "⊥"

    @property
    def vector(self) -> SVector:
        return {TruthValue.zero: ZERO, TruthValue.top: TOP, TruthValue.bot: BOT}[self]


class TruthClass(str, Enum):
    true = "true"
    false = "false"
    mixed = "mixed"
    mute = "mute"


@dataclass(frozen=True)
class TruthState:
    tag: TruthClass
    witness: SVector

    def __str__(self) -> str:
        return f"{self.tag.value} ({self.witness})"


def truth_class(v: SVector) -> TruthState:
    r"""
    Classifies an S-vector: true if co-linear to ⊤, false if co-linear to ⊥, mixed if both parts are nonzero,
    mute if it is zero.
    """
    if v.top != 0 and v.bot != 0:
        tag = TruthClass.mixed
    elif v.top != 0:
        tag = TruthClass.true
    elif v.bot != 0:
        tag = TruthClass.false
    else:
        tag = TruthClass.mute
    return TruthState(tag=tag, witness=v)


def connective_not(v: SVector) -> SVector:
    return SVector(v.bot, v.top)


# Truth tables on the basis of S ⊗ S, in the order ⊤⊗⊤, ⊤⊗⊥, ⊥⊗⊤, ⊥⊗⊥.
CONNECTIVE_TABLES = {
    "and": (TOP, BOT, BOT, BOT),
    "or": (TOP, TOP, TOP, BOT),
    "ifthen": (TOP, BOT, TOP, TOP),
}


def _bilinear(name: str, v: STensor) -> SVector:
    tt, tb, bt, bb = CONNECTIVE_TABLES[name]
    return tt.scale(v.tt) + tb.scale(v.tb) + bt.scale(v.bt) + bb.scale(v.bb)


def connective_and(v: STensor) -> SVector:
    return _bilinear("and", v)


def connective_or(v: STensor) -> SVector:
    return _bilinear("or", v)


def connective_ifthen(v: STensor) -> SVector:
    return _bilinear("ifthen", v)


BINARY_CONNECTIVES: Dict[str, Callable[[STensor], SVector]] = {
    "and": connective_and,
    "or": connective_or,
    "ifthen": connective_ifthen,
}


@dataclass(frozen=True)
class Predicate:
    r"""
    A linear map from the entity space to S, stored by its value (0, ⊤ or ⊥) at each entity.

    Note: A predicate is "on A" when it is never 0.
    """

    space: EntitySpace
    values: Tuple[TruthValue, ...]

    def __post_init__(self):
        if len(self.values) != self.space.dim:
            raise EvaluationError(f"Predicate has {len(self.values)} values, space has dimension {self.space.dim}")

    @classmethod
    def from_sets(
        cls, space: EntitySpace, top: Iterable[int], bottom: Optional[Iterable[int]] = None
    ) -> "Predicate":
        r"""⊤ on `top`; ⊥ on `bottom` (or on every other entity when `bottom` is omitted); 0 elsewhere."""
        top = set(top)
        bottom = set(range(space.dim)) - top if bottom is None else set(bottom)
        if top & bottom:
            raise EvaluationError(f"Entities cannot be both ⊤ and ⊥: {sorted(top & bottom)}")
        values = []
        for i in range(space.dim):
            values.append(TruthValue.top if i in top else TruthValue.bot if i in bottom else TruthValue.zero)
        return cls(space, tuple(values))

    @classmethod
    def constant(cls, space: EntitySpace, value: TruthValue) -> "Predicate":
        return cls(space, (value,) * space.dim)

    @property
    def on_A(self) -> bool:
        return TruthValue.zero not in self.values

    @property
    def top_set(self) -> frozenset:
        return frozenset(i for i, v in enumerate(self.values) if v == TruthValue.top)

    @property
    def bottom_set(self) -> frozenset:
        return frozenset(i for i, v in enumerate(self.values) if v == TruthValue.bot)

    def as_matrix(self) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
        r"""The 2×n matrix of the predicate: row ⊤, then row ⊥."""
        return (
            tuple(int(v == TruthValue.top) for v in self.values),
            tuple(int(v == TruthValue.bot) for v in self.values),
        )


def apply_predicate(p: Predicate, X: EntityVector) -> SVector:
    r"""
    The linear extension of `p`: the sum of `x_i · p(a_i)`.

    Note: For a Boolean vector B and a predicate on A this counts: n_pB·⊤ + (|B| - n_pB)·⊥.
    """
    _check_same_space(p.space, X.space)
    total = ZERO
    for value, x in zip(p.values, X.coords):
        if x != 0:
            total = total + value.vector.scale(x)
    return total


@dataclass(frozen=True)
class ProjectorOnA:
    r"""The diagonal projector that keeps the entities in `kept` and sends the others to 0."""

    space: EntitySpace
    kept: frozenset

    def __call__(self, X: EntityVector) -> EntityVector:
        _check_same_space(self.space, X.space)
        return EntityVector(self.space, tuple(c if i in self.kept else Fraction(0) for i, c in enumerate(X.coords)))


@dataclass(frozen=True)
class BinaryPredicate:
    r"""A predicate on `A ⊗ A` (e.g. a transitive verb), stored row-major: `values[a * n + b]` is R(a, b)."""

    space: EntitySpace
    values: Tuple[TruthValue, ...]

    @classmethod
    def from_pairs(cls, space: EntitySpace, pairs: Iterable[Tuple[int, int]]) -> "BinaryPredicate":
        chosen = {a * space.dim + b for a, b in pairs}
        size = space.dim * space.dim
        return cls(space, tuple(TruthValue.top if i in chosen else TruthValue.bot for i in range(size)))

    def __call__(self, X: EntityVector, Y: EntityVector) -> SVector:
        _check_same_space(self.space, X.space)
        _check_same_space(self.space, Y.space)
        n = self.space.dim
        total = ZERO
        for a in X.support:
            for b in Y.support:
                total = total + self.values[a * n + b].vector.scale(X.coords[a] * Y.coords[b])
        return total

    def flatten(self) -> Predicate:
        r"""The same predicate, viewed as a unary predicate on the product space."""
        return Predicate(self.space.product(), self.values)


@dataclass(frozen=True)
class LogicalConnective:
    r"""A connective bound to a logical word (e.g. "no" binds to not: S -> S)."""

    name: str

    def __call__(self, *args: SVector) -> SVector:
        if self.name == "not" and len(args) == 1:
            return connective_not(args[0])
        if self.name in BINARY_CONNECTIVES and len(args) == 2:
            return BINARY_CONNECTIVES[self.name](s_tensor(*args))
        raise EvaluationError(f"Connective {self.name!r} cannot take {len(args)} argument(s)")


@dataclass(frozen=True)
class IdentityMap:
    r"""The identity, for words like "are" that only carry grammatical structure."""

    name: str

    def __call__(self, value):
        return value


def pair(p: Predicate, q: Predicate) -> Tuple[STensor, ...]:
    r"""The map `a ↦ p(a) ⊗ q(a)` from the entity space to `S ⊗ S`, tabulated per entity."""
    _check_same_space(p.space, q.space)
    return tuple(s_tensor(pv.vector, qv.vector) for pv, qv in zip(p.values, q.values))


def _as_truth_value(v: SVector) -> TruthValue:
    if v == TOP:
        return TruthValue.top
    if v == BOT:
        return TruthValue.bot
    return TruthValue.zero


def predicate_not(p: Predicate) -> Predicate:
    return Predicate(p.space, tuple(_as_truth_value(connective_not(v.vector)) for v in p.values))


def _predicate_connective(name: str, p: Predicate, q: Predicate) -> Predicate:
    return Predicate(p.space, tuple(_as_truth_value(_bilinear(name, v)) for v in pair(p, q)))


def predicate_and(p: Predicate, q: Predicate) -> Predicate:
    return _predicate_connective("and", p, q)


def predicate_or(p: Predicate, q: Predicate) -> Predicate:
    return _predicate_connective("or", p, q)


def predicate_ifthen(p: Predicate, q: Predicate) -> Predicate:
    return _predicate_connective("ifthen", p, q)


def require_on_A(*predicates: Predicate) -> None:
    for p in predicates:
        if not p.on_A:
            mute = [p.space.basis[i] for i, v in enumerate(p.values) if v == TruthValue.zero]
            raise EvaluationError(f"Predicate is not total on A; it is 0 at: {', '.join(mute)}")


def logical_consequence(p: Predicate, q: Predicate) -> bool:
    r"""Whether `q` is a logical consequence of `p`, i.e. `ifthen ∘ <p, q>` is the true predicate."""
    require_on_A(p, q)
    return all(v == TruthValue.top for v in predicate_ifthen(p, q).values)


@dataclass(frozen=True)
class FundamentalCheck:
    r"""A classification of `p(X)`, with the support entities at which `p` is ⊤ and ⊥."""

    state: TruthState
    top_witnesses: Tuple[str, ...]
    bottom_witnesses: Tuple[str, ...]


def fundamental_check(p: Predicate, X: EntityVector) -> FundamentalCheck:
    r"""
    Classifies `p(X)` twice: linearly (via `apply_predicate` and `truth_class`), and by quantifying over
    the support of X (true iff p holds at every support entity, false iff at none, mixed otherwise).
    The two must agree for nonnegative X.
    """
    require_on_A(p)
    _check_same_space(p.space, X.space)
    if any(c < 0 for c in X.coords):
        raise EvaluationError("Vector has negative coefficients")
    if not X.support:
        raise EvaluationError("Vector is zero")

    state = truth_class(apply_predicate(p, X))
    tops = tuple(X.space.basis[i] for i in sorted(X.support) if p.values[i] == TruthValue.top)
    bottoms = tuple(X.space.basis[i] for i in sorted(X.support) if p.values[i] == TruthValue.bot)
    if tops and bottoms:
        quantified = TruthClass.mixed
    elif tops:
        quantified = TruthClass.true
    else:
        quantified = TruthClass.false
    assert state.tag == quantified, f"Linear classification {state.tag} disagrees with quantifiers ({quantified})"
    return FundamentalCheck(state=state, top_witnesses=tops, bottom_witnesses=bottoms)


Interpretation = Union[EntityVector, ProjectorOnA, Predicate, BinaryPredicate, LogicalConnective, IdentityMap]


@dataclass(frozen=True)
class World:
    r"""A finite universe of entities with named attributes and relations, plus how words bind to them."""

    space: EntitySpace
    attributes: Mapping[str, Predicate] = field(default_factory=dict)
    relations: Mapping[str, BinaryPredicate] = field(default_factory=dict)
    bindings: Mapping[str, str] = field(default_factory=dict)
    primitives: Tuple[str, ...] = ()
    concepts: Tuple[Tuple[str, str], ...] = ()
    sentence_types: Tuple[str, ...] = ("s",)
    embeddings: Mapping[str, str] = field(default_factory=dict)
    unit_words: Tuple[str, ...] = ()

    def resolve(self, binding_name: str) -> str:
        return self.bindings.get(binding_name, binding_name)


def load_world(text: str) -> World:
    r"""
    Parses a world JSON document.

    Note: Entities are given either as a list of names (`entities`) or as a count (`entity_count`, names a1...an).
          In attribute and relation listings, an entity is referred to by name or by 1-based position.
    """
    document = json.loads(text)
    if "entities" in document:
        space = EntitySpace(tuple(str(name) for name in document["entities"]))
    elif "entity_count" in document:
        space = EntitySpace(tuple(f"a{i}" for i in range(1, int(document["entity_count"]) + 1)))
    else:
        raise EvaluationError("World lacks `entities` or `entity_count`")
    if space.dim < 1:
        raise EvaluationError("World must have at least one entity")

    attributes = {}
    for name, listing in document.get("attributes", {}).items():
        if isinstance(listing, dict):
            top = [space.index(e) for e in listing.get("top", [])]
            bottom = [space.index(e) for e in listing.get("bottom", [])]
            attributes[name] = Predicate.from_sets(space, top, bottom)
        else:
            attributes[name] = Predicate.from_sets(space, [space.index(e) for e in listing])

    relations = {}
    for name, pairs in document.get("relations", {}).items():
        relations[name] = BinaryPredicate.from_pairs(space, [(space.index(a), space.index(b)) for a, b in pairs])

    for name in document.get("primitives", []):
        if name not in attributes:
            raise EvaluationError(f"Primitive {name!r} is not an attribute of the world")

    return World(
        space=space,
        attributes=attributes,
        relations=relations,
        bindings=dict(document.get("bindings", {})),
        primitives=tuple(document.get("primitives", [])),
        concepts=tuple(document.get("concepts", {}).items()),
        sentence_types=tuple(document.get("sentence_types", ["s"])),
        embeddings=dict(document.get("embeddings", {})),
        unit_words=tuple(document.get("unit_words", [])),
    )


def read_world_file(file_path: Union[str, Path]) -> World:
    return load_world(Path(file_path).read_text(encoding="utf-8"))


@dataclass(frozen=True)
class FunctionalModel:
    r"""
    Interpretations of lexical labels, keyed by `(binding kind, binding name)`.

    Note: Coercions in_{a,b} are interpreted as identities; so is every identity-bound word such as "are".
    """

    space: EntitySpace
    interpretations: Mapping[Tuple[BindingKind, str], Interpretation]
    sentence_types: Tuple[str, ...] = ("s",)

    @classmethod
    def from_world(cls, world: World, lexicon: Lexicon) -> "FunctionalModel":
        r"""
        Binds every lexicon entry it can resolve against the world. Entries that cannot be resolved stay
        unbound, and evaluating a meaning that uses them raises `EvaluationError`.
        """
        interpretations = {}
        for entry in lexicon:
            key = (entry.binding.kind, entry.binding.name)
            value = _resolve(world, entry)
            if value is not None:
                interpretations[key] = value
        return cls(space=world.space, interpretations=interpretations, sentence_types=world.sentence_types)

    def interpretation(self, label: BoxLabel) -> Interpretation:
        key = (label.kind, label.name)
        if key not in self.interpretations:
            raise EvaluationError(f"Unbound word {label.word!r} ({label.kind.value} {label.name!r})")
        return self.interpretations[key]


def _resolve(world: World, entry: LexiconEntry) -> Optional[Interpretation]:
    kind, name = entry.binding.kind, entry.binding.name
    if kind == BindingKind.logical:
        return LogicalConnective(name)
    if kind == BindingKind.identity:
        return IdentityMap(name)
    target = world.resolve(name)
    if kind == BindingKind.relation:
        return world.relations.get(target)
    attribute = world.attributes.get(target)
    if attribute is None:
        return None
    if kind == BindingKind.vector:
        return EntityVector.indicator(world.space, attribute.top_set)
    if kind == BindingKind.projector:
        return ProjectorOnA(world.space, attribute.top_set)
    return attribute


def _apply(interpretation: Interpretation, args: Sequence, label: BoxLabel):
    try:
        if isinstance(interpretation, EntityVector):
            if args:
                raise TypeError
            return interpretation
        if isinstance(interpretation, (ProjectorOnA, IdentityMap)):
            (argument,) = args
            return interpretation(argument)
        if isinstance(interpretation, Predicate):
            (argument,) = args
            if not isinstance(argument, EntityVector):
                raise TypeError
            return apply_predicate(interpretation, argument)
        if isinstance(interpretation, BinaryPredicate):
            subject, object_ = args
            return interpretation(subject, object_)
        return interpretation(*args)
    except (TypeError, ValueError, AttributeError) as error:
        if isinstance(error, EvaluationError):
            raise
        raise EvaluationError(f"Arity mismatch applying {label.word!r} to {len(args)} argument(s)")


def eval_functional(m: FunctionalModel, g: MeaningGraph, inputs: Optional[Sequence] = None):
    r"""
    Evaluates a normal meaning graph with one output wire in the model.

    Each wire is followed from its start (a constant, a domain point, or a vertex) and the interpretations
    of its labels are applied in order. A graph with a nonempty domain needs `inputs`, one value per domain
    point; without them, a function of those inputs is returned.
    """
    if g.loops:
        raise EvaluationError("Cannot evaluate a meaning graph with closed loops")
    if len(g.codomain) != 1:
        raise EvaluationError(f"Expected a single output wire, codomain is {g.codomain.describe()}")
    if len(g.domain) > 0 and inputs is None:
        return lambda *values: eval_functional(m, g, values)
    inputs = tuple(inputs or ())

    def value_of(edge: Edge):
        if edge.tail is None:
            value = None
        elif edge.tail[0] == "dom":
            value = inputs[edge.tail[1]]
        elif edge.tail[0] == "box":
            box_id = edge.tail[1]
            label = g.box_label(box_id)
            arity = sum(1 for other in g.edges if other.head[0] == "box" and other.head[1] == box_id)
            args = [value_of(g.edge_into(("box", box_id, port))) for port in range(arity)]
            value = _apply(m.interpretation(label), args, label)
        else:
            raise EvaluationError(f"Wire starts at an unsupported point: {edge.tail}")

        for label in edge.labels:
            if isinstance(label, Coercion):
                continue
            args = [] if value is None else [value]
            value = _apply(m.interpretation(label), args, label)
        if value is None:
            raise EvaluationError("Wire carries no value")
        return value

    return value_of(g.edge_into(("cod", 0)))


def _word_tensor(m: FunctionalModel, entry: LexiconEntry, dims: Sequence[int]) -> Dict[Tuple[int, ...], Fraction]:
    r"""
    The word's meaning `I -> T` as a sparse tensor with one index per factor of T.
    """
    label = BoxLabel(name=entry.binding.name, word=entry.word, kind=entry.binding.kind)
    principal = entry.principal
    interpretation = m.interpretation(label)
    box_terms: List[List[Tuple[Dict[int, int], Fraction]]] = []

    terms = []
    out, ins = principal.output, principal.inputs
    if isinstance(interpretation, EntityVector):
        terms = [({out: i}, c) for i, c in enumerate(interpretation.coords) if c != 0]
    elif isinstance(interpretation, ProjectorOnA):
        terms = [({out: i, ins[0]: i}, Fraction(1)) for i in sorted(interpretation.kept)]
    elif isinstance(interpretation, IdentityMap):
        terms = [({out: i, ins[0]: i}, Fraction(1)) for i in range(dims[out])]
    elif isinstance(interpretation, Predicate):
        for i, value in enumerate(interpretation.values):
            if value != TruthValue.zero:
                terms.append(({ins[0]: i, out: 0 if value == TruthValue.top else 1}, Fraction(1)))
    elif isinstance(interpretation, BinaryPredicate):
        n = interpretation.space.dim
        for index, value in enumerate(interpretation.values):
            if value != TruthValue.zero:
                positions = {ins[0]: index // n, ins[1]: index % n, out: 0 if value == TruthValue.top else 1}
                terms.append((positions, Fraction(1)))
    elif isinstance(interpretation, LogicalConnective):
        basis = (TOP, BOT)
        for args in product(range(2), repeat=len(ins)):
            result = interpretation(*(basis[a] for a in args))
            for out_index, coefficient in enumerate((result.top, result.bot)):
                if coefficient != 0:
                    terms.append(({**dict(zip(ins, args)), out: out_index}, coefficient))
    box_terms.append(terms)

    for box in entry.boxes[1:]:
        box_terms.append([({box.output: i, box.inputs[0]: i}, Fraction(1)) for i in range(dims[box.output])])

    tensor: Dict[Tuple[int, ...], Fraction] = {}
    for combination in product(*box_terms):
        assignment: Dict[int, int] = {}
        coefficient = Fraction(1)
        for positions, value in combination:
            assignment.update(positions)
            coefficient *= value
        key = tuple(assignment[position] for position in range(len(entry.type)))
        tensor[key] = tensor.get(key, Fraction(0)) + coefficient
    return tensor


def contract_meaning(m: FunctionalModel, entries: Sequence[LexiconEntry], r: Reduction):
    r"""
    Evaluates `r ∘ (word_1 ⊗ ... ⊗ word_n)` by tensor contraction, without building a meaning graph.

    Every word becomes a sparse tensor over its factors' spaces (S for sentence types, the entity space
    otherwise); tensors are multiplied left to right and each link is summed out as soon as both of its
    positions are present. What remains is indexed by the survivor.
    """
    flat = flatten([entry.type for entry in entries])
    dims = [2 if simple.base in m.sentence_types else m.space.dim for simple in flat]

    open_positions: List[int] = []
    partial: Dict[Tuple[int, ...], Fraction] = {(): Fraction(1)}
    offset = 0
    for entry in entries:
        word_dims = dims[offset : offset + len(entry.type)]
        word = _word_tensor(m, entry, word_dims)
        open_positions = open_positions + list(range(offset, offset + len(entry.type)))
        offset += len(entry.type)
        partial = {
            left + right: a * b for left, a in partial.items() for right, b in word.items() if a * b != 0
        }
        for i, j in r.links:
            if i in open_positions and j in open_positions:
                pi, pj = open_positions.index(i), open_positions.index(j)
                contracted: Dict[Tuple[int, ...], Fraction] = {}
                for key, value in partial.items():
                    if key[pi] == key[pj]:
                        rest = tuple(k for position, k in enumerate(key) if position not in (pi, pj))
                        contracted[rest] = contracted.get(rest, Fraction(0)) + value
                partial = contracted
                open_positions = [p for p in open_positions if p not in (i, j)]

    if open_positions != [r.survivor]:
        raise EvaluationError("Reduction does not leave exactly the survivor open")
    coords = [Fraction(0)] * dims[r.survivor]
    for (index,), value in partial.items():
        coords[index] += value
    if flat[r.survivor].base in m.sentence_types:
        return SVector(coords[0], coords[1])
    return EntityVector(m.space, tuple(coords))
