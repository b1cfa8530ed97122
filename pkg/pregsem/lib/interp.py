r"""
The bridge from the functional model to concept vectors.

A family of predicates that partitions the entities into blocks `C_1 ... C_k` determines the map J_C,
which sends a predicate p to the vector of conditional probabilities `|p ∩ C_j| / |C_j|`. This module
builds partitions (directly, or as the concept space generated by primitive properties), computes J_C and
the state probability `trace(D_μ ∘ D_J(p))`, checks when J_C preserves the logical connectives, and
induces the vector model `M_C = J_C ∘ F`.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from pregsem.lib.conceptlogic import DiagOp, alg_and, alg_imp, alg_neg, alg_or
from pregsem.lib.errors import EvaluationError, PartitionError
from pregsem.lib.funcmodel import (
    BinaryPredicate,
    EntitySpace,
    EntityVector,
    FunctionalModel,
    Predicate,
    ProjectorOnA,
    TruthValue,
    World,
    logical_consequence,
    predicate_and,
    predicate_ifthen,
    predicate_not,
    predicate_or,
    require_on_A,
)
from pregsem.lib.LawReport import LawReport
from pregsem.lib.pregroup import BindingKind, BoxLabel, Lexicon, LexiconEntry, Parse, Type
from pregsem.lib.vecmodel import ConceptVector, VectorModel, embed_object, embed_subject, pointwise


def _check_partition(space: EntitySpace, blocks: Sequence[frozenset]) -> None:
    r"""Raises `PartitionError` listing the entities that lie in several blocks or in none."""
    counts = [0] * space.dim
    for block in blocks:
        for i in block:
            if not 0 <= i < space.dim:
                raise PartitionError(f"Block refers to entity index {i}, outside a universe of {space.dim}")
            counts[i] += 1
    overlaps = tuple(space.basis[i] for i, count in enumerate(counts) if count > 1)
    gaps = tuple(space.basis[i] for i, count in enumerate(counts) if count == 0)
    if overlaps or gaps:
        problems = []
        if overlaps:
            problems.append(f"in several blocks: {', '.join(overlaps)}")
        if gaps:
            problems.append(f"in no block: {', '.join(gaps)}")
        raise PartitionError(f"Not a partition; entities {'; '.join(problems)}", overlaps=overlaps, gaps=gaps)


@dataclass(frozen=True)
class PartitionScheme:
    r"""
    Blocks `C_1 ... C_k` (sets of 0-based entity indices) partitioning the entity space, with a concept label
    per block. Empty blocks are allowed here; the operations that need nonempty blocks check for them.

    Note: `sizes` are the m_j; `weights` are μ_j = m_j / n, the probability that an entity drawn uniformly
          at random lies in C_j; `density` is the diagonal operator D_μ.
    """

    space: EntitySpace
    labels: Tuple[str, ...]
    blocks: Tuple[frozenset, ...]

    def __post_init__(self):
        if len(self.labels) != len(self.blocks):
            raise PartitionError(f"{len(self.labels)} labels for {len(self.blocks)} blocks")
        object.__setattr__(self, "blocks", tuple(frozenset(block) for block in self.blocks))
        _check_partition(self.space, self.blocks)

    @classmethod
    def singletons(cls, space: EntitySpace) -> "PartitionScheme":
        r"""The finest partition, `{a_1}, ..., {a_n}`, labelled by the entity names."""
        return cls(space, space.basis, tuple(frozenset([i]) for i in range(space.dim)))

    @property
    def sizes(self) -> Tuple[int, ...]:
        return tuple(len(block) for block in self.blocks)

    @property
    def weights(self) -> Tuple[Fraction, ...]:
        n = self.space.dim
        return tuple(Fraction(len(block), n) if n else Fraction(0) for block in self.blocks)

    @property
    def density(self) -> DiagOp:
        return DiagOp(self.labels, self.weights)

    @property
    def empty_blocks(self) -> Tuple[str, ...]:
        return tuple(label for label, block in zip(self.labels, self.blocks) if not block)

    def require_nonempty(self) -> None:
        if self.empty_blocks:
            raise PartitionError(f"Empty block(s): {', '.join(self.empty_blocks)}")

    def block_of(self, label: str) -> frozenset:
        return self.blocks[self.labels.index(label)]

    def product(self) -> "PartitionScheme":
        r"""The partition `{C_i × C_j}` of `A ⊗ A`, row-major, labelled "c_i⊗c_j"."""
        n = self.space.dim
        labels = tuple(f"{a}⊗{b}" for a in self.labels for b in self.labels)
        blocks = tuple(
            frozenset(a * n + b for a in left for b in right) for left in self.blocks for right in self.blocks
        )
        return PartitionScheme(self.space.product(), labels, blocks)


def build_partition(preds: Sequence[Predicate], labels: Optional[Sequence[str]] = None) -> PartitionScheme:
    r"""
    Builds the partition whose blocks are the ⊤-sets of the given predicates.

    The predicates must be on A and exactly one of them must be ⊤ at each entity; otherwise a
    `PartitionError` names the overlapping and uncovered entities.
    """
    if not preds:
        raise PartitionError("At least one partitioning predicate is required")
    space = preds[0].space
    for p in preds:
        if p.space != space:
            raise PartitionError("Partitioning predicates live on different entity spaces")
    require_on_A(*preds)
    labels = tuple(labels) if labels is not None else tuple(f"c{j}" for j in range(1, len(preds) + 1))
    return PartitionScheme(space, labels, tuple(p.top_set for p in preds))


Interpretable = Union[Predicate, EntityVector, ProjectorOnA, BinaryPredicate]


def _scheme_for(space: EntitySpace, scheme: PartitionScheme) -> PartitionScheme:
    if space == scheme.space:
        return scheme
    if space == scheme.space.product():
        return scheme.product()
    raise EvaluationError(f"Entity space of dimension {space.dim} does not match the partitioned universe")


def _support_of(p: Interpretable) -> Tuple[EntitySpace, frozenset]:
    if isinstance(p, BinaryPredicate):
        p = p.flatten()
    if isinstance(p, Predicate):
        require_on_A(p)
        return p.space, p.top_set
    if isinstance(p, EntityVector):
        if not p.is_boolean:
            raise EvaluationError(f"Only Boolean entity vectors can be interpreted, got {p.describe()}")
        return p.space, p.support
    if isinstance(p, ProjectorOnA):
        return p.space, frozenset(p.kept)
    raise EvaluationError(f"Cannot interpret a {type(p).__name__} as a concept vector")


def interpret(p: Interpretable, scheme: PartitionScheme) -> ConceptVector:
    r"""
    J_C: the concept vector whose j-th coordinate is the fraction of the block C_j on which p holds.

    Note: Predicates count the entities where they are ⊤ and must be on A; Boolean vectors and projectors
          count their support. Binary predicates are interpreted over the product partition.
          A coordinate of an empty block is 0.
    """
    space, support = _support_of(p)
    scheme = _scheme_for(space, scheme)
    coords = []
    for block in scheme.blocks:
        coords.append(Fraction(len(support & block), len(block)) if block else Fraction(0))
    return ConceptVector(scheme.labels, tuple(coords))


def state_probability(scheme: PartitionScheme, v: ConceptVector) -> Fraction:
    r"""
    `Σ_j α_j μ_j = trace(D_μ ∘ D_v)`. For `v = J_C(p)` this is the probability that an entity drawn uniformly
    at random has property p.
    """
    if len(v.coords) != len(scheme.blocks):
        raise EvaluationError(f"Length mismatch: vector has {len(v.coords)} coordinates, scheme {len(scheme.blocks)}")
    return scheme.density.compose(DiagOp(scheme.labels, v.coords)).trace()


def is_constant_on(p: Predicate, block: frozenset) -> bool:
    return len({p.values[i] for i in block}) <= 1


PREDICATE_CONNECTIVES = {"and": predicate_and, "or": predicate_or, "ifthen": predicate_ifthen}
VECTOR_CONNECTIVES = {"and": alg_and, "or": alg_or, "ifthen": alg_imp}


def connective_preservation(p: Predicate, q: Predicate, scheme: PartitionScheme) -> Dict[str, bool]:
    r"""For each binary connective, whether `J(p ▽ q) = J(p) ▽ J(q)`."""
    Jp, Jq = interpret(p, scheme), interpret(q, scheme)
    return {
        name: interpret(PREDICATE_CONNECTIVES[name](p, q), scheme) == VECTOR_CONNECTIVES[name](Jp, Jq)
        for name in PREDICATE_CONNECTIVES
    }


@dataclass(frozen=True)
class Lemma1Result:
    r"""
    Whether p or q is constant on every block (`hypothesis`), the blocks where neither is, and whether J
    preserves each binary connective on this pair.

    Note: Truthiness is the hypothesis.
    """

    hypothesis: bool
    failing_blocks: Tuple[str, ...]
    preserved: Mapping[str, bool] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.hypothesis


def lemma1_check(p: Predicate, q: Predicate, scheme: PartitionScheme) -> Lemma1Result:
    r"""
    Checks the sufficient condition for J to preserve and/or/ifthen on `<p, q>`: on each block, at least one
    of p and q is constant. When the condition holds, preservation is asserted.
    """
    scheme.require_nonempty()
    require_on_A(p, q)
    failing = tuple(
        label
        for label, block in zip(scheme.labels, scheme.blocks)
        if not (is_constant_on(p, block) or is_constant_on(q, block))
    )
    preserved = connective_preservation(p, q, scheme)
    if not failing:
        broken = [name for name, ok in preserved.items() if not ok]
        assert not broken, f"J fails to preserve {broken} although p or q is constant on every block"
    return Lemma1Result(hypothesis=not failing, failing_blocks=failing, preserved=preserved)


def theorem1_suite(
    p: Predicate, q: Predicate, scheme: PartitionScheme, report: Optional[LawReport] = None
) -> LawReport:
    r"""
    Checks, for one pair of predicates and a partition with nonempty blocks, that J:
      - preserves negation: `J(not ∘ p) = ¬J(p)` (and the same for q);
      - reflects consequence: if `J(p) → J(q) = 1` then q is a logical consequence of p (both directions);
      - preserves and/or/ifthen (in both orders) whenever one of J(p), J(q) is an algebraic consequence
        of the other.
    """
    report = LawReport() if report is None else report
    suite = "theorem1"
    scheme.require_nonempty()
    Jp, Jq = interpret(p, scheme), interpret(q, scheme)
    ones = ConceptVector.ones(scheme.labels)

    for name, predicate, vector in (("p", p, Jp), ("q", q, Jq)):
        negated = interpret(predicate_not(predicate), scheme)
        passed = negated == alg_neg(vector)
        report.record(suite, f"negation preserved for {name}", passed, f"J(not ∘ {name}) = {negated}")

    for (a, pa, Ja), (b, pb, Jb) in ((("p", p, Jp), ("q", q, Jq)), (("q", q, Jq), ("p", p, Jp))):
        if alg_imp(Ja, Jb) == ones:
            holds = logical_consequence(pa, pb)
            report.record(suite, f"consequence reflected {a} ⊢ {b}", holds, f"J({a}) → J({b}) = 1")
        else:
            report.record(suite, f"consequence reflected {a} ⊢ {b}", True, "hypothesis not met")

    if alg_imp(Jp, Jq) == ones or alg_imp(Jq, Jp) == ones:
        forward = connective_preservation(p, q, scheme)
        backward = connective_preservation(q, p, scheme)
        broken = [f"{name}(p,q)" for name, ok in forward.items() if not ok]
        broken += [f"{name}(q,p)" for name, ok in backward.items() if not ok]
        report.record(suite, "connectives preserved", not broken, ", ".join(broken) or "and, or, ifthen")
    else:
        report.record(suite, "connectives preserved", True, "hypothesis not met")
    return report


def parse_pattern(pattern: str, primitives: Sequence[str]) -> Tuple[bool, ...]:
    r"""Reads a sign pattern like "red -yellow blue" into one sign per primitive (True = has the property)."""
    signs: Dict[str, bool] = {}
    for token in pattern.split():
        name, sign = (token[1:], False) if token.startswith("-") else (token, True)
        if name not in primitives or name in signs:
            raise EvaluationError(f"Pattern {pattern!r} must name each of {', '.join(primitives)} exactly once")
        signs[name] = sign
    if len(signs) != len(primitives):
        raise EvaluationError(f"Pattern {pattern!r} must name each of {', '.join(primitives)} exactly once")
    return tuple(signs[name] for name in primitives)


def describe_pattern(signs: Sequence[bool], primitives: Sequence[str]) -> str:
    return " ".join(name if sign else f"-{name}" for name, sign in zip(primitives, signs))


@dataclass(frozen=True)
class ConceptSpaceGen:
    r"""
    The concept space generated by d primitive properties: one basis vector per sign pattern (2^d in all),
    and the block of entities matching each pattern.
    """

    space: EntitySpace
    primitives: Tuple[str, ...]
    labels: Tuple[str, ...]
    patterns: Tuple[Tuple[bool, ...], ...]
    blocks: Tuple[frozenset, ...]

    @property
    def retained(self) -> Tuple[str, ...]:
        r"""Labels of the nonempty blocks: the working basis."""
        return tuple(label for label, block in zip(self.labels, self.blocks) if block)

    def pattern_of(self, label: str) -> str:
        return describe_pattern(self.patterns[self.labels.index(label)], self.primitives)

    def scheme(self, keep_empty: bool = False) -> PartitionScheme:
        chosen = [
            (label, block) for label, block in zip(self.labels, self.blocks) if keep_empty or block
        ]
        return PartitionScheme(self.space, tuple(label for label, _ in chosen), tuple(block for _, block in chosen))


def generate_concept_space(
    primitives: Sequence[Tuple[str, Predicate]], order: Sequence[Tuple[str, str]] = ()
) -> ConceptSpaceGen:
    r"""
    Enumerates the sign patterns over the primitives and assigns every entity to the block of its pattern.

    Note: `order` lists (label, pattern) pairs that come first, in that order; the remaining patterns follow
          with generated labels, in the order ⊤ before ⊥ for each primitive.
    """
    if not primitives:
        raise EvaluationError("At least one primitive property is required")
    names = tuple(name for name, _ in primitives)
    predicates = [p for _, p in primitives]
    require_on_A(*predicates)
    space = predicates[0].space

    labels: List[str] = []
    patterns: List[Tuple[bool, ...]] = []
    for label, pattern in order:
        signs = parse_pattern(pattern, names)
        if signs in patterns or label in labels:
            raise EvaluationError(f"Concept {label!r} ({pattern}) is listed twice")
        labels.append(label)
        patterns.append(signs)
    counter = len(labels)
    for signs in product((True, False), repeat=len(names)):
        if signs in patterns:
            continue
        counter += 1
        while f"c{counter}" in labels:
            counter += 1
        labels.append(f"c{counter}")
        patterns.append(signs)

    members: Dict[Tuple[bool, ...], set] = {signs: set() for signs in patterns}
    for i in range(space.dim):
        members[tuple(p.values[i] == TruthValue.top for p in predicates)].add(i)
    return ConceptSpaceGen(
        space=space,
        primitives=names,
        labels=tuple(labels),
        patterns=tuple(patterns),
        blocks=tuple(frozenset(members[signs]) for signs in patterns),
    )


def scheme_for_world(world: World) -> PartitionScheme:
    r"""The working partition of a world: its concept space when it declares primitives, singletons otherwise."""
    if not world.primitives:
        return PartitionScheme.singletons(world.space)
    primitives = [(name, world.attributes[name]) for name in world.primitives]
    return generate_concept_space(primitives, world.concepts).scheme()


def _output_base(entry: LexiconEntry) -> str:
    return entry.type[entry.principal.output].base


def build_MC(f: FunctionalModel, scheme: PartitionScheme, lexicon: Lexicon, world: World) -> VectorModel:
    r"""
    The vector model `M_C(word : T) = J_C(F(word : T))`.

    Identity-bound words and the logical words listed as unit words of the world go to the all-ones vector.
    Negation is not a vector; it is recorded as an operator and applied by `evaluate_mc`. Nouns of a type
    declared as subject or object are embedded into the product space for transitive sentences.
    Entries the functional model leaves unbound get no vector.
    """
    ones = ConceptVector.ones(scheme.labels)
    assignment: Dict[Tuple[str, Type], ConceptVector] = {}
    operators: Dict[Tuple[str, Type], str] = {}
    for entry in lexicon:
        key = (entry.word, entry.type)
        kind, name = entry.binding.kind, entry.binding.name
        if kind == BindingKind.identity or entry.word in world.unit_words:
            assignment[key] = ones
            continue
        if kind == BindingKind.logical:
            if name != "not":
                raise EvaluationError(
                    f"Refusing to interpret logical word {entry.word!r} ({name}) as a concept vector;"
                    " list it among the world's unit words to map it to 1"
                )
            operators[key] = name
            continue
        interpretation = f.interpretations.get((kind, name))
        if interpretation is None:
            continue
        vector = interpret(interpretation, scheme)
        embedding = world.embeddings.get(_output_base(entry))
        if embedding == "subject":
            vector = embed_subject(vector)
        elif embedding == "object":
            vector = embed_object(vector)
        elif embedding is not None:
            raise EvaluationError(f"Unknown embedding {embedding!r} for type {_output_base(entry)}")
        assignment[key] = vector
    return VectorModel(basis=scheme.labels, assignment=assignment, operators=operators)


@dataclass(frozen=True)
class MCEvaluation:
    vector: ConceptVector
    trace: Tuple[str, ...]


def evaluate_mc(m: VectorModel, parse: Parse) -> MCEvaluation:
    r"""
    Evaluates a parsed string in the vector model: the pointwise product of the word vectors, followed by
    the recorded operators (outermost first in the sentence, so applied last).
    """
    trace: List[str] = []
    operators: List[str] = []
    result: Optional[ConceptVector] = None
    for entry in parse.entries:
        key = (entry.word, entry.type)
        if key in m.operators:
            operators.append(m.operators[key])
            trace.append(f"{entry.word}: operator {m.operators[key]}")
            continue
        vector = m.vector_for(entry.word, entry.type)
        trace.append(f"{entry.word}: {vector}")
        result = vector if result is None else pointwise(result, vector)
        trace.append(f"⊙ = {result}")
    if result is None:
        result = ConceptVector.ones(m.basis)
    for name in reversed(operators):
        result = alg_neg(result)
        trace.append(f"{name} → {result}")
    return MCEvaluation(vector=result, trace=tuple(trace))


def _word_extension(f: FunctionalModel, entry: LexiconEntry, world: World) -> Tuple[str, frozenset]:
    r"""The ⊤-set of a property word, and whether it lives on A ("single") or on A ⊗ A ("pair")."""
    label = BoxLabel(name=entry.binding.name, word=entry.word, kind=entry.binding.kind)
    interpretation = f.interpretation(label)
    _, support = _support_of(interpretation)
    embedding = world.embeddings.get(_output_base(entry))
    n = f.space.dim
    if isinstance(interpretation, BinaryPredicate):
        return "pair", support
    if embedding == "subject":
        return "pair", frozenset(a * n + b for a in support for b in range(n))
    if embedding == "object":
        return "pair", frozenset(a * n + b for a in range(n) for b in support)
    return "single", support


@dataclass(frozen=True)
class EntityReading:
    r"""The extensions of the property words of a string, all on the same space, and its count of negations."""

    space: EntitySpace
    extensions: Tuple[Tuple[str, frozenset], ...]
    negations: int


def read_entities(f: FunctionalModel, parse: Parse, world: World) -> EntityReading:
    extensions = []
    negations = 0
    for entry in parse.entries:
        kind = entry.binding.kind
        if kind == BindingKind.identity or entry.word in world.unit_words:
            continue
        if kind == BindingKind.logical:
            if entry.binding.name != "not":
                raise EvaluationError(f"No entity-level reading for logical word {entry.word!r}")
            negations += 1
            continue
        extensions.append((entry.word, *_word_extension(f, entry, world)))

    # Words read on A are lifted to A ⊗ A as soon as one word needs pairs.
    on_pairs = any(level == "pair" for _, level, _ in extensions)
    n = f.space.dim
    lifted = []
    for word, level, support in extensions:
        if on_pairs and level == "single":
            support = frozenset(a * n + b for a in support for b in range(n))
        lifted.append((word, support))
    space = f.space.product() if on_pairs else f.space
    return EntityReading(space=space, extensions=tuple(lifted), negations=negations)


def entity_level(f: FunctionalModel, parse: Parse, world: World) -> EntityVector:
    r"""
    The entity-level Boolean reading of a parsed string: the intersection of the extensions of its property
    words, complemented once per negation. Strings with a transitive verb or embedded nouns are read on
    `A ⊗ A`.
    """
    reading = read_entities(f, parse, world)
    everything = frozenset(range(reading.space.dim))
    selected = everything
    for _, support in reading.extensions:
        selected &= support
    if reading.negations % 2:
        selected = everything - selected
    return EntityVector.indicator(reading.space, selected)


@dataclass(frozen=True)
class Divergence:
    r"""A block where the vector model and J_C of the entity-level reading disagree."""

    label: str
    mc_value: Fraction
    reference_value: Fraction
    non_constant_words: Tuple[str, ...]

    @property
    def explained(self) -> bool:
        r"""Whether at least two property words are non-constant on the block, so the product rule can fail there."""
        return len(self.non_constant_words) >= 2


def diagnose_divergence(
    f: FunctionalModel,
    parse: Parse,
    world: World,
    scheme: PartitionScheme,
    mc: ConceptVector,
    reference: ConceptVector,
) -> Tuple[Divergence, ...]:
    r"""Lists the blocks where `mc` and `reference` differ, with the property words non-constant on each."""
    reading = read_entities(f, parse, world)
    working = _scheme_for(reading.space, scheme)
    divergences = []
    for j, (a, b) in enumerate(zip(mc.coords, reference.coords)):
        if a == b:
            continue
        block = working.blocks[j]
        words = tuple(word for word, support in reading.extensions if 0 < len(support & block) < len(block))
        divergences.append(Divergence(working.labels[j], a, b, words))
    return tuple(divergences)
