r"""
Law suites: seeded, deterministic checks of the algebraic properties that the models must satisfy.

Each suite is a tuple of checks; a check takes a seeded `random.Random` and an iteration count and
returns a `LawReport`. Randomized checks report the first failing instance as their witness.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from random import Random
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from pregsem.lib.chips import FIXTURE_SENTENCES, load_chips_session
from pregsem.lib.conceptlogic import (
    ALGEBRAIC_CONNECTIVES,
    GEOMETRIC_CONNECTIVES,
    DiagOp,
    Projector,
    algebraic_consequence,
    alg_and,
    alg_imp,
    alg_neg,
    alg_or,
    diag_of,
    geo_neg,
    geometric_consequence,
    is_composite_projector,
    probabilistic_consequence,
    simultaneous_eigenbasis,
    vector_of,
)
from pregsem.lib.errors import ParseError, ProjectorError
from pregsem.lib.funcmodel import (
    BOT,
    TOP,
    EntitySpace,
    EntityVector,
    LogicalConnective,
    Predicate,
    SVector,
    TruthClass,
    TruthValue,
    apply_predicate,
    connective_not,
    contract_meaning,
    eval_functional,
    fundamental_check,
    predicate_and,
    predicate_not,
    predicate_or,
    truth_class,
)
from pregsem.lib.interp import (
    PREDICATE_CONNECTIVES,
    VECTOR_CONNECTIVES,
    PartitionScheme,
    connective_preservation,
    interpret,
    is_constant_on,
    lemma1_check,
    theorem1_suite,
)
from pregsem.lib.LawReport import LawReport
from pregsem.lib.pregroup import (
    Poset,
    Reduction,
    SimpleType,
    Type,
    cap,
    compose,
    cup,
    find_reductions,
    flatten,
    identity,
    meaning_expression,
    parse_type,
    tensor as graph_tensor,
)
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

Check = Callable[[Random, int], LawReport]


@dataclass
class Tally:
    r"""Counts the instances of a law and keeps the first failing one."""

    count: int = 0
    witness: str = ""

    def check(self, passed: bool, witness: Callable[[], str]) -> None:
        self.count += 1
        if not passed and not self.witness:
            self.witness = witness()

    def record(self, report: LawReport, suite: str, name: str) -> None:
        report.record(suite, name, not self.witness, self.witness or f"{self.count} instances")


ORACLE_POSET = Poset.from_pairs([("c", "n")], elements=("n", "s", "c"))


def random_simple_types(rng: Random, length: int) -> Tuple[SimpleType, ...]:
    return tuple(SimpleType(rng.choice(("n", "s", "c")), rng.randint(-2, 2)) for _ in range(length))


def _all_matchings(positions: Sequence[int]) -> Iterator[Tuple[Tuple[int, int], ...]]:
    if not positions:
        yield ()
        return
    first, rest = positions[0], positions[1:]
    for k, other in enumerate(rest):
        for tail in _all_matchings(rest[:k] + rest[k + 1 :]):
            yield ((first, other),) + tail


def brute_force_reductions(flat: Sequence[SimpleType], target: Optional[str], poset: Poset) -> List[Reduction]:
    r"""
    Enumerates every pairing of the positions other than a survivor, crossing or not, and keeps the ones that
    validate as reductions. Exponential; only meant as an oracle for short strings.
    """
    found = []
    for survivor, simple in enumerate(flat):
        if simple.z != 0 or (target is not None and not poset.leq(simple.base, target)):
            continue
        others = [i for i in range(len(flat)) if i != survivor]
        if len(others) % 2:
            continue
        for matching in _all_matchings(others):
            candidate = Reduction(
                links=tuple(sorted(matching)), survivor=survivor, target=simple.base if target is None else target
            )
            try:
                candidate.validate(flat, poset)
            except ParseError:
                continue
            found.append(candidate)
    return sorted(found, key=lambda r: (r.links, r.survivor))


def check_reduction_oracle(rng: Random, iters: int) -> LawReport:
    report = LawReport()
    tally = Tally()
    for _ in range(iters):
        flat = random_simple_types(rng, rng.randint(1, 8))
        target = rng.choice((None, "n", "s"))
        fast = find_reductions([Type(flat)], target, ORACLE_POSET)
        slow = brute_force_reductions(flat, target, ORACLE_POSET)
        tally.check(fast == slow, lambda: f"{Type(flat)} to {target}: {len(fast)} vs {len(slow)} reductions")
    tally.record(report, "pregroup", "reduction search = brute-force enumeration")
    return report


def check_yanking(rng: Random, iters: int) -> LawReport:
    r"""
    `(ε_t ⊗ 1) ∘ (1 ⊗ η_t) = 1_t` for every basic type of the chips grammar and its adjoints, and the mirrored
    equation through the left adjoint; the composite in the other order is a different graph.
    """
    report = LawReport()
    straight, mirrored, distinct = Tally(), Tally(), Tally()
    for base in sorted(load_chips_session().poset.elements):
        for z in (-2, -1, 0, 1, 2):
            t = SimpleType(base, z)
            one = identity(Type((t,)))
            right_zigzag = compose(graph_tensor(cup(t), one), graph_tensor(one, cap(t)))
            straight.check(right_zigzag == one, lambda: f"right zigzag on {t}")
            left_zigzag = compose(graph_tensor(one, cup(t.left)), graph_tensor(cap(t.left), one))
            mirrored.check(left_zigzag == one, lambda: f"left zigzag on {t}")
            other_order = compose(graph_tensor(one, cap(t)), graph_tensor(cup(t), one))
            distinct.check(
                other_order != identity(Type((t, t.right, t))), lambda: f"cap over cup on {t} is the identity"
            )
    straight.record(report, "pregroup", "yanking (ε ⊗ 1) ∘ (1 ⊗ η) = 1")
    mirrored.record(report, "pregroup", "yanking (1 ⊗ ε) ∘ (η ⊗ 1) = 1")
    distinct.record(report, "pregroup", "cap over cup is not the identity")
    return report


def check_type_round_trip(rng: Random, iters: int) -> LawReport:
    r"""`parse_type(str(t)) = t` on random types over the chips grammar, the empty type included."""
    report = LawReport()
    tally = Tally()
    poset = load_chips_session().poset
    bases = sorted(poset.elements)
    for _ in range(iters):
        t = Type(tuple(SimpleType(rng.choice(bases), rng.randint(-3, 3)) for _ in range(rng.randint(0, 6))))
        text = str(t)
        tally.check(parse_type(text, poset) == t, lambda: f"{text!r}")
    tally.record(report, "pregroup", "parse_type ∘ str = 1")
    return report


def random_predicate(rng: Random, space: EntitySpace) -> Predicate:
    return Predicate.from_sets(space, [i for i in range(space.dim) if rng.random() < 0.5])


def _space(n: int) -> EntitySpace:
    return EntitySpace(tuple(f"a{i}" for i in range(1, n + 1)))


def check_fundamental_property(rng: Random, iters: int) -> LawReport:
    report = LawReport()
    classification, linearity = Tally(), Tally()
    for _ in range(iters):
        space = _space(rng.randint(1, 8))
        p = random_predicate(rng, space)
        coords = [Fraction(rng.randint(0, 3)) for _ in range(space.dim)]
        coords[rng.randrange(space.dim)] += 1
        X = EntityVector(space, tuple(coords))
        Y = EntityVector(space, tuple(Fraction(rng.randint(0, 3)) for _ in range(space.dim)))
        try:
            fundamental_check(p, X)
            passed = True
        except AssertionError:
            passed = False
        classification.check(passed, lambda: f"{p.values} at {X.describe()}")
        linear = apply_predicate(p, X + Y) == apply_predicate(p, X) + apply_predicate(p, Y)
        linearity.check(linear, lambda: f"{p.values} at {X.describe()} + {Y.describe()}")
    classification.record(report, "funcmodel", "linear classification = quantifier reading")
    linearity.record(report, "funcmodel", "predicates are linear")
    return report


CLASSICAL_TABLES = {
    "and": lambda a, b: a and b,
    "or": lambda a, b: a or b,
    "ifthen": lambda a, b: (not a) or b,
}


def check_connective_tables(rng: Random, iters: int) -> LawReport:
    report = LawReport()
    tally = Tally()
    basis = {True: TOP, False: BOT}
    for name, table in CLASSICAL_TABLES.items():
        for a, b in product((True, False), repeat=2):
            result = LogicalConnective(name)(basis[a], basis[b])
            tally.check(result == basis[table(a, b)], lambda: f"{name}({a}, {b}) = {result}")
    for a in (True, False):
        tally.check(LogicalConnective("not")(basis[a]) == basis[not a], lambda: f"not({a})")
    tally.record(report, "funcmodel", "connectives follow the classical truth tables")
    return report


def check_contraction_oracle(rng: Random, iters: int) -> LawReport:
    r"""Graph evaluation of every fixture sentence equals the dense tensor-contraction evaluation."""
    report = LawReport()
    tally = Tally()
    session = load_chips_session()
    for sentence, target in FIXTURE_SENTENCES:
        for parse in session.parse(sentence, target):
            graph = meaning_expression(parse.entries, parse.reduction, session.poset)
            by_graph = eval_functional(session.model, graph)
            by_contraction = contract_meaning(session.model, parse.entries, parse.reduction)
            tally.check(by_graph == by_contraction, lambda: f"{sentence!r}: {by_graph} vs {by_contraction}")
    tally.record(report, "funcmodel", "graph evaluation = tensor contraction")
    return report


def _connective_tables(predicates: Sequence[Predicate]) -> Tuple[List[int], List[List[int]], List[List[int]]]:
    r"""Negation, conjunction and disjunction on every predicate on A of a small universe, by index."""
    index = {p: k for k, p in enumerate(predicates)}
    negation = [index[predicate_not(p)] for p in predicates]
    conjunction = [[index[predicate_and(p, q)] for q in predicates] for p in predicates]
    disjunction = [[index[predicate_or(p, q)] for q in predicates] for p in predicates]
    return negation, conjunction, disjunction


def check_boolean_laws(rng: Random, iters: int) -> LawReport:
    r"""
    The predicates on A under not/and/or form a Boolean algebra with top the true predicate: every pair and
    triple for |A| ≤ 6, random triples at |A| = 30.
    """
    report = LawReport()
    names = ("commutativity", "associativity", "distributivity", "complementation", "De Morgan")
    tallies = {name: Tally() for name in names}

    for n in range(1, 7):
        predicates = _predicates(_space(n))
        NOT, AND, OR = _connective_tables(predicates)
        index = {p: k for k, p in enumerate(predicates)}
        true = index[Predicate.constant(predicates[0].space, TruthValue.top)]
        false = index[Predicate.constant(predicates[0].space, TruthValue.bot)]
        size = len(predicates)

        def sets(*indices: int) -> str:
            return ", ".join(str(sorted(predicates[k].top_set)) for k in indices)

        for i, j in product(range(size), repeat=2):
            tallies["commutativity"].check(AND[i][j] == AND[j][i] and OR[i][j] == OR[j][i], lambda: sets(i, j))
            tallies["De Morgan"].check(
                NOT[AND[i][j]] == OR[NOT[i]][NOT[j]] and NOT[OR[i][j]] == AND[NOT[i]][NOT[j]], lambda: sets(i, j)
            )
        for i in range(size):
            tallies["complementation"].check(
                AND[i][NOT[i]] == false and OR[i][NOT[i]] == true and NOT[NOT[i]] == i, lambda: sets(i)
            )
        for i, j, k in product(range(size), repeat=3):
            tallies["associativity"].check(
                AND[AND[i][j]][k] == AND[i][AND[j][k]] and OR[OR[i][j]][k] == OR[i][OR[j][k]],
                lambda: sets(i, j, k),
            )
            tallies["distributivity"].check(
                AND[i][OR[j][k]] == OR[AND[i][j]][AND[i][k]] and OR[i][AND[j][k]] == AND[OR[i][j]][OR[i][k]],
                lambda: sets(i, j, k),
            )

    space = _space(30)
    true, false = Predicate.constant(space, TruthValue.top), Predicate.constant(space, TruthValue.bot)
    for _ in range(iters):
        p, q, r = (random_predicate(rng, space) for _ in range(3))

        def sets() -> str:
            return f"|A| = 30: {sorted(p.top_set)}, {sorted(q.top_set)}, {sorted(r.top_set)}"

        tallies["commutativity"].check(
            predicate_and(p, q) == predicate_and(q, p) and predicate_or(p, q) == predicate_or(q, p), sets
        )
        tallies["associativity"].check(
            predicate_and(predicate_and(p, q), r) == predicate_and(p, predicate_and(q, r))
            and predicate_or(predicate_or(p, q), r) == predicate_or(p, predicate_or(q, r)),
            sets,
        )
        tallies["distributivity"].check(
            predicate_and(p, predicate_or(q, r)) == predicate_or(predicate_and(p, q), predicate_and(p, r))
            and predicate_or(p, predicate_and(q, r)) == predicate_and(predicate_or(p, q), predicate_or(p, r)),
            sets,
        )
        tallies["complementation"].check(
            predicate_and(p, predicate_not(p)) == false and predicate_or(p, predicate_not(p)) == true, sets
        )
        tallies["De Morgan"].check(
            predicate_not(predicate_and(p, q)) == predicate_or(predicate_not(p), predicate_not(q))
            and predicate_not(predicate_or(p, q)) == predicate_and(predicate_not(p), predicate_not(q)),
            sets,
        )
    for name, tally in tallies.items():
        tally.record(report, "funcmodel", f"predicates form a Boolean algebra: {name}")
    return report


def check_scaling(rng: Random, iters: int) -> LawReport:
    r"""truth_class(v) = truth_class(λv) for λ > 0, on bare S-vectors and on predicates applied to scaled X."""
    report = LawReport()
    tally = Tally()
    for _ in range(iters):
        v = SVector(rng.randint(0, 5), rng.randint(0, 5))
        factor = Fraction(rng.randint(1, 20), rng.randint(1, 20))
        tally.check(truth_class(v).tag == truth_class(v.scale(factor)).tag, lambda: f"{v} scaled by {factor}")

        space = _space(rng.randint(1, 10))
        p = random_predicate(rng, space)
        X = EntityVector(space, tuple(Fraction(rng.randint(0, 3)) for _ in range(space.dim)))
        before, after = apply_predicate(p, X), apply_predicate(p, X.scale(factor))
        tally.check(
            truth_class(before).tag == truth_class(after).tag, lambda: f"{p.values} at {X.describe()} × {factor}"
        )
    tally.record(report, "funcmodel", "truth classes are invariant under positive scaling")
    return report


def check_counting(rng: Random, iters: int) -> LawReport:
    r"""For p on A and a Boolean B: p(B) = n_pB·⊤ + (|B| - n_pB)·⊥, and the true predicate counts |B|."""
    report = LawReport()
    counts, true_counts = Tally(), Tally()
    for _ in range(iters):
        space = _space(rng.randint(1, 30))
        p = random_predicate(rng, space)
        chosen = [i for i in range(space.dim) if rng.random() < 0.5]
        B = EntityVector.indicator(space, chosen)
        n_pB = len(p.top_set & set(chosen))
        counts.check(
            apply_predicate(p, B) == SVector(n_pB, len(chosen) - n_pB),
            lambda: f"{sorted(p.top_set)} on {B.describe()}",
        )
        true = Predicate.constant(space, TruthValue.top)
        true_counts.check(apply_predicate(true, B) == SVector(len(chosen), 0), lambda: B.describe())
    counts.record(report, "funcmodel", "p(B) counts the members of B where p holds")
    true_counts.record(report, "funcmodel", "n_true,B = |B|")
    return report


def check_double_role(rng: Random, iters: int) -> LawReport:
    r"""
    not ∘ p flips the value of p at every entity, yet on a mixed reading it gives a mixed reading again:
    "not p" of a mixed X is not the false classification.
    """
    report = LawReport()
    flips, mixed = Tally(), Tally()
    flipped = {
        TruthClass.true: TruthClass.false,
        TruthClass.false: TruthClass.true,
        TruthClass.mixed: TruthClass.mixed,
    }
    for _ in range(iters):
        space = _space(rng.randint(1, 10))
        p = random_predicate(rng, space)
        negated = predicate_not(p)
        for i in range(space.dim):
            a = EntityVector.indicator(space, [i])
            flips.check(
                apply_predicate(negated, a) == connective_not(apply_predicate(p, a)),
                lambda: f"{p.values} at {space.basis[i]}",
            )
        coords = [Fraction(rng.randint(0, 3)) for _ in range(space.dim)]
        coords[rng.randrange(space.dim)] += 1
        X = EntityVector(space, tuple(coords))
        before, after = truth_class(apply_predicate(p, X)).tag, truth_class(apply_predicate(negated, X)).tag
        mixed.check(after == flipped[before], lambda: f"{p.values} at {X.describe()}: {before} then {after}")

    space = _space(2)
    p = Predicate.from_sets(space, [0])
    X = EntityVector.indicator(space, [0, 1])
    witness = truth_class(apply_predicate(predicate_not(p), X))
    mixed.check(
        truth_class(apply_predicate(p, X)).tag == TruthClass.mixed and witness.tag == TruthClass.mixed,
        lambda: f"not ∘ p at a1+a2 is {witness}",
    )
    flips.record(report, "funcmodel", "not ∘ p flips every entity")
    mixed.record(report, "funcmodel", "not ∘ p keeps a mixed reading mixed")
    return report


def _basis(n: int) -> Tuple[str, ...]:
    return tuple(f"c{j}" for j in range(1, n + 1))


def check_vmodel_category(rng: Random, iters: int) -> LawReport:
    basis = _basis(rng.randint(2, 6))
    return vmodel_category_laws(list(random_concept_vectors(rng, basis, iters)))


def check_fact1(rng: Random, iters: int) -> LawReport:
    report = LawReport()
    tally = Tally()
    for dim in range(2, 7):
        tally.check(fact1_demo(dim).annihilates_witness, lambda: f"dimension {dim}")
    tally.record(report, "vmodel", "(1 ⊗ η) ∘ (ε ⊗ 1) annihilates a1 ⊗ a2 ⊗ a1")
    return report


def check_transitive_fragment(rng: Random, iters: int) -> LawReport:
    report = LawReport()
    embedding, order = Tally(), Tally()
    for _ in range(iters):
        basis = _basis(rng.randint(1, 4))
        v, w = random_concept_vectors(rng, basis, 2)
        embedding.check(
            pointwise(embed_subject(v), embed_object(w)) == tensor(v, w), lambda: f"v = {v}, w = {w}"
        )

    basis = _basis(2)
    cats, dogs = ConceptVector(basis, (1, 0)), ConceptVector(basis, (0, 1))
    verb = next(random_concept_vectors(rng, tuple(f"{a}⊗{b}" for a in basis for b in basis), 1))
    while verb.coords[1] == verb.coords[2]:
        verb = next(random_concept_vectors(rng, verb.basis, 1))
    forward = pointwise(pointwise(embed_subject(cats), verb), embed_object(dogs))
    backward = pointwise(pointwise(embed_subject(dogs), verb), embed_object(cats))
    order.check(forward != backward, lambda: f"verb {verb}")
    embedding.record(report, "vmodel", "subject ⊙ object embeddings = tensor product")
    order.record(report, "vmodel", "transitive sentences depend on word order")
    return report


def check_reduction_independence(rng: Random, iters: int) -> LawReport:
    r"""
    The meaning of a string in a vector model does not depend on the reduction chosen, nor on where the words
    sit: every reduction of a string gives the product of its word vectors, and so does every reordering.
    """
    report = LawReport()
    by_reduction, by_position = Tally(), Tally()
    n = SimpleType("n")
    strings = [tuple(Type((t,)) for t in (n, n.left, n, n.right, n))]
    for _ in range(iters):
        flat = random_simple_types(rng, rng.randint(1, 8))
        # cut into words at random positions
        cuts = sorted(rng.sample(range(1, len(flat)), rng.randint(0, len(flat) - 1)))
        strings.append(tuple(Type(flat[a:b]) for a, b in zip([0] + cuts, cuts + [len(flat)])))

    multiply_parsable = 0
    for types in strings:
        basis = _basis(rng.randint(1, 4))
        words = [(f"w{k}", t) for k, t in enumerate(types)]
        model = VectorModel(basis=basis, assignment=dict(zip(words, random_concept_vectors(rng, basis, len(words)))))
        product_of_words = eval_vector_model(model, words)
        found = find_reductions(list(types), None, ORACLE_POSET)
        multiply_parsable += int(len(found) > 1)
        for r in found:
            by_reduction.check(
                eval_vector_model(model, words, r, ORACLE_POSET) == product_of_words,
                lambda: f"{Type(flatten(types))} with links {r.links}",
            )
        reordered = list(words)
        rng.shuffle(reordered)
        by_position.check(
            eval_vector_model(model, reordered) == product_of_words, lambda: f"{Type(flatten(types))} reordered"
        )
    by_reduction.record(report, "vmodel", "every reduction of a string gives the same meaning")
    by_position.record(report, "vmodel", "the meaning does not depend on word positions")
    report.record(
        "vmodel", "strings with several reductions are covered", multiply_parsable > 0, f"{multiply_parsable} strings"
    )
    return report


def check_isomorphism(rng: Random, iters: int) -> LawReport:
    r"""Vectors and diagonal operators correspond, connective by connective, and ⊙ is operator composition."""
    report = LawReport()
    iso, composition, bijection, closure = Tally(), Tally(), Tally(), Tally()
    for _ in range(iters):
        basis = _basis(rng.randint(1, 6))
        X, Y = random_concept_vectors(rng, basis, 2, denominator=rng.choice((2, 8, 12)))
        iso.check(diag_of(alg_neg(X)) == alg_neg(diag_of(X)), lambda: f"¬ at {X}")
        for name, connective in ALGEBRAIC_CONNECTIVES.items():
            same = diag_of(connective(X, Y)) == connective(diag_of(X), diag_of(Y))
            iso.check(same, lambda: f"{name} at {X}, {Y}")
            result = connective(X, Y)
            closure.check(result.is_concept, lambda: f"{name}({X}, {Y}) = {result}")
        composition.check(
            diag_of(X).compose(diag_of(Y)) == diag_of(pointwise(X, Y)) and diag_of(X).apply(Y) == alg_and(X, Y),
            lambda: f"{X}, {Y}",
        )
        bijection.check(vector_of(diag_of(X)) == X, lambda: f"{X}")
        for a, b in zip(X.coords, Y.coords):
            closure.check(b * (1 - a) >= 0 and (1 - a) * (1 - b) >= 0, lambda: f"α = {a}, β = {b}")
    iso.record(report, "conceptlogic", "D(¬X) = ¬D(X) and D(X ▽ Y) = D(X) ▽ D(Y)")
    composition.record(report, "conceptlogic", "D_X ∘ D_Y = D_(X⊙Y) and D_X |Y⟩ = |X ∧ Y⟩")
    bijection.record(report, "conceptlogic", "vector_of ∘ diag_of = 1")
    closure.record(report, "conceptlogic", "connectives preserve [0, 1]")
    return report


def _mostly_boolean(rng: Random, size: int) -> Tuple[Fraction, ...]:
    return tuple(rng.choice((Fraction(0), Fraction(1), Fraction(rng.randint(0, 8), 8))) for _ in range(size))


def check_scalar_logic(rng: Random, iters: int) -> LawReport:
    r"""Boolean corners, the failure of idempotence, and the consequence relations on a grid of step 1/8."""
    report = LawReport()
    corners, grid, chain = Tally(), Tally(), Tally()
    for a, b in product((0, 1), repeat=2):
        for name, table in CLASSICAL_TABLES.items():
            connective = ALGEBRAIC_CONNECTIVES["imp" if name == "ifthen" else name]
            corners.check(connective(a, b) == int(table(a, b)), lambda: f"{name}({a}, {b})")
        corners.check(alg_neg(a) == 1 - a, lambda: f"¬{a}")

    half = Fraction(1, 2)
    report.record("conceptlogic", "∧ is not idempotent", alg_and(half, half) != half, f"1/2 ∧ 1/2 = {half * half}")

    steps = [Fraction(k, 8) for k in range(9)]
    for a, b in product(steps, repeat=2):
        grid.check((alg_imp(a, b) == 1) == (a == 0 or b == 1), lambda: f"α = {a}, β = {b}")
        D, E = DiagOp(("c1",), (a,)), DiagOp(("c1",), (b,))
        algebraic = algebraic_consequence(D, E)
        chain.check(
            (not algebraic or probabilistic_consequence(D, E)) and algebraic == (E.compose(D) == D),
            lambda: f"D = {D}, E = {E}",
        )
    for _ in range(iters):
        basis = _basis(rng.randint(1, 4))
        D, E = DiagOp(basis, _mostly_boolean(rng, len(basis))), DiagOp(basis, _mostly_boolean(rng, len(basis)))
        algebraic = algebraic_consequence(D, E)
        chain.check(
            (not algebraic or probabilistic_consequence(D, E)) and algebraic == (E.compose(D) == D),
            lambda: f"D = {D}, E = {E}",
        )
    corners.record(report, "conceptlogic", "Boolean corners follow the classical truth tables")
    grid.record(report, "conceptlogic", "α → β = 1 iff α = 0 or β = 1")
    chain.record(report, "conceptlogic", "algebraic ⇒ probabilistic, and algebraic iff E ∘ D = D")
    return report


def _subsets(n: int) -> List[Tuple[int, ...]]:
    return [subset for size in range(n + 1) for subset in combinations(range(n), size)]


def check_diagonal_coincidence(rng: Random, iters: int) -> LawReport:
    r"""
    Exhaustively for diagonal projectors at n ≤ 4: geometric and algebraic consequence agree, and where one
    projector is a consequence of the other each geometric connective is the algebraic one on the diagonals.
    """
    report = LawReport()
    consequence, connectives = Tally(), Tally()
    for n in range(1, 5):
        basis = _basis(n)
        for kept_p, kept_q in product(_subsets(n), repeat=2):
            p, q = Projector.from_kept(n, kept_p), Projector.from_kept(n, kept_q)
            Dp, Dq = DiagOp(basis, p.diagonal()), DiagOp(basis, q.diagonal())
            geometric = geometric_consequence(p, q)
            consequence.check(geometric == algebraic_consequence(Dp, Dq), lambda: f"{kept_p} ⇒ {kept_q}")
            if not (geometric or geometric_consequence(q, p)):
                continue
            for name, geo in GEOMETRIC_CONNECTIVES.items():
                result = geo(p, q)
                expected = ALGEBRAIC_CONNECTIVES[name](Dp, Dq)
                connectives.check(
                    result.is_diagonal() and result.diagonal() == expected.entries,
                    lambda: f"{name} on {kept_p}, {kept_q}",
                )
            connectives.check(
                geo_neg(p).diagonal() == alg_neg(Dp).entries, lambda: f"negation on {kept_p}"
            )
    consequence.record(report, "conceptlogic", "geometric consequence = algebraic consequence on projectors")
    connectives.record(report, "conceptlogic", "geometric connectives = algebraic connectives on nested projectors")
    return report


def check_eigenbasis(rng: Random, iters: int) -> LawReport:
    report = LawReport()
    p = Projector.onto(3, [(1, 1, 0)])
    q = Projector.from_kept(3, range(3))
    basis = simultaneous_eigenbasis(p, q)
    coincidence = basis.connective_coincidence(p, q)
    report.record(
        "conceptlogic",
        "common eigenbasis of span{a1+a2} and 1",
        basis.vectors == ((1, 1, 0), (1, -1, 0), (0, 0, 1)) and all(coincidence.values()),
        f"{basis.vectors}",
    )

    nested = simultaneous_eigenbasis(Projector.from_kept(4, [0]), Projector.from_kept(4, [0, 1]))
    standard = tuple(tuple(int(i == j) for j in range(4)) for i in range(4))
    report.record("conceptlogic", "nested diagonal projectors keep the standard basis", nested.vectors == standard)

    p, q = Projector.onto(2, [(1, 0)]), Projector.onto(2, [(1, 1)])
    try:
        simultaneous_eigenbasis(p, q)
        refused = False
    except ProjectorError:
        refused = True
    report.record("conceptlogic", "eigenbasis refused without consequence", refused)
    witness = (
        not p.commutes_with(q)
        and not is_composite_projector(p, q)
        and not geometric_consequence(p, q)
        and not geometric_consequence(q, p)
    )
    report.record(
        "conceptlogic", "non-commuting projectors compose to a non-projector", witness, "span{a1}, span{a1+a2}"
    )
    return report


def random_partition(rng: Random, space: EntitySpace, max_blocks: int) -> PartitionScheme:
    r"""A random partition into nonempty blocks."""
    k = rng.randint(1, min(max_blocks, space.dim))
    order = list(range(space.dim))
    rng.shuffle(order)
    assignment = {i: (position if position < k else rng.randrange(k)) for position, i in enumerate(order)}
    blocks = tuple(frozenset(i for i in range(space.dim) if assignment[i] == j) for j in range(k))
    return PartitionScheme(space, _basis(k), blocks)


def set_partitions(n: int, max_blocks: int) -> Iterator[Tuple[frozenset, ...]]:
    r"""Every partition of {0, ..., n-1} into at most `max_blocks` blocks, via restricted growth strings."""

    def grow(prefix: List[int], used: int) -> Iterator[List[int]]:
        if len(prefix) == n:
            yield prefix
            return
        for block in range(min(used + 1, max_blocks)):
            yield from grow(prefix + [block], max(used, block + 1))

    for labels in grow([], 0):
        k = max(labels) + 1
        yield tuple(frozenset(i for i in range(n) if labels[i] == j) for j in range(k))


def _predicates(space: EntitySpace) -> List[Predicate]:
    return [Predicate.from_sets(space, subset) for subset in _subsets(space.dim)]


def check_theorem1_random(rng: Random, iters: int) -> LawReport:
    r"""Negation preservation, consequence reflection and connective preservation on random triples."""
    report = LawReport()
    tallies: Dict[str, Tally] = {}
    for _ in range(iters):
        space = _space(rng.randint(1, 12))
        scheme = random_partition(rng, space, 4)
        p, q = random_predicate(rng, space), random_predicate(rng, space)
        for result in theorem1_suite(p, q, scheme):
            name = result.name.replace(" for p", "").replace(" for q", "")
            tallies.setdefault(name, Tally()).check(
                result.passed, lambda: f"{result.detail} with p = {sorted(p.top_set)}, q = {sorted(q.top_set)}"
            )
    for name, tally in tallies.items():
        tally.record(report, "theorem1", name)
    return report


def check_lemma1(rng: Random, iters: int) -> LawReport:
    r"""
    Preservation for block-constant pairs, exhaustively: every partition of up to six entities into at most
    three blocks, and every pair of predicates on A. Also finds a pair that breaks the hypothesis and is not
    preserved.

    Note: J and the connectives are tabled once per partition, J(p ▽ q) = J(p) ▽ J(q) is then a lookup;
          `lemma1_check` itself runs on every pair up to four entities and must agree with the table.
    """
    report = LawReport()
    preserved, agrees = Tally(), Tally()
    needed = ""
    for n in range(1, 7):
        space = _space(n)
        predicates = _predicates(space)
        index = {p: k for k, p in enumerate(predicates)}
        pairs = list(product(range(len(predicates)), repeat=2))
        # index of p ▽ q, per connective
        combined = {
            name: {(i, j): index[connective(predicates[i], predicates[j])] for i, j in pairs}
            for name, connective in PREDICATE_CONNECTIVES.items()
        }
        for blocks in set_partitions(n, 3):
            scheme = PartitionScheme(space, _basis(len(blocks)), blocks)
            vectors = [interpret(p, scheme) for p in predicates]
            ids: Dict[ConceptVector, int] = {}
            for vector in vectors:
                ids.setdefault(vector, len(ids))
            vector_id = [ids[vector] for vector in vectors]
            constant = [tuple(is_constant_on(p, block) for block in blocks) for p in predicates]
            # id of J(p) ▽ J(q), or -1 when it is not the interpretation of any predicate
            results: Dict[Tuple[str, int, int], int] = {}

            for i, j in pairs:
                failing = [k for k, (a, b) in enumerate(zip(constant[i], constant[j])) if not (a or b)]
                kept = {}
                for name, connective in VECTOR_CONNECTIVES.items():
                    key = (name, vector_id[i], vector_id[j])
                    if key not in results:
                        results[key] = ids.get(connective(vectors[i], vectors[j]), -1)
                    kept[name] = vector_id[combined[name][i, j]] == results[key]

                def pair_text() -> str:
                    return f"p = {sorted(predicates[i].top_set)}, q = {sorted(predicates[j].top_set)}"

                preserved.check(bool(failing) or all(kept.values()), lambda: f"{pair_text()}, {blocks}")
                if failing and not all(kept.values()) and not needed:
                    needed = f"{pair_text()} on block {scheme.labels[failing[0]]}"
                if n > 4:
                    continue
                try:
                    result = lemma1_check(predicates[i], predicates[j], scheme)
                    same = result.hypothesis == (not failing) and dict(result.preserved) == kept
                except AssertionError:
                    same = not failing and not all(kept.values())
                agrees.check(same, lambda: f"{pair_text()}, {blocks}")

    preserved.record(report, "theorem1", "p or q constant on every block ⇒ connectives preserved")
    agrees.record(report, "theorem1", "lemma1_check agrees with the exhaustive table")
    report.record("theorem1", "both non-constant on a block can break preservation", bool(needed), needed)
    return report


def check_boolean_isomorphism(rng: Random, iters: int) -> LawReport:
    r"""On the singleton partition J is a Boolean-algebra isomorphism: exhaustive for small universes, random beyond."""
    report = LawReport()
    tally = Tally()

    def check_pair(p: Predicate, q: Predicate, scheme: PartitionScheme) -> bool:
        Jp = interpret(p, scheme)
        indicator = Jp.coords == EntityVector.indicator(p.space, p.top_set).coords
        return indicator and Jp.is_boolean and all(connective_preservation(p, q, scheme).values())

    for n in range(1, 7):
        scheme = PartitionScheme.singletons(_space(n))
        for p, q in product(_predicates(scheme.space), repeat=2):
            tally.check(check_pair(p, q, scheme), lambda: f"p = {sorted(p.top_set)}, q = {sorted(q.top_set)}")
    for n in range(1, 5):
        scheme = PartitionScheme.singletons(_space(n))
        predicates = _predicates(scheme.space)
        for p, q, r in product(predicates, repeat=3):
            left = interpret(predicate_and(p, predicate_or(q, r)), scheme)
            right = alg_and(interpret(p, scheme), alg_or(interpret(q, scheme), interpret(r, scheme)))
            tally.check(left == right, lambda: f"p ∧ (q ∨ r) at {p.top_set}, {q.top_set}, {r.top_set}")
    for n in (8, 30):
        scheme = PartitionScheme.singletons(_space(n))
        for _ in range(iters):
            p, q = random_predicate(rng, scheme.space), random_predicate(rng, scheme.space)
            tally.check(check_pair(p, q, scheme), lambda: f"p = {sorted(p.top_set)}, q = {sorted(q.top_set)}")
    tally.record(report, "theorem1", "singleton partition: J is a Boolean-algebra isomorphism")
    return report


def check_empty_block(rng: Random, iters: int) -> LawReport:
    r"""Negation is preserved exactly when no block is empty."""
    space = _space(3)
    p = Predicate.from_sets(space, [0])
    with_empty = PartitionScheme(space, _basis(3), (frozenset([0]), frozenset([1, 2]), frozenset()))
    without = PartitionScheme(space, _basis(2), (frozenset([0]), frozenset([1, 2])))
    fails = interpret(predicate_not(p), with_empty) != alg_neg(interpret(p, with_empty))
    holds = interpret(predicate_not(p), without) == alg_neg(interpret(p, without))
    report = LawReport()
    report.record("theorem1", "negation fails once an empty block is kept", fails and holds, "C = {a1}, {a2, a3}, ∅")
    return report


SUITES: Dict[str, Tuple[Check, ...]] = {
    "pregroup": (check_reduction_oracle, check_yanking, check_type_round_trip),
    "funcmodel": (
        check_fundamental_property,
        check_connective_tables,
        check_contraction_oracle,
        check_boolean_laws,
        check_scaling,
        check_counting,
        check_double_role,
    ),
    "vmodel": (check_vmodel_category, check_fact1, check_transitive_fragment, check_reduction_independence),
    "conceptlogic": (check_isomorphism, check_scalar_logic, check_diagonal_coincidence, check_eigenbasis),
    "theorem1": (check_theorem1_random, check_lemma1, check_boolean_isomorphism, check_empty_block),
}

# Default iteration counts of the randomized checks.
DEFAULT_ITERS = {"pregroup": 1000, "funcmodel": 200, "vmodel": 100, "conceptlogic": 1000, "theorem1": 1000}

SUITE_NAMES = tuple(SUITES) + ("all",)


def suite_checks(name: str) -> List[Tuple[str, Check]]:
    r"""The (suite, check) pairs that make up a suite, or every suite for "all"."""
    if name == "all":
        return [(suite, check) for suite, checks in SUITES.items() for check in checks]
    if name not in SUITES:
        raise ValueError(f"Unknown suite {name!r}; choose from {', '.join(SUITE_NAMES)}")
    return [(name, check) for check in SUITES[name]]


def run_suite(
    name: str,
    seed: int = 0,
    iters: Optional[int] = None,
    on_check: Optional[Callable[[LawReport], None]] = None,
) -> LawReport:
    r"""
    Runs a suite and returns its combined report. Every check gets its own `Random(seed)`, so a check's
    outcome does not depend on which other checks run before it.
    """
    report = LawReport()
    for suite, check in suite_checks(name):
        count = DEFAULT_ITERS[suite] if iters is None else iters
        report.extend(check(Random(seed), count))
        if on_check is not None:
            on_check(report)
    return report
