r"""
Pregroup types, the partial order on basic types, reduction search (parsing), lexicons,
and meaning graphs (the normal-form string diagrams of the free compact closed category).
"""

import csv
import io
import json
import re
from collections import UserList
from dataclasses import dataclass, field
from enum import Enum
from functools import cache, reduce
from itertools import product
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from rich.table import Table, Column

from pregsem.lib.errors import LexiconError, ParseError, PosetError, TypeSyntaxError

BasicType = str

# Matches a simple type such as "n2", "s^l" or "c2^rr".
SIMPLE_TYPE_PATTERN = re.compile(r"^(?P<base>[A-Za-z_][A-Za-z0-9_]*)(?:\^(?P<suffix>l+|r+))?$")


@dataclass(frozen=True)
class Poset:
    r"""
    A finite partially ordered set of basic types.

    Note: `pairs` holds the reflexive-transitive closure of the declared order, so `leq` is a set lookup.
    """

    elements: frozenset = field(default_factory=frozenset)
    pairs: frozenset = field(default_factory=frozenset)

    @classmethod
    def from_pairs(cls, pairs: Iterable[Tuple[BasicType, BasicType]], elements: Iterable[BasicType] = ()) -> "Poset":
        r"""Builds the poset generated by the given `(smaller, larger)` pairs, checking antisymmetry."""
        pairs = list(pairs)
        all_elements = set(elements)
        for smaller, larger in pairs:
            all_elements.update((smaller, larger))

        closure = {(a, a) for a in all_elements} | set(pairs)
        for k in sorted(all_elements):
            for i in sorted(all_elements):
                if (i, k) not in closure:
                    continue
                for j in sorted(all_elements):
                    if (k, j) in closure:
                        closure.add((i, j))

        for a, b in sorted(closure):
            if a != b and (b, a) in closure:
                raise PosetError(f"Order is not antisymmetric: {a} <= {b} and {b} <= {a}")

        return cls(elements=frozenset(all_elements), pairs=frozenset(closure))

    def leq(self, a: BasicType, b: BasicType) -> bool:
        return (a, b) in self.pairs

    def __contains__(self, name: object) -> bool:
        return name in self.elements


def load_poset(text: str) -> Poset:
    r"""
    Parses a poset file: one `a <= b` statement or bare element name per line; `#` starts a comment.
    """
    pairs = []
    elements = []
    for line_number, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if line == "":
            continue
        if "<=" in line:
            smaller, larger = (part.strip() for part in line.split("<=", 1))
            if not (SIMPLE_TYPE_PATTERN.match(smaller) and SIMPLE_TYPE_PATTERN.match(larger)) or "^" in line:
                raise PosetError(f"Line {line_number}: expected `a <= b` with basic type names, got: {raw_line!r}")
            pairs.append((smaller, larger))
        elif SIMPLE_TYPE_PATTERN.match(line) and "^" not in line:
            elements.append(line)
        else:
            raise PosetError(f"Line {line_number}: cannot parse {raw_line!r}")
    return Poset.from_pairs(pairs, elements)


class Side(str, Enum):
    r"""Which adjoint to take."""

    left = "left"
    right = "right"


@dataclass(frozen=True, order=True)
class SimpleType:
    r"""
    A basic type with an integer adjoint exponent: ..., -2 = ll, -1 = l, 0, 1 = r, 2 = rr, ...
    """

    base: BasicType
    z: int = 0

    @property
    def left(self) -> "SimpleType":
        return SimpleType(self.base, self.z - 1)

    @property
    def right(self) -> "SimpleType":
        return SimpleType(self.base, self.z + 1)

    def __str__(self) -> str:
        if self.z > 0:
            return f"{self.base}^{'r' * self.z}"
        if self.z < 0:
            return f"{self.base}^{'l' * -self.z}"
        return self.base


def adjoint(t: SimpleType, side: Side) -> SimpleType:
    r"""Returns the left (exponent minus one) or right (exponent plus one) adjoint of a simple type."""
    return t.left if side == Side.left else t.right


@dataclass(frozen=True, order=True)
class Type:
    r"""
    A string of simple types under juxtaposition. The empty string is the tensor unit I.
    """

    factors: Tuple[SimpleType, ...] = ()

    def __mul__(self, other: "Type") -> "Type":
        return Type(self.factors + other.factors)

    def __len__(self) -> int:
        return len(self.factors)

    def __iter__(self):
        return iter(self.factors)

    def __getitem__(self, index: int) -> SimpleType:
        return self.factors[index]

    @property
    def right(self) -> "Type":
        return Type(tuple(f.right for f in reversed(self.factors)))

    @property
    def left(self) -> "Type":
        return Type(tuple(f.left for f in reversed(self.factors)))

    def __str__(self) -> str:
        return " ".join(str(f) for f in self.factors)

    def describe(self) -> str:
        r"""Like `str()`, but renders the unit as "I"."""
        return str(self) if self.factors else "I"


UNIT = Type()


def parse_type(text: str, poset: Poset) -> Type:
    r"""
    Parses whitespace-separated simple types, e.g. "n2^r s gp^l n2". The empty string is I.

    Note: The output of `str(parse_type(text, poset))` parses back to the same `Type`.
    """
    factors = []
    for token in text.split():
        match = SIMPLE_TYPE_PATTERN.match(token)
        if match is None:
            if "^" in token:
                raise TypeSyntaxError(f"Malformed adjoint suffix in {token!r} (expected ^l, ^ll, ^r, ^rr, ...)")
            raise TypeSyntaxError(f"Malformed simple type: {token!r}")
        base = match.group("base")
        if base not in poset:
            raise TypeSyntaxError(f"Unknown basic type: {base!r}")
        suffix = match.group("suffix") or ""
        z = len(suffix) if suffix.startswith("r") else -len(suffix)
        factors.append(SimpleType(base, z))
    return Type(tuple(factors))


def contractible(s: SimpleType, t: SimpleType, poset: Poset) -> bool:
    r"""
    Whether the adjacent pair `s t` contracts to the unit.

    Note: Requires `t.z == s.z + 1`; for even `s.z` the bases must satisfy `s.base <= t.base`,
          for odd `s.z` the order flips to `t.base <= s.base`.
    """
    if t.z != s.z + 1:
        return False
    if s.z % 2 == 0:
        return poset.leq(s.base, t.base)
    return poset.leq(t.base, s.base)


def flatten(types: Sequence[Type]) -> Tuple[SimpleType, ...]:
    r"""Concatenates the factors of several types into one string of simple types."""
    return tuple(factor for t in types for factor in t.factors)


@dataclass(frozen=True, order=True)
class Reduction:
    r"""
    A planar set of contraction links (0-based position pairs) plus the position of the surviving basic type.
    """

    links: Tuple[Tuple[int, int], ...]
    survivor: int
    target: BasicType

    def validate(self, flat: Sequence[SimpleType], poset: Poset) -> None:
        r"""Raises `ParseError` unless this is a reduction of `flat` to `target`."""
        used = [self.survivor]
        for i, j in self.links:
            if not i < j:
                raise ParseError(f"Link {(i, j)} is not ordered")
            used.extend((i, j))
        if sorted(used) != list(range(len(flat))):
            raise ParseError("Links and survivor do not cover every position exactly once")
        for i, j in self.links:
            for k, l in self.links:
                if i < k < j < l:
                    raise ParseError(f"Links {(i, j)} and {(k, l)} cross")
            if not contractible(flat[i], flat[j], poset):
                raise ParseError(f"Link {(i, j)} joins {flat[i]} and {flat[j]}, which do not contract")
            if i < self.survivor < j:
                raise ParseError(f"Link {(i, j)} encloses the survivor")
        survivor_type = flat[self.survivor]
        if survivor_type.z != 0 or not poset.leq(survivor_type.base, self.target):
            raise ParseError(f"Survivor {survivor_type} does not reduce to {self.target}")

    def diagram(self, flat: Sequence[SimpleType]) -> str:
        r"""Renders the reduction as text, using 1-based positions."""
        positions = " ".join(f"{index + 1}:{simple}" for index, simple in enumerate(flat))
        links = " ".join(f"{i + 1}-{j + 1}" for i, j in self.links) or "none"
        return f"{positions}  links: {links}  survivor: {self.survivor + 1} -> {self.target}"


def find_reductions(
    types: Sequence[Type],
    target: Optional[BasicType],
    poset: Poset,
    limit: Optional[int] = None,
) -> List[Reduction]:
    r"""
    Enumerates the reductions of the concatenated types to `target` (any basic type, if `target` is `None`).

    The search is a memoized recursion over intervals: the leftmost position of an interval links to
    some `j`, and the stretch strictly inside the link and the rest after it must contract completely.
    Results come sorted by link list, then survivor, and are truncated to `limit`.
    """
    if limit is not None and limit < 1:
        raise ValueError(f"limit must be at least 1, got {limit}")
    flat = flatten(types)

    @cache
    def complete_matchings(lo: int, hi: int) -> Tuple[Tuple[Tuple[int, int], ...], ...]:
        if lo == hi:
            return ((),)
        matchings = []
        for j in range(lo + 1, hi, 2):
            if not contractible(flat[lo], flat[j], poset):
                continue
            for inner in complete_matchings(lo + 1, j):
                for rest in complete_matchings(j + 1, hi):
                    matchings.append(((lo, j),) + inner + rest)
        return tuple(matchings)

    reductions = []
    for survivor, simple in enumerate(flat):
        if simple.z != 0:
            continue
        if target is not None and not poset.leq(simple.base, target):
            continue
        for left_links in complete_matchings(0, survivor):
            for right_links in complete_matchings(survivor + 1, len(flat)):
                reductions.append(
                    Reduction(
                        links=left_links + right_links,
                        survivor=survivor,
                        target=simple.base if target is None else target,
                    )
                )

    reductions.sort(key=lambda r: (r.links, r.survivor))
    return reductions if limit is None else reductions[:limit]


class BindingKind(str, Enum):
    r"""The kind of model value a word is bound to."""

    vector = "vector"
    projector = "projector"
    predicate = "predicate"
    relation = "relation"
    logical = "logical"
    identity = "identity"


# Arities of the logical connectives a word can be bound to.
LOGICAL_ARITIES = {"not": 1, "and": 2, "or": 2, "ifthen": 2}

BINDING_ARITIES = {
    BindingKind.vector: 0,
    BindingKind.projector: 1,
    BindingKind.predicate: 1,
    BindingKind.relation: 2,
    BindingKind.identity: 1,
}


@dataclass(frozen=True, order=True)
class SemanticBinding:
    kind: BindingKind
    name: str

    @property
    def arity(self) -> int:
        if self.kind == BindingKind.logical:
            if self.name not in LOGICAL_ARITIES:
                raise LexiconError(f"Unknown logical connective: {self.name!r}")
            return LOGICAL_ARITIES[self.name]
        return BINDING_ARITIES[self.kind]


@dataclass(frozen=True, order=True)
class Box:
    r"""
    A morphism drawn inside a word's name graph: one output factor fed by zero or more input factors.

    Note: Indices refer to the factors of the word's own type, starting at 0.
    """

    output: int
    inputs: Tuple[int, ...] = ()

    def __str__(self) -> str:
        return f"{self.output}:{','.join(str(i) for i in self.inputs)}"

    @property
    def span(self) -> Tuple[int, int]:
        positions = (self.output,) + self.inputs
        return min(positions), max(positions)


def parse_boxes(text: str) -> Tuple[Box, ...]:
    r"""Parses a boxes column like "1:2 3:0" (output:inputs, comma-separated inputs)."""
    boxes = []
    for item in text.split():
        output, _, inputs = item.partition(":")
        try:
            boxes.append(Box(int(output), tuple(int(i) for i in inputs.split(",") if i != "")))
        except ValueError:
            raise LexiconError(f"Malformed box: {item!r}")
    return tuple(boxes)


def derive_box(t: Type) -> Box:
    r"""The lexical morphism of a type: its single even-exponent factor is fed by all its odd-exponent factors."""
    even = [index for index, simple in enumerate(t.factors) if simple.z % 2 == 0]
    if len(even) != 1:
        raise LexiconError(
            f"Type {t.describe()} has {len(even)} even-exponent factors; exactly one is required "
            f"unless the entry lists its boxes explicitly"
        )
    odd = tuple(index for index, simple in enumerate(t.factors) if simple.z % 2 != 0)
    return Box(output=even[0], inputs=odd)


@dataclass(frozen=True)
class LexiconEntry:
    r"""
    A word, its pregroup type, and what the word means in a model.

    Note: The first box is the principal (labelled) lexical morphism; any further boxes are unlabelled identity
          wires, which let a word like "no" or "are" carry more than one even-exponent factor.
    """

    word: str
    type: Type
    binding: SemanticBinding
    boxes: Tuple[Box, ...] = ()

    def __post_init__(self):
        if not self.boxes:
            object.__setattr__(self, "boxes", (derive_box(self.type),))
        self._check_boxes()

    @property
    def principal(self) -> Box:
        return self.boxes[0]

    def _check_boxes(self) -> None:
        factors = self.type.factors
        used = []
        for box in self.boxes:
            for index in (box.output,) + box.inputs:
                if not 0 <= index < len(factors):
                    raise LexiconError(f"{self.word}: box {box} refers to a missing factor")
            if factors[box.output].z % 2 != 0:
                raise LexiconError(f"{self.word}: box {box} outputs to an odd-exponent factor")
            if any(factors[i].z % 2 == 0 for i in box.inputs):
                raise LexiconError(f"{self.word}: box {box} takes input from an even-exponent factor")
            used.extend((box.output,) + box.inputs)
        if sorted(used) != list(range(len(factors))):
            raise LexiconError(f"{self.word}: boxes must use every factor of {self.type} exactly once")
        for a in self.boxes:
            for b in self.boxes:
                (a_lo, a_hi), (b_lo, b_hi) = a.span, b.span
                if a_lo < b_lo < a_hi < b_hi:
                    raise LexiconError(f"{self.word}: boxes {a} and {b} cross")
        if len(self.principal.inputs) > 2:
            raise LexiconError(f"{self.word}: lexical arity {len(self.principal.inputs)} is not supported (max 2)")
        if len(self.principal.inputs) != self.binding.arity:
            raise LexiconError(
                f"{self.word}: binding {self.binding.kind.value} {self.binding.name!r} has arity "
                f"{self.binding.arity}, but the type {self.type} gives {len(self.principal.inputs)} inputs"
            )
        for box in self.boxes[1:]:
            if len(box.inputs) != 1:
                raise LexiconError(f"{self.word}: unlabelled box {box} must have exactly one input")

    def check_wires(self, poset: Poset) -> None:
        r"""Checks that every unlabelled box only coerces a smaller basic type into a larger one."""
        for box in self.boxes[1:]:
            source, target = self.type[box.inputs[0]].base, self.type[box.output].base
            if not poset.leq(source, target):
                raise LexiconError(f"{self.word}: unlabelled box {box} needs {source} <= {target}")


@dataclass(frozen=True, order=True)
class LexicalMorphism:
    inputs: Tuple[BasicType, ...]
    output: BasicType
    label: str


def lexical_morphism(entry: LexiconEntry) -> LexicalMorphism:
    r"""
    Returns the lexical morphism an entry creates: from the bases of its (principal) odd-exponent
    factors, in order, to the base of its even-exponent factor.
    """
    box = entry.principal
    return LexicalMorphism(
        inputs=tuple(entry.type[i].base for i in box.inputs),
        output=entry.type[box.output].base,
        label=entry.binding.name,
    )


class Lexicon(UserList):
    r"""
    A list of lexicon entries. A word may have several entries (e.g. one per type it can take).
    """

    def entries_for(self, word: str) -> List[LexiconEntry]:
        return [entry for entry in self.data if entry.word == word]

    def words(self) -> List[str]:
        distinct_words = []
        for entry in self.data:
            if entry.word not in distinct_words:
                distinct_words.append(entry.word)
        return distinct_words

    def dump_to_tsv_file(self, file_path: Union[str, Path]) -> None:
        r"""
        Helper function that dumps the entries to a TSV file (in the format `load_lexicon` reads) at the specified path.
        """
        with open(file_path, "w", newline="") as tsv_file:
            writer = csv.writer(tsv_file, delimiter="\t")
            writer.writerow(LEXICON_COLUMNS)  # header row
            for entry in self.data:
                writer.writerow(
                    (
                        entry.word,
                        str(entry.type),
                        entry.binding.kind.value,
                        entry.binding.name,
                        " ".join(str(box) for box in entry.boxes),
                    )
                )  # data row

    def as_table(self) -> Table:
        r"""
        Returns the entries as a `rich.Table` instance.
        """
        table = Table(
            Column(header="Word", footer=f"{len(self.data)} entries"),
            Column(header="Type"),
            Column(header="Binding"),
            Column(header="Lexical morphism"),
            title="Lexicon",
            show_footer=True,
        )
        for entry in self.data:
            morphism = lexical_morphism(entry)
            table.add_row(
                entry.word,
                entry.type.describe(),
                f"{entry.binding.kind.value} {entry.binding.name}",
                f"{' ⊗ '.join(morphism.inputs) or 'I'} → {morphism.output}",
            )
        return table


LEXICON_COLUMNS = ("word", "type", "kind", "name", "boxes")


def load_lexicon(text: str, poset: Poset, file_format: str = "tsv") -> Lexicon:
    r"""
    Parses a lexicon in TSV (header `word type kind name [boxes]`) or JSON (list of objects with those keys) format.
    """
    if file_format == "json":
        rows = json.loads(text)
    elif file_format == "tsv":
        rows = list(csv.DictReader(io.StringIO(text), delimiter="\t"))
    else:
        raise LexiconError(f"Unsupported lexicon format: {file_format!r}")

    lexicon = Lexicon()
    for row_number, row in enumerate(rows, start=1):
        missing = [column for column in LEXICON_COLUMNS[:4] if not row.get(column)]
        if missing:
            raise LexiconError(f"Lexicon row {row_number} lacks: {', '.join(missing)}")
        try:
            kind = BindingKind(row["kind"].strip())
        except ValueError:
            raise LexiconError(f"Lexicon row {row_number}: unknown binding kind {row['kind']!r}")
        entry = LexiconEntry(
            word=row["word"].strip(),
            type=parse_type(row["type"], poset),
            binding=SemanticBinding(kind=kind, name=row["name"].strip()),
            boxes=parse_boxes(row.get("boxes") or ""),
        )
        entry.check_wires(poset)
        lexicon.append(entry)
    return lexicon


def read_lexicon_file(file_path: Union[str, Path], poset: Poset) -> Lexicon:
    r"""Loads a lexicon file, choosing the format by its extension (`.json`, otherwise TSV)."""
    file_path = Path(file_path)
    file_format = "json" if file_path.suffix.lower() == ".json" else "tsv"
    return load_lexicon(file_path.read_text(encoding="utf-8"), poset, file_format)


@dataclass(frozen=True)
class Parse:
    r"""A choice of one lexicon entry per word, together with a reduction of their types."""

    entries: Tuple[LexiconEntry, ...]
    reduction: Reduction

    @property
    def types(self) -> Tuple[Type, ...]:
        return tuple(entry.type for entry in self.entries)


def tokenize(sentence: str) -> List[str]:
    return sentence.lower().split()


def parse_sentence(
    sentence: str,
    lexicon: Lexicon,
    target: Optional[BasicType],
    poset: Poset,
    limit: Optional[int] = None,
) -> List[Parse]:
    r"""
    Returns every (entry choice, reduction) pair that makes the sentence grammatical.

    Note: When a word has several entries, every combination is tried, in lexicon order;
          it is the reduction that chooses the types.
    """
    words = tokenize(sentence)
    candidates = []
    for word in words:
        entries = lexicon.entries_for(word)
        if not entries:
            raise ParseError(f"Unknown word: {word!r}")
        candidates.append(entries)

    parses = []
    for entries in product(*candidates):
        for reduction in find_reductions([entry.type for entry in entries], target, poset):
            parses.append(Parse(entries=tuple(entries), reduction=reduction))
    return parses if limit is None else parses[:limit]


# A port is ("dom", i), ("cod", i) or ("box", box_id, port), where port -1 is the box's output.
Port = tuple


@dataclass(frozen=True, order=True)
class Coercion:
    r"""The basic morphism in_{a,b}: a -> b for a <= b."""

    source: BasicType
    target: BasicType

    def __str__(self) -> str:
        return f"in_{{{self.source},{self.target}}}"


@dataclass(frozen=True, order=True)
class BoxLabel:
    r"""The label of a lexical morphism: the word's binding name."""

    name: str
    word: str
    kind: BindingKind

    def __str__(self) -> str:
        return self.name


Label = Union[Coercion, BoxLabel]


def normalize_labels(labels: Sequence[Label]) -> Tuple[Label, ...]:
    r"""Merges consecutive coercions (in_{b,c} after in_{a,b} is in_{a,c}) and drops identity coercions."""
    merged: List[Label] = []
    for label in labels:
        if isinstance(label, Coercion) and merged and isinstance(merged[-1], Coercion):
            label = Coercion(merged.pop().source, label.target)
        merged.append(label)
    return tuple(label for label in merged if not (isinstance(label, Coercion) and label.source == label.target))


@dataclass(frozen=True)
class Edge:
    r"""
    A directed link of a meaning graph. `labels` lists basic morphisms in the order they are applied.

    Note: A `None` tail marks a link that starts at a constant (an arity-0 lexical morphism).
    """

    tail: Optional[Port]
    head: Port
    labels: Tuple[Label, ...] = ()

    @property
    def composite(self) -> str:
        return " ∘ ".join(str(label) for label in reversed(self.labels)) or "1"

    def sort_key(self) -> tuple:
        return (self.tail is not None, repr(self.tail), repr(self.head))


def _is_tail(side: str, simple: SimpleType) -> bool:
    r"""Whether the wire at a domain/codomain point leaves from it (dom with even exponent, cod with odd)."""
    even = simple.z % 2 == 0
    return even if side == "dom" else not even


def _wire(a: Port, a_simple: SimpleType, b: Port, b_simple: SimpleType) -> Edge:
    r"""Joins two boundary points, orienting the wire by parity and labelling it with the needed coercion."""
    a_side, b_side = a[0], b[0]
    if _is_tail(a_side, a_simple):
        return Edge(a, b, normalize_labels((Coercion(a_simple.base, b_simple.base),)))
    if not _is_tail(b_side, b_simple):
        raise ValueError(f"Cannot orient a wire between {a} and {b}")
    return Edge(b, a, normalize_labels((Coercion(b_simple.base, a_simple.base),)))


@dataclass(frozen=True)
class MeaningGraph:
    r"""
    A morphism `domain -> codomain` of the free compact closed category, drawn as a graph.

    Arity-2 lexical morphisms are vertices (`vertices`); arity-0 and arity-1 lexical morphisms and
    coercions live on the edges as labels. Wires closed off during composition are kept as `loops`.
    """

    domain: Type
    codomain: Type
    edges: frozenset
    vertices: Tuple[Tuple[int, BoxLabel], ...] = ()
    loops: Tuple[Tuple[Label, ...], ...] = ()

    def sorted_edges(self) -> List[Edge]:
        return sorted(self.edges, key=Edge.sort_key)

    def edge_into(self, port: Port) -> Edge:
        for edge in self.edges:
            if edge.head == port:
                return edge
        raise KeyError(port)

    def box_label(self, box_id: int) -> BoxLabel:
        return dict(self.vertices)[box_id]

    def is_normal(self) -> bool:
        r"""Every edge joins two ends directly (no inner points) and carries normalized labels."""
        ends_ok = all(
            (edge.tail is None or edge.tail[0] in ("dom", "cod", "box")) and edge.head[0] in ("dom", "cod", "box")
            for edge in self.edges
        )
        return ends_ok and all(normalize_labels(edge.labels) == edge.labels for edge in self.edges)

    def chains(self) -> List[str]:
        r"""Renders each edge as "tail -> head: composite"."""
        lines = []
        for edge in self.sorted_edges():
            tail = "const" if edge.tail is None else ":".join(str(part) for part in edge.tail)
            head = ":".join(str(part) for part in edge.head)
            lines.append(f"{tail} -> {head}: {edge.composite}")
        return lines

    def _box_offset(self) -> int:
        return max((box_id for box_id, _ in self.vertices), default=-1) + 1


def _renamed(port: Optional[Port], mapping: dict, box_shift: int) -> Optional[Port]:
    if port is None:
        return None
    if port[0] == "box":
        return ("box", port[1] + box_shift, port[2])
    return mapping.get(port, port)


def identity(t: Type) -> MeaningGraph:
    r"""The identity morphism on `t`: one straight wire per factor."""
    edges = frozenset(_wire(("dom", i), simple, ("cod", i), simple) for i, simple in enumerate(t.factors))
    return MeaningGraph(domain=t, codomain=t, edges=edges)


def cup(t: SimpleType) -> MeaningGraph:
    r"""The contraction `t ⊗ t^r -> I`."""
    return MeaningGraph(
        domain=Type((t, t.right)),
        codomain=UNIT,
        edges=frozenset({_wire(("dom", 0), t, ("dom", 1), t.right)}),
    )


def cap(t: SimpleType) -> MeaningGraph:
    r"""The expansion `I -> t^r ⊗ t`."""
    return MeaningGraph(
        domain=UNIT,
        codomain=Type((t.right, t)),
        edges=frozenset({_wire(("cod", 0), t.right, ("cod", 1), t)}),
    )


def tensor(f: MeaningGraph, g: MeaningGraph) -> MeaningGraph:
    r"""Places `g` to the right of `f`."""
    mapping = {("dom", i): ("dom", i + len(f.domain)) for i in range(len(g.domain))}
    mapping.update({("cod", i): ("cod", i + len(f.codomain)) for i in range(len(g.codomain))})
    shift = f._box_offset()
    g_edges = {
        Edge(_renamed(edge.tail, mapping, shift), _renamed(edge.head, mapping, shift), edge.labels)
        for edge in g.edges
    }
    return MeaningGraph(
        domain=f.domain * g.domain,
        codomain=f.codomain * g.codomain,
        edges=frozenset(set(f.edges) | g_edges),
        vertices=f.vertices + tuple((box_id + shift, label) for box_id, label in g.vertices),
        loops=f.loops + g.loops,
    )


def compose(g: MeaningGraph, f: MeaningGraph) -> MeaningGraph:
    r"""
    Returns `g ∘ f`, normalized: wires meeting at the shared middle row are fused (yanking),
    and the labels along each fused wire are concatenated in application order.
    """
    if f.codomain != g.domain:
        raise ValueError(f"Cannot compose: codomain {f.codomain.describe()} is not domain {g.domain.describe()}")

    middle = [("mid", i) for i in range(len(f.codomain))]
    f_mapping = {("cod", i): middle[i] for i in range(len(f.codomain))}
    g_mapping = {("dom", i): middle[i] for i in range(len(g.domain))}
    shift = f._box_offset()
    edges = [Edge(_renamed(e.tail, f_mapping, 0), _renamed(e.head, f_mapping, 0), e.labels) for e in f.edges]
    edges += [Edge(_renamed(e.tail, g_mapping, shift), _renamed(e.head, g_mapping, shift), e.labels) for e in g.edges]
    loops = list(f.loops + g.loops)

    for point in middle:
        incoming = next(edge for edge in edges if edge.head == point)
        outgoing = next(edge for edge in edges if edge.tail == point)
        edges.remove(incoming)
        if incoming is outgoing:
            loops.append(normalize_labels(incoming.labels))
            continue
        edges.remove(outgoing)
        edges.append(Edge(incoming.tail, outgoing.head, incoming.labels + outgoing.labels))

    return MeaningGraph(
        domain=f.domain,
        codomain=g.codomain,
        edges=frozenset(Edge(e.tail, e.head, normalize_labels(e.labels)) for e in edges),
        vertices=f.vertices + tuple((box_id + shift, label) for box_id, label in g.vertices),
        loops=tuple(loops),
    )


def name_graph(entry: LexiconEntry) -> MeaningGraph:
    r"""
    The name `I -> T` of a word's lexical morphism, as a graph whose codomain is the word's type.
    """
    t = entry.type
    principal = entry.principal
    label = BoxLabel(name=entry.binding.name, word=entry.word, kind=entry.binding.kind)
    edges = set()
    vertices: Tuple[Tuple[int, BoxLabel], ...] = ()
    output = ("cod", principal.output)
    if len(principal.inputs) == 0:
        edges.add(Edge(None, output, (label,)))
    elif len(principal.inputs) == 1:
        edges.add(Edge(("cod", principal.inputs[0]), output, (label,)))
    else:
        vertices = ((0, label),)
        for port, index in enumerate(principal.inputs):
            edges.add(Edge(("cod", index), ("box", 0, port)))
        edges.add(Edge(("box", 0, -1), output))
    for box in entry.boxes[1:]:
        source, target = box.inputs[0], box.output
        edges.add(Edge(("cod", source), ("cod", target), normalize_labels((Coercion(t[source].base, t[target].base),))))
    return MeaningGraph(domain=UNIT, codomain=t, edges=frozenset(edges), vertices=vertices)


def reduction_graph(types: Sequence[Type], r: Reduction) -> MeaningGraph:
    r"""The reduction `T1 ⊗ ... ⊗ Tn -> target` as a graph: one wire per link, plus the survivor's wire."""
    flat = flatten(types)
    target = SimpleType(r.target, 0)
    edges = {_wire(("dom", i), flat[i], ("dom", j), flat[j]) for i, j in r.links}
    edges.add(_wire(("dom", r.survivor), flat[r.survivor], ("cod", 0), target))
    return MeaningGraph(domain=Type(flat), codomain=Type((target,)), edges=frozenset(edges))


def meaning_expression(words: Sequence[LexiconEntry], r: Reduction, poset: Poset) -> MeaningGraph:
    r"""
    Returns the normal graph of `r ∘ (word_1 ⊗ ... ⊗ word_n)`.

    Reference: for "no triangles are blue" the sentence wire reads `not ∘ are ∘ blue ∘ in_{c2,n} ∘ triangles`.
    """
    types = [entry.type for entry in words]
    r.validate(flatten(types), poset)
    words_graph = reduce(tensor, (name_graph(entry) for entry in words), identity(UNIT))
    graph = compose(reduction_graph(types, r), words_graph)
    if graph.loops:
        raise ParseError(f"Meaning graph has {len(graph.loops)} closed loop(s); it cannot be normalized to links")
    return graph

