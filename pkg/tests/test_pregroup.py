import pytest

from pregsem.lib.errors import LexiconError, ParseError, PosetError, TypeSyntaxError
from pregsem.lib.pregroup import (
    LexicalMorphism,
    Poset,
    Reduction,
    Side,
    SimpleType,
    Type,
    UNIT,
    adjoint,
    cap,
    compose,
    contractible,
    cup,
    find_reductions,
    flatten,
    identity,
    lexical_morphism,
    load_lexicon,
    load_poset,
    meaning_expression,
    name_graph,
    parse_sentence,
    parse_type,
    reduction_graph,
    tensor,
)
from pregsem.lib.Session import Session


@pytest.fixture
def chips():
    return Session.load()


def test_load_poset_takes_reflexive_transitive_closure():
    poset = load_poset("# comment\nc2 <= n2\nn2 <= n\n\ns\n")
    assert poset.leq("c2", "n")
    assert poset.leq("s", "s")
    assert not poset.leq("n", "c2")
    assert "s" in poset


def test_load_poset_rejects_cycles_and_garbage():
    with pytest.raises(PosetError):
        load_poset("a <= b\nb <= a\n")
    with pytest.raises(PosetError):
        load_poset("a^l <= b\n")
    with pytest.raises(PosetError):
        load_poset("this is not a statement\n")


def test_parse_type_round_trips_through_str():
    poset = Poset.from_pairs([], elements=("n", "s"))
    t = parse_type("n^r s n^ll", poset)
    assert t.factors == (SimpleType("n", 1), SimpleType("s", 0), SimpleType("n", -2))
    assert parse_type(str(t), poset) == t
    assert parse_type("", poset) == UNIT
    assert UNIT.describe() == "I"


def test_parse_type_errors():
    poset = Poset.from_pairs([], elements=("n",))
    with pytest.raises(TypeSyntaxError):
        parse_type("q", poset)
    with pytest.raises(TypeSyntaxError):
        parse_type("n^x", poset)
    with pytest.raises(TypeSyntaxError):
        parse_type("n^lr", poset)


def test_adjoints():
    n = SimpleType("n")
    assert n.left.right == n
    assert n.right.left == n
    assert str(n.right.right) == "n^rr"
    t = Type((SimpleType("n"), SimpleType("s", -1)))
    # (a b)^r = b^r a^r
    assert t.right == Type((SimpleType("s", 0), SimpleType("n", 1)))
    assert t.left.right == t


def test_find_reductions_no_triangles_are_blue(chips):
    parses = chips.parse("no triangles are blue", "s")
    assert len(parses) == 1
    reduction = parses[0].reduction
    assert reduction.links == ((1, 6), (2, 5), (3, 4), (7, 10), (8, 9))
    assert reduction.survivor == 0
    assert reduction.target == "s"
    diagram = reduction.diagram(flatten(parses[0].types))
    assert "links: 2-7 3-6 4-5 8-11 9-10" in diagram
    assert diagram.endswith("survivor: 1 -> s")


def test_find_reductions_single_word_has_no_links(chips):
    parses = chips.parse("triangles", "c2")
    assert len(parses) == 1
    assert parses[0].reduction.links == ()
    assert "links: none" in parses[0].reduction.diagram(flatten(parses[0].types))


def test_find_reductions_target_none_reports_the_survivor_base(chips):
    (parse,) = chips.parse("triangles", None)
    assert parse.reduction.target == "c2"


def test_ungrammatical_and_unknown_words(chips):
    assert chips.parse("blue no", "s") == []
    with pytest.raises(ParseError):
        chips.parse("no unicorns are blue", "s")


def test_find_reductions_limit():
    poset = Poset.from_pairs([], elements=("n",))
    n = SimpleType("n")
    # n n^l n n^r n reduces with either end surviving
    types = [Type((n, n.left, n, n.right, n))]
    reductions = find_reductions(types, "n", poset)
    assert [r.survivor for r in reductions] == [4, 0]
    assert find_reductions(types, "n", poset, limit=1) == reductions[:1]
    with pytest.raises(ValueError):
        find_reductions(types, "n", poset, limit=0)


def test_reduction_validate_rejects_bad_link_sets():
    poset = Poset.from_pairs([], elements=("n",))
    n = SimpleType("n")
    flat = (n, n.right, n, n.right, n)
    Reduction(links=((0, 1), (2, 3)), survivor=4, target="n").validate(flat, poset)
    with pytest.raises(ParseError):
        Reduction(links=((0, 1),), survivor=4, target="n").validate(flat, poset)  # position 2 and 3 unused
    with pytest.raises(ParseError):
        Reduction(links=((0, 3), (1, 2)), survivor=4, target="n").validate(flat, poset)  # n^r n does not contract
    with pytest.raises(ParseError):
        Reduction(links=((0, 1), (2, 3)), survivor=4, target="s").validate(flat, poset)


def test_reduction_survivor_cannot_be_enclosed():
    poset = Poset.from_pairs([], elements=("n", "s"))
    n = SimpleType("n")
    flat = (n, SimpleType("s"), n.right)
    assert find_reductions([Type(flat)], "s", poset) == []
    with pytest.raises(ParseError):
        Reduction(links=((0, 2),), survivor=1, target="s").validate(flat, poset)


def test_lexicon_requires_a_single_output_without_boxes():
    poset = Poset.from_pairs([], elements=("n", "s"))
    with pytest.raises(LexiconError):
        load_lexicon("word\ttype\tkind\tname\nodd\tn s\tvector\todd\n", poset)
    with pytest.raises(LexiconError):
        load_lexicon("word\ttype\tkind\tname\nbad\tn\tsomething\tbad\n", poset)
    with pytest.raises(LexiconError):
        load_lexicon("word\ttype\tkind\tname\nempty\tn\t\tempty\n", poset)


def test_lexicon_entries_for_and_json_format(chips):
    assert [entry.word for entry in chips.lexicon.entries_for("are")] == ["are"]
    text = '[{"word": "runs", "type": "n^r s", "kind": "predicate", "name": "run"}]'
    lexicon = load_lexicon(text, Poset.from_pairs([], elements=("n", "s")), file_format="json")
    assert lexicon[0].principal.output == 1
    assert lexicon[0].principal.inputs == (0,)


def test_yanking_and_cap_over_cup():
    t = SimpleType("n")
    one = identity(Type((t,)))
    assert compose(tensor(cup(t), one), tensor(one, cap(t))) == one
    other_order = compose(tensor(one, cap(t)), tensor(cup(t), one))
    assert other_order != identity(Type((t, t.right, t)))


def test_compose_checks_types():
    n, s = SimpleType("n"), SimpleType("s")
    with pytest.raises(ValueError):
        compose(identity(Type((n,))), identity(Type((s,))))


def test_meaning_expression_chain(chips):
    (parse,) = chips.parse("no triangles are blue", "s")
    graph = meaning_expression(parse.entries, parse.reduction, chips.poset)
    assert graph.is_normal()
    assert graph.domain == UNIT
    assert graph.edge_into(("cod", 0)).composite == "not ∘ are ∘ blue ∘ in_{c2,n} ∘ triangles"
    assert graph.chains() == ["const -> cod:0: not ∘ are ∘ blue ∘ in_{c2,n} ∘ triangles"]


def test_parse_sentence_tries_every_entry_combination():
    poset = load_poset("n_sub\nn_ob\ns\n")
    text = (
        "word\ttype\tkind\tname\n"
        "cats\tn_sub\tvector\tcats\n"
        "cats\tn_ob\tvector\tcats\n"
        "dogs\tn_sub\tvector\tdogs\n"
        "dogs\tn_ob\tvector\tdogs\n"
        "chase\tn_sub^r s n_ob^l\trelation\tchase\n"
    )
    lexicon = load_lexicon(text, poset)
    (parse,) = parse_sentence("cats chase dogs", lexicon, "s", poset)
    assert [str(t) for t in parse.types] == ["n_sub", "n_sub^r s n_ob^l", "n_ob"]


def test_contractible_follows_the_order_and_the_parity():
    poset = Poset.from_pairs([("c2", "n")], elements=("n", "c2", "s"))
    c2, n = SimpleType("c2"), SimpleType("n")
    assert contractible(c2, n.right, poset)
    assert not contractible(n, c2.right, poset)
    # for an odd left exponent the order flips: n^l c2 needs c2 <= n
    assert contractible(n.left, c2, poset)
    assert not contractible(c2.left, n, poset)
    assert not contractible(n, n, poset)
    assert adjoint(n, Side.left) == n.left
    assert adjoint(n, Side.right) == n.right


def test_lexical_morphism_of_a_word_with_boxes(chips):
    (are,) = chips.lexicon.entries_for("are")
    assert lexical_morphism(are) == LexicalMorphism(inputs=("gp",), output="s", label="are")
    (new,) = chips.lexicon.entries_for("new")
    assert lexical_morphism(new) == LexicalMorphism(inputs=("c2",), output="n2", label="new")
    (blue,) = chips.lexicon.entries_for("blue")
    assert lexical_morphism(blue) == LexicalMorphism(inputs=("n",), output="gp", label="blue")
    (triangles,) = chips.lexicon.entries_for("triangles")
    assert lexical_morphism(triangles) == LexicalMorphism(inputs=(), output="c2", label="triangles")


def test_name_and_reduction_graphs(chips):
    (triangles,) = chips.lexicon.entries_for("triangles")
    name = name_graph(triangles)
    assert name.domain == UNIT
    assert name.codomain == triangles.type
    (parse,) = chips.parse("no triangles are blue", "s")
    graph = reduction_graph(parse.types, parse.reduction)
    assert len(graph.domain.factors) == 11
    assert graph.codomain == Type((SimpleType("s"),))
    assert len(graph.edges) == 6
