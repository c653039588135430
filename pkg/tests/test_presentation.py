import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hbg.abelian import invariants
from hbg.corpus import load
from hbg.errors import DuplicateGenerator, DuplicateLabel, GeneratorInTarget, ParseError, UnknownGenerator
from hbg.presentation import (Presentation, Relation, canonical_relator, canonicalize, equal_canonical,
                              parse_presentation, render, substitute_generator)
from hbg.word import Word, cyclic_reduce, invert, parse_word, rotations
from strategies import presentations


def test_genus1_text():
    p = parse_presentation("gens: a o\nrel: [a,o]\nrel: o^2")
    assert p.generators == ("a", "o")
    assert [str(r) for r in p.relators] == ["a o a^-1 o^-1", "o^2"]


def test_unknown_generator_in_relation():
    with pytest.raises(UnknownGenerator):
        parse_presentation("gens: a1 a2\nrel P7a: t * a1 = a2")


def test_equality_form():
    p = parse_presentation("gens: a1 a2 d o t r\nrel D2': o d o d = a1^2 a2^2")
    assert str(p.relation("D2'").relator) == "o d o d a2^-2 a1^-2"


def test_commuting_form():
    p = parse_presentation("gens: x y\nrel: x <-> y")
    assert p.relators == [parse_word("x y x^-1 y^-1")]


def test_comments_blank_lines_and_labels():
    text = "# header\n\ngens: a b   # two\nrel P2.5: a b = b a\nrel: a^3\n"
    p = parse_presentation(text)
    assert [r.label for r in p.relations] == ["P2.5", None]


@pytest.mark.parametrize("text, error", [
    ("gens: a a", DuplicateGenerator),
    ("gens: a\nrel x: a\nrel x: a^2", DuplicateLabel),
    ("rel: a", ParseError),
    ("gens: a\ngens: b", ParseError),
    ("gens: a\nrelx: a", ParseError),
    ("gens: a\nrel: a = a = a", ParseError),
    ("", ParseError),
])
def test_parse_errors(text, error):
    with pytest.raises(error):
        parse_presentation(text)


def test_parse_error_names_line():
    with pytest.raises(ParseError) as exc:
        parse_presentation("gens: a\nrel: a\nrel: a^", source="x.pres")
    assert exc.value.line == 3 and "x.pres" in str(exc.value)


def test_find_by_label_and_index():
    p = parse_presentation("gens: a\nrel first: a^2\nrel: a^3")
    assert p.find("first") == 0
    assert p.find("#1") == 1
    assert p.find(1) == 1


def test_canonicalize_strips_conjugation():
    p = parse_presentation("gens: a b\nrel: a b a^-1")
    assert canonicalize(p).relators == [parse_word("b", p.alphabet)]


def test_canonicalize_collapses_rotated_inverse():
    p = parse_presentation("gens: x y\nrel: x y\nrel: x^-1 y^-1")
    assert len(canonicalize(p).relations) == 1


def test_canonicalize_empty():
    p = Presentation(["a", "b"])
    q = canonicalize(p)
    assert q.generators == ("a", "b") and q.relations == ()


def test_canonicalize_drops_trivial_relators():
    p = parse_presentation("gens: a\nrel: a a^-1\nrel: a^2")
    assert len(canonicalize(p).relations) == 1


def test_canonical_letter_order_positive_first():
    p = Presentation(["a", "b"])
    w = parse_word("a^-1 b", p.alphabet)
    assert str(canonical_relator(w, p.alphabet)) == "a b^-1"


def test_equal_canonical_examples():
    p = load("simple_genus2.pres")
    assert equal_canonical(p, p)
    shuffled = list(p.relations)
    random.Random(3).shuffle(shuffled)
    assert equal_canonical(p, Presentation(p.alphabet, shuffled))
    renamed = Presentation(p.alphabet.renamed("r", "s"),
                           [Relation(x.label, x.relator.rename("r", "s")) for x in p.relations])
    assert not equal_canonical(p, renamed)


def test_substitute_to_empty_relator():
    p = parse_presentation("gens: d-2-1 d12\nrel: d-2-1 d12^-1")
    q = substitute_generator(p, "d-2-1", parse_word("d12", p.alphabet))
    assert q.generators == ("d12",) and q.relators == [Word()]


def test_substitute_identity():
    p = parse_presentation("gens: g h\nrel: g^3")
    q = substitute_generator(p, "g", Word())
    assert q.relators == [Word()]


def test_substitute_o2_into_p9():
    w = load("wajnryb_genus2.pres")
    value = w.word("(t d12^-1) * o")
    q = substitute_generator(w, "o2", value)
    assert "o2" not in q.generators
    expected = q.word("r^2 (a2^-4 ((t d12^-1) * o) d12 ((t d12^-1) * o) d12^-1)^-1")
    assert q.relation("P9").relator == expected


def test_substitute_errors():
    p = parse_presentation("gens: g h\nrel: g h")
    with pytest.raises(GeneratorInTarget):
        substitute_generator(p, "g", parse_word("h g", p.alphabet))
    with pytest.raises(UnknownGenerator):
        substitute_generator(p, "x", Word())


def test_substitution_from_relator_keeps_invariants():
    w = load("wajnryb_genus2.pres")
    value = w.word("a1^-1 a2^-1 o t o d12")
    before = invariants(w)
    after = invariants(substitute_generator(w.without_relation("D6"), "z", value))
    assert before == after


def test_render_round_trip_bundled():
    for name in ("wajnryb_genus2.pres", "simple_genus2.pres", "genus1.pres"):
        p = load(name)
        assert parse_presentation(render(p)) == p


# -- properties -----------------------------------------------------------

@given(presentations())
def test_render_round_trip(p):
    assert parse_presentation(render(p)) == p


@given(presentations())
def test_canonicalize_idempotent(p):
    once = canonicalize(p)
    assert canonicalize(once) == once


@given(presentations(), st.randoms(use_true_random=False))
def test_canonical_form_ignores_order_rotation_and_inversion(p, rnd):
    rels = []
    for r in p.relations:
        w = r.relator
        if w:
            core, _ = cyclic_reduce(w)
            rot, _ = rnd.choice(rotations(core))
            w = invert(rot) if rnd.random() < 0.5 else rot
        rels.append(Relation(r.label, w))
    rnd.shuffle(rels)
    assert equal_canonical(p, Presentation(p.alphabet, rels))


@given(presentations(), presentations(), presentations())
def test_equal_canonical_is_equivalence(p, q, r):
    assert equal_canonical(p, p)
    assert equal_canonical(p, q) == equal_canonical(q, p)
    if equal_canonical(p, q) and equal_canonical(q, r):
        assert equal_canonical(p, r)
