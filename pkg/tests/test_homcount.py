import pytest
from hypothesis import given
from hypothesis import strategies as st

from hbg.abelian import invariants
from hbg.corpus import load
from hbg.errors import HbgError, MissingAssignment, UnknownGroupName
from hbg.homcount import (BUILTIN_GROUPS, FiniteGroup, abelian_hom_count, builtin_group, count_homomorphisms,
                          count_homomorphisms_exhaustive, evaluate_word)
from hbg.presentation import Presentation, Relation, parse_presentation
from hbg.word import Word, parse_word
from strategies import presentations

ORDERS = {"C2": 2, "C3": 3, "C4": 4, "C2xC2": 4, "C5": 5, "C6": 6, "S3": 6, "D4": 8, "Q8": 8,
          "D5": 10, "A4": 12, "D6": 12, "S4": 24}
SMALL = [n for n in BUILTIN_GROUPS if ORDERS[n] <= 6]
ABELIAN = ["C2", "C3", "C4", "C2xC2", "C5", "C6"]


@pytest.mark.parametrize("name", BUILTIN_GROUPS)
def test_builtin_orders(name):
    g = builtin_group(name)
    assert g.order == ORDERS[name] and g.name == name
    assert g.is_abelian() == (name in ABELIAN)


def test_quaternion_structure():
    q = builtin_group("Q8")
    involutions = [x for x in range(8) if q.element_order(x) == 2]
    assert len(involutions) == 1
    for x in range(8):
        if q.element_order(x) == 4:
            assert q.power(x, 2) == involutions[0]


def test_element_orders_of_s4():
    s4 = builtin_group("S4")
    assert sorted(s4.element_order(x) for x in range(24)) == [1] + [2] * 9 + [3] * 8 + [4] * 6


def test_unknown_group():
    with pytest.raises(UnknownGroupName):
        builtin_group("Z7")


def test_bad_table_rejected():
    with pytest.raises(HbgError):
        FiniteGroup("bad", 2, ((0, 1), (1, 1)), 0, (0, 1))
    with pytest.raises(HbgError):
        # identity and inverses fine, not associative
        FiniteGroup("loop", 3, ((0, 1, 2), (1, 0, 0), (2, 2, 0)), 0, (0, 1, 2))


def test_evaluate_word_examples():
    s3 = builtin_group("S3")
    assert evaluate_word(Word(), {}, s3) == s3.identity
    inv = next(x for x in range(6) if s3.element_order(x) == 2)
    assert evaluate_word(parse_word("g^2"), {"g": inv}, s3) == s3.identity
    assert evaluate_word(parse_word("[x, y]"), {"x": inv, "y": inv}, s3) == s3.identity
    with pytest.raises(MissingAssignment):
        evaluate_word(parse_word("x y"), {"x": 0}, s3)


def test_count_examples():
    c2 = builtin_group("C2")
    assert count_homomorphisms(Presentation(["a", "b"]), c2) == 4
    genus1 = parse_presentation("gens: a o\nrel: [a,o]\nrel: o^2")
    assert count_homomorphisms(genus1, c2) == 4
    assert count_homomorphisms(Presentation([]), builtin_group("S4")) == 1


def test_count_pins_forced_generator():
    p = parse_presentation("gens: a b c\nrel: c = a b\nrel: a^2")
    s3 = builtin_group("S3")
    assert count_homomorphisms(p, s3) == count_homomorphisms_exhaustive(p, s3) == 4 * 6


@pytest.mark.parametrize("name", ["S3", "D4", "Q8", "A4", "S4"])
def test_genus2_counts_agree(name):
    g = builtin_group(name)
    assert count_homomorphisms(load("wajnryb_genus2.pres"), g) == count_homomorphisms(load("simple_genus2.pres"), g)


@pytest.mark.parametrize("name", ABELIAN)
def test_abelian_targets_match_snf(name):
    g = builtin_group(name)
    for file in ("wajnryb_genus2.pres", "simple_genus2.pres", "genus1.pres"):
        p = load(file)
        inv = invariants(p)
        assert count_homomorphisms(p, g) == abelian_hom_count(inv.free_rank, inv.torsion, g)


def test_workers_do_not_change_the_total():
    p = load("simple_genus2.pres")
    g = builtin_group("S3")
    assert count_homomorphisms(p, g, workers=2) == count_homomorphisms(p, g, workers=1) == 36


# -- properties -----------------------------------------------------------

@given(presentations(max_gens=2, max_rels=4, max_len=6), st.sampled_from(SMALL))
def test_pruned_equals_exhaustive(p, name):
    g = builtin_group(name)
    assert count_homomorphisms(p, g) == count_homomorphisms_exhaustive(p, g)


@given(presentations(), st.sampled_from(ABELIAN))
def test_abelian_formula(p, name):
    g = builtin_group(name)
    inv = invariants(p)
    assert count_homomorphisms(p, g) == abelian_hom_count(inv.free_rank, inv.torsion, g)


@given(presentations(), st.randoms(use_true_random=False))
def test_invariant_under_relator_order_and_renaming(p, rnd):
    g = builtin_group("S3")
    base = count_homomorphisms(p, g)
    rels = list(p.relations)
    rnd.shuffle(rels)
    assert count_homomorphisms(Presentation(p.alphabet, rels), g) == base
    renamed = p.alphabet.renamed(p.generators[0], "zz")
    moved = Presentation(renamed, [Relation(r.label, r.relator.rename(p.generators[0], "zz", renamed))
                                   for r in p.relations])
    assert count_homomorphisms(moved, g) == base
