"""Hypothesis strategies for small words and presentations."""

from hypothesis import strategies as st

from hbg.presentation import Presentation, Relation
from hbg.word import Alphabet, Word

NAMES = ("a", "b", "c")


def letters(names, max_len):
    return st.lists(st.tuples(st.sampled_from(names), st.sampled_from((1, -1))), max_size=max_len)


def words(names=NAMES, max_len=8, alphabet=None):
    return letters(names, max_len).map(lambda ls: Word(ls, alphabet))


@st.composite
def presentations(draw, max_gens=3, max_rels=4, max_len=6, min_gens=1):
    k = draw(st.integers(min_gens, max_gens))
    names = NAMES[:k]
    alphabet = Alphabet(names)
    rels = draw(st.lists(letters(names, max_len), max_size=max_rels))
    return Presentation(alphabet, [Relation(f"R{i}", Word(r, alphabet)) for i, r in enumerate(rels)])


def int_matrices(max_rows=4, max_cols=4, bound=6):
    return st.integers(1, max_cols).flatmap(
        lambda n: st.lists(st.lists(st.integers(-bound, bound), min_size=n, max_size=n),
                           max_size=max_rows).map(lambda rows: (rows, n)))
