import math

from hypothesis import given
from hypothesis import strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors

from hbg.abelian import (IntMatrix, abelianize, exponent_vector, hermite_rows, in_lattice, invariants,
                         smith_normal_form)
from hbg.corpus import load
from hbg.presentation import Presentation, parse_presentation
from strategies import int_matrices


def snf(rows, cols=None):
    return smith_normal_form(IntMatrix.from_rows(rows, cols))


def oracle(rows, cols):
    """(free_rank, torsion) from sympy's invariant factors."""
    if not rows:
        return cols, ()
    factors = [abs(int(d)) for d in invariant_factors(Matrix(rows), domain=ZZ)]
    nonzero = [d for d in factors if d != 0]
    return cols - len(nonzero), tuple(d for d in nonzero if d != 1)


def test_abelianize_genus1():
    m = abelianize(parse_presentation("gens: a o\nrel: [a,o]\nrel: o^2"))
    assert m.to_lists() == [[0, 0], [0, 2]]


def test_abelianize_odod_row():
    p = parse_presentation("gens: a1 a2 d o t r\nrel D2': o d o d = a1^2 a2^2")
    assert abelianize(p).to_lists() == [[-2, -2, 2, 2, 0, 0]]


def test_abelianize_no_relators():
    m = abelianize(Presentation(["a", "b"]))
    assert m.shape == (0, 2)


def test_diagonal_example():
    r = snf([[2, 0]], 2)
    assert r.torsion == (2,) and r.free_rank == 1


def test_genus1_invariants():
    r = invariants(parse_presentation("gens: a o\nrel: [a,o]\nrel: o^2"))
    assert str(r) == "free_rank=1 torsion=[2]"


def test_free_group():
    r = invariants(Presentation(["a", "b"]))
    assert r.free_rank == 2 and r.torsion == ()


def test_trivial_group():
    r = invariants(parse_presentation("gens: g\nrel: g"))
    assert r.is_trivial and str(r) == "free_rank=0 torsion=[]"


def test_genus2_presentations_agree():
    w = invariants(load("wajnryb_genus2.pres"))
    s = invariants(load("simple_genus2.pres"))
    assert w == s
    assert (w.free_rank, w.torsion) == (1, (2, 2))


def test_genus2_against_oracle():
    for name in ("wajnryb_genus2.pres", "simple_genus2.pres"):
        m = abelianize(load(name))
        r = smith_normal_form(m)
        assert (r.free_rank, r.torsion) == oracle(m.rows, m.cols)


def test_literal_variant_differs():
    r = invariants(load("wajnryb_genus2_literal.pres"))
    assert (r.free_rank, r.torsion) == (0, (2, 2))


def test_large_entries_stay_exact():
    big = 10 ** 30
    r = snf([[big, 0], [0, big * 3]], 2)
    assert r.torsion == (big, 3 * big)


def test_lattice_membership():
    basis = hermite_rows([[2, 0], [0, 3]], 2)
    assert in_lattice([4, -3], basis)
    assert not in_lattice([1, 0], basis)
    assert in_lattice([0, 0], [])
    assert not in_lattice([0, 1], [])


def test_exponent_vector():
    p = parse_presentation("gens: a b c\nrel: a b^2 a^-3")
    assert exponent_vector(p.relators[0], p.generators) == [-2, 2, 0]


# -- properties -----------------------------------------------------------

@given(int_matrices())
def test_matches_sympy(mat):
    rows, cols = mat
    r = snf(rows, cols)
    assert (r.free_rank, r.torsion) == oracle(rows, cols)


@given(int_matrices())
def test_divisibility_chain(mat):
    rows, cols = mat
    d = snf(rows, cols).diagonal
    assert all(x > 0 for x in d)
    assert all(b % a == 0 for a, b in zip(d, d[1:]))


@given(int_matrices(), st.randoms(use_true_random=False))
def test_invariant_under_permutation_and_negation(mat, rnd):
    rows, cols = mat
    base = snf(rows, cols)
    perm = list(range(cols))
    rnd.shuffle(perm)
    changed = [[row[j] for j in perm] for row in rows]
    changed = [[-x for x in row] if rnd.random() < 0.5 else row for row in changed]
    rnd.shuffle(changed)
    assert snf(changed, cols) == base


@given(st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-5, 5), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_determinant_is_product_of_factors(rows):
    det = abs(int(Matrix(rows).det()))
    r = snf(rows, len(rows))
    if det:
        assert r.free_rank == 0 and math.prod(r.diagonal) == det
    else:
        assert r.free_rank > 0


@given(int_matrices(), st.lists(st.integers(-3, 3), max_size=4))
def test_lattice_membership_of_combinations(mat, coeffs):
    rows, cols = mat
    basis = hermite_rows(rows, cols)
    combo = [sum(c * row[j] for c, row in zip(coeffs, rows)) for j in range(cols)]
    assert in_lattice(combo, basis)
