import pytest
from hypothesis import given
import hypothesis.strategies as st

from src.errors import DimensionMismatchError, InputFormatError
from src.exact import (
    IntegerLattice,
    IntMatrix,
    RatMatrix,
    format_rat,
    is_integer,
    hnf,
    kernel,
    lattice_intersection,
    rational_preimage_lattice,
    saturation,
    snf_rank_and_torsion,
    to_rat,
)

small = st.integers(min_value=-6, max_value=6)


def matrices(max_rows=4, max_cols=4):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)))


def test_to_rat_parses_fraction_strings():
    assert to_rat("3/6") == to_rat(1) / 2
    assert format_rat(to_rat("-4/2")) == "-2"
    assert format_rat(to_rat("-3/9")) == "-1/3"


@pytest.mark.parametrize("bad", ["abc", True, None])
def test_to_rat_rejects_non_rationals(bad):
    with pytest.raises(InputFormatError):
        to_rat(bad)


def test_hnf_small_example():
    lattice = IntegerLattice.span([[2, 4], [1, 3]], 2)
    assert lattice.tolist() == [[1, 1], [0, 2]]
    assert lattice.index() == 2


@given(matrices())
def test_hnf_transform_and_left_kernel(rows):
    m = IntMatrix.from_rows(rows)
    h, u = hnf(m)
    r = h.nrows
    if r:
        assert IntMatrix(u.rows[:r], u.ncols) @ m == h
    for row in u.rows[r:]:
        assert m.transpose().apply(row) == (0,) * m.ncols
    assert abs(u.det()) == 1
    assert r == m.to_sympy().rank()


@given(matrices())
def test_hnf_is_canonical(rows):
    h, _ = hnf(IntMatrix.from_rows(rows))
    pivots = [next(j for j, x in enumerate(row) if x) for row in h.rows]
    assert pivots == sorted(set(pivots))
    for i, (row, c) in enumerate(zip(h.rows, pivots)):
        assert row[c] > 0
        assert all(0 <= h.rows[above][c] < row[c] for above in range(i))
    # the basis of an HNF is its own HNF
    assert hnf(h)[0] == h


def test_kernel_of_a_row():
    k = kernel(IntMatrix.from_rows([[1, 2, 3]]))
    assert k.rank == 2
    for row in k.basis.rows:
        assert row[0] + 2 * row[1] + 3 * row[2] == 0
    assert k.contains([1, 1, -1])


def test_lattice_intersection_examples():
    two = IntegerLattice.span([[2]], 1)
    three = IntegerLattice.span([[3]], 1)
    assert lattice_intersection(two, three).tolist() == [[6]]
    first = IntegerLattice.span([[2, 0], [0, 1]], 2)
    second = IntegerLattice.span([[1, 0], [0, 3]], 2)
    assert first.intersection(second).tolist() == [[2, 0], [0, 3]]
    with pytest.raises(DimensionMismatchError):
        lattice_intersection(two, first)


@given(matrices(3, 3), matrices(3, 3))
def test_intersection_lies_in_both(a, b):
    n = min(len(a[0]), len(b[0]))
    first = IntegerLattice.span([row[:n] for row in a], n)
    second = IntegerLattice.span([row[:n] for row in b], n)
    both = lattice_intersection(first, second)
    assert both.is_sublattice_of(first)
    assert both.is_sublattice_of(second)
    if first.rank == n and second.rank == n:
        assert both.rank == n
        assert both.contains([first.index() * second.index() if i == 0 else 0 for i in range(n)])


def test_rational_preimage_of_halves_and_thirds():
    lattice = rational_preimage_lattice(RatMatrix.from_rows([["1/2", "1/3"]]))
    assert lattice.tolist() == [[2, 0], [0, 3]]
    assert not lattice.contains([1, -3])
    assert lattice.contains([2, 3])


def test_rational_preimage_of_integral_matrix_is_everything():
    assert rational_preimage_lattice(RatMatrix.from_rows([[1, 2], [3, 4]])).is_full


def test_saturation():
    assert saturation(IntegerLattice.span([[2, 4]], 2)).tolist() == [[1, 2]]
    assert saturation(IntegerLattice.span([[2, 0], [0, 3]], 2)).is_full


def test_smith_normal_form_divisors():
    assert snf_rank_and_torsion(IntMatrix.from_rows([[2, 4], [6, 8]])) == (2, [2, 4])
    assert snf_rank_and_torsion(IntMatrix.from_rows([[1, 2], [2, 4]])) == (1, [1])


def test_matrix_inverse_and_det():
    m = IntMatrix.from_rows([[-2, 0, 0], [-3, 1, 0], [-6, 0, 1]])
    assert m.det() == -2
    inv = m.inverse()
    assert (RatMatrix.from_int(m) @ inv).to_int() == IntMatrix.identity(3)
    assert not inv.is_integral()
    scaled, d = inv.scaled_to_integer()
    assert d == 2


fractions = st.builds(lambda p, q: f"{p}/{q}", small, st.integers(1, 6))


@given(st.integers(1, 3).flatmap(
    lambda c: st.tuples(
        st.lists(st.lists(fractions, min_size=c, max_size=c), min_size=1, max_size=3),
        st.lists(st.lists(small, min_size=c, max_size=c), min_size=5, max_size=5))))
def test_rational_preimage_membership(case):
    rows, vectors = case
    matrix = RatMatrix.from_rows(rows)
    lattice = rational_preimage_lattice(matrix)
    assert lattice.rank == matrix.ncols
    for v in vectors:
        assert lattice.contains(v) == all(is_integer(x) for x in matrix.apply(v))
    # the common denominator times anything is a member
    _, d = matrix.scaled_to_integer()
    for v in vectors:
        assert lattice.contains([d * x for x in v])


@given(matrices(3, 3), matrices(3, 3))
def test_intersection_is_commutative_and_idempotent(a, b):
    n = min(len(a[0]), len(b[0]))
    first = IntegerLattice.span([row[:n] for row in a], n)
    second = IntegerLattice.span([row[:n] for row in b], n)
    assert lattice_intersection(first, second) == lattice_intersection(second, first)
    assert lattice_intersection(first, first) == first
