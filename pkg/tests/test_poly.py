import pytest
from hypothesis import given, settings
import hypothesis.strategies as st
import sympy
from sympy import Poly, expand, symbols

from src.errors import ZeroAxialValueError
from src.exact import IntMatrix, RatMatrix, to_rat
from src.poly import (
    LinearForm,
    cohomology_ring,
    divides_linear,
    from_coefficients,
    homogeneous_degree,
    is_integral_poly,
    monomials,
    render,
    sym_power_matrix,
)

entries = st.integers(min_value=-5, max_value=5)
two_by_two = st.lists(st.lists(entries, min_size=2, max_size=2), min_size=2, max_size=2)


def test_monomials_count_and_degree():
    mons = monomials(3, 2)
    assert len(mons) == 6
    assert all(sum(m) == 2 for m in mons)
    assert mons[0] == (2, 0, 0)


def test_render_is_canonical():
    ring = cohomology_ring(3)
    e1, e2, e3 = ring.gens
    p = e1 ** 2 * e2 * 3 - e3 * to_rat("1/2")
    assert render(p) == "3*e1^2*e2 - 1/2*e3"
    assert render(ring.zero) == "0"
    assert render(-e1) == "-e1"


def test_homogeneous_degree_and_integrality():
    ring = cohomology_ring(2)
    e1, e2 = ring.gens
    assert homogeneous_degree(e1 * e2 + e2 ** 2) == 2
    assert homogeneous_degree(ring.zero) is None
    assert is_integral_poly(e1 * 4)
    assert not is_integral_poly(e1 * to_rat("1/3"))


def test_linear_form_rtilde_and_parallelism():
    form = LinearForm.of(["1/2", "1/3"])
    assert form.rtilde() == 6
    assert form.integral_coefficients() == (3, 2)
    assert LinearForm.of([2, 4]).ratio_to(LinearForm.of([1, 2])) == to_rat(2)
    assert LinearForm.of([1, 0]).ratio_to(LinearForm.of([0, 1])) is None
    assert form.render() == "1/2*e1 + 1/3*e2"


def test_divides_linear_integral_and_rational():
    ring = cohomology_ring(2)
    e1, e2 = ring.gens
    two_e1 = LinearForm.of([2, 0])
    assert divides_linear(two_e1, e1 ** 2 * 2) == e1
    assert divides_linear(two_e1, e1 ** 2) is None
    assert divides_linear(two_e1, e1 ** 2, integral=False) == e1 * to_rat("1/2")
    assert divides_linear(LinearForm.of([1, -1]), e1 ** 2 - e2 ** 2) == e1 + e2
    assert divides_linear(LinearForm.of([1, 0]), e2) is None
    with pytest.raises(ZeroAxialValueError):
        divides_linear(LinearForm.of([0, 0]), e1)


def test_sym_power_degree_one_is_identity_homomorphism():
    m = RatMatrix.from_rows([[1, 2], [3, 4]])
    assert sym_power_matrix(1, m) == m


def _substitution_oracle(n, rows):
    r, s = symbols("r s")
    (a, b), (c, d) = rows
    result = []
    for alpha in range(n + 1):
        p = Poly(expand((a * r + b * s) ** (n - alpha) * (c * r + d * s) ** alpha), r, s)
        result.append([int(p.coeff_monomial(r ** (n - beta) * s ** beta)) for beta in range(n + 1)])
    return result


@settings(max_examples=100)
@given(two_by_two)
def test_sym_power_cube_matches_substitution(rows):
    matrix = sym_power_matrix(3, RatMatrix.from_rows(rows))
    assert matrix.to_int().tolist() == _substitution_oracle(3, rows)


@settings(max_examples=100)
@given(two_by_two, two_by_two, st.integers(min_value=1, max_value=4))
def test_sym_power_is_multiplicative(a, b, n):
    left = RatMatrix.from_rows(a)
    right = RatMatrix.from_rows(b)
    product = RatMatrix.from_int(IntMatrix.from_rows(a) @ IntMatrix.from_rows(b))
    assert sym_power_matrix(n, product) == sym_power_matrix(n, left) @ sym_power_matrix(n, right)


def test_sym_power_with_zero_rows():
    assert sym_power_matrix(2, RatMatrix.from_rows([[1, 2], [0, 0]])).to_int().tolist() == [
        [1, 4, 4], [0, 0, 0], [0, 0, 0]]
    assert sym_power_matrix(1, RatMatrix.from_rows([[0, 0], [3, 4]])).to_int().tolist() == [[0, 0], [3, 4]]
    assert sym_power_matrix(3, RatMatrix.from_rows([[0, 0], [0, 0]])).to_int().tolist() == [[0] * 4] * 4


def linear_and_polynomial(degree):
    """A nonzero integral linear form and an integral polynomial of the given degree."""
    return st.integers(2, 3).flatmap(lambda k: st.tuples(
        st.lists(entries, min_size=k, max_size=k).filter(any),
        st.lists(entries, min_size=len(monomials(k, degree)), max_size=len(monomials(k, degree)))))


@given(linear_and_polynomial(2))
def test_divides_linear_recovers_the_cofactor(case):
    coeffs, vector = case
    ell = LinearForm.of(coeffs)
    ring = cohomology_ring(ell.k)
    q = from_coefficients(ring, 2, vector)
    assert divides_linear(ell, ell.to_poly(ring) * q) == q
    assert divides_linear(ell, ell.to_poly(ring) * q, integral=False) == q


def _vanishes_on_hyperplane(coeffs, f):
    ring = f.ring
    variables = ring.symbols
    j = next(i for i, c in enumerate(coeffs) if c)
    pivot = -sum(c * x for i, (c, x) in enumerate(zip(coeffs, variables)) if i != j) / sympy.Integer(coeffs[j])
    return expand(f.as_expr().subs(variables[j], pivot)) == 0


@given(linear_and_polynomial(2), linear_and_polynomial(1), st.booleans())
def test_divides_linear_matches_hyperplane_vanishing(case, other, multiple):
    coeffs, vector = case
    ell = LinearForm.of(coeffs)
    ring = cohomology_ring(ell.k)
    f = from_coefficients(ring, 2, vector)
    if multiple:
        cofactor = (other[1] + [0, 0, 0])[:ell.k]
        f = ell.to_poly(ring) * from_coefficients(ring, 1, cofactor)
    assert (divides_linear(ell, f, integral=False) is not None) == _vanishes_on_hyperplane(coeffs, f)
