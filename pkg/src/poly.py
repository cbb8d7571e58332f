"""
Polynomials modelling H*(BT^k): sympy sparse polynomial rings over QQ in
variables e1..ek with graded lexicographic order.

Integral polynomials live in the same QQ ring; integrality is a property
of the coefficients, checked with `is_integral_poly`.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Any, Iterable, Optional, Sequence, Tuple

from sympy.polys.domains import QQ
from sympy.polys.orderings import grlex, lex
from sympy.polys.rings import PolyElement, PolyRing

from src.errors import DimensionMismatchError, ZeroAxialValueError
from src.exact import (
    RatMatrix,
    Rat,
    content,
    denominator_lcm,
    format_rat,
    is_integer,
    numerator,
    to_rat,
)

_logger = logging.getLogger(__name__)

Monomial = Tuple[int, ...]


@lru_cache(maxsize=None)
def cohomology_ring(k: int) -> PolyRing:
    """QQ[e1, ..., ek] with grlex order."""
    if k < 1:
        raise DimensionMismatchError(f"Torus rank must be positive, got {k}.")
    return PolyRing(",".join(f"e{i}" for i in range(1, k + 1)), QQ, grlex)


@lru_cache(maxsize=None)
def monomials(k: int, d: int) -> Tuple[Monomial, ...]:
    """Exponent vectors of total degree d in k variables, descending."""
    result = []
    for combo in combinations_with_replacement(range(k), d):
        exps = [0] * k
        for i in combo:
            exps[i] += 1
        result.append(tuple(exps))
    return tuple(sorted(result, reverse=True))


def coefficient_vector(p: PolyElement, d: int) -> Tuple[Rat, ...]:
    """Coefficients of a homogeneous degree-d polynomial over monomials(k, d)."""
    basis = monomials(p.ring.ngens, d)
    stray = [m for m in p.keys() if sum(m) != d]
    if stray:
        raise ValueError(f"Polynomial is not homogeneous of degree {d}: {render(p)}")
    return tuple(p.get(m, QQ.zero) for m in basis)


def from_coefficients(ring: PolyRing, d: int, vector: Sequence[Any]) -> PolyElement:
    basis = monomials(ring.ngens, d)
    if len(vector) != len(basis):
        raise DimensionMismatchError(f"Expected {len(basis)} coefficients, got {len(vector)}.")
    return ring.from_dict({m: to_rat(c) for m, c in zip(basis, vector) if c})


def homogeneous_degree(p: PolyElement) -> Optional[int]:
    """Common total degree of the terms; None for the zero polynomial."""
    degrees = {sum(m) for m in p.keys()}
    if not degrees:
        return None
    if len(degrees) > 1:
        raise ValueError(f"Polynomial is not homogeneous: {render(p)}")
    return degrees.pop()


def is_integral_poly(p: PolyElement) -> bool:
    return all(is_integer(c) for c in p.values())


def poly_denominator(p: PolyElement) -> int:
    """Least positive integer making every coefficient of p integral."""
    return denominator_lcm(p.values())


def render(p: PolyElement) -> str:
    """Canonical text, e.g. "3*e1^2*e2 - 1/2*e3"."""
    if not p:
        return "0"
    names = [str(s) for s in p.ring.symbols]
    pieces = []
    for monom, coeff in p.terms():
        negative = coeff < 0
        magnitude = -coeff if negative else coeff
        factors = [name if e == 1 else f"{name}^{e}" for name, e in zip(names, monom) if e]
        if not factors:
            body = format_rat(magnitude)
        elif magnitude == 1:
            body = "*".join(factors)
        else:
            body = format_rat(magnitude) + "*" + "*".join(factors)
        pieces.append((negative, body))
    first_negative, first_body = pieces[0]
    text = ("-" if first_negative else "") + first_body
    for negative, body in pieces[1:]:
        text += (" - " if negative else " + ") + body
    return text


@dataclass(frozen=True)
class LinearForm:
    """Element of H^2(BT^k; Q) in the dual basis e1..ek."""

    coeffs: Tuple[Rat, ...]

    @classmethod
    def of(cls, values: Iterable[Any]) -> "LinearForm":
        return cls(tuple(to_rat(v) for v in values))

    @property
    def k(self) -> int:
        return len(self.coeffs)

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __add__(self, other: "LinearForm") -> "LinearForm":
        self._check(other)
        return LinearForm(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "LinearForm") -> "LinearForm":
        self._check(other)
        return LinearForm(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "LinearForm":
        return LinearForm(tuple(-a for a in self.coeffs))

    def scaled(self, factor: Any) -> "LinearForm":
        c = to_rat(factor)
        return LinearForm(tuple(c * a for a in self.coeffs))

    def _check(self, other: "LinearForm") -> None:
        if other.k != self.k:
            raise DimensionMismatchError(f"Linear forms in {self.k} and {other.k} variables.")

    def rtilde(self) -> int:
        """Least positive integer r with r * self integral."""
        if self.is_zero:
            raise ZeroAxialValueError("Zero axial value has no integral scaling.")
        return denominator_lcm(self.coeffs)

    def integral_coefficients(self) -> Tuple[int, ...]:
        """Coefficients of rtilde() * self as ints."""
        r = self.rtilde()
        return tuple(numerator(r * c) for c in self.coeffs)

    def is_integral(self) -> bool:
        return all(is_integer(c) for c in self.coeffs)

    def ratio_to(self, other: "LinearForm") -> Optional[Rat]:
        """c with self = c * other, or None when the forms are not parallel."""
        self._check(other)
        j = next((i for i, b in enumerate(other.coeffs) if b != 0), None)
        if j is None:
            return None
        c = self.coeffs[j] / other.coeffs[j]
        if all(a == c * b for a, b in zip(self.coeffs, other.coeffs)):
            return c
        return None

    def to_poly(self, ring: Optional[PolyRing] = None) -> PolyElement:
        ring = ring or cohomology_ring(self.k)
        return ring.from_dict({tuple(int(i == j) for i in range(self.k)): c
                               for j, c in enumerate(self.coeffs) if c})

    def render(self) -> str:
        return render(self.to_poly())

    def to_strings(self) -> list:
        return [format_rat(c) for c in self.coeffs]


def divides_linear(ell: LinearForm, f: PolyElement, integral: bool = True) -> Optional[PolyElement]:
    """Quotient q with f = ell * q, or None.

    In integral mode ell must have integer coefficients and q must come out
    integral: f is divided by the primitive part of ell over QQ (zero
    remainder required), then every coefficient must be divisible by the
    content of ell.
    """
    if ell.is_zero:
        raise ZeroAxialValueError("Division by the zero linear form.")
    ring = cohomology_ring(ell.k)
    if f.ring != ring:
        f = f.set_ring(ring)
    if not integral:
        q, remainder = f.div(ell.to_poly(ring))
        return None if remainder else q
    if not ell.is_integral():
        raise ValueError(f"Integral division needs an integral modulus, got {ell.render()}.")
    ints = [numerator(c) for c in ell.coeffs]
    g = content(ints)
    primitive = LinearForm.of(x // g for x in ints)
    q, remainder = f.div(primitive.to_poly(ring))
    if remainder:
        return None
    q = q.mul_ground(QQ(1, g))
    if not is_integral_poly(q):
        return None
    return q


def sym_power_matrix(n: int, matrix: RatMatrix) -> RatMatrix:
    """Matrix of the degree-n symmetric power of a 2x2 matrix.

    Row alpha holds the coefficients of (a r + b s)^(n - alpha) (c r + d s)^alpha
    in the ordered basis r^n, r^(n-1) s, ..., s^n.
    """
    if n < 1:
        raise ValueError(f"Symmetric power degree must be positive, got {n}.")
    if matrix.shape != (2, 2):
        raise DimensionMismatchError(f"Symmetric power needs a 2x2 matrix, got {matrix.shape}.")
    binary = PolyRing("r,s", QQ, lex)
    r, s = binary.gens
    (a, b), (c, d) = matrix.rows
    first, second = r * a + s * b, r * c + s * d
    # sympy refuses 0**0, so zero exponents contribute the unit
    first_powers, second_powers = [binary.one], [binary.one]
    for _ in range(n):
        first_powers.append(first_powers[-1] * first)
        second_powers.append(second_powers[-1] * second)
    rows = []
    for alpha in range(n + 1):
        p = first_powers[n - alpha] * second_powers[alpha]
        rows.append([p.get((n - beta, beta), QQ.zero) for beta in range(n + 1)])
    return RatMatrix.from_rows(rows, n + 1)
