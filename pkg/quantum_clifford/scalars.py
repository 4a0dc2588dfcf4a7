"""
Exact scalars: rational functions in u = q^(1/D) over the rationals.

Every scalar of a computation lives in one field Q(u). The integer D is fixed by
the root system so that all exponents of q that occur (weight pairings and the
half-sums entering commutors) are integer powers of u.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

import numpy as np
from sympy import QQ, integer_nthroot, sympify
from sympy.polys.domains import Domain
from sympy.polys.fields import FracElement, FracField
from sympy.polys.matrices import DomainMatrix
from sympy.polys.rings import PolyElement

from quantum_clifford.exceptions import (
    DivisionByZero,
    ExponentDenominatorMismatch,
    PoleAtParameter,
)

logger = logging.getLogger(__name__)

FieldElement = FracElement
Rational = Fraction | int


@lru_cache(maxsize=None)
def _rational_function_field(variable: str) -> FracField:
    return FracField((variable,), QQ)


@dataclass(frozen=True)
class ScalarContext:
    """
    The field Q(u) with u = q^(1/D).

    Attributes:
        D: common denominator of all q-exponents used in one computation
        variable: display name of u
    """

    D: int = 1
    variable: str = "u"

    def __post_init__(self):
        if not isinstance(self.D, int) or self.D < 1:
            raise ValueError(f"D must be a positive integer, got {self.D!r}")

    @cached_property
    def field(self) -> FracField:
        return _rational_function_field(self.variable)

    @cached_property
    def domain(self) -> Domain:
        """The sympy domain used for DomainMatrix computations."""
        return self.field.to_domain()

    @property
    def u(self) -> FieldElement:
        return self.field.gens[0]

    @property
    def zero(self) -> FieldElement:
        return self.field.zero

    @property
    def one(self) -> FieldElement:
        return self.field.one

    def __str__(self):
        return f"Q({self.variable}), {self.variable} = q^(1/{self.D})"

    # construction

    def element(self, value: "FieldElement | Rational") -> FieldElement:
        """Coerce an integer, Fraction or field element into the field."""
        if isinstance(value, FracElement):
            return value
        if isinstance(value, Fraction):
            return self.field(QQ(value.numerator, value.denominator))
        return self.field(QQ(value))

    def q_power(self, exponent: Rational = 1) -> FieldElement:
        """
        q^r as a field element.

        Raises:
            ExponentDenominatorMismatch: if r*D is not an integer
        """
        scaled = Fraction(exponent) * self.D
        if scaled.denominator != 1:
            raise ExponentDenominatorMismatch(
                f"q^{exponent} is not a power of u = q^(1/{self.D})",
                {"exponent": exponent, "D": self.D},
            )
        return self.u ** int(scaled)

    def qnum(self, n: int, d: int = 1) -> FieldElement:
        """The quantum integer [n] in the variable q^d."""
        if n < 0:
            return -self.qnum(-n, d)
        v = self.D * d
        return sum((self.u ** (v * (n - 1 - 2 * k)) for k in range(n)), self.zero)

    @lru_cache(maxsize=256)  # noqa: B019
    def qfact(self, n: int, d: int = 1) -> FieldElement:
        """[n]! in the variable q^d."""
        result = self.one
        for k in range(1, n + 1):
            result = result * self.qnum(k, d)
        return result

    def qbinom(self, n: int, k: int, d: int = 1) -> FieldElement:
        """The Gaussian binomial [n choose k] in the variable q^d."""
        if k < 0 or k > n:
            return self.zero
        return self.qfact(n, d) / (self.qfact(k, d) * self.qfact(n - k, d))

    # arithmetic beyond the field operators

    def inverse(self, x: FieldElement) -> FieldElement:
        if not x:
            raise DivisionByZero("attempted to invert zero")
        return self.one / x

    def divide(self, x: FieldElement, y: FieldElement) -> FieldElement:
        if not y:
            raise DivisionByZero("division by zero", {"numerator": self.render(x)})
        return x / y

    def monomial(self, x: FieldElement) -> tuple[Fraction, int] | None:
        """Return (c, k) if x = c*u^k, else None."""
        numer, denom = x.numer, x.denom
        if len(numer.terms()) != 1 or len(denom.terms()) != 1:
            return None
        (n_exp,), n_coeff = numer.terms()[0]
        (d_exp,), d_coeff = denom.terms()[0]
        return _to_fraction(n_coeff) / _to_fraction(d_coeff), n_exp - d_exp

    def power(self, x: FieldElement, exponent: Rational) -> FieldElement:
        """
        x^r for rational r.

        Non-integral exponents are defined for pure powers of u only, and the
        result must again be an integral power of u.
        """
        exponent = Fraction(exponent)
        if exponent.denominator == 1:
            if exponent < 0 and not x:
                raise DivisionByZero("zero raised to a negative power")
            return x ** int(exponent)
        mono = self.monomial(x)
        if mono is None or mono[0] != 1:
            raise ExponentDenominatorMismatch(
                "fractional powers are defined for powers of u only",
                {"base": self.render(x), "exponent": exponent},
            )
        scaled = mono[1] * exponent
        if scaled.denominator != 1:
            raise ExponentDenominatorMismatch(
                f"exponent {exponent} leaves the lattice (1/{self.D})Z",
                {"base": self.render(x), "exponent": exponent, "D": self.D},
            )
        return self.u ** int(scaled)

    # specialization

    def parameter_root(self, q0: Rational | float) -> Fraction | float:
        """u0 = q0^(1/D), exact when the root is rational."""
        if q0 <= 0:
            raise ValueError(f"q0 must be positive, got {q0}")
        value = Fraction(q0)
        num, num_exact = integer_nthroot(value.numerator, self.D)
        den, den_exact = integer_nthroot(value.denominator, self.D)
        if num_exact and den_exact:
            return Fraction(int(num), int(den))
        return float(q0) ** (1.0 / self.D)

    def specialize(self, x: FieldElement, q0: Rational | float) -> Fraction | float:
        """
        Evaluate x at q = q0 (u at the positive real D-th root of q0).

        Raises:
            PoleAtParameter: if the denominator of x vanishes at q0
        """
        u0 = self.parameter_root(q0)
        if self._vanishes(x.denom, u0, Fraction(q0)):
            raise PoleAtParameter(
                f"{self.render(x)} has a pole at q = {q0}", {"element": self.render(x), "q0": q0}
            )
        return _evaluate(x.numer, u0) / _evaluate(x.denom, u0)

    def _vanishes(self, poly: PolyElement, u0: Fraction | float, q0: Fraction) -> bool:
        if isinstance(u0, Fraction):
            return _evaluate(poly, u0) == 0
        # u0 is irrational: a root of poly at u0 must be a common root with u^D - q0
        ring = poly.ring
        minimal = ring.gens[0] ** self.D - ring(QQ(q0.numerator, q0.denominator))
        common = poly.gcd(minimal).monic()
        if common.degree() <= 0:
            return False
        bound = sum(abs(float(_to_fraction(c))) * u0**k for (k,), c in common.terms())
        return abs(_evaluate(common, u0)) <= 1e-9 * max(1.0, bound)

    def specialize_matrix(self, matrix: DomainMatrix, q0: Rational | float) -> np.ndarray:
        """Numeric float array of a field matrix at q = q0."""
        rows, cols = matrix.shape
        result = np.zeros((rows, cols), dtype=float)
        cache: dict[FieldElement, float] = {}
        for i, row in matrix.to_sparse().rep.items():
            for j, value in row.items():
                if value not in cache:
                    cache[value] = float(self.specialize(value, q0))
                result[i, j] = cache[value]
        return result

    # canonical strings

    def render(self, x: FieldElement) -> str:
        """
        Canonical string "p(u)/q(u)" with coprime integer coefficients.

        The denominator has positive leading coefficient and is omitted when 1.
        """
        numer = _integer_terms(x.numer)
        denom = _integer_terms(x.denom)
        scale = math.lcm(*(c.denominator for _, c in numer + denom))
        numer = [(k, c * scale) for k, c in numer]
        denom = [(k, c * scale) for k, c in denom]
        content = math.gcd(*(int(c) for _, c in numer + denom)) or 1
        sign = -1 if denom[0][1] < 0 else 1
        numer = [(k, int(c) // content * sign) for k, c in numer]
        denom = [(k, int(c) // content * sign) for k, c in denom]
        top = _polynomial_string(numer, self.variable)
        if denom == [(0, 1)]:
            return top
        bottom = _polynomial_string(denom, self.variable)
        if len(numer) > 1:
            top = f"({top})"
        if len(denom) > 1 or (denom[0][0] != 0 and denom[0][1] != 1):
            bottom = f"({bottom})"
        return f"{top}/{bottom}"

    def parse(self, text: str) -> FieldElement:
        """Inverse of render (accepts any rational expression in the variable)."""
        return self.field.from_expr(sympify(text.replace("^", "**")))

    def render_q(self, x: FieldElement) -> str:
        """Render with q-exponents when x is a monomial, e.g. "q^-1" or "2*q^(1/2)"."""
        mono = self.monomial(x)
        if mono is None:
            return f"({self.render(x)})"
        coeff, k = mono
        exponent = Fraction(k, self.D)
        if exponent == 0:
            power = ""
        elif exponent == 1:
            power = "q"
        elif exponent.denominator == 1:
            power = f"q^{exponent}"
        else:
            power = f"q^({exponent})"
        if not power:
            return str(coeff)
        if coeff == 1:
            return power
        if coeff == -1:
            return f"-{power}"
        return f"{coeff}*{power}"


def _to_fraction(value) -> Fraction:
    return Fraction(int(value.numerator), int(value.denominator))


def _integer_terms(poly: PolyElement) -> list[tuple[int, Fraction]]:
    """(exponent, coefficient) pairs in descending degree order."""
    terms = [(monom[0], _to_fraction(coeff)) for monom, coeff in poly.terms()]
    return sorted(terms, key=lambda term: -term[0])


def _polynomial_string(terms: list[tuple[int, int]], variable: str) -> str:
    pieces = []
    for index, (k, c) in enumerate(terms):
        magnitude = abs(c)
        if k == 0:
            body = str(magnitude)
        else:
            power = variable if k == 1 else f"{variable}^{k}"
            body = power if magnitude == 1 else f"{magnitude}*{power}"
        if index == 0:
            pieces.append(f"-{body}" if c < 0 else body)
        else:
            pieces.append(f"- {body}" if c < 0 else f"+ {body}")
    return " ".join(pieces) if pieces else "0"


def _evaluate(poly: PolyElement, point: Fraction | float) -> Fraction | float:
    total = Fraction(0) if isinstance(point, Fraction) else 0.0
    for (k,), coeff in poly.terms():
        c = _to_fraction(coeff)
        total += (c if isinstance(point, Fraction) else float(c)) * point**k
    return total
